//! Bundled instances: a category together with named classes and closure
//! operators.

pub mod fintop;
pub mod kleisli;
pub mod small;

use crate::class::MorClass;
use crate::closure::ClosureOperator;
use crate::error::{Error, Result};
use crate::fincat::FinCategory;

/// A category with the classes and closure operators that ship with it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cat: FinCategory,
    pub classes: Vec<MorClass>,
    pub closures: Vec<ClosureOperator>,
    /// Names of the designated `(E, M)` pair, if any.
    pub factorization: Option<(String, String)>,
}

impl Instance {
    pub fn class(&self, name: &str) -> Option<&MorClass> {
        self.classes.iter().find(|c| c.name() == name)
    }

    pub fn closure(&self, name: &str) -> Option<&ClosureOperator> {
        self.closures.iter().find(|c| c.name() == name)
    }
}

/// Preset names accepted by [`preset`].
pub const PRESETS: &[&str] = &[
    "arrow2",
    "split",
    "sierpinski",
    "ex419",
    "kleisli1",
    "kleisli2",
    "kleisli3",
];

pub fn preset(name: &str) -> Result<Instance> {
    match name {
        "arrow2" => Ok(small::arrow2()),
        "split" => Ok(small::split()),
        "sierpinski" => Ok(fintop::sierpinski()),
        "ex419" => Ok(fintop::ex419()),
        "kleisli1" => kleisli::gen_kleisli(1, true),
        "kleisli2" => kleisli::gen_kleisli(2, true),
        "kleisli3" => kleisli::gen_kleisli(3, true),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}
