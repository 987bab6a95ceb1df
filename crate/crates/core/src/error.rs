use thiserror::Error;

use crate::fincat::{MorId, ObjId};

/// Errors raised by the engine. Verdicts (PASS/FAIL) are never errors; these
/// signal malformed input or an operation whose precondition does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("object id {0} out of range")]
    InvalidObject(u32),
    #[error("morphism id {0} out of range")]
    InvalidMorphism(u32),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("composite {g} . {f} is not defined (cod f != dom g)")]
    NotComposable { g: MorId, f: MorId },
    #[error("composite {g} . {f} assigned twice")]
    DuplicateComposite { g: MorId, f: MorId },
    #[error("identity of object {0} cannot be redefined")]
    IdentityRedefinition(ObjId),
    #[error("{f} and {g} do not share a codomain")]
    CodomainMismatch { f: MorId, g: MorId },
    #[error("{f} and {g} do not share a domain")]
    DomainMismatch { f: MorId, g: MorId },
    #[error("{0} has no quasi right part")]
    NoQuasiRightPart(MorId),
    #[error("{0} has no quasi left part")]
    NoQuasiLeftPart(MorId),
    #[error("no pullback of {m} along {f}")]
    NoPullback { f: MorId, m: MorId },
    #[error("pullback leg {leg} of {m} along {f} is not in the class")]
    LegNotInClass { f: MorId, m: MorId, leg: MorId },
    #[error("{0} is not a member of the class")]
    NotInClass(MorId),
    #[error("closure table has no entry for {0}")]
    TableIncomplete(MorId),
    #[error("closure of {m} is {c}, which does not share its codomain")]
    CodomainViolation { m: MorId, c: MorId },
    #[error("closure of {m} is {c}, which is outside the base class")]
    ImageOutsideClass { m: MorId, c: MorId },
    #[error("witness {j} for {m} does not satisfy m = c(m) . j")]
    InvalidWitness { m: MorId, j: MorId },
    #[error("no stored witness for {0}")]
    MissingWitness(MorId),
    #[error("invalid finite topology: {0}")]
    InvalidTopology(String),
    #[error("instance needs a space with {needed} points, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("size {0} exceeds the supported maximum")]
    SizeExceeded(usize),
    #[error("invalid generator input: {0}")]
    InvalidGenerator(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("theorem {theorem} needs a binding for {missing}")]
    IncompleteBinding {
        theorem: &'static str,
        missing: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
