//! Decision procedures for quasi factorization structures and closure
//! operators on explicit finite categories.

pub mod class;
pub mod closure;
pub mod error;
pub mod factor;
pub mod fincat;
pub mod instances;
pub mod lifting;
pub mod report;
pub mod sieves;
pub mod theorems;

pub use class::MorClass;
pub use closure::{ClosureOperator, DerivedClasses, QwhMode};
pub use error::{Error, Result};
pub use factor::{QlpResult, QrpResult};
pub use fincat::{CategoryBuilder, CospanResult, FinCategory, MorId, Morphism, ObjId, SpanResult, UniversalCone};
pub use instances::{preset, Instance};
pub use lifting::LiftingSquare;
pub use report::{CheckReport, Verdict};
pub use sieves::{Cosieve, Sieve};
pub use theorems::{TheoremBinding, TheoremId};
