//! Exact polynomial arithmetic over the integers, the rationals and finite
//! fields.

pub mod binary;
pub mod bulk;
pub mod coeff;
pub mod multi;
pub mod rational;
pub mod text;
pub mod uni;

pub use binary::even_multiplicity_form;
pub use bulk::BulkEvaluator;
pub use coeff::{Coeff, Field, FieldCoeff, Integers, Rationals};
pub use multi::{poly_det, Monomial, MultiPoly, MAX_VARS};
pub use rational::RationalFunction;
pub use text::{default_names, parse, to_canonical};
pub use uni::{cyclotomic, euler_phi, uni_gcd, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("substitution images have differing variable counts")]
    MixedArity,
    #[error("matrix is not square")]
    NotSquare,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero form has no multiplicity structure")]
    ZeroForm,
    #[error("expected a homogeneous form in two variables")]
    NotBinaryForm,
    #[error("denominator vanishes")]
    ZeroDenominator,
}
