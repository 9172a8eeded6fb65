//! Exact multivariate polynomial and rational-function arithmetic.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod registry;
pub mod resultant;
pub mod scalar;
pub mod text;

pub use linalg::{det, det2, det3};
pub use poly::{Monomial, MultiPoly};
pub use rational::RationalExpr;
pub use registry::{Registry, VarId, MAX_VARS};
pub use resultant::{resultant, sylvester_matrix};
pub use scalar::ExactScalar;
pub use text::{parse_poly, parse_rational, Parser};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("variable `{0}` is already registered")]
    DuplicateVariable(String),
    #[error("registry holds at most {0} generators")]
    RegistryFull(usize),
    #[error("invalid generator name `{0}`")]
    BadVariableName(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has degree zero in `{0}`")]
    DegreeZero(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("substitution for `{0}` refers to itself")]
    RecursiveBinding(String),
}
