//! Exact arithmetic substrate: arbitrary-size rationals, p-adic elements of an
//! unramified extension at finite precision, roots of unity by exponent,
//! cyclotomic values, and Laurent rational functions in X = q^{−s}.

pub mod cyclotomic;
pub mod laurent;
pub mod padic;
pub mod rational;
pub mod ratfun;
pub mod roots;
pub mod scalar;

pub use cyclotomic::Cyc;
pub use laurent::LaurentPoly;
pub use padic::{PadicCtx, PadicElement};
pub use rational::{binomial, Rational};
pub use ratfun::RationalFunctionInQs;
pub use roots::RootOfUnity;
pub use scalar::Scalar;

use thiserror::Error;

/// Default working precision: arithmetic is exact modulo p^40.
pub const DEFAULT_PRECISION: u32 = 40;

/// Error type shared by the exact-arithmetic layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArithError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("order {order} not realizable in the target ({reason})")]
    UnsupportedOrder { order: u64, reason: String },
    #[error("pole at s = {s} of multiplicity {multiplicity}")]
    PoleAtS { s: String, multiplicity: u32 },
    #[error("division by a non-unit: {0}")]
    NonUnit(String),
}
