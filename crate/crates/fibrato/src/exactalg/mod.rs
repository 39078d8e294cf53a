//! Exact arithmetic and linear algebra: rationals, prime fields, univariate and
//! multivariate polynomial rings, elimination, Smith normal form, roots and
//! seeded rank sampling.

pub mod linalg;
pub mod matrix;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod primefield;
pub mod rational;
pub mod ring;
pub mod roots;
pub mod sampling;
pub mod smith;
pub mod text;

use thiserror::Error;

pub use linalg::{det, det_bareiss, kernel_basis, minor_gcd, rank, rref, MinorGcd};
pub use matrix::Matrix;
pub use multipoly::{MPoly, MultiPolyRing};
pub use poly::{Poly, PolyRing};
pub use primefield::{PrimeField, DEFAULT_PRIME};
pub use rational::{q, q_frac, Rationals, Q};
pub use ring::{Domain, EuclideanDomain, Field, GcdDomain, Ring};
pub use roots::{RootFinding, RootSplit};
pub use sampling::{generic_rank, GenericRank, SamplingOptions};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgError {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("prime {0} divides a coefficient denominator")]
    BadPrime(u64),
    #[error("failure bound {bound:.3e} exceeds requested {requested:.3e}; use a larger prime or more trials")]
    ModulusTooSmall { bound: f64, requested: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
