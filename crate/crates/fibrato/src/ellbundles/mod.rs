//! Bundles on an elliptic curve handled symbolically: points are labels in a
//! formal group, bundles are sums of line bundles and indecomposables, and
//! symmetric/exterior/tensor powers are evaluated by a fixed set of
//! decomposition rules.

pub mod classify;
pub mod expr;
pub mod label;
pub mod sexpr;
pub mod theta;

use thiserror::Error;

pub use classify::{classify_v2, parse_tau, tau_is_nontrivial_two_torsion, V2Case};
pub use expr::{ext1_dim, rewrite, Atom, EllLine, Expr, NormalForm};
pub use label::PointLabel;
pub use sexpr::parse_expr;
pub use theta::theta_product;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank {rank} and degree {degree} are not coprime")]
    NotCoprime { rank: u32, degree: i64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("all of f1, f2, f3 vanish: the sheaf is not locally free")]
    NotLocallyFree,
}
