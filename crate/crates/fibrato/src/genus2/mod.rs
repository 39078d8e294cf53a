//! Genus-2 fibrations: the numerical invariants of a 5-tuple, torsion of the
//! relative canonical algebra, local fiber models, the conic-bundle algebra
//! and the branch bundle `Ã6`.

pub mod algebra;
pub mod conic;
pub mod numeric;
pub mod oracle;
pub mod tuple;

use thiserror::Error;

use crate::ellbundles::EllError;
use crate::p1bundles::BundleError;

pub use algebra::{a6_tilde_elliptic, a6_tilde_p1, analyze_sigma2, build_i_n, A6Shape, A6Tilde, H0};
pub use conic::{
    check_branch_avoids_p, conic_singularity, horikawa_type, segre_normal_form, ConicFiber, DoubleLineCase,
    HorikawaType, LocalFiberModel, Rdp,
};
pub use numeric::{
    chi_deg_vn, invariants_g2, minimal_model_bound, rank_vn_pm, solve_tuple_degrees, torsion_structure_g2,
    TorsionStructure,
};
pub use tuple::{Genus2Data, Genus2FiveTuple, LineDescriptor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Genus2Error {
    #[error("no genus-2 fibration data: deg τ = {deg_tau} < 0 for b = {b}, χ = {chi}, K^2 = {ksq}")]
    NegativeTau { b: i64, chi: i64, ksq: i64, deg_tau: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("local Q6 data is missing")]
    MissingLocalData,
    #[error("the rank of σ2 drops by 2 or more somewhere")]
    RankDrop,
    #[error("invalid extension data: {0}")]
    InvalidXi(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Elliptic(EllError),
}
