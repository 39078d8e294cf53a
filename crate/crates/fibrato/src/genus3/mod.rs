//! Genus-3 fibrations with nonhyperelliptic general fiber: the maps `A`, `B`,
//! `C`, the bundles `V3` and `Ṽ4`, the line bundles `L4`, `L4'`, the
//! admissibility checklist and the `p_g = 3` family over `P^1`.

pub mod bundles;
pub mod example;
pub mod maps;
pub mod numeric;
pub mod tuple;

use thiserror::Error;

use crate::p1bundles::BundleError;

pub use bundles::{
    analyze_sigma2_g3, check_condition_iv, diagonal_sigma2, embedding_is_subbundle, v3_of, v4_presentation, v4_tilde,
    KernelConic, Sigma2Analysis, V4Tilde,
};
pub use example::{pg3_example, pg3_sigma2, Pg3Report};
pub use maps::{build_maps_abc, StructuredMaps};
pub use numeric::{
    canonical_image_class, deg_tau_from_invariants, invariants_g3, l4_pair, torsion_rank_g3, DivisorClass, L4Pair,
};
pub use tuple::{Genus3Data, Genus3FiveTuple};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Genus3Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid extension data: {0}")]
    InvalidXi(String),
    #[error("the rank of σ2 drops by 2 or more somewhere")]
    RankDrop,
    #[error("{0} is not locally free of the expected rank")]
    NotLocallyFree(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}
