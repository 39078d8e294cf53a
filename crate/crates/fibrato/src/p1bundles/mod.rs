//! Split bundles on the projective line, graded maps between them given by
//! matrices of binary forms, Čech cohomology in monomial bases, and
//! cokernel analysis (torsion and splitting type).

pub mod biform;
pub mod bundle;
pub mod cohomology;
pub mod cokernel;
pub mod graded;

use thiserror::Error;

pub use biform::{parse_form, BiForm};
pub use bundle::SplitBundle;
pub use cohomology::{h1_map, sections_map};
pub use cokernel::{
    cokernel_analysis, locally_free_certificate, splitting_from_h0_profile, CokernelAnalysis,
    LocallyFreeCertificate, PointP1, TorsionSheafP1,
};
pub use graded::GradedMap;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BundleError {
    #[error("a form of degree {degree} needs {} coefficients, got {len}", (*degree).max(-1) + 1)]
    FormLength { degree: i64, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{text:?} is not a binary form of degree {degree}")]
    NotHomogeneous { text: String, degree: i64 },
    #[error("entry ({row}, {col}) has degree {found}, expected {expected}")]
    DegreeMismatch { row: usize, col: usize, expected: i64, found: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("source rank {source_rank} exceeds target rank {target_rank}")]
    SourceRankExceedsTarget { source_rank: usize, target_rank: usize },
    #[error("h0 profile is not the profile of a split bundle of rank {rank}: {reason}")]
    InconsistentProfile { rank: usize, reason: String },
}
