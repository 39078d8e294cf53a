//! Surfaces with `p_g = q = 1`, `K^2 = 3` and Albanese fibration of genus 2:
//! the fixed elliptic data, strata by the splitting of `V2`, `h^0(Ã6)` per
//! stratum, the presentation of `Ã6` and the rank stratification of `F'`.

pub mod matriciona;
pub mod setup;
pub mod stratify;

pub use matriciona::{alpha_tilde, beta_tilde, fprime, fprime_formal, matriciona_m, minimalize, param_ring};
pub use setup::{
    base_setup, classify_stratum, clemens_bound, moduli_summary, parameter_counts, resolve_with_sampler, BaseSetup,
    ModuliSummary, ParameterCount, Stratum, StratumReport, H0A6,
};
pub use stratify::{exact_minor_gcd, stratify, StratificationReport, StratifyOptions};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModuliError {
    #[error("entry ({row}, {col}) multiplies into the wrong torsion label")]
    LabelMismatch { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not a unit")]
    NotAUnit { row: usize, col: usize },
    #[error("at least one sample is needed, got {0}")]
    InsufficientSamples(usize),
    #[error("{0}")]
    Field(String),
    #[error("F' has rank below 16 identically")]
    Degenerate,
    #[error("{0}")]
    Stratum(String),
}
