//! Probabilistic rank of parametric matrices by specialization to a prime field.

use serde::Serialize;

use super::linalg::rank;
use super::matrix::Matrix;
use super::multipoly::{MPoly, MultiPolyRing};
use super::primefield::PrimeField;
use super::rational::{reduce_mod, Rationals, Q};
use super::AlgError;
use crate::parallel::{map_indexed, trial_rng, Execution};

#[derive(Clone, Copy, Debug)]
pub struct SamplingOptions {
    pub trials: usize,
    pub seed: u64,
    pub prime: u64,
    /// Refuse to answer if the failure bound exceeds this.
    pub max_failure: Option<f64>,
    pub exec: Execution,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            trials: 8,
            seed: 0,
            prime: super::primefield::DEFAULT_PRIME,
            max_failure: None,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericRank {
    pub rank: usize,
    pub trials: usize,
    pub prime: u64,
    /// Degree bound for any minor of maximal size.
    pub minor_degree: u32,
    /// Upper bound on the probability that `rank` is below the generic rank:
    /// `(minor_degree / prime)^trials`.
    pub failure_bound: f64,
}

/// Sum of the largest `min(rows, cols)` column degrees.
pub fn minor_degree_bound(ring: &MultiPolyRing<Rationals>, m: &Matrix<MPoly<Q>>) -> u32 {
    let mut degs: Vec<u32> = (0..m.cols())
        .map(|j| (0..m.rows()).filter_map(|i| ring.total_degree(m.get(i, j))).max().unwrap_or(0))
        .collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    degs.iter().take(m.rows().min(m.cols())).sum()
}

/// Reduce mod p and evaluate at `point`.
pub fn specialize(
    ring: &MultiPolyRing<Rationals>,
    m: &Matrix<MPoly<Q>>,
    field: &PrimeField,
    point: &[u64],
) -> Result<Matrix<u64>, AlgError> {
    let p = field.modulus();
    m.try_map(|e| {
        let bad = std::cell::Cell::new(false);
        let v = ring.eval_in(e, field, point, |c| {
            reduce_mod(c, p).unwrap_or_else(|| {
                bad.set(true);
                0
            })
        });
        (!bad.get()).then_some(v)
    })
    .ok_or(AlgError::BadPrime(p))
}

pub fn generic_rank(
    ring: &MultiPolyRing<Rationals>,
    m: &Matrix<MPoly<Q>>,
    opts: &SamplingOptions,
) -> Result<GenericRank, AlgError> {
    if opts.trials == 0 {
        return Err(AlgError::InvalidArgument("trials must be at least 1".into()));
    }
    let field = PrimeField::new(opts.prime)?;
    let d = minor_degree_bound(ring, m);
    let per_trial = d as f64 / opts.prime as f64;
    let failure_bound = per_trial.min(1.0).powi(opts.trials.min(i32::MAX as usize) as i32);
    if let Some(max) = opts.max_failure {
        if failure_bound > max {
            return Err(AlgError::ModulusTooSmall { bound: failure_bound, requested: max });
        }
    }
    let n = ring.nvars();
    let ranks = map_indexed(opts.exec, opts.trials, |t| {
        let mut rng = trial_rng(opts.seed, t as u64);
        let point: Vec<u64> = (0..n).map(|_| field.random_elem(&mut rng)).collect();
        specialize(ring, m, &field, &point).map(|s| rank(&field, &s))
    });
    let mut best = 0;
    for r in ranks {
        best = best.max(r?);
    }
    Ok(GenericRank { rank: best, trials: opts.trials, prime: opts.prime, minor_degree: d, failure_bound })
}
