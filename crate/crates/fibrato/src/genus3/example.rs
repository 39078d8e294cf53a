//! The family over `P^1` with `p_g = 3`, `q = 0`, `K^2 = 2 + d`: `V1 = O(2)^3`
//! and `σ2` diagonal in a fixed basis of quadrics, dropping rank at `d`
//! points.

use serde::Serialize;

use crate::checks::CheckStatus;
use crate::exactalg::matrix::Matrix;
use crate::exactalg::rational::{q, Rationals, Q};
use crate::exactalg::ring::Ring;
use crate::p1bundles::bundle::sym_degrees;
use crate::p1bundles::{BiForm, GradedMap, SplitBundle};

use super::bundles::{analyze_sigma2_g3, diagonal_sigma2, v3_of, v4_tilde};
use super::numeric::{invariants_g3, l4_pair};
use super::Genus3Error;

/// Columns `q1..q6` on the basis `x0^2, x0x1, x0x2, x1^2, x1x2, x2^2`.
pub fn quadric_basis() -> Matrix<Q> {
    let cols: [[i64; 6]; 6] = [
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [1, 0, 0, 1, 0, 1],
        [1, 0, 0, 2, 0, 3],
        [1, 0, 0, 4, 0, 9],
    ];
    Matrix::from_fn(6, 6, |i, j| q(cols[j][i]))
}

pub fn pg3_sigma2(d: u32) -> Result<GradedMap<Rationals>, Genus3Error> {
    if d > 3 {
        return Err(Genus3Error::OutOfRange(format!(
            "d = {d}: the family is only constructed for d ≤ 3 (H^1(O(2 − d)^6) ≠ 0 beyond)"
        )));
    }
    let f = Rationals;
    let drops = [BiForm::t0(&f), BiForm::t1(&f), BiForm::t0(&f).sub(&f, &BiForm::t1(&f))];
    let mut diag: Vec<BiForm<Q>> = (0..6 - d).map(|_| BiForm::constant(&f, f.one())).collect();
    diag.extend(drops.into_iter().take(d as usize));
    diagonal_sigma2(&f, 2, &diag, &quadric_basis())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauPointSummary {
    pub point: String,
    pub conic_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pg3Report {
    pub d: u32,
    pub v1: SplitBundle,
    pub v2: SplitBundle,
    pub tau: Vec<TauPointSummary>,
    pub s2v2: SplitBundle,
    /// Products of distinct coordinate pairs only, `z_a z_b` with `a < b`.
    pub s2v2_distinct_pairs: SplitBundle,
    pub v3: SplitBundle,
    pub v4_tilde: SplitBundle,
    pub l4: SplitBundle,
    pub l4_prime: SplitBundle,
    pub chi: i64,
    pub ksq: i64,
    /// `h^1(S^2(Λ^2 V1) ⊗ L4'^{-1})`; the dimension count needs it to vanish.
    pub h1_obstruction: usize,
    pub linear_system_dim: i64,
    pub moduli_dim: i64,
    pub globally_generated: bool,
    /// Components of the base locus in `P(V2)`, coordinates `z1..z6` ordered
    /// by decreasing degree.
    pub base_locus: Vec<String>,
    pub smoothness: CheckStatus,
    pub two_connected_fibres: &'static str,
}

/// Maximal sets of coordinates containing no allowed product.
fn base_locus_components(allowed: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = allowed.len();
    let independent = |mask: u32| {
        (0..n).all(|a| mask & (1 << a) == 0 || (a..n).all(|b| mask & (1 << b) == 0 || !allowed[a][b]))
    };
    let sets: Vec<u32> = (1..1u32 << n).filter(|&m| independent(m)).collect();
    sets.iter()
        .filter(|&&m| !sets.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&a| m & (1 << a) != 0).collect())
        .collect()
}

pub fn pg3_example(d: u32) -> Result<Pg3Report, Genus3Error> {
    let sigma2 = pg3_sigma2(d)?;
    let an = analyze_sigma2_g3(&sigma2)?;
    let (v1, v2) = (an.v1.clone(), an.v2.clone());
    let deg_tau = an.tau_degree as i64;
    let v3 = v3_of(&sigma2)?;
    let v4 = v4_tilde(&sigma2)?.splitting;
    let l = l4_pair(v1.degree(), deg_tau);
    let (chi, ksq) = invariants_g3(0, v1.degree(), deg_tau);

    let s2v2 = v2.sym_power(2);
    let s2l2 = v1.wedge_power(2).sym_power(2);
    let h1_obstruction = s2l2.h1(-l.l4_prime);
    let linear_system_dim = s2v2.h0(-l.l4_prime) as i64 - s2l2.h0(-l.l4_prime) as i64 - 1;
    let moduli_dim = linear_system_dim + deg_tau + 5 * deg_tau - 3 - 8;

    let mut z: Vec<i64> = v2.degrees().to_vec();
    z.sort_unstable_by(|a, b| b.cmp(a));
    let allowed: Vec<Vec<bool>> =
        z.iter().map(|a| z.iter().map(|b| a + b - l.l4_prime >= 0).collect()).collect();
    let globally_generated = allowed.iter().flatten().all(|&x| x);
    let base_locus = base_locus_components(&allowed)
        .into_iter()
        .map(|s| {
            let eqs: Vec<String> = (0..z.len()).filter(|c| !s.contains(c)).map(|c| format!("z{}", c + 1)).collect();
            format!("{{{}=0}}", eqs.join("="))
        })
        .collect();
    let distinct: Vec<i64> = (0..z.len()).flat_map(|a| (a + 1..z.len()).map(move |b| (a, b))).map(|(a, b)| z[a] + z[b]).collect();

    let f = Rationals;
    let tau = an
        .points
        .iter()
        .map(|p| TauPointSummary {
            point: format!("[{} : {}]", f.fmt_elem(&p.point.x0), f.fmt_elem(&p.point.x1)),
            conic_rank: p.conic_rank,
        })
        .collect();
    debug_assert_eq!(s2v2.degrees(), SplitBundle::new(sym_degrees(v2.degrees(), 2)).degrees());
    Ok(Pg3Report {
        d,
        v1,
        v2,
        tau,
        s2v2,
        s2v2_distinct_pairs: SplitBundle::new(distinct),
        v3,
        v4_tilde: v4,
        l4: SplitBundle::line(l.l4),
        l4_prime: SplitBundle::line(l.l4_prime),
        chi,
        ksq,
        h1_obstruction,
        linear_system_dim,
        moduli_dim,
        globally_generated,
        base_locus,
        smoothness: CheckStatus::OutOfScope,
        two_connected_fibres: "declared",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_members() {
        for d in 0..=1 {
            let r = pg3_example(d).unwrap();
            assert_eq!(r.v1, SplitBundle::repeated(2, 3));
            assert_eq!(r.v2.degree(), 24 + d as i64);
            assert_eq!(r.linear_system_dim, 44 - 8 * d as i64);
            assert_eq!(r.moduli_dim, 33 - 2 * d as i64);
            assert_eq!((r.chi, r.ksq), (4, 2 + d as i64));
            assert_eq!(r.l4_prime, SplitBundle::line(6 + d as i64));
            assert_eq!(r.l4, SplitBundle::line(6 - d as i64));
            assert_eq!(r.h1_obstruction, 0);
            assert_eq!(r.v3.degree(), 60 + 3 * d as i64);
            assert_eq!(r.v4_tilde.rank(), 15);
            assert_eq!(r.v4_tilde.degree(), r.s2v2.degree() - 48);
            assert!(r.globally_generated);
            assert!(r.base_locus.is_empty());
        }
        assert_eq!(pg3_example(0).unwrap().v3, SplitBundle::repeated(6, 10));
        assert_eq!(pg3_example(0).unwrap().v4_tilde.degree(), 120);
    }

    #[test]
    fn tau_conics_are_smooth() {
        let r = pg3_example(1).unwrap();
        assert_eq!(r.tau, vec![TauPointSummary { point: "[0 : 1]".into(), conic_rank: 3 }]);
    }

    #[test]
    fn last_members() {
        let r = pg3_example(2).unwrap();
        assert_eq!((r.linear_system_dim, r.moduli_dim, r.ksq), (28, 29, 4));
        assert!(r.globally_generated);
        let r = pg3_example(3).unwrap();
        assert_eq!((r.linear_system_dim, r.moduli_dim, r.ksq), (20, 27, 5));
        assert_eq!(r.s2v2, SplitBundle::new([vec![10; 6], vec![9; 9], vec![8; 6]].concat()));
        assert_eq!(r.s2v2_distinct_pairs, SplitBundle::new([vec![10; 3], vec![9; 9], vec![8; 3]].concat()));
        assert_eq!(r.v3, SplitBundle::new([vec![7; 9], vec![6]].concat()));
        assert_eq!(r.v4_tilde, SplitBundle::new([vec![10; 6], vec![9; 9]].concat()));
        assert_eq!(r.v4_tilde.degree(), 141);
        assert!(!r.globally_generated);
        assert_eq!(r.base_locus, vec!["{z1=z2=z3=0}".to_string()]);
        assert_eq!(r.tau.len(), 3);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(pg3_example(4), Err(Genus3Error::OutOfRange(_))));
    }

    #[test]
    fn base_locus_sets() {
        let z = [5i64, 5, 5, 4, 4, 4];
        let allowed: Vec<Vec<bool>> = z.iter().map(|a| z.iter().map(|b| a + b >= 9).collect()).collect();
        assert_eq!(base_locus_components(&allowed), vec![vec![3, 4, 5]]);
        let all: Vec<Vec<bool>> = vec![vec![true; 3]; 3];
        assert!(base_locus_components(&all).is_empty());
    }
}
