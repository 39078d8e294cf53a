#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use fibrato::exactalg::linalg::{minor_gcd, rank, MinorGcd};
use fibrato::exactalg::matrix::{mat_mul, Matrix};
use fibrato::exactalg::poly::{Poly, PolyRing};
use fibrato::exactalg::primefield::PrimeField;
use fibrato::exactalg::rational::q;
use fibrato::exactalg::ring::{Domain, GcdDomain, Ring};
use fibrato::exactalg::smith::smith_normal_form;
use fibrato::genus2::numeric::rank_vn;
use fibrato::genus2::oracle::local_torsion_lengths;
use fibrato::genus2::torsion_structure_g2;
use fibrato::genus3::bundles::{conic_matrix, v4_presentation};
use fibrato::genus3::maps::sym2_pair;
use fibrato::genus3::numeric::rank_vn_g3;
use fibrato::genus3::{build_maps_abc, diagonal_sigma2, v3_of, v4_tilde};
use fibrato::p1bundles::cokernel::splitting_from_h0_profile;
use fibrato::p1bundles::{cokernel_analysis, BiForm, GradedMap, SplitBundle};

pub const CASES: u32 = 500;

type Outcome = Result<(), TestCaseError>;

/// Runs `check` on `CASES` inputs drawn with a fixed seed.
pub fn run_fixed<S: Strategy>(strategy: S, check: impl Fn(S::Value) -> Outcome) -> Result<(), String> {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn bundle() -> impl Strategy<Value = SplitBundle> {
    prop::collection::vec(-6i64..7, 1..6).prop_map(SplitBundle::new)
}

pub fn twisted_bundle() -> impl Strategy<Value = (SplitBundle, i64)> {
    (bundle(), -10i64..10)
}

pub fn riemann_roch((b, m): (SplitBundle, i64)) -> Outcome {
    let chi = b.h0(m) as i64 - b.h1(m) as i64;
    prop_assert_eq!(chi, b.degree() + b.rank() as i64 * (m + 1));
    Ok(())
}

pub fn serre_duality((b, m): (SplitBundle, i64)) -> Outcome {
    prop_assert_eq!(b.h1(m), b.dual().h0(-m - 2));
    Ok(())
}

pub fn profile_round_trip(b: SplitBundle) -> Outcome {
    let lo = -b.max_degree().unwrap() - 1;
    let hi = -b.min_degree().unwrap();
    let profile: BTreeMap<i64, usize> = (lo..=hi).map(|m| (m, b.h0(m))).collect();
    prop_assert_eq!(splitting_from_h0_profile(&profile, b.rank()).unwrap(), b);
    Ok(())
}

pub fn split_inclusion() -> impl Strategy<Value = (SplitBundle, i64, Vec<u64>)> {
    (bundle(), -8i64..-6, prop::collection::vec(0u64..101, 4))
}

/// A split inclusion `O(a)^2 → O(a)^2 ⊕ E` twisted by a random automorphism
/// of the source: the cokernel is `E` again.
pub fn cokernel_splitting((b, a, c): (SplitBundle, i64, Vec<u64>)) -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let g = Matrix::from_vec(2, 2, c);
    prop_assume!(rank(&f, &g) == 2);
    let mut tgt = vec![a, a];
    tgt.extend_from_slice(b.degrees());
    let phi = GradedMap::from_fn(f, vec![a, a], tgt.clone(), |i, j| {
        if i < 2 { BiForm::constant(&f, *g.get(i, j)) } else { BiForm::zero(&f, tgt[i] - a) }
    })
    .unwrap();
    let ca = cokernel_analysis(&phi).unwrap();
    prop_assert!(ca.is_injective && ca.torsion.is_zero());
    prop_assert_eq!(ca.locally_free_part.unwrap(), b);
    Ok(())
}

pub fn poly_matrix() -> impl Strategy<Value = (Vec<Vec<u64>>, usize)> {
    (prop::collection::vec(prop::collection::vec(0u64..7, 0..4), 12), 2usize..4)
}

fn det(pr: &PolyRing<PrimeField>, m: &Matrix<Poly<u64>>) -> Poly<u64> {
    match minor_gcd(pr, m, m.rows()) {
        MinorGcd::Zero => pr.zero(),
        MinorGcd::Value(g) => g,
    }
}

/// Reconstruction, unimodularity, divisibility, and the products of the
/// invariant factors against the gcds of minors, over `F_7[t]`.
pub fn smith_form((entries, rows): (Vec<Vec<u64>>, usize)) -> Outcome {
    let pr = PolyRing::new(PrimeField::new(7).unwrap(), "t");
    let cols = 12 / rows;
    let m = Matrix::from_fn(rows, cols, |i, j| pr.from_coeffs(entries[i * cols + j].clone()));
    let snf = smith_normal_form(&pr, &m);
    prop_assert_eq!(mat_mul(&pr, &mat_mul(&pr, &snf.left, &m), &snf.right), snf.diag.clone());
    prop_assert!(pr.is_unit(&det(&pr, &snf.left)) && pr.is_unit(&det(&pr, &snf.right)));
    for w in snf.factors.windows(2) {
        prop_assert!(pr.is_zero(&w[1]) || pr.div_exact(&w[1], &w[0]).is_some());
    }
    let mut prod = pr.one();
    for k in 1..=rows.min(cols) {
        prod = pr.mul(&prod, &snf.factors.get(k - 1).cloned().unwrap_or_else(|| pr.zero()));
        match minor_gcd(&pr, &m, k) {
            MinorGcd::Zero => prop_assert!(pr.is_zero(&prod)),
            MinorGcd::Value(g) => prop_assert_eq!(pr.normalize(&g), pr.normalize(&prod)),
        }
    }
    Ok(())
}

pub fn torsion_input() -> impl Strategy<Value = (u32, bool, u32, i64)> {
    (1u32..=5, any::<bool>(), 1u32..4, -3i64..4)
}

pub fn torsion_degrees((n, odd, s, lambda): (u32, bool, u32, i64)) -> Outcome {
    let k = 2 * n + u32::from(odd);
    let structure = torsion_structure_g2(k, &[s]).unwrap();
    let n = n as u64;
    let expected = if odd { n * (n + 1) } else { n * n } * s as u64;
    prop_assert_eq!(structure.degree, expected);
    let local = local_torsion_lengths(k, s, &q(lambda));
    prop_assert_eq!(local.iter().sum::<u64>(), expected);
    prop_assert_eq!(local, structure.local_lengths(s));
    Ok(())
}

pub fn sigma2_input() -> impl Strategy<Value = (i64, Vec<u64>, Vec<u64>)> {
    (
        0i64..3,
        prop::collection::vec(0u64..101, 36),
        prop::collection::btree_set(0u64..101, 0..3).prop_map(|s| s.into_iter().collect()),
    )
}

/// `σ2 = D Q^{-1}` over `F_101`, one rank drop of `D` at each of `pts`.
fn random_sigma2(f: &PrimeField, a: i64, qm: &[u64], pts: &[u64]) -> Option<GradedMap<PrimeField>> {
    let qmat = Matrix::from_vec(6, 6, qm.to_vec());
    if rank(f, &qmat) != 6 {
        return None;
    }
    let mut diag: Vec<BiForm<u64>> = (0..6 - pts.len()).map(|_| BiForm::constant(f, 1)).collect();
    diag.extend(pts.iter().map(|&c| BiForm::t0(f).sub(f, &BiForm::t1(f).scale(f, &c))));
    diagonal_sigma2(f, a, &diag, &qmat).ok()
}

pub fn genus3_ranks((a, qm, pts): (i64, Vec<u64>, Vec<u64>)) -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let s = random_sigma2(&f, a, &qm, &pts);
    prop_assume!(s.is_some());
    let s = s.unwrap();
    prop_assert_eq!(v3_of(&s).unwrap().rank(), 10);
    prop_assert_eq!(v4_tilde(&s).unwrap().splitting.rank(), 15);
    prop_assert_eq!(rank_vn_g3(4), 14);
    prop_assert_eq!(rank_vn(4, 3), 14);
    Ok(())
}

pub fn a_then_b_vanishes((a, qm, pts): (i64, Vec<u64>, Vec<u64>)) -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let s = random_sigma2(&f, a, &qm, &pts);
    prop_assume!(s.is_some());
    let s = s.unwrap();
    let v1 = vec![a; 3];
    let maps = build_maps_abc(&f, &v1).unwrap();
    let id = GradedMap::identity(f, v1);
    let comp = s.kron(&id).compose(&maps.a).unwrap().compose(&maps.b).unwrap();
    prop_assert!(comp.is_zero());
    Ok(())
}

pub fn conic_drop_input() -> impl Strategy<Value = (usize, Vec<u64>, i64)> {
    (0usize..3, prop::collection::vec(0u64..101, 36), 0i64..3)
}

/// A single rank drop at `t0 = 0` whose kernel conic has rank `which + 1`,
/// in random coordinates on `V1`: the presentation of `Ṽ4` stays of full
/// rank at the drop and at a random point.
pub fn c_injective_at_drop((which, coeffs, a): (usize, Vec<u64>, i64)) -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let g = Matrix::from_fn(3, 3, |i, j| coeffs[i * 3 + j]);
    prop_assume!(rank(&f, &g) == 3);
    let diag = [1u64, u64::from(which >= 1), u64::from(which >= 2)];
    let k: Vec<u64> = (0..6)
        .map(|idx| {
            let (i, j) = sym2_pair(idx);
            let mut c = 0;
            for l in 0..3 {
                c = f.add(&c, &f.mul(&diag[l], &f.mul(g.get(l, i), g.get(l, j))));
            }
            if i == j { c } else { f.mul(&c, &2) }
        })
        .collect();
    prop_assert_eq!(rank(&f, &conic_matrix(&f, &k)), which + 1);
    let lead = k.iter().position(|&c| c != 0).unwrap();
    let mut cols = vec![k.clone()];
    cols.extend((0..6).filter(|&e| e != lead).map(|e| (0..6).map(|i| u64::from(i == e)).collect()));
    let qm = Matrix::from_fn(6, 6, |i, j| cols[j][i]);
    let mut d = vec![BiForm::t0(&f)];
    d.extend((0..5).map(|_| BiForm::constant(&f, 1)));
    let s = diagonal_sigma2(&f, a, &d, &qm).unwrap();
    let pres = v4_presentation(&s).unwrap();
    prop_assert_eq!(rank(&f, &pres.eval(&0, &1)), 6);
    prop_assert_eq!(rank(&f, &pres.eval(&coeffs[27], &1)), 6);
    Ok(())
}
