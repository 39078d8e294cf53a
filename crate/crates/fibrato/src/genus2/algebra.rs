//! The even part of the conic-bundle algebra and the branch bundle `Ã6`.
//!
//! Over `P^1` everything is an explicit graded map: `σ2 : S^2 V1 → V2` induces
//! `i_n : (det V1)^2 ⊗ S^{n-2} V2 → S^n V2`, multiplication by the quadric
//! `Δ = σ2(x0^2)σ2(x1^2) − σ2(x0x1)^2`. Over an elliptic base the bundles are
//! handled through [`crate::ellbundles`] normal forms.

use std::collections::HashMap;

use serde::Serialize;

use crate::ellbundles::{Atom, EllLine, NormalForm, PointLabel, V2Case};
use crate::exactalg::linalg::{kernel_basis, rank};
use crate::exactalg::poly::PolyRing;
use crate::exactalg::rational::Rationals;
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::roots::RootFinding;
use crate::exactalg::smith::smith_normal_form;
use crate::p1bundles::bundle::{sym_basis, sym_degrees};
use crate::p1bundles::cokernel::PointP1;
use crate::p1bundles::{cokernel_analysis, sections_map, BiForm, GradedMap, SplitBundle};

use super::Genus2Error;

/// `rank A_{2n} = rank S^n V2 − rank S^{n−2} V2 = 2n + 1`.
pub fn rank_a_even(n: usize) -> usize {
    (n + 2) * (n + 1) / 2 - n * n.saturating_sub(1) / 2
}

pub fn rank_a(k: usize) -> usize {
    k + 1
}

/// `deg det V1`, read off the source `(2a, a+b, 2b)` of `σ2`.
fn det_v1_degree<F: Field>(sigma2: &GradedMap<F>) -> Result<i64, Genus2Error> {
    let src = sigma2.source_degrees();
    if src.len() != 3 || sigma2.target_degrees().len() != 3 {
        return Err(Genus2Error::InvalidXi("σ2 must be a map between rank-3 bundles".into()));
    }
    if src[0] + src[2] != 2 * src[1] || (src[0] - src[2]) % 2 != 0 {
        return Err(Genus2Error::InvalidXi(format!("source {src:?} is not S^2 of a rank-2 split bundle")));
    }
    Ok(src[1])
}

/// Coefficients of `Δ` on the lex basis of `S^2 V2`.
pub fn delta_quadric<F: Field>(sigma2: &GradedMap<F>) -> Result<Vec<BiForm<F::Elem>>, Genus2Error> {
    let det = det_v1_degree(sigma2)?;
    let f = sigma2.field();
    let tgt = sigma2.target_degrees();
    let col = |j: usize| (0..3).map(|i| sigma2.entry(i, j).clone()).collect::<Vec<_>>();
    let (a, b, c) = (col(0), col(2), col(1));
    sym_basis(3, 2)
        .iter()
        .map(|p| {
            let (i, j) = (p[0], p[1]);
            let deg = tgt[i] + tgt[j] - 2 * det;
            let mut acc = BiForm::zero(f, deg);
            let mut add = |x: &BiForm<F::Elem>, y: &BiForm<F::Elem>, sign: bool| {
                let p = x.mul(f, y);
                if !p.is_zero(f) {
                    acc = if sign { acc.add(f, &p) } else { acc.sub(f, &p) };
                }
            };
            add(&a[i], &b[j], true);
            add(&c[i], &c[j], false);
            if i != j {
                add(&a[j], &b[i], true);
                add(&c[j], &c[i], false);
            }
            Ok(acc)
        })
        .collect()
}

/// `i_n : (det V1)^2 ⊗ S^{n−2} V2 → S^n V2`.
pub fn build_i_n<F: Field>(sigma2: &GradedMap<F>, n: usize) -> Result<GradedMap<F>, Genus2Error> {
    if n < 2 {
        return Err(Genus2Error::InvalidArgument(format!("i_n needs n ≥ 2, got {n}")));
    }
    let det = det_v1_degree(sigma2)?;
    let delta = delta_quadric(sigma2)?;
    let f = sigma2.field().clone();
    let v2 = sigma2.target_degrees().to_vec();
    let pairs = sym_basis(3, 2);
    let src_basis = sym_basis(3, n - 2);
    let tgt_basis = sym_basis(3, n);
    let tgt_index: HashMap<&Vec<usize>, usize> = tgt_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let source: Vec<i64> = sym_degrees(&v2, n - 2).into_iter().map(|d| d + 2 * det).collect();
    let target = sym_degrees(&v2, n);
    let mut entries =
        crate::exactalg::matrix::Matrix::from_fn(target.len(), source.len(), |i, j| BiForm::zero(&f, target[i] - source[j]));
    for (j, q) in src_basis.iter().enumerate() {
        for (p, d) in pairs.iter().zip(&delta) {
            if d.is_zero(&f) {
                continue;
            }
            let mut m: Vec<usize> = q.iter().chain(p).copied().collect();
            m.sort_unstable();
            let i = tgt_index[&m];
            let cur = entries.get(i, j).add(&f, d);
            entries.set(i, j, cur);
        }
    }
    Ok(GradedMap::new(f, source, target, entries)?)
}

/// Local data of `σ2` at a rational point of `τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaPoint<E> {
    pub point: PointP1<E>,
    pub s: u32,
    /// Coordinates `(c0, c1, c2)` of the fiber kernel in `(x0^2, x0x1, x1^2)`.
    pub kernel: Vec<E>,
    pub kernel_is_square: bool,
}

/// The divisor `τ = coker σ2` on `P^1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauP1<E> {
    pub degree: usize,
    pub points: Vec<SigmaPoint<E>>,
    /// Part of `τ` supported at points of degree `> 1`, as monic polynomials
    /// in the chart `t1 = 1`.
    pub unsplit: Vec<Vec<E>>,
}

/// Check that `σ2` is injective with cokernel `O_τ` (rank drop at most one
/// everywhere) and read off `τ` with its local data at rational points.
pub fn analyze_sigma2<F: RootFinding>(sigma2: &GradedMap<F>) -> Result<TauP1<F::Elem>, Genus2Error> {
    det_v1_degree(sigma2)?;
    let f = sigma2.field();
    let pr = PolyRing::new(f.clone(), "t");
    for chart in [sigma2.chart_t1(&pr), sigma2.chart_t0(&pr)] {
        let snf = smith_normal_form(&pr, &chart);
        if snf.rank() < 3 {
            return Err(Genus2Error::InvalidXi("σ2 is not injective".into()));
        }
        if snf.factors[..2].iter().any(|g| pr.degree(g) != Some(0)) {
            return Err(Genus2Error::RankDrop);
        }
    }
    let ca = cokernel_analysis(sigma2)?;
    let mut points = Vec::new();
    for tp in &ca.torsion.points {
        let s = tp.valuations.iter().sum::<usize>() as u32;
        let m = sigma2.eval(&tp.point.x0, &tp.point.x1);
        let ker = kernel_basis(f, &m);
        if ker.len() != 1 {
            return Err(Genus2Error::RankDrop);
        }
        let k = ker.into_iter().next().unwrap();
        let disc = f.sub(&f.mul(&k[1], &k[1]), &f.mul(&f.from_int(4), &f.mul(&k[0], &k[2])));
        points.push(SigmaPoint { point: tp.point.clone(), s, kernel_is_square: f.is_zero(&disc), kernel: k });
    }
    Ok(TauP1 { degree: ca.torsion.length(), points, unsplit: ca.torsion.unsplit.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum H0 {
    Exact { value: u64 },
    /// Bounds from the long exact sequence when the connecting map is not determined.
    Range { lo: u64, hi: u64 },
}

impl H0 {
    pub fn exact(&self) -> Option<u64> {
        match self {
            H0::Exact { value } => Some(*value),
            H0::Range { .. } => None,
        }
    }
}

impl std::fmt::Display for H0 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            H0::Exact { value } => write!(f, "{value}"),
            H0::Range { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "base")]
pub enum A6Shape {
    P1 { splitting: SplitBundle },
    /// Direct sum known explicitly.
    Elliptic { bundle: NormalForm },
    /// Only known as the quotient `mid / sub`.
    EllipticQuotient { sub: NormalForm, mid: NormalForm },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A6Tilde {
    pub rank: u32,
    pub degree: i64,
    pub h0: H0,
    pub shape: A6Shape,
}

/// `Ã6` over `P^1`: the cokernel of `i_3` twisted by `(det V1 ⊗ O(τ))^{−2}`.
pub fn a6_tilde_p1(sigma2: &GradedMap<Rationals>) -> Result<A6Tilde, Genus2Error> {
    let tau = analyze_sigma2(sigma2)?;
    let det = det_v1_degree(sigma2)?;
    let i3 = build_i_n(sigma2, 3)?;
    let ca = cokernel_analysis(&i3)?;
    if !ca.is_injective || !ca.torsion.is_zero() {
        return Err(Genus2Error::InvalidXi("i_3 is not fiberwise injective".into()));
    }
    let lf = ca.locally_free_part.expect("injective map has a locally free part");
    let a6 = lf.twist(-2 * (det + tau.degree as i64));
    Ok(A6Tilde {
        rank: a6.rank() as u32,
        degree: a6.degree(),
        h0: H0::Exact { value: a6.h0(0) as u64 },
        shape: A6Shape::P1 { splitting: a6 },
    })
}

/// Sections of `Ã6` as a subspace of `H^0(S^3 V2 ⊗ twist)` modulo the image
/// of `i_3`: returns `(dim H^0(source), dim H^0(target), rank)` of the
/// induced map on global sections after the `Ã6` twist.
pub fn a6_sections_p1(sigma2: &GradedMap<Rationals>) -> Result<(usize, usize, usize), Genus2Error> {
    let tau = analyze_sigma2(sigma2)?;
    let det = det_v1_degree(sigma2)?;
    let i3 = build_i_n(sigma2, 3)?;
    let m = -2 * (det + tau.degree as i64);
    let s = sections_map(&i3, m);
    Ok((s.cols(), s.rows(), rank(&Rationals, &s)))
}

/// `N = O([0] − 2τ)` for `τ = [0] + label`.
fn elliptic_twist(tau: &PointLabel) -> EllLine {
    EllLine::new(-1, tau.scale(-2))
}

/// `Ã6` over an elliptic base with `V1 = E(2, [0])` and `V2(−[0])` in the
/// given case. `tau` is the class `τ − [0]`.
pub fn a6_tilde_elliptic(case: V2Case, tau: &PointLabel, v2: &NormalForm) -> Result<A6Tilde, Genus2Error> {
    let n = elliptic_twist(tau);
    match case {
        V2Case::II(_) | V2Case::III(_) => {
            let pos = v2
                .atoms()
                .iter()
                .position(|a| matches!(a, Atom::Line(l) if l.degree == 0 && l.label.is_two_torsion() && !l.label.is_zero()))
                .ok_or_else(|| Genus2Error::InvalidXi(format!("{v2} has no 2-torsion line summand")))?;
            let Atom::Line(l) = &v2.atoms()[pos] else { unreachable!() };
            let w = NormalForm::new(v2.atoms().iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, a)| a.clone()).collect());
            let bundle = w.sym(3)?.direct_sum(&w.sym(2)?.twist(l)).twist(&n);
            let (h0, _) = bundle.cohomology();
            Ok(A6Tilde { rank: bundle.rank(), degree: bundle.degree(), h0: H0::Exact { value: h0 }, shape: A6Shape::Elliptic { bundle } })
        }
        V2Case::I => {
            let sub = v2.twist(&n);
            let mid = v2.sym(3)?.twist(&n);
            let (h0s, h1s) = sub.cohomology();
            let (h0m, h1m) = mid.cohomology();
            let base = h0m - h0s;
            let h0 = if h1m == 0 {
                H0::Exact { value: base + h1s }
            } else {
                H0::Range { lo: base + h1s.saturating_sub(h1m), hi: base + h1s }
            };
            Ok(A6Tilde {
                rank: mid.rank() - sub.rank(),
                degree: mid.degree() - sub.degree(),
                h0,
                shape: A6Shape::EllipticQuotient { sub, mid },
            })
        }
    }
}

/// The Godeaux-type example on `P^1`: `V1 = O(1)^2`,
/// `σ2 = diag(1, 1, q)` with `q` a quintic with distinct rational roots.
pub fn godeaux_sigma2() -> GradedMap<Rationals> {
    let f = Rationals;
    let quintic = crate::p1bundles::parse_form("t0*t1*(t0 - t1)*(t0 + t1)*(t0 - 2*t1)", 5).expect("valid quintic");
    GradedMap::from_fn(f, vec![2, 2, 2], vec![2, 2, 7], |i, j| match (i, j) {
        (2, 2) => quintic.clone(),
        (i, j) if i == j => BiForm::constant(&f, f.one()),
        _ => BiForm::zero(&f, 0),
    })
    .expect("graded")
}

/// `(rank, degree)` of `Ã6` from the bundles in its defining sequence.
pub fn a6_expected_degree(v2: &SplitBundle, det_v1: i64, deg_tau: i64) -> (usize, i64) {
    let s3 = v2.sym_power(3);
    let sub = v2.twist(2 * det_v1);
    let rank = s3.rank() - sub.rank();
    (rank, s3.degree() - sub.degree() - 2 * (det_v1 + deg_tau) * rank as i64)
}
