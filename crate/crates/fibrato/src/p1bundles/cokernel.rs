use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactalg::linalg::rank;
use crate::exactalg::poly::{Poly, PolyRing};
use crate::exactalg::ring::{Field, Ring};
use crate::exactalg::roots::RootFinding;
use crate::exactalg::smith::smith_normal_form;
use crate::parallel::{map_indexed, Execution};

use super::biform::BiForm;
use super::bundle::SplitBundle;
use super::cohomology::h1_map;
use super::graded::GradedMap;
use super::BundleError;

/// A point `[x0 : x1]`, normalized to `[r : 1]` or `[1 : 0]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointP1<E> {
    pub x0: E,
    pub x1: E,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionPoint<E> {
    pub point: PointP1<E>,
    /// Nonzero local invariant-factor valuations, ascending.
    pub valuations: Vec<usize>,
}

/// Torsion supported at rational points, plus a part supported at points of
/// higher degree given by the root-free residuals of the invariant factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionSheafP1<E> {
    pub points: Vec<TorsionPoint<E>>,
    pub unsplit: Vec<Poly<E>>,
}

impl<E> TorsionSheafP1<E> {
    pub fn length(&self) -> usize {
        let at_points: usize = self.points.iter().flat_map(|p| &p.valuations).sum();
        at_points + self.unsplit.iter().map(|p| p.len().saturating_sub(1)).sum::<usize>()
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty() && self.unsplit.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CokernelAnalysis<E> {
    pub is_injective: bool,
    pub torsion: TorsionSheafP1<E>,
    /// Splitting type of the cokernel modulo torsion; only determined for
    /// injective maps.
    pub locally_free_part: Option<SplitBundle>,
    /// `m ↦ h^0` of the locally free part on the scanned window.
    pub profile: BTreeMap<i64, usize>,
}

pub fn cokernel_analysis<F: RootFinding>(phi: &GradedMap<F>) -> Result<CokernelAnalysis<F::Elem>, BundleError> {
    cokernel_analysis_with(phi, Execution::default())
}

pub fn cokernel_analysis_with<F: RootFinding>(
    phi: &GradedMap<F>,
    exec: Execution,
) -> Result<CokernelAnalysis<F::Elem>, BundleError> {
    let f = phi.field();
    let (cols, rows) = (phi.source_degrees().len(), phi.target_degrees().len());
    if cols > rows {
        return Err(BundleError::SourceRankExceedsTarget { source_rank: cols, target_rank: rows });
    }
    let pr = PolyRing::new(f.clone(), "t");
    let snf = smith_normal_form(&pr, &phi.chart_t1(&pr));
    let is_injective = snf.rank() == cols;

    let mut by_root: Vec<(F::Elem, Vec<usize>)> = Vec::new();
    let mut unsplit = Vec::new();
    for fac in &snf.factors {
        let split = f.split_roots(fac);
        for (r, v) in split.roots {
            match by_root.iter_mut().find(|(x, _)| *x == r) {
                Some((_, vs)) => vs.push(v),
                None => by_root.push((r, vec![v])),
            }
        }
        if split.residual.len() > 1 {
            unsplit.push(split.residual);
        }
    }
    let mut points: Vec<TorsionPoint<F::Elem>> = by_root
        .into_iter()
        .map(|(r, mut vs)| {
            vs.sort_unstable();
            TorsionPoint { point: PointP1 { x0: r, x1: f.one() }, valuations: vs }
        })
        .collect();
    let snf_b = smith_normal_form(&pr, &phi.chart_t0(&pr));
    let mut at_inf: Vec<usize> = snf_b
        .factors
        .iter()
        .filter_map(|g| pr.valuation_at(g, &f.zero()).filter(|&v| v > 0))
        .collect();
    if !at_inf.is_empty() {
        at_inf.sort_unstable();
        points.push(TorsionPoint { point: PointP1 { x0: f.one(), x1: f.zero() }, valuations: at_inf });
    }
    let torsion = TorsionSheafP1 { points, unsplit };

    if !is_injective {
        return Ok(CokernelAnalysis { is_injective, torsion, locally_free_part: None, profile: BTreeMap::new() });
    }
    let r = rows - cols;
    if r == 0 {
        return Ok(CokernelAnalysis {
            is_injective,
            torsion,
            locally_free_part: Some(SplitBundle::default()),
            profile: BTreeMap::new(),
        });
    }
    // Every summand of the locally free quotient is a quotient of the target,
    // so its degrees lie in [e_lo, e_hi].
    let (src, tgt) = (phi.source(), phi.target());
    let len = torsion.length() as i64;
    let deg_lf = tgt.degree() - src.degree() - len;
    let e_lo = tgt.min_degree().expect("nonempty target");
    let e_hi = deg_lf - (r as i64 - 1) * e_lo;
    if e_hi < e_lo {
        return Err(BundleError::InconsistentProfile {
            rank: r,
            reason: format!("degree {deg_lf} is below rank times minimal target degree {e_lo}"),
        });
    }
    let (m_lo, m_hi) = (-e_hi - 2, -e_lo);
    let n = (m_hi - m_lo + 1) as usize;
    let values = map_indexed(exec, n, |k| {
        let m = m_lo + k as i64;
        let h1 = h1_map(phi, m);
        let ker = h1.cols() - rank(f, &h1);
        let h0q = tgt.h0(m) as i64 - src.h0(m) as i64 + ker as i64;
        (m, h0q - len)
    });
    let mut profile = BTreeMap::new();
    for (m, v) in values {
        if v < 0 {
            return Err(BundleError::InconsistentProfile { rank: r, reason: format!("negative h0 at twist {m}") });
        }
        profile.insert(m, v as usize);
    }
    let lf = splitting_from_h0_profile(&profile, r)?;
    Ok(CokernelAnalysis { is_injective, torsion, locally_free_part: Some(lf), profile })
}

/// Recover the splitting type from `m ↦ h^0(E(m))` on a contiguous window
/// starting where `h^0` vanishes and ending where every summand has sections.
pub fn splitting_from_h0_profile(profile: &BTreeMap<i64, usize>, rank: usize) -> Result<SplitBundle, BundleError> {
    let bad = |reason: String| BundleError::InconsistentProfile { rank, reason };
    let (Some((&m_lo, &h_lo)), Some((&m_hi, _))) = (profile.first_key_value(), profile.last_key_value()) else {
        return if rank == 0 { Ok(SplitBundle::default()) } else { Err(bad("empty profile".into())) };
    };
    if (m_hi - m_lo + 1) as usize != profile.len() {
        return Err(bad("window is not contiguous".into()));
    }
    if h_lo != 0 {
        return Err(bad(format!("h0 does not vanish at the window start {m_lo}")));
    }
    let delta = |m: i64| -> i64 {
        if m <= m_lo {
            0
        } else {
            profile[&m] as i64 - profile[&(m - 1)] as i64
        }
    };
    if delta(m_hi) != rank as i64 {
        return Err(bad(format!("window end {m_hi} does not reach every summand")));
    }
    let mut degrees = Vec::with_capacity(rank);
    for m in m_lo + 1..=m_hi {
        let k = delta(m) - delta(m - 1);
        if k < 0 {
            return Err(bad(format!("second difference negative at {m}")));
        }
        degrees.extend(std::iter::repeat_n(-m, k as usize));
    }
    let b = SplitBundle::new(degrees);
    if let Some((m, _)) = profile.iter().find(|(&m, &h)| b.h0(m) != h) {
        return Err(bad(format!("reconstruction {b} disagrees at twist {m}")));
    }
    Ok(b)
}

/// Gcd of maximal minors as a form: a unit exactly when the map is injective
/// on every fiber, i.e. an injection with locally free cokernel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocallyFreeCertificate<E> {
    pub minor_gcd: Option<BiForm<E>>,
    pub locally_free_cokernel: bool,
}

pub fn locally_free_certificate<F: Field>(phi: &GradedMap<F>) -> LocallyFreeCertificate<F::Elem> {
    let f = phi.field();
    let k = phi.source_degrees().len();
    let none = LocallyFreeCertificate { minor_gcd: None, locally_free_cokernel: false };
    if k > phi.target_degrees().len() {
        return none;
    }
    // The gcd of maximal minors is the product of the invariant factors.
    let pr = PolyRing::new(f.clone(), "t");
    let snf_a = smith_normal_form(&pr, &phi.chart_t1(&pr));
    if snf_a.rank() < k {
        return none;
    }
    let ga = snf_a.factors.iter().fold(pr.one(), |acc, g| pr.mul(&acc, g));
    let snf_b = smith_normal_form(&pr, &phi.chart_t0(&pr));
    let v: usize = snf_b.factors.iter().filter_map(|g| pr.valuation_at(g, &f.zero())).sum();
    let deg = ga.len() - 1 + v;
    let form = BiForm::homogenize(f, &ga, deg as i64);
    LocallyFreeCertificate { locally_free_cokernel: deg == 0, minor_gcd: Some(form) }
}

impl<E: fmt::Debug> fmt::Display for PointP1<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} : {:?}]", self.x0, self.x1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, Rationals};
    use crate::p1bundles::biform::parse_form;

    fn profile_of(b: &SplitBundle, lo: i64, hi: i64) -> BTreeMap<i64, usize> {
        (lo..=hi).map(|m| (m, b.h0(m))).collect()
    }

    #[test]
    fn profile_round_trips() {
        let b = SplitBundle::new(vec![0, 2]);
        assert_eq!(splitting_from_h0_profile(&profile_of(&b, -4, 0), 2).unwrap(), b);
        let p: BTreeMap<i64, usize> = (0..=3).map(|m| (m, usize::from(m == 3))).collect();
        assert_eq!(splitting_from_h0_profile(&p, 1).unwrap(), SplitBundle::line(-3));
        let mut bad = profile_of(&b, -4, 0);
        bad.insert(-1, 5);
        assert!(splitting_from_h0_profile(&bad, 2).is_err());
    }

    #[test]
    fn inclusion_by_quadric() {
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![-1], vec![1], |_, _| parse_form("t0*t1", 2).unwrap()).unwrap();
        let c = cokernel_analysis(&phi).unwrap();
        assert!(c.is_injective);
        assert_eq!(c.torsion.length(), 2);
        assert_eq!(c.torsion.points.len(), 2);
        assert_eq!(c.torsion.points[0].point, PointP1 { x0: q(0), x1: q(1) });
        assert_eq!(c.torsion.points[1].point, PointP1 { x0: q(1), x1: q(0) });
        assert_eq!(c.locally_free_part, Some(SplitBundle::default()));
    }

    #[test]
    fn koszul_type_cokernel() {
        // O(-1) → O^2 by (t0, t1) has cokernel O(1).
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![-1], vec![0, 0], |i, _| {
            if i == 0 { BiForm::t0(&f) } else { BiForm::t1(&f) }
        })
        .unwrap();
        let c = cokernel_analysis(&phi).unwrap();
        assert!(c.torsion.is_zero());
        assert_eq!(c.locally_free_part, Some(SplitBundle::line(1)));
        assert!(locally_free_certificate(&phi).locally_free_cokernel);
    }

    #[test]
    fn mixed_torsion_and_free() {
        // O(-2) → O ⊕ O by (t0^2, 0): torsion of length 2 at [0:1], free part O.
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![-2], vec![0, 0], |i, _| {
            if i == 0 { parse_form("t0^2", 2).unwrap() } else { BiForm::zero(&f, 2) }
        })
        .unwrap();
        let c = cokernel_analysis(&phi).unwrap();
        assert_eq!(c.torsion.points[0].valuations, vec![2]);
        assert_eq!(c.locally_free_part, Some(SplitBundle::line(0)));
        let cert = locally_free_certificate(&phi);
        assert_eq!(cert.minor_gcd.unwrap().fmt(&f), "t0^2");
    }

    #[test]
    fn irreducible_quadric_torsion_is_unsplit() {
        let f = Rationals;
        let phi = GradedMap::from_fn(f, vec![0], vec![2], |_, _| parse_form("t0^2 + t1^2", 2).unwrap()).unwrap();
        let c = cokernel_analysis(&phi).unwrap();
        assert!(c.torsion.points.is_empty());
        assert_eq!(c.torsion.length(), 2);
    }

    #[test]
    fn too_many_source_summands() {
        let f = Rationals;
        let phi = GradedMap::identity(f, vec![0, 0]).select_source(&[0, 1, 0]);
        assert!(matches!(cokernel_analysis(&phi), Err(BundleError::SourceRankExceedsTarget { .. })));
    }
}
