use std::fmt;

use serde::Serialize;

use crate::checks::{Check, CheckStatus};
use crate::ellbundles::{classify_v2, EllError, EllLine, NormalForm, PointLabel, V2Case};
use crate::exactalg::rational::{Rationals, Q};
use crate::exactalg::ring::Ring;
use crate::p1bundles::{GradedMap, SplitBundle};

use super::algebra::{a6_tilde_elliptic, a6_tilde_p1, analyze_sigma2, A6Tilde, H0};
use super::conic::{check_branch_avoids_p, conic_singularity, ConicFiber, LocalFiberModel};
use super::numeric::invariants_g2;
use super::Genus2Error;

/// Base curve, `V1`, `τ` and `ξ`.
#[derive(Clone, Debug)]
pub enum Genus2Data {
    /// `B = P^1`, `ξ` given by `σ2 : S^2 V1 → V2`; `τ` is read off its cokernel.
    P1 { v1: SplitBundle, sigma2: GradedMap<Rationals> },
    /// `B` elliptic, `V1 = E(2, [0])`, `τ` a single point, `ξ` given by which
    /// of `f1, f2, f3` vanish.
    Elliptic { tau: PointLabel, vanishing: [bool; 3] },
    /// Only the numerical data.
    Abstract { base_genus: u32, deg_v1: i64, deg_tau: u64 },
}

#[derive(Clone, Debug)]
pub struct Genus2FiveTuple {
    pub data: Genus2Data,
    /// Coordinates in the computed basis of `H^0(Ã6)`, up to scale.
    pub w: Option<Vec<Q>>,
    /// Local models at the points of `τ`, in the order they are reported.
    pub local_models: Vec<LocalFiberModel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "base")]
pub enum LineDescriptor {
    P1 { degree: i64 },
    Elliptic { line: EllLine },
    Abstract { base_genus: u32, degree: i64 },
}

impl LineDescriptor {
    pub fn degree(&self) -> i64 {
        match self {
            LineDescriptor::P1 { degree } | LineDescriptor::Abstract { degree, .. } => *degree,
            LineDescriptor::Elliptic { line } => line.degree,
        }
    }
}

impl fmt::Display for LineDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineDescriptor::P1 { degree } => write!(f, "O({degree})"),
            LineDescriptor::Elliptic { line } => write!(f, "{line}"),
            LineDescriptor::Abstract { degree, .. } => write!(f, "line bundle of degree {degree}"),
        }
    }
}

/// Per-point data used by the admissibility checks.
struct TauPoint {
    s: u32,
    kernel_is_square: Option<bool>,
}

impl Genus2FiveTuple {
    pub fn new(data: Genus2Data) -> Result<Self, Genus2Error> {
        if let Genus2Data::P1 { v1, sigma2 } = &data {
            if v1.rank() != 2 {
                return Err(Genus2Error::InvalidArgument(format!("V1 = {v1} has rank {}", v1.rank())));
            }
            let mut s2 = v1.sym_power(2).degrees().to_vec();
            let mut src = sigma2.source_degrees().to_vec();
            s2.sort_unstable();
            src.sort_unstable();
            if s2 != src {
                return Err(Genus2Error::InvalidXi(format!("σ2 source {src:?} is not S^2 V1 = {:?}", s2)));
            }
        }
        Ok(Genus2FiveTuple { data, w: None, local_models: Vec::new() })
    }

    pub fn base_genus(&self) -> u32 {
        match &self.data {
            Genus2Data::P1 { .. } => 0,
            Genus2Data::Elliptic { .. } => 1,
            Genus2Data::Abstract { base_genus, .. } => *base_genus,
        }
    }

    /// `(deg V1, deg τ)`.
    pub fn degrees(&self) -> Result<(i64, u64), Genus2Error> {
        match &self.data {
            Genus2Data::P1 { v1, sigma2 } => Ok((v1.degree(), analyze_sigma2(sigma2)?.degree as u64)),
            Genus2Data::Elliptic { .. } => Ok((1, 1)),
            Genus2Data::Abstract { deg_v1, deg_tau, .. } => Ok((*deg_v1, *deg_tau)),
        }
    }

    /// `(χ(O_S), K_S^2)`.
    pub fn invariants(&self) -> Result<(i64, i64), Genus2Error> {
        let (d1, dt) = self.degrees()?;
        Ok(invariants_g2(self.base_genus() as i64, d1, dt as i64))
    }

    /// `V3^+ = det V1 ⊗ O(τ)`.
    pub fn v3_plus(&self) -> Result<LineDescriptor, Genus2Error> {
        let (d1, dt) = self.degrees()?;
        Ok(match &self.data {
            Genus2Data::P1 { .. } | Genus2Data::Abstract { base_genus: 0, .. } => LineDescriptor::P1 { degree: d1 + dt as i64 },
            Genus2Data::Elliptic { tau, .. } => {
                LineDescriptor::Elliptic { line: EllLine::point(PointLabel::zero()).tensor(&EllLine::point(tau.clone())) }
            }
            Genus2Data::Abstract { base_genus, .. } => {
                LineDescriptor::Abstract { base_genus: *base_genus, degree: d1 + dt as i64 }
            }
        })
    }

    /// `V2(−[0])` in normal form, elliptic base only.
    pub fn v2_case(&self) -> Result<(V2Case, NormalForm), Genus2Error> {
        match &self.data {
            Genus2Data::Elliptic { tau, vanishing } => Ok(classify_v2(*vanishing, tau)?),
            _ => Err(Genus2Error::OutOfScope("V2 classification needs an elliptic base".into())),
        }
    }

    pub fn a6_tilde(&self) -> Result<A6Tilde, Genus2Error> {
        match &self.data {
            Genus2Data::P1 { sigma2, .. } => a6_tilde_p1(sigma2),
            Genus2Data::Elliptic { tau, .. } => {
                let (case, nf) = self.v2_case()?;
                a6_tilde_elliptic(case, tau, &nf)
            }
            Genus2Data::Abstract { .. } => Err(Genus2Error::OutOfScope("Ã6 needs explicit V1 and ξ".into())),
        }
    }

    fn tau_points(&self) -> Result<(Vec<TauPoint>, bool), Genus2Error> {
        let (mut pts, complete) = match &self.data {
            Genus2Data::P1 { sigma2, .. } => {
                let t = analyze_sigma2(sigma2)?;
                let pts = t.points.iter().map(|p| TauPoint { s: p.s, kernel_is_square: Some(p.kernel_is_square) }).collect();
                (pts, t.unsplit.is_empty())
            }
            Genus2Data::Elliptic { .. } => (vec![TauPoint { s: 1, kernel_is_square: None }], true),
            Genus2Data::Abstract { .. } => (Vec::new(), false),
        };
        for (p, m) in pts.iter_mut().zip(&self.local_models) {
            p.s = m.s;
            p.kernel_is_square = Some(m.lambda_zero());
        }
        Ok((pts, complete))
    }

    /// Conditions i–iii of admissibility plus the well-definedness of `ξ` and `w`.
    pub fn admissibility(&self) -> Vec<Check> {
        use CheckStatus::*;
        let mut out = Vec::new();
        let a6 = match self.a6_tilde() {
            Ok(a) => {
                out.push(Check::new("xi", Verified, "V2 is a vector bundle and Ã6 is locally free"));
                Some(a)
            }
            Err(Genus2Error::OutOfScope(m)) => {
                out.push(Check::new("xi", OutOfScope, m));
                None
            }
            Err(e) => {
                out.push(Check::new("xi", Violated, e.to_string()));
                None
            }
        };
        out.push(match (&self.w, &a6) {
            (None, _) => Check::new("w", OutOfScope, "no branch section given"),
            (Some(_), None) => Check::new("w", OutOfScope, "H^0(Ã6) not computed"),
            (Some(w), Some(a)) => match a.h0 {
                H0::Exact { value } if w.len() as u64 != value => {
                    Check::new("w", Violated, format!("{} coordinates for h^0(Ã6) = {value}", w.len()))
                }
                _ if w.iter().all(|c| Rationals.is_zero(c)) => Check::new("w", Violated, "w is zero"),
                H0::Exact { .. } => Check::new("w", Verified, "nonzero section in the computed basis"),
                H0::Range { .. } => Check::new("w", OutOfScope, format!("h^0(Ã6) only bounded: {}", a.h0)),
            },
        });

        let Ok((pts, complete)) = self.tau_points() else {
            for c in ["i", "ii", "iii"] {
                out.push(Check::new(c, OutOfScope, "τ could not be analyzed"));
            }
            return out;
        };
        let mut types = Vec::new();
        let mut known = complete;
        for p in &pts {
            match p.kernel_is_square {
                Some(false) => types.push(conic_singularity(p.s, ConicFiber::Reduced).points[0].1.to_string()),
                _ => known = false,
            }
        }
        out.push(if known {
            Check::new("i", Verified, format!("conic bundle singularities: {}", if types.is_empty() { "none".into() } else { types.join(", ") }))
        } else {
            Check::new("i", OutOfScope, "double-line or unlocated fibers need a local check of the singular locus")
        });

        let mut verdicts = Vec::new();
        for (k, _) in pts.iter().enumerate() {
            match self.local_models.get(k).filter(|m| m.q6.is_some()) {
                Some(m) => verdicts.push(check_branch_avoids_p(m)),
                None => verdicts.push(Err(Genus2Error::MissingLocalData)),
            }
        }
        out.push(if verdicts.iter().any(|v| matches!(v, Ok(false))) {
            Check::new("ii", Violated, "the branch curve passes through a singular point of a special conic")
        } else if complete && verdicts.iter().all(|v| matches!(v, Ok(true))) {
            Check::new("ii", Verified, format!("branch curve avoids P at {} point(s)", verdicts.len()))
        } else {
            Check::new("ii", OutOfScope, "local Q6 data missing at some point of τ")
        });
        out.push(Check::new("iii", OutOfScope, "RDP check on the double cover is not decided"));
        out
    }
}

impl From<EllError> for Genus2Error {
    fn from(e: EllError) -> Self {
        Genus2Error::Elliptic(e)
    }
}
