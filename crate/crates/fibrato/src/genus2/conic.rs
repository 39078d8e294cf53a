//! Local geometry over a point of `τ`: the special conic, the singular points
//! of the conic bundle there, the branch-curve condition and the Horikawa type
//! of the special fiber of the genus-2 fibration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::exactalg::multipoly::MultiPolyRing;
use crate::exactalg::parse::parse_poly;
use crate::exactalg::rational::{q, Rationals, Q};
use crate::exactalg::ring::Ring;

use super::Genus2Error;

const LOCAL_VARS: [&str; 5] = ["t", "x0", "x1", "y", "z"];

/// Local data at a point of `τ`: the multiplicity `s`, the coefficient `λ` of
/// the degree-2 relation `x0^2 − λ x0 x1 + t^s y + t R`, and optionally the
/// degree-6 equation `Q6` of the double cover in `t, x0, x1, y, z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFiberModel {
    pub s: u32,
    pub lambda: Q,
    pub q6: Option<String>,
    /// Values of any extra symbols appearing in `q6`.
    pub params: BTreeMap<String, Q>,
}

impl LocalFiberModel {
    pub fn new(s: u32, lambda: Q) -> Result<Self, Genus2Error> {
        if s == 0 {
            return Err(Genus2Error::InvalidArgument("multiplicity must be positive".into()));
        }
        Ok(LocalFiberModel { s, lambda, q6: None, params: BTreeMap::new() })
    }

    pub fn with_q6(mut self, q6: &str, params: BTreeMap<String, Q>) -> Self {
        self.q6 = Some(q6.to_string());
        self.params = params;
        self
    }

    pub fn lambda_zero(&self) -> bool {
        Rationals.is_zero(&self.lambda)
    }

    pub fn horikawa(&self) -> Vec<HorikawaType> {
        horikawa_type(self.s, self.lambda_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum HorikawaFamily {
    I,
    II,
    III,
    IV,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HorikawaType {
    pub family: HorikawaFamily,
    /// Absent for family V.
    pub index: Option<u32>,
}

impl fmt::Display for HorikawaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.family)?;
        if let Some(i) = self.index {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

/// Horikawa type(s) of the special fiber over a point of multiplicity `s`.
pub fn horikawa_type(s: u32, lambda_zero: bool) -> Vec<HorikawaType> {
    assert!(s >= 1, "multiplicity must be positive");
    use HorikawaFamily::*;
    let t = |family, i| HorikawaType { family, index: Some(i) };
    match (s % 2 == 1, lambda_zero) {
        (true, false) => vec![t(I, s.div_ceil(2))],
        (false, false) => vec![t(II, s / 2)],
        (true, true) if s == 1 => vec![t(III, 1), HorikawaType { family: V, index: None }],
        (true, true) => vec![t(III, s.div_ceil(2))],
        (false, true) => vec![t(IV, s / 2)],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rdp {
    A(u32),
    D(u32),
}

impl fmt::Display for Rdp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rdp::A(n) => write!(f, "A{n}"),
            Rdp::D(n) => write!(f, "D{n}"),
        }
    }
}

/// The two local shapes of a double-line fiber not contained in the singular
/// locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DoubleLineCase {
    /// One singular point `P`.
    Single,
    /// `A1` at `P` and a second `A1` at `P'`.
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConicFiber {
    Smooth,
    Reduced,
    DoubleLine(DoubleLineCase),
}

impl ConicFiber {
    /// The fiber over a point of `τ` is a double line exactly when the kernel
    /// of `σ2` there is a square.
    pub fn over_tau(kernel_is_square: bool, case: DoubleLineCase) -> Self {
        if kernel_is_square {
            ConicFiber::DoubleLine(case)
        } else {
            ConicFiber::Reduced
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Location {
    P,
    PPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicSingularities {
    pub points: Vec<(Location, Rdp)>,
    /// Points the branch curve has to miss.
    pub branch_must_avoid: Vec<Location>,
    /// Points the branch curve may pass through, subject to an RDP check on the cover.
    pub branch_may_meet: Vec<Location>,
}

impl ConicSingularities {
    pub fn is_smooth(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn conic_singularity(s: u32, fiber: ConicFiber) -> ConicSingularities {
    assert!(s >= 1, "multiplicity must be positive");
    use Location::*;
    match fiber {
        ConicFiber::Smooth => ConicSingularities { points: vec![], branch_must_avoid: vec![], branch_may_meet: vec![] },
        ConicFiber::Reduced => {
            ConicSingularities { points: vec![(P, Rdp::A(2 * s + 1))], branch_must_avoid: vec![P], branch_may_meet: vec![] }
        }
        ConicFiber::DoubleLine(DoubleLineCase::Single) => {
            ConicSingularities { points: vec![(P, Rdp::D(2 * s))], branch_must_avoid: vec![P], branch_may_meet: vec![] }
        }
        ConicFiber::DoubleLine(DoubleLineCase::Pair) => ConicSingularities {
            points: vec![(P, Rdp::A(1)), (PPrime, Rdp::A(1))],
            branch_must_avoid: vec![P],
            branch_may_meet: vec![PPrime],
        },
    }
}

fn identifiers(s: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut cur = String::new();
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic()) {
                out.insert(cur.clone());
            }
            cur.clear();
        }
    }
    out
}

/// Whether the branch curve misses `P`: the pure `y^3` coefficient of `Q6`
/// at `t = 0` is nonzero. Symbols without a value in `params` are treated as
/// generic.
pub fn check_branch_avoids_p(model: &LocalFiberModel) -> Result<bool, Genus2Error> {
    let q6 = model.q6.as_deref().ok_or(Genus2Error::MissingLocalData)?;
    let extra: Vec<String> = identifiers(q6).into_iter().filter(|v| !LOCAL_VARS.contains(&v.as_str())).collect();
    let names: Vec<&str> = LOCAL_VARS.iter().copied().chain(extra.iter().map(String::as_str)).collect();
    let ring = MultiPolyRing::new(Rationals, &names);
    let poly = parse_poly(&ring, q6).map_err(|e| Genus2Error::Parse(e.to_string()))?;
    let free: Vec<&str> = extra.iter().map(String::as_str).filter(|n| !model.params.contains_key(*n)).collect();
    let coeff_ring = MultiPolyRing::new(Rationals, &free);
    let mut coeff = coeff_ring.zero();
    for (e, c) in &poly {
        if e[..5] != [0, 0, 0, 3, 0] {
            continue;
        }
        let mut term = coeff_ring.constant(c.clone());
        let mut fi = 0;
        for (k, name) in extra.iter().enumerate() {
            let exp = e[5 + k];
            match model.params.get(name) {
                Some(v) => term = coeff_ring.scale(&term, &Rationals.pow(v, exp as u64)),
                None => {
                    term = coeff_ring.mul(&term, &coeff_ring.pow(&coeff_ring.var(fi), exp as u64));
                    fi += 1;
                }
            }
        }
        coeff = coeff_ring.add(&coeff, &term);
    }
    Ok(!coeff_ring.is_zero(&coeff))
}

/// Coordinates of `x0^2·x1^2 − (x0x1)^2` in the lexicographic basis of
/// `S^2(S^2 V1)` built on `(x0^2, x0x1, x1^2)`.
pub fn segre_relation() -> Vec<i64> {
    // pairs (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    vec![0, 0, 1, -1, 0, 0]
}

/// Rank of the conic `u0 u2 − u1^2` cut out by the relation.
pub fn segre_conic_rank() -> usize {
    let rel = segre_relation();
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut gram = vec![vec![q(0); 3]; 3];
    let half = crate::exactalg::rational::q_frac(1, 2);
    for (c, &(i, j)) in rel.iter().zip(&pairs) {
        let c = q(*c);
        if i == j {
            gram[i][j] += c;
        } else {
            gram[i][j] += &c * &half;
            gram[j][i] += &c * &half;
        }
    }
    let m = crate::exactalg::matrix::Matrix::from_rows(gram, 3);
    crate::exactalg::linalg::rank(&Rationals, &m)
}

/// The relation vector after diagonalizing the conic: `rank` ones followed by
/// zeros, six entries.
pub fn segre_normal_form() -> Vec<i64> {
    let r = segre_conic_rank();
    (0..6).map(|i| i64::from(i < r)).collect()
}
