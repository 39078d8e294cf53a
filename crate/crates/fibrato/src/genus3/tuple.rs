use crate::checks::{Check, CheckStatus};
use crate::exactalg::rational::Rationals;
use crate::p1bundles::bundle::sym_degrees;
use crate::p1bundles::{GradedMap, SplitBundle};

use super::bundles::{analyze_sigma2_g3, check_condition_iv, embedding_is_subbundle, v3_of, v4_tilde};
use super::numeric::{canonical_image_class, invariants_g3, l4_pair, DivisorClass, L4Pair};
use super::Genus3Error;

#[derive(Clone, Debug)]
pub enum Genus3Data {
    /// `B = P^1`, `ξ` given by `σ2 : S^2 V1 → V2`.
    P1 { v1: SplitBundle, sigma2: GradedMap<Rationals> },
    Abstract { base_genus: u32, deg_v1: i64, deg_tau: u64 },
}

#[derive(Clone, Debug)]
pub struct Genus3FiveTuple {
    pub data: Genus3Data,
    /// `L4' → S^2 V2`, one column, lifting the embedding into `Ṽ4`.
    pub w: Option<GradedMap<Rationals>>,
}

impl Genus3FiveTuple {
    pub fn new(data: Genus3Data) -> Result<Self, Genus3Error> {
        if let Genus3Data::P1 { v1, sigma2 } = &data {
            if v1.rank() != 3 {
                return Err(Genus3Error::InvalidArgument(format!("V1 = {v1} has rank {}", v1.rank())));
            }
            let s2 = v1.sym_power(2);
            if sigma2.source() != s2 {
                return Err(Genus3Error::InvalidXi(format!("σ2 source {} is not S^2 V1 = {s2}", sigma2.source())));
            }
        }
        Ok(Genus3FiveTuple { data, w: None })
    }

    pub fn with_w(mut self, w: GradedMap<Rationals>) -> Self {
        self.w = Some(w);
        self
    }

    pub fn base_genus(&self) -> u32 {
        match &self.data {
            Genus3Data::P1 { .. } => 0,
            Genus3Data::Abstract { base_genus, .. } => *base_genus,
        }
    }

    /// `(deg V1, deg τ)`.
    pub fn degrees(&self) -> Result<(i64, u64), Genus3Error> {
        match &self.data {
            Genus3Data::P1 { v1, sigma2 } => Ok((v1.degree(), analyze_sigma2_g3(sigma2)?.tau_degree as u64)),
            Genus3Data::Abstract { deg_v1, deg_tau, .. } => Ok((*deg_v1, *deg_tau)),
        }
    }

    pub fn invariants(&self) -> Result<(i64, i64), Genus3Error> {
        let (d1, dt) = self.degrees()?;
        Ok(invariants_g3(self.base_genus() as i64, d1, dt as i64))
    }

    pub fn l4_pair(&self) -> Result<L4Pair, Genus3Error> {
        let (d1, dt) = self.degrees()?;
        Ok(l4_pair(d1, dt as i64))
    }

    pub fn canonical_image_class(&self) -> Result<DivisorClass, Genus3Error> {
        let (d1, dt) = self.degrees()?;
        Ok(canonical_image_class(d1, dt as i64))
    }

    fn sigma2(&self) -> Option<&GradedMap<Rationals>> {
        match &self.data {
            Genus3Data::P1 { sigma2, .. } => Some(sigma2),
            Genus3Data::Abstract { .. } => None,
        }
    }

    /// Conditions i–iv on `(ξ, w)` and the rational-double-point condition.
    pub fn admissibility(&self) -> Vec<Check> {
        use CheckStatus::*;
        let mut out = Vec::new();
        let Some(sigma2) = self.sigma2() else {
            for c in ["i", "ii", "iii", "iv"] {
                out.push(Check::new(c, OutOfScope, "needs explicit V1 and σ2 over P^1"));
            }
            out.push(Check::new("rdp", OutOfScope, "RDP check on the canonical model is not decided"));
            return out;
        };
        let analysis = analyze_sigma2_g3(sigma2);
        let bundles = analysis.as_ref().map_err(Clone::clone).and_then(|_| Ok((v3_of(sigma2)?, v4_tilde(sigma2)?)));
        let i_ok = match (&analysis, &bundles) {
            (Ok(a), Ok((v3, v4))) => {
                out.push(Check::new(
                    "i",
                    Verified,
                    format!("V2 = {}, V3 = {v3}, Ṽ4 = {} locally free", a.v2, v4.splitting),
                ));
                true
            }
            (Err(e), _) | (_, Err(e)) => {
                out.push(Check::new("i", Violated, e.to_string()));
                false
            }
        };
        let expected = self.l4_pair().ok().map(|l| l.l4_prime);
        let tgt = sym_degrees(sigma2.target_degrees(), 2);
        let w = match (&self.w, i_ok) {
            (None, _) => {
                out.push(Check::new("ii", OutOfScope, "no embedding w given"));
                None
            }
            (Some(_), false) => {
                out.push(Check::new("ii", OutOfScope, "ξ does not yield a bundle"));
                None
            }
            (Some(w), true) => {
                let src = w.source_degrees();
                if src.len() != 1 || w.target_degrees() != tgt || Some(src[0]) != expected {
                    out.push(Check::new(
                        "ii",
                        Violated,
                        format!("w has source {src:?}, expected one copy of O({})", expected.unwrap_or_default()),
                    ));
                    None
                } else if w.is_zero() {
                    out.push(Check::new("ii", Violated, "w is zero"));
                    None
                } else {
                    out.push(Check::new("ii", Verified, format!("L4' = O({})", src[0])));
                    Some(w)
                }
            }
        };
        let Some(w) = w else {
            out.push(Check::new("iii", OutOfScope, "no valid w"));
            out.push(Check::new("iv", OutOfScope, "no valid w"));
            out.push(Check::new("rdp", OutOfScope, "RDP check on the canonical model is not decided"));
            return out;
        };
        out.push(match embedding_is_subbundle(sigma2, w) {
            Ok(true) => Check::new("iii", Verified, "L4' → Ṽ4 has locally free cokernel"),
            Ok(false) => Check::new("iii", Violated, "L4' → Ṽ4 drops rank somewhere"),
            Err(e) => Check::new("iii", Violated, e.to_string()),
        });
        let a = analysis.expect("checked above");
        let verdicts: Vec<bool> =
            a.points.iter().map(|p| check_condition_iv(sigma2, w, &p.point).unwrap_or(false)).collect();
        out.push(if verdicts.iter().any(|v| !v) {
            Check::new("iv", Violated, "w(p) lies in the image of V2 ⊗ S^2 V1 at some point of τ")
        } else if a.has_unsplit_points {
            Check::new("iv", OutOfScope, "τ has points that are not rational")
        } else {
            Check::new("iv", Verified, format!("checked at {} point(s) of τ", verdicts.len()))
        });
        out.push(Check::new("rdp", OutOfScope, "RDP check on the canonical model is not decided"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::conjunction;
    use crate::exactalg::rational::q;
    use crate::genus3::example::pg3_sigma2;
    use crate::p1bundles::BiForm;

    fn tuple(d: u32) -> Genus3FiveTuple {
        Genus3FiveTuple::new(Genus3Data::P1 { v1: SplitBundle::repeated(2, 3), sigma2: pg3_sigma2(d).unwrap() }).unwrap()
    }

    /// `z_a^2` on the last coordinate of `V2` plus `t1 z_0^2`, as a section of
    /// `S^2 V2 ⊗ O(−6 − d)`.
    fn w_for(d: u32) -> GradedMap<Rationals> {
        let f = Rationals;
        let t = tuple(d);
        let tgt = sym_degrees(t.sigma2().unwrap().target_degrees(), 2);
        let src = 6 + d as i64;
        GradedMap::from_fn(f, vec![src], tgt.clone(), |i, _| {
            let deg = (tgt[i] - src) as usize;
            if i == 20 {
                BiForm::monomial(&f, q(1), deg, 0).add(&f, &BiForm::monomial(&f, q(1), 0, deg))
            } else if i == 0 {
                BiForm::monomial(&f, q(3), 1, deg - 1).add(&f, &BiForm::monomial(&f, q(1), 0, deg))
            } else {
                BiForm::zero(&f, deg as i64)
            }
        })
        .unwrap()
    }

    #[test]
    fn invariants_of_the_family() {
        for d in 0..=2 {
            let t = tuple(d);
            assert_eq!(t.degrees().unwrap(), (6, d as u64));
            assert_eq!(t.invariants().unwrap(), (4, 2 + d as i64));
            assert_eq!(t.l4_pair().unwrap(), L4Pair { l4: 6 - d as i64, l4_prime: 6 + d as i64 });
        }
        assert_eq!(tuple(0).canonical_image_class().unwrap(), DivisorClass { relative_degree: 4, base_twist: -6 });
        let a = Genus3FiveTuple::new(Genus3Data::Abstract { base_genus: 1, deg_v1: 1, deg_tau: 0 }).unwrap();
        assert_eq!(a.invariants().unwrap(), (1, 3));
        assert_eq!(a.canonical_image_class().unwrap().base_twist, -1);
    }

    #[test]
    fn checklist() {
        let t = tuple(1);
        let names: Vec<_> = t.admissibility().iter().map(|c| c.condition.clone()).collect();
        assert_eq!(names, ["i", "ii", "iii", "iv", "rdp"]);
        let checks = t.clone().with_w(w_for(1)).admissibility();
        assert_eq!(checks[0].status, CheckStatus::Verified);
        assert_eq!(checks[1].status, CheckStatus::Verified);
        assert_eq!(checks[3].status, CheckStatus::Verified, "{:?}", checks[3]);
        assert_eq!(conjunction(&checks), CheckStatus::OutOfScope);
    }

    #[test]
    fn wrong_w_degree_is_violation() {
        let f = Rationals;
        let t = tuple(1);
        let tgt = sym_degrees(t.sigma2().unwrap().target_degrees(), 2);
        let w = GradedMap::from_fn(f, vec![6], tgt, |_, _| BiForm::zero(&f, 0)).unwrap();
        assert_eq!(t.with_w(w).admissibility()[1].status, CheckStatus::Violated);
    }

    #[test]
    fn rank_three_v1_required() {
        let e = Genus3FiveTuple::new(Genus3Data::P1 { v1: SplitBundle::repeated(2, 2), sigma2: pg3_sigma2(0).unwrap() });
        assert!(e.is_err());
    }
}
