//! JSON description of a 5-tuple.

use serde::{Deserialize, Serialize};

use fibrato::ellbundles::{parse_expr, parse_tau, rewrite, PointLabel};
use fibrato::exactalg::rational::{Rationals, Q};
use fibrato::genus2::{Genus2Data, Genus2FiveTuple};
use fibrato::genus3::{l4_pair, Genus3Data, Genus3FiveTuple};
use fibrato::p1bundles::bundle::sym_degrees;
use fibrato::p1bundles::{parse_form, GradedMap, SplitBundle};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Genus2,
    Genus3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Base {
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum V1Spec {
    /// Splitting type over `P^1`.
    Splitting(Vec<i64>),
    /// Bundle expression on an elliptic curve, e.g. `(E 2 1 0)`.
    Expression(String),
    Degree { degree: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub multiplicities: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XiSpec {
    /// Entries of `σ2` as forms in `t0, t1`, rows indexed by `target`,
    /// columns by `S^2 V1` in lexicographic order.
    Sigma2 { sigma2: Vec<Vec<String>>, target: Vec<i64> },
    /// Which of `f1, f2, f3` vanish, e.g. `f2=f3=0` or `none-zero`.
    Pattern { pattern: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFile {
    pub kind: Kind,
    pub base: Base,
    pub v1: V1Spec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<TauSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<XiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
}

pub fn parse_pattern(s: &str) -> Result<[bool; 3], CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "none-zero" || s == "none" {
        return Ok([false; 3]);
    }
    let Some(lhs) = s.strip_suffix("=0") else {
        return Err(CliError::Schema(format!("pattern {s:?} should look like f1=0, f2=f3=0 or none-zero")));
    };
    let mut v = [false; 3];
    for name in lhs.split('=') {
        match name {
            "f1" | "f2" | "f3" => v[name[1..].parse::<usize>().unwrap() - 1] = true,
            "f0" => return Err(CliError::Math("f0 never vanishes".into())),
            _ => return Err(CliError::Schema(format!("unknown coefficient {name:?} in pattern"))),
        }
    }
    Ok(v)
}

pub enum Parsed {
    Genus2(Genus2FiveTuple),
    Genus3(Genus3FiveTuple),
}

impl TupleFile {
    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn tau_degree(&self) -> Result<Option<u64>, CliError> {
        match self.tau.as_ref().and_then(|t| t.degree) {
            Some(d) if d < 0 => Err(CliError::Math(format!("deg τ = {d} is negative"))),
            Some(d) => Ok(Some(d as u64)),
            None => Ok(self.tau.as_ref().map(|t| t.multiplicities.iter().map(|&m| m as u64).sum()).filter(|&d| d > 0)),
        }
    }

    fn sigma2(&self, v1: &[i64]) -> Result<Option<GradedMap<Rationals>>, CliError> {
        let Some(XiSpec::Sigma2 { sigma2, target }) = &self.xi else { return Ok(None) };
        let src = sym_degrees(v1, 2);
        if sigma2.len() != target.len() || sigma2.iter().any(|r| r.len() != src.len()) {
            return Err(CliError::Schema(format!(
                "σ2 must be {} × {} to match target {target:?} and S^2 V1",
                target.len(),
                src.len()
            )));
        }
        let mut err = None;
        let m = GradedMap::from_fn(Rationals, src.clone(), target.clone(), |i, j| {
            parse_form(&sigma2[i][j], target[i] - src[j]).unwrap_or_else(|e| {
                err.get_or_insert(CliError::Schema(format!("σ2[{i}][{j}]: {e}")));
                fibrato::p1bundles::BiForm::zero(&Rationals, target[i] - src[j])
            })
        })
        .map_err(|e| CliError::Schema(e.to_string()))?;
        match err {
            Some(e) => Err(e),
            None => Ok(Some(m)),
        }
    }

    fn v1_degree(&self) -> Result<i64, CliError> {
        match &self.v1 {
            V1Spec::Splitting(d) => Ok(d.iter().sum()),
            V1Spec::Degree { degree } => Ok(*degree),
            V1Spec::Expression(e) => Ok(expression_bundle(e)?.1),
        }
    }

    pub fn to_tuple(&self) -> Result<Parsed, CliError> {
        let expected_rank = match self.kind {
            Kind::Genus2 => 2,
            Kind::Genus3 => 3,
        };
        let tau_deg = self.tau_degree()?;
        match (&self.v1, self.base.genus, &self.xi) {
            (V1Spec::Splitting(d), 0, Some(XiSpec::Sigma2 { .. })) => {
                if d.len() != expected_rank {
                    return Err(CliError::Math(format!("V1 has rank {} instead of {expected_rank}", d.len())));
                }
                let sigma2 = self.sigma2(d)?.expect("sigma2 present");
                let v1 = SplitBundle::new(d.clone());
                let parsed = match self.kind {
                    Kind::Genus2 => Parsed::Genus2(Genus2FiveTuple::new(Genus2Data::P1 { v1, sigma2 }).map_err(math)?),
                    Kind::Genus3 => {
                        let mut t = Genus3FiveTuple::new(Genus3Data::P1 { v1: v1.clone(), sigma2: sigma2.clone() })
                            .map_err(math)?;
                        if let Some(w) = &self.w {
                            let (_, dt) = t.degrees().map_err(math)?;
                            let src = l4_pair(v1.degree(), dt as i64).l4_prime;
                            let tgt = sym_degrees(sigma2.target_degrees(), 2);
                            if w.len() != tgt.len() {
                                return Err(CliError::Schema(format!("w needs {} entries, got {}", tgt.len(), w.len())));
                            }
                            let entries = w
                                .iter()
                                .zip(&tgt)
                                .enumerate()
                                .map(|(i, (s, &t))| parse_form(s, t - src).map_err(|e| CliError::Schema(format!("w[{i}]: {e}"))))
                                .collect::<Result<Vec<_>, _>>()?;
                            let gm = GradedMap::from_fn(Rationals, vec![src], tgt, |i, _| entries[i].clone())
                                .map_err(|e| CliError::Schema(e.to_string()))?;
                            t = t.with_w(gm);
                        }
                        Parsed::Genus3(t)
                    }
                };
                self.check_tau(&parsed, tau_deg)?;
                Ok(parsed)
            }
            (V1Spec::Expression(e), 1, Some(XiSpec::Pattern { pattern })) if self.kind == Kind::Genus2 => {
                let (rank, deg) = expression_bundle(e)?;
                if (rank, deg) != (2, 1) {
                    return Err(CliError::Math(format!("V1 = {e} has rank {rank} and degree {deg}, expected 2 and 1")));
                }
                let point = self.tau.as_ref().and_then(|t| t.points.first()).map(String::as_str).unwrap_or("[0]");
                let tau: PointLabel = parse_tau(point).map_err(|e| CliError::Schema(e.to_string()))?;
                if tau_deg.is_some_and(|d| d != 1) {
                    return Err(CliError::Math("τ is a single point on this base".into()));
                }
                let mut t = Genus2FiveTuple::new(Genus2Data::Elliptic { tau, vanishing: parse_pattern(pattern)? })
                    .map_err(math)?;
                t.w = self.w_coordinates()?;
                Ok(Parsed::Genus2(t))
            }
            (_, b, None) => {
                let deg_v1 = self.v1_degree()?;
                let Some(deg_tau) = tau_deg.or(self.tau.as_ref().map(|_| 0)) else {
                    return Err(CliError::Schema("tau.degree is required without ξ".into()));
                };
                Ok(match self.kind {
                    Kind::Genus2 => Parsed::Genus2(
                        Genus2FiveTuple::new(Genus2Data::Abstract { base_genus: b, deg_v1, deg_tau }).map_err(math)?,
                    ),
                    Kind::Genus3 => Parsed::Genus3(
                        Genus3FiveTuple::new(Genus3Data::Abstract { base_genus: b, deg_v1, deg_tau }).map_err(math)?,
                    ),
                })
            }
            _ => Err(CliError::OutOfScope(
                "explicit ξ is supported as σ2 over P^1, or as a vanishing pattern for genus 2 over an elliptic base".into(),
            )),
        }
    }

    fn w_coordinates(&self) -> Result<Option<Vec<Q>>, CliError> {
        self.w
            .as_ref()
            .map(|w| {
                w.iter()
                    .map(|s| s.trim().parse::<Q>().map_err(|_| CliError::Schema(format!("w entry {s:?} is not rational"))))
                    .collect()
            })
            .transpose()
    }

    fn check_tau(&self, parsed: &Parsed, declared: Option<u64>) -> Result<(), CliError> {
        let Some(d) = declared else { return Ok(()) };
        let actual = match parsed {
            Parsed::Genus2(t) => t.degrees().map_err(math)?.1,
            Parsed::Genus3(t) => t.degrees().map_err(math)?.1,
        };
        if d != actual {
            return Err(CliError::Math(format!("declared deg τ = {d} but coker σ2 has length {actual}")));
        }
        Ok(())
    }
}

fn expression_bundle(e: &str) -> Result<(u32, i64), CliError> {
    let nf = rewrite(&parse_expr(e).map_err(|x| CliError::Schema(x.to_string()))?).map_err(math)?;
    Ok((nf.rank(), nf.degree()))
}

fn math(e: impl std::fmt::Display) -> CliError {
    let s = e.to_string();
    if s.starts_with("out of scope") {
        CliError::OutOfScope(s)
    } else {
        CliError::Math(s)
    }
}
