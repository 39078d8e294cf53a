//! Strata of surfaces with `p_g = q = 1`, `K^2 = 3` whose Albanese fibration
//! has genus 2, and what is known about `h^0(Ã6)` on each.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::ellbundles::{classify_v2, ext1_dim, tau_is_nontrivial_two_torsion, Atom, EllLine, NormalForm, PointLabel, V2Case};
use crate::genus2::{a6_tilde_elliptic, H0};

use super::stratify::{stratify, StratifyOptions};
use super::ModuliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaseSetup {
    pub v1: NormalForm,
    pub s2v1: NormalForm,
    pub deg_v1: i64,
    pub deg_tau: u64,
    /// `dim Ext^1(O_τ, S^2 V1)`.
    pub ext_dim: u64,
}

pub fn base_setup() -> Result<BaseSetup, ModuliError> {
    let v1 = NormalForm::new(vec![Atom::indec(2, EllLine::point(PointLabel::zero())).map_err(ell)?]);
    let s2v1 = v1.sym(2).map_err(ell)?;
    let deg_tau = 1;
    Ok(BaseSetup { deg_v1: v1.degree(), ext_dim: ext1_dim(deg_tau, &s2v1), v1, s2v1, deg_tau })
}

fn ell(e: impl fmt::Display) -> ModuliError {
    ModuliError::Stratum(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    /// Indecomposable `V2`, `3τ ≢ 3[0]`.
    IGeneral,
    /// Indecomposable `V2`, `3τ ≡ 3[0]`.
    I3,
    II,
    III,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::IGeneral => "I°",
            Stratum::I3 => "I₃",
            Stratum::II => "II",
            Stratum::III => "III",
        })
    }
}

impl Serialize for Stratum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StratumFlags {
    pub tau_is_origin: bool,
    /// `O([0] − τ)` is a nontrivial 2-torsion class.
    pub tau_two_torsion: bool,
    pub three_tau_is_three_origin: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum H0A6 {
    Exact { value: u64 },
    Range { lo: u64, hi: u64 },
    /// Determined by the rank of `F'` over the parameters `(a, b, c, d)`.
    Sampler,
    /// After stratifying: `generic` off the hypersurface, `special` on it.
    Stratified { generic: u64, special: u64 },
    /// Only an upper bound is available; `comparison` is the value on the
    /// stratum this one degenerates to.
    UpperBound { hi: u64, comparison: u64, note: String },
}

impl fmt::Display for H0A6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H0A6::Exact { value } => write!(f, "{value}"),
            H0A6::Range { lo, hi } => write!(f, "{lo}..{hi}"),
            H0A6::Sampler => write!(f, "see stratify"),
            H0A6::Stratified { generic, special } => write!(f, "{generic} (generic), {special} (on a hypersurface)"),
            H0A6::UpperBound { hi, .. } => write!(f, "<= {hi}"),
        }
    }
}

impl From<H0> for H0A6 {
    fn from(h: H0) -> Self {
        match h {
            H0::Exact { value } => H0A6::Exact { value },
            H0::Range { lo, hi } => H0A6::Range { lo, hi },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumReport {
    pub stratum: Stratum,
    pub case: String,
    pub v2: NormalForm,
    pub tau: PointLabel,
    pub flags: StratumFlags,
    pub h0_a6: H0A6,
    pub parameters: ParameterCount,
}

/// `vanishing[i]` says whether `f_{i+1}` vanishes; `tau` is `τ − [0]`.
pub fn classify_stratum(vanishing: [bool; 3], tau: &PointLabel) -> Result<StratumReport, ModuliError> {
    if vanishing.iter().all(|&v| v) {
        return Err(ModuliError::Stratum("f1 = f2 = f3 = 0 does not give a locally free V2".into()));
    }
    let (case, v2) = classify_v2(vanishing, tau).map_err(ell)?;
    let flags = StratumFlags {
        tau_is_origin: tau.is_zero(),
        tau_two_torsion: tau_is_nontrivial_two_torsion(tau),
        three_tau_is_three_origin: tau.is_three_torsion(),
    };
    let stratum = match case {
        V2Case::I if flags.three_tau_is_three_origin => Stratum::I3,
        V2Case::I => Stratum::IGeneral,
        V2Case::II(_) => Stratum::II,
        V2Case::III(_) => Stratum::III,
    };
    let h0_a6 = h0_a6(stratum, case, tau, &v2)?;
    Ok(StratumReport {
        stratum,
        case: case.to_string(),
        v2,
        tau: tau.clone(),
        flags,
        h0_a6,
        parameters: parameter_count(stratum),
    })
}

fn h0_a6(stratum: Stratum, case: V2Case, tau: &PointLabel, v2: &NormalForm) -> Result<H0A6, ModuliError> {
    match stratum {
        Stratum::I3 if tau.is_zero() => Ok(H0A6::Sampler),
        Stratum::I3 => Ok(H0A6::UpperBound {
            hi: 3,
            comparison: 2,
            note: "semicontinuity bound; h0 = 3 is excluded only by degenerating to stratum II, where h0 = 2".into(),
        }),
        _ => Ok(a6_tilde_elliptic(case, tau, v2).map_err(ell)?.h0.into()),
    }
}

/// Replace a sampler delegation by the values the stratification finds.
pub fn resolve_with_sampler(report: &StratumReport, opts: &StratifyOptions) -> Result<H0A6, ModuliError> {
    if report.h0_a6 != H0A6::Sampler {
        return Ok(report.h0_a6.clone());
    }
    let rep = stratify(opts)?;
    let generic = 2 + rep.generic_corank as u64;
    let special = if rep.on_locus_points > 0 && rep.on_locus_corank_one == rep.on_locus_points { generic + 1 } else { generic };
    Ok(H0A6::Stratified { generic, special })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterCount {
    pub stratum: Stratum,
    /// `(what, count)`; empty when only the total is known.
    pub terms: Vec<(&'static str, i64)>,
    pub dimension: i64,
    /// `dimension` is an upper bound only.
    pub at_most: bool,
    pub components: u32,
    pub note: &'static str,
}

fn parameter_count(s: Stratum) -> ParameterCount {
    let (terms, dimension, at_most, components, note) = match s {
        Stratum::IGeneral => (vec![("B", 1), ("tau", 1), ("xi", 2), ("w", 1)], 5, false, 1, ""),
        Stratum::III => (vec![("B", 1), ("tau", 0), ("xi", 0), ("H0(A6)", 4)], 5, false, 2, "tau = [0] or a 2-torsion shift"),
        Stratum::II => (vec![], 4, true, 1, "lies in the closure of a 5-dimensional stratum"),
        Stratum::I3 => (vec![], 4, true, 1, "3 + 1 with h0 = 2, or 3 - 1 + 2 on the hypersurface where h0 = 3"),
    };
    ParameterCount { stratum: s, terms, dimension, at_most, components, note }
}

pub fn parameter_counts() -> Vec<ParameterCount> {
    [Stratum::IGeneral, Stratum::I3, Stratum::II, Stratum::III].into_iter().map(parameter_count).collect()
}

/// `10χ − 2K^2 + 1`, a lower bound for the dimension of every component.
pub fn clemens_bound(chi: i64, ksq: i64) -> i64 {
    10 * chi - 2 * ksq + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliSummary {
    pub strata: Vec<ParameterCount>,
    pub lower_bound: i64,
    /// Components of the locus with Albanese fibres of genus 2.
    pub genus2_components: u32,
    /// Components of the whole moduli space, adding the one with Albanese
    /// fibres of genus 3.
    pub total_components: u32,
}

pub fn moduli_summary() -> ModuliSummary {
    let strata = parameter_counts();
    let lower_bound = clemens_bound(1, 3);
    // Strata of dimension below the bound cannot fill a component.
    let genus2_components = strata.iter().filter(|p| p.dimension >= lower_bound).map(|p| p.components).sum();
    ModuliSummary { strata, lower_bound, genus2_components, total_components: genus2_components + 1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellbundles::parse_tau;

    fn report(vanishing: [bool; 3], tau: &str) -> StratumReport {
        classify_stratum(vanishing, &parse_tau(tau).unwrap()).unwrap()
    }

    #[test]
    fn setup() {
        let b = base_setup().unwrap();
        assert_eq!(b.deg_v1, 1);
        assert_eq!(b.deg_tau, 1);
        assert_eq!(b.ext_dim, 3);
        assert_eq!(b.s2v1.to_string(), "(sum (line 1 L1) (line 1 L2) (line 1 L3))");
    }

    #[test]
    fn labels() {
        assert_eq!(report([false; 3], "general").stratum, Stratum::IGeneral);
        assert_eq!(report([false; 3], "L1").stratum, Stratum::IGeneral);
        let r = report([false; 3], "[0]");
        assert_eq!(r.stratum, Stratum::I3);
        assert!(r.flags.tau_is_origin && r.flags.three_tau_is_three_origin);
        assert_eq!(report([false; 3], "M2").stratum, Stratum::I3);
        assert_eq!(report([true, false, false], "general").stratum, Stratum::II);
        let r = report([false, true, true], "[0]");
        assert_eq!(r.stratum, Stratum::III);
        assert_eq!(r.h0_a6, H0A6::Exact { value: 5 });
        assert!(report([false, false, true], "L2").flags.tau_two_torsion);
    }

    #[test]
    fn all_vanishing_is_an_error() {
        assert!(classify_stratum([true; 3], &PointLabel::zero()).is_err());
    }

    #[test]
    fn h0_values() {
        assert_eq!(report([false; 3], "general").h0_a6, H0A6::Exact { value: 2 });
        assert_eq!(report([true, false, false], "general").h0_a6, H0A6::Exact { value: 2 });
        assert_eq!(report([true, false, false], "L2").h0_a6, H0A6::Exact { value: 3 });
        assert_eq!(report([false; 3], "[0]").h0_a6, H0A6::Sampler);
        assert!(matches!(report([false; 3], "M4").h0_a6, H0A6::UpperBound { hi: 3, comparison: 2, .. }));
    }

    #[test]
    fn sampler_resolution() {
        let r = report([false; 3], "[0]");
        let opts = StratifyOptions { samples: 50, lines: 10, seed: 1, ..Default::default() };
        assert_eq!(resolve_with_sampler(&r, &opts).unwrap(), H0A6::Stratified { generic: 2, special: 3 });
    }

    #[test]
    fn counts() {
        let p = parameter_counts();
        let i0 = &p[0];
        assert_eq!((i0.terms.iter().map(|t| t.1).sum::<i64>(), i0.dimension), (5, 5));
        let iii = &p[3];
        assert_eq!(iii.terms.iter().map(|t| t.1).collect::<Vec<_>>(), [1, 0, 0, 4]);
        assert_eq!((iii.dimension, iii.components), (5, 2));
        assert!(p[1].at_most && p[2].at_most);
        assert_eq!(clemens_bound(1, 3), 5);
        let s = moduli_summary();
        assert_eq!((s.genus2_components, s.total_components), (3, 4));
    }
}
