//! Report generation behind the `fibrato` binary.

pub mod tuple_file;

use serde_json::{json, Value};
use thiserror::Error;

use fibrato::checks::{conjunction, Check};
use fibrato::ellbundles::parse_tau;
use fibrato::genus2::{horikawa_type, minimal_model_bound, torsion_structure_g2, Genus2Error, Genus2FiveTuple};
use fibrato::genus3::{pg3_example, torsion_rank_g3, Genus3Error, Genus3FiveTuple};
use fibrato::moduli::{classify_stratum, moduli_summary, resolve_with_sampler, stratify, ModuliError, StratifyOptions};

pub use tuple_file::{parse_pattern, Parsed, TupleFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("inconsistent data: {0}")]
    Math(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Math(_) => 3,
            CliError::OutOfScope(_) => 4,
        }
    }
}

impl From<Genus2Error> for CliError {
    fn from(e: Genus2Error) -> Self {
        match e {
            Genus2Error::OutOfScope(m) => CliError::OutOfScope(m),
            Genus2Error::Parse(m) => CliError::Schema(m),
            e => CliError::Math(e.to_string()),
        }
    }
}

impl From<Genus3Error> for CliError {
    fn from(e: Genus3Error) -> Self {
        match e {
            Genus3Error::OutOfRange(m) => CliError::OutOfScope(m),
            e => CliError::Math(e.to_string()),
        }
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::Field(m) => CliError::Schema(m),
            e => CliError::Math(e.to_string()),
        }
    }
}

fn checklist(checks: &[Check]) -> Value {
    json!({ "conditions": checks, "overall": conjunction(checks) })
}

fn genus2_report(t: &Genus2FiveTuple) -> Result<Value, CliError> {
    let (deg_v1, deg_tau) = t.degrees()?;
    let (chi, ksq) = t.invariants()?;
    let torsion: Vec<Value> = (2..=6)
        .map(|k| {
            let s = torsion_structure_g2(k, &[deg_tau as u32]).expect("k ≥ 2");
            json!({ "k": k, "degree": s.degree })
        })
        .collect();
    let mut r = json!({
        "genus": 2,
        "base_genus": t.base_genus(),
        "deg_v1": deg_v1,
        "deg_tau": deg_tau,
        "chi": chi,
        "ksq": ksq,
        "invariants_source": "χ = deg V1 + b − 1, K^2 = 2 deg V1 + deg τ + 8(b − 1)",
        "v3_plus": t.v3_plus()?.to_string(),
        "torsion_degrees": torsion,
        "torsion_source": "deg T_2n = n^2 deg τ, deg T_2n+1 = n(n+1) deg τ",
        "ksq_bound_minimal_model": minimal_model_bound(2),
        "admissibility": checklist(&t.admissibility()),
    });
    if let Ok(a6) = t.a6_tilde() {
        r["a6_tilde"] = json!({ "rank": a6.rank, "degree": a6.degree, "h0": a6.h0.to_string() });
    }
    Ok(r)
}

fn genus3_report(t: &Genus3FiveTuple) -> Result<Value, CliError> {
    let (deg_v1, deg_tau) = t.degrees()?;
    let (chi, ksq) = t.invariants()?;
    let l = t.l4_pair()?;
    let class = t.canonical_image_class()?;
    let torsion: Vec<Value> =
        (2..=6).map(|n| json!({ "n": n, "rank_over_o_tau": torsion_rank_g3(n).expect("n ≥ 2") })).collect();
    Ok(json!({
        "genus": 3,
        "base_genus": t.base_genus(),
        "deg_v1": deg_v1,
        "deg_tau": deg_tau,
        "chi": chi,
        "ksq": ksq,
        "invariants_source": "χ = deg V1 + 2(b − 1), K^2 = 3 deg V1 + deg τ + 16(b − 1)",
        "l4": format!("O({})", l.l4),
        "l4_prime": format!("O({})", l.l4_prime),
        "canonical_image_class": format!("{} H − {} F", class.relative_degree, -class.base_twist),
        "torsion": torsion,
        "admissibility": checklist(&t.admissibility()),
    }))
}

pub fn cmd_invariants(file: &TupleFile) -> Result<Value, CliError> {
    let body = match file.to_tuple()? {
        Parsed::Genus2(t) => genus2_report(&t)?,
        Parsed::Genus3(t) => genus3_report(&t)?,
    };
    Ok(json!({ "input": file, "report": body }))
}

/// Invariants from `(b, χ, K^2)` for genus 2.
pub fn cmd_solve(b: u32, chi: i64, ksq: i64) -> Result<Value, CliError> {
    let (deg_v1, deg_tau) = fibrato::genus2::solve_tuple_degrees(b as i64, chi, ksq)?;
    let t = Genus2FiveTuple::new(fibrato::genus2::Genus2Data::Abstract { base_genus: b, deg_v1, deg_tau: deg_tau as u64 })?;
    Ok(json!({ "input": { "base_genus": b, "chi": chi, "ksq": ksq }, "report": genus2_report(&t)? }))
}

pub fn cmd_a6(file: &TupleFile) -> Result<Value, CliError> {
    let Parsed::Genus2(t) = file.to_tuple()? else {
        return Err(CliError::OutOfScope("Ã6 is defined for genus-2 tuples".into()));
    };
    let a = t.a6_tilde()?;
    Ok(json!({ "input": file, "a6_tilde": a }))
}

pub fn cmd_classify(pattern: &str, tau: &str, resolve: Option<&StratifyOptions>) -> Result<Value, CliError> {
    let vanishing = parse_pattern(pattern)?;
    let tau = parse_tau(tau).map_err(|e| CliError::Schema(e.to_string()))?;
    let report = classify_stratum(vanishing, &tau)?;
    let mut v = json!({ "input": { "pattern": pattern, "tau": tau.to_string() }, "report": report });
    if let Some(opts) = resolve {
        let h = resolve_with_sampler(&report, opts)?;
        v["report"]["h0_a6"] = json!(h);
        v["report"]["h0_a6_source"] = json!(format!("rank of F' at {} samples, seed {}, prime {}", opts.samples, opts.seed, opts.prime));
    }
    Ok(v)
}

pub fn cmd_moduli() -> Value {
    json!(moduli_summary())
}

pub fn cmd_pg3_example(d: u32) -> Result<Value, CliError> {
    let r = pg3_example(d)?;
    Ok(json!({
        "d": r.d,
        "v1": r.v1.to_string(),
        "v2": r.v2.to_string(),
        "tau": r.tau,
        "s2v2": r.s2v2.to_string(),
        "s2v2_distinct_pairs": r.s2v2_distinct_pairs.to_string(),
        "v3": r.v3.to_string(),
        "v4_tilde": r.v4_tilde.to_string(),
        "l4": r.l4.to_string(),
        "l4_prime": r.l4_prime.to_string(),
        "chi": r.chi,
        "ksq": r.ksq,
        "h1_obstruction": r.h1_obstruction,
        "linear_system_dim": r.linear_system_dim,
        "moduli_dim": r.moduli_dim,
        "dimension_source": "h^0 of S^2 V2 and S^2(Λ^2 V1) twisted by L4'^{-1}, degreewise",
        "globally_generated": r.globally_generated,
        "base_locus": r.base_locus,
        "smoothness": r.smoothness,
        "two_connected_fibres": r.two_connected_fibres,
    }))
}

/// TSV rows followed by `#`-prefixed summary lines.
pub fn cmd_stratify(opts: &StratifyOptions) -> Result<String, CliError> {
    let rep = stratify(opts)?;
    Ok(rep.tsv() + &rep.summary())
}

pub fn cmd_torsion(genus: u32, k: u32, s_list: &[u32]) -> Result<Value, CliError> {
    match genus {
        2 => Ok(json!(torsion_structure_g2(k, s_list)?)),
        3 => Ok(json!({ "n": k, "rank_over_o_tau": torsion_rank_g3(k)? })),
        g => Err(CliError::OutOfScope(format!("torsion is implemented for genus 2 and 3, not {g}"))),
    }
}

pub fn cmd_horikawa(s: Option<u32>, lambda_zero: Option<bool>) -> Result<Value, CliError> {
    let cell = |s: u32, lz: bool| {
        let types: Vec<String> = horikawa_type(s, lz).iter().map(ToString::to_string).collect();
        json!({ "s": s, "lambda_zero": lz, "types": types })
    };
    match (s, lambda_zero) {
        (Some(0), _) => Err(CliError::Math("multiplicity must be positive".into())),
        (Some(s), Some(lz)) => Ok(cell(s, lz)),
        (Some(s), None) => Ok(json!([cell(s, true), cell(s, false)])),
        (None, _) => Ok(json!((1..=8).flat_map(|s| [cell(s, true), cell(s, false)]).collect::<Vec<_>>())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Schema(String::new()).exit_code(), 2);
        assert_eq!(CliError::Math(String::new()).exit_code(), 3);
        assert_eq!(CliError::OutOfScope(String::new()).exit_code(), 4);
    }

    #[test]
    fn solve_godeaux() {
        let v = cmd_solve(0, 1, 1).unwrap();
        assert_eq!(v["report"]["deg_v1"], 2);
        assert_eq!(v["report"]["deg_tau"], 5);
        assert_eq!(v["report"]["v3_plus"], "O(7)");
        assert_eq!(cmd_solve(0, 5, 1).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn classify_examples() {
        let v = cmd_classify("f2=f3=0", "[0]", None).unwrap();
        assert_eq!(v["report"]["stratum"], "III");
        assert_eq!(v["report"]["h0_a6"]["value"], 5);
        let v = cmd_classify("none-zero", "general", None).unwrap();
        assert_eq!(v["report"]["stratum"], "I°");
        assert_eq!(v["report"]["h0_a6"]["value"], 2);
        let v = cmd_classify("f1=0", "general", None).unwrap();
        assert_eq!(v["report"]["stratum"], "II");
        assert_eq!(v["report"]["h0_a6"]["value"], 2);
        assert_eq!(cmd_classify("f1=f2=f3=0", "[0]", None).unwrap_err().exit_code(), 3);
        assert_eq!(cmd_classify("g=0", "[0]", None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn horikawa_table_is_total() {
        let v = cmd_horikawa(None, None).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 16);
        assert_eq!(v[0]["types"], json!(["III_1", "V"]));
    }
}
