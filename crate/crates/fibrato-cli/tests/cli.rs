use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use fibrato_cli::tuple_file::{Base, Kind, TauSpec, TupleFile, V1Spec, XiSpec};

fn fibrato(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibrato"))
        .args(args)
        .env_remove("FIBRATO_DEFAULT_PRIME")
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = fibrato(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn tuple(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tuples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn godeaux_invariants() {
    let v = json_of(&["invariants", &tuple("godeaux.json")]);
    let r = &v["report"];
    assert_eq!((r["chi"].as_i64(), r["ksq"].as_i64()), (Some(1), Some(1)));
    assert_eq!(r["deg_tau"], 5);
    assert_eq!(r["v3_plus"], "O(7)");
    let n = json_of(&["invariants", &tuple("godeaux_numeric.json")]);
    assert_eq!(n["report"]["v3_plus"], "O(7)");
    let s = json_of(&["invariants", "--b", "0", "--chi", "1", "--ksq", "1"]);
    assert_eq!((s["report"]["deg_v1"].as_i64(), s["report"]["deg_tau"].as_i64()), (Some(2), Some(5)));
}

#[test]
fn empty_tau_over_elliptic_base() {
    let v = json_of(&["invariants", &tuple("empty_tau.json")]);
    assert_eq!((v["report"]["chi"].as_i64(), v["report"]["ksq"].as_i64()), (Some(0), Some(0)));
}

#[test]
fn checklists_are_complete() {
    let g2 = json_of(&["invariants", &tuple("elliptic_stratum_iii.json")]);
    let names: Vec<&str> =
        g2["report"]["admissibility"]["conditions"].as_array().unwrap().iter().map(|c| c["condition"].as_str().unwrap()).collect();
    assert_eq!(names, ["xi", "w", "i", "ii", "iii"]);
    assert_eq!(g2["report"]["a6_tilde"]["h0"], "5");
    let g3 = json_of(&["invariants", &tuple("genus3_p1.json")]);
    let conds = g3["report"]["admissibility"]["conditions"].as_array().unwrap();
    let names: Vec<&str> = conds.iter().map(|c| c["condition"].as_str().unwrap()).collect();
    assert_eq!(names, ["i", "ii", "iii", "iv", "rdp"]);
    assert_eq!(conds[0]["status"], "verified");
    assert_eq!((g3["report"]["chi"].as_i64(), g3["report"]["ksq"].as_i64()), (Some(4), Some(3)));
}

#[test]
fn pg3_example_dimensions() {
    for (d, lin, moduli) in [(0, 44, 33), (1, 36, 31), (3, 20, 27)] {
        let v = json_of(&["pg3-example", "--d", &d.to_string()]);
        assert_eq!((v["linear_system_dim"].as_i64(), v["moduli_dim"].as_i64()), (Some(lin), Some(moduli)));
    }
    assert_eq!(fibrato(&["pg3-example", "--d", "4"]).status.code(), Some(4));
}

#[test]
fn classify_patterns() {
    let v = json_of(&["classify", "--pattern", "f2=f3=0", "--tau", "[0]"]);
    assert_eq!((v["report"]["stratum"].as_str(), v["report"]["h0_a6"]["value"].as_u64()), (Some("III"), Some(5)));
    let v = json_of(&["classify", "--pattern", "none-zero", "--tau", "general"]);
    assert_eq!((v["report"]["stratum"].as_str(), v["report"]["h0_a6"]["value"].as_u64()), (Some("I°"), Some(2)));
    let v = json_of(&["classify", "--pattern", "f1=0"]);
    assert_eq!((v["report"]["stratum"].as_str(), v["report"]["h0_a6"]["value"].as_u64()), (Some("II"), Some(2)));
    assert_eq!(fibrato(&["classify", "--pattern", "f1=f2=f3=0"]).status.code(), Some(3));
}

#[test]
fn stratify_output() {
    let out = fibrato(&["stratify", "--samples", "1", "--lines", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], "seed\ttrial\ta\tb\tc\td\trank\tcorank\th0");

    let out = fibrato(&["stratify", "--samples", "5", "--lines", "2", "--exact-gcd"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# gcd of maximal minors: a*b*d^2 - a*b - b^2*c*d + c*d"));

    assert_eq!(fibrato(&["stratify", "--samples", "3", "--prime", "91"]).status.code(), Some(2));
    assert_eq!(fibrato(&["stratify", "--samples", "0"]).status.code(), Some(3));
}

#[test]
fn prime_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fibrato"))
        .args(["stratify", "--samples", "2", "--lines", "0"])
        .env("FIBRATO_DEFAULT_PRIME", "101")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("prime 101"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["stratify", "--samples", "40", "--lines", "4", "--seed", "9"];
    assert_eq!(fibrato(&args).stdout, fibrato(&args).stdout);
    let seq = fibrato(&[&args[..], &["--sequential"]].concat());
    assert_eq!(fibrato(&args).stdout, seq.stdout);
    let inv = ["invariants", &tuple("godeaux.json")];
    assert_eq!(fibrato(&inv).stdout, fibrato(&inv).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fibrato-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let out = fibrato(&["horikawa", "--output", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 16);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn schema_errors() {
    let dir = std::env::temp_dir().join(format!("fibrato-schema-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("unknown.json", r#"{"kind":"genus4","base":{"genus":0},"v1":[1,1]}"#, 2),
        ("extra.json", r#"{"kind":"genus2","base":{"genus":0},"v1":[1,1],"colour":1}"#, 2),
        ("negtau.json", r#"{"kind":"genus2","base":{"genus":0},"v1":{"degree":2},"tau":{"degree":-1}}"#, 3),
        (
            "badform.json",
            r#"{"kind":"genus2","base":{"genus":0},"v1":[1,1],"xi":{"target":[2,2,3],"sigma2":[["1","0","0"],["0","1","0"],["0","0","t0^2"]]}}"#,
            2,
        ),
        (
            "wrongtau.json",
            r#"{"kind":"genus2","base":{"genus":0},"v1":[1,1],"tau":{"degree":2},"xi":{"target":[2,2,3],"sigma2":[["1","0","0"],["0","1","0"],["0","0","t0"]]}}"#,
            3,
        ),
        ("genus2base.json", r#"{"kind":"genus2","base":{"genus":2},"v1":[1,1],"xi":{"pattern":"f1=0"}}"#, 4),
    ];
    for (name, body, code) in cases {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        assert_eq!(fibrato(&["invariants", p.to_str().unwrap()]).status.code(), Some(code), "{name}");
    }
    std::fs::remove_dir_all(dir).ok();
}

fn form() -> impl Strategy<Value = String> {
    prop_oneof![Just("0".to_string()), Just("1".to_string()), (1i64..9).prop_map(|c| format!("{c}*t0 - t1"))]
}

fn tuple_file() -> impl Strategy<Value = TupleFile> {
    let v1 = prop_oneof![
        prop::collection::vec(-3i64..6, 2..4).prop_map(V1Spec::Splitting),
        Just(V1Spec::Expression("(E 2 1 0)".into())),
        (-4i64..8).prop_map(|degree| V1Spec::Degree { degree }),
    ];
    let tau = prop::option::of((prop::option::of(0i64..9), prop::collection::vec(1u32..4, 0..3)).prop_map(
        |(degree, multiplicities)| TauSpec {
            degree,
            points: multiplicities.iter().enumerate().map(|(i, _)| format!("L{}", i + 1)).collect(),
            multiplicities,
        },
    ));
    let xi = prop::option::of(prop_oneof![
        prop::sample::select(vec!["f1=0", "f2=f3=0", "none-zero"]).prop_map(|p| XiSpec::Pattern { pattern: p.into() }),
        (prop::collection::vec(0i64..5, 1..4), 1usize..4).prop_flat_map(|(target, cols)| {
            prop::collection::vec(prop::collection::vec(form(), cols), target.len())
                .prop_map(move |sigma2| XiSpec::Sigma2 { sigma2, target: target.clone() })
        }),
    ]);
    let w = prop::option::of(prop::collection::vec((-5i64..5).prop_map(|c| c.to_string()), 1..4));
    (any::<bool>(), 0u32..3, prop::option::of("[a-z]{1,4}"), v1, tau, xi, w).prop_map(|(g3, genus, label, v1, tau, xi, w)| {
        TupleFile { kind: if g3 { Kind::Genus3 } else { Kind::Genus2 }, base: Base { genus, label }, v1, tau, xi, w }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tuple_file_round_trip(t in tuple_file()) {
        let back = TupleFile::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }
}
