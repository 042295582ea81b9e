use std::process::Command;

use zigcat::homotopy::Complex;
use zigcat::zigzag::{Grading, Kind, ZigzagAlgebra};
use zigcat::Rat;
use zigcat_cli::{parse_structured, run, Verdict};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zigcat")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn data() -> String {
    format!("{}/../../data/curves", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn act_output_parses_back() {
    let alg = ZigzagAlgebra::<Rat>::new(Kind::B, 3, Grading::Ks).unwrap();
    for w in ["1", "-2 1", "1 2 1 2", "3 -1 2"] {
        let out = run(["act", "--type", "B", "--n", "3", "--word", w, "--start", "2", "--format", "structured"]).unwrap();
        let r = parse_structured(&out.stdout).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].verdict, Verdict::Info);
        let c = Complex::parse(&alg, &r[0].witness).unwrap();
        c.check(&alg).unwrap();
        assert_eq!(c.render(&alg), r[0].witness);
    }
}

#[test]
fn text_act_matches_structured_witness() {
    let (code, text, _) = bin(&["act", "--n", "2", "--word", "1 2", "--start", "1"]);
    assert_eq!(code, 0);
    let out = run(["act", "--n", "2", "--word", "1 2", "--start", "1", "--format", "structured"]).unwrap();
    let r = parse_structured(&out.stdout).unwrap();
    assert_eq!(text.trim_end(), r[0].witness.trim_end());
}

#[test]
fn exit_codes() {
    let (code, out, _) = bin(&["check", "decat-square", "--n", "3"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("PASS"));
    let (code, out, _) = bin(&["check", "decat-square", "--n", "3", "--perturb"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    let (code, _, err) = bin(&["act", "--n", "2", "--word", "1 x"]);
    assert_eq!(code, 2);
    assert!(err.contains("column"), "{}", err);
    let (code, _, _) = bin(&["algebra", "info", "--n", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = bin(&["check", "faithfulness-sample", "--maxlen", "40"]);
    assert_eq!(code, 2);
    let (code, _, _) = bin(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn jobs_do_not_change_results() {
    let runs: Vec<String> = ["1", "4"]
        .iter()
        .map(|j| run(["--jobs", j, "check", "equivariance", "--n", "2", "--maxlen", "3", "--format", "structured"]).unwrap().stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
    let d = data();
    let a = run(["--jobs", "1", "check", "poincare-itrigr", d.as_str(), "--format", "structured"]).unwrap().stdout;
    let b = run(["--jobs", "3", "check", "poincare-itrigr", d.as_str(), "--format", "structured"]).unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn seeded_sampling_is_reproducible() {
    let go = |seed: &str| {
        run(["check", "k0-functoriality", "--n", "3", "--samples", "20", "--seed", seed, "--format", "structured"]).unwrap().stdout
    };
    assert_eq!(go("7"), go("7"));
    assert_ne!(go("7"), go("8"));
}

#[test]
fn burau_plain_and_latex() {
    let out = run(["burau", "--type", "B", "--n", "2", "--word", "1 2 1 2"]).unwrap();
    assert_eq!(out.code, 0);
    assert!(!out.stdout.is_empty());
    let out = run(["burau", "--type", "A", "--n", "3", "--word", "1", "--style", "latex", "--format", "structured"]).unwrap();
    let r = parse_structured(&out.stdout).unwrap();
    assert!(r[0].witness.starts_with("-q & -q & 0"));
}

#[test]
fn curve_commands_agree() {
    let f = format!("{}/n3_j2_VI_0_base.json", data());
    let p = run(["curve", "poincare", "--j", "2", f.as_str(), "--format", "structured"]).unwrap();
    let i = run(["curve", "itrigr", "--j", "2", f.as_str(), "--format", "structured"]).unwrap();
    let p = parse_structured(&p.stdout).unwrap();
    let i = parse_structured(&i.stdout).unwrap();
    assert_eq!(
        zigcat::TriPoly::parse(&p[0].witness).unwrap(),
        zigcat::TriPoly::parse(&i[0].witness).unwrap()
    );
}
