//! Acceptance suite: one PASS/FAIL line per criterion, driven through the CLI.
//!
//! Criteria 8 and 9 are known to fail against the printed statements; the
//! reasons are printed with the verdict. Any other failure makes the run fail.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use zigcat::exact::TriPoly;
use zigcat::homotopy::Complex;
use zigcat::zigzag::{Grading, Kind, ZigzagAlgebra};
use zigcat::Rat;
use zigcat_cli::display::{normalize_row, parse_typeset_poly};
use zigcat_cli::{run, Report, Verdict};

const KNOWN_FAILURES: [usize; 2] = [8, 9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/curves")
}

fn jobs() -> String {
    std::thread::available_parallelism().map_or(1, |n| n.get()).to_string()
}

/// Runs a subcommand with structured output; returns (exit code, reports).
fn cli(args: &[&str]) -> Result<(i32, Vec<Report>), String> {
    let mut v: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    v.extend(["--format".into(), "structured".into(), "--jobs".into(), jobs()]);
    let out = run(&v).map_err(|e| format!("{:?}: {:#}", args, e))?;
    let reports = zigcat_cli::parse_structured(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.code, reports))
}

fn failures(r: &[Report]) -> Vec<&Report> {
    r.iter().filter(|x| x.verdict == Verdict::Fail).collect()
}

fn first_failure(r: &[Report]) -> String {
    failures(r).first().map_or(String::new(), |x| format!("{} {}: {}", x.check, x.instance, x.witness))
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Ok(())
    }
}

fn c1() -> Result<Outcome, String> {
    let t = Instant::now();
    let mut cases = Vec::new();
    for n in 2..=6 {
        cases.push(("B", n, 8 * n - 6));
    }
    for n in 2..=5 {
        cases.push(("A", 2 * n - 1, 8 * n - 6));
    }
    for (ty, n, want) in &cases {
        let (code, r) = cli(&["algebra", "info", "--type", ty, "--n", &n.to_string()])?;
        if code != 0 {
            return Ok(fail(first_failure(&r)));
        }
        let dim = r.iter().find(|x| x.check == "dimension").ok_or("no dimension report")?;
        let got: usize = dim.witness.split_whitespace().next().and_then(|s| s.parse().ok()).ok_or("bad dimension")?;
        if got != *want {
            return Ok(fail(format!("{}{} has dimension {}, expected {}", ty, n, got, want)));
        }
    }
    within(t, Duration::from_secs(5))?;
    Ok(ok(format!(
        "dims 8n-6 for B2..B6 and A3..A9, relations and associativity exhaustive, {:.2}s",
        t.elapsed().as_secs_f64()
    )))
}

fn c2() -> Result<Outcome, String> {
    let p = |s: &str| TriPoly::parse(s).unwrap();
    let mut rows = 0;
    for n in 2..=5usize {
        let (_, r) = cli(&["algebra", "info", "--type", "B", "--n", &n.to_string()])?;
        for j in 1..=n {
            for k in 1..=n {
                // C split over R as 1 + q3, shifts by one in the internal grading as q2
                let want = if j.abs_diff(k) > 1 {
                    TriPoly::zero()
                } else if j == k && j == 1 {
                    p("1 + q2")
                } else if j == k {
                    p("1 + q2 + q3 + q2*q3")
                } else if k == j + 1 {
                    p("1 + q3")
                } else {
                    p("q2 + q2*q3")
                };
                let inst = format!("e{} B{} e{}", j, n, k);
                let rep = r.iter().find(|x| x.check == "hom-table" && x.instance == inst).ok_or("missing row")?;
                let got = TriPoly::parse(&rep.witness).map_err(|e| e.to_string())?;
                if got != want {
                    return Ok(fail(format!("{}: {} but expected {}", inst, rep.witness, want.render(zigcat::exact::VarNames::Tri))));
                }
                rows += 1;
            }
        }
    }
    Ok(ok(format!(
        "{} blocks for n = 2..5 match all six rows with Z and Z/2 parts (X_j in KS degree 1, so j = k rows read R + R{{1}})",
        rows
    )))
}

fn c3() -> Result<Outcome, String> {
    let t = Instant::now();
    let mut total = 0;
    for n in 2..=4usize {
        let (code, r) = cli(&["check", "braid-relations", "--type", "B", "--n", &n.to_string()])?;
        if code != 0 {
            return Ok(fail(first_failure(&r)));
        }
        let mut kinds: BTreeSet<&str> = BTreeSet::new();
        for x in &r {
            kinds.insert(x.instance.split_whitespace().nth(1).unwrap_or(""));
        }
        let need: &[&str] = if n >= 3 { &["far", "braid", "four-term", "inverse"] } else { &["four-term", "inverse"] };
        if let Some(m) = need.iter().find(|k| !kinds.contains(**k)) {
            return Ok(fail(format!("B{} has no {} relation", n, m)));
        }
        total += r.len();
    }
    within(t, Duration::from_secs(120))?;
    Ok(ok(format!("{} relations Iso on the sum of projectives for n = 2, 3, 4, {:.2}s", total, t.elapsed().as_secs_f64())))
}

fn c4() -> Result<Outcome, String> {
    let t = Instant::now();
    let mut seen = Vec::new();
    for n in [2usize, 3] {
        let args = ["act", "--type", "B", "--n", &n.to_string(), "--word", "2 1 2", "--start", "1", "--minimize", "--bare"];
        let (_, r) = cli(&args)?;
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, n, Grading::Ks).map_err(|e| e.to_string())?;
        let c = Complex::parse(&alg, &r[0].witness).map_err(|e| e.to_string())?;
        let degs = c.degrees();
        let terms: Vec<_> = c.all_terms().collect();
        if terms.len() != 1 || terms[0].1.to_string() != "P1{1}<1>" {
            return Ok(fail(format!("n = {}: got {}", n, r[0].witness.trim())));
        }
        seen.push(format!("n={}: deg {}: {}", n, degs[0], terms[0].1));
    }
    within(t, Duration::from_secs(10))?;
    Ok(ok(format!("{} (sigma_1 by R_1 as in the proof)", seen.join("; "))))
}

fn c5() -> Result<Outcome, String> {
    let (code, r) = cli(&["check", "k0-functoriality", "--n", "3", "--samples", "100", "--maxlen", "8", "--seed", "2024"])?;
    if code != 0 || r.len() != 100 {
        return Ok(fail(first_failure(&r)));
    }
    let displays: [(&str, &str, &str, Vec<&str>); 4] = [
        ("B", "3", "1", vec!["-sq & -(1+s) & 0", "0 & 1 & 0", "0 & 0 & 1"]),
        ("B", "3", "3", vec!["1 & 0 & 0", "0 & 1 & 0", "0 & -q & -q"]),
        ("B", "4", "2", vec!["1 & 0 & 0 & 0", "-q & -q & -1 & 0", "0 & 0 & 1 & 0", "0 & 0 & 0 & 1"]),
        ("A", "3", "1", vec!["-q & -q & 0", "0 & 1 & 0", "0 & 0 & 1"]),
    ];
    for (ty, n, w, rows) in displays {
        let (_, r) = cli(&["burau", "--type", ty, "--n", n, "--word", w, "--style", "latex"])?;
        let got: Vec<String> =
            r[0].witness.lines().map(|l| normalize_row(l.trim_end_matches("\\\\"))).collect();
        let want: Vec<String> = rows.iter().map(|s| normalize_row(s)).collect();
        if got != want {
            return Ok(fail(format!("{}{} sigma_{}: {:?}", ty, n, w, got)));
        }
    }
    Ok(ok("100 random words of length <= 8 over n = 3 match the matrix product; generator displays byte-match"))
}

fn c6() -> Result<Outcome, String> {
    let t = Instant::now();
    let mut total = 0;
    for (n, len) in [("2", "4"), ("3", "3")] {
        let (code, r) = cli(&["check", "equivariance", "--n", n, "--maxlen", len])?;
        if code != 0 {
            return Ok(fail(first_failure(&r)));
        }
        total += r.len();
    }
    within(t, Duration::from_secs(300))?;
    Ok(ok(format!("{} (word, start) pairs Iso, {:.2}s", total, t.elapsed().as_secs_f64())))
}

fn c7() -> Result<Outcome, String> {
    for n in 2..=4usize {
        let ns = n.to_string();
        let (code, r) = cli(&["check", "decat-square", "--n", &ns])?;
        if code != 0 {
            return Ok(fail(first_failure(&r)));
        }
        let (code, _) = cli(&["check", "decat-square", "--n", &ns, "--perturb"])?;
        if code != 1 {
            return Ok(fail(format!("perturbed square for n = {} still commutes", n)));
        }
    }
    Ok(ok("exact for n = 2..4 (s evaluated at 1); the sign-flipped control fails for each n"))
}

fn c8() -> Result<Outcome, String> {
    let (code, r) = cli(&["check", "poincare-itrigr", data().to_str().unwrap()])?;
    if code != 0 {
        return Ok(fail(first_failure(&r)));
    }
    let suite = r.len();
    // every family at a base and a shifted copy
    let names: BTreeSet<String> = std::fs::read_dir(data())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.file_name().to_string_lossy().to_string()))
        .collect();
    let generic = ["I", "II", "IIp", "III", "IIIp", "IV", "IVp", "V", "Vp", "VI"];
    let one = ["IIp", "IIIp", "Vp", "VI"];
    for (prefix, fams) in [("n3_j2", &generic[..]), ("n4_j3", &generic[..]), ("n3_j1", &one[..]), ("n2_j1", &one[..])] {
        for f in fams {
            for v in ["base", "shift"] {
                let file = format!("{}_{}_0_{}.json", prefix, f, v);
                if !names.contains(&file) {
                    return Ok(fail(format!("suite lacks {}", file)));
                }
            }
        }
    }
    let generic_rows = [
        ("I", "q_1 + q_2 + q_2q_3 + q_1q_3"),
        ("II", "q_1 + q_2 + q_2q_3 + q_1q_3"),
        ("IIp", "1 + q_1q_2^{-1} + q_3 + q_1q_2^{-1} q_1q_3"),
        ("III", "q_2 + q_2q_3"),
        ("IIIp", "1 + q_3"),
        ("IV", "0"),
        ("IVp", "0"),
        ("V", "0"),
        ("Vp", "0"),
        ("VI", "1+q_2 +q_3 + q_2q_3"),
    ];
    let one_rows = [
        ("IIp_0", "1+ q_3 + q_1q_2^{-1} + q_1q_2^{-1}q_3"),
        ("IIp_1h2", "1+ q_3 + q_1^{-1}q_2 + q_1^{-1}q_2q_3"),
        ("IIIp_0", "1 + q_3"),
        ("IIIp_1h2", "q_1^{-1}q_2 + q_3"),
        ("Vp_0", "0"),
        ("VI_0", "1 + q_2"),
    ];
    let mut checks: Vec<(String, String, &str)> = Vec::new();
    for (prefix, j) in [("n3_j2", "2"), ("n4_j3", "3")] {
        for (f, s) in generic_rows {
            checks.push((format!("{}_{}_0_base.json", prefix, f), j.into(), s));
        }
    }
    for (f, s) in one_rows {
        checks.push((format!("n3_j1_{}_base.json", f), "1".into(), s));
    }
    let mut bad = Vec::new();
    for (file, j, printed) in &checks {
        let path = data().join(file);
        let (_, r) = cli(&["curve", "poincare", "--j", j, path.to_str().unwrap()])?;
        let got = TriPoly::parse(&r[0].witness).map_err(|e| e.to_string())?;
        let want = if *printed == "0" { TriPoly::zero() } else { parse_typeset_poly(printed)? };
        if got != want {
            let label = file.trim_end_matches("_base.json").to_string();
            if !bad.iter().any(|(_, p, _): &(String, String, String)| p == printed) {
                bad.push((label, printed.to_string(), r[0].witness.clone()));
            }
        }
    }
    if bad.is_empty() {
        return Ok(ok(format!("{} suite checks and all {} table rows reproduced", suite, checks.len())));
    }
    let list: Vec<String> =
        bad.iter().map(|(l, p, g)| format!("row printed \"{}\" ({}) computes to {}", p, l, g)).collect();
    Ok(fail(format!(
        "Poincare = itrigr on all {} suite checks, but {}; the printed row has a stray q_1 and matches no string",
        suite,
        list.join("; ")
    )))
}

fn c9() -> Result<Outcome, String> {
    let d = data();
    let (_, twisted) = cli(&["check", "sgn-law", d.to_str().unwrap(), "--depth", "2"])?;
    let (_, bare) = cli(&["check", "sgn-law", d.to_str().unwrap(), "--depth", "2", "--bare"])?;
    let num = |w: &str, key: &str| -> usize {
        let i = w.find(key).unwrap_or(0) + key.len();
        w[i..].trim_start().split(|c: char| !c.is_ascii_digit()).next().and_then(|s| s.parse().ok()).unwrap_or(0)
    };
    let (mut held, mut failed, mut inv) = (0, 0, 0);
    for r in &twisted {
        held += num(&r.witness, "rule held");
        failed += num(&r.witness, "failed");
        inv += num(&r.witness, "changed sgn");
    }
    let bare_ok = failures(&bare).is_empty();
    if failed == 0 && inv == 0 {
        return Ok(ok(format!("{} curves; odd rule and sigma_j invariance hold", twisted.len())));
    }
    Ok(fail(format!(
        "on {} endpoint-0 curves with sigma_1 = R_1<1>, the odd-#P2 rule held {} times and failed {}: sgn flips iff #P2 is even\
        ; sigma_j (j >= 2) invariance held with {} changes; with untwisted R_1 the odd rule {}",
        twisted.len(),
        held,
        failed,
        inv,
        if bare_ok { "holds everywhere" } else { "also fails" }
    )))
}

fn c10() -> Result<Outcome, String> {
    let (code, r) = cli(&["check", "tl", "--n", "3", "--homs"])?;
    if code != 0 {
        return Ok(fail(first_failure(&r)));
    }
    let find = |w: &str| r.iter().find(|x| x.check == "tl" && x.instance == w).map(|x| x.witness.clone());
    let want = [
        ("U2U2", "U2(1) + U2(-1)"),
        ("U1U3", "0"),
        ("U2U3U2", "U2"),
        ("U1U2U1U2", "U1U2 + U1U2"),
    ];
    for (w, d) in want {
        if find(w).as_deref() != Some(d) {
            return Ok(fail(format!("{} decomposes as {:?}", w, find(w))));
        }
    }
    let n = r.iter().filter(|x| x.check == "tl").count();
    Ok(ok(format!("{} words in the four families certified by graded dimension; generator Hom spaces have the expected size", n)))
}

fn c11() -> Result<Outcome, String> {
    for n in 2..=5usize {
        let (code, r) = cli(&["cartan", "--n", &n.to_string()])?;
        if code != 0 || r.len() != 2 {
            return Ok(fail(first_failure(&r)));
        }
    }
    Ok(ok("both matrices match the displays for n = 2..5"))
}

fn c12() -> Result<Outcome, String> {
    let mut count = 0;
    for n in ["2", "3"] {
        let (code, r) = cli(&["check", "soergel-relations", "--n", n])?;
        if code != 0 {
            return Ok(fail(first_failure(&r)));
        }
        count += r.len();
        let (code, _) = cli(&["check", "soergel-relations", "--n", n, "--set", "b1=2"])?;
        if code != 1 {
            return Ok(fail(format!("b1 = 2 passes every relation for n = {}", n)));
        }
    }
    Ok(ok(format!("{} relations pass with the known solution for n = 2, 3; b1 = 2 breaks at least one", count)))
}

fn c13() -> Result<Outcome, String> {
    let t = Instant::now();
    let (code, r) = cli(&["check", "faithfulness-sample", "--n", "2", "--maxlen", "3"])?;
    if code != 0 {
        return Ok(fail(first_failure(&r)));
    }
    if r.len() != 52 {
        return Ok(fail(format!("expected 52 reduced words, got {}", r.len())));
    }
    within(t, Duration::from_secs(120))?;
    let both = r.iter().filter(|x| x.witness.contains("nontrivial") && x.witness.contains("NonIso")).count();
    Ok(ok(format!("all 52 reduced words certified ({} by both Burau and NonIso), {:.2}s", both, t.elapsed().as_secs_f64())))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome, String>); 13] = [
        ("algebra construction", c1),
        ("hom tables", c2),
        ("braid relations", c3),
        ("type B relation chain", c4),
        ("K0 functoriality", c5),
        ("equivariance square", c6),
        ("decategorified square", c7),
        ("Poincare = trigraded intersection", c8),
        ("sgn law", c9),
        ("TL decompositions", c10),
        ("Cartan and intersection matrices", c11),
        ("Soergel relations", c12),
        ("faithfulness sample", c13),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let o = f().unwrap_or_else(|e| fail(format!("error: {}", e)));
        println!("{} {:>2} {}: {}", if o.pass { "PASS" } else { "FAIL" }, k, name, o.detail);
        if o.pass {
            passed += 1;
        } else if !KNOWN_FAILURES.contains(&k) {
            unexpected.push(k);
        }
    }
    println!("{}/{} criteria pass", passed, criteria.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {:?}", unexpected);
        std::process::exit(1);
    }
}
