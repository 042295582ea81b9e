use std::path::PathBuf;

use serde::Deserialize;
use zigcat::curves::{itrigr_basic, jstrings, lb, param_label, Family, TrigradedCurve};
use zigcat::exact::TriPoly;
use zigcat::homotopy::{hom_poincare, Complex, ShiftedProjective};
use zigcat::zigzag::{Grading, Kind, ZigzagAlgebra};

#[derive(Deserialize)]
struct Expect {
    j: usize,
    family: String,
    w: String,
    base: [i64; 3],
    poly: String,
}

#[derive(Deserialize)]
struct Entry {
    file: String,
    strings: Option<Vec<Expect>>,
}

fn suite_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/curves")
}

#[test]
fn poincare_matches_intersection() {
    let dir = suite_dir();
    let manifest: Vec<Entry> =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert!(manifest.len() > 200);
    for e in &manifest {
        let text = std::fs::read_to_string(dir.join(&e.file)).unwrap();
        let c = TrigradedCurve::from_json(&text).unwrap_or_else(|err| panic!("{}: {}", e.file, err));
        let alg = ZigzagAlgebra::new(Kind::B, c.n, Grading::Ks).unwrap();
        let l = lb(&alg, &c).unwrap_or_else(|err| panic!("{}: {}", e.file, err));
        // pieces are open, so only their own line is meaningful
        let lines: Vec<usize> = match &e.strings {
            Some(v) => v.iter().map(|x| x.j).collect(),
            None => (1..=c.n).collect(),
        };
        for j in lines {
            let p = Complex::projective(&alg, ShiftedProjective::new(j)).unwrap();
            let hp = hom_poincare(&alg, &p, &l).unwrap();
            let it = itrigr_basic(j, &c).unwrap_or_else(|err| panic!("{} j={}: {}", e.file, j, err));
            assert_eq!(hp, it, "{} j={}", e.file, j);
        }
        for x in e.strings.iter().flatten() {
            let s = jstrings(&c, x.j).unwrap();
            assert_eq!(s.len(), 1, "{}", e.file);
            assert_eq!(s[0].family, Family::parse(&x.family).unwrap(), "{}", e.file);
            assert_eq!(param_label(s[0].u2), x.w, "{}", e.file);
            // read backwards a symmetric string may be based at its other end
            if e.file.ends_with("_base.json") {
                assert_eq!(s[0].base, x.base, "{}", e.file);
            }
            let want = if x.poly == "0" { TriPoly::zero() } else { TriPoly::parse(&x.poly).unwrap() };
            assert_eq!(itrigr_basic(x.j, &c).unwrap(), want, "{}", e.file);
        }
    }
}

#[test]
fn files_round_trip() {
    let dir = suite_dir();
    for f in std::fs::read_dir(&dir).unwrap() {
        let path = f.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        if name == "manifest.json" || !name.ends_with(".json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let c = TrigradedCurve::from_json(&text).unwrap();
        let again = TrigradedCurve::from_json(&c.to_json()).unwrap();
        assert_eq!(c, again, "{}", name);
    }
}

/// Under sigma_1 = R_1<1> the sgn of an endpoint-0 complex flips exactly
/// when the number of P2 summands is even; the untwisted R_1 gives the
/// opposite parity.
#[test]
fn sgn_parity_on_endpoint_zero_curves() {
    use zigcat::curves::sgn_tally;
    use zigcat::homotopy::ActionOpts;
    let dir = suite_dir();
    for name in ["basic_n2_1_base", "full_0_2_base", "full_0_3_shift", "basic_n3_1_shift"] {
        let c = TrigradedCurve::from_json(&std::fs::read_to_string(dir.join(format!("{}.json", name))).unwrap()).unwrap();
        assert!(c.touches_zero());
        let alg = ZigzagAlgebra::new(Kind::B, c.n, Grading::Ks).unwrap();
        let l = lb(&alg, &c).unwrap();
        let t = sgn_tally(&alg, &l, 2, ActionOpts::default()).unwrap();
        assert_eq!(t.invariance_failures, 0, "{}", name);
        assert_eq!(t.odd_rule_holds, 0, "{}", name);
        let bare = sgn_tally(&alg, &l, 2, ActionOpts { twist: false, minimize: true }).unwrap();
        assert_eq!((bare.odd_rule_fails, bare.invariance_failures), (0, 0), "{}", name);
    }
}
