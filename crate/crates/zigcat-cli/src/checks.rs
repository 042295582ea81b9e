//! The subcommands. Each returns a list of reports; failures set exit code 1.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use zigcat::bridge::{equivariance_check, Phi};
use zigcat::curves::{itrigr_basic, jstrings, lb, sgn_tally, TrigradedCurve};
use zigcat::exact::{Scalar, TriPoly, VarNames};
use zigcat::homotopy::{
    apply_word, hom_poincare, iso_test, iso_test_escalating, parse_shifted, ActionOpts, BraidWord, Complex, IsoMode,
    ShiftedProjective, Verdict as Iso,
};
use zigcat::ktheory::{
    cartan_check, cartan_display, decat_square_check, intersection_display, is_identity, k0_class, mat_vec,
    read_out, reduce_matrix, render_matrix, word_matrix,
};
use zigcat::tlrel::{SoergelScalars, Tl, UShift, UWord};
use zigcat::zigzag::{Elem, Grading, Kind, Side, ZigzagAlgebra};
use zigcat::{GaussRat, Rat};

use crate::display::latex_rows;
use crate::report::Report;
use crate::*;

pub const FAITH_MAXLEN: usize = 6;

fn type_letter(k: Kind) -> &'static str {
    match k {
        Kind::A => "A",
        Kind::B => "B",
    }
}

fn poly(p: &TriPoly) -> String {
    p.render(VarNames::Tri)
}

/// Runs `f` over `items` on the current pool, keeping the input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    items.par_iter().map(f).collect()
}

fn iso<S: Scalar>(alg: &ZigzagAlgebra<S>, a: &Complex<S>, b: &Complex<S>, mode: IsoArg) -> Result<Iso> {
    Ok(match mode {
        IsoArg::Fingerprint => iso_test(alg, a, b, IsoMode::Fingerprint)?,
        IsoArg::Exhaustive => iso_test(alg, a, b, IsoMode::Exhaustive)?,
        IsoArg::Escalate => iso_test_escalating(alg, a, b)?,
    })
}

// ---------------------------------------------------------------- algebra

pub fn expected_dim(kind: Kind, n: usize) -> usize {
    match (kind, n) {
        (_, 1) => 2,
        (Kind::B, n) => 8 * n - 6,
        (Kind::A, m) => 4 * m - 2,
    }
}

pub fn algebra_info(a: &AlgArgs) -> Result<Vec<Report>> {
    let g = a.grading.grading();
    match a.type_tag {
        TypeTag::B => Ok(info_generic(&ZigzagAlgebra::<Rat>::new(Kind::B, a.n, g)?)),
        TypeTag::A => Ok(info_generic(&ZigzagAlgebra::<GaussRat>::new(Kind::A, a.n, g)?)),
    }
}

fn info_generic<S: Scalar>(alg: &ZigzagAlgebra<S>) -> Vec<Report> {
    let inst = format!("{}{}", type_letter(alg.kind()), alg.vertices());
    let mut out = Vec::new();
    let mut basis = String::from("basis (name, degree, Z/2 degree):\n");
    for b in alg.basis_elems() {
        basis.push_str(&format!("  {} {} {}\n", b.name, b.deg, b.z2));
    }
    let want = expected_dim(alg.kind(), alg.vertices());
    out.push(Report::new("dimension", &inst, alg.dim() == want, format!("{} (expected {})", alg.dim(), want)));
    out.push(Report::info("basis", &inst, basis));
    let rels = alg.relation_list();
    let bad: Vec<String> = rels.iter().filter(|r| r.1 != r.2).map(|r| r.0.clone()).collect();
    out.push(Report::new(
        "relations",
        &inst,
        bad.is_empty(),
        if bad.is_empty() { format!("{} relations hold", rels.len()) } else { format!("failing: {}", bad.join("; ")) },
    ));
    let d = alg.dim();
    let mut assoc_bad = None;
    'outer: for x in 0..d {
        let ex = Elem::<S>::basis(x);
        for y in 0..d {
            let xy = alg.mul(&ex, &Elem::basis(y));
            for z in 0..d {
                let ez = Elem::basis(z);
                if alg.mul(&xy, &ez) != alg.mul(&ex, &alg.mul(&Elem::basis(y), &ez)) {
                    assoc_bad = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    out.push(Report::new(
        "associativity",
        &inst,
        assoc_bad.is_none(),
        match assoc_bad {
            None => format!("{} basis triples", d * d * d),
            Some((x, y, z)) => format!(
                "fails on ({}, {}, {})",
                alg.basis_elem(x).name,
                alg.basis_elem(y).name,
                alg.basis_elem(z).name
            ),
        },
    ));
    for j in 1..=alg.vertices() {
        for k in 1..=alg.vertices() {
            out.push(Report::info("hom-table", format!("e{} {} e{}", j, inst, k), poly(&alg.grdim(j, k))));
        }
    }
    out
}

// ---------------------------------------------------------------- act, burau

fn start_complex<S: Scalar>(alg: &ZigzagAlgebra<S>, start: &str, input: &Option<PathBuf>) -> Result<Complex<S>> {
    if let Some(p) = input {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        return Complex::parse(alg, &text).with_context(|| format!("in {}", p.display()));
    }
    if start == "all" {
        return Ok(Complex::all_projectives(alg));
    }
    let sp = match start.parse::<usize>() {
        Ok(v) => ShiftedProjective::new(v),
        Err(_) => parse_shifted(start).ok_or_else(|| anyhow!("bad start {:?}", start))?,
    };
    Ok(Complex::projective(alg, sp)?)
}

fn act_generic<S: Scalar>(alg: &ZigzagAlgebra<S>, a: &ActArgs) -> Result<Vec<Report>> {
    let w = BraidWord::parse(alg.kind(), alg.vertices(), &a.word)?;
    let c = start_complex(alg, &a.start, &a.input)?;
    let img = apply_word(alg, &c, &w, ActionOpts { twist: !a.bare, minimize: a.minimize })?;
    let inst = format!(
        "{}{} [{}] on {}",
        type_letter(alg.kind()),
        alg.vertices(),
        w,
        a.input.as_ref().map_or(a.start.clone(), |p| p.display().to_string())
    );
    Ok(vec![Report::info("act", inst, img.render(alg))])
}

pub fn act(a: &ActArgs) -> Result<Vec<Report>> {
    let g = a.alg.grading.grading();
    match a.alg.type_tag {
        TypeTag::B => act_generic(&ZigzagAlgebra::<Rat>::new(Kind::B, a.alg.n, g)?, a),
        TypeTag::A => act_generic(&ZigzagAlgebra::<GaussRat>::new(Kind::A, a.alg.n, g)?, a),
    }
}

pub fn burau(b: &BurauArgs) -> Result<Vec<Report>> {
    let kind = b.type_tag.kind();
    let w = BraidWord::parse(kind, b.n, &b.word)?;
    let m = reduce_matrix(kind, &word_matrix(&w)?);
    let text = match b.style {
        MatrixStyle::Plain => render_matrix(&m),
        MatrixStyle::Latex => latex_rows(&m).join("\n") + "\n",
    };
    Ok(vec![Report::info("burau", format!("{}{} [{}]", type_letter(kind), b.n, w), text)])
}

// ---------------------------------------------------------------- curves

fn load_curve(p: &Path) -> Result<TrigradedCurve> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    TrigradedCurve::from_json(&text).with_context(|| format!("in {}", p.display()))
}

fn lines_of(c: &TrigradedCurve, j: Option<usize>) -> Result<Vec<usize>> {
    match j {
        Some(j) if j < 1 || j > c.n => bail!("--j {} is outside 1..={}", j, c.n),
        Some(j) => Ok(vec![j]),
        None => Ok((1..=c.n).collect()),
    }
}

pub fn curve(cmd: &CurveCmd) -> Result<Vec<Report>> {
    match cmd {
        CurveCmd::Lb(a) => {
            let c = load_curve(&a.file)?;
            let alg = ZigzagAlgebra::<Rat>::new(Kind::B, c.n, Grading::Ks)?;
            let l = lb(&alg, &c)?;
            Ok(vec![Report::info("curve-lb", a.file.display().to_string(), l.render(&alg))])
        }
        CurveCmd::Itrigr(a) => {
            let c = load_curve(&a.file)?;
            lines_of(&c, a.j)?
                .into_iter()
                .map(|j| Ok(Report::info("curve-itrigr", format!("{} j={}", a.file.display(), j), poly(&itrigr_basic(j, &c)?))))
                .collect()
        }
        CurveCmd::Poincare(a) => {
            let c = load_curve(&a.file)?;
            let alg = ZigzagAlgebra::<Rat>::new(Kind::B, c.n, Grading::Ks)?;
            let l = lb(&alg, &c)?;
            lines_of(&c, a.j)?
                .into_iter()
                .map(|j| {
                    let p = Complex::projective(&alg, ShiftedProjective::new(j))?;
                    Ok(Report::info(
                        "curve-poincare",
                        format!("{} j={}", a.file.display(), j),
                        poly(&hom_poincare(&alg, &p, &l)?),
                    ))
                })
                .collect()
        }
        CurveCmd::Strings(a) => {
            let c = load_curve(&a.file)?;
            let mut out = Vec::new();
            for j in lines_of(&c, a.j)? {
                for s in jstrings(&c, j)? {
                    out.push(Report::info(
                        "curve-strings",
                        format!("{} j={}", a.file.display(), j),
                        format!("{} crossings {:?}: {}", s, s.crossings, poly(&zigcat::curves::contribution(&s))),
                    ));
                }
            }
            Ok(out)
        }
    }
}

#[derive(Deserialize)]
struct ManifestString {
    j: usize,
}

#[derive(Deserialize)]
struct ManifestEntry {
    file: String,
    strings: Option<Vec<ManifestString>>,
}

/// Curve files with the lines to check; directories are read through their manifest.
fn curve_targets(paths: &[PathBuf], j: Option<usize>) -> Result<Vec<(PathBuf, Option<Vec<usize>>)>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mpath = p.join("manifest.json");
            let text = std::fs::read_to_string(&mpath).with_context(|| format!("reading {}", mpath.display()))?;
            let m: Vec<ManifestEntry> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", mpath.display()))?;
            for e in m {
                let lines = e.strings.map(|v| v.iter().map(|s| s.j).collect::<Vec<_>>());
                let lines = match (lines, j) {
                    (Some(v), Some(j)) if !v.contains(&j) => continue,
                    (_, Some(j)) => Some(vec![j]),
                    (v, None) => v,
                };
                out.push((p.join(e.file), lines));
            }
        } else {
            out.push((p.clone(), j.map(|j| vec![j])));
        }
    }
    Ok(out)
}

pub fn poincare_itrigr(a: &PoincareArgs) -> Result<Vec<Report>> {
    let targets = curve_targets(&a.paths, a.j)?;
    let per_file = par_map(&targets, |(path, lines)| {
        let c = load_curve(path)?;
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, c.n, Grading::Ks)?;
        let l = lb(&alg, &c)?;
        let lines = match lines {
            Some(v) => v.clone(),
            None => (1..=c.n).collect(),
        };
        let name = path.file_name().map_or(path.display().to_string(), |s| s.to_string_lossy().to_string());
        let mut out = Vec::new();
        for j in lines {
            let p = Complex::projective(&alg, ShiftedProjective::new(j))?;
            let hp = hom_poincare(&alg, &p, &l)?;
            let inst = format!("{} j={}", name, j);
            out.push(match itrigr_basic(j, &c) {
                Ok(it) if it == hp => Report::new("poincare-itrigr", inst, true, poly(&hp)),
                Ok(it) => Report::new("poincare-itrigr", inst, false, format!("Poincare {} but itrigr {}", poly(&hp), poly(&it))),
                Err(e) => Report::new("poincare-itrigr", inst, false, e.to_string()),
            });
        }
        Ok(out)
    })?;
    Ok(per_file.into_iter().flatten().collect())
}

pub fn sgn_law(a: &SgnArgs) -> Result<Vec<Report>> {
    let mut files = Vec::new();
    for p in &a.paths {
        if p.is_dir() {
            let mut v: Vec<PathBuf> = std::fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json") && !f.ends_with("manifest.json"))
                .collect();
            v.sort();
            files.extend(v);
        } else {
            files.push(p.clone());
        }
    }
    let curves: Vec<(PathBuf, TrigradedCurve)> = files
        .into_iter()
        .map(|f| load_curve(&f).map(|c| (f, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, c)| c.touches_zero())
        .collect();
    if curves.is_empty() {
        bail!("no curve with an endpoint at puncture 0");
    }
    let opts = ActionOpts { twist: !a.bare, minimize: true };
    par_map(&curves, |(path, c)| {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, c.n, Grading::Ks)?;
        let t = sgn_tally(&alg, &lb(&alg, c)?, a.depth, opts)?;
        let name = path.file_name().map_or(path.display().to_string(), |s| s.to_string_lossy().to_string());
        let mut w = format!(
            "{} complexes; sigma_1 parity rule held {} times, failed {}; sigma_j (j >= 2) changed sgn {} times",
            t.complexes, t.odd_rule_holds, t.odd_rule_fails, t.invariance_failures
        );
        if let Some(x) = &t.first_counterexample {
            w.push_str(&format!("; first failure: {}", x));
        }
        Ok(Report::new("sgn-law", name, t.odd_rule_fails == 0 && t.invariance_failures == 0, w))
    })
}

// ---------------------------------------------------------------- braid checks

pub fn relation_pairs(kind: Kind, n: usize) -> Vec<(String, Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    for i in 1..=n as i64 {
        for j in i + 2..=n as i64 {
            out.push((format!("far {} {}", i, j), vec![i, j], vec![j, i]));
        }
    }
    let first = if kind == Kind::B { 2 } else { 1 };
    for j in first..n as i64 {
        out.push((format!("braid {} {}", j, j + 1), vec![j, j + 1, j], vec![j + 1, j, j + 1]));
    }
    if kind == Kind::B && n >= 2 {
        out.push(("four-term 1 2".into(), vec![1, 2, 1, 2], vec![2, 1, 2, 1]));
    }
    for j in 1..=n as i64 {
        out.push((format!("inverse {}", j), vec![j, -j], vec![]));
        out.push((format!("inverse -{}", j), vec![-j, j], vec![]));
    }
    out
}

fn word_of(kind: Kind, n: usize, v: &[i64]) -> Result<BraidWord> {
    Ok(BraidWord::new(kind, n, v.iter().map(|&x| (x.unsigned_abs() as usize, x.signum() as i8)).collect())?)
}

fn relation_check<S: Scalar>(
    alg: &ZigzagAlgebra<S>,
    pairs: &[(String, Vec<i64>, Vec<i64>)],
    r: &RelArgs,
    check: &str,
) -> Result<Vec<Report>> {
    let start = Complex::all_projectives(alg);
    let opts = ActionOpts { twist: !r.bare, minimize: true };
    let inst_pre = format!("{}{}", type_letter(alg.kind()), alg.vertices());
    par_map(pairs, |(name, lhs, rhs)| {
        let a = apply_word(alg, &start, &word_of(alg.kind(), alg.vertices(), lhs)?, opts)?;
        let b = apply_word(alg, &start, &word_of(alg.kind(), alg.vertices(), rhs)?, opts)?;
        let v = iso(alg, &a, &b, r.iso)?;
        Ok(Report::new(check, format!("{} {}", inst_pre, name), v.is_iso(), v.to_string()))
    })
}

fn with_alg<R>(
    t: TypeTag,
    n: usize,
    fb: impl FnOnce(&ZigzagAlgebra<Rat>) -> Result<R>,
    fa: impl FnOnce(&ZigzagAlgebra<GaussRat>) -> Result<R>,
) -> Result<R> {
    match t {
        TypeTag::B => fb(&ZigzagAlgebra::new(Kind::B, n, Grading::Ks)?),
        TypeTag::A => fa(&ZigzagAlgebra::new(Kind::A, n, Grading::Ks)?),
    }
}

pub fn braid_relations(r: &RelArgs) -> Result<Vec<Report>> {
    let pairs = relation_pairs(r.type_tag.kind(), r.n);
    with_alg(
        r.type_tag,
        r.n,
        |a| relation_check(a, &pairs, r, "braid-relations"),
        |a| relation_check(a, &pairs, r, "braid-relations"),
    )
}

pub fn inverse(a: &InverseArgs) -> Result<Vec<Report>> {
    let r = &a.rel;
    let kind = r.type_tag.kind();
    let pairs: Vec<(String, Vec<i64>, Vec<i64>)> = match &a.word {
        Some(s) => {
            let w = BraidWord::parse(kind, r.n, s)?;
            let v: Vec<i64> = w.letters.iter().map(|&(j, sg)| j as i64 * sg as i64).collect();
            let inv: Vec<i64> = v.iter().rev().map(|x| -x).collect();
            vec![
                (format!("[{}] then inverse", w), [v.clone(), inv.clone()].concat(), vec![]),
                (format!("inverse then [{}]", w), [inv, v].concat(), vec![]),
            ]
        }
        None => relation_pairs(kind, r.n).into_iter().filter(|p| p.0.starts_with("inverse")).collect(),
    };
    with_alg(r.type_tag, r.n, |x| relation_check(x, &pairs, r, "inverse"), |x| relation_check(x, &pairs, r, "inverse"))
}

/// All words of length 1..=maxlen in the letters +-1..+-n.
pub fn all_words(n: usize, maxlen: usize) -> Vec<Vec<i64>> {
    let letters: Vec<i64> = (1..=n as i64).flat_map(|j| [j, -j]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..maxlen {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn reduced_words(n: usize, maxlen: usize) -> Vec<Vec<i64>> {
    all_words(n, maxlen).into_iter().filter(|w| w.windows(2).all(|p| p[0] != -p[1])).collect()
}

fn fmt_word(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn equivariance(e: &EquivArgs) -> Result<Vec<Report>> {
    let phi = Phi::new(e.n)?;
    let words: Vec<Vec<i64>> = match &e.word {
        Some(s) => {
            let w = BraidWord::parse(Kind::B, e.n, s)?;
            vec![w.letters.iter().map(|&(j, sg)| j as i64 * sg as i64).collect()]
        }
        None => all_words(e.n, e.maxlen),
    };
    let tasks: Vec<(Vec<i64>, usize)> = words.into_iter().flat_map(|w| (1..=e.n).map(move |k| (w.clone(), k))).collect();
    par_map(&tasks, |(w, k)| {
        let v = equivariance_check(&phi, &word_of(Kind::B, e.n, w)?, *k)?;
        Ok(Report::new("equivariance", format!("B{} [{}] on P{}", e.n, fmt_word(w), k), v.is_iso(), v.to_string()))
    })
}

pub fn faithfulness_sample(f: &FaithArgs) -> Result<Vec<Report>> {
    let alg = ZigzagAlgebra::<Rat>::new(Kind::B, f.n, Grading::Ks)?;
    let start = Complex::all_projectives(&alg);
    let words = reduced_words(f.n, f.maxlen);
    par_map(&words, |w| {
        let bw = word_of(Kind::B, f.n, w)?;
        let burau = !is_identity(Kind::B, &word_matrix(&bw)?);
        let img = apply_word(&alg, &start, &bw, ActionOpts::default())?;
        let v = iso_test_escalating(&alg, &img, &start)?;
        let noniso = v == Iso::NonIso { exact: true };
        Ok(Report::new(
            "faithfulness-sample",
            format!("B{} [{}]", f.n, fmt_word(w)),
            burau || noniso,
            format!("Burau {}; complex {}", if burau { "nontrivial" } else { "trivial" }, v),
        ))
    })
}

pub fn k0_functoriality(k: &K0Args) -> Result<Vec<Report>> {
    let alg = ZigzagAlgebra::<Rat>::new(Kind::B, k.n, Grading::Ks)?;
    let mut rng = ChaCha8Rng::seed_from_u64(k.seed);
    let mut tasks = Vec::new();
    for _ in 0..k.samples {
        let len = rng.gen_range(1..=k.maxlen.max(1));
        let w: Vec<i64> = (0..len)
            .map(|_| {
                let j = rng.gen_range(1..=k.n as i64);
                if rng.gen_bool(0.5) {
                    j
                } else {
                    -j
                }
            })
            .collect();
        let sp = ShiftedProjective::shifted(
            rng.gen_range(1..=k.n),
            rng.gen_range(-1..=1),
            rng.gen_range(-1..=1),
            rng.gen_range(0..2),
        );
        tasks.push((w, sp));
    }
    par_map(&tasks, |(w, sp)| {
        let bw = word_of(Kind::B, k.n, w)?;
        let c = Complex::projective(&alg, *sp)?;
        let img = apply_word(&alg, &c, &bw, ActionOpts::default())?;
        let lhs = k0_class(&alg, &img);
        let rhs = read_out(Kind::B, &mat_vec(&word_matrix(&bw)?, &k0_class(&alg, &c)));
        let show = |v: &[TriPoly]| v.iter().map(|p| p.render(VarNames::K0)).collect::<Vec<_>>().join(", ");
        Ok(Report::new(
            "k0-functoriality",
            format!("B{} [{}] on {}", k.n, fmt_word(w), sp),
            lhs == rhs,
            if lhs == rhs { format!("[{}]", show(&lhs)) } else { format!("class [{}] but matrix gives [{}]", show(&lhs), show(&rhs)) },
        ))
    })
}

pub fn decat_square(d: &DecatArgs) -> Result<Vec<Report>> {
    let rep = decat_square_check(d.n, 1, d.perturb)?;
    let inst = format!("n={}{}", d.n, if d.perturb { " perturbed" } else { "" });
    let w = if rep.ok() {
        format!("{} identities hold", rep.checked)
    } else {
        format!("{} of {} fail; first: {}", rep.failures.len(), rep.checked, rep.failures[0])
    };
    Ok(vec![Report::new("decat-square", inst, rep.ok(), w)])
}

fn show_int_matrix(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cartan(c: &CartanArgs) -> Result<Vec<Report>> {
    let sides = match c.side {
        Some(s) => vec![s],
        None => vec![SideArg::TwoSided, SideArg::Left],
    };
    let mut out = Vec::new();
    for s in sides {
        let (side, want, name) = match s {
            SideArg::TwoSided => (Side::TwoSided, intersection_display(c.n), "intersection form"),
            SideArg::Left => (Side::LeftModule, cartan_display(c.n), "Cartan matrix"),
        };
        let got = cartan_check(c.n, side)?;
        let w = if got == want {
            show_int_matrix(&got)
        } else {
            format!("{} but display {}", show_int_matrix(&got), show_int_matrix(&want))
        };
        out.push(Report::new("cartan", format!("B{} {}", c.n, name), got == want, w));
    }
    Ok(out)
}

// ---------------------------------------------------------------- TL and Soergel

fn shift_of(s: ShiftArg) -> UShift {
    match s {
        ShiftArg::Minus => UShift::Minus,
        ShiftArg::Plus => UShift::Plus,
    }
}

/// The words of the four relation families.
pub fn tl_words(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(vec![j, j]);
    }
    for j in 1..=n {
        for k in 1..=n {
            if j.abs_diff(k) > 1 {
                out.push(vec![j, k]);
            }
        }
    }
    for j in 2..=n {
        for k in [j - 1, j + 1] {
            if k >= 2 && k <= n {
                out.push(vec![j, k, j]);
            }
        }
    }
    if n >= 2 {
        out.push(vec![1, 2, 1, 2]);
        out.push(vec![2, 1, 2, 1]);
    }
    out
}

pub fn tl(t: &TlArgs) -> Result<Vec<Report>> {
    let shift = shift_of(t.shift);
    let tl = Tl::new(t.n, shift)?;
    let words = tl_words(t.n);
    let mut out = par_map(&words, |w| {
        let w = UWord(w.clone());
        Ok(match tl.decompose(&w) {
            Ok(d) => Report::new("tl", w.to_string(), true, d.to_string()),
            Err(e) => Report::new("tl", w.to_string(), false, e.to_string()),
        })
    })?;
    if t.homs {
        // degrees under the default shift; the other shift moves them by 2 per letter
        let off = |dom: usize, cod: usize| match shift {
            UShift::Minus => 0,
            UShift::Plus => 2 * (cod as i64 - dom as i64),
        };
        let mut cases: Vec<(String, Vec<usize>, Vec<usize>, i64, usize)> = Vec::new();
        for j in 1..=t.n {
            let k = tl.alg().top_dim(j);
            cases.push((format!("Hom(U{j}, B)"), vec![j], vec![], 1, k));
            cases.push((format!("Hom(B, U{j})"), vec![], vec![j], 1, k));
            cases.push((format!("Hom(U{j}, U{j}U{j})"), vec![j], vec![j, j], -1, k));
            cases.push((format!("Hom(U{j}U{j}, U{j})"), vec![j, j], vec![j], -1, k));
        }
        cases.push(("Hom(B, B)".into(), vec![], vec![], 2, 2 * t.n - 1));
        for (name, dom, cod, deg, want) in cases {
            let deg = deg + off(dom.len(), cod.len());
            let got = tl.hom_dim(&dom, &cod, deg)?;
            out.push(Report::new(
                "tl-hom",
                format!("{} in degree {}", name, deg),
                got == want,
                format!("real dimension {} (expected {})", got, want),
            ));
        }
    }
    Ok(out)
}

fn apply_override(s: &mut SoergelScalars, spec: &str) -> Result<()> {
    let (key, val) = spec.split_once('=').ok_or_else(|| anyhow!("--set expects KEY=VALUE, got {:?}", spec))?;
    let v = <Rat as Scalar>::parse_scalar(val.trim()).ok_or_else(|| anyhow!("bad value {:?}", val))?;
    let key = key.trim();
    let n = s.n();
    let idx = |t: &str| -> Result<usize> {
        let i: usize = t.parse().map_err(|_| anyhow!("bad index in {:?}", key))?;
        if i < 1 || i > n {
            bail!("index {} outside 1..={}", i, n);
        }
        Ok(i)
    };
    let (head, rest) = key.split_at(1);
    match head {
        "a" => s.a[idx(rest)?] = v,
        "b" => s.b[idx(rest)?] = v,
        "c" => s.c[idx(rest)?] = v,
        "d" => s.d[idx(rest)?] = v,
        "f" => {
            let (t, k) = rest.split_once('_').ok_or_else(|| anyhow!("f entries are written f<t>_<k>"))?;
            s.f[idx(t)?][idx(k)?] = v;
        }
        _ => bail!("unknown scalar {:?}", key),
    }
    Ok(())
}

pub fn soergel(a: &SoergelArgs) -> Result<Vec<Report>> {
    let mut s = match &a.scalars {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            SoergelScalars::from_json(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => SoergelScalars::paper(a.n),
    };
    if s.n() != a.n {
        bail!("scalar file is for n = {}, not {}", s.n(), a.n);
    }
    for o in &a.set {
        apply_override(&mut s, o)?;
    }
    let tl = Tl::new(a.n, shift_of(a.shift))?;
    let rels = tl.relations(&s)?;
    let mut out = par_map(&rels, |r| {
        let res = tl.check_relation(r)?;
        Ok(Report::new("soergel-relations", res.name, res.pass, res.witness.unwrap_or_default()))
    })?;
    for r in tl.distant_pairs() {
        out.push(Report::new("soergel-relations", r.name, r.pass, r.witness.unwrap_or_default()));
    }
    Ok(out)
}
