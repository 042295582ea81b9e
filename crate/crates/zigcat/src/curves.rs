//! Trigraded curves supplied as combinatorial data: the complexes L_B,
//! j-string classification and trigraded intersection with basic curves.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{rat, Rat, TriPoly};
use crate::homotopy::{Complex, Term};
use crate::zigzag::{Elem, ZigzagAlgebra};
use crate::{Error, Result};

pub type Index = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub line: usize,
    pub mu: Index,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SegEnd {
    Crossing(usize),
    Puncture { puncture: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub a: usize,
    pub b: SegEnd,
    pub region: usize,
}

/// Crossings are listed in order along the curve. An endpoint of `None`
/// marks a piece that stops at its last crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigradedCurve {
    pub n: usize,
    pub crossings: Vec<Crossing>,
    pub segments: Vec<Segment>,
    #[serde(default)]
    pub d0_pairs: Vec<[usize; 2]>,
    pub endpoints: [Option<usize>; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Open,
    Punct(usize),
    Cross(usize),
}

fn add(a: Index, d: [i64; 3]) -> Index {
    [a[0] + d[0], a[1] + d[1], (a[2] + d[2]).rem_euclid(2)]
}

/// deg(a|b) for adjacent vertices in the type B grading.
fn arrow_deg(a: usize, b: usize) -> i64 {
    (a == b + 1) as i64
}

impl TrigradedCurve {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: TrigradedCurve = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serialises")
    }

    /// chi(r1, r2, r3) applied to the curve.
    pub fn shifted(&self, r: Index) -> Self {
        let mut c = self.clone();
        for x in c.crossings.iter_mut() {
            x.mu = add(x.mu, r);
        }
        c
    }

    fn segment_between(&self, x: SegEnd, y: SegEnd) -> Option<&Segment> {
        self.segments.iter().find(|s| {
            let ends = (SegEnd::Crossing(s.a), s.b);
            ends == (x, y) || ends == (y, x)
        })
    }

    /// Nodes along the curve and the regions of the segments between them.
    fn chain(&self) -> (Vec<Node>, Vec<Option<usize>>) {
        let m = self.crossings.len();
        let mut nodes = vec![self.endpoints[0].map_or(Node::Open, Node::Punct)];
        nodes.extend((0..m).map(Node::Cross));
        nodes.push(self.endpoints[1].map_or(Node::Open, Node::Punct));
        let regions = nodes
            .windows(2)
            .map(|w| {
                let as_end = |n: Node| match n {
                    Node::Cross(i) => Some(SegEnd::Crossing(i)),
                    Node::Punct(k) => Some(SegEnd::Puncture { puncture: k }),
                    Node::Open => None,
                };
                match (as_end(w[0]), as_end(w[1])) {
                    (Some(x), Some(y)) => self.segment_between(x, y).map(|s| s.region),
                    _ => None,
                }
            })
            .collect();
        (nodes, regions)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Curve(m));
        if self.n < 2 {
            return bad("n must be at least 2".into());
        }
        if self.crossings.is_empty() {
            return bad("a curve needs at least one crossing".into());
        }
        for (i, c) in self.crossings.iter().enumerate() {
            if c.line < 1 || c.line > self.n {
                return bad(format!("crossing {} lies on d{} outside 1..{}", i, c.line, self.n));
            }
            if !(0..=1).contains(&c.mu[2]) {
                return bad(format!("crossing {} has Z/2 index {}", i, c.mu[2]));
            }
        }
        for e in self.endpoints.iter().flatten() {
            if *e > self.n {
                return bad(format!("puncture {} out of range", e));
            }
        }
        let m = self.crossings.len();
        let expected = m - 1 + self.endpoints.iter().filter(|e| e.is_some()).count();
        if self.segments.len() != expected {
            return bad(format!("expected {} segments, found {}", expected, self.segments.len()));
        }
        let (nodes, regions) = self.chain();
        for (k, w) in nodes.windows(2).enumerate() {
            if w.contains(&Node::Open) {
                continue;
            }
            let Some(region) = regions[k] else {
                return bad(format!("no segment joins {:?} and {:?}", w[0], w[1]));
            };
            self.check_segment(w[0], w[1], region)?;
        }
        for i in 0..m {
            let before = regions[i];
            let after = regions[i + 1];
            if let (Some(a), Some(b)) = (before, after) {
                let line = self.crossings[i].line;
                let sides: BTreeSet<usize> = [a, b].into_iter().collect();
                if sides != [line - 1, line].into_iter().collect() {
                    return bad(format!("curve does not pass through d{} at crossing {}", line, i));
                }
            }
        }
        let mut pairs: BTreeSet<[usize; 2]> = BTreeSet::new();
        for s in &self.segments {
            if let (SegEnd::Crossing(b), 0) = (s.b, s.region) {
                pairs.insert([s.a.min(b), s.a.max(b)]);
            }
        }
        let listed: BTreeSet<[usize; 2]> = self.d0_pairs.iter().map(|p| [p[0].min(p[1]), p[0].max(p[1])]).collect();
        if pairs != listed || listed.len() != self.d0_pairs.len() {
            return bad(format!("d0_pairs {:?} do not match the segments in D0 {:?}", listed, pairs));
        }
        Ok(())
    }

    fn check_segment(&self, x: Node, y: Node, region: usize) -> Result<()> {
        let bad = |m: String| Err(Error::Curve(m));
        match (x, y) {
            (Node::Cross(i), Node::Punct(k)) | (Node::Punct(k), Node::Cross(i)) => {
                let line = self.crossings[i].line;
                if region != k || !(line == k || line == k + 1) {
                    return bad(format!("segment from crossing {} to puncture {} cannot lie in D{}", i, k, region));
                }
            }
            (Node::Cross(i), Node::Cross(k)) => {
                let (a, b) = (&self.crossings[i], &self.crossings[k]);
                let name = format!("segment ({},{}) in D{}", i, k, region);
                let ok_region = if a.line == b.line {
                    region + 1 == a.line || region == a.line
                } else {
                    a.line.abs_diff(b.line) == 1 && region == a.line.min(b.line)
                };
                if !ok_region {
                    return bad(format!("{}: endpoints on d{} and d{}", name, a.line, b.line));
                }
                if region == 0 {
                    if a.mu[0] != b.mu[0] || a.mu[1] != b.mu[1] || a.mu[2] == b.mu[2] {
                        return bad(format!("{}: indices {:?} and {:?} are not a D0 pair", name, a.mu, b.mu));
                    }
                    return Ok(());
                }
                let (lo, hi) = if b.mu[0] == a.mu[0] + 1 {
                    (a, b)
                } else if a.mu[0] == b.mu[0] + 1 {
                    (b, a)
                } else {
                    return bad(format!("{}: cohomological indices {} and {} are not adjacent", name, a.mu[0], b.mu[0]));
                };
                let want = if lo.line == hi.line { 1 } else { arrow_deg(lo.line, hi.line) };
                if lo.mu[1] - hi.mu[1] != want || lo.mu[2] != hi.mu[2] {
                    return bad(format!("{}: indices {:?} -> {:?} violate the local index rule", name, lo.mu, hi.mu));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn touches_zero(&self) -> bool {
        self.endpoints.contains(&Some(0))
    }

    pub fn count_on_line(&self, line: usize) -> usize {
        self.crossings.iter().filter(|c| c.line == line).count()
    }
}

/// The complex L_B of a curve.
pub fn lb(alg: &ZigzagAlgebra<Rat>, c: &TrigradedCurve) -> Result<Complex<Rat>> {
    c.validate()?;
    if alg.vertices() != c.n || alg.kind() != crate::zigzag::Kind::B {
        return Err(Error::Mismatch(format!("curve on n={} against algebra {:?}", c.n, alg.id())));
    }
    let mut terms: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
    let mut pos = Vec::new();
    for x in &c.crossings {
        let v = terms.entry(x.mu[0]).or_default();
        pos.push((x.mu[0], v.len()));
        v.push(Term { vertex: x.line, internal: x.mu[1], z2: x.mu[2] as u8 });
    }
    // (source crossing, target crossing) -> entry
    let mut maps: BTreeMap<(usize, usize), Elem<Rat>> = BTreeMap::new();
    let mut d1_partner: HashMap<usize, usize> = HashMap::new();
    for s in &c.segments {
        let SegEnd::Crossing(b) = s.b else { continue };
        if s.region == 0 {
            continue;
        }
        let (y, z) = if c.crossings[b].mu[0] == c.crossings[s.a].mu[0] + 1 { (s.a, b) } else { (b, s.a) };
        let (ly, lz) = (c.crossings[y].line, c.crossings[z].line);
        let e = if ly == lz { alg.x(ly) } else { alg.arrow(ly, lz) };
        maps.insert((y, z), Elem::basis(e));
        if s.region == 1 {
            for (u, w) in [(s.a, b), (b, s.a)] {
                if c.crossings[u].line == 1 {
                    d1_partner.insert(u, w);
                }
            }
        }
    }
    let partner: HashMap<usize, usize> =
        c.d0_pairs.iter().flat_map(|p| [(p[0], p[1]), (p[1], p[0])]).collect();
    let ie2 = Elem::<Rat>::basis(alg.ie(2));
    let mut extra: Vec<((usize, usize), Elem<Rat>)> = Vec::new();
    for (&y, &y2) in &partner {
        let Some(&z) = d1_partner.get(&y) else { continue };
        let (cy, cz) = (&c.crossings[y], &c.crossings[z]);
        if cz.line == 2 {
            if cy.mu[0] == cz.mu[0] + 1 {
                let e = alg.mul(&ie2, &Elem::basis(alg.arrow(2, 1))).neg();
                extra.push(((z, y2), e));
            } else {
                let e = alg.mul(&Elem::basis(alg.arrow(1, 2)), &ie2);
                extra.push(((y2, z), e));
            }
        } else if cz.mu[0] == cy.mu[0] + 1 {
            if let Some(&z2) = partner.get(&z) {
                extra.push(((y2, z2), Elem::basis(alg.x(1))));
            }
        }
    }
    for (k, e) in extra {
        maps.insert(k, e);
    }
    let entries = maps.into_iter().map(|((y, z), e)| {
        let (p, col) = pos[y];
        let (_, row) = pos[z];
        (p, row, col, e)
    });
    let out = Complex::from_parts(alg.id(), terms, entries);
    out.check(alg).map_err(|e| Error::Curve(format!("L_B is not a complex: {}", e)))?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    I,
    II,
    IIp,
    III,
    IIIp,
    IV,
    IVp,
    V,
    Vp,
    VI,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::I,
        Family::II,
        Family::IIp,
        Family::III,
        Family::IIIp,
        Family::IV,
        Family::IVp,
        Family::V,
        Family::Vp,
        Family::VI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::IIp => "II'",
            Family::III => "III",
            Family::IIIp => "III'",
            Family::IV => "IV",
            Family::IVp => "IV'",
            Family::V => "V",
            Family::Vp => "V'",
            Family::VI => "VI",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    fn has_param(self) -> bool {
        matches!(self, Family::I | Family::II | Family::IIp | Family::III | Family::IIIp)
    }

    /// Families occurring for strings around d_j.
    pub fn allowed(self, j: usize, n: usize) -> bool {
        if j == 1 {
            matches!(self, Family::IIp | Family::IIIp | Family::Vp | Family::VI)
        } else if j == n {
            matches!(self, Family::II | Family::III | Family::V | Family::VI)
        } else {
            true
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    L,
    R,
    C,
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JString {
    pub j: usize,
    pub family: Family,
    /// twice the family parameter
    pub u2: i64,
    pub base: Index,
    pub crossings: Vec<usize>,
}

pub fn param_label(u2: i64) -> String {
    if u2 % 2 == 0 {
        format!("{}", u2 / 2)
    } else {
        format!("{}/2", u2)
    }
}

impl fmt::Display for JString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        if self.family.has_param() {
            write!(f, "_{}", param_label(self.u2))?;
        }
        write!(f, "({},{},{})", self.base[0], self.base[1], self.base[2])
    }
}

const PLUS: [i64; 3] = [1, -1, 0];
const MINUS: [i64; 3] = [-1, 1, 0];
const D0: [i64; 3] = [0, 0, 1];

fn signs(plus_first: bool, a: i64, b: i64) -> Vec<[i64; 3]> {
    let (x, y) = if plus_first { (PLUS, MINUS) } else { (MINUS, PLUS) };
    let mut v = vec![x; a.max(0) as usize];
    v.extend(vec![y; b.max(0) as usize]);
    v
}

fn walk(start: Index, steps: &[[i64; 3]]) -> Vec<(Role, Index)> {
    let mut cur = start;
    let mut out = vec![(Role::C, cur)];
    for s in steps {
        cur = add(cur, *s);
        out.push((Role::C, cur));
    }
    out
}

/// Interleaves D0 turns with the given D1 steps, starting and possibly
/// ending with a D0 turn, for `k` crossings in total.
fn one_string_steps(k: usize, d1: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    let mut it = d1.iter();
    for t in 0..k.saturating_sub(1) {
        if t % 2 == 0 {
            out.push(D0);
        } else {
            out.push(*it.next().unwrap_or(&[0, 0, 0]));
        }
    }
    out
}

/// The index sequence of a trigraded j-string read from its canonical end.
pub fn canonical(j: usize, n: usize, fam: Family, u2: i64, r: Index) -> Option<Vec<(Role, Index)>> {
    if !fam.allowed(j, n) || (!fam.has_param() && u2 != 0) {
        return None;
    }
    let e1l = |r| add(r, [1, 0, 0]);
    let e1pl = |r| add(r, [-1, 1, 0]);
    let e1r = |r| add(r, [-1, 0, 0]);
    let e1pr = |r| add(r, [1, -1, 0]);
    let last = |v: &Vec<(Role, Index)>| v.last().unwrap().1;
    let mut seq: Vec<(Role, Index)>;
    if j == 1 {
        match fam {
            Family::IIIp => {
                seq = vec![(Role::R, r)];
                if u2 == 0 {
                    seq.push((Role::Q, r));
                    return Some(seq);
                }
                let k = u2.unsigned_abs() as usize;
                let (c1, step) = if u2 > 0 { (e1r(r), MINUS) } else { (e1pr(r), PLUS) };
                let d1 = vec![step; k];
                seq.extend(walk(c1, &one_string_steps(k, &d1)));
                seq.push((if k % 2 == 1 { Role::P } else { Role::Q }, r));
            }
            Family::IIp => {
                seq = vec![(Role::R, r)];
                if u2 == 0 {
                    seq.push((Role::R, add(r, PLUS)));
                    return Some(seq);
                }
                let k = 2 * u2.unsigned_abs() as usize;
                let u = u2.abs();
                let d1 = if u2 > 0 {
                    if u % 2 == 0 {
                        signs(false, u / 2 - 1, u / 2)
                    } else {
                        signs(false, u / 2, u / 2)
                    }
                } else if u % 2 == 0 {
                    signs(true, u / 2, u / 2 - 1)
                } else {
                    signs(true, u / 2, u / 2)
                };
                let c1 = if u2 > 0 { e1r(r) } else { e1pr(r) };
                seq.extend(walk(c1, &one_string_steps(k, &d1)));
                let exit = if u2 > 0 { add(last(&seq), [1, 0, 0]) } else { add(last(&seq), MINUS) };
                seq.push((Role::R, exit));
            }
            Family::Vp => {
                seq = vec![(Role::R, r), (Role::C, add(r, PLUS)), (Role::C, add(r, [1, -1, 1])), (Role::R, add(r, [2, -1, 1]))];
            }
            Family::VI => seq = vec![(Role::P, r), (Role::C, r), (Role::Q, r)],
            _ => return None,
        }
        return Some(seq);
    }
    if u2 % 2 != 0 {
        return None;
    }
    let w = u2 / 2;
    let nn = -w;
    match fam {
        Family::I => {
            seq = vec![(Role::L, r)];
            if w <= 0 {
                seq.extend(walk(e1l(r), &signs(true, nn, nn)));
                let x = add(last(&seq), MINUS);
                seq.push((Role::R, x));
            } else {
                seq.extend(walk(e1pl(r), &signs(false, w - 1, w - 1)));
                let x = add(last(&seq), [1, 0, 0]);
                seq.push((Role::R, x));
            }
        }
        Family::II => {
            seq = vec![(Role::L, r)];
            if w == 0 {
                seq.push((Role::L, add(r, PLUS)));
            } else if w < 0 {
                seq.extend(walk(e1l(r), &signs(true, nn, nn - 1)));
                let x = add(last(&seq), [-1, 0, 0]);
                seq.push((Role::L, x));
            } else {
                seq.extend(walk(e1pl(r), &signs(false, w - 1, w)));
                let x = add(last(&seq), PLUS);
                seq.push((Role::L, x));
            }
        }
        Family::IIp => {
            seq = vec![(Role::R, r)];
            if w == 0 {
                seq.push((Role::R, add(r, PLUS)));
            } else if w < 0 {
                seq.extend(walk(e1pr(r), &signs(true, nn, nn - 1)));
                let x = add(last(&seq), MINUS);
                seq.push((Role::R, x));
            } else {
                seq.extend(walk(e1r(r), &signs(false, w - 1, w)));
                let x = add(last(&seq), [1, 0, 0]);
                seq.push((Role::R, x));
            }
        }
        Family::III => {
            seq = vec![(Role::L, r)];
            if w == 0 {
                seq.push((Role::P, r));
            } else {
                let k = w.abs();
                if w < 0 {
                    seq.extend(walk(e1l(r), &signs(true, k - 1, 0)));
                } else {
                    seq.extend(walk(e1pl(r), &signs(false, k - 1, 0)));
                }
                seq.push((if k % 2 == 1 { Role::Q } else { Role::P }, r));
            }
        }
        Family::IIIp => {
            seq = vec![(Role::R, r)];
            if w == 0 {
                seq.push((Role::Q, r));
            } else {
                let k = w.abs();
                if w < 0 {
                    seq.extend(walk(e1pr(r), &signs(true, k - 1, 0)));
                } else {
                    seq.extend(walk(e1r(r), &signs(false, k - 1, 0)));
                }
                seq.push((if k % 2 == 1 { Role::P } else { Role::Q }, r));
            }
        }
        Family::IV => seq = vec![(Role::L, r), (Role::C, add(r, [1, 0, 0])), (Role::R, add(r, [2, 0, 0]))],
        Family::IVp => seq = vec![(Role::R, r), (Role::C, add(r, PLUS)), (Role::L, add(r, [2, -2, 0]))],
        Family::V => {
            seq = vec![
                (Role::L, r),
                (Role::C, add(r, [1, 0, 0])),
                (Role::C, add(r, [2, -1, 0])),
                (Role::L, add(r, [3, -2, 0])),
            ]
        }
        Family::Vp => {
            seq = vec![
                (Role::R, r),
                (Role::C, add(r, PLUS)),
                (Role::C, add(r, [2, -2, 0])),
                (Role::R, add(r, [3, -2, 0])),
            ]
        }
        Family::VI => seq = vec![(Role::P, r), (Role::C, r), (Role::Q, r)],
    }
    Some(seq)
}

fn t(s: &str) -> TriPoly {
    TriPoly::parse(s).expect("table entry parses")
}

/// Contribution of a string at base shift zero.
pub fn table_entry(j: usize, fam: Family, half: bool) -> TriPoly {
    if j == 1 {
        return match (fam, half) {
            (Family::IIp, false) => t("1 + q3 + q1*q2^-1 + q1*q2^-1*q3"),
            (Family::IIp, true) => t("1 + q3 + q1^-1*q2 + q1^-1*q2*q3"),
            (Family::IIIp, false) => t("1 + q3"),
            (Family::IIIp, true) => t("q1^-1*q2 + q3"),
            (Family::VI, _) => t("1 + q2"),
            _ => TriPoly::zero(),
        };
    }
    match fam {
        Family::I | Family::II => t("q1 + q2 + q2*q3 + q1*q3"),
        Family::IIp => t("1 + q3 + q1*q2^-1 + q1*q2^-1*q3"),
        Family::III => t("q2 + q2*q3"),
        Family::IIIp => t("1 + q3"),
        Family::VI => t("1 + q2 + q3 + q2*q3"),
        _ => TriPoly::zero(),
    }
}

fn shift_mono(r: Index) -> TriPoly {
    TriPoly::mono(r[0], r[1], r[2] as u8)
}

pub fn contribution(s: &JString) -> TriPoly {
    let w = s.u2.div_euclid(2);
    let half = s.u2.rem_euclid(2) == 1;
    let twist = if s.j == 1 { TriPoly::mono(-w, w, (w.rem_euclid(2)) as u8) } else { TriPoly::mono(-w, w, 0) };
    &(&table_entry(s.j, s.family, half) * &shift_mono(s.base)) * &twist
}

fn role_of(c: &TrigradedCurve, j: usize, node: Node) -> Option<(Role, Index)> {
    match node {
        Node::Cross(i) => {
            let x = &c.crossings[i];
            let role = if x.line == j {
                Role::C
            } else if x.line + 1 == j {
                Role::L
            } else if x.line == j + 1 {
                Role::R
            } else {
                return None;
            };
            Some((role, x.mu))
        }
        Node::Punct(k) if k + 1 == j => Some((Role::P, [0; 3])),
        Node::Punct(k) if k == j => Some((Role::Q, [0; 3])),
        _ => None,
    }
}

fn matches(actual: &[(Role, Index)], canon: &[(Role, Index)]) -> bool {
    actual.len() == canon.len()
        && actual.iter().zip(canon).all(|(a, b)| {
            a.0 == b.0 && (matches!(a.0, Role::P | Role::Q) || a.1 == b.1)
        })
}

fn classify(c: &TrigradedCurve, j: usize, nodes: &[Node]) -> Result<JString> {
    let crossings: Vec<usize> = nodes.iter().filter_map(|n| if let Node::Cross(i) = n { Some(*i) } else { None }).collect();
    let seq: Option<Vec<(Role, Index)>> = nodes.iter().map(|n| role_of(c, j, *n)).collect();
    let fail = || Error::Curve(format!("unclassifiable {}-string through crossings {:?}", j, crossings));
    let seq = seq.ok_or_else(fail)?;
    let bound = 2 * nodes.len() as i64 + 2;
    for orient in [false, true] {
        let s: Vec<(Role, Index)> = if orient { seq.iter().rev().copied().collect() } else { seq.clone() };
        let r = match s[0].0 {
            Role::P => s[1].1,
            _ => s[0].1,
        };
        for fam in Family::ALL {
            let range: Vec<i64> = if fam.has_param() { (-bound..=bound).collect() } else { vec![0] };
            for u2 in range {
                if let Some(canon) = canonical(j, c.n, fam, u2, r) {
                    if matches(&s, &canon) {
                        return Ok(JString { j, family: fam, u2, base: r, crossings });
                    }
                }
            }
        }
    }
    Err(fail())
}

/// All j-strings of the curve.
pub fn jstrings(c: &TrigradedCurve, j: usize) -> Result<Vec<JString>> {
    c.validate()?;
    if j < 1 || j > c.n {
        return Err(Error::Invalid(format!("no vertical line d{}", j)));
    }
    let (nodes, regions) = c.chain();
    let inside = |r: Option<usize>| r.is_some_and(|r| r + 1 == j || r == j);
    let mut out = Vec::new();
    let mut k = 0;
    while k < regions.len() {
        if !inside(regions[k]) {
            k += 1;
            continue;
        }
        let start = k;
        while k < regions.len() && inside(regions[k]) {
            k += 1;
        }
        let piece = &nodes[start..=k];
        out.push(classify(c, j, piece)?);
    }
    // a lone j-crossing at an open end is never inside a run
    for (i, x) in c.crossings.iter().enumerate() {
        if x.line == j && !out.iter().any(|s| s.crossings.contains(&i)) {
            return Err(Error::Curve(format!("crossing {} is not part of a complete {}-string", i, j)));
        }
    }
    Ok(out)
}

pub fn itrigr_basic(j: usize, c: &TrigradedCurve) -> Result<TriPoly> {
    Ok(jstrings(c, j)?.iter().fold(TriPoly::zero(), |acc, s| &acc + &contribution(s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Puncture,
    Zero,
}

/// Local index of the swapped pair of curves at an intersection point.
pub fn symmetry_check(mu: Index, at: Location) -> Index {
    let base = match at {
        Location::Interior => [1, 0, 0],
        Location::Puncture => [0, 1, 0],
        Location::Zero => [1, 0, 1],
    };
    [base[0] - mu[0], base[1] - mu[1], (base[2] - mu[2]).rem_euclid(2)]
}

/// Geometric intersection number read off an intersection polynomial.
pub fn geometric_number(p: &TriPoly) -> Rat {
    p.eval_ones() * rat(1, 2)
}

/// The basic curve b_j with a single crossing on d_j.
pub fn basic_curve(n: usize, j: usize, r: Index) -> TrigradedCurve {
    TrigradedCurve {
        n,
        crossings: vec![Crossing { line: j, mu: r }],
        segments: vec![
            Segment { a: 0, b: SegEnd::Puncture { puncture: j - 1 }, region: j - 1 },
            Segment { a: 0, b: SegEnd::Puncture { puncture: j }, region: j },
        ],
        d0_pairs: vec![],
        endpoints: [Some(j - 1), Some(j)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::{hom_poincare, ShiftedProjective};
    use crate::zigzag::{Grading, Kind};

    fn alg(n: usize) -> ZigzagAlgebra<Rat> {
        ZigzagAlgebra::new(Kind::B, n, Grading::Ks).unwrap()
    }

    /// 2 -> d2 -> d1 -> around 0 -> d1 -> 1
    fn curve_e(r: Index) -> TrigradedCurve {
        TrigradedCurve {
            n: 2,
            crossings: vec![
                Crossing { line: 2, mu: r },
                Crossing { line: 1, mu: add(r, [-1, 0, 0]) },
                Crossing { line: 1, mu: add(r, [-1, 0, 1]) },
            ],
            segments: vec![
                Segment { a: 0, b: SegEnd::Puncture { puncture: 2 }, region: 2 },
                Segment { a: 0, b: SegEnd::Crossing(1), region: 1 },
                Segment { a: 1, b: SegEnd::Crossing(2), region: 0 },
                Segment { a: 2, b: SegEnd::Puncture { puncture: 1 }, region: 1 },
            ],
            d0_pairs: vec![[1, 2]],
            endpoints: [Some(2), Some(1)],
        }
    }

    #[test]
    fn basic_curve_is_projective() {
        let a = alg(3);
        for j in 1..=3 {
            let c = lb(&a, &basic_curve(3, j, [0, 0, 0])).unwrap();
            assert_eq!(c.single_term(), Some(ShiftedProjective::new(j)));
            let s = jstrings(&basic_curve(3, j, [0, 0, 0]), j).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].to_string(), "VI(0,0,0)");
        }
    }

    #[test]
    fn shift_lemma() {
        let a = alg(2);
        let c = curve_e([0, 0, 0]);
        let r = [2, -1, 1];
        let lhs = lb(&a, &c.shifted(r)).unwrap();
        let rhs = lb(&a, &c).unwrap().shift(-r[0], r[1], r[2] as u8);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn curve_e_poincare() {
        let a = alg(2);
        for r in [[0, 0, 0], [1, -2, 1]] {
            let c = curve_e(r);
            let l = lb(&a, &c).unwrap();
            for j in 1..=2 {
                let p = crate::homotopy::Complex::projective(&a, ShiftedProjective::new(j)).unwrap();
                assert_eq!(hom_poincare(&a, &p, &l).unwrap(), itrigr_basic(j, &c).unwrap(), "j={}", j);
            }
        }
        let s = jstrings(&curve_e([0, 0, 0]), 1).unwrap();
        assert_eq!(s[0].to_string(), "III'_1(0,0,0)");
    }

    #[test]
    fn validation_errors() {
        let mut c = curve_e([0, 0, 0]);
        c.crossings[1].mu = [0, 0, 0];
        let e = c.validate().unwrap_err();
        assert!(e.to_string().contains("segment (0,1)"), "{}", e);
        let mut c = curve_e([0, 0, 0]);
        c.d0_pairs.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = curve_e([0, 1, 1]);
        let s = c.to_json();
        let back = TrigradedCurve::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), s);
        assert!(matches!(TrigradedCurve::from_json("{\"n\": 2,\n \"crossings\": ["), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn symmetry_involution() {
        assert_eq!(symmetry_check([0, 0, 0], Location::Interior), [1, 0, 0]);
        assert_eq!(symmetry_check([1, 0, 1], Location::Zero), [0, 0, 0]);
        for at in [Location::Interior, Location::Puncture, Location::Zero] {
            let m = [3, -2, 1];
            assert_eq!(symmetry_check(symmetry_check(m, at), at), m);
        }
    }
}

/// Tallies for the behaviour of sgn under the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SgnTally {
    pub complexes: usize,
    /// sigma_1^{+-} cases where the flip agrees with "odd number of P2"
    pub odd_rule_holds: usize,
    pub odd_rule_fails: usize,
    /// cases where a sigma_j, j >= 2, changed sgn
    pub invariance_failures: usize,
    pub first_counterexample: Option<String>,
}

/// Runs every generator on the complexes reachable from `start` by words
/// of length at most `depth` and compares sgn before and after.
pub fn sgn_tally(
    alg: &ZigzagAlgebra<Rat>,
    start: &Complex<Rat>,
    depth: usize,
    opts: crate::homotopy::ActionOpts,
) -> Result<SgnTally> {
    use crate::homotopy::{apply_generator, count_vertex, minimize, sgn};
    let n = alg.vertices();
    let mut tally = SgnTally::default();
    let mut layer = vec![(String::new(), minimize(alg, start))];
    for level in 0..=depth {
        let mut next = Vec::new();
        for (word, c) in &layer {
            tally.complexes += 1;
            let s0 = sgn(c)?;
            let p2_odd = count_vertex(c, 2) % 2 == 1;
            for j in 1..=n {
                for sign in [1i8, -1] {
                    let mut d = apply_generator(alg, c, j, sign, opts.twist)?;
                    if opts.minimize {
                        d = minimize(alg, &d);
                    }
                    let flipped = sgn(&d)? != s0;
                    let letter = format!("{}{}", if sign < 0 { "-" } else { "" }, j);
                    if j == 1 {
                        if flipped == p2_odd {
                            tally.odd_rule_holds += 1;
                        } else {
                            tally.odd_rule_fails += 1;
                            if tally.first_counterexample.is_none() {
                                tally.first_counterexample = Some(format!(
                                    "word [{}] then {}: #P2 = {}, sgn {} -> {}",
                                    word.trim(),
                                    letter,
                                    count_vertex(c, 2),
                                    s0,
                                    sgn(&d)?
                                ));
                            }
                        }
                    } else if flipped {
                        tally.invariance_failures += 1;
                    }
                    if level < depth {
                        next.push((format!("{} {}", word, letter), d));
                    }
                }
            }
        }
        layer = next;
    }
    Ok(tally)
}
