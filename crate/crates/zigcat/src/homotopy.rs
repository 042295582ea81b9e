use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{powmod, Scalar, TriPoly};
use crate::linalg::{nullspace, rank, rank_modp};
use crate::zigzag::{AlgId, Elem, Kind, ZigzagAlgebra};
use crate::{Error, Result};

/// A projective term sitting at a known cohomological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub vertex: usize,
    pub internal: i64,
    pub z2: u8,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.vertex)?;
        if self.internal != 0 {
            write!(f, "{{{}}}", self.internal)?;
        }
        if self.z2 != 0 {
            write!(f, "<1>")?;
        }
        Ok(())
    }
}

/// P_j[r]{s}<t>; [r] puts the module in cohomological degree -r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedProjective {
    pub vertex: usize,
    pub coh: i64,
    pub internal: i64,
    pub z2: u8,
}

impl ShiftedProjective {
    pub fn new(vertex: usize) -> Self {
        ShiftedProjective { vertex, coh: 0, internal: 0, z2: 0 }
    }

    pub fn shifted(vertex: usize, coh: i64, internal: i64, z2: u8) -> Self {
        ShiftedProjective { vertex, coh, internal, z2: z2 & 1 }
    }
}

impl fmt::Display for ShiftedProjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.vertex)?;
        if self.coh != 0 {
            write!(f, "[{}]", self.coh)?;
        }
        if self.internal != 0 {
            write!(f, "{{{}}}", self.internal)?;
        }
        if self.z2 != 0 {
            write!(f, "<1>")?;
        }
        Ok(())
    }
}

/// Row index = target term in degree p+1, column = source term in degree p.
pub type Matrix<S> = Vec<Vec<Elem<S>>>;

#[derive(Clone, Debug, PartialEq)]
pub struct Complex<S> {
    pub alg: AlgId,
    terms: BTreeMap<i64, Vec<Term>>,
    diff: BTreeMap<i64, Matrix<S>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoMode {
    Fingerprint,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Iso,
    /// `exact` is false when the negative answer came from random sampling.
    NonIso { exact: bool },
    Inconclusive,
}

impl Verdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, Verdict::Iso)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Iso => write!(f, "Iso"),
            Verdict::NonIso { exact: true } => write!(f, "NonIso"),
            Verdict::NonIso { exact: false } => write!(f, "NonIso(sampled)"),
            Verdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// A braid word; letters are (generator, +1 or -1), applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub kind: Kind,
    pub size: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(kind: Kind, size: usize, letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(j, s) in &letters {
            if j < 1 || j > size || (s != 1 && s != -1) {
                return Err(Error::Invalid(format!("bad braid letter {}{}", if s < 0 { "-" } else { "" }, j)));
            }
        }
        Ok(BraidWord { kind, size, letters })
    }

    /// Parses "2 1 -2".
    pub fn parse(kind: Kind, size: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut col = 1;
        for tok in s.split_whitespace() {
            let pos = s[col - 1..].find(tok).map_or(col, |k| col + k);
            let v: i64 = tok.parse().map_err(|_| Error::Parse {
                line: 1,
                col: pos,
                msg: format!("bad letter {:?}", tok),
            })?;
            if v == 0 {
                return Err(Error::Parse { line: 1, col: pos, msg: "letter 0".into() });
            }
            letters.push((v.unsigned_abs() as usize, if v > 0 { 1 } else { -1 }));
            col = pos + tok.len();
        }
        Self::new(kind, size, letters)
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            kind: self.kind,
            size: self.size,
            letters: self.letters.iter().rev().map(|&(j, s)| (j, -s)).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { kind: self.kind, size: self.size, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|&(j, s)| format!("{}", j as i64 * s as i64)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl<S: Scalar> Complex<S> {
    pub fn zero(alg: AlgId) -> Self {
        Complex { alg, terms: BTreeMap::new(), diff: BTreeMap::new() }
    }

    pub fn projective(alg: &ZigzagAlgebra<S>, sp: ShiftedProjective) -> Result<Self> {
        if sp.vertex < 1 || sp.vertex > alg.vertices() {
            return Err(Error::Invalid(format!("no vertex {}", sp.vertex)));
        }
        let z2 = if alg.kind() == Kind::A { 0 } else { sp.z2 & 1 };
        let mut c = Self::zero(alg.id());
        c.terms.insert(-sp.coh, vec![Term { vertex: sp.vertex, internal: sp.internal, z2 }]);
        Ok(c)
    }

    /// The direct sum of all indecomposable projectives.
    pub fn all_projectives(alg: &ZigzagAlgebra<S>) -> Self {
        let mut c = Self::zero(alg.id());
        c.terms.insert(
            0,
            (1..=alg.vertices()).map(|v| Term { vertex: v, internal: 0, z2: 0 }).collect(),
        );
        c
    }

    /// Builds a complex from terms and differential entries (p, row, col, entry).
    pub fn from_parts(
        alg: AlgId,
        terms: BTreeMap<i64, Vec<Term>>,
        entries: impl IntoIterator<Item = (i64, usize, usize, Elem<S>)>,
    ) -> Self {
        let mut c = Complex { alg, terms, diff: BTreeMap::new() };
        c.terms.retain(|_, v| !v.is_empty());
        c.reset_diff();
        for (p, r, k, e) in entries {
            let m = c.diff.get_mut(&p).expect("entry outside the complex");
            m[r][k] = m[r][k].add(&e);
        }
        c
    }

    fn reset_diff(&mut self) {
        let degs: Vec<i64> = self.terms.keys().copied().collect();
        self.diff.clear();
        for p in degs {
            if let (Some(a), Some(b)) = (self.terms.get(&p), self.terms.get(&(p + 1))) {
                self.diff.insert(p, vec![vec![Elem::zero(); a.len()]; b.len()]);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn terms_at(&self, p: i64) -> &[Term] {
        self.terms.get(&p).map_or(&[], |v| v.as_slice())
    }

    pub fn all_terms(&self) -> impl Iterator<Item = (i64, &Term)> {
        self.terms.iter().flat_map(|(p, v)| v.iter().map(move |t| (*p, t)))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|v| v.len()).sum()
    }

    pub fn entry(&self, p: i64, row: usize, col: usize) -> Elem<S> {
        self.diff.get(&p).map_or_else(Elem::zero, |m| m[row][col].clone())
    }

    fn entry_ref(&self, p: i64, row: usize, col: usize) -> Option<&Elem<S>> {
        self.diff.get(&p).map(|m| &m[row][col]).filter(|e| !e.is_zero())
    }

    pub fn single_term(&self) -> Option<ShiftedProjective> {
        if self.num_terms() != 1 {
            return None;
        }
        let (p, t) = self.all_terms().next().unwrap();
        Some(ShiftedProjective { vertex: t.vertex, coh: -p, internal: t.internal, z2: t.z2 })
    }

    pub fn differential_is_zero(&self) -> bool {
        self.diff.values().all(|m| m.iter().all(|r| r.iter().all(|e| e.is_zero())))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        let mut offset: HashMap<i64, usize> = HashMap::new();
        for (p, v) in &other.terms {
            let slot = terms.entry(*p).or_default();
            offset.insert(*p, slot.len());
            slot.extend(v.iter().copied());
        }
        let mut entries = Vec::new();
        for (p, m) in &self.diff {
            for (r, row) in m.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        entries.push((*p, r, k, e.clone()));
                    }
                }
            }
        }
        for (p, m) in &other.diff {
            for (r, row) in m.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        entries.push((*p, r + offset[&(p + 1)], k + offset[p], e.clone()));
                    }
                }
            }
        }
        Self::from_parts(self.alg, terms, entries)
    }

    /// C[r]{s}<t>.
    pub fn shift(&self, r: i64, s: i64, t: u8) -> Self {
        let keep_z2 = self.alg.kind == Kind::B;
        let terms = self
            .terms
            .iter()
            .map(|(p, v)| {
                let v = v
                    .iter()
                    .map(|x| Term {
                        vertex: x.vertex,
                        internal: x.internal + s,
                        z2: if keep_z2 { (x.z2 + t) & 1 } else { 0 },
                    })
                    .collect();
                (p - r, v)
            })
            .collect();
        let diff = self.diff.iter().map(|(p, m)| (p - r, m.clone())).collect();
        Complex { alg: self.alg, terms, diff }
    }

    fn toggle_z2(&mut self) {
        for v in self.terms.values_mut() {
            for t in v.iter_mut() {
                t.z2 ^= 1;
            }
        }
    }

    /// Checks d^2 = 0 and homogeneity of every entry.
    pub fn check(&self, alg: &ZigzagAlgebra<S>) -> Result<()> {
        self.same_alg(alg)?;
        for (p, m) in &self.diff {
            let src = &self.terms[p];
            let tgt = &self.terms[&(p + 1)];
            for (r, row) in m.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let (y, z) = (src[k], tgt[r]);
                    let ok = match alg.homogeneity(e) {
                        Some((a, b, deg, z2)) => {
                            a == y.vertex
                                && b == z.vertex
                                && deg == y.internal - z.internal
                                && (alg.kind() == Kind::A || z2 == (y.z2 + 2 - z.z2) % 2)
                        }
                        None => false,
                    };
                    if !ok {
                        return Err(Error::Invalid(format!(
                            "entry ({},{}) in degree {} is not homogeneous of the forced degree: {}",
                            r,
                            k,
                            p,
                            alg.render(e)
                        )));
                    }
                }
            }
            if let Some(m2) = self.diff.get(&(p + 1)) {
                for (r, row2) in m2.iter().enumerate() {
                    for k in 0..src.len() {
                        let mut acc = Elem::zero();
                        for (mid, e2) in row2.iter().enumerate() {
                            if !e2.is_zero() && !m[mid][k].is_zero() {
                                acc = acc.add(&alg.mul(&m[mid][k], e2));
                            }
                        }
                        if !acc.is_zero() {
                            return Err(Error::Invalid(format!(
                                "d^2 != 0 at degree {}, entry ({},{})",
                                p, r, k
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn same_alg(&self, alg: &ZigzagAlgebra<S>) -> Result<()> {
        if self.alg != alg.id() {
            return Err(Error::Mismatch(format!("complex over {:?}, algebra {:?}", self.alg, alg.id())));
        }
        Ok(())
    }

    pub fn render(&self, alg: &ZigzagAlgebra<S>) -> String {
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut out = String::new();
        for (p, v) in &self.terms {
            let names: Vec<String> = v.iter().map(|t| t.to_string()).collect();
            out.push_str(&format!("deg {}: {}\n", p, names.join(", ")));
        }
        for (p, m) in &self.diff {
            for (r, row) in m.iter().enumerate() {
                for (k, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        out.push_str(&format!("d {} ({},{}): {}\n", p, r, k, alg.render(e)));
                    }
                }
            }
        }
        out
    }

    pub fn parse(alg: &ZigzagAlgebra<S>, text: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        let mut entries = Vec::new();
        let perr = |line: usize, col: usize, msg: String| Error::Parse { line, col, msg };
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let ln = ln + 1;
            if line.is_empty() || line.starts_with('#') || line == "0" {
                continue;
            }
            if let Some(rest) = line.strip_prefix("deg ") {
                let (p, list) = rest.split_once(':').ok_or_else(|| perr(ln, 1, "missing ':'".into()))?;
                let p: i64 = p.trim().parse().map_err(|_| perr(ln, 5, "bad degree".into()))?;
                let mut v = Vec::new();
                for item in list.split(',') {
                    let t = parse_term(item.trim())
                        .ok_or_else(|| perr(ln, raw.find(item.trim()).unwrap_or(0) + 1, format!("bad term {:?}", item.trim())))?;
                    if t.vertex < 1 || t.vertex > alg.vertices() {
                        return Err(perr(ln, 1, format!("vertex {} out of range", t.vertex)));
                    }
                    v.push(t);
                }
                terms.insert(p, v);
            } else if let Some(rest) = line.strip_prefix("d ") {
                let (head, body) = rest.split_once(':').ok_or_else(|| perr(ln, 1, "missing ':'".into()))?;
                let (p, rc) = head.trim().split_once(' ').ok_or_else(|| perr(ln, 3, "bad entry header".into()))?;
                let p: i64 = p.parse().map_err(|_| perr(ln, 3, "bad degree".into()))?;
                let rc = rc.trim().trim_start_matches('(').trim_end_matches(')');
                let (r, k) = rc.split_once(',').ok_or_else(|| perr(ln, 3, "bad index pair".into()))?;
                let r: usize = r.trim().parse().map_err(|_| perr(ln, 3, "bad row".into()))?;
                let k: usize = k.trim().parse().map_err(|_| perr(ln, 3, "bad column".into()))?;
                let e = alg.parse_elem(body).map_err(|m| perr(ln, raw.find(':').unwrap_or(0) + 2, m))?;
                entries.push((ln, p, r, k, e));
            } else {
                return Err(perr(ln, 1, format!("unrecognised line {:?}", line)));
            }
        }
        let mut c = Self::from_parts(alg.id(), terms, Vec::new());
        for (ln, p, r, k, e) in entries {
            let fits = c.diff.get(&p).is_some_and(|m| r < m.len() && k < m[r].len());
            if !fits {
                return Err(perr(ln, 1, format!("entry ({},{}) outside d^{}", r, k, p)));
            }
            let m = c.diff.get_mut(&p).unwrap();
            m[r][k] = e;
        }
        c.check(alg)?;
        Ok(c)
    }
}

fn parse_term(s: &str) -> Option<Term> {
    let s = s.strip_prefix('P')?;
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    let vertex: usize = s[..end].parse().ok()?;
    let mut rest = &s[end..];
    let mut internal = 0;
    let mut z2 = 0;
    if let Some(r) = rest.strip_prefix('{') {
        let close = r.find('}')?;
        internal = r[..close].parse().ok()?;
        rest = &r[close + 1..];
    }
    if let Some(r) = rest.strip_prefix('<') {
        let close = r.find('>')?;
        z2 = r[..close].parse::<u8>().ok()? & 1;
        rest = &r[close + 1..];
    }
    if !rest.is_empty() {
        return None;
    }
    Some(Term { vertex, internal, z2 })
}

/// Parses `P1[1]{1}<1>`.
pub fn parse_shifted(s: &str) -> Option<ShiftedProjective> {
    let s = s.trim();
    let (head, coh) = match (s.find('['), s.find(']')) {
        (Some(a), Some(b)) if a < b => {
            let coh: i64 = s[a + 1..b].parse().ok()?;
            (format!("{}{}", &s[..a], &s[b + 1..]), coh)
        }
        _ => (s.to_string(), 0),
    };
    let t = parse_term(&head)?;
    Some(ShiftedProjective { vertex: t.vertex, coh, internal: t.internal, z2: t.z2 })
}

/// gamma_j(1) as pairs (u, v) with u in A e_j and v in e_j A.
pub fn gamma_terms<S: Scalar>(alg: &ZigzagAlgebra<S>, j: usize) -> Vec<(Elem<S>, Elem<S>)> {
    let b = |i: usize| Elem::<S>::basis(i);
    let mut out = vec![(b(alg.x(j)), b(alg.e(j))), (b(alg.e(j)), b(alg.x(j)))];
    if j > 1 {
        out.push((b(alg.arrow(j - 1, j)), b(alg.arrow(j, j - 1))));
    }
    if j < alg.vertices() {
        out.push((b(alg.arrow(j + 1, j)), b(alg.arrow(j, j + 1))));
    }
    if alg.kind() == Kind::B && j == 1 {
        let u = alg.mul(&b(alg.ie(2)), &b(alg.arrow(2, 1))).neg();
        let v = alg.mul(&b(alg.arrow(1, 2)), &b(alg.ie(2)));
        out.push((u, v));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Origin {
    Base(usize),
    Tensor(usize, usize),
}

/// R_j (sign +1) or R_j' (sign -1) tensored with C. `twist` applies the <1>
/// shift that type B uses for sigma_1.
pub fn apply_generator<S: Scalar>(
    alg: &ZigzagAlgebra<S>,
    c: &Complex<S>,
    j: usize,
    sign: i8,
    twist: bool,
) -> Result<Complex<S>> {
    c.same_alg(alg)?;
    if j < 1 || j > alg.vertices() {
        return Err(Error::Invalid(format!("no generator {}", j)));
    }
    let fb: Vec<Vec<usize>> = (0..=alg.vertices())
        .map(|k| if k == 0 { Vec::new() } else { alg.f_basis(j, k) })
        .collect();
    let gamma = gamma_terms(alg, j);
    let gamma_deg = alg.basis_elem(alg.x(j)).deg;
    let shift = if sign > 0 { -1 } else { 1 };

    let mut layout: BTreeMap<i64, Vec<(Origin, Term)>> = BTreeMap::new();
    for (p, v) in &c.terms {
        for (k, t) in v.iter().enumerate() {
            layout.entry(*p).or_default().push((Origin::Base(k), *t));
        }
    }
    for (p, v) in &c.terms {
        for (k, t) in v.iter().enumerate() {
            for &cb in &fb[t.vertex] {
                let be = alg.basis_elem(cb);
                let internal = if sign > 0 {
                    t.internal + be.deg
                } else {
                    t.internal + be.deg - gamma_deg
                };
                let nt = Term { vertex: j, internal, z2: (t.z2 + be.z2) & 1 };
                layout.entry(p + shift).or_default().push((Origin::Tensor(k, cb), nt));
            }
        }
    }
    if alg.kind() == Kind::A {
        for v in layout.values_mut() {
            for x in v.iter_mut() {
                x.1.z2 = 0;
            }
        }
    }
    let pos: HashMap<(i64, Origin), usize> = layout
        .iter()
        .flat_map(|(p, v)| v.iter().enumerate().map(move |(i, (o, _))| ((*p, *o), i)))
        .collect();
    let terms: BTreeMap<i64, Vec<Term>> =
        layout.iter().map(|(p, v)| (*p, v.iter().map(|x| x.1).collect())).collect();
    let mut entries = Vec::new();
    for (p, m) in &c.diff {
        let src = &c.terms[p];
        let tgt = &c.terms[&(p + 1)];
        for (r, row) in m.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                entries.push((*p, pos[&(*p, Origin::Base(k))], pos[&(p + 1, Origin::Base(r))], a.clone()));
                for &cb in &fb[src[k].vertex] {
                    let ca = alg.mul(&Elem::basis(cb), a);
                    for (c2, lam) in alg.expand_f(j, &ca) {
                        debug_assert!(fb[tgt[r].vertex].contains(&c2));
                        entries.push((
                            p + shift,
                            pos[&(p + shift, Origin::Tensor(k, cb))],
                            pos[&(p + 1 + shift, Origin::Tensor(r, c2))],
                            lam.neg(),
                        ));
                    }
                }
            }
        }
    }
    for (p, v) in &c.terms {
        for (k, t) in v.iter().enumerate() {
            let ek = Elem::basis(alg.e(t.vertex));
            if sign > 0 {
                for &cb in &fb[t.vertex] {
                    entries.push((p - 1, pos[&(p - 1, Origin::Tensor(k, cb))], pos[&(*p, Origin::Base(k))], Elem::basis(cb)));
                }
            } else {
                let mut acc: Vec<(usize, Elem<S>)> = Vec::new();
                for (u, w) in &gamma {
                    let left = alg.mul(&ek, u);
                    let right = alg.mul(w, &ek);
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    for (c2, lam) in alg.expand_f(j, &right) {
                        let val = alg.mul(&left, &lam);
                        match acc.iter_mut().find(|x| x.0 == c2) {
                            Some(x) => x.1 = x.1.add(&val),
                            None => acc.push((c2, val)),
                        }
                    }
                }
                for (c2, val) in acc {
                    if !val.is_zero() {
                        entries.push((*p, pos[&(*p, Origin::Base(k))], pos[&(p + 1, Origin::Tensor(k, c2))], val));
                    }
                }
            }
        }
    }
    let mut out = Complex::from_parts(alg.id(), terms, entries.into_iter().map(|(p, col, row, e)| (p, row, col, e)));
    if twist && alg.kind() == Kind::B && j == 1 {
        out.toggle_z2();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct ActionOpts {
    pub twist: bool,
    pub minimize: bool,
}

impl Default for ActionOpts {
    fn default() -> Self {
        ActionOpts { twist: true, minimize: true }
    }
}

/// Applies the letters of w left to right.
pub fn apply_word<S: Scalar>(
    alg: &ZigzagAlgebra<S>,
    c: &Complex<S>,
    w: &BraidWord,
    opts: ActionOpts,
) -> Result<Complex<S>> {
    if w.kind != alg.kind() || w.size != alg.vertices() {
        return Err(Error::Mismatch("braid word and algebra disagree".into()));
    }
    let mut cur = c.clone();
    for &(j, s) in &w.letters {
        cur = apply_generator(alg, &cur, j, s, opts.twist)?;
        if opts.minimize {
            cur = minimize(alg, &cur);
        }
    }
    Ok(cur)
}

fn find_pivot<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>) -> Option<(i64, usize, usize)> {
    for (p, m) in &c.diff {
        let src = &c.terms[p];
        let tgt = &c.terms[&(p + 1)];
        for (r, row) in m.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                if tgt[r].vertex == src[k].vertex && tgt[r].internal == src[k].internal && alg.is_top_unit(src[k].vertex, e) {
                    return Some((*p, r, k));
                }
            }
        }
    }
    None
}

/// Gaussian elimination until no isomorphism component remains.
pub fn minimize<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>) -> Complex<S> {
    let mut c = c.clone();
    while let Some((p, piv_r, piv_k)) = find_pivot(alg, &c) {
        let j = c.terms[&p][piv_k].vertex;
        let inv = alg.invert_top(j, &c.diff[&p][piv_r][piv_k]);
        let m = c.diff[&p].clone();
        let rows = m.len();
        let cols = m[0].len();
        // column piv_k (b -> r) and row piv_r (k -> c)
        let mut new_m: Matrix<S> = Vec::with_capacity(rows - 1);
        for r in (0..rows).filter(|&r| r != piv_r) {
            let down = &m[r][piv_k];
            let mut row = Vec::with_capacity(cols - 1);
            for k in (0..cols).filter(|&k| k != piv_k) {
                let mut e = m[r][k].clone();
                let across = &m[piv_r][k];
                if !down.is_zero() && !across.is_zero() {
                    let t = alg.mul(&alg.mul(across, &inv), down);
                    e = e.sub(&t);
                }
                row.push(e);
            }
            new_m.push(row);
        }
        c.terms.get_mut(&p).unwrap().remove(piv_k);
        c.terms.get_mut(&(p + 1)).unwrap().remove(piv_r);
        c.diff.insert(p, new_m);
        if let Some(prev) = c.diff.get_mut(&(p - 1)) {
            prev.remove(piv_k);
        }
        if let Some(next) = c.diff.get_mut(&(p + 1)) {
            for row in next.iter_mut() {
                row.remove(piv_r);
            }
        }
        c.drop_empty();
    }
    c
}

impl<S: Scalar> Complex<S> {
    fn drop_empty(&mut self) {
        let empty: Vec<i64> = self.terms.iter().filter(|(_, v)| v.is_empty()).map(|(p, _)| *p).collect();
        for p in empty {
            self.terms.remove(&p);
            self.diff.remove(&p);
            self.diff.remove(&(p - 1));
        }
        self.diff.retain(|_, m| !m.is_empty() && !m[0].is_empty());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct HomKey {
    p: i64,
    x: usize,
    y: usize,
    b: usize,
}

/// Graded pieces of the Hom complex from C to D.
struct HomComplex {
    /// per k: basis keys with their (deg, z2)
    basis: BTreeMap<i64, Vec<(HomKey, (i64, u8))>>,
    index: HashMap<(i64, HomKey), usize>,
}

fn hom_complex<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>) -> HomComplex {
    let mut basis: BTreeMap<i64, Vec<(HomKey, (i64, u8))>> = BTreeMap::new();
    for (p, cs) in &c.terms {
        for (q, ds) in &d.terms {
            let k = q - p;
            for (x, tx) in cs.iter().enumerate() {
                for (y, ty) in ds.iter().enumerate() {
                    for &b in alg.block(tx.vertex, ty.vertex) {
                        let be = alg.basis_elem(b);
                        let deg = be.deg + ty.internal - tx.internal;
                        let z = if alg.kind() == Kind::A { 0 } else { (be.z2 + ty.z2 + 2 - tx.z2) % 2 };
                        basis.entry(k).or_default().push((HomKey { p: *p, x, y, b }, (deg, z)));
                    }
                }
            }
        }
    }
    let index = basis
        .iter()
        .flat_map(|(k, v)| v.iter().enumerate().map(move |(i, (key, _))| ((*k, *key), i)))
        .collect();
    HomComplex { basis, index }
}

/// Image of a Hom basis element under the Hom differential, as (index, coefficient).
fn hom_image<S: Scalar>(
    alg: &ZigzagAlgebra<S>,
    c: &Complex<S>,
    d: &Complex<S>,
    hc: &HomComplex,
    k: i64,
    key: &HomKey,
) -> Vec<(usize, S)> {
    let mut out = Vec::new();
    let f = Elem::<S>::basis(key.b);
    let q = key.p + k;
    for (y2, _) in d.terms_at(q + 1).iter().enumerate() {
        if let Some(e) = d.entry_ref(q, y2, key.y) {
            for (b2, coef) in alg.mul(&f, e).terms() {
                let nk = HomKey { p: key.p, x: key.x, y: y2, b: *b2 };
                out.push((hc.index[&(k + 1, nk)], coef.clone()));
            }
        }
    }
    let sign = if k % 2 == 0 { -S::one() } else { S::one() };
    for (x2, _) in c.terms_at(key.p - 1).iter().enumerate() {
        if let Some(e) = c.entry_ref(key.p - 1, key.x, x2) {
            for (b2, coef) in alg.mul(e, &f).terms() {
                let nk = HomKey { p: key.p - 1, x: x2, y: key.y, b: *b2 };
                out.push((hc.index[&(k + 1, nk)], coef.clone() * sign.clone()));
            }
        }
    }
    out
}

/// Rank of d^k restricted to each grading.
fn hom_ranks<S: Scalar>(
    alg: &ZigzagAlgebra<S>,
    c: &Complex<S>,
    d: &Complex<S>,
    hc: &HomComplex,
    k: i64,
) -> HashMap<(i64, u8), usize> {
    let mut out = HashMap::new();
    let Some(src) = hc.basis.get(&k) else { return out };
    let Some(dst) = hc.basis.get(&(k + 1)) else { return out };
    let mut groups: HashMap<(i64, u8), Vec<usize>> = HashMap::new();
    for (i, (_, g)) in src.iter().enumerate() {
        groups.entry(*g).or_default().push(i);
    }
    let mut dst_groups: HashMap<(i64, u8), HashMap<usize, usize>> = HashMap::new();
    for (i, (_, g)) in dst.iter().enumerate() {
        let m = dst_groups.entry(*g).or_default();
        let n = m.len();
        m.insert(i, n);
    }
    for (g, cols) in groups {
        let Some(local) = dst_groups.get(&g) else { continue };
        let rows: Vec<Vec<S>> = cols
            .iter()
            .map(|&i| {
                let mut v = vec![S::zero(); local.len()];
                for (idx, coef) in hom_image(alg, c, d, hc, k, &src[i].0) {
                    let slot = local[&idx];
                    v[slot] = v[slot].clone() + coef;
                }
                v
            })
            .collect();
        let r = rank(&rows, local.len());
        if r > 0 {
            out.insert(g, r);
        }
    }
    out
}

/// Poincare polynomial of the Hom complex from C to D.
pub fn hom_poincare<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>) -> Result<TriPoly> {
    c.same_alg(alg)?;
    d.same_alg(alg)?;
    let hc = hom_complex(alg, c, d);
    let mut ranks: HashMap<i64, HashMap<(i64, u8), usize>> = HashMap::new();
    for &k in hc.basis.keys() {
        ranks.insert(k, hom_ranks(alg, c, d, &hc, k));
    }
    let mut out = TriPoly::zero();
    for (k, v) in &hc.basis {
        let mut dims: HashMap<(i64, u8), usize> = HashMap::new();
        for (_, g) in v {
            *dims.entry(*g).or_default() += 1;
        }
        for (g, n) in dims {
            let r1 = ranks.get(k).and_then(|m| m.get(&g)).copied().unwrap_or(0);
            let r0 = ranks.get(&(k - 1)).and_then(|m| m.get(&g)).copied().unwrap_or(0);
            let h = n - r1 - r0;
            if h > 0 {
                out = &out + &TriPoly::term(crate::exact::rat(h as i128, 1), *k, g.0, g.1);
            }
        }
    }
    Ok(out)
}

fn normalized_terms<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>) -> BTreeMap<i64, Vec<Term>> {
    c.terms
        .iter()
        .map(|(p, v)| {
            let mut v: Vec<Term> = v
                .iter()
                .map(|t| Term { z2: if alg.has_complex_top(t.vertex) || alg.kind() == Kind::A { 0 } else { t.z2 }, ..*t })
                .collect();
            v.sort();
            (*p, v)
        })
        .collect()
}

pub const EXHAUSTIVE_LIMIT: usize = 12;
const PRIME: u64 = 998_244_353;
const TRIALS: usize = 8;

/// Decides whether two minimal complexes are isomorphic.
pub fn iso_test<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>, mode: IsoMode) -> Result<Verdict> {
    c.same_alg(alg)?;
    d.same_alg(alg)?;
    if normalized_terms(alg, c) != normalized_terms(alg, d) {
        return Ok(Verdict::NonIso { exact: true });
    }
    match mode {
        IsoMode::Fingerprint => fingerprint(alg, c, d),
        IsoMode::Exhaustive => exhaustive(alg, c, d),
    }
}

fn fingerprint<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>) -> Result<Verdict> {
    for j in 1..=alg.vertices() {
        let p = Complex::projective(alg, ShiftedProjective::new(j))?;
        if hom_poincare(alg, &p, c)? != hom_poincare(alg, &p, d)? {
            return Ok(Verdict::NonIso { exact: true });
        }
    }
    if hom_poincare(alg, c, c)? != hom_poincare(alg, d, d)? {
        return Ok(Verdict::NonIso { exact: true });
    }
    if c == d || (c.differential_is_zero() && d.differential_is_zero()) {
        return Ok(Verdict::Iso);
    }
    Ok(Verdict::Inconclusive)
}

fn sqrt_minus_one(p: u64) -> u64 {
    // 3 generates the multiplicative group of F_998244353
    powmod(3, (p - 1) / 4, p)
}

fn exhaustive<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>) -> Result<Verdict> {
    if let Some((p, v)) = c.terms.iter().find(|(_, v)| v.len() > EXHAUSTIVE_LIMIT) {
        return Err(Error::SizeLimit(format!("{} terms in degree {}", v.len(), p)));
    }
    if c.is_zero() {
        return Ok(Verdict::Iso);
    }
    let hc = hom_complex(alg, c, d);
    let empty = Vec::new();
    let src: Vec<usize> = hc
        .basis
        .get(&0)
        .unwrap_or(&empty)
        .iter()
        .enumerate()
        .filter(|(_, (_, g))| *g == (0, 0))
        .map(|(i, _)| i)
        .collect();
    if src.is_empty() {
        return Ok(Verdict::NonIso { exact: true });
    }
    let dst: HashMap<usize, usize> = hc
        .basis
        .get(&1)
        .unwrap_or(&empty)
        .iter()
        .enumerate()
        .filter(|(_, (_, g))| *g == (0, 0))
        .enumerate()
        .map(|(n, (i, _))| (i, n))
        .collect();
    // equations: one per target coordinate, one unknown per source element
    let mut eqs = vec![vec![S::zero(); src.len()]; dst.len()];
    for (col, &i) in src.iter().enumerate() {
        for (idx, coef) in hom_image(alg, c, d, &hc, 0, &hc.basis[&0][i].0) {
            let r = dst[&idx];
            eqs[r][col] = eqs[r][col].clone() + coef;
        }
    }
    let kernel = nullspace(&eqs, src.len());
    if kernel.is_empty() {
        return Ok(Verdict::NonIso { exact: true });
    }
    let p = PRIME;
    let root = sqrt_minus_one(p);
    let kernel_p: Vec<Vec<u64>> = kernel
        .iter()
        .map(|v| v.iter().map(|x| x.to_modp(p, root).unwrap_or(0)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..TRIALS {
        let coeffs: Vec<u64> = (0..kernel_p.len()).map(|_| rng.gen_range(1..p)).collect();
        let mut f = vec![0u64; src.len()];
        for (v, a) in kernel_p.iter().zip(&coeffs) {
            for (slot, x) in f.iter_mut().zip(v) {
                *slot = (*slot + crate::exact::mulmod(*x, *a, p)) % p;
            }
        }
        let mut all_invertible = true;
        for (deg, cs) in &c.terms {
            let ds = d.terms_at(*deg);
            let offs = |ts: &[Term]| -> Vec<usize> {
                let mut o = vec![0];
                for t in ts {
                    o.push(o.last().unwrap() + alg.top_dim(t.vertex));
                }
                o
            };
            let (co, dof) = (offs(cs), offs(ds));
            let n = *co.last().unwrap();
            if n != *dof.last().unwrap() {
                all_invertible = false;
                break;
            }
            let mut m = vec![vec![0u64; n]; n];
            for (col, &i) in src.iter().enumerate() {
                let key = hc.basis[&0][i].0;
                if key.p != *deg || f[col] == 0 {
                    continue;
                }
                let be = alg.basis_elem(key.b);
                if be.path.len != 0 {
                    continue;
                }
                let (r0, c0) = (dof[key.y], co[key.x]);
                let a = f[col];
                if be.path.im {
                    m[r0 + 1][c0] = (m[r0 + 1][c0] + a) % p;
                    m[r0][c0 + 1] = (m[r0][c0 + 1] + p - a) % p;
                } else {
                    for t in 0..alg.top_dim(be.path.src) {
                        m[r0 + t][c0 + t] = (m[r0 + t][c0 + t] + a) % p;
                    }
                }
            }
            if rank_modp(m, p) < n {
                all_invertible = false;
                break;
            }
        }
        if all_invertible {
            return Ok(Verdict::Iso);
        }
    }
    Ok(Verdict::NonIso { exact: false })
}

/// Fingerprint first; an inconclusive answer escalates to the exhaustive search.
pub fn iso_test_escalating<S: Scalar>(alg: &ZigzagAlgebra<S>, c: &Complex<S>, d: &Complex<S>) -> Result<Verdict> {
    match iso_test(alg, c, d, IsoMode::Fingerprint)? {
        Verdict::Inconclusive => iso_test(alg, c, d, IsoMode::Exhaustive),
        v => Ok(v),
    }
}

/// Parity of the total Z/2 shift over all P1 summands.
pub fn sgn<S: Scalar>(c: &Complex<S>) -> Result<u8> {
    if c.alg.kind != Kind::B {
        return Err(Error::Invalid("sgn is defined for type B complexes".into()));
    }
    Ok(c.all_terms().filter(|(_, t)| t.vertex == 1).fold(0, |a, (_, t)| a ^ t.z2))
}

pub fn count_vertex<S: Scalar>(c: &Complex<S>, v: usize) -> usize {
    c.all_terms().filter(|(_, t)| t.vertex == v).count()
}

/// Random complex with at most `max_terms` terms; d^2 = 0 is enforced by
/// dropping offending differentials.
pub fn random_complex<S: Scalar>(alg: &ZigzagAlgebra<S>, seed: u64, max_terms: usize) -> Complex<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut terms: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
    for _ in 0..nterms {
        let p = rng.gen_range(-1..=1);
        let z2 = if alg.kind() == Kind::B { rng.gen_range(0..2) } else { 0 };
        let t = Term { vertex: rng.gen_range(1..=alg.vertices()), internal: rng.gen_range(-1..=1), z2 };
        terms.entry(p).or_default().push(t);
    }
    let mut c = Complex::from_parts(alg.id(), terms, Vec::new());
    let degs: Vec<i64> = c.diff.keys().copied().collect();
    for p in degs {
        let src = c.terms[&p].clone();
        let tgt = c.terms[&(p + 1)].clone();
        for (r, z) in tgt.iter().enumerate() {
            for (k, y) in src.iter().enumerate() {
                let cands: Vec<usize> = alg
                    .block(y.vertex, z.vertex)
                    .iter()
                    .copied()
                    .filter(|&b| {
                        let be = alg.basis_elem(b);
                        be.deg == y.internal - z.internal
                            && (alg.kind() == Kind::A || be.z2 == (y.z2 + 2 - z.z2) % 2)
                    })
                    .collect();
                let mut e = Elem::zero();
                for b in cands {
                    if rng.gen_bool(0.6) {
                        e.add_term(b, S::from_int(rng.gen_range(-2..=2)));
                    }
                }
                c.diff.get_mut(&p).unwrap()[r][k] = e;
            }
        }
        if let Some(prev) = c.diff.get(&(p - 1)).cloned() {
            let cur = &c.diff[&p];
            let mut bad = false;
            for row in cur {
                for k in 0..prev[0].len() {
                    let mut acc = Elem::zero();
                    for (mid, e) in row.iter().enumerate() {
                        acc = acc.add(&alg.mul(&prev[mid][k], e));
                    }
                    bad |= !acc.is_zero();
                }
            }
            if bad {
                for row in c.diff.get_mut(&p).unwrap().iter_mut() {
                    for e in row.iter_mut() {
                        *e = Elem::zero();
                    }
                }
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use crate::zigzag::Grading;

    fn alg(n: usize) -> ZigzagAlgebra<Rat> {
        ZigzagAlgebra::new(Kind::B, n, Grading::Ks).unwrap()
    }

    fn p(a: &ZigzagAlgebra<Rat>, j: usize) -> Complex<Rat> {
        Complex::projective(a, ShiftedProjective::new(j)).unwrap()
    }

    #[test]
    fn projective_rendering() {
        let a = alg(2);
        assert_eq!(p(&a, 1).render(&a), "deg 0: P1\n");
        let s = Complex::projective(&a, ShiftedProjective::shifted(1, 1, 1, 1)).unwrap();
        assert_eq!(s.render(&a), "deg -1: P1{1}<1>\n");
        assert!(Complex::projective(&a, ShiftedProjective::new(5)).is_err());
    }

    #[test]
    fn sigma1_on_p1() {
        let a = alg(2);
        let c = apply_generator(&a, &p(&a, 1), 1, 1, true).unwrap();
        c.check(&a).unwrap();
        let m = minimize(&a, &c);
        assert_eq!(m.single_term(), Some(ShiftedProjective::shifted(1, 1, 1, 1)));
    }

    #[test]
    fn gaussian_elimination_example() {
        let a = alg(2);
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![Term { vertex: 1, internal: 0, z2: 0 }, Term { vertex: 1, internal: 1, z2: 0 }]);
        terms.insert(0, vec![Term { vertex: 1, internal: 0, z2: 0 }]);
        let c = Complex::from_parts(
            a.id(),
            terms,
            vec![(-1, 0, 0, Elem::basis(a.e(1))), (-1, 0, 1, Elem::basis(a.x(1)))],
        );
        c.check(&a).unwrap();
        let m = minimize(&a, &c);
        assert_eq!(m.single_term(), Some(ShiftedProjective::shifted(1, 1, 1, 0)));
        assert_eq!(minimize(&a, &m), m);
    }

    #[test]
    fn inverse_cancels() {
        for n in 2..=3 {
            let a = alg(n);
            for j in 1..=n {
                for k in 1..=n {
                    for order in [[1i8, -1], [-1, 1]] {
                        let w = BraidWord::new(Kind::B, n, vec![(j, order[0]), (j, order[1])]).unwrap();
                        let c = apply_word(&a, &p(&a, k), &w, ActionOpts::default()).unwrap();
                        assert_eq!(c, p(&a, k), "n={} j={} k={} {:?}", n, j, k, order);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_is_bimodule_map() {
        let a = alg(3);
        for j in 1..=3 {
            let g = gamma_terms(&a, j);
            for bi in 0..a.dim() {
                let b = Elem::basis(bi);
                let norm = |pairs: Vec<(Elem<Rat>, Elem<Rat>)>| {
                    let mut acc: Vec<(usize, Elem<Rat>)> = Vec::new();
                    for (u, v) in pairs {
                        let vk = a.mul(&Elem::basis(a.e(j)), &v);
                        for (c, lam) in a.expand_f(j, &vk) {
                            let val = a.mul(&u, &lam);
                            match acc.iter_mut().find(|x| x.0 == c) {
                                Some(x) => x.1 = x.1.add(&val),
                                None => acc.push((c, val)),
                            }
                        }
                    }
                    acc.retain(|x| !x.1.is_zero());
                    acc.sort_by_key(|x| x.0);
                    acc
                };
                let left = norm(g.iter().map(|(u, v)| (a.mul(&b, u), v.clone())).collect());
                let right = norm(g.iter().map(|(u, v)| (u.clone(), a.mul(v, &b))).collect());
                assert_eq!(left, right, "j={} b={}", j, a.basis_elem(bi).name);
            }
        }
    }

    #[test]
    fn hom_poincare_projectives() {
        let a = alg(3);
        let t = |s: &str| TriPoly::parse(s).unwrap();
        assert_eq!(hom_poincare(&a, &p(&a, 2), &p(&a, 2)).unwrap(), t("1 + q2 + q3 + q2*q3"));
        assert_eq!(hom_poincare(&a, &p(&a, 1), &p(&a, 1)).unwrap(), t("1 + q2"));
        assert!(hom_poincare(&a, &p(&a, 1), &Complex::zero(a.id())).unwrap().is_zero());
    }

    #[test]
    fn iso_basics() {
        let a = alg(2);
        let c = p(&a, 1);
        assert_eq!(iso_test(&a, &c, &c, IsoMode::Fingerprint).unwrap(), Verdict::Iso);
        let d = c.shift(0, 0, 1);
        assert_eq!(iso_test(&a, &c, &d, IsoMode::Fingerprint).unwrap(), Verdict::NonIso { exact: true });
        let e = p(&a, 2);
        assert_eq!(iso_test(&a, &e, &e.shift(0, 0, 1), IsoMode::Exhaustive).unwrap(), Verdict::Iso);
    }

    #[test]
    fn sgn_examples() {
        let a = alg(2);
        assert_eq!(sgn(&p(&a, 1).shift(0, 0, 1)).unwrap(), 1);
        let c = p(&a, 2).shift(0, 0, 1).direct_sum(&p(&a, 1));
        assert_eq!(sgn(&c).unwrap(), 0);
    }

    #[test]
    fn text_round_trip() {
        let a = alg(2);
        let w = BraidWord::parse(Kind::B, 2, "1 2 -1").unwrap();
        let c = apply_word(&a, &p(&a, 2), &w, ActionOpts { twist: true, minimize: false }).unwrap();
        let back = Complex::parse(&a, &c.render(&a)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn word_parse_errors() {
        assert!(BraidWord::parse(Kind::B, 2, "1 x").is_err());
        assert!(BraidWord::parse(Kind::B, 2, "3").is_err());
        assert_eq!(BraidWord::parse(Kind::B, 2, "2 -1").unwrap().to_string(), "2 -1");
    }
}
