//! Tensor words in the bimodules U_j, their Temperley-Lieb decompositions,
//! and the generating bimodule maps alpha, beta, gamma, delta, epsilon with
//! the relations they must satisfy.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{rat, Rat, Scalar};
use crate::homotopy::gamma_terms;
use crate::linalg::rank;
use crate::zigzag::{Elem, Grading, Kind, ZigzagAlgebra};
use crate::{Error, Result};

/// Grading shift applied to each U_j = P_j (x) _jP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UShift {
    /// generator e_j (x) e_j in degree -1
    #[default]
    Minus,
    /// generator in degree +1
    Plus,
}

impl UShift {
    fn per_letter(self) -> i64 {
        match self {
            UShift::Minus => -1,
            UShift::Plus => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UWord(pub Vec<usize>);

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "B");
        }
        for j in &self.0 {
            write!(f, "U{}", j)?;
        }
        Ok(())
    }
}

impl UWord {
    pub fn parse(s: &str) -> Result<UWord> {
        let v: std::result::Result<Vec<usize>, _> = s.split_whitespace().map(|t| t.parse::<usize>()).collect();
        v.map(UWord).map_err(|e| Error::Invalid(format!("bad word '{}': {}", s, e)))
    }
}

/// Element of a tensor word, in the normal basis: one algebra basis element
/// per factor, with scalars from k_j pushed to the left.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElem {
    pub word: Vec<usize>,
    pub terms: BTreeMap<Vec<usize>, Rat>,
}

impl TensorElem {
    pub fn zero(word: &[usize]) -> Self {
        TensorElem { word: word.to_vec(), terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_scaled(&mut self, other: &TensorElem, k: Rat) {
        for (t, c) in &other.terms {
            add_to(&mut self.terms, t.clone(), *c * k);
        }
    }
}

fn add_to(m: &mut BTreeMap<Vec<usize>, Rat>, key: Vec<usize>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key.clone()).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&key);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
    Delta(usize),
    /// right multiplication by a central element of B
    Mult(Elem<Rat>),
}

impl Gen {
    fn domain(&self) -> Vec<usize> {
        match self {
            Gen::Alpha(j) | Gen::Beta(j) => vec![*j],
            Gen::Delta(j) => vec![*j, *j],
            Gen::Gamma(_) | Gen::Mult(_) => vec![],
        }
    }

    fn codomain(&self) -> Vec<usize> {
        match self {
            Gen::Alpha(j) => vec![*j, *j],
            Gen::Gamma(j) | Gen::Delta(j) => vec![*j],
            Gen::Beta(_) | Gen::Mult(_) => vec![],
        }
    }

    pub fn name(&self) -> String {
        match self {
            Gen::Alpha(j) => format!("alpha{}", j),
            Gen::Beta(j) => format!("beta{}", j),
            Gen::Gamma(j) => format!("gamma{}", j),
            Gen::Delta(j) => format!("delta{}", j),
            Gen::Mult(_) => "eps".into(),
        }
    }
}

/// Graded dimension of a bimodule: (left vertex, right vertex, degree) -> dim over R.
pub type BiGrDim = BTreeMap<(usize, usize, i64), i64>;

pub struct Tl {
    alg: ZigzagAlgebra<Rat>,
    shift: UShift,
}

impl Tl {
    pub fn new(n: usize, shift: UShift) -> Result<Self> {
        Ok(Tl { alg: ZigzagAlgebra::new(Kind::B, n, Grading::PathLen)?, shift })
    }

    pub fn alg(&self) -> &ZigzagAlgebra<Rat> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.vertices()
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&j| j < 1 || j > self.n()) {
            Some(j) => Err(Error::Invalid(format!("U{} does not exist for n = {}", j, self.n()))),
            None => Ok(()),
        }
    }

    /// Basis elements allowed in factor t of word w.
    fn factor_basis(&self, w: &[usize], t: usize) -> Vec<usize> {
        let n = self.n();
        let k = w.len();
        let lefts: Vec<usize> = if t == 0 { (1..=n).collect() } else { vec![w[t - 1]] };
        let rights: Vec<usize> = if t == k { (1..=n).collect() } else { vec![w[t]] };
        let mut out = Vec::new();
        for &a in &lefts {
            for &b in &rights {
                if t == 0 {
                    out.extend_from_slice(self.alg.block(a, b));
                } else {
                    out.extend(self.alg.f_basis(a, b));
                }
            }
        }
        out.sort();
        out
    }

    pub fn basis(&self, w: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for t in 0..=w.len() {
            let fb = self.factor_basis(w, t);
            out = out
                .into_iter()
                .flat_map(|p| {
                    fb.iter().map(move |&b| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn degree(&self, w: &[usize], tuple: &[usize]) -> i64 {
        tuple.iter().map(|&b| self.alg.basis_elem(b).deg).sum::<i64>() + self.shift.per_letter() * w.len() as i64
    }

    pub fn grdim(&self, w: &[usize]) -> BiGrDim {
        let mut out = BiGrDim::new();
        for t in self.basis(w) {
            let a = self.alg.basis_elem(t[0]).path.src;
            let b = self.alg.basis_elem(*t.last().unwrap()).path.tgt;
            *out.entry((a, b, self.degree(w, &t))).or_default() += 1;
        }
        out
    }

    /// Puts raw basis tuples into normal form for the word.
    fn normalize(&self, w: &[usize], raw: BTreeMap<Vec<usize>, Rat>) -> TensorElem {
        let k = w.len();
        let alg = &self.alg;
        let mut cur: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (t, c) in raw {
            let ok = (0..=k).all(|i| {
                let p = alg.basis_elem(t[i]).path;
                (i == 0 || p.src == w[i - 1]) && (i == k || p.tgt == w[i])
            });
            if ok {
                add_to(&mut cur, t, c);
            }
        }
        for i in (1..=k).rev() {
            let a = w[i - 1];
            let mut next = BTreeMap::new();
            for (t, c) in cur {
                for (s, lam) in alg.expand_f(a, &Elem::basis(t[i])) {
                    for (g, x) in lam.terms() {
                        let mut u = t.clone();
                        u[i] = s;
                        if *g == alg.e(a) {
                            add_to(&mut next, u, c * *x);
                        } else if let Some((neg, r)) = alg.mul_basis(t[i - 1], *g) {
                            u[i - 1] = r;
                            add_to(&mut next, u, if neg { -(c * *x) } else { c * *x });
                        }
                    }
                }
            }
            cur = next;
        }
        TensorElem { word: w.to_vec(), terms: cur }
    }

    /// Multilinear expansion of a pure tensor of algebra elements.
    pub fn pure(&self, w: &[usize], factors: &[Elem<Rat>], c: Rat) -> TensorElem {
        let mut raw: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        raw.insert(vec![], c);
        for f in factors {
            let mut next = BTreeMap::new();
            for (t, x) in &raw {
                for (b, y) in f.terms() {
                    let mut u = t.clone();
                    u.push(*b);
                    add_to(&mut next, u, *x * *y);
                }
            }
            raw = next;
        }
        self.normalize(w, raw)
    }

    pub fn basis_elem(&self, w: &[usize], tuple: &[usize]) -> TensorElem {
        let mut terms = BTreeMap::new();
        terms.insert(tuple.to_vec(), Rat::one());
        TensorElem { word: w.to_vec(), terms }
    }

    pub fn left_mul(&self, g: &Elem<Rat>, x: &TensorElem) -> TensorElem {
        self.act(x, |i, f| if i == 0 { self.alg.mul(g, f) } else { f.clone() })
    }

    pub fn right_mul(&self, x: &TensorElem, g: &Elem<Rat>) -> TensorElem {
        let k = x.word.len();
        self.act(x, |i, f| if i == k { self.alg.mul(f, g) } else { f.clone() })
    }

    fn act(&self, x: &TensorElem, f: impl Fn(usize, &Elem<Rat>) -> Elem<Rat>) -> TensorElem {
        let mut out = TensorElem::zero(&x.word);
        for (t, c) in &x.terms {
            let factors: Vec<Elem<Rat>> = t.iter().enumerate().map(|(i, b)| f(i, &Elem::basis(*b))).collect();
            out.add_scaled(&self.pure(&x.word, &factors, *c), Rat::one());
        }
        out
    }

    /// Applies a generator to the letters pos..pos+|domain| (an insertion
    /// point when the domain is empty).
    pub fn apply(&self, g: &Gen, pos: usize, x: &TensorElem) -> Result<TensorElem> {
        let dom = g.domain();
        let m = dom.len();
        let w = &x.word;
        if pos + m > w.len() || w[pos..pos + m] != dom[..] {
            return Err(Error::Mismatch(format!(
                "{} at position {} does not fit {}",
                g.name(),
                pos,
                UWord(w.clone())
            )));
        }
        let cod = g.codomain();
        let mut new_word = w[..pos].to_vec();
        new_word.extend(&cod);
        new_word.extend(&w[pos + m..]);
        let alg = &self.alg;
        let b = |i: usize| Elem::<Rat>::basis(i);
        let mut out = TensorElem::zero(&new_word);
        for (t, c) in &x.terms {
            let slice = &t[pos..=pos + m];
            let images: Vec<Vec<Elem<Rat>>> = match g {
                Gen::Beta(_) => vec![vec![alg.mul(&b(slice[0]), &b(slice[1]))]],
                Gen::Alpha(j) => vec![vec![b(slice[0]), b(alg.e(*j)), b(slice[1])]],
                Gen::Delta(j) => {
                    if slice[1] == alg.x(*j) {
                        vec![vec![b(slice[0]), b(slice[2])]]
                    } else if slice[1] == alg.e(*j) {
                        vec![]
                    } else {
                        return Err(Error::Construction(format!(
                            "unexpected middle factor {} for delta{}",
                            alg.basis_elem(slice[1]).name,
                            j
                        )));
                    }
                }
                Gen::Gamma(j) => gamma_terms(alg, *j)
                    .into_iter()
                    .map(|(u, v)| vec![alg.mul(&b(slice[0]), &u), v])
                    .collect(),
                Gen::Mult(z) => vec![vec![alg.mul(&b(slice[0]), z)]],
            };
            for mut img in images {
                let last = img.len() - 1;
                if pos > 0 {
                    img[0] = alg.mul(&b(alg.e(w[pos - 1])), &img[0]);
                }
                if pos + m < w.len() {
                    img[last] = alg.mul(&img[last], &b(alg.e(w[pos + m])));
                }
                let mut factors: Vec<Elem<Rat>> = t[..pos].iter().map(|&i| b(i)).collect();
                factors.extend(img);
                factors.extend(t[pos + m + 1..].iter().map(|&i| b(i)));
                out.add_scaled(&self.pure(&new_word, &factors, *c), Rat::one());
            }
        }
        Ok(out)
    }

    pub fn compose(&self, steps: &[(Gen, usize)], x: &TensorElem) -> Result<TensorElem> {
        let mut cur = x.clone();
        for (g, p) in steps {
            cur = self.apply(g, *p, &cur)?;
        }
        Ok(cur)
    }

    /// Checks that a generator commutes with the left and right actions of
    /// every algebra basis element on every basis element of its domain.
    pub fn check_bimodule_map(&self, g: &Gen) -> Result<()> {
        let dom = g.domain();
        for t in self.basis(&dom) {
            let x = self.basis_elem(&dom, &t);
            let fx = self.apply(g, 0, &x)?;
            for a in 0..self.alg.dim() {
                let ea = Elem::basis(a);
                let l = self.apply(g, 0, &self.left_mul(&ea, &x))?;
                let r = self.apply(g, 0, &self.right_mul(&x, &ea))?;
                if l != self.left_mul(&ea, &fx) || r != self.right_mul(&fx, &ea) {
                    return Err(Error::Construction(format!(
                        "{} fails to commute with {} on a basis element of {}",
                        g.name(),
                        self.alg.basis_elem(a).name,
                        UWord(dom.clone())
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dimension over R of the space of bimodule maps M -> N of the given degree.
    pub fn hom_dim(&self, m: &[usize], n: &[usize], degree: i64) -> Result<usize> {
        self.check_word(m)?;
        self.check_word(n)?;
        let bm = self.basis(m);
        let bn = self.basis(n);
        let index_n: BTreeMap<&Vec<usize>, usize> = bn.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let index_m: BTreeMap<&Vec<usize>, usize> = bm.iter().enumerate().map(|(i, t)| (t, i)).collect();
        // unknowns: (target, source) pairs of matching degree
        let mut unknowns: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (si, s) in bm.iter().enumerate() {
            let ds = self.degree(m, s);
            for (ti, t) in bn.iter().enumerate() {
                if self.degree(n, t) == ds + degree {
                    let k = unknowns.len();
                    unknowns.insert((ti, si), k);
                }
            }
        }
        let nu = unknowns.len();
        if nu == 0 {
            return Ok(0);
        }
        let gens: Vec<usize> =
            (0..self.alg.dim()).filter(|&i| self.alg.basis_elem(i).path.len <= 1).collect();
        let mut rows: BTreeSet<Vec<(usize, Rat)>> = BTreeSet::new();
        let to_vec = |x: &TensorElem, idx: &BTreeMap<&Vec<usize>, usize>| -> Vec<(usize, Rat)> {
            x.terms.iter().map(|(t, c)| (idx[t], *c)).collect()
        };
        for &g in &gens {
            let ge = Elem::basis(g);
            let acts_m: Vec<(Vec<(usize, Rat)>, Vec<(usize, Rat)>)> = bm
                .iter()
                .map(|s| {
                    let x = self.basis_elem(m, s);
                    (to_vec(&self.left_mul(&ge, &x), &index_m), to_vec(&self.right_mul(&x, &ge), &index_m))
                })
                .collect();
            let acts_n: Vec<(Vec<(usize, Rat)>, Vec<(usize, Rat)>)> = bn
                .iter()
                .map(|t| {
                    let y = self.basis_elem(n, t);
                    (to_vec(&self.left_mul(&ge, &y), &index_n), to_vec(&self.right_mul(&y, &ge), &index_n))
                })
                .collect();
            for side in 0..2 {
                for si in 0..bm.len() {
                    // f(g.s) - g.f(s), coordinate by coordinate in N
                    let mut eqs: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
                    let gs = if side == 0 { &acts_m[si].0 } else { &acts_m[si].1 };
                    for (s2, c) in gs {
                        for ti in 0..bn.len() {
                            if let Some(&u) = unknowns.get(&(ti, *s2)) {
                                *eqs.entry(ti).or_default().entry(u).or_insert_with(Rat::zero) += *c;
                            }
                        }
                    }
                    for ti in 0..bn.len() {
                        if let Some(&u) = unknowns.get(&(ti, si)) {
                            let gt = if side == 0 { &acts_n[ti].0 } else { &acts_n[ti].1 };
                            for (t2, c) in gt {
                                *eqs.entry(*t2).or_default().entry(u).or_insert_with(Rat::zero) -= *c;
                            }
                        }
                    }
                    for (_, row) in eqs {
                        let row: Vec<(usize, Rat)> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        if !row.is_empty() {
                            rows.insert(row);
                        }
                    }
                }
            }
        }
        let dense: Vec<Vec<Rat>> = rows
            .into_iter()
            .map(|r| {
                let mut v = vec![Rat::zero(); nu];
                for (i, c) in r {
                    v[i] = c;
                }
                v
            })
            .collect();
        Ok(nu - rank(&dense, nu))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Zero,
    /// summands U_w(shift)
    Sum(Vec<(UWord, i64)>),
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decomposition::Zero => write!(f, "0"),
            Decomposition::Sum(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|(w, s)| if *s == 0 { w.to_string() } else { format!("{}({})", w, s) })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

fn shifted(g: &BiGrDim, s: i64) -> BiGrDim {
    g.iter().map(|(&(a, b, d), &c)| ((a, b, d + s), c)).collect()
}

fn sum(parts: &[BiGrDim]) -> BiGrDim {
    let mut out = BiGrDim::new();
    for p in parts {
        for (k, c) in p {
            *out.entry(*k).or_default() += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

impl Tl {
    /// Graded dimension of a candidate decomposition.
    pub fn grdim_of(&self, d: &Decomposition) -> BiGrDim {
        match d {
            Decomposition::Zero => BiGrDim::new(),
            Decomposition::Sum(v) => sum(&v.iter().map(|(w, s)| shifted(&self.grdim(&w.0), *s)).collect::<Vec<_>>()),
        }
    }

    pub fn certifies(&self, w: &UWord, d: &Decomposition) -> bool {
        let mut lhs = self.grdim(&w.0);
        lhs.retain(|_, c| *c != 0);
        lhs == self.grdim_of(d)
    }

    /// Decomposes a word of one of the four relation families; the answer is
    /// certified by comparing bigraded dimensions.
    pub fn decompose(&self, w: &UWord) -> Result<Decomposition> {
        self.check_word(&w.0)?;
        let v = &w.0;
        // difference in the number of U shifts between the two sides
        let off = |rhs_len: usize| (self.shift.per_letter() + 1) * (v.len() as i64 - rhs_len as i64);
        let cand = match v.as_slice() {
            [j, k] if j == k => Some(Decomposition::Sum(vec![
                (UWord(vec![*j]), off(1) + 1),
                (UWord(vec![*j]), off(1) - 1),
            ])),
            [j, k] if j.abs_diff(*k) > 1 => Some(Decomposition::Zero),
            [j, k, l] if j == l && j.abs_diff(*k) == 1 && *j > 1 && *k > 1 => {
                Some(Decomposition::Sum(vec![(UWord(vec![*j]), off(1))]))
            }
            [j, k, l, m] if j == l && k == m && [*j, *k].contains(&1) && [*j, *k].contains(&2) => {
                let jk = UWord(vec![*j, *k]);
                Some(Decomposition::Sum(vec![(jk.clone(), off(2)), (jk, off(2))]))
            }
            _ => None,
        };
        match cand {
            Some(d) if self.certifies(w, &d) => Ok(d),
            Some(d) => Err(Error::Undetermined(format!("{} does not match {} in graded dimension", w, d))),
            None => Err(Error::Undetermined(format!("{} is not in one of the four relation families", w))),
        }
    }
}

/// Scalars attached to the generators: b_j beta_j, c_j gamma_j, a_j alpha_j,
/// d_j delta_j and epsilon_j(1) = sum_k f[j][k] X_k. Index 0 is unused.
#[derive(Clone, Debug, PartialEq)]
pub struct SoergelScalars {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
    pub d: Vec<Rat>,
    pub f: Vec<Vec<Rat>>,
}

fn sign(j: usize) -> Rat {
    if j % 2 == 1 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

impl SoergelScalars {
    /// a_j = b_j = (-1)^{j+1}, c_j = d_j = 1, f^1_1 = f^1_2 = 2,
    /// f^j_j = 2(-1)^{j+1}, f^j_{j+-1} = (-1)^{j+1}.
    pub fn paper(n: usize) -> Self {
        let mut s = SoergelScalars {
            a: vec![Rat::zero(); n + 1],
            b: vec![Rat::zero(); n + 1],
            c: vec![Rat::zero(); n + 1],
            d: vec![Rat::zero(); n + 1],
            f: vec![vec![Rat::zero(); n + 1]; n + 1],
        };
        for j in 1..=n {
            s.a[j] = sign(j);
            s.b[j] = sign(j);
            s.c[j] = Rat::one();
            s.d[j] = Rat::one();
            s.f[j][j] = sign(j) * rat(2, 1);
            if j > 1 {
                s.f[j][j - 1] = sign(j);
            }
            if j < n {
                s.f[j][j + 1] = sign(j);
            }
        }
        if n >= 2 {
            s.f[1][2] = rat(2, 1);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    /// Reads {"a": [...], "b": [...], "c": [...], "d": [...], "f": [[...]]}
    /// with entries indexed from 1 and written as integers or "p/q" strings.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })?;
        let num = |x: &serde_json::Value| -> Result<Rat> {
            match x {
                serde_json::Value::Number(k) => k
                    .as_i64()
                    .map(|k| rat(k as i128, 1))
                    .ok_or_else(|| Error::Invalid(format!("non-integer number {}", k))),
                serde_json::Value::String(t) => {
                    Rat::parse_scalar(t).ok_or_else(|| Error::Invalid(format!("bad scalar '{}'", t)))
                }
                _ => Err(Error::Invalid(format!("bad scalar {}", x))),
            }
        };
        let list = |key: &str| -> Result<Vec<Rat>> {
            let arr = v[key].as_array().ok_or_else(|| Error::Invalid(format!("missing list '{}'", key)))?;
            let mut out = vec![Rat::zero()];
            for x in arr {
                out.push(num(x)?);
            }
            Ok(out)
        };
        let (a, b, c, d) = (list("a")?, list("b")?, list("c")?, list("d")?);
        let n = a.len() - 1;
        if [b.len(), c.len(), d.len()].iter().any(|&l| l != n + 1) {
            return Err(Error::Invalid("scalar lists have different lengths".into()));
        }
        let rows = v["f"].as_array().ok_or_else(|| Error::Invalid("missing matrix 'f'".into()))?;
        if rows.len() != n {
            return Err(Error::Invalid(format!("f must have {} rows", n)));
        }
        let mut f = vec![vec![Rat::zero(); n + 1]];
        for r in rows {
            let r = r.as_array().ok_or_else(|| Error::Invalid("f rows must be lists".into()))?;
            if r.len() != n {
                return Err(Error::Invalid(format!("f rows must have {} entries", n)));
            }
            let mut row = vec![Rat::zero()];
            for x in r {
                row.push(num(x)?);
            }
            f.push(row);
        }
        Ok(SoergelScalars { a, b, c, d, f })
    }

    pub fn to_json(&self) -> String {
        let r = |x: &Rat| serde_json::Value::String(x.render());
        let list = |v: &[Rat]| serde_json::Value::Array(v[1..].iter().map(r).collect());
        let f: Vec<serde_json::Value> = self.f[1..].iter().map(|row| list(row)).collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "a": list(&self.a),
            "b": list(&self.b),
            "c": list(&self.c),
            "d": list(&self.d),
            "f": f,
        }))
        .expect("scalars serialise")
    }
}

/// Cartan matrix of the realisation: a_{st} = d_s(alpha_t).
pub fn realisation_cartan(s: usize, t: usize) -> Rat {
    if s == t {
        rat(2, 1)
    } else if s.abs_diff(t) > 1 {
        Rat::zero()
    } else if (s, t) == (2, 1) {
        rat(-2, 1)
    } else {
        rat(-1, 1)
    }
}

/// A linear combination of composites of generators, required to vanish.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub domain: Vec<usize>,
    pub terms: Vec<(Rat, Vec<(Gen, usize)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Tl {
    pub fn eps(&self, s: &SoergelScalars, t: usize) -> Elem<Rat> {
        Elem::from_terms((1..=self.n()).map(|k| (self.alg.x(k), s.f[t][k])))
    }

    pub fn check_relation(&self, r: &Relation) -> Result<RelationResult> {
        for t in self.basis(&r.domain) {
            let x = self.basis_elem(&r.domain, &t);
            let mut total: Option<TensorElem> = None;
            for (c, steps) in &r.terms {
                let y = self.compose(steps, &x)?;
                match total.as_mut() {
                    None => {
                        let mut z = TensorElem::zero(&y.word);
                        z.add_scaled(&y, *c);
                        total = Some(z);
                    }
                    Some(z) => {
                        if z.word != y.word {
                            return Err(Error::Mismatch(format!("terms of {} land in different words", r.name)));
                        }
                        z.add_scaled(&y, *c);
                    }
                }
            }
            if let Some(z) = total {
                if !z.is_zero() {
                    let names: Vec<String> = t.iter().map(|&b| self.alg.basis_elem(b).name.clone()).collect();
                    return Ok(RelationResult {
                        name: r.name.clone(),
                        pass: false,
                        witness: Some(format!("nonzero on {}", names.join(" (x) "))),
                    });
                }
            }
        }
        Ok(RelationResult { name: r.name.clone(), pass: true, witness: None })
    }

    /// The relations imposed on the images of the Soergel generators.
    pub fn relations(&self, s: &SoergelScalars) -> Result<Vec<Relation>> {
        let n = self.n();
        if s.n() != n {
            return Err(Error::Mismatch(format!("scalars for n = {} used with n = {}", s.n(), n)));
        }
        use Gen::*;
        let one = Rat::one();
        let mut out = Vec::new();
        let rel = |name: String, domain: Vec<usize>, terms: Vec<(Rat, Vec<(Gen, usize)>)>| Relation { name, domain, terms };
        for j in 1..=n {
            let (a, b, c, d) = (s.a[j], s.b[j], s.c[j], s.d[j]);
            out.push(rel(
                format!("barbell s{}", j),
                vec![],
                vec![(b * c, vec![(Gamma(j), 0), (Beta(j), 0)]), (-one, vec![(Mult(self.eps(s, j)), 0)])],
            ));
            for t in 1..=n {
                let ajt = realisation_cartan(j, t);
                out.push(rel(
                    format!("polynomial forcing s{} alpha{}", j, t),
                    vec![j],
                    vec![
                        (one, vec![(Mult(self.eps(s, t)), 0)]),
                        (-one, vec![(Mult(self.eps(s, t)), 1)]),
                        (ajt, vec![(Mult(self.eps(s, j)), 1)]),
                        (-(ajt * b * c), vec![(Beta(j), 0), (Gamma(j), 0)]),
                    ],
                ));
            }
            out.push(rel(
                format!("needle s{}", j),
                vec![j],
                vec![(b * d * a, vec![(Alpha(j), 0), (Delta(j), 0), (Beta(j), 0)])],
            ));
            for p in 0..2 {
                let side = if p == 0 { "left" } else { "right" };
                out.push(rel(
                    format!("enddot counit s{} {}", j, side),
                    vec![j],
                    vec![(a * b, vec![(Alpha(j), 0), (Beta(j), p)]), (-one, vec![])],
                ));
                out.push(rel(
                    format!("startdot unit s{} {}", j, side),
                    vec![j],
                    vec![(c * d, vec![(Gamma(j), p), (Delta(j), 0)]), (-one, vec![])],
                ));
                let q = 1 - p;
                out.push(rel(
                    format!("self-adjoint s{} {}", j, side),
                    vec![j],
                    vec![
                        (a * b * c * d, vec![(Gamma(j), p), (Alpha(j), p), (Delta(j), q), (Beta(j), q)]),
                        (-one, vec![]),
                    ],
                ));
                out.push(rel(
                    format!("mult rotates comult s{} {}", j, side),
                    vec![j, j],
                    vec![
                        (a * b * d, vec![(Alpha(j), p), (Delta(j), q), (Beta(j), q)]),
                        (-d, vec![(Delta(j), 0)]),
                    ],
                ));
                out.push(rel(
                    format!("comult rotates mult s{} {}", j, side),
                    vec![j],
                    vec![
                        (d * c * a, vec![(Gamma(j), q), (Alpha(j), q), (Delta(j), p)]),
                        (-a, vec![(Alpha(j), 0)]),
                    ],
                ));
                out.push(rel(
                    format!("counit rotates unit s{} {}", j, side),
                    vec![j],
                    vec![
                        (c * b * d, vec![(Gamma(j), q), (Delta(j), 0), (Beta(j), 0)]),
                        (-b, vec![(Beta(j), 0)]),
                    ],
                ));
                out.push(rel(
                    format!("unit rotates counit s{} {}", j, side),
                    vec![],
                    vec![
                        (c * a * b, vec![(Gamma(j), 0), (Alpha(j), 0), (Beta(j), q)]),
                        (-c, vec![(Gamma(j), 0)]),
                    ],
                ));
            }
            out.push(rel(
                format!("associativity s{}", j),
                vec![j, j, j],
                vec![
                    (d * d, vec![(Delta(j), 0), (Delta(j), 0)]),
                    (-(d * d), vec![(Delta(j), 1), (Delta(j), 0)]),
                ],
            ));
            out.push(rel(
                format!("coassociativity s{}", j),
                vec![j],
                vec![
                    (a * a, vec![(Alpha(j), 0), (Alpha(j), 0)]),
                    (-(a * a), vec![(Alpha(j), 0), (Alpha(j), 1)]),
                ],
            ));
        }
        // dotted 6-valent vertex, sent to zero
        for sv in 2..=n {
            for tv in [sv.wrapping_sub(1), sv + 1] {
                if tv < 2 || tv > n {
                    continue;
                }
                out.push(rel(
                    format!("6-valent s{} s{}", sv, tv),
                    vec![tv, sv, tv],
                    vec![
                        (s.b[sv] * s.d[tv] * s.c[sv], vec![(Beta(sv), 1), (Delta(tv), 0), (Gamma(sv), 0)]),
                        (s.b[tv], vec![(Beta(tv), 0)]),
                    ],
                ));
            }
        }
        // dotted 8-valent vertex for s1, s2, sent to zero
        let a12 = realisation_cartan(1, 2);
        let a21 = realisation_cartan(2, 1);
        let denom = a21 * a12 - one;
        for (r, bl, arr) in [(1usize, 2usize, (a12, a21)), (2, 1, (a21, a12))] {
            let (ars, asr) = arr;
            let (br, bb) = (s.b[r], s.b[bl]);
            out.push(rel(
                format!("8-valent U{} left", r),
                vec![r, bl, r, bl],
                vec![
                    (br, vec![(Beta(r), 0)]),
                    (
                        -(ars * br * br * s.d[bl] * s.a[bl] * s.c[r]) / denom,
                        vec![(Beta(r), 0), (Beta(r), 1), (Delta(bl), 0), (Alpha(bl), 0), (Gamma(r), 1)],
                    ),
                    (
                        -(asr * bb * s.d[r] * s.c[bl]) / denom,
                        vec![(Beta(bl), 1), (Delta(r), 0), (Gamma(bl), 0)],
                    ),
                    (
                        (bb * br * s.d[r] * s.a[bl] * s.c[r]) / denom,
                        vec![(Beta(bl), 1), (Delta(r), 0), (Beta(r), 0), (Alpha(bl), 0), (Gamma(r), 1)],
                    ),
                    (
                        (br * s.d[bl] * s.c[bl]) / denom,
                        vec![(Beta(r), 2), (Delta(bl), 1), (Gamma(bl), 0)],
                    ),
                ],
            ));
        }
        Ok(out)
    }

    pub fn relation_suite(&self, s: &SoergelScalars) -> Result<Vec<RelationResult>> {
        let mut out = Vec::new();
        for r in self.relations(s)? {
            out.push(self.check_relation(&r)?);
        }
        out.extend(self.distant_pairs());
        Ok(out)
    }

    /// Two-colour relations for distant pairs hold because U_j U_k = 0.
    pub fn distant_pairs(&self) -> Vec<RelationResult> {
        let mut out = Vec::new();
        for j in 1..=self.n() {
            for k in j + 2..=self.n() {
                let zero = self.grdim(&[j, k]).is_empty() && self.grdim(&[k, j]).is_empty();
                out.push(RelationResult {
                    name: format!("distant pair s{} s{}", j, k),
                    pass: zero,
                    witness: if zero { None } else { Some("U_j U_k is nonzero".into()) },
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_dimensions() {
        let tl = Tl::new(2, UShift::Minus).unwrap();
        // U_1 = P_1 (x)_R 1P: 4 * 4
        assert_eq!(tl.basis(&[1]).len(), 16);
        // U_2 over C: 6 * 6 / 2
        assert_eq!(tl.basis(&[2]).len(), 18);
        assert_eq!(tl.basis(&[]).len(), tl.alg().dim());
    }

    #[test]
    fn normal_form_moves_scalars_left() {
        let tl = Tl::new(2, UShift::Minus).unwrap();
        let a = tl.alg();
        let ie = Elem::basis(a.ie(2));
        let e = Elem::basis(a.e(2));
        let x = tl.pure(&[2], &[ie.clone(), e.clone()], Rat::one());
        let y = tl.pure(&[2], &[e, ie], Rat::one());
        assert_eq!(x, y);
        assert!(!x.is_zero());
    }

    #[test]
    fn generators_are_bimodule_maps() {
        let tl = Tl::new(3, UShift::Minus).unwrap();
        let s = SoergelScalars::paper(3);
        for j in 1..=3 {
            for g in [Gen::Alpha(j), Gen::Beta(j), Gen::Gamma(j), Gen::Delta(j), Gen::Mult(tl.eps(&s, j))] {
                tl.check_bimodule_map(&g).unwrap();
            }
        }
    }

    #[test]
    fn delta_after_alpha_vanishes() {
        let tl = Tl::new(2, UShift::Minus).unwrap();
        for j in 1..=2 {
            for t in tl.basis(&[j]) {
                let x = tl.basis_elem(&[j], &t);
                let y = tl.compose(&[(Gen::Alpha(j), 0), (Gen::Delta(j), 0)], &x).unwrap();
                assert!(y.is_zero());
            }
        }
    }

    #[test]
    fn barbell_s1() {
        let tl = Tl::new(2, UShift::Minus).unwrap();
        let a = tl.alg();
        let one = TensorElem { word: vec![], terms: a.unit().terms().iter().map(|(i, c)| (vec![*i], *c)).collect() };
        let y = tl.compose(&[(Gen::Gamma(1), 0), (Gen::Beta(1), 0)], &one).unwrap();
        let want = Elem::from_terms([(a.x(1), rat(2, 1)), (a.x(2), rat(2, 1))]);
        assert_eq!(y, TensorElem { word: vec![], terms: want.terms().iter().map(|(i, c)| (vec![*i], *c)).collect() });
    }

    #[test]
    fn decompositions() {
        let tl = Tl::new(3, UShift::Minus).unwrap();
        let d = tl.decompose(&UWord(vec![1, 3])).unwrap();
        assert_eq!(d, Decomposition::Zero);
        assert_eq!(tl.decompose(&UWord(vec![2, 2])).unwrap().to_string(), "U2(1) + U2(-1)");
        assert_eq!(tl.decompose(&UWord(vec![2, 3, 2])).unwrap().to_string(), "U2");
        assert_eq!(tl.decompose(&UWord(vec![1, 2, 1, 2])).unwrap().to_string(), "U1U2 + U1U2");
        assert!(matches!(tl.decompose(&UWord(vec![1, 2, 1])), Err(Error::Undetermined(_))));
        // the other letter does not match
        assert!(!tl.certifies(&UWord(vec![2, 3, 2]), &Decomposition::Sum(vec![(UWord(vec![3]), 0)])));
    }

    #[test]
    fn decompositions_under_other_shift() {
        let tl = Tl::new(3, UShift::Plus).unwrap();
        assert_eq!(tl.decompose(&UWord(vec![2, 2])).unwrap().to_string(), "U2(3) + U2(1)");
        assert_eq!(tl.decompose(&UWord(vec![2, 3, 2])).unwrap().to_string(), "U2(4)");
    }

    #[test]
    fn paper_scalars_pass() {
        for n in 2..=3 {
            let tl = Tl::new(n, UShift::Minus).unwrap();
            let res = tl.relation_suite(&SoergelScalars::paper(n)).unwrap();
            let bad: Vec<_> = res.iter().filter(|r| !r.pass).collect();
            assert!(bad.is_empty(), "{:?}", bad);
        }
    }

    #[test]
    fn perturbed_scalars_fail() {
        let tl = Tl::new(2, UShift::Minus).unwrap();
        let mut s = SoergelScalars::paper(2);
        s.b[1] = rat(2, 1);
        let res = tl.relation_suite(&s).unwrap();
        assert!(res.iter().any(|r| r.name == "enddot counit s1 left" && !r.pass));
    }

    #[test]
    fn scalars_json_round_trip() {
        let s = SoergelScalars::paper(3);
        assert_eq!(SoergelScalars::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn hom_dimensions() {
        let tl = Tl::new(3, UShift::Minus).unwrap();
        for j in 1..=3 {
            let k = tl.alg().top_dim(j);
            assert_eq!(tl.hom_dim(&[j], &[], 1).unwrap(), k, "beta{}", j);
            assert_eq!(tl.hom_dim(&[], &[j], 1).unwrap(), k, "gamma{}", j);
            assert_eq!(tl.hom_dim(&[j], &[j, j], -1).unwrap(), k, "alpha{}", j);
            assert_eq!(tl.hom_dim(&[j, j], &[j], -1).unwrap(), k, "delta{}", j);
        }
        assert_eq!(tl.hom_dim(&[], &[], 2).unwrap(), 5);
        assert_eq!(tl.hom_dim(&[1], &[3], 0).unwrap(), 0);
    }
}
