use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::exact::{Scalar, TriPoly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    Ks,
    PathLen,
}

/// Identifies an algebra; complexes carry it to detect mismatches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgId {
    pub kind: Kind,
    pub vertices: usize,
    pub grading: Grading,
}

/// A path of length 0, 1 or 2, possibly composed with ie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub len: u8,
    pub im: bool,
}

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub path: Path,
    pub name: String,
    pub deg: i64,
    pub z2: u8,
}

/// Sparse linear combination of basis elements, sorted by index.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Elem<S> {
    terms: Vec<(usize, S)>,
}

impl<S: Scalar> Elem<S> {
    pub fn zero() -> Self {
        Elem { terms: Vec::new() }
    }

    pub fn basis(i: usize) -> Self {
        Elem { terms: vec![(i, S::one())] }
    }

    pub fn term(i: usize, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms(it: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in it {
            e.add_term(i, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, S)] {
        &self.terms
    }

    pub fn coeff(&self, i: usize) -> S {
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn add_term(&mut self, i: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => {
                let v = self.terms[k].1.clone() + c;
                if v.is_zero() {
                    self.terms.remove(k);
                } else {
                    self.terms[k].1 = v;
                }
            }
            Err(k) => self.terms.insert(k, (i, c)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Elem {
            terms: self.terms.iter().map(|(i, c)| (*i, c.clone() * k.clone())).collect(),
        }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Elem<T> {
        Elem::from_terms(self.terms.iter().map(|(i, c)| (*i, f(c))))
    }
}

pub struct ZigzagAlgebra<S> {
    kind: Kind,
    vertices: usize,
    grading: Grading,
    basis: Vec<BasisElem>,
    index: HashMap<Path, usize>,
    names: HashMap<String, usize>,
    table: Vec<Option<(bool, usize)>>,
    blocks: Vec<Vec<Vec<usize>>>,
    _s: PhantomData<S>,
}

impl<S> fmt::Debug for ZigzagAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZigzagAlgebra({:?}, {}, {:?})", self.kind, self.vertices, self.grading)
    }
}

/// Which k_j-structure to use in `grdim_matrix`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    TwoSided,
    LeftModule,
}

fn path_name(kind: Kind, p: &Path) -> String {
    let (s, t) = (p.src, p.tgt);
    match (p.len, p.im) {
        (0, false) => format!("e{}", s),
        (0, true) => format!("ie{}", s),
        (1, false) => format!("({}|{})", s, t),
        (1, true) if s >= 2 => format!("(ie{})({}|{})", s, s, t),
        (1, true) => format!("({}|{})(ie{})", s, t, t),
        (2, false) => format!("X{}", s),
        _ => {
            let _ = kind;
            format!("(ie{})({}|{}|{})", s, s, s - 1, s)
        }
    }
}

impl<S: Scalar> ZigzagAlgebra<S> {
    /// Type A with `size` vertices, type B with `size` vertices.
    pub fn new(kind: Kind, size: usize, grading: Grading) -> Result<Self> {
        match kind {
            Kind::A if size < 1 => return Err(Error::Invalid("type A needs m >= 1".into())),
            Kind::A if grading == Grading::Ks && size.is_multiple_of(2) => {
                return Err(Error::Invalid(
                    "the KS grading of type A is centred at a middle vertex; m must be odd".into(),
                ))
            }
            Kind::B if size < 2 => return Err(Error::Invalid("type B needs n >= 2".into())),
            _ => {}
        }
        if kind == Kind::B && S::imag_unit().is_some() {
            return Err(Error::Invalid("type B is built over the rationals".into()));
        }
        let m = size;
        let mut paths = Vec::new();
        let complex_vertex = |j: usize| kind == Kind::B && j >= 2;
        for j in 1..=m {
            paths.push(Path { src: j, tgt: j, len: 0, im: false });
            if complex_vertex(j) {
                paths.push(Path { src: j, tgt: j, len: 0, im: true });
            }
        }
        for j in 1..m {
            for (s, t) in [(j, j + 1), (j + 1, j)] {
                paths.push(Path { src: s, tgt: t, len: 1, im: false });
                if kind == Kind::B {
                    paths.push(Path { src: s, tgt: t, len: 1, im: true });
                }
            }
        }
        for j in 1..=m {
            paths.push(Path { src: j, tgt: j, len: 2, im: false });
            if complex_vertex(j) {
                paths.push(Path { src: j, tgt: j, len: 2, im: true });
            }
        }
        paths.sort();
        let middle = m.div_ceil(2);
        let arrow_deg = |s: usize, t: usize| -> i64 {
            match (kind, grading) {
                (_, Grading::PathLen) => 1,
                (Kind::B, Grading::Ks) => i64::from(s > t),
                (Kind::A, Grading::Ks) => {
                    if t + 1 == s {
                        i64::from(s > middle)
                    } else {
                        i64::from(s < middle)
                    }
                }
            }
        };
        let x_deg = |j: usize| -> i64 {
            if j < m {
                arrow_deg(j, j + 1) + arrow_deg(j + 1, j)
            } else if j > 1 {
                arrow_deg(j, j - 1) + arrow_deg(j - 1, j)
            } else if grading == Grading::PathLen {
                2
            } else {
                1
            }
        };
        let basis: Vec<BasisElem> = paths
            .iter()
            .map(|p| BasisElem {
                path: *p,
                name: path_name(kind, p),
                deg: match p.len {
                    0 => 0,
                    1 => arrow_deg(p.src, p.tgt),
                    _ => x_deg(p.src),
                },
                z2: u8::from(p.im),
            })
            .collect();
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let names = basis.iter().enumerate().map(|(i, b)| (b.name.clone(), i)).collect();
        let d = paths.len();
        let mut table = vec![None; d * d];
        for (i, a) in paths.iter().enumerate() {
            for (k, b) in paths.iter().enumerate() {
                if a.tgt != b.src {
                    continue;
                }
                let len = a.len + b.len;
                let ok = match len {
                    0 | 1 => true,
                    2 => !(a.len == 1 && b.len == 1 && a.src != b.tgt),
                    _ => false,
                };
                if !ok {
                    continue;
                }
                let p = Path { src: a.src, tgt: b.tgt, len, im: a.im ^ b.im };
                if let Some(&r) = index.get(&p) {
                    table[i * d + k] = Some((a.im && b.im, r));
                }
            }
        }
        let mut blocks = vec![vec![Vec::new(); m + 1]; m + 1];
        for (i, p) in paths.iter().enumerate() {
            blocks[p.src][p.tgt].push(i);
        }
        let alg = ZigzagAlgebra {
            kind,
            vertices: m,
            grading,
            basis,
            index,
            names,
            table,
            blocks,
            _s: PhantomData,
        };
        alg.self_check()?;
        Ok(alg)
    }

    fn self_check(&self) -> Result<()> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let l = self.mul(&self.mul(&Elem::basis(a), &Elem::basis(b)), &Elem::basis(c));
                    let r = self.mul(&Elem::basis(a), &self.mul(&Elem::basis(b), &Elem::basis(c)));
                    if l != r {
                        return Err(Error::Construction(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[a].name, self.basis[b].name, self.basis[c].name
                        )));
                    }
                }
                if let Some((_, r)) = self.table[a * d + b] {
                    let (x, y, z) = (&self.basis[a], &self.basis[b], &self.basis[r]);
                    if x.deg + y.deg != z.deg || (x.z2 + y.z2) % 2 != z.z2 {
                        return Err(Error::Construction(format!(
                            "inhomogeneous product {} * {}",
                            x.name, y.name
                        )));
                    }
                }
            }
        }
        let unit = self.unit();
        for a in 0..d {
            let x = Elem::basis(a);
            if self.mul(&unit, &x) != x || self.mul(&x, &unit) != x {
                return Err(Error::Construction(format!("unit fails on {}", self.basis[a].name)));
            }
        }
        for j in 1..=self.vertices {
            for k in 1..=self.vertices {
                let p = self.mul(&Elem::basis(self.e(j)), &Elem::basis(self.e(k)));
                if (j == k) != (p == Elem::basis(self.e(j))) || (j != k && !p.is_zero()) {
                    return Err(Error::Construction(format!("idempotents e{} e{}", j, k)));
                }
            }
        }
        for (name, lhs, rhs) in self.relation_list() {
            if lhs != rhs {
                return Err(Error::Construction(format!("relation {} fails", name)));
            }
        }
        Ok(())
    }

    /// The defining relations, each evaluated on both sides.
    pub fn relation_list(&self) -> Vec<(String, Elem<S>, Elem<S>)> {
        let m = self.vertices;
        let mut out = Vec::new();
        let b = |i: usize| Elem::<S>::basis(i);
        for j in 1..=m {
            if j > 1 && j < m {
                out.push((
                    format!("({j}|{}|{j}) = ({j}|{}|{j})", j - 1, j + 1),
                    self.mul(&b(self.arrow(j, j - 1)), &b(self.arrow(j - 1, j))),
                    self.mul(&b(self.arrow(j, j + 1)), &b(self.arrow(j + 1, j))),
                ));
            }
            if j + 2 <= m {
                out.push((
                    format!("({}|{}|{}) = 0", j, j + 1, j + 2),
                    self.mul(&b(self.arrow(j, j + 1)), &b(self.arrow(j + 1, j + 2))),
                    Elem::zero(),
                ));
                out.push((
                    format!("({}|{}|{}) = 0", j + 2, j + 1, j),
                    self.mul(&b(self.arrow(j + 2, j + 1)), &b(self.arrow(j + 1, j))),
                    Elem::zero(),
                ));
            }
        }
        if self.kind == Kind::B {
            for j in 2..=m {
                out.push((
                    format!("(ie{j})^2 = -e{j}"),
                    self.mul(&b(self.ie(j)), &b(self.ie(j))),
                    b(self.e(j)).neg(),
                ));
                out.push((
                    format!("(ie{j})X{j} = X{j}(ie{j})"),
                    self.mul(&b(self.ie(j)), &b(self.x(j))),
                    self.mul(&b(self.x(j)), &b(self.ie(j))),
                ));
                if j >= 3 {
                    out.push((
                        format!("(ie{})({}|{j}) = ({}|{j})(ie{j})", j - 1, j - 1, j - 1),
                        self.mul(&b(self.ie(j - 1)), &b(self.arrow(j - 1, j))),
                        self.mul(&b(self.arrow(j - 1, j)), &b(self.ie(j))),
                    ));
                }
            }
            out.push((
                "(1|2)(ie2)(2|1) = 0".into(),
                self.mul(
                    &self.mul(&b(self.arrow(1, 2)), &b(self.ie(2))),
                    &b(self.arrow(2, 1)),
                ),
                Elem::zero(),
            ));
        }
        out
    }

    pub fn id(&self) -> AlgId {
        AlgId { kind: self.kind, vertices: self.vertices, grading: self.grading }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_elem(&self, i: usize) -> &BasisElem {
        &self.basis[i]
    }

    pub fn basis_elems(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    fn get(&self, p: Path) -> usize {
        self.index[&p]
    }

    pub fn e(&self, j: usize) -> usize {
        self.get(Path { src: j, tgt: j, len: 0, im: false })
    }

    pub fn ie(&self, j: usize) -> usize {
        self.get(Path { src: j, tgt: j, len: 0, im: true })
    }

    pub fn arrow(&self, s: usize, t: usize) -> usize {
        self.get(Path { src: s, tgt: t, len: 1, im: false })
    }

    pub fn x(&self, j: usize) -> usize {
        self.get(Path { src: j, tgt: j, len: 2, im: false })
    }

    /// The element with the same path and the ie flag toggled, if present.
    pub fn im_partner(&self, i: usize) -> Option<usize> {
        let p = self.basis[i].path;
        self.index_of(&Path { im: !p.im, ..p })
    }

    pub fn has_complex_top(&self, j: usize) -> bool {
        self.kind == Kind::B && j >= 2
    }

    /// Dimension of the field k_j over the scalars.
    pub fn top_dim(&self, j: usize) -> usize {
        if self.has_complex_top(j) {
            2
        } else {
            1
        }
    }

    pub fn unit(&self) -> Elem<S> {
        Elem::from_terms((1..=self.vertices).map(|j| (self.e(j), S::one())))
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Option<(bool, usize)> {
        self.table[a * self.dim() + b]
    }

    pub fn mul(&self, a: &Elem<S>, b: &Elem<S>) -> Elem<S> {
        let mut out = Elem::zero();
        for (i, x) in a.terms() {
            for (k, y) in b.terms() {
                if let Some((neg, r)) = self.mul_basis(*i, *k) {
                    let c = x.clone() * y.clone();
                    out.add_term(r, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn block(&self, j: usize, k: usize) -> &[usize] {
        &self.blocks[j][k]
    }

    /// Basis of e_j A e_k as a left k_j-module.
    pub fn f_basis(&self, j: usize, k: usize) -> Vec<usize> {
        self.blocks[j][k]
            .iter()
            .copied()
            .filter(|&i| !(self.has_complex_top(j) && self.basis[i].path.im))
            .collect()
    }

    /// Left k_j-coordinates of an element of e_j A: pairs (basis c, lambda in k_j).
    pub fn expand_f(&self, j: usize, v: &Elem<S>) -> Vec<(usize, Elem<S>)> {
        let mut out: Vec<(usize, Elem<S>)> = Vec::new();
        let mut push = |c: usize, lam: Elem<S>| {
            if lam.is_zero() {
                return;
            }
            match out.iter_mut().find(|t| t.0 == c) {
                Some(t) => t.1 = t.1.add(&lam),
                None => out.push((c, lam)),
            }
        };
        for (i, a) in v.terms() {
            let p = self.basis[*i].path;
            debug_assert_eq!(p.src, j);
            if self.has_complex_top(j) && p.im {
                // ie_j * c = sign * i, so i = sign * ie_j * c
                let c = self.im_partner(*i).expect("im partner");
                let (neg, r) = self.mul_basis(self.ie(j), c).expect("ie action");
                debug_assert_eq!(r, *i);
                let s = if neg { -a.clone() } else { a.clone() };
                push(c, Elem::term(self.ie(j), s));
            } else {
                push(*i, Elem::term(self.e(j), a.clone()));
            }
        }
        out.sort_by_key(|t| t.0);
        out
    }

    /// Coefficients (alpha, beta) of e_j and ie_j in v.
    pub fn top_part(&self, j: usize, v: &Elem<S>) -> (S, S) {
        let a = v.coeff(self.e(j));
        let b = if self.has_complex_top(j) { v.coeff(self.ie(j)) } else { S::zero() };
        (a, b)
    }

    /// True when v is a nonzero element of k_j (span of e_j, ie_j).
    pub fn is_top_unit(&self, j: usize, v: &Elem<S>) -> bool {
        if v.is_zero() {
            return false;
        }
        v.terms().iter().all(|(i, _)| {
            let p = self.basis[*i].path;
            p.len == 0 && p.src == j
        })
    }

    pub fn invert_top(&self, j: usize, v: &Elem<S>) -> Elem<S> {
        let (a, b) = self.top_part(j, v);
        let n = a.clone() * a.clone() + b.clone() * b.clone();
        let mut out = Elem::term(self.e(j), a / n.clone());
        if self.has_complex_top(j) {
            out.add_term(self.ie(j), -b / n);
        }
        out
    }

    /// (src, tgt, deg, z2) when v is nonzero and homogeneous.
    pub fn homogeneity(&self, v: &Elem<S>) -> Option<(usize, usize, i64, u8)> {
        let mut it = v.terms().iter().map(|(i, _)| {
            let b = &self.basis[*i];
            (b.path.src, b.path.tgt, b.deg, b.z2)
        });
        let first = it.next()?;
        if it.all(|x| x == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn render(&self, v: &Elem<S>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in v.terms().iter().enumerate() {
            let name = &self.basis[*i].name;
            let (neg, mag) = split_sign(c);
            let body = if mag == S::one() {
                name.clone()
            } else {
                let s = mag.render();
                if s.contains('+') || s.contains('-') {
                    format!("({})*{}", s, name)
                } else {
                    format!("{}*{}", s, name)
                }
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{}", body)),
                (_, false) => out.push_str(&format!(" + {}", body)),
                (_, true) => out.push_str(&format!(" - {}", body)),
            }
        }
        out
    }

    pub fn parse_elem(&self, s: &str) -> std::result::Result<Elem<S>, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(Elem::zero());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if !cur.trim().is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if cur.trim().is_empty() {
            return Err(format!("dangling sign in {:?}", s));
        }
        pieces.push((neg, cur));
        let mut out = Elem::zero();
        for (neg, piece) in pieces {
            let piece = piece.trim();
            let (coef, name) = match split_coef(piece) {
                Some((c, n)) => {
                    let c = c.trim_start_matches('(').trim_end_matches(')');
                    (S::parse_scalar(c).ok_or(format!("bad coefficient {:?}", c))?, n)
                }
                None => (S::one(), piece),
            };
            let i = self.by_name(name.trim()).ok_or(format!("unknown basis element {:?}", name))?;
            out.add_term(i, if neg { -coef } else { coef });
        }
        Ok(out)
    }

    /// Graded basis of e_j A e_k: (index, degree, z2).
    pub fn hom_table(&self, j: usize, k: usize) -> Result<Vec<(usize, i64, u8)>> {
        let m = self.vertices;
        if j < 1 || j > m || k < 1 || k > m {
            return Err(Error::Invalid(format!("vertex out of range: ({}, {})", j, k)));
        }
        Ok(self.blocks[j][k]
            .iter()
            .map(|&i| (i, self.basis[i].deg, self.basis[i].z2))
            .collect())
    }

    /// Graded dimension of e_j A e_k over the scalars, in q2 and q3.
    pub fn grdim(&self, j: usize, k: usize) -> TriPoly {
        let mut p = TriPoly::zero();
        for &i in &self.blocks[j][k] {
            let b = &self.basis[i];
            p = &p + &TriPoly::mono(0, b.deg, b.z2);
        }
        p
    }

    /// Entry (i, j) is the graded dimension of e_j A e_i, in the variable t = q2.
    pub fn grdim_matrix(&self, side: Side) -> Result<Vec<Vec<TriPoly>>> {
        if self.grading != Grading::PathLen {
            return Err(Error::Invalid("grdim_matrix needs the path-length grading".into()));
        }
        let m = self.vertices;
        let mut out = vec![vec![TriPoly::zero(); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let g = self.grdim(j + 1, i + 1).eval_q3(1);
                *slot = match side {
                    Side::TwoSided => g,
                    Side::LeftModule => g.scale(&crate::exact::rat(1, self.top_dim(j + 1) as i128)),
                };
            }
        }
        Ok(out)
    }
}

fn split_sign<S: Scalar>(c: &S) -> (bool, S) {
    let r = c.render();
    if r.starts_with('-') && !r[1..].contains('+') && !r[1..].contains('-') {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn split_coef(piece: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (k, ch) in piece.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return Some((&piece[..k], &piece[k + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussRat, Rat};

    fn b(n: usize) -> ZigzagAlgebra<Rat> {
        ZigzagAlgebra::new(Kind::B, n, Grading::Ks).unwrap()
    }

    #[test]
    fn dimensions() {
        for n in 2..=6 {
            assert_eq!(b(n).dim(), 8 * n - 6);
        }
        for n in 2..=5 {
            let a = ZigzagAlgebra::<GaussRat>::new(Kind::A, 2 * n - 1, Grading::Ks).unwrap();
            assert_eq!(a.dim(), 8 * n - 6);
        }
        assert!(ZigzagAlgebra::<GaussRat>::new(Kind::A, 4, Grading::Ks).is_err());
        assert!(ZigzagAlgebra::<GaussRat>::new(Kind::A, 4, Grading::PathLen).is_ok());
    }

    #[test]
    fn names_and_products() {
        let a = b(3);
        for name in ["e1", "ie2", "(1|2)", "(1|2)(ie2)", "(ie2)(2|1)", "(ie2)(2|3)", "X2", "(ie2)(2|1|2)"] {
            assert!(a.by_name(name).is_some(), "{}", name);
        }
        let n = |s: &str| Elem::<Rat>::basis(a.by_name(s).unwrap());
        let w = a.mul(&a.mul(&a.mul(&n("(1|2)"), &n("(2|3)")), &n("(3|2)")), &n("(2|1)"));
        assert!(w.is_zero());
        assert_eq!(a.mul(&n("(1|2)(ie2)"), &n("(ie2)(2|1)")), n("X1").neg());
        assert_eq!(a.mul(&n("ie2"), &n("X2")), n("(ie2)(2|1|2)"));
    }

    #[test]
    fn hom_table_rows() {
        let a = b(3);
        let p = |s: &str| TriPoly::parse(s).unwrap();
        assert_eq!(a.grdim(1, 1), p("1 + q2"));
        assert_eq!(a.grdim(2, 2), p("1 + q2 + q3 + q2*q3"));
        assert_eq!(a.grdim(1, 2), p("1 + q3"));
        assert_eq!(a.grdim(2, 1), p("q2 + q2*q3"));
        assert!(a.hom_table(1, 3).unwrap().is_empty());
        assert!(a.hom_table(0, 1).is_err());
    }

    #[test]
    fn f_expansion_reconstructs() {
        let a = b(3);
        for j in 1..=3 {
            for k in 1..=3 {
                for &i in a.block(j, k) {
                    let v = Elem::basis(i);
                    let mut back = Elem::zero();
                    for (c, lam) in a.expand_f(j, &v) {
                        back = back.add(&a.mul(&lam, &Elem::basis(c)));
                    }
                    assert_eq!(back, v);
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let a = b(2);
        let v = a.parse_elem("2*(1|2) - 1/2*(1|2)(ie2)").unwrap();
        assert_eq!(a.parse_elem(&a.render(&v)).unwrap(), v);
        let c = ZigzagAlgebra::<GaussRat>::new(Kind::A, 3, Grading::Ks).unwrap();
        let v = c.parse_elem("(1+i)*X2 - i*(1|2)").unwrap();
        assert_eq!(c.parse_elem(&c.render(&v)).unwrap(), v);
    }

    #[test]
    fn cartan_matrices() {
        let a = ZigzagAlgebra::<Rat>::new(Kind::B, 2, Grading::PathLen).unwrap();
        let m = a.grdim_matrix(Side::TwoSided).unwrap();
        let t = |s: &str| TriPoly::parse(s).unwrap();
        assert_eq!(m[0][0], t("1 + q2^2"));
        assert_eq!(m[0][1], t("2*q2"));
        assert_eq!(m[1][1], t("2 + 2*q2^2"));
        let l = a.grdim_matrix(Side::LeftModule).unwrap();
        assert_eq!(l[0][1], t("q2"));
        assert_eq!(l[1][0], t("2*q2"));
        assert!(b(2).grdim_matrix(Side::TwoSided).is_err());
    }
}
