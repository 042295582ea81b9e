use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

use crate::Error;

pub type Rat = Ratio<i128>;
pub type GaussRat = Complex<Rat>;

/// Field of coefficients used by algebras and complexes.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;
    /// A square root of -1, if the field has one.
    fn imag_unit() -> Option<Self>;
    fn conj(&self) -> Self;
    /// Image under the reduction map to F_p sending i to `root`.
    fn to_modp(&self, p: u64, root: u64) -> Option<u64>;
    fn render(&self) -> String;
    fn parse_scalar(s: &str) -> Option<Self>;
}

pub fn rat(n: i128, d: i128) -> Rat {
    Ratio::new(n, d)
}

fn rat_modp(r: &Rat, p: u64) -> Option<u64> {
    let pm = p as i128;
    let n = r.numer().rem_euclid(pm) as u64;
    let d = r.denom().rem_euclid(pm) as u64;
    if d == 0 {
        return None;
    }
    Some(mulmod(n, powmod(d, p - 2, p), p))
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => Some(Ratio::from_integer(s.parse().ok()?)),
    }
}

fn render_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar for Rat {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        *self
    }
    fn to_modp(&self, p: u64, _root: u64) -> Option<u64> {
        rat_modp(self, p)
    }
    fn render(&self) -> String {
        render_rat(self)
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        parse_rat(s)
    }
}

impl Scalar for GaussRat {
    fn from_int(v: i64) -> Self {
        Complex::new(Rat::from_int(v), Rat::zero())
    }
    fn imag_unit() -> Option<Self> {
        Some(Complex::new(Rat::zero(), Rat::one()))
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_modp(&self, p: u64, root: u64) -> Option<u64> {
        let re = rat_modp(&self.re, p)?;
        let im = rat_modp(&self.im, p)?;
        Some((re + mulmod(im, root, p)) % p)
    }
    fn render(&self) -> String {
        let (re, im) = (&self.re, &self.im);
        if im.is_zero() {
            return render_rat(re);
        }
        let imag = if *im == Rat::one() {
            "i".to_string()
        } else if *im == -Rat::one() {
            "-i".to_string()
        } else {
            format!("{}i", render_rat(im))
        };
        if re.is_zero() {
            imag
        } else if im.is_negative() {
            format!("{}{}", render_rat(re), imag)
        } else {
            format!("{}+{}", render_rat(re), imag)
        }
    }
    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        if !s.ends_with('i') {
            return Some(Complex::new(parse_rat(s)?, Rat::zero()));
        }
        let body = &s[..s.len() - 1];
        // split at the last sign that is not leading
        let cut = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match cut {
            Some(k) => (parse_rat(&body[..k])?, &body[k..]),
            None => (Rat::zero(), body),
        };
        let im = match im.trim_start_matches('+') {
            "" => Rat::one(),
            "-" => -Rat::one(),
            t => parse_rat(t)?,
        };
        Some(Complex::new(re, im))
    }
}

/// Laurent polynomial in q1, q2 and q3 with q3^2 = 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TriPoly {
    terms: BTreeMap<(i64, i64, u8), Rat>,
}

/// Variable names used when printing or parsing a `TriPoly`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    Tri,
    K0,
    Cartan,
}

impl VarNames {
    fn names(self) -> [&'static str; 3] {
        match self {
            VarNames::Tri => ["q1", "q2", "q3"],
            VarNames::K0 => ["h", "q", "s"],
            VarNames::Cartan => ["h", "t", "u"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    K0,
    Cartan,
    Bigraded,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::mono(0, 0, 0)
    }

    pub fn mono(a: i64, b: i64, c: u8) -> Self {
        Self::term(Rat::one(), a, b, c)
    }

    pub fn term(coef: Rat, a: i64, b: i64, c: u8) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b, c & 1), coef);
        p
    }

    pub fn constant(v: i64) -> Self {
        Self::term(Rat::from_int(v), 0, 0, 0)
    }

    pub fn q1() -> Self {
        Self::mono(1, 0, 0)
    }
    pub fn q2() -> Self {
        Self::mono(0, 1, 0)
    }
    pub fn q3() -> Self {
        Self::mono(0, 0, 1)
    }

    pub fn add_term(&mut self, key: (i64, i64, u8), coef: Rat) {
        if coef.is_zero() {
            return;
        }
        let key = (key.0, key.1, key.2 & 1);
        let slot = self.terms.entry(key).or_insert_with(Rat::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, u8), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64, c: u8) -> Rat {
        self.terms.get(&(a, b, c & 1)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut out = Self::zero();
        for (key, v) in &self.terms {
            out.add_term(*key, v * k);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        if e >= 0 {
            let mut r = Self::one();
            for _ in 0..e {
                r = &r * self;
            }
            Ok(r)
        } else {
            self.inverse()?.pow(-e)
        }
    }

    /// Inverse of a unit, i.e. of a signed monomial.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.terms.len() != 1 {
            return Err(Error::Arithmetic(format!("{} is not a unit", self)));
        }
        let (&(a, b, c), v) = self.terms.iter().next().unwrap();
        if v.abs() != Rat::one() {
            return Err(Error::Arithmetic(format!("{} is not a unit", self)));
        }
        Ok(Self::term(*v, -a, -b, c))
    }

    /// Substitutes q3 -> value (+1 or -1).
    pub fn eval_q3(&self, sign: i64) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), v) in &self.terms {
            let k = if c == 1 && sign < 0 { -*v } else { *v };
            out.add_term((a, b, 0), k);
        }
        out
    }

    pub fn eval_q1(&self, sign: i64) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), v) in &self.terms {
            let k = if sign < 0 && a.rem_euclid(2) == 1 { -*v } else { *v };
            out.add_term((0, b, c), k);
        }
        out
    }

    pub fn eval_q2(&self, sign: i64) -> Self {
        let mut out = Self::zero();
        for (&(a, b, c), v) in &self.terms {
            let k = if sign < 0 && b.rem_euclid(2) == 1 { -*v } else { *v };
            out.add_term((a, 0, c), k);
        }
        out
    }

    /// Sum of all coefficients with every variable set to 1.
    pub fn eval_ones(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn specialize(&self, target: Target) -> Result<Self, Error> {
        match target {
            Target::K0 => Ok(self.eval_q1(1)),
            Target::Bigraded => Ok(self.eval_q3(1)),
            Target::Cartan => {
                if self.terms.keys().any(|k| k.2 == 1) {
                    return Err(Error::Arithmetic("not q3-even".into()));
                }
                Ok(self.eval_q1(1))
            }
        }
    }

    pub fn render(&self, names: VarNames) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let vars = names.names();
        let mut out = String::new();
        for (k, (&(a, b, c), v)) in self.terms.iter().enumerate() {
            let mut mono = Vec::new();
            for (name, e) in vars.iter().zip([a, b, c as i64]) {
                match e {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{}^{}", name, e)),
                }
            }
            let neg = v.is_negative();
            let mag = v.abs();
            let body = if mono.is_empty() {
                render_rat(&mag)
            } else if mag == Rat::one() {
                mono.join("*")
            } else {
                format!("{}*{}", render_rat(&mag), mono.join("*"))
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        Self::parse_with(s, VarNames::Tri)
    }

    pub fn parse_with(s: &str, names: VarNames) -> Result<Self, Error> {
        let vars = names.names();
        let err = |msg: &str, col: usize| Error::Parse {
            line: 1,
            col: col + 1,
            msg: msg.to_string(),
        };
        let compact: Vec<(usize, char)> =
            s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial", 0));
        }
        // split into signed terms at top-level + and - (not after ^)
        let mut pieces: Vec<(bool, Vec<(usize, char)>)> = Vec::new();
        let mut cur: Vec<(usize, char)> = Vec::new();
        let mut neg = false;
        for (k, &(pos, ch)) in compact.iter().enumerate() {
            let after_caret = k > 0 && compact[k - 1].1 == '^';
            if (ch == '+' || ch == '-') && !after_caret {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if k > 0 {
                    return Err(err("dangling sign", pos));
                }
                neg = ch == '-';
            } else {
                cur.push((pos, ch));
            }
        }
        if cur.is_empty() {
            return Err(err("trailing sign", s.len()));
        }
        pieces.push((neg, cur));
        let mut out = Self::zero();
        for (neg, chars) in pieces {
            let text: String = chars.iter().map(|c| c.1).collect();
            let start = chars[0].0;
            let mut coef = Rat::one();
            let mut exps = [0i64; 3];
            for factor in text.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor", start));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coef *= parse_rat(factor).ok_or_else(|| err("bad coefficient", start))?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i64>().map_err(|_| err("bad exponent", start))?,
                    ),
                    None => (factor, 1),
                };
                let slot = vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| err(&format!("unknown variable {}", name), start))?;
                exps[slot] += e;
            }
            if neg {
                coef = -coef;
            }
            out.add_term((exps[0], exps[1], exps[2].rem_euclid(2) as u8), coef);
        }
        Ok(out)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarNames::Tri))
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({})", self)
    }
}

impl<'a> Add<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, *v);
        }
        out
    }
}

impl<'a> Sub<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -*v);
        }
        out
    }
}

impl<'a> Mul<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(a, b, c), v) in &self.terms {
            for (&(a2, b2, c2), w) in &rhs.terms {
                out.add_term((a + a2, b + b2, (c + c2) & 1), v * w);
            }
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: TriPoly) -> TriPoly {
        &self + &rhs
    }
}

impl Sub for TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: TriPoly) -> TriPoly {
        &self - &rhs
    }
}

impl Mul for TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: TriPoly) -> TriPoly {
        &self * &rhs
    }
}

impl Neg for TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        -&self
    }
}
