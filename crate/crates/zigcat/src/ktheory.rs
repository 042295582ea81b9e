//! Grothendieck group classes and the Burau-type matrices.
//!
//! K0 polynomials reuse `TriPoly` with q2 playing q and q3 playing s.

use crate::bridge;
use crate::exact::{rat, Scalar, TriPoly, VarNames};
use crate::homotopy::{apply_generator, minimize, BraidWord, Complex, ShiftedProjective};
use crate::zigzag::{Grading, Kind, ZigzagAlgebra};
use crate::{Error, Result};

pub type K0Vector = Vec<TriPoly>;
pub type PolyMatrix = Vec<Vec<TriPoly>>;

fn q(e: i64) -> TriPoly {
    TriPoly::mono(0, e, 0)
}

fn s() -> TriPoly {
    TriPoly::mono(0, 0, 1)
}

fn c(v: i64) -> TriPoly {
    TriPoly::constant(v)
}

/// Applies s[P_j] = [P_j] for j >= 2 in type B.
pub fn read_out(kind: Kind, v: &K0Vector) -> K0Vector {
    v.iter()
        .enumerate()
        .map(|(i, p)| if kind == Kind::B && i == 0 { p.clone() } else { p.eval_q3(1) })
        .collect()
}

pub fn k0_class<S: Scalar>(alg: &ZigzagAlgebra<S>, cx: &Complex<S>) -> K0Vector {
    let mut v = vec![TriPoly::zero(); alg.vertices()];
    for (p, t) in cx.all_terms() {
        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
        v[t.vertex - 1] = &v[t.vertex - 1] + &TriPoly::term(rat(sign, 1), 0, t.internal, t.z2);
    }
    read_out(alg.kind(), &v)
}

pub fn identity(n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| c((i == j) as i64)).collect()).collect()
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = TriPoly::zero();
                    for (k, x) in a[i].iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &PolyMatrix, v: &K0Vector) -> K0Vector {
    a.iter()
        .map(|row| row.iter().zip(v).fold(TriPoly::zero(), |acc, (x, y)| &acc + &(x * y)))
        .collect()
}

pub fn map_entries(a: &PolyMatrix, f: impl Fn(&TriPoly) -> TriPoly) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn render_matrix(a: &PolyMatrix) -> String {
    let mut out = String::new();
    for row in a {
        let cells: Vec<String> = row.iter().map(|p| p.render(VarNames::K0)).collect();
        out.push_str(&format!("[{}]\n", cells.join(", ")));
    }
    out
}

/// Row j of the generator matrix, as (column, entry) pairs (1-based).
fn generator_row(kind: Kind, size: usize, j: usize) -> Result<Vec<(usize, TriPoly)>> {
    if j < 1 || j > size {
        return Err(Error::Invalid(format!("no generator {} for size {}", j, size)));
    }
    let mq = || q(1).scale(&rat(-1, 1));
    let m1 = || c(-1);
    let row = match kind {
        Kind::B => {
            let n = size;
            if j == 1 {
                vec![(1, (&s() * &q(1)).scale(&rat(-1, 1))), (2, (&c(1) + &s()).scale(&rat(-1, 1)))]
            } else if j < n {
                vec![(j - 1, mq()), (j, mq()), (j + 1, m1())]
            } else {
                vec![(n - 1, mq()), (n, mq())]
            }
        }
        Kind::A => {
            let m = size;
            if m.is_multiple_of(2) {
                return Err(Error::Invalid("type A matrices need an odd number of vertices".into()));
            }
            let n = m.div_ceil(2);
            if m == 1 {
                vec![(1, mq())]
            } else if j == 1 {
                vec![(1, mq()), (2, mq())]
            } else if j < n {
                vec![(j - 1, m1()), (j, mq()), (j + 1, mq())]
            } else if j == n {
                vec![(j - 1, m1()), (j, mq()), (j + 1, m1())]
            } else if j < m {
                vec![(j - 1, mq()), (j, mq()), (j + 1, m1())]
            } else {
                vec![(m - 1, mq()), (m, mq())]
            }
        }
    };
    Ok(row)
}

/// rho(sigma_j^sign): the identity except for row j.
pub fn rep_matrix(kind: Kind, size: usize, j: usize, sign: i8) -> Result<PolyMatrix> {
    let row = generator_row(kind, size, j)?;
    let mut m = identity(size);
    let diag = row.iter().find(|x| x.0 == j).map(|x| x.1.clone()).unwrap();
    m[j - 1] = vec![TriPoly::zero(); size];
    if sign > 0 {
        for (k, p) in row {
            m[j - 1][k - 1] = p;
        }
    } else {
        let inv = diag.inverse()?;
        for (k, p) in row {
            m[j - 1][k - 1] = if k == j { inv.clone() } else { (&p * &inv).scale(&rat(-1, 1)) };
        }
    }
    Ok(m)
}

/// rho(w) = rho(w_k) ... rho(w_1), matching left-to-right application.
pub fn word_matrix(w: &BraidWord) -> Result<PolyMatrix> {
    let mut m = identity(w.size);
    for &(j, sg) in &w.letters {
        m = mat_mul(&rep_matrix(w.kind, w.size, j, sg)?, &m);
    }
    Ok(m)
}

pub fn is_identity(kind: Kind, m: &PolyMatrix) -> bool {
    let n = m.len();
    let reduced = reduce_matrix(kind, m);
    reduced == identity(n)
}

/// Row 1 of a type B matrix stays over Z[q,s]; other rows only see s = 1.
pub fn reduce_matrix(kind: Kind, m: &PolyMatrix) -> PolyMatrix {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|p| if kind == Kind::B && i == 0 { p.clone() } else { p.eval_q3(1) })
                .collect()
        })
        .collect()
}

/// The map on K0 induced by extension of scalars: [P_1] -> [P_n],
/// [P_j] -> [P_{n-j+1}] + [P_{n+j-1}].
pub fn iota(n: usize, perturb: bool) -> PolyMatrix {
    let mut e = vec![vec![TriPoly::zero(); n]; 2 * n - 1];
    e[n - 1][0] = c(1);
    for j in 2..=n {
        e[n - j][j - 1] = c(1);
        e[n + j - 2][j - 1] = c(if perturb && j == 2 { -1 } else { 1 });
    }
    e
}

#[derive(Clone, Debug, Default)]
pub struct SquareReport {
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SquareReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn ev(m: &PolyMatrix, sign: i64) -> PolyMatrix {
    map_entries(m, |p| p.eval_q3(sign))
}

fn first_diff(a: &PolyMatrix, b: &PolyMatrix) -> Option<(usize, usize, String, String)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some((i + 1, j + 1, x.render(VarNames::K0), y.render(VarNames::K0)));
            }
        }
    }
    None
}

/// Checks iota . ev_s(rho_KB(sigma)) = rho_KA(Psi(sigma)) . iota for every
/// generator and sign, and that K0 of extension of scalars is iota on the
/// projectives and their images under each generator.
pub fn decat_square_check(n: usize, s_value: i64, perturb: bool) -> Result<SquareReport> {
    if n < 2 {
        return Err(Error::Invalid("n must be at least 2".into()));
    }
    let e = iota(n, perturb);
    let mut rep = SquareReport { n, ..Default::default() };
    for j in 1..=n {
        for sg in [1i8, -1] {
            let lhs = mat_mul(&e, &ev(&rep_matrix(Kind::B, n, j, sg)?, s_value));
            let psi = bridge::psi(&BraidWord::new(Kind::B, n, vec![(j, sg)])?);
            let rhs = mat_mul(&ev(&word_matrix(&psi)?, 1), &e);
            rep.checked += 1;
            if let Some((r, k, x, y)) = first_diff(&lhs, &rhs) {
                rep.failures.push(format!(
                    "generator {}{}: entry ({},{}) is {} on the B side and {} on the A side",
                    if sg < 0 { "-" } else { "" },
                    j,
                    r,
                    k,
                    x,
                    y
                ));
            }
        }
    }
    let phi = bridge::Phi::new(n)?;
    let b = phi.source();
    let mut samples: Vec<(String, Complex<crate::Rat>)> = Vec::new();
    for k in 1..=n {
        let pk = Complex::projective(b, ShiftedProjective::new(k))?;
        for j in 1..=n {
            for sg in [1i8, -1] {
                let img = minimize(b, &apply_generator(b, &pk, j, sg, true)?);
                samples.push((format!("sigma_{}^{} P{}", j, sg, k), img));
            }
        }
        samples.push((format!("P{}", k), pk));
    }
    for (label, cx) in samples {
        let ext = phi.extend_scalars(&cx)?;
        let lhs = k0_class(phi.target(), &ext);
        let v = k0_class(b, &cx).iter().map(|p| p.eval_q3(s_value)).collect::<Vec<_>>();
        let rhs = mat_vec(&e, &v);
        rep.checked += 1;
        if lhs != rhs {
            rep.failures.push(format!("K0 of extended {} disagrees with iota", label));
        }
    }
    Ok(rep)
}

/// The displayed two-sided dimension matrix at t = -1.
pub fn intersection_display(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = if i == 0 { 2 } else { 4 };
        if i + 1 < n {
            m[i][i + 1] = -2;
            m[i + 1][i] = -2;
        }
    }
    m
}

/// The displayed left-module dimension matrix at t = -1.
pub fn cartan_display(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = if i == 0 { -2 } else { -1 };
        }
    }
    m
}

pub fn eval_matrix_at_minus_one(m: &[Vec<TriPoly>]) -> Vec<Vec<i64>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|p| {
                    let v = p.eval_q2(-1).eval_q3(1).eval_ones();
                    *v.numer() as i64 / *v.denom() as i64
                })
                .collect()
        })
        .collect()
}

/// Dimension matrix of the path-length graded algebra evaluated at t = -1.
pub fn cartan_check(n: usize, side: crate::zigzag::Side) -> Result<Vec<Vec<i64>>> {
    let alg = ZigzagAlgebra::<crate::Rat>::new(Kind::B, n, Grading::PathLen)?;
    Ok(eval_matrix_at_minus_one(&alg.grdim_matrix(side)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use crate::homotopy::{apply_word, random_complex, ActionOpts};

    fn k(s: &str) -> TriPoly {
        TriPoly::parse_with(s, VarNames::K0).unwrap()
    }

    #[test]
    fn generator_displays() {
        let m = rep_matrix(Kind::B, 3, 1, 1).unwrap();
        assert_eq!(render_matrix(&m), "[-q*s, -1 - s, 0]\n[0, 1, 0]\n[0, 0, 1]\n");
        let m = rep_matrix(Kind::B, 3, 3, 1).unwrap();
        assert_eq!(m[2], vec![k("0"), k("-q"), k("-q")]);
        let a = rep_matrix(Kind::A, 3, 1, 1).unwrap();
        assert_eq!(a[0], vec![k("-q"), k("-q"), k("0")]);
    }

    #[test]
    fn inverses() {
        for (kind, size) in [(Kind::B, 4), (Kind::A, 5)] {
            for j in 1..=size {
                let p = mat_mul(&rep_matrix(kind, size, j, 1).unwrap(), &rep_matrix(kind, size, j, -1).unwrap());
                assert_eq!(p, identity(size));
            }
        }
    }

    #[test]
    fn class_of_shifted_p1() {
        let a = ZigzagAlgebra::<Rat>::new(Kind::B, 2, Grading::Ks).unwrap();
        let c = Complex::projective(&a, ShiftedProjective::shifted(1, 1, 1, 1)).unwrap();
        assert_eq!(k0_class(&a, &c), vec![k("-q*s"), k("0")]);
    }

    #[test]
    fn functoriality_single_letters() {
        let a = ZigzagAlgebra::<Rat>::new(Kind::B, 3, Grading::Ks).unwrap();
        for seed in 0..20 {
            let c = random_complex(&a, seed, 4);
            for j in 1..=3 {
                for sg in [1, -1] {
                    let w = BraidWord::new(Kind::B, 3, vec![(j, sg)]).unwrap();
                    let img = apply_word(&a, &c, &w, ActionOpts::default()).unwrap();
                    let lhs = k0_class(&a, &img);
                    let rhs = read_out(Kind::B, &mat_vec(&word_matrix(&w).unwrap(), &k0_class(&a, &c)));
                    assert_eq!(lhs, rhs, "seed {} letter {}", seed, j as i8 * sg);
                }
            }
        }
    }

    #[test]
    fn type_a_functoriality() {
        use crate::GaussRat;
        let a = ZigzagAlgebra::<GaussRat>::new(Kind::A, 5, Grading::Ks).unwrap();
        for j in 1..=5 {
            for v in 1..=5 {
                let c = Complex::projective(&a, ShiftedProjective::new(v)).unwrap();
                let w = BraidWord::new(Kind::A, 5, vec![(j, 1)]).unwrap();
                let img = apply_word(&a, &c, &w, ActionOpts::default()).unwrap();
                let rhs = mat_vec(&word_matrix(&w).unwrap(), &k0_class(&a, &c));
                assert_eq!(k0_class(&a, &img), rhs, "sigma {} on P{}", j, v);
            }
        }
    }

    #[test]
    fn cartan_displays() {
        use crate::zigzag::Side;
        for n in 2..=5 {
            assert_eq!(cartan_check(n, Side::TwoSided).unwrap(), intersection_display(n));
            assert_eq!(cartan_check(n, Side::LeftModule).unwrap(), cartan_display(n));
        }
    }

    #[test]
    fn square_commutes() {
        for n in 2..=3 {
            assert!(decat_square_check(n, 1, false).unwrap().ok());
            assert!(!decat_square_check(n, 1, true).unwrap().ok());
        }
    }
}
