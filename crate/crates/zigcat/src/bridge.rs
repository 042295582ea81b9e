//! Extension of scalars from the type B algebra to the type A algebra on
//! 2n-1 vertices, and the matching embedding of braid groups.

use crate::exact::{rat, GaussRat, Rat, Scalar};
use crate::homotopy::{
    apply_word, iso_test_escalating, minimize, ActionOpts, BraidWord, Complex, ShiftedProjective, Term, Verdict,
};
use crate::zigzag::{Elem, Grading, Kind, ZigzagAlgebra};
use crate::{Error, Result};
use std::collections::BTreeMap;

pub struct Phi {
    n: usize,
    b: ZigzagAlgebra<Rat>,
    a: ZigzagAlgebra<GaussRat>,
    images: Vec<Elem<GaussRat>>,
}

fn g(re: i128, im: i128) -> GaussRat {
    GaussRat::new(rat(re, 1), rat(im, 1))
}

impl Phi {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("the bridge needs n >= 2".into()));
        }
        let b = ZigzagAlgebra::<Rat>::new(Kind::B, n, Grading::Ks)?;
        let a = ZigzagAlgebra::<GaussRat>::new(Kind::A, 2 * n - 1, Grading::Ks)?;
        let pair = |j: usize| (n + 1 - j, n + j - 1);
        let one = |i: usize| Elem::<GaussRat>::basis(i);
        let mut images = vec![Elem::zero(); b.dim()];
        for (idx, be) in b.basis_elems().iter().enumerate() {
            let p = be.path;
            if p.im {
                continue;
            }
            images[idx] = match p.len {
                0 if p.src == 1 => one(a.e(n)),
                0 => {
                    let (u, v) = pair(p.src);
                    one(a.e(u)).add(&one(a.e(v)))
                }
                2 if p.src == 1 => Elem::term(a.x(n), g(2, 0)),
                2 => {
                    let (u, v) = pair(p.src);
                    one(a.x(u)).add(&one(a.x(v)))
                }
                _ => {
                    // (j-1|j) and (j|j-1)
                    let j = p.src.max(p.tgt);
                    let (u, v) = pair(j);
                    if p.src < p.tgt {
                        one(a.arrow(u + 1, u)).add(&one(a.arrow(v - 1, v)))
                    } else {
                        one(a.arrow(u, u + 1)).add(&one(a.arrow(v, v - 1)))
                    }
                }
            };
        }
        let ie_img = |j: usize| {
            let (u, v) = pair(j);
            Elem::term(a.e(u), g(0, -1)).add(&Elem::term(a.e(v), g(0, 1)))
        };
        for (idx, be) in b.basis_elems().iter().enumerate() {
            let p = be.path;
            if !p.im {
                continue;
            }
            let plain = b
                .index_of(&crate::zigzag::Path { im: false, ..p })
                .ok_or_else(|| Error::Construction(format!("no real partner for {}", be.name)))?;
            images[idx] = if p.src >= 2 {
                a.mul(&ie_img(p.src), &images[plain])
            } else {
                a.mul(&images[plain], &ie_img(p.tgt))
            };
        }
        let phi = Phi { n, b, a, images };
        phi.check_homomorphism()?;
        Ok(phi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> &ZigzagAlgebra<Rat> {
        &self.b
    }

    pub fn target(&self) -> &ZigzagAlgebra<GaussRat> {
        &self.a
    }

    pub fn apply(&self, x: &Elem<Rat>) -> Elem<GaussRat> {
        let mut out = Elem::zero();
        for (i, c) in x.terms() {
            out = out.add(&self.images[*i].scale(&GaussRat::new(*c, Rat::from_int(0))));
        }
        out
    }

    /// Image of a complex combination sum c_i * basis_i of the complexified algebra.
    pub fn apply_complex(&self, x: &[(usize, GaussRat)]) -> Elem<GaussRat> {
        let mut out = Elem::zero();
        for (i, c) in x {
            out = out.add(&self.images[*i].scale(c));
        }
        out
    }

    /// Image of 1/2 (1 (x) e_j + i (x) ie_j).
    pub fn nu(&self, j: usize) -> Elem<GaussRat> {
        let half = GaussRat::new(rat(1, 2), rat(0, 1));
        let halfi = GaussRat::new(rat(0, 1), rat(1, 2));
        if j == 1 {
            return self.apply(&Elem::basis(self.b.e(1)));
        }
        self.apply_complex(&[(self.b.e(j), half), (self.b.ie(j), halfi)])
    }

    /// Multiplicativity on every basis pair, degree preservation and
    /// bijectivity of the complexified map.
    pub fn check_homomorphism(&self) -> Result<()> {
        let (b, a) = (&self.b, &self.a);
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                let lhs = self.apply(&b.mul(&Elem::basis(x), &Elem::basis(y)));
                let rhs = a.mul(&self.images[x], &self.images[y]);
                if lhs != rhs {
                    return Err(Error::Construction(format!(
                        "Phi({} * {}) != Phi({}) * Phi({})",
                        b.basis_elem(x).name,
                        b.basis_elem(y).name,
                        b.basis_elem(x).name,
                        b.basis_elem(y).name
                    )));
                }
            }
        }
        if self.apply(&b.unit()) != a.unit() {
            return Err(Error::Construction("Phi does not preserve the unit".into()));
        }
        for (x, img) in self.images.iter().enumerate() {
            let deg = b.basis_elem(x).deg;
            if img.terms().iter().any(|(i, _)| a.basis_elem(*i).deg != deg) {
                return Err(Error::Construction(format!("Phi({}) is not homogeneous", b.basis_elem(x).name)));
            }
        }
        let rows: Vec<Vec<GaussRat>> =
            self.images.iter().map(|e| (0..a.dim()).map(|i| e.coeff(i)).collect()).collect();
        if crate::linalg::rank(&rows, a.dim()) != a.dim() || b.dim() != a.dim() {
            return Err(Error::Construction("Phi is not bijective".into()));
        }
        Ok(())
    }

    /// Type A vertices covering a type B vertex.
    pub fn cover(&self, j: usize) -> Vec<usize> {
        if j == 1 {
            vec![self.n]
        } else {
            vec![self.n + 1 - j, self.n + j - 1]
        }
    }

    pub fn extend_scalars(&self, c: &Complex<Rat>) -> Result<Complex<GaussRat>> {
        if c.alg != self.b.id() {
            return Err(Error::Mismatch("extension needs a complex over the matching type B algebra".into()));
        }
        let mut terms: BTreeMap<i64, Vec<Term>> = BTreeMap::new();
        let mut offsets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for p in c.degrees() {
            let mut v = Vec::new();
            let mut offs = Vec::new();
            for t in c.terms_at(p) {
                offs.push(v.len());
                for u in self.cover(t.vertex) {
                    v.push(Term { vertex: u, internal: t.internal, z2: 0 });
                }
            }
            terms.insert(p, v);
            offsets.insert(p, offs);
        }
        let mut entries = Vec::new();
        for p in c.degrees() {
            let src = c.terms_at(p);
            let tgt = c.terms_at(p + 1);
            for (r, z) in tgt.iter().enumerate() {
                for (k, y) in src.iter().enumerate() {
                    let e = c.entry(p, r, k);
                    if e.is_zero() {
                        continue;
                    }
                    let img = self.apply(&e);
                    for (du, u) in self.cover(y.vertex).into_iter().enumerate() {
                        for (dw, w) in self.cover(z.vertex).into_iter().enumerate() {
                            let part = self.a.mul(&self.a.mul(&Elem::basis(self.a.e(u)), &img), &Elem::basis(self.a.e(w)));
                            if !part.is_zero() {
                                entries.push((p, offsets[&(p + 1)][r] + dw, offsets[&p][k] + du, part));
                            }
                        }
                    }
                }
            }
        }
        Ok(Complex::from_parts(self.a.id(), terms, entries))
    }
}

/// sigma_1 -> sigma_n, sigma_j -> sigma_{n-j+1} sigma_{n+j-1}.
pub fn psi(w: &BraidWord) -> BraidWord {
    let n = w.size;
    let mut letters = Vec::new();
    for &(j, s) in &w.letters {
        if j == 1 {
            letters.push((n, s));
        } else {
            letters.push((n + 1 - j, s));
            letters.push((n + j - 1, s));
        }
    }
    BraidWord { kind: Kind::A, size: 2 * n - 1, letters }
}

/// Compares extension after the type B action with the type A action of
/// psi(w) after extension, starting from P_k.
pub fn equivariance_check(phi: &Phi, w: &BraidWord, k: usize) -> Result<Verdict> {
    let b = phi.source();
    let a = phi.target();
    let pk = Complex::projective(b, ShiftedProjective::new(k))?;
    let lhs = minimize(a, &phi.extend_scalars(&apply_word(b, &pk, w, ActionOpts::default())?)?);
    let start = minimize(a, &phi.extend_scalars(&pk)?);
    let rhs = apply_word(a, &start, &psi(w), ActionOpts::default())?;
    iso_test_escalating(a, &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homomorphism_small_n() {
        for n in 2..=4 {
            Phi::new(n).unwrap();
        }
    }

    #[test]
    fn named_images() {
        let phi = Phi::new(2).unwrap();
        let (b, a) = (phi.source(), phi.target());
        let half_x1 = phi.apply_complex(&[(b.x(1), GaussRat::new(rat(1, 2), rat(0, 1)))]);
        assert_eq!(half_x1, Elem::basis(a.x(2)));
        assert_eq!(phi.nu(2), Elem::basis(a.e(1)));
    }

    #[test]
    fn psi_letters() {
        let w = BraidWord::parse(Kind::B, 2, "1").unwrap();
        assert_eq!(psi(&w).to_string(), "2");
        let w = BraidWord::parse(Kind::B, 2, "-2").unwrap();
        assert_eq!(psi(&w).to_string(), "-1 -3");
        assert!(psi(&BraidWord::parse(Kind::B, 2, "").unwrap()).letters.is_empty());
    }

    #[test]
    fn extension_of_projectives() {
        let phi = Phi::new(3).unwrap();
        let b = phi.source();
        let p1 = Complex::projective(b, ShiftedProjective::new(1)).unwrap();
        let e = phi.extend_scalars(&p1).unwrap();
        assert_eq!(e.render(phi.target()), "deg 0: P3\n");
        let p2 = Complex::projective(b, ShiftedProjective::new(2)).unwrap();
        assert_eq!(phi.extend_scalars(&p2).unwrap().render(phi.target()), "deg 0: P2, P4\n");
        assert!(phi.extend_scalars(&Complex::zero(b.id())).unwrap().is_zero());
    }

    #[test]
    fn equivariance_examples() {
        let phi = Phi::new(2).unwrap();
        let w = BraidWord::parse(Kind::B, 2, "2").unwrap();
        assert_eq!(equivariance_check(&phi, &w, 1).unwrap(), Verdict::Iso);
        let phi = Phi::new(3).unwrap();
        let w = BraidWord::parse(Kind::B, 3, "1 2").unwrap();
        assert_eq!(equivariance_check(&phi, &w, 2).unwrap(), Verdict::Iso);
    }
}
