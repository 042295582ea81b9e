use proptest::prelude::*;
use zigcat::exact::{rat, Target, TriPoly};
use zigcat::homotopy::*;
use zigcat::ktheory::{k0_class, mat_vec, read_out, word_matrix};
use zigcat::zigzag::{Elem, Grading, Kind, ZigzagAlgebra};
use zigcat::{GaussRat, Rat, Scalar};

fn poly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec((-3i128..=3, -2i64..=2, -2i64..=2, 0u8..2), 0..5).prop_map(|ts| {
        ts.into_iter().fold(TriPoly::zero(), |acc, (c, a, b, s)| acc + TriPoly::term(rat(c, 1), a, b, s))
    })
}

fn word(n: usize, max: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..=n as i64, any::<bool>()).prop_map(|(j, s)| if s { j } else { -j }), 0..=max)
}

fn braid(kind: Kind, n: usize, w: &[i64]) -> BraidWord {
    BraidWord::new(kind, n, w.iter().map(|&x| (x.unsigned_abs() as usize, x.signum() as i8)).collect()).unwrap()
}

fn elem<S: Scalar>(alg: &ZigzagAlgebra<S>, cs: &[i64]) -> Elem<S> {
    Elem::from_terms(cs.iter().enumerate().take(alg.dim()).map(|(i, &c)| (i, S::from_int(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tripoly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * TriPoly::one(), a);
    }

    #[test]
    fn q3_squares_to_one(a in poly()) {
        prop_assert_eq!(a.clone() * TriPoly::q3() * TriPoly::q3(), a);
    }

    #[test]
    fn specialization_is_a_ring_map(a in poly(), b in poly()) {
        for t in [Target::K0, Target::Bigraded] {
            let s = |p: &TriPoly| p.specialize(t).unwrap();
            prop_assert_eq!(s(&(a.clone() + b.clone())), s(&a) + s(&b));
            prop_assert_eq!(s(&(a.clone() * b.clone())), s(&a) * s(&b));
        }
    }

    #[test]
    fn text_round_trip(a in poly()) {
        prop_assert_eq!(TriPoly::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn algebra_multiplication_associates(
        n in 2usize..=4,
        x in prop::collection::vec(-2i64..=2, 26),
        y in prop::collection::vec(-2i64..=2, 26),
        z in prop::collection::vec(-2i64..=2, 26),
    ) {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, n, Grading::Ks).unwrap();
        let (x, y, z) = (elem(&alg, &x), elem(&alg, &y), elem(&alg, &z));
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
    }

    #[test]
    fn gaussian_conjugation_is_involutive(a in -5i128..=5, b in -5i128..=5) {
        let z = GaussRat::new(rat(a, 1), rat(b, 1));
        prop_assert_eq!(z.conj().conj(), z);
        prop_assert_eq!((z * z.conj()).im, rat(0, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimize_is_idempotent_and_invariant(n in 2usize..=3, seed in any::<u64>()) {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, n, Grading::Ks).unwrap();
        let c = random_complex(&alg, seed, 4);
        let m = minimize(&alg, &c);
        m.check(&alg).unwrap();
        prop_assert_eq!(minimize(&alg, &m).num_terms(), m.num_terms());
        for k in 1..=n {
            let p = Complex::projective(&alg, ShiftedProjective::new(k)).unwrap();
            prop_assert_eq!(hom_poincare(&alg, &p, &c).unwrap(), hom_poincare(&alg, &p, &m).unwrap());
        }
        prop_assert_eq!(k0_class(&alg, &c), k0_class(&alg, &m));
    }

    #[test]
    fn k0_class_follows_the_matrices(w in word(3, 5), k in 1usize..=3, z2 in 0u8..2) {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, 3, Grading::Ks).unwrap();
        let bw = braid(Kind::B, 3, &w);
        let c = Complex::projective(&alg, ShiftedProjective::shifted(k, 0, 0, z2)).unwrap();
        let img = apply_word(&alg, &c, &bw, ActionOpts::default()).unwrap();
        let rhs = read_out(Kind::B, &mat_vec(&word_matrix(&bw).unwrap(), &k0_class(&alg, &c)));
        prop_assert_eq!(k0_class(&alg, &img), rhs);
    }

    #[test]
    fn word_then_inverse_is_identity(w in word(2, 3), k in 1usize..=2) {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, 2, Grading::Ks).unwrap();
        let bw = braid(Kind::B, 2, &w);
        let p = Complex::projective(&alg, ShiftedProjective::new(k)).unwrap();
        let there = apply_word(&alg, &p, &bw, ActionOpts::default()).unwrap();
        let back = apply_word(&alg, &there, &bw.inverse(), ActionOpts::default()).unwrap();
        prop_assert_eq!(iso_test_escalating(&alg, &back, &p).unwrap(), Verdict::Iso);
    }
}
