use zigcat::homotopy::*;
use zigcat::zigzag::{Grading, Kind, ZigzagAlgebra};
use zigcat::{GaussRat, Rat, Scalar};

fn check_pair<S: Scalar>(alg: &ZigzagAlgebra<S>, lhs: &[i64], rhs: &[i64]) {
    let kind = alg.kind();
    let n = alg.vertices();
    let w = |v: &[i64]| BraidWord::new(kind, n, v.iter().map(|&x| (x.unsigned_abs() as usize, x.signum() as i8)).collect()).unwrap();
    for k in 1..=n {
        let p = Complex::projective(alg, ShiftedProjective::new(k)).unwrap();
        let a = apply_word(alg, &p, &w(lhs), ActionOpts::default()).unwrap();
        let b = apply_word(alg, &p, &w(rhs), ActionOpts::default()).unwrap();
        a.check(alg).unwrap();
        let v = iso_test_escalating(alg, &a, &b).unwrap();
        assert_eq!(v, Verdict::Iso, "{:?} vs {:?} on P{}\n{}\n{}", lhs, rhs, k, a.render(alg), b.render(alg));
    }
}

#[test]
fn type_b_relations() {
    for n in 2..=3 {
        let alg = ZigzagAlgebra::<Rat>::new(Kind::B, n, Grading::Ks).unwrap();
        check_pair(&alg, &[1, 2, 1, 2], &[2, 1, 2, 1]);
        if n >= 3 {
            check_pair(&alg, &[2, 3, 2], &[3, 2, 3]);
            check_pair(&alg, &[1, 3], &[3, 1]);
        }
    }
}

#[test]
fn type_a_relations() {
    let alg = ZigzagAlgebra::<GaussRat>::new(Kind::A, 3, Grading::Ks).unwrap();
    check_pair(&alg, &[1, 2, 1], &[2, 1, 2]);
    let alg = ZigzagAlgebra::<GaussRat>::new(Kind::A, 5, Grading::Ks).unwrap();
    check_pair(&alg, &[1, 3], &[3, 1]);
    check_pair(&alg, &[3, 4, 3], &[4, 3, 4]);
}

