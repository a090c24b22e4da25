use lefschetz::linalg::{
    fmt_q, is_semisimple_over, lagrange_projectors, parse_q, poly, projector_along, q, qr, semisimple_part, Matrix,
    Subspace, Q,
};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(q).collect()))
}

/// Unit lower-triangular times unit upper-triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(a, b)| {
        let mut lo = Matrix::identity(n);
        let mut up = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if r > c {
                    lo.set(r, c, q(a[r * n + c]));
                } else if r < c {
                    up.set(r, c, q(b[r * n + c]));
                }
            }
        }
        lo.mul(&up)
    })
}

#[test]
fn rational_text_form() {
    assert_eq!(fmt_q(&qr(-6, 4)), "-3/2");
    assert_eq!(fmt_q(&q(7)), "7");
    assert_eq!(parse_q(" 4/-6 "), Some(qr(-2, 3)));
    assert_eq!(parse_q("1/0"), None);
    assert_eq!(parse_q("x"), None);
}

#[test]
fn rank_of_known_matrices() {
    assert_eq!(Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
    assert_eq!(Matrix::identity(4).rank(), 4);
    assert_eq!(Matrix::zeros(3, 5).rank(), 0);
}

#[test]
fn inverse_of_known_matrix() {
    let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
    assert_eq!(m.inverse(), Some(Matrix::from_i64(&[&[4, -1], &[-7, 2]])));
    assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), None);
}

#[test]
fn solve_inconsistent_system() {
    let a = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
    let b = Matrix::from_i64(&[&[1], &[2]]);
    assert!(a.solve(&b).is_none());
}

#[test]
fn projector_along_coordinate_axes() {
    let x = Subspace::span(2, &[vec![q(1), q(0)]]);
    let diag = Subspace::span(2, &[vec![q(1), q(1)]]);
    let p = projector_along(&x, &diag).unwrap();
    // (a, b) = (a - b)(1, 0) + b(1, 1)
    assert_eq!(p, Matrix::from_i64(&[&[1, -1], &[0, 0]]));
    assert!(projector_along(&x, &x).is_err());
}

#[test]
fn jordan_block_semisimple_part() {
    // 2I + N with N nilpotent of order 3.
    let t = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]);
    assert_eq!(semisimple_part(&t, 2).unwrap(), Matrix::identity(3).scale(&q(2)));
    assert!(semisimple_part(&t, 1).is_err());
    assert!(!is_semisimple_over(&t, &[q(2)]));
}

#[test]
fn lagrange_rejects_missing_eigenvalue() {
    let t = Matrix::diagonal(&[q(1), q(2)]);
    assert!(lagrange_projectors(&t, &[q(1)]).is_err());
    assert!(lagrange_projectors(&t, &[q(1), q(1)]).is_err());
}

#[test]
fn polynomial_product_of_roots() {
    // (x - 1)(x + 1) = x^2 - 1
    assert_eq!(poly::product_of_roots(&[q(1), q(-1)]), vec![q(-1), q(0), q(1)]);
}

proptest! {
    #[test]
    fn fmt_parse_round_trip(n in -1000i64..1000, d in 1i64..50) {
        let x = qr(n, d);
        prop_assert_eq!(parse_q(&fmt_q(&x)), Some(x));
    }

    #[test]
    fn rank_nullity(m in matrix(4, 5)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), 5);
        for v in k.basis() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix(3, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.column_space().dim(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(4, 4)) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn inverse_of_invertible(m in invertible(4)) {
        let inv = m.inverse().expect("invertible by construction");
        prop_assert_eq!(m.mul(&inv), Matrix::identity(4));
        prop_assert_eq!(inv.mul(&m), Matrix::identity(4));
    }

    #[test]
    fn solve_recovers_solution(a in invertible(3), x in matrix(3, 2)) {
        let b = a.mul(&x);
        prop_assert_eq!(a.solve(&b), Some(x));
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(5, 2), b in matrix(5, 3)) {
        let (sa, sb) = (a.column_space(), b.column_space());
        let sum = sa.sum(&sb).unwrap();
        let meet = sa.intersection(&sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(meet.is_subspace_of(&sa) && meet.is_subspace_of(&sb));
        prop_assert!(sa.is_subspace_of(&sum));
    }

    #[test]
    fn annihilator_pairs_to_zero(a in matrix(5, 2)) {
        let s = a.column_space();
        let ann = s.annihilator();
        prop_assert_eq!(ann.dim() + s.dim(), 5);
        for u in s.basis() {
            for w in ann.basis() {
                let dot: Q = u.iter().zip(&w).map(|(x, y)| x * y).sum();
                prop_assert_eq!(dot, q(0));
            }
        }
        prop_assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn complement_is_complementary(a in matrix(5, 2), b in matrix(5, 2)) {
        let small = a.column_space();
        let large = small.sum(&b.column_space()).unwrap();
        let c = small.complement_within(&large).unwrap();
        prop_assert_eq!(c.dim() + small.dim(), large.dim());
        prop_assert_eq!(small.sum(&c).unwrap(), large);
    }

    #[test]
    fn conjugated_diagonal_projectors(p in invertible(4), e in prop::collection::vec(0usize..3, 4)) {
        // Oracle: P E_k P^-1 with E_k the coordinate projector onto eigenvalue k.
        let spectrum = [q(-1), q(0), q(2)];
        let pinv = p.inverse().unwrap();
        let d = Matrix::diagonal(&e.iter().map(|&k| spectrum[k].clone()).collect::<Vec<_>>());
        let t = p.mul(&d).mul(&pinv);
        let projectors = lagrange_projectors(&t, &spectrum).unwrap();
        for (k, proj) in projectors.iter().enumerate() {
            let ek = Matrix::diagonal(&e.iter().map(|&j| if j == k { q(1) } else { q(0) }).collect::<Vec<_>>());
            prop_assert_eq!(proj, &p.mul(&ek).mul(&pinv));
        }
        prop_assert!(is_semisimple_over(&t, &spectrum));
    }

    #[test]
    fn semisimple_part_of_conjugated_jordan(p in invertible(4), a in -2i64..=2, b in -2i64..=2) {
        // Jordan blocks J_2(a) and J_2(b); the semisimple part is P diag(a,a,b,b) P^-1.
        let j = Matrix::from_i64(&[&[a, 1, 0, 0], &[0, a, 0, 0], &[0, 0, b, 1], &[0, 0, 0, b]]);
        let pinv = p.inverse().unwrap();
        let t = p.mul(&j).mul(&pinv);
        let s = Matrix::diagonal(&[q(a), q(a), q(b), q(b)]);
        let got = semisimple_part(&t, 2).unwrap();
        prop_assert_eq!(&got, &p.mul(&s).mul(&pinv));
        prop_assert_eq!(got.mul(&t), t.mul(&got));
    }

    #[test]
    fn projector_is_idempotent(a in matrix(4, 2), b in matrix(4, 2)) {
        let (s, t) = (a.column_space(), b.column_space());
        prop_assume!(s.dim() + t.dim() == 4 && s.sum(&t).unwrap().dim() == 4);
        let p = projector_along(&s, &t).unwrap();
        prop_assert_eq!(p.mul(&p), p.clone());
        prop_assert_eq!(p.column_space(), s);
        prop_assert_eq!(p.kernel(), t);
    }
}
