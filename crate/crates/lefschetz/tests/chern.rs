use lefschetz::chern::{
    betti_delta, betti_delta_oracle, chern_suite, chi_delta, chi_delta_at, p1_cubed_chern, pencil_chern, pencil_consistency,
    projective_space_chern, Polynomial, TruncatedSeries,
};
use lefschetz::fixtures::builtin_pencils;
use lefschetz::linalg::{q, qr, Q};
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Euler characteristic of a complete intersection of two degree-d
/// hypersurfaces in P^n, by integer expansion of `d² (1+H)^{n+1} (1+dH)^{-2}`.
fn complete_intersection_chi(n: i64, d: i64) -> i64 {
    d * d * (0..=n - 2).map(|k| binomial(n + 1, n - 2 - k) * (-1i64).pow(k as u32) * (k + 1) * d.pow(k as u32)).sum::<i64>()
}

#[test]
fn projective_three_space_polynomial() {
    let data = projective_space_chern(3);
    let chi = chi_delta(&data.chern, &data.deg_x, 3);
    assert_eq!(chi.to_string(), "-2*d^3 + 4*d^2");
    assert_eq!(chi.degree(), Some(3));
    for (d, v) in [(1, 2), (2, 0), (3, -18)] {
        assert_eq!(chi.eval(&q(d)), q(v));
    }
}

#[test]
fn classical_low_dimensional_values() {
    // Two planes in P^4 meet in a plane; two quadrics in a quartic del Pezzo surface.
    let p4 = projective_space_chern(4);
    let chi = chi_delta(&p4.chern, &p4.deg_x, 4);
    assert_eq!(chi.eval(&q(1)), q(3));
    assert_eq!(chi.eval(&q(2)), q(8));
    // d^2 points in P^2.
    let p2 = projective_space_chern(2);
    assert_eq!(chi_delta(&p2.chern, &p2.deg_x, 2).eval(&q(5)), q(25));
}

#[test]
fn triple_product_of_lines() {
    let data = p1_cubed_chern();
    let chi = chi_delta(&data.chern, &data.deg_x, 3);
    assert_eq!(chi.to_string(), "-12*d^3 + 12*d^2");
    // d = 1: elliptic curve. d = 2: K restricts to 2H, of degree 48 on the curve.
    assert_eq!(chi.eval(&q(1)), q(0));
    assert_eq!(chi.eval(&q(2)), q(-48));
}

#[test]
fn betti_formulas_on_space_curves() {
    // For a curve, b_1 = 2 - chi.
    let data = projective_space_chern(3);
    let chi = chi_delta(&data.chern, &data.deg_x, 3);
    let oracle = betti_delta_oracle(&chi, &data.betti, 3);
    for d in 1..=5 {
        assert_eq!(oracle.eval(&q(d)), q(2) - chi.eval(&q(d)), "d={d}");
    }
    // The printed variant carries the opposite sign on the constant term.
    let printed = betti_delta(&chi, &data.betti, 3);
    assert_eq!(printed.eval(&q(2)), q(-2));
    assert_eq!(oracle.eval(&q(2)), q(2));
}

#[test]
fn suite_reports_lead_terms() {
    let r = chern_suite(&projective_space_chern(3), 1..=3);
    assert!(r.all_passed());
    assert_eq!(r.parameters["lead_computed"], "-2");
    assert_eq!(r.parameters["lead_claimed"], "-1");
}

#[test]
fn pencil_models_agree_with_formula() {
    for p in builtin_pencils() {
        let r = pencil_consistency(&p).expect("builtin pencils carry Chern data");
        assert!(r.all_passed(), "{}", p.name);
        let (data, d) = pencil_chern(&p.name).unwrap();
        assert_eq!(chi_delta_at(&data.chern, &data.deg_x, &d), q(p.delta.euler_characteristic()), "{}", p.name);
    }
}

#[test]
fn polynomial_basics() {
    let p = Polynomial::new(vec![q(1), q(0), q(0)]);
    assert_eq!(p.degree(), Some(0));
    assert_eq!(Polynomial::new(vec![]).degree(), None);
    assert_eq!(Polynomial::new(vec![q(0)]).to_string(), "0");
    assert_eq!(Polynomial::new(vec![qr(1, 2), q(-3)]).to_string(), "-3*d + 1/2");
}

proptest! {
    #[test]
    fn complete_intersections_in_projective_space(n in 2usize..=6, d in 1i64..=6) {
        let data = projective_space_chern(n);
        let chi = chi_delta(&data.chern, &data.deg_x, n);
        prop_assert_eq!(chi.eval(&q(d)), q(complete_intersection_chi(n as i64, d)));
        prop_assert_eq!(chi.degree(), Some(n));
        prop_assert_eq!(chi_delta_at(&data.chern, &data.deg_x, &q(d)), chi.eval(&q(d)));
    }

    #[test]
    fn series_inverse(tail in prop::collection::vec(-5i64..=5, 1..6), den in 1i64..4) {
        let n = tail.len();
        let mut coeffs: Vec<Q> = vec![q(1)];
        coeffs.extend(tail.iter().map(|&c| qr(c, den)));
        let s = TruncatedSeries::new(coeffs, n);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncatedSeries::one(n));
    }

    #[test]
    fn polynomial_evaluation_matches_series(c in prop::collection::vec(-4i64..=4, 3), deg in 1i64..8, d in -4i64..=4) {
        let mut coeffs = vec![q(1)];
        coeffs.extend(c.iter().map(|&x| q(x)));
        let s = TruncatedSeries::new(coeffs, 3);
        let chi = chi_delta(&s, &q(deg), 3);
        prop_assert_eq!(chi.eval(&q(d)), chi_delta_at(&s, &q(deg), &q(d)));
    }
}
