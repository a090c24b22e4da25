use lefschetz::absolute::LefschetzContext;
use lefschetz::fixtures::{builtin_pencil, builtin_pencils, PENCIL_NAMES};
use lefschetz::graded::GradedOperator;
use lefschetz::hyperplane::SectionContext;
use lefschetz::leray::{LerayStructure, EPSILONS};
use lefschetz::linalg::q;
use lefschetz::relative::PencilContext;
use lefschetz::section::PencilDatum;
use proptest::prelude::*;

fn pencils() -> Vec<PencilDatum> {
    builtin_pencils()
}

fn b(m: &lefschetz::model::PoincareModel, i: i64) -> usize {
    if i < 0 || i as usize > m.top() {
        0
    } else {
        m.betti(i as usize)
    }
}

#[test]
fn pencils_validate() {
    for p in pencils() {
        assert!(p.validate().all_passed(), "{}", p.name);
        assert_eq!(p.n(), 3);
    }
}

#[test]
fn multiplier_must_be_positive() {
    let p = builtin_pencil("hyperplane-p3").unwrap();
    assert!(p.with_m(0).is_err());
    assert_eq!(p.with_m(3).unwrap().m, 3);
}

#[test]
fn gysin_is_multiplication_by_the_section_class() {
    // iota_* iota^* x = [Y] x, with [Y] = iota_*(1).
    for p in pencils() {
        let s = p.section();
        let lower = s.gysin();
        let class = lower.block(0).mul_vec(&p.y.unit());
        assert_eq!(lower.compose(&s.restrict), p.x.mult_op(2, &class), "{}", p.name);
    }
}

#[test]
fn section_suites_pass() {
    for p in pencils() {
        for s in [p.section(), p.base_section()] {
            assert!(s.validate().all_passed(), "{}", p.name);
            let c = SectionContext::new(&s).unwrap();
            assert!(c.theta_suite().all_passed(), "{}", p.name);
            assert!(c.lemabc_suite().all_passed(), "{}", p.name);
            assert!(c.induction_suite(2 * c.n()).all_passed(), "{}", p.name);
        }
    }
}

#[test]
fn truncated_induction_leaves_top_degree_residual() {
    for p in pencils() {
        let c = SectionContext::new(&p.section()).unwrap();
        let n = c.n();
        let residual = c.induction_residual(2 * n - 2);
        for d in 0..2 * n {
            assert!(residual.restrict_to(d).is_zero(), "{} H^{d}", p.name);
        }
        // The missing terms are L^{j-n-1} p^j for j = 2n-1, 2n; only p^{2n} survives on H^{2n}.
        assert!(!residual.restrict_to(2 * n).is_zero(), "{}", p.name);
        assert!(c.induction_residual(2 * n - 1).restrict_to(2 * n) == residual.restrict_to(2 * n));
    }
}

#[test]
fn blowup_betti_numbers() {
    for p in pencils() {
        let le = LerayStructure::new(&p).unwrap();
        for i in 0..=le.model().top() as i64 {
            assert_eq!(le.dims()[i as usize], b(&p.x, i) + b(&p.delta, i - 2), "{} H^{i}", p.name);
        }
    }
}

#[test]
fn leray_pieces_refine_the_grading() {
    for p in pencils() {
        let le = LerayStructure::new(&p).unwrap();
        let top = le.model().top() as i64;
        for i in 0..=top {
            let sum = EPSILONS.iter().fold(GradedOperator::zero(le.dims(), le.dims(), 0), |acc, &e| acc.add(&le.pi(i - e as i64, e)));
            assert_eq!(sum, le.grading(i as usize), "{} degree {i}", p.name);
        }
        assert!(le.leray_suite().all_passed(), "{}", p.name);
    }
}

#[test]
fn middle_piece_dimension() {
    // P^n(X) plus the vanishing part of H^{n-2}(Delta) relative to Y.
    for (name, expected) in [("hyperplane-p3", 0), ("quadric-p3", 2), ("p1cubed", 2)] {
        let p = builtin_pencil(name).unwrap();
        let n = p.n() as i64;
        let x = LefschetzContext::new(&p.x).unwrap();
        let oracle = x.primitive_subspace(n as usize).dim() + b(&p.delta, n - 2) - b(&p.y, n - 2);
        let le = LerayStructure::new(&p).unwrap();
        let got = le.pi(n - 1, 1).rank();
        assert_eq!(got, oracle, "{name}");
        assert_eq!(got, expected, "{name}");
        assert_eq!(p.delta_vanishing_subspace().dim(), b(&p.delta, n - 2) - b(&p.y, n - 2), "{name}");
    }
}

#[test]
fn relative_weight_spectrum() {
    for p in pencils() {
        let le = LerayStructure::new(&p).unwrap();
        let h = le.h_rho();
        let n = le.n() as i64;
        for k in 0..=le.relative_top() as i64 {
            let pk = le.pi_rho(k);
            assert_eq!(h.compose(&pk), pk.scale(&q(n - 1 - k)), "{}", p.name);
        }
    }
}

#[test]
fn relative_suites_pass_for_each_multiplier() {
    for name in PENCIL_NAMES {
        for m in 1..=3 {
            let p = builtin_pencil(name).unwrap().with_m(m).unwrap();
            let c = PencilContext::new(&p).unwrap();
            assert!(c.relative_suite(6).all_passed(), "{name} m={m}");
            assert!(c.tilde_power_suite(3).all_passed(), "{name} m={m}");
            assert!(c.structural_suite().all_passed(), "{name} m={m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn psi_is_an_equivariant_idempotent(idx in 0usize..3, seed in 0u64..10_000) {
        let p = builtin_pencil(PENCIL_NAMES[idx]).unwrap();
        let c = PencilContext::new(&p).unwrap();
        let le = &c.leray;
        let h = le.h_rho();
        for u in c.samples(5, seed) {
            let v = le.psi(&u);
            prop_assert_eq!(le.psi(&v), v.clone());
            prop_assert_eq!(le.psi(&le.transpose(&u)), le.transpose(&v));
            // psi(u) shifts relative weight by its degree.
            prop_assert_eq!(h.bracket(&v), v.scale(&q(-(u.degree() as i64))));
        }
    }
}
