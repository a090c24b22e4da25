use lefschetz::absolute::LefschetzContext;
use lefschetz::fixtures::{builtin_model, builtin_pencils, model_battery};
use lefschetz::graded::GradedOperator;
use lefschetz::hyperplane::SectionContext;
use lefschetz::linalg::{q, Matrix, Q};
use lefschetz::model::{projective_space, PoincareModel};
use proptest::prelude::*;

fn ctx(name: &str) -> LefschetzContext {
    LefschetzContext::new(&builtin_model(name).unwrap()).unwrap()
}

/// `P^k = ker(L^{n-k+1})` on `H^k`, computed directly from the cup product.
fn primitive_basis(m: &PoincareModel, k: usize) -> Vec<Vec<Q>> {
    let n = m.n();
    if k > n {
        return Vec::new();
    }
    let l = m.lefschetz().pow(n - k + 1);
    if k + 2 * (n - k + 1) > m.top() {
        return (0..m.dims()[k]).map(|a| m.basis_vector(k, a)).collect();
    }
    l.block(k).kernel().basis()
}

/// `Λ` from its defining action `L^j a ↦ L^{j-1} a` on primitive `a`.
fn lambda_oracle(m: &PoincareModel) -> GradedOperator {
    let n = m.n();
    let l = m.lefschetz();
    let mut out = GradedOperator::zero(m.dims(), m.dims(), -2);
    for i in 2..=m.top() {
        let (mut src, mut img) = (Vec::new(), Vec::new());
        // L^j P^k is nonzero only for k + j <= n.
        for j in (0..=i / 2).filter(|j| i <= n + j) {
            let k = i - 2 * j;
            for a in primitive_basis(m, k) {
                src.push(l.pow(j).block(k).mul_vec(&a));
                img.push(if j == 0 { vec![q(0); m.dims()[i - 2]] } else { l.pow(j - 1).block(k).mul_vec(&a) });
            }
        }
        let b = Matrix::from_columns(&src, m.dims()[i]);
        let t = Matrix::from_columns(&img, m.dims()[i - 2]);
        out.set_block(i, t.mul(&b.inverse().expect("Lefschetz decomposition spans")));
    }
    out
}

#[test]
fn projective_space_lowering_operators() {
    for n in 1..=5usize {
        let c = LefschetzContext::new(&projective_space(n)).unwrap();
        let (lam, cl, h) = (c.lambda(), c.clambda(), c.h_op());
        for k in 0..=n {
            let i = 2 * k;
            assert_eq!(h.block(i), &Matrix::from_i64(&[&[n as i64 - i as i64]]));
            if k > 0 {
                assert_eq!(lam.block(i), &Matrix::from_i64(&[&[1]]), "Lambda on h^{k}");
                let coeff = (k * (n - k + 1)) as i64;
                assert_eq!(cl.block(i), &Matrix::from_i64(&[&[coeff]]), "cLambda on h^{k} in P^{n}");
            }
        }
        assert_eq!(c.primitive_subspace(0).dim(), 1);
        assert!((1..=n).all(|i| c.primitive_subspace(i).dim() == 0));
    }
}

#[test]
fn primitive_dimensions_follow_betti_numbers() {
    for (name, m) in model_battery().into_iter().chain([("dp6".into(), builtin_model("dp6").unwrap()), ("p1xp1xp1".into(), builtin_model("p1xp1xp1").unwrap())]) {
        let c = LefschetzContext::new(&m).unwrap();
        for i in 0..=m.n() {
            let expected = m.betti(i) - if i >= 2 { m.betti(i - 2) } else { 0 };
            assert_eq!(c.primitive_subspace(i).dim(), expected, "{name} P^{i}");
        }
    }
}

#[test]
fn lambda_matches_defining_action() {
    for name in ["p3", "p1xp2", "p2xp2", "p1xp1xp1", "dp6", "quadric-surface", "elliptic", "blowup-p1cubed"] {
        let m = builtin_model(name).unwrap();
        assert_eq!(LefschetzContext::new(&m).unwrap().lambda(), lambda_oracle(&m), "{name}");
    }
}

#[test]
fn lambda_inverts_l_below_the_middle() {
    for name in ["p1xp3", "dp6", "blowup-quadric-p3"] {
        let c = ctx(name);
        let lam_l = c.lambda().compose(&c.l);
        for i in 0..c.n() {
            assert_eq!(lam_l.restrict_to(i), c.kunneth_projector(i), "{name} H^{i}");
        }
    }
}

#[test]
fn theta_inverts_hard_lefschetz() {
    let c = ctx("p1xp1xp1");
    for i in 0..c.n() {
        let back = c.theta(i).compose(&c.l_power(c.n() - i)).restrict_to(i);
        assert_eq!(back, c.kunneth_projector(i));
    }
}

#[test]
fn theta_chain_agrees_on_pencil_sections() {
    for p in builtin_pencils() {
        let s = SectionContext::new(&p.section()).unwrap();
        let x = LefschetzContext::new(&p.x).unwrap();
        for i in 0..s.n() {
            assert_eq!(s.theta_chain(i), x.theta(i), "{} i={i}", p.name);
        }
    }
}

#[test]
fn built_in_suites_pass() {
    for name in ["p2", "p1xp2", "elliptic", "dp6", "blowup-hyperplane-p3"] {
        let c = ctx(name);
        assert!(c.sl2_verify(10).all_passed(), "{name}");
        assert!(c.decomposition_verify().all_passed(), "{name}");
        assert!(lefschetz::closure::ring_suite(&c).all_passed(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weight_commutator_law(name in prop::sample::select(vec!["p3", "p1xp2", "elliptic", "dp6", "p1xp1xp1"]), seed in 0u64..10_000) {
        let c = ctx(name);
        let h = c.h_op();
        for u in c.sample_operators(6, seed) {
            prop_assert_eq!(h.bracket(&u), u.scale(&q(-(u.degree() as i64))));
        }
    }

    #[test]
    fn primitive_projectors_are_idempotent_onto_primitives(name in prop::sample::select(vec!["p2xp2", "dp6", "p1xp1xp1"])) {
        let c = ctx(name);
        for k in 0..=c.n() {
            let p = c.primitive_projector(k);
            prop_assert_eq!(p.compose(&p), p.clone());
            prop_assert_eq!(p.block(k).column_space(), c.primitive_subspace(k));
        }
    }
}
