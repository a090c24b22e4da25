use lefschetz::blowup::blowup_model;
use lefschetz::fixtures::{builtin_model, builtin_pencils, elliptic_curve};
use lefschetz::graded::GradedOperator;
use lefschetz::linalg::{q, Q};
use lefschetz::model::{kunneth_product, point, projective_space, transpose, PoincareModel, Product};
use proptest::prelude::*;

/// `∫ ξ^n`, the degree of the polarization.
fn polarization_degree(m: &PoincareModel) -> Q {
    let l = m.lefschetz();
    let top = (0..m.n()).fold(m.unit(), |v, k| l.block(2 * k).mul_vec(&v));
    m.integrate(&top)
}

fn binomial(n: u64, k: u64) -> i64 {
    (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i) as i64
}

fn failing_checks(m: &PoincareModel) -> Vec<String> {
    m.validate().failures().iter().map(|f| f.name.clone()).collect()
}

fn rebuild(m: &PoincareModel, products: &[Product], trace: Vec<Q>, xi: Vec<Q>) -> PoincareModel {
    PoincareModel::new(m.n(), m.dims().to_vec(), m.labels().to_vec(), products, trace, xi).unwrap()
}

#[test]
fn projective_space_betti_and_pairing() {
    for n in 0..=6 {
        let m = projective_space(n);
        assert!(m.is_valid(), "P^{n}");
        assert_eq!(m.euler_characteristic(), n as i64 + 1);
        for i in 0..=2 * n {
            assert_eq!(m.betti(i), usize::from(i % 2 == 0));
        }
        assert_eq!(polarization_degree(&m), q(1));
    }
}

#[test]
fn point_is_kunneth_unit() {
    let p = projective_space(2);
    assert_eq!(kunneth_product(&point(), &p).dims(), p.dims());
}

#[test]
fn named_fixture_degrees() {
    for (name, deg) in [("p1xp1xp1", 6), ("quadric-surface", 2), ("dp6", 6), ("p2xp3", 10)] {
        let m = builtin_model(name).unwrap();
        assert!(m.is_valid(), "{name}");
        assert_eq!(polarization_degree(&m), q(deg), "{name}");
    }
}

#[test]
fn elliptic_curve_odd_classes_anticommute() {
    let e = elliptic_curve(3);
    assert!(e.is_valid());
    assert_eq!(e.betti(1), 2);
    assert_eq!(e.euler_characteristic(), 0);
    let (a, b) = (e.basis_vector(1, 0), e.basis_vector(1, 1));
    let ab = e.product(1, &a, 1, &b).unwrap();
    let ba = e.product(1, &b, 1, &a).unwrap();
    assert_ne!(ab, vec![q(0)]);
    assert_eq!(ab, ba.iter().map(|x| -x).collect::<Vec<_>>());
    assert_eq!(e.product(1, &a, 1, &a).unwrap(), vec![q(0)]);
    assert_eq!(polarization_degree(&e), q(3));
}

#[test]
fn broken_commutativity_is_reported() {
    let m = projective_space(3);
    let products: Vec<Product> = m
        .products()
        .into_iter()
        .map(|mut p| {
            if (p.i, p.j) == (4, 2) {
                p.result = vec![q(2)];
            }
            p
        })
        .collect();
    let bad = rebuild(&m, &products, m.trace().to_vec(), m.xi().to_vec());
    let fails = failing_checks(&bad);
    assert!(fails.contains(&"graded-commutativity".to_string()), "{fails:?}");
    assert!(fails.contains(&"associativity".to_string()), "{fails:?}");
}

#[test]
fn zero_trace_breaks_pairing() {
    let m = projective_space(2);
    let bad = rebuild(&m, &m.products(), vec![q(0)], m.xi().to_vec());
    assert!(failing_checks(&bad).iter().any(|f| f.starts_with("pairing-nondegenerate")));
}

#[test]
fn zero_polarization_breaks_hard_lefschetz() {
    let m = projective_space(2);
    let bad = m.with_xi(vec![q(0)]).unwrap();
    let fails = failing_checks(&bad);
    assert!(fails.iter().any(|f| f.starts_with("hard-lefschetz")), "{fails:?}");
    assert!(!fails.iter().any(|f| f.starts_with("pairing")), "{fails:?}");
}

#[test]
fn shape_errors() {
    let m = projective_space(1);
    assert!(PoincareModel::new(1, vec![1, 0], m.labels().to_vec(), &[], vec![q(1)], vec![q(1)]).is_err());
    assert!(PoincareModel::new(1, m.dims().to_vec(), m.labels().to_vec(), &[], vec![q(1), q(1)], vec![q(1)]).is_err());
    let out_of_range = Product { i: 2, a: 3, j: 0, b: 0, result: vec![q(1)] };
    assert!(PoincareModel::new(1, m.dims().to_vec(), m.labels().to_vec(), &[out_of_range], vec![q(1)], vec![q(1)]).is_err());
}

#[test]
fn blowups_validate_with_additive_euler_characteristic() {
    for p in builtin_pencils() {
        let b = blowup_model(&p);
        assert!(b.model.is_valid(), "{}", p.name);
        // Blowing up the codimension-two base locus adds a copy of its cohomology.
        assert_eq!(b.model.euler_characteristic(), p.x.euler_characteristic() + p.delta.euler_characteristic(), "{}", p.name);
        assert!(b.verify_maps(&p).all_passed(), "{}", p.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kunneth_betti_is_convolution(a in 1usize..=4, b in 1usize..=4) {
        let (pa, pb) = (projective_space(a), projective_space(b));
        let m = kunneth_product(&pa, &pb);
        prop_assert!(m.is_valid());
        for k in 0..=m.top() {
            let expected: usize = (0..=k).filter(|i| *i <= pa.top() && k - i <= pb.top()).map(|i| pa.betti(i) * pb.betti(k - i)).sum();
            prop_assert_eq!(m.betti(k), expected);
        }
        prop_assert_eq!(m.euler_characteristic(), pa.euler_characteristic() * pb.euler_characteristic());
        prop_assert_eq!(polarization_degree(&m), q(binomial((a + b) as u64, a as u64)));
    }

    #[test]
    fn transpose_is_an_adjoint_involution(name in prop::sample::select(vec!["p3", "p1xp2", "elliptic", "dp6"]), seed in 0u64..1000) {
        let m = builtin_model(name).unwrap();
        let ctx = lefschetz::absolute::LefschetzContext::new(&m).unwrap();
        let even = (0..=m.top()).all(|i| i % 2 == 0 || m.betti(i) == 0);
        for u in ctx.sample_operators(4, seed) {
            let t = transpose(&u, &m);
            // Odd classes make the pairing skew, so the double transpose picks up a sign.
            if even {
                prop_assert_eq!(transpose(&t, &m), u.clone());
            }
            // <u x, y> = <x, t(u) y> on basis vectors.
            for i in 0..=m.top() {
                let Some(j) = u.target_of(i) else { continue };
                for a in 0..m.dims()[i] {
                    for b in 0..m.dims()[m.top() - j] {
                        let x = m.basis_vector(i, a);
                        let y = m.basis_vector(m.top() - j, b);
                        let ux = u.block(i).mul_vec(&x);
                        let ty = t.block(m.top() - j).mul_vec(&y);
                        prop_assert_eq!(m.pairing(j, &ux, &y), m.pairing(i, &x, &ty));
                    }
                }
            }
        }
    }

    #[test]
    fn graded_operator_algebra(seed in 0u64..1000) {
        let m = builtin_model("p1xp2").unwrap();
        let ctx = lefschetz::absolute::LefschetzContext::new(&m).unwrap();
        let ops = ctx.sample_operators(3, seed);
        let (u, v, w) = (&ops[0], &ops[1], &ops[2]);
        // compose agrees with full matrices and is associative
        prop_assert_eq!(u.compose(v).to_full(), u.to_full().mul(&v.to_full()));
        prop_assert_eq!(u.compose(v).compose(w), u.compose(&v.compose(w)));
        prop_assert_eq!(u.compose(v).degree(), u.degree() + v.degree());
        let back = GradedOperator::from_full(m.dims(), m.dims(), u.degree(), &u.to_full());
        prop_assert_eq!(back.as_ref(), Some(u));
        let ids: Vec<GradedOperator> = (0..=m.top()).map(|i| m.grading_projector(i)).collect();
        prop_assert_eq!(GradedOperator::sum_all(&ids).unwrap(), GradedOperator::identity(m.dims()));
    }
}
