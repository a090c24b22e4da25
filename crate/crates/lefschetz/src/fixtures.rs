//! Built-in models and pencils.

use crate::graded::GradedOperator;
use crate::linalg::{q, Matrix, Q};
use crate::model::{kunneth_product, projective_space, projective_space_named, PoincareModel, Product};
use crate::section::PencilDatum;

pub const PENCIL_NAMES: [&str; 3] = ["hyperplane-p3", "quadric-p3", "p1cubed"];

/// Default pencil multiplier for the built-in pencils.
pub const DEFAULT_M: i64 = 2;

fn labels(names: &[&[&str]]) -> Vec<Vec<String>> {
    names.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect()
}

fn unit_products(dims: &[usize]) -> Vec<Product> {
    let mut out = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        for a in 0..d {
            let mut e = vec![q(0); d];
            e[a] = q(1);
            out.push(Product { i: 0, a: 0, j: i, b: a, result: e.clone() });
            if i > 0 {
                out.push(Product { i, a, j: 0, b: 0, result: e });
            }
        }
    }
    out
}

/// A surface whose degree-2 classes multiply by the symmetric matrix `gram`
/// into a one-dimensional top degree with trace 1.
pub fn surface(names: &[&str], gram: &[&[i64]], xi: &[i64]) -> PoincareModel {
    let b2 = names.len();
    let dims = vec![1, 0, b2, 0, 1];
    let mut products = unit_products(&dims);
    for a in 0..b2 {
        for b in 0..b2 {
            products.push(Product { i: 2, a, j: 2, b, result: vec![q(gram[a][b])] });
        }
    }
    let labels = vec![vec!["1".to_string()], vec![], names.iter().map(|s| s.to_string()).collect(), vec![], vec!["pt".to_string()]];
    PoincareModel::new(2, dims, labels, &products, vec![q(1)], xi.iter().map(|&v| q(v)).collect()).expect("well-formed")
}

/// A genus-one curve: `H^1 = ⟨e, f⟩` with `e·f = w = −f·e` and `∫w = 1`.
pub fn elliptic_curve(degree: i64) -> PoincareModel {
    let dims = vec![1, 2, 1];
    let mut products = unit_products(&dims);
    products.push(Product { i: 1, a: 0, j: 1, b: 1, result: vec![q(1)] });
    products.push(Product { i: 1, a: 1, j: 1, b: 0, result: vec![q(-1)] });
    PoincareModel::new(1, dims, labels(&[&["1"], &["e", "f"], &["w"]]), &products, vec![q(1)], vec![q(degree)])
        .expect("well-formed")
}

pub fn quadric_surface() -> PoincareModel {
    surface(&["h1", "h2"], &[&[0, 1], &[1, 0]], &[1, 1])
}

/// Degree-6 del Pezzo surface in the basis `{f1, f2, f3, E1}`.
pub fn del_pezzo_6() -> PoincareModel {
    surface(
        &["f1", "f2", "f3", "E1"],
        &[&[0, 1, 1, 1], &[1, 0, 1, 0], &[1, 1, 0, 0], &[1, 0, 0, -1]],
        &[1, 1, 1, 0],
    )
}

pub fn p1_cubed() -> PoincareModel {
    let a = projective_space_named(1, "h1");
    let b = projective_space_named(1, "h2");
    let c = projective_space_named(1, "h3");
    kunneth_product(&kunneth_product(&a, &b), &c)
}

fn restriction(src: &PoincareModel, tgt: &PoincareModel, blocks: Vec<(usize, Matrix)>) -> GradedOperator {
    GradedOperator::from_blocks(src.dims(), tgt.dims(), 0, blocks)
}

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

pub fn hyperplane_p3() -> PencilDatum {
    let (x, y, d) = (projective_space(3), projective_space(2), projective_space(1));
    let iota = restriction(&x, &y, vec![(0, m(&[&[1]])), (2, m(&[&[1]])), (4, m(&[&[1]]))]);
    let h = restriction(&y, &d, vec![(0, m(&[&[1]])), (2, m(&[&[1]]))]);
    PencilDatum::new("hyperplane-p3", x, y, d, iota, h, DEFAULT_M).expect("consistent fixture")
}

/// Pencil of quadrics in P³ (`ξ_X = 2h`), base locus an elliptic quartic.
pub fn quadric_p3() -> PencilDatum {
    let x = projective_space(3).with_xi(vec![q(2)]).expect("degree-2 class");
    let y = quadric_surface().with_xi(vec![q(2), q(2)]).expect("degree-2 class");
    let d = elliptic_curve(8);
    let iota = restriction(&x, &y, vec![(0, m(&[&[1]])), (2, m(&[&[1], &[1]])), (4, m(&[&[2]]))]);
    let h = restriction(&y, &d, vec![(0, m(&[&[1]])), (2, m(&[&[2, 2]]))]);
    PencilDatum::new("quadric-p3", x, y, d, iota, h, DEFAULT_M).expect("consistent fixture")
}

/// The (1,1,1) pencil on (P¹)³ with a degree-6 del Pezzo member.
pub fn p1cubed() -> PencilDatum {
    let x = p1_cubed();
    let y = del_pezzo_6();
    let d = elliptic_curve(6);
    let iota = restriction(
        &x,
        &y,
        vec![
            (0, m(&[&[1]])),
            (2, m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])),
            (4, m(&[&[1, 1, 1]])),
        ],
    );
    let h = restriction(&y, &d, vec![(0, m(&[&[1]])), (2, m(&[&[2, 2, 2, 1]]))]);
    PencilDatum::new("p1cubed", x, y, d, iota, h, DEFAULT_M).expect("consistent fixture")
}

pub fn builtin_pencils() -> Vec<PencilDatum> {
    vec![hyperplane_p3(), quadric_p3(), p1cubed()]
}

pub fn builtin_pencil(name: &str) -> Option<PencilDatum> {
    match name {
        "hyperplane-p3" => Some(hyperplane_p3()),
        "quadric-p3" => Some(quadric_p3()),
        "p1cubed" => Some(p1cubed()),
        _ => None,
    }
}

/// Models addressable by name: `pN`, `pAxpB`, `p1xp1xp1`, `quadric-surface`,
/// `dp6`, `elliptic`, and `blowup-<pencil>`.
pub fn builtin_model(name: &str) -> Option<PoincareModel> {
    let proj = |s: &str| -> Option<usize> { s.strip_prefix('p')?.parse().ok().filter(|&n| (1..=12).contains(&n)) };
    if let Some(pencil) = name.strip_prefix("blowup-") {
        return builtin_pencil(pencil).map(|p| crate::blowup::blowup_model(&p).model);
    }
    match name {
        "p1xp1xp1" => return Some(p1_cubed()),
        "quadric-surface" => return Some(quadric_surface()),
        "dp6" => return Some(del_pezzo_6()),
        "elliptic" => return Some(elliptic_curve(1)),
        _ => {}
    }
    if let Some((a, b)) = name.split_once('x') {
        let a = projective_space_named(proj(a)?, "a");
        let b = projective_space_named(proj(b)?, "b");
        return Some(kunneth_product(&a, &b));
    }
    proj(name).map(projective_space)
}

/// Model names used by the model-level acceptance battery.
pub fn model_battery() -> Vec<(String, PoincareModel)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("p{n}"), projective_space(n)));
    }
    for a in 1..=6 {
        for b in a..=6 {
            let name = format!("p{a}xp{b}");
            let model = builtin_model(&name).expect("product name");
            out.push((name, model));
        }
    }
    out
}

pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}
