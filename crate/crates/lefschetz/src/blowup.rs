//! Cohomology of the blow-up of `X` along the base locus `Δ` of a pencil:
//! `H^k(X̃) = H^k(X) ⊕ H^{k−2}(Δ)`.

use num_traits::{One, Zero};

use crate::graded::GradedOperator;
use crate::linalg::{q, Matrix, Q};
use crate::model::{adjoint, PoincareModel, Product};
use crate::report::{fmt_vec, Report, Witness};
use crate::section::PencilDatum;

#[derive(Clone, Debug)]
pub struct BlowUp {
    pub model: PoincareModel,
    /// `f*: H(X) → H(X̃)`, `x ↦ x ⊕ 0`.
    pub f_upper: GradedOperator,
    /// `f_*: H(X̃) → H(X)`, `x ⊕ y ↦ x`.
    pub f_lower: GradedOperator,
    /// `k*: H(X̃) → H(Y)`, `x ⊕ y ↦ ι*x + h_*y`.
    pub k_upper: GradedOperator,
    /// `k_*: H(Y) → H(X̃)`, adjoint of `k*`.
    pub k_lower: GradedOperator,
    /// `L(x ⊕ y) = L_X x ⊕ L_Δ y` (not the cup product with `ξ_X̃`).
    pub split_lefschetz: GradedOperator,
}

/// Dimension of the `Δ` summand in degree `k`.
fn delta_dim(p: &PencilDatum, k: usize) -> usize {
    if k >= 2 && k - 2 <= p.delta.top() {
        p.delta.dims()[k - 2]
    } else {
        0
    }
}

/// Splits a degree-`k` vector of `X̃` into its `X` and `Δ` parts.
pub fn split(p: &PencilDatum, k: usize, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let dx = p.x.dims()[k];
    (v[..dx].to_vec(), v[dx..].to_vec())
}

pub fn join(x: &[Q], y: &[Q]) -> Vec<Q> {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    v
}

pub fn blowup_model(p: &PencilDatum) -> BlowUp {
    let n = p.n();
    let top = 2 * n;
    let (x, delta) = (&p.x, &p.delta);
    let g = p.gysin_maps();
    let l_delta = delta.lefschetz();

    let dims: Vec<usize> = (0..=top).map(|k| x.dims()[k] + delta_dim(p, k)).collect();
    let labels: Vec<Vec<String>> = (0..=top)
        .map(|k| {
            let mut l = x.labels()[k].clone();
            if delta_dim(p, k) > 0 {
                l.extend(delta.labels()[k - 2].iter().map(|s| format!("D:{s}")));
            }
            l
        })
        .collect();

    // Product of homogeneous X̃ elements given by their split parts.
    let mul = |i: usize, a: &[Q], b: &[Q], j: usize, c: &[Q], d: &[Q]| -> Vec<Q> {
        let k = i + j;
        let mut xs = vec![Q::zero(); x.dims()[k]];
        let mut ds = vec![Q::zero(); delta_dim(p, k)];
        let add = |acc: &mut Vec<Q>, v: Vec<Q>| {
            for (s, t) in acc.iter_mut().zip(v) {
                *s += t;
            }
        };
        add(&mut xs, x.product(i, a, j, c).unwrap());
        // (a ⊕ 0)(0 ⊕ d) = 0 ⊕ j*(a) d
        if !d.is_empty() && k - 2 <= delta.top() {
            let ja = g.j_upper.block(i).mul_vec(a);
            add(&mut ds, delta.product(i, &ja, j - 2, d).unwrap());
        }
        // (0 ⊕ b)(c ⊕ 0) = 0 ⊕ b j*(c)
        if !b.is_empty() && k - 2 <= delta.top() {
            let jc = g.j_upper.block(j).mul_vec(c);
            add(&mut ds, delta.product(i - 2, b, j, &jc).unwrap());
        }
        // (0 ⊕ b)(0 ⊕ d) = −j_*(bd) ⊕ 2 L_Δ(bd)
        if !b.is_empty() && !d.is_empty() && k - 4 <= delta.top() {
            let bd = delta.product(i - 2, b, j - 2, d).unwrap();
            add(&mut xs, g.j_lower.block(k - 4).mul_vec(&bd).iter().map(|v| -v).collect());
            if k - 2 <= delta.top() {
                add(&mut ds, l_delta.block(k - 4).mul_vec(&bd).iter().map(|v| v * q(2)).collect());
            }
        }
        join(&xs, &ds)
    };

    let mut products = Vec::new();
    for i in 0..=top {
        for j in 0..=top - i {
            for a in 0..dims[i] {
                for b in 0..dims[j] {
                    let mut ea = vec![Q::zero(); dims[i]];
                    ea[a] = Q::one();
                    let mut eb = vec![Q::zero(); dims[j]];
                    eb[b] = Q::one();
                    let (ax, ay) = split(p, i, &ea);
                    let (bx, by) = split(p, j, &eb);
                    let result = mul(i, &ax, &ay, j, &bx, &by);
                    if result.iter().any(|v| !v.is_zero()) {
                        products.push(Product { i, a, j, b, result });
                    }
                }
            }
        }
    }

    let trace = x.trace().to_vec();
    let m = q(p.m);
    let xi_x: Vec<Q> = x.xi().iter().map(|c| c * (&m + Q::one())).collect();
    let xi = join(&xi_x, &[-Q::one()]);
    let model = PoincareModel::new(n, dims.clone(), labels, &products, trace, xi).expect("well-formed blow-up");

    let mut f_upper = GradedOperator::zero(x.dims(), &dims, 0);
    let mut k_upper = GradedOperator::zero(&dims, p.y.dims(), 0);
    let mut split_l = GradedOperator::zero(&dims, &dims, 2);
    let l_x = x.lefschetz();
    for k in 0..=top {
        let (dx, dd) = (x.dims()[k], delta_dim(p, k));
        let mut fu = Matrix::zeros(dims[k], dx);
        fu.put(0, 0, &Matrix::identity(dx));
        f_upper.set_block(k, fu);
        if k <= p.y.top() {
            let mut ku = Matrix::zeros(p.y.dims()[k], dims[k]);
            ku.put(0, 0, p.iota.block(k));
            if dd > 0 {
                ku.put(0, dx, g.h_lower.block(k - 2));
            }
            k_upper.set_block(k, ku);
        }
        if k + 2 <= top {
            let mut lb = Matrix::zeros(dims[k + 2], dims[k]);
            lb.put(0, 0, l_x.block(k));
            if dd > 0 && k <= delta.top() {
                lb.put(x.dims()[k + 2], dx, l_delta.block(k - 2));
            }
            split_l.set_block(k, lb);
        }
    }
    let f_lower = adjoint(&f_upper, x, &model);
    let k_lower = adjoint(&k_upper, &model, &p.y);
    BlowUp { model, f_upper, f_lower, k_upper, k_lower, split_lefschetz: split_l }
}

impl BlowUp {
    /// `ρ*[t] = ξ_X ⊕ −1_Δ`, the class of a fibre.
    pub fn fibre_class(&self, p: &PencilDatum) -> Vec<Q> {
        join(p.x.xi(), &[-Q::one()])
    }

    /// Checks the map identities relating `X̃` to `X`, `Y` and `Δ`.
    pub fn verify_maps(&self, p: &PencilDatum) -> Report {
        let mut r = Report::new("blowup-maps");
        let g = p.gysin_maps();
        let xt = &self.model;
        r.check_ops("f_* f* = id", &self.f_lower.compose(&self.f_upper), &GradedOperator::identity(p.x.dims()), p.x.labels());
        r.check_ops("k* f* = iota*", &self.k_upper.compose(&self.f_upper), &p.iota, p.x.labels());
        r.check_ops("f_* k_* = iota_*", &self.f_lower.compose(&self.k_lower), &g.iota_lower, p.y.labels());

        let mut f_lower_formula = GradedOperator::zero(xt.dims(), p.x.dims(), 0);
        let mut k_lower_formula = GradedOperator::zero(p.y.dims(), xt.dims(), 2);
        for k in 0..=xt.top() {
            let mut b = Matrix::zeros(p.x.dims()[k], xt.dims()[k]);
            b.put(0, 0, &Matrix::identity(p.x.dims()[k]));
            f_lower_formula.set_block(k, b);
            if k + 2 <= xt.top() && k <= p.y.top() {
                let mut kb = Matrix::zeros(xt.dims()[k + 2], p.y.dims()[k]);
                kb.put(0, 0, g.iota_lower.block(k));
                if k <= p.delta.top() {
                    kb.put(p.x.dims()[k + 2], 0, &p.h.block(k).neg());
                }
                k_lower_formula.set_block(k, kb);
            }
        }
        r.check_ops("f_*(x+y) = x", &self.f_lower, &f_lower_formula, xt.labels());
        r.check_ops("k_* y = iota_* y + (-h* y)", &self.k_lower, &k_lower_formula, p.y.labels());
        r.check("fibre isotropy <k_* a, k_* b> = 0", self.k_upper.compose(&self.k_lower).is_zero(), || Witness {
            location: "k* k_*".into(),
            lhs: "nonzero".into(),
            rhs: "0".into(),
        });

        let t = self.fibre_class(p);
        let t_img = self.k_lower.block(0).mul_vec(&p.y.unit());
        r.check("k_*(1_Y) = xi_X + (-1_Delta)", t_img == t, || Witness {
            location: "H^2".into(),
            lhs: fmt_vec(&t_img),
            rhs: fmt_vec(&t),
        });
        let t2 = xt.product(2, &t, 2, &t).unwrap();
        r.check("fibre class squares to zero", t2.iter().all(Zero::is_zero), || Witness {
            location: "H^4".into(),
            lhs: fmt_vec(&t2),
            rhs: "0".into(),
        });
        let xi_expected: Vec<Q> = {
            let m = q(p.m);
            let base: Vec<Q> = p.x.xi().iter().map(|c| c * &m).collect();
            base.iter().zip(&t).map(|(a, b)| a + b).chain(t[base.len()..].iter().cloned()).collect()
        };
        r.check("xi = m f*(xi_X) + fibre class", xt.xi() == xi_expected.as_slice(), || Witness {
            location: "H^2".into(),
            lhs: fmt_vec(xt.xi()),
            rhs: fmt_vec(&xi_expected),
        });
        r
    }
}
