//! Graded Frobenius algebras over the rationals with a polarization class.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graded::GradedOperator;
use crate::linalg::{q, Matrix, Q};
use crate::report::{fmt_vec, Report, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("model shape: {0}")]
    Shape(String),
}

/// One structure constant: `e^i_a · e^j_b = result` (a vector in degree i+j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub i: usize,
    pub a: usize,
    pub j: usize,
    pub b: usize,
    pub result: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareModel {
    n: usize,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    // mult[i][j] has one column per pair (a, b), index a * dims[j] + b.
    mult: Vec<Vec<Matrix>>,
    trace: Vec<Q>,
    xi: Vec<Q>,
}

fn sign(i: usize, j: usize) -> Q {
    if (i * j) % 2 == 1 {
        -Q::one()
    } else {
        Q::one()
    }
}

impl PoincareModel {
    pub fn new(
        n: usize,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        products: &[Product],
        trace: Vec<Q>,
        xi: Vec<Q>,
    ) -> Result<Self, ModelError> {
        let top = 2 * n;
        if dims.len() != top + 1 {
            return Err(ModelError::Shape(format!("expected {} degrees, found {}", top + 1, dims.len())));
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, d)| l.len() != *d) {
            return Err(ModelError::Shape("labels do not match dims".into()));
        }
        if trace.len() != dims[top] {
            return Err(ModelError::Shape("trace length differs from top-degree dimension".into()));
        }
        let xi_len = dims.get(2).copied().unwrap_or(0);
        if xi.len() != xi_len {
            return Err(ModelError::Shape("polarization length differs from degree-2 dimension".into()));
        }
        let mut mult: Vec<Vec<Matrix>> = (0..=top)
            .map(|i| {
                (0..=top)
                    .map(|j| {
                        let rows = if i + j <= top { dims[i + j] } else { 0 };
                        Matrix::zeros(rows, dims[i] * dims[j])
                    })
                    .collect()
            })
            .collect();
        for p in products {
            if p.i > top || p.j > top || p.a >= dims[p.i] || p.b >= dims[p.j] {
                return Err(ModelError::Shape(format!("product index ({},{};{},{}) out of range", p.i, p.a, p.j, p.b)));
            }
            let k = p.i + p.j;
            let expected = if k <= top { dims[k] } else { 0 };
            if p.result.len() != expected {
                return Err(ModelError::Shape(format!(
                    "product ({},{};{},{}) has {} coordinates, expected {expected}",
                    p.i,
                    p.a,
                    p.j,
                    p.b,
                    p.result.len()
                )));
            }
            let col = p.a * dims[p.j] + p.b;
            for (r, x) in p.result.iter().enumerate() {
                mult[p.i][p.j].set(r, col, x.clone());
            }
        }
        Ok(PoincareModel { n, dims, labels, mult, trace, xi })
    }

    /// Same ring and trace with another polarization class.
    pub fn with_xi(&self, xi: Vec<Q>) -> Result<Self, ModelError> {
        if xi.len() != self.xi.len() {
            return Err(ModelError::Shape("polarization length differs from degree-2 dimension".into()));
        }
        Ok(PoincareModel { xi, ..self.clone() })
    }

    pub fn with_labels(&self, labels: Vec<Vec<String>>) -> Result<Self, ModelError> {
        if labels.len() != self.dims.len() || labels.iter().zip(&self.dims).any(|(l, d)| l.len() != *d) {
            return Err(ModelError::Shape("labels do not match dims".into()));
        }
        Ok(PoincareModel { labels, ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> usize {
        2 * self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn trace(&self) -> &[Q] {
        &self.trace
    }

    pub fn xi(&self) -> &[Q] {
        &self.xi
    }

    pub fn betti(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// All nonzero structure constants in (i, a, j, b) order.
    pub fn products(&self) -> Vec<Product> {
        let mut out = Vec::new();
        for i in 0..=self.top() {
            for j in 0..=self.top() - i {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let result = self.mult[i][j].col(a * self.dims[j] + b);
                        if result.iter().any(|x| !x.is_zero()) {
                            out.push(Product { i, a, j, b, result });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dims[i]];
        v[a] = Q::one();
        v
    }

    pub fn unit(&self) -> Vec<Q> {
        vec![Q::one()]
    }

    /// Product of homogeneous elements; `None` above the top degree.
    pub fn product(&self, i: usize, x: &[Q], j: usize, y: &[Q]) -> Option<Vec<Q>> {
        if i + j > self.top() {
            return None;
        }
        let dj = self.dims[j];
        let mut coeffs = vec![Q::zero(); self.dims[i] * dj];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if !yb.is_zero() {
                    coeffs[a * dj + b] = xa * yb;
                }
            }
        }
        Some(self.mult[i][j].mul_vec(&coeffs))
    }

    pub fn integrate(&self, top_class: &[Q]) -> Q {
        top_class.iter().zip(&self.trace).map(|(a, b)| a * b).sum()
    }

    /// Pairing matrix between H^i and H^{2n−i}.
    pub fn gram(&self, i: usize) -> Matrix {
        let j = self.top() - i;
        let mut g = Matrix::zeros(self.dims[i], self.dims[j]);
        for a in 0..self.dims[i] {
            for b in 0..self.dims[j] {
                let col = self.mult[i][j].col(a * self.dims[j] + b);
                g.set(a, b, self.integrate(&col));
            }
        }
        g
    }

    pub fn pairing(&self, i: usize, x: &[Q], y: &[Q]) -> Q {
        let j = self.top() - i;
        self.integrate(&self.product(i, x, j, y).expect("complementary degrees"))
    }

    /// Left multiplication by a homogeneous class of degree `k`.
    pub fn mult_op(&self, k: usize, class: &[Q]) -> GradedOperator {
        let mut op = GradedOperator::zero(&self.dims, &self.dims, k as i32);
        for i in 0..=self.top() {
            if i + k > self.top() {
                continue;
            }
            let cols: Vec<Vec<Q>> = (0..self.dims[i])
                .map(|b| self.product(k, class, i, &self.basis_vector(i, b)).expect("in range"))
                .collect();
            op.set_block(i, Matrix::from_columns(&cols, self.dims[i + k]));
        }
        op
    }

    /// Cup product with the polarization.
    pub fn lefschetz(&self) -> GradedOperator {
        self.mult_op(2, &self.xi)
    }

    pub fn grading_projector(&self, i: usize) -> GradedOperator {
        GradedOperator::identity(&self.dims).restrict_to(i)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new("validate");
        let top = self.top();
        let symmetric = (0..=top).find(|&i| self.dims[i] != self.dims[top - i]);
        r.check("poincare-symmetry", self.dims[0] == 1 && symmetric.is_none(), || Witness {
            location: format!("degree {}", symmetric.unwrap_or(0)),
            lhs: format!("{:?}", self.dims),
            rhs: "dims[i] = dims[2n-i], dims[0] = 1".into(),
        });
        if self.dims[0] != 1 || symmetric.is_some() {
            return r;
        }

        let mut unit_bad = None;
        'unit: for i in 0..=top {
            for a in 0..self.dims[i] {
                let e = self.basis_vector(i, a);
                let left = self.product(0, &self.unit(), i, &e).unwrap();
                let right = self.product(i, &e, 0, &self.unit()).unwrap();
                if left != e || right != e {
                    unit_bad = Some((i, a, left, e));
                    break 'unit;
                }
            }
        }
        r.check("unit", unit_bad.is_none(), || {
            let (i, a, l, e) = unit_bad.clone().unwrap();
            Witness { location: format!("H^{i} basis {a} ({})", self.labels[i][a]), lhs: fmt_vec(&l), rhs: fmt_vec(&e) }
        });

        let mut comm_bad = None;
        'comm: for i in 0..=top {
            for j in 0..=top - i {
                for a in 0..self.dims[i] {
                    for b in 0..self.dims[j] {
                        let x = self.basis_vector(i, a);
                        let y = self.basis_vector(j, b);
                        let xy = self.product(i, &x, j, &y).unwrap();
                        let yx: Vec<Q> =
                            self.product(j, &y, i, &x).unwrap().iter().map(|v| v * sign(i, j)).collect();
                        if xy != yx {
                            comm_bad = Some((i, a, j, b, xy, yx));
                            break 'comm;
                        }
                    }
                }
            }
        }
        r.check("graded-commutativity", comm_bad.is_none(), || {
            let (i, a, j, b, xy, yx) = comm_bad.clone().unwrap();
            Witness {
                location: format!("{} * {}", self.labels[i][a], self.labels[j][b]),
                lhs: fmt_vec(&xy),
                rhs: fmt_vec(&yx),
            }
        });

        let mut assoc_bad = None;
        'assoc: for i in 0..=top {
            for j in 0..=top - i {
                for k in 0..=top - i - j {
                    for a in 0..self.dims[i] {
                        for b in 0..self.dims[j] {
                            for c in 0..self.dims[k] {
                                let x = self.basis_vector(i, a);
                                let y = self.basis_vector(j, b);
                                let z = self.basis_vector(k, c);
                                let xy = self.product(i, &x, j, &y).unwrap();
                                let yz = self.product(j, &y, k, &z).unwrap();
                                let lhs = self.product(i + j, &xy, k, &z).unwrap();
                                let rhs = self.product(i, &x, j + k, &yz).unwrap();
                                if lhs != rhs {
                                    assoc_bad = Some(((i, a), (j, b), (k, c), lhs, rhs));
                                    break 'assoc;
                                }
                            }
                        }
                    }
                }
            }
        }
        r.check("associativity", assoc_bad.is_none(), || {
            let ((i, a), (j, b), (k, c), l, rr) = assoc_bad.clone().unwrap();
            Witness {
                location: format!("({} * {}) * {}", self.labels[i][a], self.labels[j][b], self.labels[k][c]),
                lhs: fmt_vec(&l),
                rhs: fmt_vec(&rr),
            }
        });

        for i in 0..=top {
            let g = self.gram(i);
            let rank = g.rank();
            r.check(format!("pairing-nondegenerate H^{i} x H^{}", top - i), rank == self.dims[i], || Witness {
                location: format!("degree {i} x {}", top - i),
                lhs: format!("rank {rank}"),
                rhs: format!("dimension {}", self.dims[i]),
            });
        }

        let l = self.lefschetz();
        for i in 0..self.n {
            let block = l.pow(self.n - i).block(i).clone();
            let rank = block.rank();
            r.check(format!("hard-lefschetz H^{i}"), rank == self.dims[i], || Witness {
                location: format!("L^{} on H^{i}", self.n - i),
                lhs: format!("rank {rank}"),
                rhs: format!("dimension {}", self.dims[i]),
            });
        }
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_passed()
    }
}

/// The pairing-adjoint `ᵗu` of `u: src → tgt`, characterized by
/// `⟨u x, y⟩_tgt = ⟨x, ᵗu y⟩_src`. Its degree is `deg u + 2(n_src − n_tgt)`.
pub fn adjoint(u: &GradedOperator, src: &PoincareModel, tgt: &PoincareModel) -> GradedOperator {
    assert_eq!(u.src_dims(), src.dims());
    assert_eq!(u.tgt_dims(), tgt.dims());
    let d = u.degree();
    let degree = d + 2 * (src.n() as i32 - tgt.n() as i32);
    let mut out = GradedOperator::zero(tgt.dims(), src.dims(), degree);
    for i in 0..=src.top() {
        let Some(t) = u.target_of(i) else { continue };
        let s = tgt.top() - t;
        let g_src_inv = src.gram(i).inverse().expect("nondegenerate pairing");
        let block = g_src_inv.mul(&u.block(i).transpose()).mul(&tgt.gram(t));
        out.set_block(s, block);
    }
    out
}

/// Self-adjoint transpose on one model.
pub fn transpose(u: &GradedOperator, m: &PoincareModel) -> GradedOperator {
    adjoint(u, m, m)
}

pub fn projective_space(n: usize) -> PoincareModel {
    projective_space_named(n, "h")
}

/// Projective space with hyperplane class named `var`.
pub fn projective_space_named(n: usize, var: &str) -> PoincareModel {
    let dims = (0..=2 * n).map(|i| usize::from(i % 2 == 0)).collect::<Vec<_>>();
    let labels = (0..=2 * n)
        .map(|i| {
            if i % 2 == 1 {
                Vec::new()
            } else {
                vec![match i / 2 {
                    0 => "1".to_string(),
                    1 => var.to_string(),
                    k => format!("{var}^{k}"),
                }]
            }
        })
        .collect();
    let mut products = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            products.push(Product { i: 2 * a, a: 0, j: 2 * b, b: 0, result: vec![q(1)] });
        }
    }
    let xi = if n >= 1 { vec![q(1)] } else { Vec::new() };
    PoincareModel::new(n, dims, labels, &products, vec![q(1)], xi).expect("well-formed")
}

/// The one-point model (unit for the Künneth product).
pub fn point() -> PoincareModel {
    PoincareModel::new(0, vec![1], vec![vec!["1".into()]], &[Product { i: 0, a: 0, j: 0, b: 0, result: vec![q(1)] }], vec![q(1)], Vec::new())
        .expect("well-formed")
}

/// Graded tensor product with the Koszul sign
/// `(a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'`.
pub fn kunneth_product(a: &PoincareModel, b: &PoincareModel) -> PoincareModel {
    let n = a.n() + b.n();
    let top = 2 * n;
    // index[k] lists (i, x, j, y) with i + j = k in basis order.
    let mut index: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); top + 1];
    for (k, slot) in index.iter_mut().enumerate() {
        // Descending in the first factor, so first-factor classes come first.
        for i in (0..=a.top().min(k)).rev() {
            let j = k - i;
            if j > b.top() {
                continue;
            }
            for x in 0..a.dims()[i] {
                for y in 0..b.dims()[j] {
                    slot.push((i, x, j, y));
                }
            }
        }
    }
    let dims: Vec<usize> = index.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = index
        .iter()
        .map(|slot| {
            slot.iter()
                .map(|&(i, x, j, y)| match (a.labels()[i][x].as_str(), b.labels()[j][y].as_str()) {
                    ("1", "1") => "1".to_string(),
                    (l, "1") => l.to_string(),
                    ("1", r) => r.to_string(),
                    (l, r) => format!("{l}*{r}"),
                })
                .collect()
        })
        .collect();
    let pos = |k: usize, key: (usize, usize, usize, usize)| index[k].iter().position(|e| *e == key).unwrap();
    let mut products = Vec::new();
    for k1 in 0..=top {
        for k2 in 0..=top - k1 {
            for (p1, &(i1, x1, j1, y1)) in index[k1].iter().enumerate() {
                for (p2, &(i2, x2, j2, y2)) in index[k2].iter().enumerate() {
                    let mut result = vec![Q::zero(); dims[k1 + k2]];
                    if i1 + i2 <= a.top() && j1 + j2 <= b.top() {
                        let ax = a.product(i1, &a.basis_vector(i1, x1), i2, &a.basis_vector(i2, x2)).unwrap();
                        let by = b.product(j1, &b.basis_vector(j1, y1), j2, &b.basis_vector(j2, y2)).unwrap();
                        let s = sign(j1, i2);
                        for (u, cu) in ax.iter().enumerate() {
                            if cu.is_zero() {
                                continue;
                            }
                            for (v, cv) in by.iter().enumerate() {
                                if !cv.is_zero() {
                                    result[pos(k1 + k2, (i1 + i2, u, j1 + j2, v))] += cu * cv * &s;
                                }
                            }
                        }
                    }
                    if result.iter().any(|x| !x.is_zero()) {
                        products.push(Product { i: k1, a: p1, j: k2, b: p2, result });
                    }
                }
            }
        }
    }
    let mut trace = vec![Q::zero(); dims[top]];
    for (p, &(i, x, j, y)) in index[top].iter().enumerate() {
        debug_assert_eq!((i, j), (a.top(), b.top()));
        trace[p] = &a.trace()[x] * &b.trace()[y];
    }
    let mut xi = vec![Q::zero(); dims.get(2).copied().unwrap_or(0)];
    if a.n() >= 1 {
        for (x, c) in a.xi().iter().enumerate() {
            xi[pos(2, (2, x, 0, 0))] += c;
        }
    }
    if b.n() >= 1 {
        for (y, c) in b.xi().iter().enumerate() {
            xi[pos(2, (0, 0, 2, y))] += c;
        }
    }
    PoincareModel::new(n, dims, labels, &products, trace, xi).expect("well-formed")
}
