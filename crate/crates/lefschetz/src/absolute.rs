//! Lefschetz decomposition and the operators built from it: `Λ`, `ᶜΛ`, `H`,
//! grading and primitive projectors, block inverses of `L^{n−i}`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graded::{offsets, GradedOperator};
use crate::linalg::{q, Matrix, Subspace, Q};
use crate::model::{transpose, PoincareModel};
use crate::report::{Report, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error("Hard Lefschetz fails in degree {0}")]
    HardLefschetz(usize),
    #[error("Lefschetz decomposition is not direct in degree {0}")]
    NotDirect(usize),
    #[error("operator is not homogeneous of degree {0}")]
    NotHomogeneous(i32),
}

/// Lefschetz strings for a raising operator on a space graded by complementary
/// projectors `W_0 .. W_{2c}` centred at `c`. Works on full matrices so that
/// it serves both the absolute grading and the relative (pencil) grading.
#[derive(Clone, Debug)]
pub struct StringDecomposition {
    center: usize,
    pieces: Vec<Matrix>,
    raise_powers: Vec<Matrix>,
    primitive: Vec<Subspace>,
    // components[k][j]: x ∈ W_k ↦ x_{k−2j} ∈ P^{k−2j}, zero on the other pieces.
    components: Vec<Vec<Option<Matrix>>>,
}

impl StringDecomposition {
    pub fn new(pieces: Vec<Matrix>, raise: &Matrix, center: usize) -> Result<Self, LefschetzError> {
        assert_eq!(pieces.len(), 2 * center + 1);
        let n = raise.rows();
        let raise_powers: Vec<Matrix> =
            (0..=2 * center + 1).scan(Matrix::identity(n), |acc, _| {
                let cur = acc.clone();
                *acc = acc.mul(raise);
                Some(cur)
            }).collect();
        let images: Vec<Subspace> = pieces.iter().map(Matrix::column_space).collect();

        let mut primitive = Vec::with_capacity(center + 1);
        for k in 0..=center {
            let w = &images[k];
            let lk = &raise_powers[center - k];
            let img = w.image(lk);
            if img.dim() != w.dim() || img != images[2 * center - k] {
                return Err(LefschetzError::HardLefschetz(k));
            }
            let kernel = raise_powers[center - k + 1].kernel();
            primitive.push(kernel.intersection(w).expect("same ambient"));
        }

        let mut components = Vec::with_capacity(2 * center + 1);
        for k in 0..=2 * center {
            let js: Vec<usize> = (k.saturating_sub(center)..=k / 2).filter(|j| k - 2 * j <= center).collect();
            let mut cols: Vec<Vec<Q>> = Vec::new();
            let mut spans = Vec::new();
            for &j in &js {
                let base = primitive[k - 2 * j].basis_matrix();
                let lifted = raise_powers[j].mul(&base);
                spans.push((j, cols.len(), base.cols(), base));
                cols.extend((0..lifted.cols()).map(|c| lifted.col(c)));
            }
            let m = Matrix::from_columns(&cols, n);
            if m.rank() != cols.len() || m.column_space() != images[k] {
                return Err(LefschetzError::NotDirect(k));
            }
            let coords = m.left_inverse().expect("independent columns").mul(&pieces[k]);
            let mut row = vec![None; k / 2 + 1];
            for (j, start, len, base) in spans {
                let select = coords.submatrix(start, 0, len, n);
                row[j] = Some(base.mul(&select));
            }
            components.push(row);
        }
        Ok(StringDecomposition { center, pieces, raise_powers, primitive, components })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    fn size(&self) -> usize {
        self.raise_powers[0].rows()
    }

    pub fn piece(&self, k: usize) -> &Matrix {
        &self.pieces[k]
    }

    pub fn raise_power(&self, j: usize) -> &Matrix {
        &self.raise_powers[j]
    }

    /// `P^k` for `k ≤ c`, as a subspace of the full space.
    pub fn primitive(&self, k: usize) -> &Subspace {
        &self.primitive[k]
    }

    /// `x ↦ x_{k−2j}` on `W_k`, zero elsewhere.
    pub fn component(&self, k: usize, j: usize) -> Option<&Matrix> {
        self.components.get(k)?.get(j)?.as_ref()
    }

    fn weighted_lowering(&self, weight: impl Fn(usize, usize) -> Q) -> Matrix {
        let n = self.size();
        let mut acc = Matrix::zeros(n, n);
        for k in 0..=2 * self.center {
            for j in 1..=k / 2 {
                if let Some(c) = self.component(k, j) {
                    let w = weight(k, j);
                    if !w.is_zero() {
                        acc = acc.add(&self.raise_powers[j - 1].mul(c).scale(&w));
                    }
                }
            }
        }
        acc
    }

    /// `Λx = Σ_{j≥1} L^{j−1} x_{k−2j}`.
    pub fn lambda(&self) -> Matrix {
        self.weighted_lowering(|_, _| q(1))
    }

    /// `ᶜΛx = Σ_{j≥1} j(c−k+j+1) L^{j−1} x_{k−2j}`.
    pub fn clambda(&self) -> Matrix {
        let c = self.center as i64;
        self.weighted_lowering(|k, j| {
            let (k, j) = (k as i64, j as i64);
            q(j * (c - k + j + 1))
        })
    }

    /// `H = Σ (c−k) π^k`.
    pub fn weight_operator(&self) -> Matrix {
        let n = self.size();
        let c = self.center as i64;
        self.pieces
            .iter()
            .enumerate()
            .fold(Matrix::zeros(n, n), |acc, (k, p)| acc.add(&p.scale(&q(c - k as i64))))
    }

    /// `p^k`: the primitive part for `k ≤ c`, the primitive ancestor
    /// `x_{2c−k}` for `k > c`.
    pub fn primitive_projector(&self, k: usize) -> Matrix {
        let j = k.saturating_sub(self.center);
        self.component(k, j).cloned().unwrap_or_else(|| Matrix::zeros(self.size(), self.size()))
    }
}

/// Absolute Lefschetz theory of one model.
#[derive(Clone, Debug)]
pub struct LefschetzContext {
    pub model: PoincareModel,
    pub l: GradedOperator,
    pub strings: StringDecomposition,
}

fn graded(model: &PoincareModel, degree: i32, m: &Matrix) -> GradedOperator {
    GradedOperator::from_full(model.dims(), model.dims(), degree, m)
        .unwrap_or_else(|| panic!("absolute operator is not homogeneous of degree {degree}"))
}

impl LefschetzContext {
    pub fn new(model: &PoincareModel) -> Result<Self, LefschetzError> {
        let pieces: Vec<Matrix> = (0..=model.top()).map(|i| model.grading_projector(i).to_full()).collect();
        let l = model.lefschetz();
        let strings = StringDecomposition::new(pieces, &l.to_full(), model.n())?;
        Ok(LefschetzContext { model: model.clone(), l, strings })
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn dims(&self) -> &[usize] {
        self.model.dims()
    }

    pub fn labels(&self) -> &[Vec<String>] {
        self.model.labels()
    }

    pub fn identity(&self) -> GradedOperator {
        GradedOperator::identity(self.dims())
    }

    pub fn zero(&self, degree: i32) -> GradedOperator {
        GradedOperator::zero(self.dims(), self.dims(), degree)
    }

    pub fn l_power(&self, k: usize) -> GradedOperator {
        self.l.pow(k)
    }

    pub fn kunneth_projector(&self, i: usize) -> GradedOperator {
        if i > self.model.top() {
            return self.zero(0);
        }
        self.model.grading_projector(i)
    }

    pub fn kunneth_projectors(&self) -> Vec<GradedOperator> {
        (0..=self.model.top()).map(|i| self.kunneth_projector(i)).collect()
    }

    /// `P^i` in the coordinates of `H^i`.
    pub fn primitive_subspace(&self, i: usize) -> Subspace {
        if i > self.n() {
            return Subspace::zero(self.dims()[i]);
        }
        let off = offsets(self.dims())[i];
        let d = self.dims()[i];
        let vectors: Vec<Vec<Q>> =
            self.strings.primitive(i).basis().into_iter().map(|v| v[off..off + d].to_vec()).collect();
        Subspace::span(d, &vectors)
    }

    pub fn lambda(&self) -> GradedOperator {
        graded(&self.model, -2, &self.strings.lambda())
    }

    pub fn clambda(&self) -> GradedOperator {
        graded(&self.model, -2, &self.strings.clambda())
    }

    pub fn h_op(&self) -> GradedOperator {
        graded(&self.model, 0, &self.strings.weight_operator())
    }

    /// `p^k` as an operator of degree 0 (`k ≤ n`) or `2n − 2k` (`k > n`).
    pub fn primitive_projector(&self, k: usize) -> GradedOperator {
        if k > self.model.top() {
            return self.zero(0);
        }
        let degree = if k <= self.n() { 0 } else { 2 * self.n() as i32 - 2 * k as i32 };
        graded(&self.model, degree, &self.strings.primitive_projector(k))
    }

    pub fn transpose(&self, u: &GradedOperator) -> GradedOperator {
        transpose(u, &self.model)
    }

    /// `θ^i`: the block inverse of `L^{n−i}: H^i → H^{2n−i}`, placed on `H^{2n−i}`.
    pub fn theta(&self, i: usize) -> GradedOperator {
        let n = self.n();
        assert!(i < n, "theta is defined for i < n");
        let block = self.l_power(n - i).block(i).inverse().expect("Hard Lefschetz holds");
        let mut out = self.zero(-2 * (n - i) as i32);
        out.set_block(2 * n - i, block);
        out
    }

    /// Pure-degree test operators with deterministic pseudo-random entries.
    pub fn sample_operators(&self, count: usize, seed: u64) -> Vec<GradedOperator> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = self.model.top() as i32;
        (0..count)
            .map(|t| {
                let shift = (t as i32 % (2 * top + 1)) - top;
                let mut op = self.zero(shift);
                for i in 0..=self.model.top() {
                    if let Some(tg) = op.target_of(i) {
                        let (r, c) = (self.dims()[tg], self.dims()[i]);
                        let data = (0..r * c).map(|_| q(rng.gen_range(-3..=3))).collect();
                        op.set_block(i, Matrix::from_vec(r, c, data));
                    }
                }
                op
            })
            .collect()
    }

    /// sl₂ brackets, the commutator grading law on samples, and the
    /// symmetry/projector identities of the absolute theory.
    pub fn sl2_verify(&self, samples: usize) -> Report {
        let mut r = Report::new("sl2");
        let labels = self.labels().to_vec();
        let (l, cl, h) = (&self.l, self.clambda(), self.h_op());
        r.check_ops("[cLambda, L] = H", &cl.bracket(l), &h, &labels);
        r.check_ops("[H, L] = -2L", &h.bracket(l), &l.scale(&q(-2)), &labels);
        r.check_ops("[H, cLambda] = 2cLambda", &h.bracket(&cl), &cl.scale(&q(2)), &labels);
        for (t, u) in self.sample_operators(samples, 0x5eed).iter().enumerate() {
            let s = u.degree();
            r.check_ops(format!("[H, u{t}] = -({s})u{t}"), &h.bracket(u), &u.scale(&q(-s as i64)), &labels);
        }
        r.param("samples", samples);
        r
    }

    /// Decomposition, projector and symmetry identities.
    pub fn decomposition_verify(&self) -> Report {
        let mut r = Report::new("decompose");
        let n = self.n();
        let top = self.model.top();
        let labels = self.labels().to_vec();
        let id = self.identity();
        let pis = self.kunneth_projectors();
        let lam = self.lambda();
        let cl = self.clambda();
        let h = self.h_op();

        r.check_ops("sum pi^i = id", &GradedOperator::sum_all(&pis).unwrap(), &id, &labels);
        let mut orth = true;
        for i in 0..=top {
            for j in 0..=top {
                let prod = pis[i].compose(&pis[j]);
                let want = if i == j { pis[i].clone() } else { self.zero(0) };
                orth &= prod == want;
            }
        }
        r.check("pi^i pi^j = delta_ij pi^i", orth, || Witness { location: "grading projectors".into(), lhs: "not orthogonal".into(), rhs: "orthogonal".into() });
        for i in 0..=top {
            r.check_ops(format!("t(pi^{i}) = pi^{}", top - i), &self.transpose(&pis[i]), &pis[top - i], &labels);
        }
        r.check_ops("tL = L", &self.transpose(&self.l), &self.l, &labels);
        r.check_ops("tLambda = Lambda", &self.transpose(&lam), &lam, &labels);
        r.check_ops("tcLambda = cLambda", &self.transpose(&cl), &cl, &labels);
        r.check_ops("tH = -H", &self.transpose(&h), &h.neg(), &labels);

        let ps: Vec<GradedOperator> = (0..=top).map(|k| self.primitive_projector(k)).collect();
        for i in 0..=n {
            let p = &ps[i];
            r.check_ops(format!("p^{i} idempotent"), &p.compose(p), p, &labels);
            r.check_ops(format!("Lambda p^{i} = 0"), &lam.compose(p), &self.zero(-2), &labels);
            let hi = &ps[top - i];
            r.check_ops(format!("p^{} L^{} = p^{i}", top - i, n - i), &hi.compose(&self.l_power(n - i)), p, &labels);
            r.check_ops(format!("L^{} p^{} = t(p^{i})", n - i, top - i), &self.l_power(n - i).compose(hi), &self.transpose(p), &labels);
            r.check_ops(format!("t(p^{}) = p^{}", top - i, top - i), &self.transpose(hi), hi, &labels);
        }
        let low_sum = GradedOperator::sum_all(&ps[..=n]).unwrap();
        r.check_ops("L Lambda = id - sum_{i<=n} p^i", &self.l.compose(&lam), &id.sub(&low_sum), &labels);

        let mut direct_bad = None;
        for i in 0..=top {
            let pieces: Vec<Subspace> = (i.saturating_sub(n)..=i / 2).filter(|j| i - 2 * j <= n).map(|j| self.piece(i, j)).collect();
            let total: usize = pieces.iter().map(Subspace::dim).sum();
            let span = pieces.iter().fold(Subspace::zero(self.dims()[i]), |acc, s| acc.sum(s).expect("same ambient"));
            if total != self.dims()[i] || span.dim() != self.dims()[i] {
                direct_bad = Some((i, total));
                break;
            }
        }
        r.check("H^i = direct sum of L^j P^(i-2j)", direct_bad.is_none(), || {
            let (i, total) = direct_bad.unwrap();
            Witness { location: format!("degree {i}"), lhs: format!("pieces of total dimension {total}"), rhs: format!("dimension {}", self.dims()[i]) }
        });

        let mut orth_pieces = true;
        for i in 0..=top {
            let j = top - i;
            for (ja, pa) in (0..=i / 2).filter(|&a| i - 2 * a <= n).map(|a| (a, i - 2 * a)) {
                for (jb, pb) in (0..=j / 2).filter(|&b| j - 2 * b <= n).map(|b| (b, j - 2 * b)) {
                    if pa == pb {
                        continue;
                    }
                    let ua = self.piece(i, ja);
                    let ub = self.piece(j, jb);
                    for x in ua.basis() {
                        for y in ub.basis() {
                            orth_pieces &= self.model.pairing(i, &x, &y).is_zero();
                        }
                    }
                }
            }
        }
        r.check("L^a P^j pairs to zero against L^b P^k for j != k", orth_pieces, || Witness {
            location: "complementary degrees".into(),
            lhs: "nonzero pairing".into(),
            rhs: "0".into(),
        });

        match crate::linalg::lagrange_projectors(&h.to_full(), &(-(n as i64)..=n as i64).rev().map(q).collect::<Vec<_>>()) {
            Ok(projs) => {
                let ok = projs.iter().enumerate().all(|(k, p)| *p == pis[k].to_full());
                r.check("Lagrange projectors of H are the grading projectors", ok, || Witness {
                    location: "spectrum n..-n".into(),
                    lhs: "interpolated projectors".into(),
                    rhs: "grading projectors".into(),
                });
            }
            Err(e) => r.fail("Lagrange projectors of H are the grading projectors", Witness { location: "H".into(), lhs: e.to_string(), rhs: "semisimple".into() }),
        }
        r
    }

    /// `L^j P^{i−2j}` inside `H^i`.
    pub fn piece(&self, i: usize, j: usize) -> Subspace {
        let p = self.primitive_subspace(i - 2 * j);
        p.image(self.l_power(j).block(i - 2 * j))
    }
}
