//! The Leray filtration of a pencil on the blow-up `X̃`, its splitting
//! projectors `π^{i,ε}`, the relative grading `π^i_ρ`, `H_ρ`, and the
//! compatibilization map `ψ`.

use num_traits::Zero;

use crate::blowup::{blowup_model, BlowUp};
use crate::graded::GradedOperator;
use crate::linalg::{projector_along, q, Matrix, Subspace, Q};
use crate::model::{transpose, PoincareModel};
use crate::report::{Report, Witness};
use crate::section::{Gysin, PencilDatum};

/// Filtration pieces `ε = 0, 1, 2`.
pub const EPSILONS: [usize; 3] = [0, 1, 2];

#[derive(Clone, Debug)]
pub struct LerayStructure {
    pub pencil: PencilDatum,
    pub blowup: BlowUp,
    pub gysin: Gysin,
    /// `P^i(X) = Ker L_X^{n−i+1} ∩ H^i(X)` for `i ≤ n`.
    pub primitive_x: Vec<Subspace>,
    /// `F¹ = Ker k*` per degree of `X̃`.
    pub f1: Vec<Subspace>,
    /// `F² = Im k_*` per degree of `X̃`.
    pub f2: Vec<Subspace>,
    /// `(A^i, B^i, C^i)` for degrees `i ≤ n`.
    pub abc: Vec<[Subspace; 3]>,
    // split[k][ε] = π^{k,ε}, a degree-0 operator supported on degree k + ε.
    split: Vec<[GradedOperator; 3]>,
}

impl LerayStructure {
    pub fn new(pencil: &PencilDatum) -> Result<Self, String> {
        let blowup = blowup_model(pencil);
        let gysin = pencil.gysin_maps();
        let n = pencil.n();
        let xt = &blowup.model;
        let dims = xt.dims().to_vec();
        let top = 2 * n;

        let lx = pencil.x.lefschetz();
        let primitive_x: Vec<Subspace> = (0..=n).map(|i| lx.pow(n - i + 1).block(i).kernel()).collect();

        let f1: Vec<Subspace> = (0..=top)
            .map(|k| if k <= pencil.y.top() { blowup.k_upper.block(k).kernel() } else { Subspace::full(dims[k]) })
            .collect();
        let f2: Vec<Subspace> = (0..=top)
            .map(|k| if k >= 2 { blowup.k_lower.block(k - 2).column_space() } else { Subspace::zero(dims[k]) })
            .collect();

        let dx = |k: usize| pencil.x.dims()[k];
        let embed_x = |k: usize, v: &[Q]| -> Vec<Q> {
            let mut out = v.to_vec();
            out.resize(dims[k], Q::zero());
            out
        };
        let embed_d = |k: usize, v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); dx(k)];
            out.extend_from_slice(v);
            out
        };

        let mut abc = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let b = f2[i].clone();
            let mut c_vecs = Vec::new();
            let mut a_vecs: Vec<Vec<Q>> = primitive_x[i].basis().iter().map(|v| embed_x(i, v)).collect();
            if i >= 2 {
                let iy = &gysin.iota_lower.block(i - 2);
                let hy = pencil.h.block(i - 2);
                for col in 0..pencil.y.dims()[i - 2] {
                    let mut v = iy.col(col);
                    v.extend(hy.col(col));
                    c_vecs.push(v);
                }
                let d_amb = pencil.delta.dims()[i - 2];
                let delta_part = if i == n {
                    pencil.delta_vanishing_subspace()
                } else {
                    hy.column_space().complement_within(&Subspace::full(d_amb)).map_err(|e| e.to_string())?
                };
                a_vecs.extend(delta_part.basis().iter().map(|v| embed_d(i, v)));
            }
            let a = Subspace::span(dims[i], &a_vecs);
            let c = Subspace::span(dims[i], &c_vecs);
            let total = a.dim() + b.dim() + c.dim();
            let sum = a.sum(&b).and_then(|s| s.sum(&c)).map_err(|e| e.to_string())?;
            if total != dims[i] || sum.dim() != dims[i] {
                return Err(format!("A + B + C is not a direct decomposition of H^{i}(X~): dims {} + {} + {} in {}", a.dim(), b.dim(), c.dim(), dims[i]));
            }
            abc.push([a, b, c]);
        }

        let zero = GradedOperator::zero(&dims, &dims, 0);
        let mut split: Vec<[GradedOperator; 3]> = (0..=top - 2).map(|_| [zero.clone(), zero.clone(), zero.clone()]).collect();
        let place = |m: Matrix, k: usize| -> GradedOperator {
            let mut op = zero.clone();
            op.set_block(k, m);
            op
        };
        for (i, [a, b, c]) in abc.iter().enumerate() {
            let err = |e: crate::linalg::LinalgError| e.to_string();
            let pb = projector_along(b, &a.sum(c).map_err(err)?).map_err(err)?;
            if i >= 2 {
                split[i - 2][2] = place(pb, i);
            }
            if i < n {
                let pac = projector_along(&a.sum(c).map_err(err)?, b).map_err(err)?;
                split[i][0] = place(pac, i);
            } else {
                let pc = projector_along(c, &a.sum(b).map_err(err)?).map_err(err)?;
                let pa = projector_along(a, &b.sum(c).map_err(err)?).map_err(err)?;
                split[n][0] = place(pc, n);
                split[n - 1][1] = place(pa, n);
            }
        }
        for i in n + 1..=top {
            let j = top - i;
            if i <= top - 2 {
                split[i][0] = transpose(&split[top - 2 - i][2], xt);
            }
            split[i - 2][2] = transpose(&split[j][0], xt);
        }

        Ok(LerayStructure { pencil: pencil.clone(), blowup, gysin, primitive_x, f1, f2, abc, split })
    }

    pub fn n(&self) -> usize {
        self.pencil.n()
    }

    pub fn model(&self) -> &PoincareModel {
        &self.blowup.model
    }

    pub fn dims(&self) -> &[usize] {
        self.blowup.model.dims()
    }

    pub fn labels(&self) -> &[Vec<String>] {
        self.blowup.model.labels()
    }

    /// Top relative index `2n − 2`.
    pub fn relative_top(&self) -> usize {
        2 * self.n() - 2
    }

    fn zero(&self, degree: i32) -> GradedOperator {
        GradedOperator::zero(self.dims(), self.dims(), degree)
    }

    /// `π^{k,ε}`; zero outside `0 ≤ k ≤ 2n−2`.
    pub fn pi(&self, k: i64, eps: usize) -> GradedOperator {
        if k < 0 || k as usize > self.relative_top() {
            return self.zero(0);
        }
        self.split[k as usize][eps].clone()
    }

    /// `π^k_ρ = π^{k,0} + π^{k,1} + π^{k,2}`.
    pub fn pi_rho(&self, k: i64) -> GradedOperator {
        EPSILONS.iter().fold(self.zero(0), |acc, &e| acc.add(&self.pi(k, e)))
    }

    /// `H_ρ = Σ (n−1−k) π^k_ρ`.
    pub fn h_rho(&self) -> GradedOperator {
        let c = self.n() as i64 - 1;
        (0..=self.relative_top() as i64).fold(self.zero(0), |acc, k| acc.add(&self.pi_rho(k).scale(&q(c - k))))
    }

    pub fn transpose(&self, u: &GradedOperator) -> GradedOperator {
        transpose(u, self.model())
    }

    /// `ψ(u) = Σ_k π^{k+d}_ρ u π^k_ρ` for `u` homogeneous of degree `d`.
    pub fn psi(&self, u: &GradedOperator) -> GradedOperator {
        let d = u.degree() as i64;
        (0..=self.relative_top() as i64).fold(self.zero(u.degree()), |acc, k| {
            acc.add(&self.pi_rho(k + d).compose(u).compose(&self.pi_rho(k)))
        })
    }

    /// The Künneth projector `π^i` of `X̃`.
    pub fn grading(&self, i: usize) -> GradedOperator {
        self.model().grading_projector(i)
    }

    /// Whether `w` maps `F¹` into `F¹` and `F²` into `F²`; `None` if so,
    /// otherwise the offending degree and step.
    pub fn filtration_violation(&self, w: &GradedOperator) -> Option<(usize, usize)> {
        for k in 0..self.dims().len() {
            let Some(t) = w.target_of(k) else { continue };
            for (step, (src, tgt)) in [(&self.f1[k], &self.f1[t]), (&self.f2[k], &self.f2[t])].into_iter().enumerate() {
                if !src.image(w.block(k)).is_subspace_of(tgt) {
                    return Some((k, step + 1));
                }
            }
        }
        None
    }

    /// `Σ_k π^{k,2} N π^{k,0}`: commutes with `H_ρ`, raises `ε` by two.
    pub fn raising_term(&self, seed: &GradedOperator) -> GradedOperator {
        assert_eq!(seed.degree(), 2);
        (0..=self.relative_top() as i64)
            .fold(self.zero(2), |acc, k| acc.add(&self.pi(k, 2).compose(seed).compose(&self.pi(k, 0))))
    }

    /// `Σ_k π^{k−4,2} N π^{k,0}` for a degree −2 seed; invisible to `ψ`.
    pub fn lowering_lift_term(&self, seed: &GradedOperator) -> GradedOperator {
        assert_eq!(seed.degree(), -2);
        (0..=self.relative_top() as i64)
            .fold(self.zero(-2), |acc, k| acc.add(&self.pi(k - 4, 2).compose(seed).compose(&self.pi(k, 0))))
    }

    /// Image of `π^{k,ε}` inside its degree.
    pub fn piece_image(&self, k: usize, eps: usize) -> Subspace {
        self.split[k][eps].block(k + eps).column_space()
    }

    /// Filtration identities and the splitting system.
    pub fn leray_suite(&self) -> Report {
        let mut r = Report::new("leray");
        let n = self.n();
        let top = 2 * n;
        let xt = self.model();
        let labels = self.labels().to_vec();
        let b = &self.blowup;

        r.check_ops(
            "k* k_* = 0",
            &b.k_upper.compose(&b.k_lower),
            &GradedOperator::zero(self.pencil.y.dims(), self.pencil.y.dims(), 2),
            self.pencil.y.labels(),
        );
        let t = b.fibre_class(&self.pencil);
        let t2 = xt.product(2, &t, 2, &t).unwrap();
        r.check("rho*[t] ^ rho*[t] = 0", t2.iter().all(Zero::is_zero), || Witness {
            location: "H^4".into(),
            lhs: crate::report::fmt_vec(&t2),
            rhs: "0".into(),
        });
        for k in 0..=top {
            r.check(format!("F2 H^{k} in F1 H^{k}"), self.f2[k].is_subspace_of(&self.f1[k]), || Witness {
                location: format!("H^{k}"),
                lhs: format!("dim F2 {}", self.f2[k].dim()),
                rhs: format!("dim F1 {}", self.f1[k].dim()),
            });
            let perp = orthogonal(xt, k, &self.f2[k]);
            let want = &self.f1[top - k];
            r.check(format!("F2 H^{k} perp = F1 H^{}", top - k), &perp == want, || Witness {
                location: format!("H^{}", top - k),
                lhs: format!("dim {}", perp.dim()),
                rhs: format!("dim {}", want.dim()),
            });
        }

        let rel_top = self.relative_top() as i64;
        let all: Vec<(i64, usize, GradedOperator)> =
            (0..=rel_top).flat_map(|k| EPSILONS.iter().map(move |&e| (k, e))).map(|(k, e)| (k, e, self.pi(k, e))).collect();
        let total = GradedOperator::sum_all(&all.iter().map(|x| x.2.clone()).collect::<Vec<_>>()).unwrap();
        r.check_ops("sum pi^(i,e) = id", &total, &GradedOperator::identity(self.dims()), &labels);
        let mut bad = None;
        'outer: for (k1, e1, p1) in &all {
            for (k2, e2, p2) in &all {
                let prod = p1.compose(p2);
                let want = if (k1, e1) == (k2, e2) { p1.clone() } else { self.zero(0) };
                if prod != want {
                    bad = Some(format!("pi^({k1},{e1}) pi^({k2},{e2})"));
                    break 'outer;
                }
            }
        }
        r.check("pi^(i,e) pi^(j,f) = delta pi^(i,e)", bad.is_none(), || Witness {
            location: bad.clone().unwrap_or_default(),
            lhs: "nonzero or not idempotent".into(),
            rhs: "orthogonal idempotents".into(),
        });
        for k in 0..=rel_top {
            r.check_ops(format!("pi^({k},0) = t(pi^({},2))", rel_top - k), &self.pi(k, 0), &self.transpose(&self.pi(rel_top - k, 2)), &labels);
            if k != n as i64 - 1 {
                r.check_ops(format!("pi^({k},1) = 0"), &self.pi(k, 1), &self.zero(0), &labels);
            }
        }
        let mid = self.pi(n as i64 - 1, 1);
        r.check_ops(format!("t(pi^({},1)) = pi^({},1)", n - 1, n - 1), &self.transpose(&mid), &mid, &labels);
        for i in 0..=top as i64 {
            let sum = self.pi(i, 0).add(&self.pi(i - 1, 1)).add(&self.pi(i - 2, 2));
            r.check_ops(format!("pi^{i}_X~ = pi^({i},0) + pi^({},1) + pi^({},2)", i - 1, i - 2), &self.grading(i as usize), &sum, &labels);
        }
        for k in 0..=top {
            let upper = (0..=rel_top)
                .flat_map(|j| [(j, 1usize), (j, 2)])
                .filter(|&(j, e)| j as usize + e == k)
                .fold(Subspace::zero(self.dims()[k]), |acc, (j, e)| acc.sum(&self.piece_image(j as usize, e)).unwrap());
            r.check(format!("F1 H^{k} = images of pi^(.,1) + pi^(.,2)"), upper == self.f1[k], || Witness {
                location: format!("H^{k}"),
                lhs: format!("dim {}", upper.dim()),
                rhs: format!("dim {}", self.f1[k].dim()),
            });
            let second = if k >= 2 && k - 2 <= rel_top as usize { self.piece_image(k - 2, 2) } else { Subspace::zero(self.dims()[k]) };
            r.check(format!("F2 H^{k} = Im pi^({},2)", k as i64 - 2), second == self.f2[k], || Witness {
                location: format!("H^{k}"),
                lhs: format!("dim {}", second.dim()),
                rhs: format!("dim {}", self.f2[k].dim()),
            });
        }

        let v_delta = self.pencil.delta_vanishing_subspace().dim();
        let pn = self.primitive_x[n].dim();
        let mid_rank = mid.rank();
        r.check(format!("dim Im pi^({},1) = dim P^{n}(X) + dim V(Delta)", n - 1), mid_rank == pn + v_delta, || Witness {
            location: format!("H^{n}"),
            lhs: mid_rank.to_string(),
            rhs: format!("{pn} + {v_delta}"),
        });
        for k in 0..=rel_top as usize {
            let b = self.pencil.x.betti(if k < n { k } else { k + 2 });
            let (g0, g2) = (self.piece_image(k, 0).dim(), self.piece_image(k, 2).dim());
            let bi = if k < n { k } else { k + 2 };
            r.check(format!("dim Gr0 H^{k} = dim Gr2 H^{} = b_{bi}(X)", k + 2), g0 == b && g2 == b, || Witness {
                location: format!("relative index {k}"),
                lhs: format!("{g0}, {g2}"),
                rhs: b.to_string(),
            });
        }
        r.param("dim_pi_mid_1", mid_rank);
        r
    }
}

/// `{z ∈ H^{top−k} : ⟨s, z⟩ = 0 ∀ s ∈ S}` for `S ⊆ H^k`.
pub fn orthogonal(model: &PoincareModel, k: usize, s: &Subspace) -> Subspace {
    let top = model.top();
    let g = model.gram(k);
    let rows = s.basis_matrix().transpose().mul(&g);
    if rows.rows() == 0 {
        return Subspace::full(model.dims()[top - k]);
    }
    rows.kernel()
}
