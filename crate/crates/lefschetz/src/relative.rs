//! The relative sl₂ triple of a pencil and the suites built on it: relative
//! Lefschetz theory, `ψ`, polarization power formulas on `X̃`, and the
//! structural identities tying `X̃` back to `X`, `Y` and `Δ`.

use crate::absolute::{LefschetzContext, LefschetzError, StringDecomposition};
use crate::graded::GradedOperator;
use crate::leray::{LerayStructure, EPSILONS};
use crate::linalg::{lagrange_projectors, q, semisimple_part, Matrix, Subspace, Q};
use crate::report::{Report, Witness};

#[derive(Clone, Debug)]
pub struct RelativeSl2 {
    pub strings: StringDecomposition,
    pub l_rho: GradedOperator,
    pub lambda_rho: GradedOperator,
    pub clambda_rho: GradedOperator,
    pub h_rho: GradedOperator,
}

fn homogeneous(leray: &LerayStructure, degree: i32, m: &Matrix) -> GradedOperator {
    GradedOperator::from_full(leray.dims(), leray.dims(), degree, m)
        .unwrap_or_else(|| panic!("relative operator is not homogeneous of degree {degree}"))
}

impl RelativeSl2 {
    pub fn new(leray: &LerayStructure) -> Result<Self, LefschetzError> {
        let c = leray.n() - 1;
        let pieces: Vec<Matrix> = (0..=2 * c as i64).map(|k| leray.pi_rho(k).to_full()).collect();
        let l_rho = leray.psi(&leray.blowup.split_lefschetz);
        let strings = StringDecomposition::new(pieces, &l_rho.to_full(), c)?;
        Ok(RelativeSl2 {
            lambda_rho: homogeneous(leray, -2, &strings.lambda()),
            clambda_rho: homogeneous(leray, -2, &strings.clambda()),
            h_rho: homogeneous(leray, 0, &strings.weight_operator()),
            l_rho,
            strings,
        })
    }

    pub fn center(&self) -> usize {
        self.strings.center()
    }

    /// `p^k_ρ`, of degree 0 for `k ≤ n−1` and `2(n−1) − 2k` above.
    pub fn p_rho(&self, leray: &LerayStructure, k: usize) -> GradedOperator {
        let c = self.center();
        let degree = if k <= c { 0 } else { 2 * c as i32 - 2 * k as i32 };
        homogeneous(leray, degree, &self.strings.primitive_projector(k))
    }
}

/// Pencil-level data with both the absolute contexts of `X`, `Y` and the
/// relative triple on `X̃`.
#[derive(Clone, Debug)]
pub struct PencilContext {
    pub leray: LerayStructure,
    pub rel: RelativeSl2,
    pub x: LefschetzContext,
    pub y: LefschetzContext,
}

impl PencilContext {
    pub fn new(pencil: &crate::section::PencilDatum) -> Result<Self, String> {
        let leray = LerayStructure::new(pencil)?;
        let rel = RelativeSl2::new(&leray).map_err(|e| format!("relative: {e}"))?;
        let x = LefschetzContext::new(&pencil.x).map_err(|e| format!("X: {e}"))?;
        let y = LefschetzContext::new(&pencil.y).map_err(|e| format!("Y: {e}"))?;
        Ok(PencilContext { leray, rel, x, y })
    }

    fn n(&self) -> usize {
        self.leray.n()
    }

    fn labels(&self) -> Vec<Vec<String>> {
        self.leray.labels().to_vec()
    }

    fn zero(&self, degree: i32) -> GradedOperator {
        GradedOperator::zero(self.leray.dims(), self.leray.dims(), degree)
    }

    fn check_filtration(&self, r: &mut Report, name: &str, w: &GradedOperator) {
        let v = self.leray.filtration_violation(w);
        r.check(format!("{name} preserves the Leray filtration"), v.is_none(), || {
            let (k, step) = v.unwrap();
            Witness { location: format!("F{step} H^{k}"), lhs: "image leaves the filtration step".into(), rhs: "contained".into() }
        });
    }

    /// Samples on `X̃` for the `ψ` checks.
    pub fn samples(&self, count: usize, seed: u64) -> Vec<GradedOperator> {
        let ctx = LefschetzContext { model: self.leray.model().clone(), l: self.leray.blowup.split_lefschetz.clone(), strings: self.rel.strings.clone() };
        ctx.sample_operators(count, seed)
    }

    fn sample_of_degree(&self, degree: i32, seed: u64) -> GradedOperator {
        let top = self.leray.model().top() as i32;
        let all = self.samples((2 * top + 1) as usize, seed);
        all.into_iter().find(|u| u.degree() == degree).expect("every degree is sampled")
    }

    pub fn relative_suite(&self, samples: usize) -> Report {
        let mut r = Report::new("relative");
        let (le, rel) = (&self.leray, &self.rel);
        let n = self.n();
        let c = n as i64 - 1;
        let rel_top = 2 * c;
        let labels = self.labels();
        let id = GradedOperator::identity(le.dims());
        let h = le.h_rho();

        r.check_ops("H_rho = sum (n-1-i) pi^i_rho", &rel.h_rho, &h, &labels);
        r.check_ops("t(H_rho) = -H_rho", &le.transpose(&h), &h.neg(), &labels);
        for k in 0..=rel_top {
            r.check_ops(format!("t(pi^{k}_rho) = pi^{}_rho", rel_top - k), &le.transpose(&le.pi_rho(k)), &le.pi_rho(rel_top - k), &labels);
        }
        let spectrum: Vec<Q> = (-c..=c).rev().map(q).collect();
        match lagrange_projectors(&h.to_full(), &spectrum) {
            Ok(ps) => {
                let ok = ps.iter().enumerate().all(|(k, p)| *p == le.pi_rho(k as i64).to_full());
                r.check("Lagrange projectors of H_rho are pi^i_rho", ok, || Witness {
                    location: "spectrum".into(),
                    lhs: "interpolated".into(),
                    rhs: "pi^i_rho".into(),
                });
            }
            Err(e) => r.fail("Lagrange projectors of H_rho are pi^i_rho", Witness { location: "H_rho".into(), lhs: e.to_string(), rhs: "semisimple".into() }),
        }
        let nu = le.raising_term(&self.sample_of_degree(2, 0x1ead));
        r.check("raising perturbation is nonzero", !nu.is_zero() || le.pi(c, 2).is_zero(), || Witness {
            location: "nu".into(),
            lhs: "0".into(),
            rhs: "nonzero".into(),
        });
        let perturbed = h.to_full().add(&nu.to_full());
        match semisimple_part(&perturbed, c as usize) {
            Ok(s) => r.check("semisimple_part(H_rho + nu) = H_rho", s == h.to_full(), || Witness {
                location: "full matrix".into(),
                lhs: "semisimple part".into(),
                rhs: "H_rho".into(),
            }),
            Err(e) => r.fail("semisimple_part(H_rho + nu) = H_rho", Witness { location: "H_rho + nu".into(), lhs: e.to_string(), rhs: "P^3 annihilates".into() }),
        }

        let (l, lam, cl) = (&rel.l_rho, &rel.lambda_rho, &rel.clambda_rho);
        r.check_ops("[cLambda_rho, L_rho] = H_rho", &cl.bracket(l), &h, &labels);
        r.check_ops("[H_rho, L_rho] = -2 L_rho", &h.bracket(l), &l.scale(&q(-2)), &labels);
        r.check_ops("[H_rho, cLambda_rho] = 2 cLambda_rho", &h.bracket(cl), &cl.scale(&q(2)), &labels);
        for i in 0..=c {
            let src = le.pi_rho(c - i).to_full();
            let dim = src.rank();
            let tgt_dim = le.pi_rho(c + i).rank();
            let rank = rel.strings.raise_power(i as usize).mul(&src).rank();
            r.check(format!("L_rho^{i}: Im pi^{}_rho -> Im pi^{}_rho is bijective", c - i, c + i), rank == dim && dim == tgt_dim, || Witness {
                location: format!("relative index {}", c - i),
                lhs: format!("rank {rank}"),
                rhs: format!("dims {dim} -> {tgt_dim}"),
            });
        }
        let low = (0..=c as usize).fold(self.zero(0), |acc, k| acc.add(&rel.p_rho(le, k)));
        r.check_ops("L_rho Lambda_rho = id - sum_(i<=n-1) p^i_rho", &l.compose(lam), &id.sub(&low), &labels);
        for k in 0..=c as usize {
            let p = rel.p_rho(le, k);
            r.check_ops(format!("p^{k}_rho idempotent"), &p.compose(&p), &p, &labels);
        }
        for k in 0..(n.saturating_sub(1)) {
            r.check_ops(format!("p^{k}_rho H^{}(X~) = 0", k + 1), &rel.p_rho(le, k).compose(&le.grading(k + 1)), &self.zero(0), &labels);
        }
        for k in 0..=rel_top {
            for e in [0usize, 2] {
                let lhs = cl.compose(&le.pi(k, e));
                let rhs = le.pi(k - 2, e).compose(cl);
                r.check_ops(format!("cLambda_rho pi^({k},{e}) = pi^({},{e}) cLambda_rho", k - 2), &lhs, &rhs, &labels);
            }
        }

        // ψ
        r.check_ops("psi(id) = id", &le.psi(&id), &id, &labels);
        let l_split = &le.blowup.split_lefschetz;
        let m = q(le.pencil.m);
        let l_tilde = le.model().lefschetz();
        r.check_ops("psi(L_X~) = m psi(L)", &le.psi(&l_tilde), &l.scale(&m), &labels);
        r.check_ops(
            "L_X~ - m L = k_* k*",
            &l_tilde.sub(&l_split.scale(&m)),
            &le.blowup.k_lower.compose(&le.blowup.k_upper),
            &labels,
        );
        let diff = l_split.sub(l);
        let mut raises = true;
        for k in 0..=rel_top {
            for e in EPSILONS {
                let from = le.pi(k, e);
                for k2 in 0..=rel_top {
                    for e2 in EPSILONS.iter().filter(|&&e2| e2 <= e) {
                        raises &= le.pi(k2, *e2).compose(&diff).compose(&from).is_zero();
                    }
                }
            }
        }
        r.check("L - L_rho strictly raises the filtration index", raises, || Witness {
            location: "L - psi(L)".into(),
            lhs: "has a non-raising component".into(),
            rhs: "strictly raising".into(),
        });
        let f2_ok = (0..le.dims().len()).all(|k| {
            let Some(t) = diff.target_of(k) else { return true };
            le.f2[k].image(diff.block(k)).dim() == 0 || t >= le.dims().len()
        });
        r.check("L and L_rho agree on F2", f2_ok, || Witness { location: "F2".into(), lhs: "differ".into(), rhs: "agree".into() });

        let us = self.samples(samples, 0xface);
        let mut idem = true;
        let mut trans = true;
        let mut mult = true;
        let mut kernel = true;
        for (t, u) in us.iter().enumerate() {
            let pu = le.psi(u);
            idem &= le.psi(&pu) == pu;
            trans &= le.psi(&le.transpose(u)) == le.transpose(&pu);
            kernel &= le.psi(&u.sub(&pu)).is_zero();
            let v = &us[(t + 1) % us.len()];
            let pv = le.psi(v);
            let prod = pu.compose(&pv);
            mult &= le.psi(&prod) == prod;
        }
        let w = |what: &str| Witness { location: format!("{} sample operators", us.len()), lhs: format!("{what} fails"), rhs: "holds".into() };
        r.check("psi idempotent", idem, || w("idempotence"));
        r.check("psi(t u) = t psi(u)", trans, || w("transpose equivariance"));
        r.check("psi(u) psi(v) lies in the image of psi", mult, || w("multiplicativity"));
        r.check("u - psi(u) in Ker psi", kernel, || w("kernel"));
        r.check_ops("psi(nu) = 0 for raising nu", &le.psi(&nu), &self.zero(2), &labels);
        let gr_trivial = le.lowering_lift_term(&self.sample_of_degree(-2, 0xbead));
        r.check_ops("psi(cLambda_rho + raising term) = cLambda_rho", &le.psi(&cl.add(&gr_trivial)), cl, &labels);

        let mut named: Vec<(String, GradedOperator)> = vec![
            ("L_rho".into(), l.clone()),
            ("Lambda_rho".into(), lam.clone()),
            ("cLambda_rho".into(), cl.clone()),
            ("H_rho".into(), h.clone()),
        ];
        for k in 0..=rel_top {
            named.push((format!("pi^{k}_rho"), le.pi_rho(k)));
            named.push((format!("p^{k}_rho"), rel.p_rho(le, k as usize)));
            for e in EPSILONS {
                named.push((format!("pi^({k},{e})"), le.pi(k, e)));
            }
        }
        named.push(("psi(sample)".into(), le.psi(&us[0])));
        for (name, op) in &named {
            self.check_filtration(&mut r, name, op);
        }
        r.param("samples", samples);
        r
    }

    /// Power formulas for `L_X̃` on the split decomposition, for `r ≤ r_max`.
    pub fn tilde_power_suite(&self, r_max: usize) -> Report {
        let mut r = Report::new("tilde-power");
        let le = &self.leray;
        let p = &le.pencil;
        let b = &le.blowup;
        let xt = le.model();
        let n = self.n();
        let labels = self.labels();
        let m = q(p.m);
        let l_tilde = xt.lefschetz();
        let l_split = &b.split_lefschetz;
        let (lx, ld, ly) = (p.x.lefschetz(), p.delta.lefschetz(), p.y.lefschetz());
        let g = &le.gysin;
        let j_upper = &g.j_upper;

        for rr in 1..=r_max {
            let lt_r = l_tilde.pow(rr);
            let m_r1 = pow_q(&m, rr - 1);
            let m_r = pow_q(&m, rr);
            let r_q = q(rr as i64);
            // x ⊕ 0
            let coeff_x = &m_r1 * (&m + &r_q);
            let coeff_j = -(&r_q * &m_r1);
            let mut rhs = GradedOperator::zero(xt.dims(), xt.dims(), 2 * rr as i32);
            let mut rhs_d = rhs.clone();
            let lxr = lx.pow(rr);
            let ldr1 = ld.pow(rr - 1);
            let jl = &g.j_lower;
            let ldr = ld.pow(rr);
            let lxr1 = lx.pow(rr - 1);
            let coeff_dj = &r_q * &m_r1;
            let coeff_dd = &m_r1 * (&m - &r_q);
            for k in 0..=xt.top() {
                let Some(t) = rhs.target_of(k) else { continue };
                let (dxk, dxt) = (p.x.dims()[k], p.x.dims()[t]);
                let mut blk = Matrix::zeros(xt.dims()[t], xt.dims()[k]);
                blk.put(0, 0, &lxr.block(k).scale(&coeff_x));
                if t >= 2 && t - 2 <= p.delta.top() && k <= p.delta.top() {
                    let jx = j_upper.block(k);
                    blk.put(dxt, 0, &ldr1.block(k).mul(jx).scale(&coeff_j));
                }
                rhs.set_block(k, blk);
                let mut blk_d = Matrix::zeros(xt.dims()[t], xt.dims()[k]);
                if k >= 2 && k - 2 <= p.delta.top() {
                    let src_d = k - 2;
                    if src_d + 4 <= p.x.top() {
                        blk_d.put(0, dxk, &lxr1.block(src_d + 4).mul(jl.block(src_d)).scale(&coeff_dj));
                    }
                    if src_d + 2 * rr <= p.delta.top() {
                        blk_d.put(dxt, dxk, &ldr.block(src_d).scale(&coeff_dd));
                    }
                }
                rhs_d.set_block(k, blk_d);
            }
            let on_x = lt_r.compose(&b.f_upper);
            r.check_ops(format!("L~^{rr}(x+0) = m^(r-1)(m+r) L^r x + (-r m^(r-1) L_D^(r-1) j* x) [m={}]", p.m), &on_x, &rhs.compose(&b.f_upper), p.x.labels());
            let delta_incl = delta_inclusion(le);
            r.check_ops(
                format!("L~^{rr}(0+y) = r m^(r-1) L^(r-1) j_* y + m^(r-1)(m-r) L_D^r y [m={}]", p.m),
                &lt_r.compose(&delta_incl),
                &rhs_d.compose(&delta_incl),
                p.delta.labels(),
            );
            let xi_power = l_tilde.pow(rr).block(0).mul_vec(&xt.unit());
            let want = {
                let mut v: Vec<Q> = lx.pow(rr).block(0).mul_vec(&p.x.unit()).iter().map(|a| a * &coeff_x).collect();
                let xi_d = ld.pow(rr - 1).block(0).mul_vec(&p.delta.unit());
                v.extend(xi_d.iter().map(|a| a * &coeff_j));
                v
            };
            r.check(format!("xi~^{rr} = (m+r)m^(r-1) xi^r + (-r m^(r-1) xi_D^(r-1)) [m={}]", p.m), xi_power == want, || Witness {
                location: format!("H^{}", 2 * rr),
                lhs: crate::report::fmt_vec(&xi_power),
                rhs: crate::report::fmt_vec(&want),
            });
            let dif = lt_r.sub(&l_split.pow(rr).scale(&m_r));
            let k_term = b.k_lower.compose(&ly.pow(rr - 1)).compose(&b.k_upper).scale(&(&r_q * &m_r1));
            r.check_ops(format!("L~^{rr} - m^r L^r = r m^(r-1) k_* L_Y^(r-1) k* [m={}]", p.m), &dif, &k_term, &labels);
            let f2_ok = (0..=xt.top()).all(|k| match dif.target_of(k) {
                Some(t) => dif.block(k).column_space().is_subspace_of(&le.f2[t]),
                None => true,
            });
            r.check(format!("(L~^{rr} - m^r L^r) lands in F2 [m={}]", p.m), f2_ok, || Witness {
                location: "image".into(),
                lhs: "outside F2".into(),
                rhs: "inside F2".into(),
            });
            r.check_ops(format!("L~^{rr} k_* = m^r k_* L_Y^{rr} [m={}]", p.m), &lt_r.compose(&b.k_lower), &b.k_lower.compose(&ly.pow(rr)).scale(&m_r), p.y.labels());
            r.check_ops(format!("L~^{rr} k_* = m^r L^{rr} k_* [m={}]", p.m), &lt_r.compose(&b.k_lower), &l_split.pow(rr).compose(&b.k_lower).scale(&m_r), p.y.labels());
        }

        let lt_ctx = LefschetzContext::new(xt);
        for i in 0..n {
            let px = le.primitive_x[i].clone();
            let embedded = px.image(b.f_upper.block(i));
            let image_tilde = embedded.image(l_tilde.pow(n - i).block(i));
            let image_x = px.image(lx.pow(n - i).block(i)).image(b.f_upper.block(2 * n - i));
            let via_k = px
                .image(p.iota.block(i))
                .image(ly.pow(n - i - 1).block(i))
                .image(b.k_lower.block(2 * n - i - 2));
            let ok = image_tilde == image_x && image_x == via_k && image_x.is_subspace_of(&le.f2[2 * n - i]);
            r.check(format!("L~^{}(P^{i}(X)+0) = L^{} P^{i}(X)+0 = k_* L_Y^{} iota* P^{i}(X) in F2", n - i, n - i, n - i - 1), ok, || Witness {
                location: format!("H^{}", 2 * n - i),
                lhs: format!("dims {} / {} / {}", image_tilde.dim(), image_x.dim(), via_k.dim()),
                rhs: "equal subspaces inside F2".into(),
            });
            for j in 0..n - i {
                let img = embedded.image(l_tilde.pow(j).block(i));
                let meet = img.intersection(&le.f1[i + 2 * j]).unwrap();
                r.check(format!("L~^{j}(P^{i}(X)+0) meets F1 trivially"), meet.dim() == 0, || Witness {
                    location: format!("H^{}", i + 2 * j),
                    lhs: format!("intersection dim {}", meet.dim()),
                    rhs: "0".into(),
                });
            }
        }
        if let Ok(ctx) = lt_ctx {
            for i in 0..=n {
                let embedded = le.primitive_x[i].image(b.f_upper.block(i));
                let prim = ctx.primitive_subspace(i);
                r.check(format!("P^{i}(X)+0 in P^{i}(X~)"), embedded.is_subspace_of(&prim), || Witness {
                    location: format!("H^{i}"),
                    lhs: format!("dim {}", embedded.dim()),
                    rhs: format!("P^{i}(X~) dim {}", prim.dim()),
                });
            }
        } else {
            r.fail("Hard Lefschetz on X~", Witness { location: "X~".into(), lhs: "fails".into(), rhs: "holds".into() });
        }
        r.param("m", p.m);
        r.param("r_max", r_max);
        r
    }

    pub fn structural_suite(&self) -> Report {
        let mut r = Report::new("structural");
        let (le, rel, x) = (&self.leray, &self.rel, &self.x);
        let p = &le.pencil;
        let b = &le.blowup;
        let n = self.n();
        let c = n as i64 - 1;
        let labels = self.labels();
        let dims = le.dims();

        let mid = le.piece_image(n - 1, 1);
        let want_mid = {
            let px = le.primitive_x[n].image(b.f_upper.block(n));
            let vd = p.delta_vanishing_subspace().image(delta_inclusion(le).block(n - 2));
            px.sum(&vd).unwrap()
        };
        r.check(format!("Im pi^({},1) = P^{n}(X)+0 + 0+V(Delta)", n - 1), mid == want_mid, || Witness {
            location: format!("H^{n}"),
            lhs: format!("dim {}", mid.dim()),
            rhs: format!("dim {}", want_mid.dim()),
        });
        for i in 0..n {
            let img = le.piece_image(i, 0);
            let mut want = le.primitive_x[i].image(b.f_upper.block(i));
            if i >= 2 {
                let cols: Vec<Vec<Q>> = (0..p.y.dims()[i - 2])
                    .map(|col| {
                        let mut v = le.gysin.iota_lower.block(i - 2).col(col);
                        v.extend(p.h.block(i - 2).col(col));
                        v
                    })
                    .collect();
                want = want.sum(&Subspace::span(dims[i], &cols)).unwrap();
            }
            r.check(format!("Im pi^({i},0) = P^{i}(X)+0 + (iota_* + h*) H^{}(Y)", i as i64 - 2), img == want, || Witness {
                location: format!("H^{i}"),
                lhs: format!("dim {}", img.dim()),
                rhs: format!("dim {}", want.dim()),
            });
        }
        let hx = Subspace::full(p.x.dims()[n]).image(b.f_upper.block(n));
        let meet = hx.intersection(&le.f1[n]).unwrap();
        let pn = le.primitive_x[n].image(b.f_upper.block(n));
        r.check(format!("H^{n}(X)+0 meet F1 = P^{n}(X)+0"), meet == pn, || Witness {
            location: format!("H^{n}"),
            lhs: format!("dim {}", meet.dim()),
            rhs: format!("dim {}", pn.dim()),
        });
        let t = b.fibre_class(p);
        let t_mult = le.model().mult_op(2, &t);
        for i in 0..n {
            let a = &le.abc[i][0];
            let img = a.image(t_mult.block(i));
            let kp = self.y.primitive_subspace(i).image(b.k_lower.block(i));
            let kip = le.primitive_x[i].image(p.iota.block(i)).image(b.k_lower.block(i));
            r.check(format!("rho*[t] maps A^{i} onto k_* iota* P^{i}(X) = k_* P^{i}(Y)"), img.dim() == a.dim() && img == kip && kip == kp, || Witness {
                location: format!("H^{}", i + 2),
                lhs: format!("dims {} -> {}", a.dim(), img.dim()),
                rhs: format!("k_* iota* P dim {}, k_* P(Y) dim {}", kip.dim(), kp.dim()),
            });
        }

        let fu = &b.f_upper;
        let fl = &b.f_lower;
        let p_mid = rel.p_rho(le, n - 1);
        let pxm = x.primitive_projector(n - 1);
        let pxm_t = x.transpose(&pxm);
        let formula = fu.compose(&pxm).compose(fl).add(&le.pi(c, 1)).add(&fu.compose(&pxm_t).compose(fl));
        r.check_ops(format!("p^{}_rho = f* p^{} f_* + pi^({},1) + f* t(p^{}) f_*", n - 1, n - 1, n - 1, n - 1), &p_mid, &formula, &labels);
        let descended = fl.compose(&p_mid).compose(fu);
        let want = pxm.add(&x.primitive_projector(n)).add(&pxm_t);
        r.check_ops(format!("f_* p^{}_rho f* = p^{} + p^{} + t(p^{})", n - 1, n - 1, n, n - 1), &descended, &want, x.labels());
        r.check_ops(format!("pi^({},1) p^{}_rho = pi^({},1)", n - 1, n - 1, n - 1), &le.pi(c, 1).compose(&p_mid), &le.pi(c, 1), &labels);
        for i in 0..n.saturating_sub(1) {
            let p_i = rel.p_rho(le, i);
            let on_degree = p_i.compose(&le.grading(i));
            let pulled = fu.compose(&x.primitive_projector(i)).compose(fl).compose(&le.grading(i));
            r.check_ops(format!("p^{i}_rho = f* p^{i} f_* on H^{i}(X~)"), &on_degree, &pulled, &labels);
            let img = p_i.block(i + 2).column_space();
            let kp = self.y.primitive_subspace(i).image(b.k_lower.block(i));
            r.check(format!("Im p^{i}_rho on H^{}(X~) = k_* P^{i}(Y)", i + 2), img == kp, || Witness {
                location: format!("H^{}", i + 2),
                lhs: format!("dim {}", img.dim()),
                rhs: format!("dim {}", kp.dim()),
            });
        }
        let lam_mid = rel.lambda_rho.compose(&le.pi(c, 1));
        r.check_ops(format!("Lambda_rho = 0 on Im pi^({},1)", n - 1), &lam_mid, &self.zero(-2), &labels);
        r
    }
}

fn pow_q(x: &Q, e: usize) -> Q {
    (0..e).fold(q(1), |acc, _| acc * x)
}

/// `y ↦ 0 ⊕ y`, from `H^•(Δ)` shifted by two into `H^•(X̃)`, as a degree-2
/// operator on the graded space of `Δ`.
pub fn delta_inclusion(le: &LerayStructure) -> GradedOperator {
    let p = &le.pencil;
    let xt = le.model();
    let mut op = GradedOperator::zero(p.delta.dims(), xt.dims(), 2);
    for k in 0..=p.delta.top() {
        let t = k + 2;
        let mut blk = Matrix::zeros(xt.dims()[t], p.delta.dims()[k]);
        blk.put(p.x.dims()[t], 0, &Matrix::identity(p.delta.dims()[k]));
        op.set_block(k, blk);
    }
    op
}
