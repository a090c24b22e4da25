//! Absolute identities relating a model to a hyperplane section: the θ chain,
//! the induction identity for `ι*Λ_X`, the images of `π^i − p^i`, and descent
//! of grading projectors along a map.

use crate::absolute::{LefschetzContext, LefschetzError};
use crate::graded::GradedOperator;
use crate::linalg::{q, Subspace, Q};
use crate::report::{Report, Witness};
use crate::section::SectionDatum;

/// Lefschetz contexts of both members of a section, plus `ι_*`.
#[derive(Clone, Debug)]
pub struct SectionContext {
    pub datum: SectionDatum,
    pub x: LefschetzContext,
    pub y: LefschetzContext,
    pub gysin: GradedOperator,
}

impl SectionContext {
    pub fn new(datum: &SectionDatum) -> Result<Self, LefschetzError> {
        Ok(SectionContext {
            x: LefschetzContext::new(&datum.x)?,
            y: LefschetzContext::new(&datum.y)?,
            gysin: datum.gysin(),
            datum: datum.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    fn restrict(&self) -> &GradedOperator {
        &self.datum.restrict
    }

    /// `(Λ_X ι_*) Λ_Y^{n−1−i} (ι* Λ_X)` restricted to `H^{2n−i}(X)`.
    pub fn theta_chain(&self, i: usize) -> GradedOperator {
        let n = self.n();
        assert!(i < n, "theta chain is defined for i < n");
        let lx = self.x.lambda();
        let down = self.restrict().compose(&lx);
        let middle = self.y.lambda().pow(n - 1 - i);
        let up = lx.compose(&self.gysin);
        up.compose(&middle).compose(&down).restrict_to(2 * n - i)
    }

    pub fn theta_suite(&self) -> Report {
        let mut r = Report::new("theta");
        let n = self.n();
        let labels = self.x.labels();
        for i in 0..n {
            let chain = self.theta_chain(i);
            let theta = self.x.theta(i);
            let back = chain.compose(&self.x.l_power(n - i)).restrict_to(i);
            let id = self.x.kunneth_projector(i);
            r.check_ops(format!("theta_chain^{i} L^{} = id on H^{i}", n - i), &back, &id, labels);
            r.check_ops(format!("theta_chain^{i} = theta^{i}"), &chain, &theta, labels);
        }
        r
    }

    /// `ι*Λ_X − Λ_Yι* − Σ_{j=n+1}^{j_max} ι*L^{j−n−1}p^j_X`.
    pub fn induction_residual(&self, j_max: usize) -> GradedOperator {
        let n = self.n();
        let res = self.restrict();
        let mut acc = res.compose(&self.x.lambda()).sub(&self.y.lambda().compose(res));
        for j in n + 1..=j_max.min(2 * n) {
            let term = res.compose(&self.x.l_power(j - n - 1)).compose(&self.x.primitive_projector(j));
            acc = acc.sub(&term);
        }
        acc
    }

    pub fn induction_suite(&self, j_max: usize) -> Report {
        let mut r = Report::new("prinduccion");
        let residual = self.induction_residual(j_max);
        let zero = GradedOperator::zero(residual.src_dims(), residual.tgt_dims(), residual.degree());
        for d in 0..=self.x.model.top() {
            r.check_ops(
                format!("iota* Lambda_X = Lambda_Y iota* + sum_(j<={j_max}) iota* L^(j-n-1) p^j on H^{d}"),
                &residual.restrict_to(d),
                &zero,
                self.x.labels(),
            );
        }
        r.param("j_max", j_max);
        r.param("exponent", "j-n-1");
        r
    }

    pub fn lemabc_suite(&self) -> Report {
        let mut r = Report::new("lemabc");
        let (x, y) = (&self.x, &self.y);
        let n = self.n();
        let top = x.model.top();
        let labels = x.labels();
        let res = self.restrict();
        let lam_y = y.lambda();
        for i in 0..=n {
            let diff = x.kunneth_projector(i).sub(&x.primitive_projector(i));
            let image = diff.block(i).column_space();
            let want = if i >= 2 { x.l.block(i - 2).column_space() } else { Subspace::zero(image.ambient()) };
            r.check(format!("Im(pi^{i} - p^{i}) = L H^{}", i as i64 - 2), image == want, || Witness {
                location: format!("H^{i}"),
                lhs: format!("dim {}", image.dim()),
                rhs: format!("dim {}", want.dim()),
            });
            if i >= 2 {
                let k = self.gysin.block(i - 2).kernel().dim();
                r.check(format!("iota_* injective on H^{}(Y)", i - 2), k == 0, || Witness {
                    location: format!("H^{}(Y)", i - 2),
                    lhs: format!("kernel dim {k}"),
                    rhs: "0".into(),
                });
            }
            let rhs = self.gysin.compose(&lam_y).compose(&y.kunneth_projector(i)).compose(res);
            r.check_ops(format!("pi^{i} - p^{i} = iota_* Lambda_Y pi^{i}_Y iota*"), &diff, &rhs, labels);

            if i + 2 <= top {
                let tdiff = x.kunneth_projector(top - i).sub(&x.transpose(&x.primitive_projector(i)));
                let trhs = self.gysin.compose(&y.kunneth_projector(top - 2 - i)).compose(&lam_y).compose(res);
                let name = format!("pi^{} - t(p^{i}) = iota_* pi^{}_Y Lambda_Y iota*", top - i, top - 2 - i);
                r.check_ops(name, &tdiff, &trhs, labels);
            }
        }
        for i in n + 1..=top {
            let diff = x.kunneth_projector(i).sub(&x.transpose(&x.primitive_projector(top - i)));
            let image = diff.block(i).column_space();
            let src = top - i;
            let want = if src >= 2 {
                x.l_power(i - n + 1).block(src - 2).column_space()
            } else {
                Subspace::zero(image.ambient())
            };
            r.check(format!("Im(pi^{i} - t(p^{src})) = L^{} H^{}", i - n + 1, src as i64 - 2), image == want, || Witness {
                location: format!("H^{i}"),
                lhs: format!("dim {}", image.dim()),
                rhs: format!("dim {}", want.dim()),
            });
        }
        r
    }
}

/// `π^i_X = (1/deg f) f_* π^i_{X'} f*` for every degree.
pub fn descent_suite(
    f_lower: &GradedOperator,
    f_upper: &GradedOperator,
    degree: &Q,
    source_projectors: &[GradedOperator],
    target_projectors: &[GradedOperator],
    labels: &[Vec<String>],
) -> Report {
    let mut r = Report::new("cgen-descent");
    let id = GradedOperator::identity(f_upper.src_dims());
    r.check_ops("f_* f* = deg(f) id", &f_lower.compose(f_upper), &id.scale(degree), labels);
    let inv = q(1) / degree;
    for (i, (pt, ps)) in target_projectors.iter().zip(source_projectors).enumerate() {
        let rhs = f_lower.compose(ps).compose(f_upper).scale(&inv);
        r.check_ops(format!("pi^{i} = f_* pi^{i} f* / deg(f)"), pt, &rhs, labels);
    }
    r.param("deg_f", crate::linalg::fmt_q(degree));
    r
}
