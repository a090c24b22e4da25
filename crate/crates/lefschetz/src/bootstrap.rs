//! Reconstruction of the low Künneth projectors, the high primitive
//! projectors and `Λ_X − p^{n+1}_X` from fibre-level and pencil-level
//! operators, each checked against the directly computed operator.
//!
//! Reconstructions are [`Tracked`] values. They can only be produced from the
//! whitelisted inputs held by [`Ingredients`], so the X-side Lefschetz
//! decomposition can never leak into them; the trail records every input.

use std::collections::BTreeSet;

use serde_json::json;

use crate::absolute::LefschetzContext;
use crate::blowup::join;
use crate::graded::GradedOperator;
use crate::hyperplane::SectionContext;
use crate::leray::orthogonal;
use crate::linalg::{projector_along, q, Matrix, Subspace, Q};
use crate::model::{adjoint, transpose, PoincareModel};
use crate::relative::PencilContext;
use crate::report::{Report, Witness};
use crate::section::PencilDatum;

/// Trail prefixes a reconstruction may depend on.
pub const ALLOWED_INPUTS: [&str; 13] = [
    "iota*", "iota_*", "f*", "f_*", "k*", "k_*", "L_X", "Lambda_Y", "pi_Y:", "pi_rho:", "pi:", "Lambda_rho",
    "transpose_X",
];

/// Trail prefixes that would mean an X-side decomposition input.
pub const FORBIDDEN_INPUTS: [&str; 5] = ["Lambda_X", "cLambda_X", "p_X", "pi_X", "theta"];

/// An operator together with the names of every input it was built from.
#[derive(Clone, Debug)]
pub struct Tracked {
    op: GradedOperator,
    trail: BTreeSet<String>,
}

impl Tracked {
    fn input(name: String, op: GradedOperator) -> Self {
        Tracked { op, trail: BTreeSet::from([name]) }
    }

    fn merge(&self, other: &Tracked, op: GradedOperator) -> Self {
        Tracked { op, trail: self.trail.union(&other.trail).cloned().collect() }
    }

    pub fn op(&self) -> &GradedOperator {
        &self.op
    }

    pub fn trail(&self) -> &BTreeSet<String> {
        &self.trail
    }

    fn then(&self, after: &Tracked) -> Tracked {
        self.merge(after, after.op.compose(&self.op))
    }

    fn add(&self, other: &Tracked) -> Tracked {
        self.merge(other, self.op.add(&other.op))
    }

    fn sub(&self, other: &Tracked) -> Tracked {
        self.merge(other, self.op.sub(&other.op))
    }

    fn scaled(&self, s: &Q) -> Tracked {
        Tracked { op: self.op.scale(s), trail: self.trail.clone() }
    }

    fn transposed(&self, model: &PoincareModel, tag: &str) -> Tracked {
        let mut trail = self.trail.clone();
        trail.insert(tag.to_string());
        Tracked { op: transpose(&self.op, model), trail }
    }

    /// Whether every trail entry is whitelisted and none is forbidden.
    pub fn audit(&self) -> Result<(), String> {
        for t in &self.trail {
            if FORBIDDEN_INPUTS.iter().any(|f| t.starts_with(f)) || !ALLOWED_INPUTS.iter().any(|a| t.starts_with(a)) {
                return Err(t.clone());
            }
        }
        Ok(())
    }
}

/// Composes `ops` right to left: `chain(&[a, b, c]) = a ∘ b ∘ c`.
fn chain(ops: &[&Tracked]) -> Tracked {
    let (last, rest) = ops.split_last().expect("nonempty chain");
    rest.iter().rev().fold((*last).clone(), |acc, u| acc.then(u))
}

fn sum(items: Vec<Tracked>) -> Option<Tracked> {
    items.into_iter().reduce(|a, b| a.add(&b))
}

/// The whitelisted inputs: maps between `X`, `Y` and `X̃`, the polarization
/// of `X`, operators of `Y`, and the pencil-relative operators on `X̃`.
#[derive(Clone, Debug)]
pub struct Ingredients {
    x_model: PoincareModel,
    n: usize,
    restrict: GradedOperator,
    gysin: GradedOperator,
    f_upper: GradedOperator,
    f_lower: GradedOperator,
    k_upper: GradedOperator,
    k_lower: GradedOperator,
    l_x: GradedOperator,
    y: LefschetzContext,
    leray: crate::leray::LerayStructure,
    lambda_rho: GradedOperator,
}

impl Ingredients {
    fn new(pc: &PencilContext, sec: &SectionContext) -> Self {
        let b = &pc.leray.blowup;
        Ingredients {
            x_model: pc.leray.pencil.x.clone(),
            n: pc.leray.n(),
            restrict: sec.datum.restrict.clone(),
            gysin: sec.gysin.clone(),
            f_upper: b.f_upper.clone(),
            f_lower: b.f_lower.clone(),
            k_upper: b.k_upper.clone(),
            k_lower: b.k_lower.clone(),
            l_x: pc.leray.pencil.x.lefschetz(),
            y: pc.y.clone(),
            leray: pc.leray.clone(),
            lambda_rho: pc.rel.lambda_rho.clone(),
        }
    }

    pub fn restrict(&self) -> Tracked {
        Tracked::input("iota*".into(), self.restrict.clone())
    }
    pub fn gysin(&self) -> Tracked {
        Tracked::input("iota_*".into(), self.gysin.clone())
    }
    pub fn f_upper(&self) -> Tracked {
        Tracked::input("f*".into(), self.f_upper.clone())
    }
    pub fn f_lower(&self) -> Tracked {
        Tracked::input("f_*".into(), self.f_lower.clone())
    }
    pub fn k_upper(&self) -> Tracked {
        Tracked::input("k*".into(), self.k_upper.clone())
    }
    pub fn k_lower(&self) -> Tracked {
        Tracked::input("k_*".into(), self.k_lower.clone())
    }
    pub fn l_x(&self) -> Tracked {
        Tracked::input("L_X".into(), self.l_x.clone())
    }
    pub fn lambda_y(&self) -> Tracked {
        Tracked::input("Lambda_Y".into(), self.y.lambda())
    }
    pub fn pi_y(&self, i: usize) -> Tracked {
        Tracked::input(format!("pi_Y:{i}"), self.y.kunneth_projector(i))
    }
    pub fn pi_rho(&self, k: i64) -> Tracked {
        Tracked::input(format!("pi_rho:{k}"), self.leray.pi_rho(k))
    }
    pub fn lambda_rho(&self) -> Tracked {
        Tracked::input("Lambda_rho".into(), self.lambda_rho.clone())
    }

    fn transpose_x(&self, u: &Tracked) -> Tracked {
        u.transposed(&self.x_model, "transpose_X")
    }

    /// `ι_* Λ_Y π^i_Y ι*`, the fibre-level form of `π^i_X − p^i_X`.
    pub fn fibre_correction(&self, i: usize) -> Tracked {
        chain(&[&self.gysin(), &self.lambda_y(), &self.pi_y(i), &self.restrict()])
    }
}

/// A reconstructed operator and the identity that produced it.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub name: String,
    pub identity: &'static str,
    pub value: Tracked,
}

impl Reconstruction {
    fn new(name: impl Into<String>, identity: &'static str, value: Tracked) -> Self {
        Reconstruction { name: name.into(), identity, value }
    }

    fn provenance(&self) -> serde_json::Value {
        json!({ "identity": self.identity, "inputs": self.value.trail().iter().collect::<Vec<_>>() })
    }
}

/// Bootstrap over one pencil. `ingredients` feeds reconstructions; the
/// absolute contexts are used only to compare against.
#[derive(Clone, Debug)]
pub struct BootstrapPipeline {
    pub ingredients: Ingredients,
    pub pencil: PencilContext,
    pub section: SectionContext,
}

impl BootstrapPipeline {
    pub fn new(datum: &PencilDatum) -> Result<Self, String> {
        let pencil = PencilContext::new(datum)?;
        let section = SectionContext::new(&datum.section()).map_err(|e| format!("section: {e}"))?;
        Ok(BootstrapPipeline { ingredients: Ingredients::new(&pencil, &section), pencil, section })
    }

    pub fn n(&self) -> usize {
        self.ingredients.n
    }

    fn x(&self) -> &LefschetzContext {
        &self.pencil.x
    }

    fn x_labels(&self) -> &[Vec<String>] {
        self.pencil.x.labels()
    }

    /// `π^{k,2} = π^k_ρ f*(π^{k+2}_X − p^{k+2}_X) f_* π^k_ρ` for `k + 2 ≤ n`.
    pub fn upper_piece(&self, k: usize) -> Reconstruction {
        assert!(k + 2 <= self.n());
        let v = self.sandwich(k).scaled(&q(2));
        Reconstruction::new(format!("pi:{k},2"), "pi^{k,2} = 2 pi^k_rho f* (iota_* Lambda_Y pi^{k+2}_Y iota*) f_* pi^k_rho", v)
    }

    /// `π^k_ρ f*(ι_*Λ_Yπ^{k+2}_Yι*) f_* π^k_ρ`, which is `½π^{k,2}`: the
    /// class `ι_*y ⊕ 0` splits evenly between `k_*y` and `ι_*y ⊕ h*y`.
    pub fn sandwich(&self, k: usize) -> Tracked {
        let g = &self.ingredients;
        let pr = g.pi_rho(k as i64);
        chain(&[&pr, &g.f_upper(), &g.fibre_correction(k + 2), &g.f_lower(), &pr])
    }

    /// `π^{k,0} = π^k_ρ − π^{k,2}` for `k ≤ n − 2`.
    pub fn lower_piece(&self, k: usize) -> Reconstruction {
        let v = self.ingredients.pi_rho(k as i64).sub(&self.upper_piece(k).value);
        Reconstruction::new(format!("pi:{k},0"), "pi^{k,0} = pi^k_rho - pi^{k,2}", v)
    }

    /// `π^i_{X̃} = π^{i,0} + π^{i−2,2}` for `i ≤ n − 2`.
    pub fn tilde_projector(&self, i: usize) -> Reconstruction {
        let mut v = self.lower_piece(i).value;
        if i >= 2 {
            v = v.add(&self.upper_piece(i - 2).value);
        }
        Reconstruction::new(format!("pi_X~:{i}"), "pi^i_X~ = pi^{i,0} + pi^{i-2,2}", v)
    }

    /// `π^i_X` for `i ≤ n − 2` by descent, and for `i ≥ n + 2` by transposition.
    pub fn kunneth(&self, i: usize) -> Reconstruction {
        let n = self.n();
        let g = &self.ingredients;
        if i <= n - 2 {
            let v = chain(&[&g.f_lower(), &self.tilde_projector(i).value, &g.f_upper()]);
            Reconstruction::new(format!("pi_X:{i}"), "pi^i_X = f_* pi^i_X~ f*", v)
        } else {
            assert!(i >= n + 2 && i <= 2 * n, "pi^{i} is not reconstructed");
            let v = g.transpose_x(&self.kunneth(2 * n - i).value);
            Reconstruction::new(format!("pi_X:{i}"), "pi^i_X = t(pi^(2n-i)_X)", v)
        }
    }

    /// `p^i_X = π^i_X − ι_*Λ_Yπ^i_Yι*` for `i ≤ n − 2`.
    pub fn low_primitive(&self, i: usize) -> Reconstruction {
        let v = self.kunneth(i).value.sub(&self.ingredients.fibre_correction(i));
        Reconstruction::new(format!("p_X:{i}"), "p^i_X = pi^i_X - iota_* Lambda_Y pi^i_Y iota*", v)
    }

    /// `L^{n−i−1} p^{2n−i}_X = f_* Λ_ρ f* ᵗp^i_X` for `i ≤ n − 2`.
    pub fn high_primitive(&self, i: usize) -> Reconstruction {
        let g = &self.ingredients;
        let tp = g.transpose_x(&self.low_primitive(i).value);
        let v = chain(&[&g.f_lower(), &g.lambda_rho(), &g.f_upper(), &tp]);
        let n = self.n();
        Reconstruction::new(
            format!("L^{}p_X:{}", n - i - 1, 2 * n - i),
            "L^(n-i-1) p^(2n-i)_X = f_* Lambda_rho f* t(p^i_X)",
            v,
        )
    }

    /// `Λ_X π^i_X = ι_*Λ_Y²π^i_Yι* + Σ_{j ≥ n+2} ᵗ(L^{j−n−1}p^j) ι_*Λ_Yπ^i_Yι*`
    /// for `i ≤ n`; the `j = n + 1` term vanishes on `H^i`.
    pub fn lambda_low(&self, i: usize) -> Reconstruction {
        let n = self.n();
        let g = &self.ingredients;
        let base = g.fibre_correction(i);
        let lam_y = g.lambda_y();
        let mut v = chain(&[&g.gysin(), &lam_y, &lam_y, &g.pi_y(i), &g.restrict()]);
        for j in n + 2..=2 * n {
            let corr = g.transpose_x(&self.high_primitive(2 * n - j).value);
            v = v.add(&chain(&[&corr, &base]));
        }
        Reconstruction::new(format!("Lambda_X pi_X:{i}"), "Lambda pi^i = Lambda (pi^i - p^i) via the induction identity", v)
    }

    /// `(Λ_X − p^{n+1}_X) π^{n+1}_X = ι_* Λ_Y π^{n−1}_Y Λ_Y π^{n+1}_Y ι*`.
    pub fn lambda_middle(&self) -> Reconstruction {
        let n = self.n();
        let g = &self.ingredients;
        let lam_y = g.lambda_y();
        let v = chain(&[&g.gysin(), &lam_y, &g.pi_y(n - 1), &lam_y, &g.pi_y(n + 1), &g.restrict()]);
        Reconstruction::new(
            format!("(Lambda_X - p_X:{}) pi_X:{}", n + 1, n + 1),
            "(pi^(n-1) - p^(n-1)) Lambda = iota_* Lambda_Y pi^(n-1)_Y Lambda_Y iota* on H^(n+1)",
            v,
        )
    }

    /// `Λ_X − p^{n+1}_X` assembled degree by degree.
    pub fn assemble(&self) -> Reconstruction {
        let n = self.n();
        let g = &self.ingredients;
        let mut parts: Vec<Tracked> = (0..=n).map(|i| self.lambda_low(i).value).collect();
        parts.push(self.lambda_middle().value);
        for i in n + 2..=2 * n {
            parts.push(g.transpose_x(&self.lambda_low(2 * n + 2 - i).value));
        }
        let v = sum(parts).expect("nonempty");
        Reconstruction::new("Lambda_X - p_X:n+1", "Lambda - p^(n+1) = Lambda (sum_(i<=n) pi^i + (pi^(n+1) - t p^(n-1)) + sum_(i>=n+2) pi^i)", v)
    }

    /// All reconstructions in a fixed order.
    pub fn reconstructions(&self) -> Vec<Reconstruction> {
        let n = self.n();
        let mut out = Vec::new();
        for k in 0..=n - 2 {
            out.push(self.upper_piece(k));
        }
        for i in (0..=n - 2).chain(n + 2..=2 * n) {
            out.push(self.kunneth(i));
        }
        for i in 0..=n - 2 {
            out.push(self.low_primitive(i));
            out.push(self.high_primitive(i));
        }
        for i in 0..=n {
            out.push(self.lambda_low(i));
        }
        out.push(self.lambda_middle());
        out.push(self.assemble());
        out
    }

    fn provenance_param(&self, r: &mut Report, items: &[Reconstruction]) {
        let map: serde_json::Map<String, serde_json::Value> =
            items.iter().map(|c| (c.name.clone(), c.provenance())).collect();
        r.param("provenance", serde_json::Value::Object(map));
        let bad: Vec<String> = items.iter().filter_map(|c| c.value.audit().err().map(|e| format!("{}: {e}", c.name))).collect();
        r.check("provenance uses no X-side decomposition input", bad.is_empty(), || Witness {
            location: "provenance trail".into(),
            lhs: bad.join(", "),
            rhs: "only whitelisted inputs".into(),
        });
    }

    pub fn reconstruct_low_kunneth(&self) -> Report {
        let mut r = Report::new("reconstruct-kunneth");
        let n = self.n();
        let le = &self.pencil.leray;
        let xt_labels = le.labels().to_vec();
        let mut items = Vec::new();
        for k in 0..=n - 2 {
            let half = le.pi(k as i64, 2).scale(&crate::linalg::qr(1, 2));
            r.check_ops(format!("pi^{k}_rho f* (pi^{0} - p^{0}) f_* pi^{k}_rho = pi^{k},2 / 2", k + 2), self.sandwich(k).op(), &half, &xt_labels);
            let up = self.upper_piece(k);
            r.check_ops(format!("pi^{k},2 reconstructed"), up.value.op(), &le.pi(k as i64, 2), &xt_labels);
            let low = self.lower_piece(k);
            r.check_ops(format!("pi^{k},0 reconstructed"), low.value.op(), &le.pi(k as i64, 0), &xt_labels);
            let t = self.tilde_projector(k);
            r.check_ops(format!("pi^{k}_X~ reconstructed"), t.value.op(), &le.grading(k), &xt_labels);
            items.extend([up, low, t]);
        }
        for i in (0..=n - 2).chain(n + 2..=2 * n) {
            let c = self.kunneth(i);
            r.check_ops(format!("pi^{i}_X reconstructed"), c.value.op(), &self.x().kunneth_projector(i), self.x_labels());
            items.push(c);
        }
        for i in 0..=n - 2 {
            let c = self.low_primitive(i);
            r.check_ops(format!("p^{i}_X reconstructed"), c.value.op(), &self.x().primitive_projector(i), self.x_labels());
            items.push(c);
        }
        r.param("sandwich_factor", 2);
        self.provenance_param(&mut r, &items);
        r
    }

    pub fn lemafinal_suite(&self) -> Report {
        let mut r = Report::new("lemafinal");
        let n = self.n();
        let x = self.x();
        let b = &self.pencil.leray.blowup;
        let labels = self.x_labels();
        let mut items = Vec::new();
        for i in 0..=n - 2 {
            let tp = x.transpose(&x.primitive_projector(i));
            let formal = x.l_power(n - i - 1).compose(&x.primitive_projector(2 * n - i));
            let lam_tp = x.lambda().compose(&tp);
            let pencil = b.f_lower.compose(&self.pencil.rel.lambda_rho).compose(&b.f_upper).compose(&tp);
            r.check_ops(format!("L^{} p^{} = Lambda t(p^{i})", n - i - 1, 2 * n - i), &formal, &lam_tp, labels);
            r.check_ops(format!("Lambda t(p^{i}) = f_* Lambda_rho f* t(p^{i})"), &lam_tp, &pencil, labels);
            let c = self.high_primitive(i);
            r.check_ops(format!("L^{} p^{} reconstructed", n - i - 1, 2 * n - i), c.value.op(), &formal, labels);
            items.push(c);
        }
        r.param("i_range", json!([0, n - 2]));
        self.provenance_param(&mut r, &items);
        r
    }

    /// Checks the `Λ_X(π^i − p^i)` chain with corrections `p^j L^{j−n−1}`
    /// for `n+1 ≤ j ≤ j_max`, then the middle-degree identities.
    pub fn finalsi_suite(&self, j_max: usize) -> Report {
        let mut r = Report::new("finalsi");
        let n = self.n();
        let x = self.x();
        let labels = self.x_labels();
        let lam = x.lambda();
        let g = &self.section.gysin;
        let res = &self.section.datum.restrict;
        let y = &self.section.y;
        let mut items = Vec::new();
        for i in 0..=n {
            let pi = x.kunneth_projector(i);
            let lam_pi = lam.compose(&pi);
            let pi_lam = if i >= 2 { x.kunneth_projector(i - 2).compose(&lam) } else { x.zero(-2) };
            let lam_diff = lam.compose(&pi.sub(&x.primitive_projector(i)));
            r.check_ops(format!("Lambda pi^{i} = pi^{} Lambda", i as i64 - 2), &lam_pi, &pi_lam, labels);
            r.check_ops(format!("Lambda pi^{i} = Lambda (pi^{i} - p^{i})"), &lam_pi, &lam_diff, labels);

            let base = g.compose(&y.lambda()).compose(&y.kunneth_projector(i)).compose(res);
            let mut rhs = g.compose(&y.lambda().pow(2)).compose(&y.kunneth_projector(i)).compose(res);
            for j in n + 1..=j_max.min(2 * n) {
                let term = x.primitive_projector(j).compose(&x.l_power(j - n - 1)).compose(&base);
                rhs = rhs.add(&term);
            }
            r.check_ops(
                format!("Lambda (pi^{i} - p^{i}) = iota_* Lambda_Y^2 pi^{i}_Y iota* + sum_(j<={j_max}) p^j L^(j-n-1) iota_* Lambda_Y pi^{i}_Y iota*"),
                &lam_diff,
                &rhs,
                labels,
            );
            let c = self.lambda_low(i);
            r.check_ops(format!("Lambda pi^{i} reconstructed"), c.value.op(), &lam_pi, labels);
            items.push(c);
        }
        let pn1 = x.primitive_projector(n + 1);
        let tpl = x.transpose(&x.primitive_projector(n - 1));
        r.check_ops(format!("Lambda t(p^{}) = p^{}", n - 1, n + 1), &lam.compose(&tpl), &pn1, labels);
        let pi_n1 = x.kunneth_projector(n + 1);
        let mid = lam.sub(&pn1).compose(&pi_n1);
        r.check_ops(
            format!("Lambda (pi^{} - t(p^{})) = (Lambda - p^{}) pi^{}", n + 1, n - 1, n + 1, n + 1),
            &lam.compose(&pi_n1.sub(&tpl)),
            &mid,
            labels,
        );
        let pre = x.kunneth_projector(n - 1).sub(&x.primitive_projector(n - 1)).compose(&lam);
        r.check_ops(format!("(pi^{} - p^{}) Lambda = (Lambda - p^{}) pi^{}", n - 1, n - 1, n + 1, n + 1), &pre, &mid, labels);
        let c = self.lambda_middle();
        r.check_ops(format!("(Lambda - p^{}) pi^{} reconstructed", n + 1, n + 1), c.value.op(), &mid, labels);
        items.push(c);
        r.param("j_range", json!([n + 1, j_max]));
        r.param("exponent", "j-n-1");
        self.provenance_param(&mut r, &items);
        r
    }

    /// `Λ_X − p^{n+1}_X` assembled and compared degree by degree.
    pub fn assemble_lambda_minus_p(&self) -> (GradedOperator, Report) {
        let mut r = Report::new("assembly");
        let n = self.n();
        let x = self.x();
        let labels = self.x_labels();
        let target = x.lambda().sub(&x.primitive_projector(n + 1));
        let built = self.assemble();
        for d in 0..=2 * n {
            r.check_ops(
                format!("assembled Lambda - p^{} on H^{d}", n + 1),
                &built.value.op().restrict_to(d),
                &target.restrict_to(d),
                labels,
            );
        }
        let (res, gy) = (&self.section.datum.restrict, &self.section.gysin);
        let down = res.compose(&target);
        let aside = x.transpose(&target).compose(gy).compose(&down);
        r.check_ops(format!("t[iota*(Lambda - p^{0})] iota*(Lambda - p^{0}) = Lambda - p^{0}", n + 1), &aside, &target, labels);
        r.param("rank_p_n_plus_1", x.primitive_projector(n + 1).rank());
        self.provenance_param(&mut r, std::slice::from_ref(&built));
        (built.value.op().clone(), r)
    }

    /// `e_{V(Y)}`: projection onto `V(Y)` along `ι*H^{n−1}(X)` in the middle
    /// degree of `Y`, zero elsewhere.
    pub fn vanishing_projector(&self) -> Result<GradedOperator, String> {
        let d = &self.section.datum;
        let mid = self.n() - 1;
        let e = projector_along(&d.vanishing_subspace(), &d.invariant_subspace()).map_err(|e| e.to_string())?;
        Ok(GradedOperator::from_blocks(d.y.dims(), d.y.dims(), 0, vec![(mid, e)]))
    }

    pub fn pnplus1_suite(&self) -> Report {
        let mut r = Report::new("pnplus1");
        let n = self.n();
        let x = self.x();
        let labels = self.x_labels();
        let pn1 = x.primitive_projector(n + 1);
        let (res, gy) = (&self.section.datum.restrict, &self.section.gysin);
        let d = &self.section.datum;

        let down = res.compose(&pn1);
        let t_down = adjoint(&down, &d.x, &d.y);
        r.check_ops(format!("t(iota* p^{0}) iota* p^{0} = p^{0} L p^{0}", n + 1), &t_down.compose(&down), &pn1.compose(&x.l).compose(&pn1), labels);
        r.check_ops(format!("p^{0} L p^{0} = p^{0}", n + 1), &pn1.compose(&x.l).compose(&pn1), &pn1, labels);

        let y_labels = self.section.y.labels();
        let mid = n - 1;
        match self.vanishing_projector() {
            Err(e) => r.fail("V(Y) and iota* H^(n-1)(X) are complementary", Witness { location: format!("H^{mid}(Y)"), lhs: e, rhs: "direct sum".into() }),
            Ok(e) => {
                r.check_ops("e_V(Y) idempotent", &e.compose(&e), &e, y_labels);
                r.check_ops("e_V(Y) self-transpose", &transpose(&e, &d.y), &e, y_labels);
                let (vy, inv) = (d.vanishing_subspace(), d.invariant_subspace());
                r.check_eq("Im e_V(Y) = V(Y)", e.block(mid).column_space(), vy.clone());
                r.check_eq("Ker e_V(Y) = iota* H^(n-1)(X)", e.block(mid).kernel(), inv.clone());
                r.check_eq("V(Y) is the orthogonal of iota* H^(n-1)(X)", orthogonal(&d.y, mid, &inv), vy);
                let lhs = self.section.y.primitive_projector(mid).sub(&e);
                let rhs = res.compose(&pn1).compose(gy);
                r.check_ops(format!("p^{mid}_Y - e_V(Y) = iota* p^{} iota_*", n + 1), &lhs, &rhs, y_labels);
            }
        }

        let (in_f2, meets_f1) = self.liftability_facts();
        r.check(format!("L P^{}(X) + 0 in F^2", n - 1), in_f2, || Witness {
            location: format!("H^{}(X~)", n + 1),
            lhs: "not contained".into(),
            rhs: "F^2".into(),
        });
        r.check(format!("(P^{}(X) + H^{}(Delta)) meets F^1 trivially", n - 1, n as i64 - 3), meets_f1 == 0, || Witness {
            location: format!("H^{}(X~)", n - 1),
            lhs: format!("intersection dim {meets_f1}"),
            rhs: "0".into(),
        });
        let feasible = self.filtered_lift_exists();
        let nonzero = !pn1.is_zero();
        r.check("filtered lift of p^(n+1) infeasible iff p^(n+1) != 0", feasible != nonzero, || Witness {
            location: "lift system".into(),
            lhs: format!("feasible = {feasible}"),
            rhs: format!("p^(n+1) nonzero = {nonzero}"),
        });
        r.param("lift_feasible", feasible);
        r
    }

    /// `(LP^{n−1}(X) ⊕ 0 ⊆ F², dim (P^{n−1}(X) ⊕ H^{n−3}(Δ)) ∩ F¹)`.
    pub fn liftability_facts(&self) -> (bool, usize) {
        let n = self.n();
        let le = &self.pencil.leray;
        let p = &le.primitive_x[n - 1];
        let l = self.pencil.x.l.block(n - 1);
        let dd = |k: usize| if k >= 2 { le.pencil.delta.dims()[k - 2] } else { 0 };
        let zeros = |len: usize| vec![Q::default(); len];
        let lifted: Vec<Vec<Q>> = p.basis().iter().map(|v| join(&l.mul_vec(v), &zeros(dd(n + 1)))).collect();
        let in_f2 = Subspace::span(le.dims()[n + 1], &lifted).is_subspace_of(&le.f2[n + 1]);

        let amb = le.dims()[n - 1];
        let dx = le.pencil.x.dims()[n - 1];
        let mut gens: Vec<Vec<Q>> = p.basis().iter().map(|v| join(v, &zeros(dd(n - 1)))).collect();
        for a in 0..dd(n - 1) {
            let mut e = zeros(amb);
            e[dx + a] = q(1);
            gens.push(e);
        }
        let meet = Subspace::span(amb, &gens).intersection(&le.f1[n - 1]).expect("same ambient").dim();
        (in_f2, meet)
    }

    /// Whether some degree −2 operator `w` on `X̃` preserves `F¹` and `F²`
    /// and satisfies `f_* w f* = p^{n+1}_X`, decided by an exact solve.
    pub fn filtered_lift_exists(&self) -> bool {
        let le = &self.pencil.leray;
        let dims = le.dims().to_vec();
        let b = &le.blowup;
        let target = self.x().primitive_projector(self.n() + 1);
        let mut offsets = Vec::new();
        let mut unknowns = 0;
        for k in 0..dims.len() {
            offsets.push(unknowns);
            if k >= 2 {
                unknowns += dims[k - 2] * dims[k];
            }
        }
        let idx = |k: usize, r: usize, c: usize| offsets[k] + r * dims[k] + c;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for k in 2..dims.len() {
            for (src, tgt) in [(&le.f1[k], &le.f1[k - 2]), (&le.f2[k], &le.f2[k - 2])] {
                let ann = tgt.annihilator();
                for v in src.basis() {
                    for a in ann.basis() {
                        let mut row = vec![Q::default(); unknowns];
                        for (r_, ar) in a.iter().enumerate() {
                            for (c, vc) in v.iter().enumerate() {
                                row[idx(k, r_, c)] = ar * vc;
                            }
                        }
                        rows.push(row);
                        rhs.push(Q::default());
                    }
                }
            }
            let (lo, up) = (b.f_lower.block(k - 2), b.f_upper.block(k));
            let want = target.block(k);
            for rr in 0..lo.rows() {
                for cc in 0..up.cols() {
                    let mut row = vec![Q::default(); unknowns];
                    for a in 0..dims[k - 2] {
                        for c in 0..dims[k] {
                            row[idx(k, a, c)] = lo.get(rr, a) * up.get(c, cc);
                        }
                    }
                    rows.push(row);
                    rhs.push(want.get(rr, cc).clone());
                }
            }
        }
        let a = Matrix::from_rows(rows, unknowns);
        let bcol = Matrix::from_columns(&[rhs], a.rows());
        a.solve(&bcol).is_some()
    }

    /// Every suite of the bootstrap, in dependency order.
    pub fn mainthm_suite(&self, j_max: usize) -> Report {
        let mut r = Report::new("mainthm");
        r.absorb("reconstruct", self.reconstruct_low_kunneth());
        r.absorb("lemafinal", self.lemafinal_suite());
        r.absorb("finalsi", self.finalsi_suite(j_max));
        r.absorb("assembly", self.assemble_lambda_minus_p().1);
        r.absorb("pnplus1", self.pnplus1_suite());
        r
    }
}
