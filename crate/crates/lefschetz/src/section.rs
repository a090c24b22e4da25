//! Hyperplane sections and pencils: restriction data, derived Gysin maps and
//! their consistency checks.

use crate::graded::GradedOperator;
use crate::linalg::Subspace;
use crate::model::{adjoint, ModelError, PoincareModel};
use crate::report::{fmt_vec, Report, Witness};

/// `(X, Y, ι*)` with `Y` of one dimension less than `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDatum {
    pub x: PoincareModel,
    pub y: PoincareModel,
    pub restrict: GradedOperator,
}

fn check_restriction(x: &PoincareModel, y: &PoincareModel, r: &GradedOperator) -> Result<(), ModelError> {
    if x.n() != y.n() + 1 {
        return Err(ModelError::Shape(format!("section of dimension {} inside dimension {}", y.n(), x.n())));
    }
    if r.degree() != 0 || r.src_dims() != x.dims() || r.tgt_dims() != y.dims() {
        return Err(ModelError::Shape("restriction must be a degree-0 map between the given models".into()));
    }
    Ok(())
}

impl SectionDatum {
    pub fn new(x: PoincareModel, y: PoincareModel, restrict: GradedOperator) -> Result<Self, ModelError> {
        check_restriction(&x, &y, &restrict)?;
        Ok(SectionDatum { x, y, restrict })
    }

    /// `ι_*`, always derived as the pairing-adjoint of `ι*`.
    pub fn gysin(&self) -> GradedOperator {
        adjoint(&self.restrict, &self.x, &self.y)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new("section");
        let (x, y, res) = (&self.x, &self.y, &self.restrict);
        let push = self.gysin();

        let unit_img = res.block(0).mul_vec(&x.unit());
        r.check("restriction-unital", unit_img == y.unit(), || Witness {
            location: "H^0".into(),
            lhs: fmt_vec(&unit_img),
            rhs: fmt_vec(&y.unit()),
        });

        let mut hom_bad = None;
        'hom: for i in 0..=x.top() {
            for j in 0..=x.top() - i {
                for a in 0..x.dims()[i] {
                    for b in 0..x.dims()[j] {
                        let ea = x.basis_vector(i, a);
                        let eb = x.basis_vector(j, b);
                        let lhs = match (i + j <= y.top(), x.product(i, &ea, j, &eb)) {
                            (true, Some(p)) => res.block(i + j).mul_vec(&p),
                            _ => continue,
                        };
                        let rhs = y
                            .product(i, &res.block(i).mul_vec(&ea), j, &res.block(j).mul_vec(&eb))
                            .expect("in range");
                        if lhs != rhs {
                            hom_bad = Some((i, a, j, b, lhs, rhs));
                            break 'hom;
                        }
                    }
                }
            }
        }
        r.check("restriction-multiplicative", hom_bad.is_none(), || {
            let (i, a, j, b, l, rr) = hom_bad.clone().unwrap();
            Witness { location: format!("{} * {}", x.labels()[i][a], x.labels()[j][b]), lhs: fmt_vec(&l), rhs: fmt_vec(&rr) }
        });

        if x.n() >= 1 && y.n() >= 1 {
            let xi_img = res.block(2).mul_vec(x.xi());
            r.check("restriction-of-polarization", xi_img == y.xi(), || Witness {
                location: "H^2".into(),
                lhs: fmt_vec(&xi_img),
                rhs: fmt_vec(y.xi()),
            });
        }

        r.check_ops("gysin-restrict = L_X", &push.compose(res), &x.lefschetz(), x.labels());
        r.check_ops("restrict-gysin = L_Y", &res.compose(&push), &y.lefschetz(), y.labels());

        let class = push.block(0).mul_vec(&y.unit());
        let xi_x = x.xi().to_vec();
        r.check("gysin(1) = xi_X", class == xi_x, || Witness {
            location: "H^2".into(),
            lhs: fmt_vec(&class),
            rhs: fmt_vec(&xi_x),
        });

        let mut proj_bad = None;
        'proj: for i in 0..=x.top() {
            for j in 0..=y.top() {
                if i + j > y.top() {
                    continue;
                }
                for a in 0..x.dims()[i] {
                    for b in 0..y.dims()[j] {
                        let ea = x.basis_vector(i, a);
                        let eb = y.basis_vector(j, b);
                        let ry = y.product(i, &res.block(i).mul_vec(&ea), j, &eb).unwrap();
                        let lhs = push.block(i + j).mul_vec(&ry);
                        let rhs = x.product(i, &ea, j + 2, &push.block(j).mul_vec(&eb)).unwrap();
                        if lhs != rhs {
                            proj_bad = Some((i, a, j, b, lhs, rhs));
                            break 'proj;
                        }
                    }
                }
            }
        }
        r.check("projection-formula", proj_bad.is_none(), || {
            let (i, a, j, b, l, rr) = proj_bad.clone().unwrap();
            Witness { location: format!("x = {}, y = {}", x.labels()[i][a], y.labels()[j][b]), lhs: fmt_vec(&l), rhs: fmt_vec(&rr) }
        });
        r
    }

    /// `V(Y) = Ker ι_*` on the middle cohomology of `Y`.
    pub fn vanishing_subspace(&self) -> Subspace {
        self.gysin().block(self.y.n()).kernel()
    }

    /// `ι*H^{n−1}(X)` inside the middle cohomology of `Y`.
    pub fn invariant_subspace(&self) -> Subspace {
        self.restrict.block(self.y.n()).column_space()
    }
}

/// `(X, Y, Δ, ι*, h*, m)`: the data of a pencil with base locus `Δ ⊂ Y ⊂ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilDatum {
    pub name: String,
    pub x: PoincareModel,
    pub y: PoincareModel,
    pub delta: PoincareModel,
    pub iota: GradedOperator,
    pub h: GradedOperator,
    pub m: i64,
}

/// Gysin maps of a pencil, all derived by adjointness.
#[derive(Clone, Debug)]
pub struct Gysin {
    pub iota_lower: GradedOperator,
    pub h_lower: GradedOperator,
    pub j_upper: GradedOperator,
    pub j_lower: GradedOperator,
}

impl PencilDatum {
    pub fn new(
        name: &str,
        x: PoincareModel,
        y: PoincareModel,
        delta: PoincareModel,
        iota: GradedOperator,
        h: GradedOperator,
        m: i64,
    ) -> Result<Self, ModelError> {
        check_restriction(&x, &y, &iota)?;
        check_restriction(&y, &delta, &h)?;
        if m < 1 {
            return Err(ModelError::Shape(format!("pencil multiplier m = {m} must be at least 1")));
        }
        Ok(PencilDatum { name: name.to_string(), x, y, delta, iota, h, m })
    }

    pub fn with_m(&self, m: i64) -> Result<Self, ModelError> {
        if m < 1 {
            return Err(ModelError::Shape(format!("pencil multiplier m = {m} must be at least 1")));
        }
        Ok(PencilDatum { m, ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn section(&self) -> SectionDatum {
        SectionDatum { x: self.x.clone(), y: self.y.clone(), restrict: self.iota.clone() }
    }

    pub fn base_section(&self) -> SectionDatum {
        SectionDatum { x: self.y.clone(), y: self.delta.clone(), restrict: self.h.clone() }
    }

    pub fn gysin_maps(&self) -> Gysin {
        let iota_lower = adjoint(&self.iota, &self.x, &self.y);
        let h_lower = adjoint(&self.h, &self.y, &self.delta);
        Gysin {
            j_upper: self.h.compose(&self.iota),
            j_lower: iota_lower.compose(&h_lower),
            iota_lower,
            h_lower,
        }
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new("pencil");
        r.absorb("X", self.x.validate());
        r.absorb("Y", self.y.validate());
        r.absorb("Delta", self.delta.validate());
        r.absorb("X>Y", self.section().validate());
        r.absorb("Y>Delta", self.base_section().validate());
        let g = self.gysin_maps();
        let j_adj = adjoint(&g.j_upper, &self.x, &self.delta);
        r.check_ops("j_* = adjoint(j*)", &g.j_lower, &j_adj, self.delta.labels());
        r
    }

    /// `V(Δ) = Ker(h_*: H^{n−2}(Δ) → H^n(Y))`.
    pub fn delta_vanishing_subspace(&self) -> Subspace {
        self.base_section().vanishing_subspace()
    }
}
