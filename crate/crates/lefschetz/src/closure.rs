//! Unital operator algebras generated by finitely many square matrices.

use num_traits::Zero;

use crate::absolute::LefschetzContext;
use crate::linalg::{Matrix, Subspace, Q};
use crate::report::{Report, Witness};

/// An incrementally maintained fully reduced echelon basis.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn reduce(&self, v: &mut [Q]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }
}

fn flatten(m: &Matrix) -> Vec<Q> {
    m.to_rows().into_iter().flatten().collect()
}

/// The unital subalgebra of `End(Q^size)` generated by the given operators.
#[derive(Clone, Debug)]
pub struct OperatorAlgebra {
    size: usize,
    echelon: Echelon,
    span: Subspace,
}

impl OperatorAlgebra {
    pub fn generated_by(size: usize, generators: &[Matrix]) -> Self {
        let mut echelon = Echelon::default();
        let mut words: Vec<Matrix> = Vec::new();
        let id = Matrix::identity(size);
        echelon.insert(flatten(&id));
        words.push(id);
        let mut cursor = 0;
        while cursor < words.len() {
            let w = words[cursor].clone();
            cursor += 1;
            for g in generators {
                let candidate = g.mul(&w);
                if echelon.insert(flatten(&candidate)) {
                    words.push(candidate);
                }
            }
        }
        let vectors: Vec<Vec<Q>> = echelon.rows.iter().map(|(_, r)| r.clone()).collect();
        let span = Subspace::span(size * size, &vectors);
        OperatorAlgebra { size, echelon, span }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        assert_eq!((m.rows(), m.cols()), (self.size, self.size));
        self.echelon.contains(&flatten(m))
    }

    /// Canonical basis of the algebra as a subspace of `Q^{size²}`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

}

/// Compares the algebras generated by `{L, Λ}`, `{L, ᶜΛ}` and
/// `{L, p^n, …, p^{2n}}`, plus the memberships relating them.
pub fn ring_suite(ctx: &LefschetzContext) -> Report {
    let mut r = Report::new("operator-ring");
    let size = ctx.model.total_dim();
    let n = ctx.n();
    let l = ctx.l.to_full();
    let lam = ctx.lambda().to_full();
    let cl = ctx.clambda().to_full();
    let highs: Vec<Matrix> = (n..=2 * n).map(|k| ctx.primitive_projector(k).to_full()).collect();

    let a_lam = OperatorAlgebra::generated_by(size, &[l.clone(), lam.clone()]);
    let a_cl = OperatorAlgebra::generated_by(size, &[l.clone(), cl.clone()]);
    let mut gens = vec![l];
    gens.extend(highs.iter().cloned());
    let a_p = OperatorAlgebra::generated_by(size, &gens);

    let dims = || Witness {
        location: "operator space".into(),
        lhs: format!("dims {} / {} / {}", a_lam.dim(), a_cl.dim(), a_p.dim()),
        rhs: "equal spans".into(),
    };
    r.check("<L, Lambda> = <L, cLambda>", a_lam.span() == a_cl.span(), dims);
    r.check("<L, Lambda> = <L, p^n..p^2n>", a_lam.span() == a_p.span(), dims);
    r.check("Lambda in <L, cLambda>", a_cl.contains(&lam), dims);
    r.check("cLambda in <L, Lambda>", a_lam.contains(&cl), dims);
    r.check("Lambda in <L, p^n..p^2n>", a_p.contains(&lam), dims);
    for (k, p) in highs.iter().enumerate() {
        r.check(format!("p^{} in <L, Lambda>", n + k), a_lam.contains(p), dims);
    }
    for i in 0..=ctx.model.top() {
        let pi = ctx.kunneth_projector(i).to_full();
        r.check(format!("pi^{i} in <L, Lambda>"), a_lam.contains(&pi), dims);
    }
    r.param("algebra_dim", a_lam.dim());
    r
}
