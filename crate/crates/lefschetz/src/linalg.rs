//! Exact rational matrices, canonical subspaces, and the interpolation
//! constructions (primary projectors, semisimple part) used downstream.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_q).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(cols: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, x) in v.iter().enumerate() {
                m.data[r * cols.len() + c] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Reduced row-echelon form and pivot columns; pivots are chosen at the
    /// lowest available row index in each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != lead {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = m.get(lead, c).recip();
            for k in c..m.cols {
                let v = m.get(lead, k) * &inv;
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let sub = &factor * m.get(lead, k);
                    if !sub.is_zero() {
                        let v = m.get(r, k) - sub;
                        m.set(r, k, v);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            vectors.push(v);
        }
        Subspace::span(self.cols, &vectors)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, &(0..self.cols).map(|c| self.col(c)).collect::<Vec<_>>())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    /// Some `X` with `self * X = rhs`, if one exists (free variables set to zero).
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(row, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// A left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let gram = self.transpose().mul(self);
        Some(gram.inverse()?.mul(&self.transpose()))
    }
}

/// A linear subspace of `Q^ambient`, stored by its reduced echelon basis so
/// that equal subspaces are equal as data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let m = Matrix::from_rows(vectors.to_vec(), ambient);
        let (r, pivots) = m.rref();
        Subspace { ambient, basis: r.submatrix(0, 0, pivots.len(), ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.basis.to_rows()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        self.basis.transpose()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient).rank() == self.dim()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Dimension(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut rows = self.basis();
        rows.extend(other.basis());
        Ok(Subspace::span(self.ambient, &rows))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// A complement of `self` inside `larger`, chosen greedily from the
    /// echelon basis of `larger` in index order.
    pub fn complement_within(&self, larger: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(larger)?;
        if !self.is_subspace_of(larger) {
            return Err(LinalgError::NotContained);
        }
        let mut acc = self.basis();
        let mut chosen = Vec::new();
        for v in larger.basis() {
            acc.push(v.clone());
            if Matrix::from_rows(acc.clone(), self.ambient).rank() == acc.len() {
                chosen.push(v);
            } else {
                acc.pop();
            }
        }
        Ok(Subspace::span(self.ambient, &chosen))
    }

    /// Image under a linear map with `cols == ambient`.
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        map.mul(&self.basis_matrix()).column_space()
    }
}

/// Projector onto `onto` along `along`; the two must be complementary.
pub fn projector_along(onto: &Subspace, along: &Subspace) -> Result<Matrix, LinalgError> {
    let n = onto.ambient();
    onto.check_ambient(along)?;
    if onto.dim() + along.dim() != n || onto.sum(along)?.dim() != n {
        return Err(LinalgError::Precondition("subspaces are not complementary".into()));
    }
    let basis = onto.basis_matrix().hstack(&along.basis_matrix());
    let inv = basis.inverse().expect("complementary bases are invertible");
    let mut keep = Matrix::zeros(n, n);
    for i in 0..onto.dim() {
        keep.set(i, i, Q::one());
    }
    Ok(basis.mul(&keep).mul(&inv))
}

/// Polynomials with coefficients listed from the constant term up.
pub mod poly {
    use super::*;

    pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn linear_root(r: &Q) -> Vec<Q> {
        vec![-r.clone(), Q::one()]
    }

    pub fn product_of_roots(roots: &[Q]) -> Vec<Q> {
        roots.iter().fold(vec![Q::one()], |acc, r| mul(&acc, &linear_root(r)))
    }

    pub fn eval_matrix(p: &[Q], t: &Matrix) -> Matrix {
        let n = t.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in p.iter().rev() {
            acc = acc.mul(t).add(&Matrix::identity(n).scale(c));
        }
        acc
    }
}

/// Primary projectors of a semisimple matrix whose eigenvalues lie in
/// `spectrum`, by Lagrange interpolation.
pub fn lagrange_projectors(t: &Matrix, spectrum: &[Q]) -> Result<Vec<Matrix>, LinalgError> {
    if !t.is_square() {
        return Err(LinalgError::Dimension("operator must be square".into()));
    }
    for (i, a) in spectrum.iter().enumerate() {
        if spectrum[..i].contains(a) {
            return Err(LinalgError::Precondition(format!("repeated spectrum value {a}")));
        }
    }
    let residual = poly::eval_matrix(&poly::product_of_roots(spectrum), t);
    if !residual.is_zero() {
        return Err(LinalgError::Precondition(format!(
            "product of (T - lambda) over the spectrum is nonzero: {residual:?}"
        )));
    }
    Ok(spectrum
        .iter()
        .enumerate()
        .map(|(k, lk)| {
            let others: Vec<Q> =
                spectrum.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, l)| l.clone()).collect();
            let denom = others.iter().fold(Q::one(), |acc, l| acc * (lk - l));
            poly::eval_matrix(&poly::product_of_roots(&others), t).scale(&denom.recip())
        })
        .collect())
}

/// Semisimple part of `t` when its minimal polynomial divides
/// `(x (x^2-1^2) ... (x^2-k^2))^3`.
///
/// With `R_i = prod_{j != i} (x-j)^3` over `j` in `[-k, k]`, quadratic `a_i`
/// are found from the linear system `sum R_i a_i = 1`, and the result is
/// `sum i a_i(t) R_i(t)`.
pub fn semisimple_part(t: &Matrix, k: usize) -> Result<Matrix, LinalgError> {
    if !t.is_square() {
        return Err(LinalgError::Dimension("operator must be square".into()));
    }
    let k = k as i64;
    let points: Vec<Q> = (-k..=k).map(q).collect();
    let cube = |r: &Q| {
        let l = poly::linear_root(r);
        poly::mul(&poly::mul(&l, &l), &l)
    };
    let p3 = points.iter().fold(vec![Q::one()], |acc, r| poly::mul(&acc, &cube(r)));
    let residual = poly::eval_matrix(&p3, t);
    if !residual.is_zero() {
        return Err(LinalgError::Precondition(format!(
            "minimal polynomial does not divide P(x)^3 for k = {k}"
        )));
    }
    let rs: Vec<Vec<Q>> = points
        .iter()
        .map(|i| {
            points.iter().filter(|j| *j != i).fold(vec![Q::one()], |acc, j| poly::mul(&acc, &cube(j)))
        })
        .collect();
    // Unknown vector: coefficients (c0, c1, c2) of each a_i; one equation per
    // power of x in sum R_i a_i = 1.
    let m = points.len();
    let eqs = 3 * m;
    let mut sys = Matrix::zeros(eqs, 3 * m);
    for (i, r) in rs.iter().enumerate() {
        for s in 0..3 {
            for (d, c) in r.iter().enumerate() {
                if d + s < eqs {
                    sys.set(d + s, 3 * i + s, c.clone());
                }
            }
        }
    }
    let mut rhs = Matrix::zeros(eqs, 1);
    rhs.set(0, 0, Q::one());
    let sol = sys
        .solve(&rhs)
        .ok_or_else(|| LinalgError::Precondition("Bezout system has no solution".into()))?;
    let n = t.rows();
    let mut s = Matrix::zeros(n, n);
    for (i, (pt, r)) in points.iter().zip(&rs).enumerate() {
        if pt.is_zero() {
            continue;
        }
        let a: Vec<Q> = (0..3).map(|c| sol.get(3 * i + c, 0).clone()).collect();
        let term = poly::mul(&a, r);
        s = s.add(&poly::eval_matrix(&term, t).scale(pt));
    }
    Ok(s)
}

/// Whether the minimal polynomial of `t` is squarefree with rational roots
/// among `candidates`.
pub fn is_semisimple_over(t: &Matrix, candidates: &[Q]) -> bool {
    let present: Vec<Q> = candidates
        .iter()
        .filter(|l| t.sub(&Matrix::identity(t.rows()).scale(l)).rank() < t.rows())
        .cloned()
        .collect();
    poly::eval_matrix(&poly::product_of_roots(&present), t).is_zero()
}
