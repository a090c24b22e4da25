//! Degree-homogeneous operators between graded spaces, stored one block per
//! source degree.

use crate::linalg::{Matrix, Q};

/// Start offset of each degree inside the total (ungraded) coordinate vector.
pub fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|d| {
            let o = acc;
            acc += d;
            o
        })
        .collect()
}

/// Degree and in-degree index of a total coordinate.
pub fn locate(dims: &[usize], global: usize) -> (usize, usize) {
    let mut g = global;
    for (deg, &d) in dims.iter().enumerate() {
        if g < d {
            return (deg, g);
        }
        g -= d;
    }
    panic!("coordinate {global} out of range");
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedOperator {
    src: Vec<usize>,
    tgt: Vec<usize>,
    degree: i32,
    blocks: Vec<Matrix>,
}

fn target_degree(tgt: &[usize], i: usize, degree: i32) -> Option<usize> {
    let t = i as i32 + degree;
    (t >= 0 && (t as usize) < tgt.len()).then_some(t as usize)
}

impl GradedOperator {
    pub fn zero(src: &[usize], tgt: &[usize], degree: i32) -> Self {
        let blocks = (0..src.len())
            .map(|i| {
                let rows = target_degree(tgt, i, degree).map_or(0, |t| tgt[t]);
                Matrix::zeros(rows, src[i])
            })
            .collect();
        GradedOperator { src: src.to_vec(), tgt: tgt.to_vec(), degree, blocks }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let mut op = Self::zero(dims, dims, 0);
        for (i, b) in op.blocks.iter_mut().enumerate() {
            *b = Matrix::identity(dims[i]);
        }
        op
    }

    /// Builds from explicit blocks; missing or out-of-range blocks are zero.
    pub fn from_blocks(src: &[usize], tgt: &[usize], degree: i32, blocks: Vec<(usize, Matrix)>) -> Self {
        let mut op = Self::zero(src, tgt, degree);
        for (i, m) in blocks {
            op.set_block(i, m);
        }
        op
    }

    pub fn src_dims(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt_dims(&self) -> &[usize] {
        &self.tgt
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn block(&self, i: usize) -> &Matrix {
        &self.blocks[i]
    }

    pub fn target_of(&self, i: usize) -> Option<usize> {
        target_degree(&self.tgt, i, self.degree)
    }

    pub fn set_block(&mut self, i: usize, m: Matrix) {
        let old = &self.blocks[i];
        assert_eq!((old.rows(), old.cols()), (m.rows(), m.cols()), "block {i} has the wrong shape");
        self.blocks[i] = m;
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedOperator) -> GradedOperator {
        assert_eq!(other.tgt, self.src, "composition through mismatched spaces");
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&other.src, &self.tgt, degree);
        for i in 0..other.src.len() {
            if let (Some(mid), Some(_)) = (other.target_of(i), target_degree(&self.tgt, i, degree)) {
                out.blocks[i] = self.blocks[mid].mul(&other.blocks[i]);
            }
        }
        out
    }

    fn check_same_shape(&self, other: &GradedOperator) {
        assert_eq!(
            (&self.src, &self.tgt, self.degree),
            (&other.src, &other.tgt, other.degree),
            "operators of different shape"
        );
    }

    pub fn add(&self, other: &GradedOperator) -> GradedOperator {
        self.check_same_shape(other);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        GradedOperator { blocks, ..self.clone() }
    }

    pub fn sub(&self, other: &GradedOperator) -> GradedOperator {
        self.check_same_shape(other);
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect();
        GradedOperator { blocks, ..self.clone() }
    }

    pub fn scale(&self, s: &Q) -> GradedOperator {
        let blocks = self.blocks.iter().map(|a| a.scale(s)).collect();
        GradedOperator { blocks, ..self.clone() }
    }

    pub fn neg(&self) -> GradedOperator {
        let blocks = self.blocks.iter().map(Matrix::neg).collect();
        GradedOperator { blocks, ..self.clone() }
    }

    pub fn pow(&self, e: usize) -> GradedOperator {
        assert_eq!(self.src, self.tgt);
        (0..e).fold(Self::identity(&self.src), |acc, _| acc.compose(self))
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn bracket(&self, other: &GradedOperator) -> GradedOperator {
        self.compose(other).sub(&other.compose(self))
    }

    /// Keeps only the block with source degree `i`.
    pub fn restrict_to(&self, i: usize) -> GradedOperator {
        let mut out = Self::zero(&self.src, &self.tgt, self.degree);
        out.blocks[i] = self.blocks[i].clone();
        out
    }

    pub fn sum_all(items: &[GradedOperator]) -> Option<GradedOperator> {
        let (first, rest) = items.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, x| acc.add(x)))
    }

    pub fn to_full(&self) -> Matrix {
        let so = offsets(&self.src);
        let to = offsets(&self.tgt);
        let mut m = Matrix::zeros(self.tgt.iter().sum(), self.src.iter().sum());
        for i in 0..self.src.len() {
            if let Some(t) = self.target_of(i) {
                m.put(to[t], so[i], &self.blocks[i]);
            }
        }
        m
    }

    /// Reads a full matrix as a homogeneous operator; `None` if it has entries
    /// outside the band of the requested degree.
    pub fn from_full(src: &[usize], tgt: &[usize], degree: i32, m: &Matrix) -> Option<GradedOperator> {
        let so = offsets(src);
        let to = offsets(tgt);
        let mut out = Self::zero(src, tgt, degree);
        let mut covered = Matrix::zeros(m.rows(), m.cols());
        for i in 0..src.len() {
            if let Some(t) = out.target_of(i) {
                let block = m.submatrix(to[t], so[i], tgt[t], src[i]);
                covered.put(to[t], so[i], &block);
                out.blocks[i] = block;
            }
        }
        (covered == *m).then_some(out)
    }

    /// Degrees present in the full-matrix representation of `m`, as the set of
    /// shifts `target degree − source degree` with a nonzero entry.
    pub fn shifts_of(src: &[usize], tgt: &[usize], m: &Matrix) -> Vec<i32> {
        let mut out = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !num_traits::Zero::is_zero(m.get(r, c)) {
                    let s = locate(tgt, r).0 as i32 - locate(src, c).0 as i32;
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// First basis vector on which the two operators differ:
    /// `(source degree, index, lhs column, rhs column)`.
    pub fn first_difference(&self, other: &GradedOperator) -> Option<(usize, usize, Vec<Q>, Vec<Q>)> {
        self.check_same_shape(other);
        for i in 0..self.src.len() {
            let (a, b) = (&self.blocks[i], &other.blocks[i]);
            for c in 0..a.cols() {
                let (ca, cb) = (a.col(c), b.col(c));
                if ca != cb {
                    return Some((i, c, ca, cb));
                }
            }
        }
        None
    }

    /// Rank of the full operator.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }
}
