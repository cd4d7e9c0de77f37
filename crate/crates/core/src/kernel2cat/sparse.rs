use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RationalFunction};

/// Row-wise sparse matrix for 2-cell components; composites of kernels are
/// large but their structure maps are mostly permutations and block sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, RationalFunction>>,
}

impl SparseMatrix {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub(crate) fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, RationalFunction::one());
        }
        m
    }

    pub(crate) fn from_dense(a: &Matrix) -> Self {
        let mut m = Self::zeros(a.rows(), a.cols());
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                m.set(r, c, a.get(r, c).clone());
            }
        }
        m
    }

    pub(crate) fn to_dense(&self) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, v) in row {
                out.set(r, c, v.clone());
            }
        }
        out
    }

    pub(crate) fn rows(&self) -> usize {
        self.rows
    }

    pub(crate) fn cols(&self) -> usize {
        self.cols
    }

    pub(crate) fn get(&self, r: usize, c: usize) -> Option<&RationalFunction> {
        self.data[r].get(&c)
    }

    pub(crate) fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub(crate) fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (&k, a) in row {
                for (&j, b) in &rhs.data[k] {
                    let p = a * b;
                    match acc.get_mut(&j) {
                        Some(v) => *v = &*v + &p,
                        None => {
                            acc.insert(j, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    /// Row index `(i, k) -> i * rhs.rows + k`.
    pub(crate) fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, a) in row {
                for (k, rrow) in rhs.data.iter().enumerate() {
                    for (&l, b) in rrow {
                        out.data[i * rhs.rows + k].insert(j * rhs.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    pub(crate) fn direct_sum(blocks: &[SparseMatrix]) -> SparseMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, row) in b.data.iter().enumerate() {
                for (&j, v) in row {
                    out.data[r0 + i].insert(c0 + j, v.clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(i, row)| row.len() == 1 && row.get(&i).is_some_and(|v| v.is_one()))
    }
}
