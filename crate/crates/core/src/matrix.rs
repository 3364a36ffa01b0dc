use std::ops::{Index, IndexMut, Mul};

use crate::chars::CNum;

/// Dense square complex matrix, row-major. Rows and columns of representation
/// matrices are indexed by field-element codes.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<CNum>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> CMatrix {
        CMatrix {
            dim,
            data: vec![CNum::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = CNum::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> CNum) -> CMatrix {
        let mut data = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                data.push(f(j, k));
            }
        }
        CMatrix { dim, data }
    }

    pub fn diagonal(entries: &[CNum]) -> CMatrix {
        let mut m = CMatrix::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, j: usize) -> &[CNum] {
        &self.data[j * self.dim..(j + 1) * self.dim]
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |j, k| self[(k, j)].conj())
    }

    pub fn scale(&self, s: CNum) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> CNum {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[CNum]) -> Vec<CNum> {
        (0..self.dim)
            .map(|j| self.row(j).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `M'[j][k] = M[perm(j)][perm(k)]`.
    pub fn permute(&self, perm: impl Fn(usize) -> usize) -> CMatrix {
        CMatrix::from_fn(self.dim, |j, k| self[(perm(j), perm(k))])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = CNum;

    fn index(&self, (j, k): (usize, usize)) -> &CNum {
        &self.data[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut CNum {
        &mut self.data[j * self.dim + k]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let a = self[(j, l)];
                if a == CNum::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    out.data[j * n + k] += a * rhs.data[l * n + k];
                }
            }
        }
        out
    }
}
