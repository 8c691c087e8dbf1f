//! Dense complex matrices and Kronecker-product algebra.
//!
//! Storage is row-major `Vec<Complex64>`. Every comparison between matrices
//! goes through [`ComplexMatrix::max_norm_diff`] with an explicit tolerance;
//! there is intentionally no `PartialEq` on floating entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Matrices at or above this dimension multiply row blocks in parallel.
const PAR_MATMUL_DIM: usize = 64;

/// Dense square complex matrix.
#[derive(Clone, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, ONE)
    }

    /// `value * I_dim`.
    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = value;
        }
        m
    }

    /// All-ones matrix `J_dim`.
    pub fn ones(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![ONE; dim * dim],
        }
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / dim,
                col: pos % dim,
            });
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_row_major(dim, data)
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        let kernel = |(i, out_row): (usize, &mut [Complex64])| {
            let a_row = &self.data[i * n..(i + 1) * n];
            for (k, &a_ik) in a_row.iter().enumerate() {
                if a_ik == ZERO {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a_ik * b;
                }
            }
        };
        if n >= PAR_MATMUL_DIM {
            out.par_chunks_mut(n).enumerate().for_each(kernel);
        } else {
            out.chunks_mut(n).enumerate().for_each(kernel);
        }
        Ok(ComplexMatrix { dim: n, data: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(ComplexMatrix { dim: self.dim, data })
    }

    /// In-place `self += factor * other`.
    pub fn add_scaled(&mut self, factor: Complex64, other: &Self) -> Result<()> {
        self.check_same_dim(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
        Ok(())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.data[j * n + i])
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    /// max |a[i,j] - b[i,j]|.
    pub fn max_norm_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `max_norm_diff(M·Mᴴ, I)`.
    pub fn unitarity_residual(&self) -> f64 {
        let product = self
            .matmul(&self.conj_transpose())
            .expect("square matrix times its adjoint");
        product
            .max_norm_diff(&Self::identity(self.dim))
            .expect("same dimension")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        debug_assert!(tol > 0.0);
        self.unitarity_residual() <= tol
    }

    pub fn symmetry_residual(&self) -> f64 {
        self.max_norm_diff(&self.transpose()).expect("same dimension")
    }

    /// `true` when `self == scalar * I` within `tol`, returning the scalar.
    pub fn as_scalar_identity(&self, tol: f64) -> Option<Complex64> {
        let s = self.data[0];
        let candidate = Self::scalar(self.dim, s);
        (self.max_norm_diff(&candidate).ok()? <= tol).then_some(s)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base).expect("same dimension");
            }
        }
        result
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`: block (i,j) of the result is `a[i,j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = vec![ZERO; n * n];
    for ia in 0..na {
        for ja in 0..na {
            let s = a.data[ia * na + ja];
            if s == ZERO {
                continue;
            }
            for ib in 0..nb {
                let dst = (ia * nb + ib) * n + ja * nb;
                let src = &b.data[ib * nb..(ib + 1) * nb];
                for (o, &x) in out[dst..dst + nb].iter_mut().zip(src) {
                    *o = s * x;
                }
            }
        }
    }
    ComplexMatrix { dim: n, data: out }
}

/// Left fold of [`kron`] over `factors`; `None` for an empty list.
pub fn kron_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors.into_iter().fold(None, |acc, m| match acc {
        None => Some(m.clone()),
        Some(acc) => Some(kron(&acc, m)),
    })
}

/// Adjacency matrix of the complete graph `K_n` (`J - I`).
pub fn complete_graph_adjacency(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| if i == j { ZERO } else { ONE })
}

/// `e^{iθ}`.
#[inline]
pub fn unit_phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `(-i)^k` exactly.
pub fn neg_i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => -I,
        2 => -ONE,
        _ => I,
    }
}

/// `i^k` exactly.
pub fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}
