//! NEPS specifications over complete-graph factors.
//!
//! A spec is a list of factor sizes `n_1, …, n_m` (each factor is `K_{n_i}`)
//! plus a basis set of nonzero vectors in `Z_2^m`. Factors of size 2 are
//! *binary*; factors of size 3 or more are *large*. The two index sets need
//! not be contiguous: every predicate works on [`NepsSpec::large_indices`]
//! and [`NepsSpec::binary_indices`] rather than assuming large factors first.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{complete_graph_adjacency, kron_all, ComplexMatrix, ONE, ZERO};

/// Default upper bound on the number of vertices of a graph we materialize.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Environment variable overriding [`DEFAULT_SIZE_CAP`].
pub const SIZE_CAP_ENV: &str = "PSTNEPS_SIZE_CAP";

/// Size cap from `PSTNEPS_SIZE_CAP`, falling back to the default.
pub fn size_cap_from_env() -> usize {
    std::env::var(SIZE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

/// Element of `Z_2^m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisVector(Vec<u8>);

impl BasisVector {
    /// Panics on entries other than 0 and 1.
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "basis vector entries must be 0 or 1");
        BasisVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BasisVector(vec![0; len])
    }

    /// `e_i` in `Z_2^len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut bits = vec![0; len];
        bits[i] = 1;
        BasisVector(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Sum in `Z_2^m`.
    pub fn xor(&self, other: &BasisVector) -> BasisVector {
        assert_eq!(self.len(), other.len(), "xor of vectors with different lengths");
        BasisVector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// The coordinates listed in `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> BasisVector {
        BasisVector(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Inverse of [`restrict`](Self::restrict): a length-`len` vector that is
    /// `self` on `indices` and zero elsewhere.
    pub fn embed(&self, indices: &[usize], len: usize) -> BasisVector {
        assert_eq!(self.len(), indices.len());
        let mut bits = vec![0; len];
        for (&i, &b) in indices.iter().zip(&self.0) {
            bits[i] = b;
        }
        BasisVector(bits)
    }
}

impl fmt::Debug for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<&[u8]> for BasisVector {
    fn from(bits: &[u8]) -> Self {
        BasisVector::new(bits.to_vec())
    }
}

/// Number of 1-coordinates.
pub fn hamming_weight(a: &BasisVector) -> usize {
    a.0.iter().filter(|&&b| b == 1).count()
}

/// `c(S)`: the sum of all vectors of `set` in `Z_2^len`.
pub fn c_of<'a, I>(set: I, len: usize) -> BasisVector
where
    I: IntoIterator<Item = &'a BasisVector>,
{
    set.into_iter()
        .fold(BasisVector::zeros(len), |acc, v| acc.xor(v))
}

/// Vertex of the NEPS graph, `0 <= coords[i] < n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

/// Validated NEPS specification.
#[derive(Clone, Debug, Serialize)]
pub struct NepsSpec {
    factors: Vec<usize>,
    basis: Vec<BasisVector>,
    #[serde(skip)]
    size_cap: usize,
}

impl PartialEq for NepsSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.basis == other.basis
    }
}

impl Eq for NepsSpec {}

impl NepsSpec {
    /// Validates factor sizes and basis. Basis order is preserved; duplicates
    /// are rejected rather than collapsed because `|A|` enters phase formulas.
    pub fn new(factors: Vec<usize>, basis: Vec<BasisVector>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::NoFactors);
        }
        if let Some((index, &size)) = factors.iter().enumerate().find(|(_, &n)| n < 2) {
            return Err(Error::FactorTooSmall { index, size });
        }
        if basis.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let m = factors.len();
        for (index, a) in basis.iter().enumerate() {
            if a.len() != m {
                return Err(Error::LengthMismatch {
                    index,
                    expected: m,
                    found: a.len(),
                });
            }
            if a.is_zero() {
                return Err(Error::ZeroVector { index });
            }
            if let Some(first) = basis[..index].iter().position(|b| b == a) {
                return Err(Error::DuplicateVector {
                    first,
                    second: index,
                });
            }
        }
        Ok(NepsSpec {
            factors,
            basis,
            size_cap: DEFAULT_SIZE_CAP,
        })
    }

    /// Convenience constructor from raw bit rows.
    pub fn from_rows(factors: &[usize], rows: &[&[u8]]) -> Result<Self> {
        let basis = rows
            .iter()
            .enumerate()
            .map(|(index, row)| {
                if let Some((position, &value)) = row.iter().enumerate().find(|(_, &b)| b > 1) {
                    return Err(Error::NotBinary {
                        index,
                        position,
                        value: value as i64,
                    });
                }
                Ok(BasisVector::new(row.to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors.to_vec(), basis)
    }

    /// Hamming graph: the standard basis over the given factors.
    pub fn hamming(factors: &[usize]) -> Result<Self> {
        let m = factors.len();
        Self::new(factors.to_vec(), (0..m).map(|i| BasisVector::unit(m, i)).collect())
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Same factors, different basis; used for sub-NEPS such as `A_1`, `{a}`.
    pub fn with_basis(&self, basis: Vec<BasisVector>) -> Result<Self> {
        Ok(NepsSpec::new(self.factors.clone(), basis)?.with_size_cap(self.size_cap))
    }

    /// Number of factors `m`.
    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// `N = Π n_i`.
    pub fn vertex_count(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn check_size_cap(&self) -> Result<()> {
        let vertices = self.vertex_count();
        if vertices > self.size_cap {
            return Err(Error::SizeCap {
                vertices,
                cap: self.size_cap,
            });
        }
        Ok(())
    }

    /// Indices of factors with `n_i >= 3`.
    pub fn large_indices(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.factors[i] >= 3).collect()
    }

    /// Indices of factors with `n_i = 2`.
    pub fn binary_indices(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.factors[i] == 2).collect()
    }

    /// `h = gcd` of the large factor sizes; `None` when every factor is binary.
    pub fn h(&self) -> Option<usize> {
        self.large_indices()
            .iter()
            .map(|&i| self.factors[i])
            .reduce(|a, b| a.gcd(&b))
    }

    pub fn is_cubelike(&self) -> bool {
        self.factors.iter().all(|&n| n == 2)
    }

    /// `c(A)` over all `m` coordinates.
    pub fn c(&self) -> BasisVector {
        c_of(&self.basis, self.m())
    }

    /// Whether `a` is zero on every binary coordinate.
    pub fn is_large_supported(&self, a: &BasisVector) -> bool {
        self.binary_indices().iter().all(|&i| !a.get(i))
    }

    /// Whether `a` is zero on every large coordinate.
    pub fn is_binary_supported(&self, a: &BasisVector) -> bool {
        self.large_indices().iter().all(|&i| !a.get(i))
    }

    /// The standard basis of `Z_2^m`, in coordinate order.
    pub fn is_standard_basis(&self) -> bool {
        let m = self.m();
        self.basis.len() == m
            && (0..m).all(|i| self.basis.contains(&BasisVector::unit(m, i)))
    }

    pub fn check_vertex(&self, v: &Vertex) -> Result<()> {
        if v.0.len() != self.m() {
            return Err(Error::LengthMismatch {
                index: 0,
                expected: self.m(),
                found: v.0.len(),
            });
        }
        for (index, (&coord, &size)) in v.0.iter().zip(&self.factors).enumerate() {
            if coord >= size {
                return Err(Error::VertexOutOfRange { index, coord, size });
            }
        }
        Ok(())
    }

    /// Mixed-radix index, coordinate 0 most significant (the Kronecker order).
    pub fn vertex_index(&self, v: &Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(v.0
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&u, &n)| acc * n + u))
    }

    pub fn index_vertex(&self, k: usize) -> Result<Vertex> {
        let vertices = self.vertex_count();
        if k >= vertices {
            return Err(Error::IndexOutOfRange { index: k, vertices });
        }
        let mut coords = vec![0; self.m()];
        let mut rest = k;
        for (c, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *c = rest % n;
            rest /= n;
        }
        Ok(Vertex(coords))
    }

    /// `u + a`, coordinate `i` taken mod `n_i`.
    pub fn vertex_add(&self, u: &Vertex, a: &BasisVector) -> Result<Vertex> {
        self.check_vertex(u)?;
        if a.len() != self.m() {
            return Err(Error::LengthMismatch {
                index: 0,
                expected: self.m(),
                found: a.len(),
            });
        }
        Ok(Vertex(
            u.0.iter()
                .zip(a.bits())
                .zip(&self.factors)
                .map(|((&x, &b), &n)| (x + b as usize) % n)
                .collect(),
        ))
    }

    /// Group difference `v - u` (componentwise mod `n_i`).
    pub fn vertex_sub(&self, v: &Vertex, u: &Vertex) -> Vertex {
        Vertex(
            v.0.iter()
                .zip(&u.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + n - b) % n)
                .collect(),
        )
    }

    /// `A*`: the large-coordinate parts of all basis vectors, as a set.
    pub fn project_star(&self) -> BTreeSet<BasisVector> {
        let large = self.large_indices();
        self.basis.iter().map(|a| a.restrict(&large)).collect()
    }

    /// `A_-(x)`: binary parts of the basis vectors whose large part equals `x`.
    /// Empty when `x` is not in `A*`.
    pub fn fiber(&self, x: &BasisVector) -> Vec<BasisVector> {
        let large = self.large_indices();
        let binary = self.binary_indices();
        self.basis
            .iter()
            .filter(|a| &a.restrict(&large) == x)
            .map(|a| a.restrict(&binary))
            .collect()
    }

    /// `A_+(x)`: the basis vectors whose large part equals `x`.
    pub fn fiber_full(&self, x: &BasisVector) -> Vec<BasisVector> {
        let large = self.large_indices();
        self.basis
            .iter()
            .filter(|a| &a.restrict(&large) == x)
            .cloned()
            .collect()
    }

    /// `(A_1, A_2, A_3)`: vectors zero on the binary coordinates, vectors zero
    /// on the large coordinates, and the rest.
    pub fn split_a123(&self) -> (Vec<BasisVector>, Vec<BasisVector>, Vec<BasisVector>) {
        let (mut a1, mut a2, mut a3) = (Vec::new(), Vec::new(), Vec::new());
        for a in &self.basis {
            if self.is_large_supported(a) {
                a1.push(a.clone());
            } else if self.is_binary_supported(a) {
                a2.push(a.clone());
            } else {
                a3.push(a.clone());
            }
        }
        (a1, a2, a3)
    }

    /// Common degree `Σ_a Π_i (n_i - 1)^{a_i}`.
    pub fn degree(&self) -> usize {
        self.basis
            .iter()
            .map(|a| {
                self.factors
                    .iter()
                    .zip(a.bits())
                    .map(|(&n, &b)| if b == 1 { n - 1 } else { 1 })
                    .product::<usize>()
            })
            .sum()
    }

    /// Adjacency test straight from the NEPS definition: `u ~ v` iff some `a`
    /// has `u_i = v_i` where `a_i = 0` and `u_i != v_i` where `a_i = 1`.
    pub fn adjacent(&self, u: &Vertex, v: &Vertex) -> bool {
        self.basis.iter().any(|a| {
            u.0.iter()
                .zip(&v.0)
                .zip(a.bits())
                .all(|((x, y), &b)| (b == 1) == (x != y))
        })
    }
}

/// Adjacency matrix built by testing every vertex pair against the definition.
pub fn neps_adjacency(spec: &NepsSpec) -> Result<ComplexMatrix> {
    spec.check_size_cap()?;
    let n = spec.vertex_count();
    let vertices: Vec<Vertex> = (0..n)
        .map(|k| spec.index_vertex(k))
        .collect::<Result<_>>()?;
    Ok(ComplexMatrix::from_fn(n, |i, j| {
        if spec.adjacent(&vertices[i], &vertices[j]) {
            ONE
        } else {
            ZERO
        }
    }))
}

/// Adjacency matrix as `Σ_a ⊗_i A_{K_{n_i}}^{a_i}`.
pub fn neps_adjacency_kronecker(spec: &NepsSpec) -> Result<ComplexMatrix> {
    spec.check_size_cap()?;
    let n = spec.vertex_count();
    let mut total = ComplexMatrix::zeros(n);
    for a in spec.basis() {
        let factors: Vec<ComplexMatrix> = spec
            .factors()
            .iter()
            .zip(a.bits())
            .map(|(&ni, &b)| {
                if b == 1 {
                    complete_graph_adjacency(ni)
                } else {
                    ComplexMatrix::identity(ni)
                }
            })
            .collect();
        let term = kron_all(&factors).expect("at least one factor");
        total.add_scaled(ONE, &term)?;
    }
    Ok(total)
}
