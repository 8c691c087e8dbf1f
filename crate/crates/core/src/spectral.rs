//! Analytic transition matrices `H(t) = exp(-i t A)`.
//!
//! Every spectrum here is integral and known in closed form: `K_n` has
//! eigenvalues `-1` (projector `I - J/n`) and `n - 1` (projector `J/n`), and
//! a NEPS inherits products and sums of those. Decompositions therefore key
//! their eigenspaces on exact `i64` eigenvalues.
//!
//! The primary path is the product `H_A(t) = Π_{a ∈ A} H_a(t)`; the full
//! spectral decomposition of the whole adjacency matrix is a second,
//! independent analytic route used when path verification is enabled.

use std::collections::BTreeMap;

use crate::angle::Time;
use crate::error::{Error, Result};
use crate::linalg::{kron, kron_all, ComplexMatrix, ONE};
use crate::neps::{BasisVector, NepsSpec};

/// Default tolerance for comparing two analytic results.
pub const ANALYTIC_TOL: f64 = 1e-9;

/// Spectrum of `K_n`: `A = -E_1 + (n-1) E_2`.
#[derive(Clone, Debug)]
pub struct FactorSpectrum {
    pub n: usize,
    /// `(-1, n - 1)`.
    pub eigenvalues: [i64; 2],
    /// `(E_1, E_2) = (I - J/n, J/n)`.
    pub projectors: [ComplexMatrix; 2],
}

impl FactorSpectrum {
    /// Multiplicities `(n - 1, 1)`.
    pub fn multiplicities(&self) -> [usize; 2] {
        [self.n - 1, 1]
    }
}

pub fn factor_spectrum(n: usize) -> Result<FactorSpectrum> {
    if n < 2 {
        return Err(Error::FactorTooSmall { index: 0, size: n });
    }
    let e2 = ComplexMatrix::ones(n).scale((1.0 / n as f64).into());
    let e1 = ComplexMatrix::identity(n).sub(&e2)?;
    Ok(FactorSpectrum {
        n,
        eigenvalues: [-1, n as i64 - 1],
        projectors: [e1, e2],
    })
}

/// `A = Σ λ_r E_r` over distinct integer eigenvalues, sorted ascending.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    terms: Vec<(i64, ComplexMatrix)>,
}

impl SpectralDecomposition {
    fn from_map(map: BTreeMap<i64, ComplexMatrix>) -> Self {
        SpectralDecomposition {
            terms: map.into_iter().collect(),
        }
    }

    pub fn from_factor(fs: &FactorSpectrum) -> Self {
        let mut map = BTreeMap::new();
        for (&lambda, e) in fs.eigenvalues.iter().zip(&fs.projectors) {
            accumulate(&mut map, lambda, e.clone());
        }
        Self::from_map(map)
    }

    pub fn terms(&self) -> &[(i64, ComplexMatrix)] {
        &self.terms
    }

    pub fn eigenvalues(&self) -> Vec<i64> {
        self.terms.iter().map(|(l, _)| *l).collect()
    }

    pub fn dim(&self) -> usize {
        self.terms[0].1.dim()
    }

    /// `Σ λ_r E_r`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (lambda, e) in &self.terms {
            m.add_scaled((*lambda as f64).into(), e).expect("same dimension");
        }
        m
    }

    /// `Σ exp(-i t λ_r) E_r`.
    pub fn transition(&self, t: Time) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim());
        for (lambda, e) in &self.terms {
            m.add_scaled(t.phase(*lambda), e).expect("same dimension");
        }
        m
    }

    /// Worst violation of idempotence, mutual annihilation and completeness.
    pub fn projector_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        let mut sum = ComplexMatrix::zeros(n);
        for (r, (_, e)) in self.terms.iter().enumerate() {
            sum.add_scaled(ONE, e).expect("same dimension");
            worst = worst.max(e.matmul(e).unwrap().max_norm_diff(e).unwrap());
            for (_, f) in &self.terms[r + 1..] {
                worst = worst.max(e.matmul(f).unwrap().max_abs());
            }
        }
        worst.max(sum.max_norm_diff(&ComplexMatrix::identity(n)).unwrap())
    }
}

fn accumulate(map: &mut BTreeMap<i64, ComplexMatrix>, lambda: i64, projector: ComplexMatrix) {
    match map.get_mut(&lambda) {
        Some(existing) => existing.add_scaled(ONE, &projector).expect("same dimension"),
        None => {
            map.insert(lambda, projector);
        }
    }
}

fn spectra(spec: &NepsSpec) -> Result<Vec<FactorSpectrum>> {
    spec.factors().iter().map(|&n| factor_spectrum(n)).collect()
}

/// Iterates over all `2^k` choices of one projector per listed coordinate.
fn choices(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << k).map(move |mask| (0..k).map(|i| ((mask >> i) & 1) as usize).collect())
}

/// Decomposition of `A_a = ⊗_i A_{K_{n_i}}^{a_i}` for a single nonzero `a`.
pub fn single_a_decomposition(spec: &NepsSpec, a: &BasisVector) -> Result<SpectralDecomposition> {
    if a.is_zero() {
        return Err(Error::ZeroBasisVector);
    }
    if a.len() != spec.m() {
        return Err(Error::LengthMismatch {
            index: 0,
            expected: spec.m(),
            found: a.len(),
        });
    }
    spec.check_size_cap()?;
    let fs = spectra(spec)?;
    let active: Vec<usize> = (0..spec.m()).filter(|&i| a.get(i)).collect();
    let mut map = BTreeMap::new();
    for choice in choices(active.len()) {
        let mut lambda = 1i64;
        let mut factors: Vec<ComplexMatrix> = fs
            .iter()
            .map(|f| ComplexMatrix::identity(f.n))
            .collect();
        for (&i, &j) in active.iter().zip(&choice) {
            lambda *= fs[i].eigenvalues[j];
            factors[i] = fs[i].projectors[j].clone();
        }
        accumulate(&mut map, lambda, kron_all(&factors).expect("nonempty"));
    }
    Ok(SpectralDecomposition::from_map(map))
}

/// Decomposition of the whole NEPS adjacency matrix: for every choice of a
/// factor eigenvalue per coordinate, `Λ = Σ_a Π_i λ_i^{a_i}` with projector
/// `⊗_i E_i`.
pub fn neps_decomposition(spec: &NepsSpec) -> Result<SpectralDecomposition> {
    spec.check_size_cap()?;
    let fs = spectra(spec)?;
    let mut map = BTreeMap::new();
    for choice in choices(spec.m()) {
        let lambda = combined_eigenvalue(spec, &fs, &choice);
        let factors: Vec<ComplexMatrix> = fs
            .iter()
            .zip(&choice)
            .map(|(f, &j)| f.projectors[j].clone())
            .collect();
        accumulate(&mut map, lambda, kron_all(&factors).expect("nonempty"));
    }
    Ok(SpectralDecomposition::from_map(map))
}

fn combined_eigenvalue(spec: &NepsSpec, fs: &[FactorSpectrum], choice: &[usize]) -> i64 {
    spec.basis()
        .iter()
        .map(|a| {
            (0..spec.m())
                .filter(|&i| a.get(i))
                .map(|i| fs[i].eigenvalues[choice[i]])
                .product::<i64>()
        })
        .sum()
}

/// Eigenvalues with multiplicities, computed without building any matrix.
pub fn neps_spectrum(spec: &NepsSpec) -> Vec<(i64, usize)> {
    let fs: Vec<FactorSpectrum> = spec
        .factors()
        .iter()
        .map(|&n| FactorSpectrum {
            n,
            eigenvalues: [-1, n as i64 - 1],
            projectors: [ComplexMatrix::identity(1), ComplexMatrix::identity(1)],
        })
        .collect();
    let mut map: BTreeMap<i64, usize> = BTreeMap::new();
    for choice in choices(spec.m()) {
        let lambda = combined_eigenvalue(spec, &fs, &choice);
        let mult: usize = fs
            .iter()
            .zip(&choice)
            .map(|(f, &j)| f.multiplicities()[j])
            .product();
        *map.entry(lambda).or_default() += mult;
    }
    map.into_iter().collect()
}

/// `H_a(t)` for the single-vector NEPS `NEPS(K_{n_1}, …; {a})`.
pub fn transition_single_a(spec: &NepsSpec, a: &BasisVector, t: Time) -> Result<ComplexMatrix> {
    Ok(single_a_decomposition(spec, a)?.transition(t))
}

/// Product of `H_a(t)` over the given vectors, in order.
pub fn transition_product<'a, I>(spec: &NepsSpec, vectors: I, t: Time) -> Result<ComplexMatrix>
where
    I: IntoIterator<Item = &'a BasisVector>,
{
    spec.check_size_cap()?;
    let mut h = ComplexMatrix::identity(spec.vertex_count());
    for a in vectors {
        h = h.matmul(&transition_single_a(spec, a, t)?)?;
    }
    Ok(h)
}

/// `H_A(t) = Π_{a ∈ A} H_a(t)`, multiplied in basis order.
pub fn transition(spec: &NepsSpec, t: impl Into<Time>) -> Result<ComplexMatrix> {
    transition_product(spec, spec.basis(), t.into())
}

/// `H_A(t)` from the full spectral decomposition of `A`.
pub fn transition_full_spectrum(spec: &NepsSpec, t: impl Into<Time>) -> Result<ComplexMatrix> {
    Ok(neps_decomposition(spec)?.transition(t.into()))
}

/// Options for [`transition_with`].
#[derive(Clone, Copy, Debug)]
pub struct TransitionOptions {
    /// Also evaluate the full-spectrum path and fail if the two disagree.
    pub verify_paths: bool,
    pub tol: f64,
}

impl Default for TransitionOptions {
    fn default() -> Self {
        TransitionOptions {
            verify_paths: false,
            tol: ANALYTIC_TOL,
        }
    }
}

pub fn transition_with(spec: &NepsSpec, t: Time, opts: TransitionOptions) -> Result<ComplexMatrix> {
    let h = transition(spec, t)?;
    if opts.verify_paths {
        let full = transition_full_spectrum(spec, t)?;
        let deviation = h.max_norm_diff(&full)?;
        if deviation > opts.tol {
            return Err(Error::PathDisagreement {
                deviation,
                tol: opts.tol,
            });
        }
    }
    Ok(h)
}

/// `I_left ⊗ h ⊗ I_right`.
pub fn lift_transition(h: &ComplexMatrix, left: usize, right: usize) -> ComplexMatrix {
    assert!(left >= 1 && right >= 1, "identity sizes must be positive");
    let mut out = h.clone();
    if left > 1 {
        out = kron(&ComplexMatrix::identity(left), &out);
    }
    if right > 1 {
        out = kron(&out, &ComplexMatrix::identity(right));
    }
    out
}

/// Transition matrix of a tensor product `G ⊗ H` from the spectral
/// decomposition of `G` and the transition function of `H`:
/// `Σ_r E_r ⊗ H_H(λ_r t)`.
pub fn tensor_transition<F>(g: &SpectralDecomposition, h_of: F, t: Time) -> Result<ComplexMatrix>
where
    F: Fn(Time) -> Result<ComplexMatrix>,
{
    let mut total: Option<ComplexMatrix> = None;
    for (lambda, e) in g.terms() {
        let term = kron(e, &h_of(t.scale(*lambda))?);
        match total.as_mut() {
            None => total = Some(term),
            Some(acc) => acc.add_scaled(ONE, &term)?,
        }
    }
    Ok(total.expect("decomposition has at least one eigenvalue"))
}
