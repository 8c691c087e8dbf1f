//! Brute-force `exp(-i t A)` by scaling and squaring a truncated Taylor
//! series. Shares nothing with the spectral code except the matrix type.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::neps::{neps_adjacency, NepsSpec};
use num_complex::Complex64;

pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub series_tol: f64,
    pub max_terms: usize,
    /// Largest `‖(t / 2^s) A‖_1` summed directly.
    pub scaling_threshold: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            series_tol: 1e-12,
            max_terms: 256,
            scaling_threshold: 1.0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.series_tol.is_nan() || self.series_tol <= 0.0 {
            return Err(Error::InvalidConfig("series_tol must be positive".into()));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidConfig("max_terms must be at least 16".into()));
        }
        if !self.scaling_threshold.is_finite() || self.scaling_threshold <= 0.0 {
            return Err(Error::InvalidConfig("scaling_threshold must be positive and finite".into()));
        }
        Ok(())
    }
}

/// `exp(-i t a)`.
pub fn expm_series(a: &ComplexMatrix, t: f64, cfg: &OracleConfig) -> Result<ComplexMatrix> {
    cfg.validate()?;
    if !t.is_finite() {
        return Err(Error::InvalidTime(t.to_string()));
    }
    let norm = a.norm_one() * t.abs();
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > cfg.scaling_threshold {
        s += 1;
    }
    let x = a.scale(Complex64::new(0.0, -t / 2f64.powi(s as i32)));

    let n = a.dim();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    let mut converged = false;
    for k in 1..=cfg.max_terms {
        term = term.matmul(&x)?.scale(Complex64::new(1.0 / k as f64, 0.0));
        sum.add_scaled(Complex64::new(1.0, 0.0), &term)?;
        if term.norm_one() < cfg.series_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesDidNotConverge { terms: cfg.max_terms });
    }
    for _ in 0..s {
        sum = sum.matmul(&sum)?;
    }
    Ok(sum)
}

/// Oracle transition matrix of a spec, built from the adjacency definition.
pub fn oracle_transition(spec: &NepsSpec, t: f64, cfg: &OracleConfig) -> Result<ComplexMatrix> {
    expm_series(&neps_adjacency(spec)?, t, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Certification {
    pub passed: bool,
    pub deviation: f64,
}

/// Compares `analytic` against the oracle at time `t` (radians).
pub fn certify(spec: &NepsSpec, t: f64, analytic: &ComplexMatrix, tol: f64) -> Result<Certification> {
    let oracle = oracle_transition(spec, t, &OracleConfig::default())?;
    let deviation = analytic.max_norm_diff(&oracle)?;
    Ok(Certification {
        passed: deviation <= tol,
        deviation,
    })
}
