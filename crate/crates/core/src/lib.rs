//! Continuous-time quantum walks on NEPS of complete graphs.
//!
//! Builds `NEPS(K_{n_1}, …, K_{n_m}; A)`, computes its transition matrix
//! `H(t) = exp(-i t A)` analytically, detects perfect state transfer and
//! periodicity, evaluates the known sufficient conditions for both, and
//! certifies every analytic matrix against a brute-force series oracle.

pub mod analyzer;
pub mod angle;
pub mod closed_form;
pub mod commands;
pub mod error;
pub mod io;
pub mod linalg;
pub mod neps;
pub mod oracle;
pub mod reproduce;
pub mod spectral;

pub use analyzer::{analyze, detect_periodic, detect_pst, AnalysisReport, Prediction, PredictionKind, PstEvent};
pub use angle::{default_grid, RationalAngle, Time};
pub use closed_form::{closed_form, ClosedForm, PhaseRecord, Rule};
pub use error::{Error, Result};
pub use linalg::{kron, ComplexMatrix};
pub use neps::{neps_adjacency, BasisVector, NepsSpec, Vertex};
pub use oracle::{certify, expm_series, OracleConfig};
pub use spectral::{transition, transition_full_spectrum};
pub use num_complex::Complex64;
