//! End-to-end reproduction of the worked examples: complete graphs, and the
//! two bundled counterexamples that transfer at `π/4` without meeting any
//! sufficient condition.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analyzer::{detect_pst, predict_all, PredictionKind, DEFAULT_TOL};
use crate::angle::{default_grid, RationalAngle, Time};
use crate::error::{Error, Result};
use crate::io::parse_spec;
use crate::linalg::{kron, unit_phase, ComplexMatrix};
use crate::neps::{BasisVector, NepsSpec};
use crate::spectral::transition;

const EXAMPLE2_JSON: &str = include_str!("../data/example2.json");
const EXAMPLE3_JSON: &str = include_str!("../data/example3.json");
pub const EXAMPLE2_SHA256: &str = "01ec29248d6b99bdfe3eb9d6d279dbef0b26094a2eca01da955be75a8c09a10f";
pub const EXAMPLE3_SHA256: &str = "f90e83913cc5bfaaa53ecd07ae329318200aa7ea2fbb968dd87921d0a536bd7c";

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn load_bundled(text: &str, checksum: &str, size: usize, vertices: usize) -> Result<NepsSpec> {
    let actual = sha256_hex(text.as_bytes());
    if actual != checksum {
        return Err(Error::InvalidConfig(format!("bundled data checksum {actual} != {checksum}")));
    }
    let (_, spec) = parse_spec(text)?;
    if spec.basis().len() != size || spec.vertex_count() != vertices || !spec.c().is_zero() {
        return Err(Error::InvalidConfig(format!(
            "transcription check failed: |A| = {}, N = {}, c(A) = {}",
            spec.basis().len(),
            spec.vertex_count(),
            spec.c()
        )));
    }
    Ok(spec)
}

/// `NEPS(K_3, 5 ⊙ K_2; A)` with 11 basis vectors, all zero on the `K_3` coordinate.
pub fn example2() -> Result<NepsSpec> {
    load_bundled(EXAMPLE2_JSON, EXAMPLE2_SHA256, 11, 96)
}

/// `NEPS(K_4, 5 ⊙ K_2; A)` with 20 basis vectors, all one on the `K_4` coordinate.
pub fn example3() -> Result<NepsSpec> {
    let spec = load_bundled(EXAMPLE3_JSON, EXAMPLE3_SHA256, 20, 128)?;
    let star = binary_part(&spec)?;
    if !star.c().is_zero() || star.basis().len() != 20 {
        return Err(Error::InvalidConfig("transcription check failed on the binary parts".into()));
    }
    Ok(spec)
}

/// Cubelike spec built from the binary parts of the basis vectors.
pub fn binary_part(spec: &NepsSpec) -> Result<NepsSpec> {
    let binary = spec.binary_indices();
    let basis: Vec<BasisVector> = spec.basis().iter().map(|a| a.restrict(&binary)).collect();
    NepsSpec::new(vec![2; binary.len()], basis)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleCheck {
    pub example: String,
    pub check: String,
    pub passed: bool,
    pub value: f64,
}

fn check(example: &str, check: impl Into<String>, passed: bool, value: f64) -> ExampleCheck {
    ExampleCheck {
        example: example.to_string(),
        check: check.into(),
        passed,
        value,
    }
}

/// Largest off-diagonal modulus over the default grid.
fn max_offdiag_over_grid(spec: &NepsSpec) -> Result<f64> {
    let mut worst = 0.0f64;
    for t in default_grid() {
        let h = transition(spec, t)?;
        for u in 0..h.dim() {
            for v in 0..h.dim() {
                if u != v {
                    worst = worst.max(h[(u, v)].norm());
                }
            }
        }
    }
    Ok(worst)
}

pub fn example1_checks(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut out = Vec::new();
    for n in 3..=7usize {
        let name = format!("example1 K{n}");
        let spec = NepsSpec::hamming(&[n])?;
        let h = transition(&spec, RationalAngle::two_pi_over(n))?;
        let expected = ComplexMatrix::scalar(n, unit_phase(2.0 * std::f64::consts::PI / n as f64));
        let dev = h.max_norm_diff(&expected)?;
        out.push(check(&name, format!("H(2π/{n}) = exp(2πi/{n}) I"), dev <= tol, dev));
        let worst = max_offdiag_over_grid(&spec)?;
        out.push(check(&name, "no PST on the grid", worst <= 1.0 - 1e-6, worst));
    }
    Ok(out)
}

fn counterexample_checks(name: &str, spec: &NepsSpec, tol: f64) -> Result<Vec<ExampleCheck>> {
    let quarter = RationalAngle::new(1, 4);
    let t = Time::from(quarter);
    let mut out = vec![check(name, "c(A) = 0", spec.c().is_zero(), 0.0)];
    let h = transition(spec, t)?;
    let events = detect_pst(&h, spec, t, tol)?;
    let worst = (0..h.dim())
        .map(|u| (0..h.dim()).filter(|&v| v != u).map(|v| h[(u, v)].norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    out.push(check(
        name,
        "PST at π/4 from every vertex",
        events.len() == spec.vertex_count(),
        1.0 - worst,
    ));
    let fired = predict_all(spec)
        .iter()
        .filter(|p| p.kind == PredictionKind::Pst && p.time == quarter)
        .count();
    out.push(check(name, "no sufficient condition predicts PST at π/4", fired == 0, fired as f64));
    Ok(out)
}

pub fn example2_checks(tol: f64) -> Result<Vec<ExampleCheck>> {
    let spec = example2()?;
    let mut out = counterexample_checks("example2", &spec, tol)?;
    let t = RationalAngle::new(1, 4);
    let star = transition(&binary_part(&spec)?, t)?;
    let dev = transition(&spec, t)?.max_norm_diff(&kron(&ComplexMatrix::identity(3), &star))?;
    out.push(check("example2", "H(π/4) = I_3 ⊗ H*(π/4)", dev <= tol, dev));
    Ok(out)
}

pub fn example3_checks(tol: f64) -> Result<Vec<ExampleCheck>> {
    let spec = example3()?;
    let mut out = counterexample_checks("example3", &spec, tol)?;
    let star_spec = binary_part(&spec)?;
    out.push(check("example3", "c(A*) = 0", star_spec.c().is_zero(), 0.0));
    let star = transition(&star_spec, RationalAngle::new(3, 4))?;
    let dev = transition(&spec, RationalAngle::new(1, 4))?.max_norm_diff(&kron(&ComplexMatrix::identity(4), &star))?;
    out.push(check("example3", "H(π/4) = I_4 ⊗ H*(3π/4)", dev <= tol, dev));
    Ok(out)
}

/// Every example check at the given tolerance.
pub fn run_examples(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut out = example1_checks(tol)?;
    out.extend(example2_checks(tol)?);
    out.extend(example3_checks(tol)?);
    Ok(out)
}

pub fn run_examples_default() -> Result<Vec<ExampleCheck>> {
    run_examples(DEFAULT_TOL)
}
