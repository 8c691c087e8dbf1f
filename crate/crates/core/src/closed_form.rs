//! Closed-form transition matrices at the special times `2π/h`, `π/2`, `π`
//! and `2π`.
//!
//! Every closed form here has the shape `phase · P_s` where `P_s` is the
//! permutation `⊗_i (A_{K_2})^{s_i}` over binary coordinates (identity on
//! large coordinates). A [`PhaseRecord`] captures the rule, time, phase and
//! shift `s`; [`closed_form`] also materializes the matrix.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::linalg::{complete_graph_adjacency, i_pow, kron_all, neg_i_pow, ComplexMatrix, I, ONE};
use crate::neps::{c_of, hamming_weight, BasisVector, NepsSpec};

/// The three special times used by the single-vector lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpecialTime {
    HalfPi,
    Pi,
    TwoPi,
}

impl SpecialTime {
    pub fn angle(self) -> RationalAngle {
        match self {
            SpecialTime::HalfPi => RationalAngle::HALF_PI,
            SpecialTime::Pi => RationalAngle::PI,
            SpecialTime::TwoPi => RationalAngle::TWO_PI,
        }
    }
}

/// Which closed form to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `H_a(2kπ/h) = exp((-1)^{w(a)-1} 2kπ i/h) I` for `a` supported on large coordinates.
    LargeVector { a: BasisVector, k: i64 },
    /// `H_b` for `b` active on both large and binary coordinates: `I` at `2π`
    /// (h odd), `-I` at `π` (h even), `(-1)^{w(a)-1} i · P_b` at `π/2` (4 | h).
    MixedVector { b: BasisVector, at: SpecialTime },
    /// `H_b` for `b` supported on binary coordinates: `-i P_b` at `π/2`, `-I` at `π`.
    BinaryVector { b: BasisVector, at: SpecialTime },
    /// `H_{A_+(x)}(π/2)` for a nonzero large part `x` whose fiber `B` has
    /// `c(B) = 0`, `|B| >= 2`, and `|B| ≡ 0 (mod 4)` with h odd or
    /// `|B| ≡ 0 (mod 2)` with `h ≡ 2 (mod 4)`.
    Fiber { x: BasisVector },
    /// Whole basis on large coordinates, at `2π/h`.
    LargeBasis,
    /// Whole basis on binary coordinates (cubelike when there are no large
    /// factors), at `π/2`: `(-i)^{|A|} P_{c(A)}`.
    BinaryBasis,
    /// Mixed basis: `I` at `2π` (h odd) or `(-1)^{|A|} I` at `π` (h even).
    MixedPeriod,
    /// Mixed basis at `π/2` under the fiber conditions (h odd or `h ≡ 2 mod 4`).
    MixedFiber,
    /// Mixed basis at `π/2` with `4 | h`: `δ(A_1, A_2, A_3) · P_{c(A)}`.
    MixedQuarter,
}

/// Rule identifier attached to every closed form and prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "lemma-large-vector")]
    LargeVector,
    #[serde(rename = "lemma-mixed-vector")]
    MixedVector,
    #[serde(rename = "lemma-binary-vector")]
    BinaryVector,
    #[serde(rename = "lemma-fiber")]
    Fiber,
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem2a")]
    Theorem2a,
    #[serde(rename = "theorem2b")]
    Theorem2b,
    #[serde(rename = "theorem3a")]
    Theorem3a,
    #[serde(rename = "theorem3a.i")]
    Theorem3ai,
    #[serde(rename = "theorem3a.ii")]
    Theorem3aii,
    #[serde(rename = "theorem3b")]
    Theorem3b,
    #[serde(rename = "theorem3b.i")]
    Theorem3bi,
    #[serde(rename = "theorem3b.ii")]
    Theorem3bii,
    #[serde(rename = "theorem3c.i")]
    Theorem3ci,
    #[serde(rename = "theorem3c.ii")]
    Theorem3cii,
    #[serde(rename = "corollary1a")]
    Corollary1a,
    #[serde(rename = "corollary1b")]
    Corollary1b,
    #[serde(rename = "corollary1c")]
    Corollary1c,
    #[serde(rename = "cubelike-a")]
    CubelikeA,
    #[serde(rename = "cubelike-b")]
    CubelikeB,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// `H(time) = phase · P_shift`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseRecord {
    pub rule: Rule,
    pub time: RationalAngle,
    pub phase: Complex64,
    /// Length-`m` shift, zero on every large coordinate.
    pub shift: BasisVector,
}

impl PhaseRecord {
    pub fn is_transfer(&self) -> bool {
        !self.shift.is_zero()
    }
}

/// `⊗_i M_i` with `M_i = A_{K_2}` where `shift_i = 1` and `I_{n_i}` otherwise.
pub fn shift_matrix(spec: &NepsSpec, shift: &BasisVector) -> Result<ComplexMatrix> {
    spec.check_size_cap()?;
    let factors: Vec<ComplexMatrix> = spec
        .factors()
        .iter()
        .zip(shift.bits())
        .map(|(&n, &s)| {
            if s == 1 {
                complete_graph_adjacency(n)
            } else {
                ComplexMatrix::identity(n)
            }
        })
        .collect();
    Ok(kron_all(&factors).expect("at least one factor"))
}

/// `(-1)^k`.
fn sign(k: usize) -> Complex64 {
    if k.is_multiple_of(2) {
        ONE
    } else {
        -ONE
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisNotMet(msg.into())
}

fn h_or_err(spec: &NepsSpec) -> Result<usize> {
    spec.h().ok_or_else(|| hypothesis("no large factors, h undefined"))
}

/// Binary part of `v` embedded back into length `m`.
fn binary_shift(spec: &NepsSpec, v: &BasisVector) -> BasisVector {
    let binary = spec.binary_indices();
    v.restrict(&binary).embed(&binary, spec.m())
}

fn large_weight(spec: &NepsSpec, v: &BasisVector) -> usize {
    hamming_weight(&v.restrict(&spec.large_indices()))
}

/// Whether the basis has a vector active on a binary coordinate and a vector
/// active on a large coordinate (the mixed-basis hypothesis).
pub fn is_mixed_basis(spec: &NepsSpec) -> bool {
    !spec.large_indices().is_empty()
        && spec.basis().iter().any(|a| !spec.is_large_supported(a))
        && spec.basis().iter().any(|a| !spec.is_binary_supported(a))
}

/// Phase of `H_{B(x)}(π/2)` for a fiber of size `size` with `c(B) = 0`:
/// `I` when `size ≡ 0 (mod 4)` and h odd, `(-1)^{size/2} I` when
/// `h ≡ 2 (mod 4)` and `size` is even.
fn fiber_phase(h: usize, size: usize) -> Option<Complex64> {
    if size < 2 {
        return None;
    }
    if h % 2 == 1 && size.is_multiple_of(4) {
        Some(ONE)
    } else if h % 4 == 2 && size.is_multiple_of(2) {
        Some(sign(size / 2))
    } else {
        None
    }
}

/// Whether every nonzero `x ∈ A*` has a fiber satisfying the refined
/// Theorem-3 conditions for this `h`.
pub fn fibers_qualify(spec: &NepsSpec) -> bool {
    let Some(h) = spec.h() else { return false };
    let r = spec.binary_indices().len();
    let modulus = match h % 4 {
        1 | 3 => 4,
        2 => 2,
        _ => return false,
    };
    spec.project_star()
        .iter()
        .filter(|x| !x.is_zero())
        .all(|x| {
            let fiber = spec.fiber(x);
            fiber.len().is_multiple_of(modulus) && c_of(&fiber, r).is_zero()
        })
}

/// `δ(A_1, A_2, A_3)` read off the five-case table for `4 | h`.
pub fn delta_case_table(spec: &NepsSpec) -> Result<Complex64> {
    let (a1, a2, a3) = spec.split_a123();
    let s1: usize = a1.iter().map(|b| hamming_weight(b) - 1).sum();
    let s3: usize = a3.iter().map(|b| large_weight(spec, b) - 1).sum();
    let exponent = match (!a1.is_empty(), !a2.is_empty(), !a3.is_empty()) {
        (true, true, true) => s1 + a2.len() + s3,
        (true, true, false) => s1 + a2.len(),
        (true, false, true) => s1 + s3,
        (false, true, true) => a2.len() + s3,
        (false, false, true) => s3,
        _ => return Err(hypothesis("delta table needs a mixed basis")),
    };
    Ok(sign(exponent) * i_pow(spec.basis().len()))
}

/// `δ` as a product of the single-vector phases at `π/2` (no case split).
pub fn delta_from_factors(spec: &NepsSpec) -> Complex64 {
    let (a1, a2, a3) = spec.split_a123();
    let p1: Complex64 = a1.iter().map(|b| sign(hamming_weight(b) - 1) * I).product();
    let p2: Complex64 = a2.iter().map(|_| -I).product();
    let p3: Complex64 = a3.iter().map(|b| sign(large_weight(spec, b) - 1) * I).product();
    p1 * p2 * p3
}

impl ClosedForm {
    /// The basis vectors whose transition matrix this closed form describes.
    pub fn sub_basis(&self, spec: &NepsSpec) -> Vec<BasisVector> {
        match self {
            ClosedForm::LargeVector { a, .. } => vec![a.clone()],
            ClosedForm::MixedVector { b, .. } | ClosedForm::BinaryVector { b, .. } => vec![b.clone()],
            ClosedForm::Fiber { x } => spec.fiber_full(x),
            _ => spec.basis().to_vec(),
        }
    }
}

/// Phase record of a closed form without materializing the matrix.
pub fn closed_form_record(spec: &NepsSpec, which: &ClosedForm) -> Result<PhaseRecord> {
    let m = spec.m();
    let zero = BasisVector::zeros(m);
    let record = |rule, time, phase, shift| PhaseRecord {
        rule,
        time,
        phase,
        shift,
    };
    match which {
        ClosedForm::LargeVector { a, k } => {
            let h = h_or_err(spec)?;
            if a.len() != m || a.is_zero() || !spec.is_large_supported(a) {
                return Err(hypothesis("vector must be nonzero and supported on large coordinates"));
            }
            if *k == 0 {
                return Err(hypothesis("multiple k must be nonzero"));
            }
            let time = RationalAngle::two_pi_over(h).scale(*k);
            // exp(i(-1)^{w-1} t) = exp(-i t (-1)^w)
            let lambda = if hamming_weight(a).is_multiple_of(2) { 1 } else { -1 };
            Ok(record(Rule::LargeVector, time, time.phase(lambda), zero))
        }
        ClosedForm::MixedVector { b, at } => {
            let h = h_or_err(spec)?;
            if b.len() != m || spec.is_large_supported(b) || spec.is_binary_supported(b) {
                return Err(hypothesis("vector must be active on both large and binary coordinates"));
            }
            match at {
                SpecialTime::TwoPi if h % 2 == 1 => Ok(record(Rule::MixedVector, at.angle(), ONE, zero)),
                SpecialTime::Pi if h % 2 == 0 => Ok(record(Rule::MixedVector, at.angle(), -ONE, zero)),
                SpecialTime::HalfPi if h % 4 == 0 => {
                    let phase = sign(large_weight(spec, b) - 1) * I;
                    Ok(record(Rule::MixedVector, at.angle(), phase, binary_shift(spec, b)))
                }
                _ => Err(hypothesis(format!("no mixed-vector closed form at {:?} for h = {h}", at.angle()))),
            }
        }
        ClosedForm::BinaryVector { b, at } => {
            if b.len() != m || b.is_zero() || !spec.is_binary_supported(b) {
                return Err(hypothesis("vector must be nonzero and supported on binary coordinates"));
            }
            match at {
                SpecialTime::HalfPi => Ok(record(Rule::BinaryVector, at.angle(), -I, b.clone())),
                SpecialTime::Pi => Ok(record(Rule::BinaryVector, at.angle(), -ONE, zero)),
                SpecialTime::TwoPi => Ok(record(Rule::BinaryVector, at.angle(), ONE, zero)),
            }
        }
        ClosedForm::Fiber { x } => {
            let h = h_or_err(spec)?;
            if x.is_zero() {
                return Err(hypothesis("fiber closed form needs a nonzero large part"));
            }
            let fiber = spec.fiber(x);
            if !c_of(&fiber, spec.binary_indices().len()).is_zero() {
                return Err(hypothesis("fiber sum c(B) must be zero"));
            }
            let phase = fiber_phase(h, fiber.len()).ok_or_else(|| {
                hypothesis(format!("fiber of size {} does not qualify for h = {h}", fiber.len()))
            })?;
            Ok(record(Rule::Fiber, RationalAngle::HALF_PI, phase, zero))
        }
        ClosedForm::LargeBasis => {
            let h = h_or_err(spec)?;
            if !spec.basis().iter().all(|a| spec.is_large_supported(a)) {
                return Err(hypothesis("every basis vector must vanish on binary coordinates"));
            }
            let time = RationalAngle::two_pi_over(h);
            let lambda: i64 = spec
                .basis()
                .iter()
                .map(|a| if hamming_weight(a).is_multiple_of(2) { 1 } else { -1 })
                .sum();
            Ok(record(Rule::Theorem1, time, time.phase(lambda), zero))
        }
        ClosedForm::BinaryBasis => {
            if !spec.basis().iter().all(|a| spec.is_binary_supported(a)) {
                return Err(hypothesis("every basis vector must vanish on large coordinates"));
            }
            let c = spec.c();
            let rule = match (spec.is_cubelike(), c.is_zero()) {
                (true, false) => Rule::CubelikeA,
                (true, true) => Rule::CubelikeB,
                (false, false) => Rule::Theorem2a,
                (false, true) => Rule::Theorem2b,
            };
            Ok(record(rule, RationalAngle::HALF_PI, neg_i_pow(spec.basis().len()), c))
        }
        ClosedForm::MixedPeriod => {
            let h = h_or_err(spec)?;
            if !is_mixed_basis(spec) {
                return Err(hypothesis("basis is not mixed"));
            }
            if h % 2 == 1 {
                Ok(record(Rule::Theorem3a, RationalAngle::TWO_PI, ONE, zero))
            } else {
                Ok(record(Rule::Theorem3b, RationalAngle::PI, sign(spec.basis().len()), zero))
            }
        }
        ClosedForm::MixedFiber => {
            let h = h_or_err(spec)?;
            if !is_mixed_basis(spec) {
                return Err(hypothesis("basis is not mixed"));
            }
            if h % 4 == 0 {
                return Err(hypothesis("fiber refinement needs h odd or h ≡ 2 (mod 4)"));
            }
            if !fibers_qualify(spec) {
                return Err(hypothesis("some nonzero x in A* has a fiber violating the size or sum condition"));
            }
            let r = spec.binary_indices().len();
            let mut phase = ONE;
            for x in spec.project_star().iter().filter(|x| !x.is_zero()) {
                phase *= fiber_phase(h, spec.fiber(x).len()).expect("fibers qualify");
            }
            let zero_large = BasisVector::zeros(spec.large_indices().len());
            let base = spec.fiber(&zero_large);
            phase *= neg_i_pow(base.len());
            let shift = c_of(&base, r).embed(&spec.binary_indices(), m);
            let rule = match (h % 2 == 1, shift.is_zero()) {
                (true, false) => Rule::Theorem3ai,
                (true, true) => Rule::Theorem3aii,
                (false, false) => Rule::Theorem3bi,
                (false, true) => Rule::Theorem3bii,
            };
            Ok(record(rule, RationalAngle::HALF_PI, phase, shift))
        }
        ClosedForm::MixedQuarter => {
            let h = h_or_err(spec)?;
            if !is_mixed_basis(spec) {
                return Err(hypothesis("basis is not mixed"));
            }
            if h % 4 != 0 {
                return Err(hypothesis("needs 4 | h"));
            }
            let shift = binary_shift(spec, &spec.c());
            let rule = if shift.is_zero() {
                Rule::Theorem3cii
            } else {
                Rule::Theorem3ci
            };
            Ok(record(rule, RationalAngle::HALF_PI, delta_case_table(spec)?, shift))
        }
    }
}

/// Closed-form matrix plus its phase record.
pub fn closed_form(spec: &NepsSpec, which: &ClosedForm) -> Result<(ComplexMatrix, PhaseRecord)> {
    let record = closed_form_record(spec, which)?;
    let matrix = shift_matrix(spec, &record.shift)?.scale(record.phase);
    Ok((matrix, record))
}

/// If `h == s · P_shift` within `tol`, returns `s`.
pub fn extract_phase(spec: &NepsSpec, h: &ComplexMatrix, shift: &BasisVector, tol: f64) -> Result<Option<Complex64>> {
    let p = shift_matrix(spec, shift)?;
    let target = spec.vertex_add(&spec.index_vertex(0)?, shift)?;
    let scalar = h[(0, spec.vertex_index(&target)?)];
    Ok((h.max_norm_diff(&p.scale(scalar))? <= tol).then_some(scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_phase;
    use crate::spectral::{transition, transition_product, ANALYTIC_TOL};

    fn bv(bits: &[u8]) -> BasisVector {
        BasisVector::from(bits)
    }

    fn assert_matches_generic(spec: &NepsSpec, which: ClosedForm) -> PhaseRecord {
        let (matrix, record) = closed_form(spec, &which).unwrap();
        let generic = transition_product(spec, &which.sub_basis(spec), record.time.into()).unwrap();
        let dev = matrix.max_norm_diff(&generic).unwrap();
        assert!(dev <= ANALYTIC_TOL, "{which:?} deviates by {dev:e}");
        record
    }

    #[test]
    fn large_vector_at_two_pi_over_h() {
        let spec = NepsSpec::from_rows(&[3, 6], &[&[1, 1]]).unwrap();
        let rec = assert_matches_generic(&spec, ClosedForm::LargeVector { a: bv(&[1, 1]), k: 1 });
        assert_eq!(rec.time, RationalAngle::new(2, 3));
        let expected = unit_phase(-2.0 * std::f64::consts::PI / 3.0);
        assert!((rec.phase - expected).norm() < 1e-12);
        for k in [-2, 2, 5] {
            assert_matches_generic(&spec, ClosedForm::LargeVector { a: bv(&[0, 1]), k });
        }
    }

    #[test]
    fn binary_vector_forms() {
        let spec = NepsSpec::from_rows(&[3, 2], &[&[0, 1]]).unwrap();
        let rec = assert_matches_generic(&spec, ClosedForm::BinaryVector { b: bv(&[0, 1]), at: SpecialTime::HalfPi });
        assert_eq!(rec.phase, -I);
        let (m, _) = closed_form(&spec, &ClosedForm::BinaryVector { b: bv(&[0, 1]), at: SpecialTime::HalfPi }).unwrap();
        let expected = crate::kron(&ComplexMatrix::identity(3), &complete_graph_adjacency(2)).scale(-I);
        assert!(m.max_norm_diff(&expected).unwrap() < 1e-15);
        assert_matches_generic(&spec, ClosedForm::BinaryVector { b: bv(&[0, 1]), at: SpecialTime::Pi });
    }

    #[test]
    fn mixed_vector_forms_by_h() {
        let odd = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 1, 0]]).unwrap();
        assert_matches_generic(&odd, ClosedForm::MixedVector { b: bv(&[1, 1, 0]), at: SpecialTime::TwoPi });
        assert!(closed_form(&odd, &ClosedForm::MixedVector { b: bv(&[1, 1, 0]), at: SpecialTime::Pi }).is_err());

        let even = NepsSpec::from_rows(&[6, 2], &[&[1, 1]]).unwrap();
        assert_matches_generic(&even, ClosedForm::MixedVector { b: bv(&[1, 1]), at: SpecialTime::Pi });
        assert!(closed_form(&even, &ClosedForm::MixedVector { b: bv(&[1, 1]), at: SpecialTime::HalfPi }).is_err());

        let quad = NepsSpec::from_rows(&[4, 8, 2, 2], &[&[1, 1, 1, 0]]).unwrap();
        let rec = assert_matches_generic(&quad, ClosedForm::MixedVector { b: bv(&[1, 1, 1, 0]), at: SpecialTime::HalfPi });
        // w(a) = 2 on the large part
        assert_eq!(rec.phase, -I);
        assert_eq!(rec.shift, bv(&[0, 0, 1, 0]));
    }

    #[test]
    fn fiber_forms() {
        let odd = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 0, 0], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]).unwrap();
        let rec = assert_matches_generic(&odd, ClosedForm::Fiber { x: bv(&[1]) });
        assert_eq!(rec.phase, ONE);

        let four = NepsSpec::from_rows(&[6, 2, 2], &[&[1, 0, 0], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]]).unwrap();
        let rec = assert_matches_generic(&four, ClosedForm::Fiber { x: bv(&[1]) });
        assert_eq!(rec.phase, ONE);

        let six = NepsSpec::from_rows(
            &[6, 2, 2, 2, 2],
            &[&[1, 0, 0, 0, 1], &[1, 0, 0, 1, 0], &[1, 0, 1, 0, 0], &[1, 1, 0, 0, 0], &[1, 1, 1, 1, 1], &[1, 0, 0, 0, 0]],
        )
        .unwrap();
        let rec = assert_matches_generic(&six, ClosedForm::Fiber { x: bv(&[1]) });
        assert_eq!(rec.phase, -ONE);

        let bad = NepsSpec::from_rows(&[3, 2], &[&[1, 1], &[1, 0]]).unwrap();
        assert!(closed_form(&bad, &ClosedForm::Fiber { x: bv(&[1]) }).is_err());
    }

    #[test]
    fn binary_basis_on_three_binary_coordinates() {
        let spec = NepsSpec::from_rows(&[3, 2, 2], &[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]]).unwrap();
        let (m, rec) = closed_form(&spec, &ClosedForm::BinaryBasis).unwrap();
        assert_eq!(rec.rule, Rule::Theorem2b);
        assert!(m.max_norm_diff(&ComplexMatrix::scalar(12, I)).unwrap() < 1e-15);
        assert!(m.max_norm_diff(&transition(&spec, RationalAngle::HALF_PI).unwrap()).unwrap() <= ANALYTIC_TOL);
    }

    #[test]
    fn delta_table_agrees_with_factor_product_and_numerics() {
        let specs = [
            NepsSpec::from_rows(&[4, 2], &[&[1, 1]]).unwrap(),
            NepsSpec::from_rows(&[4, 2, 2], &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]).unwrap(),
            NepsSpec::from_rows(&[4, 8, 2], &[&[1, 1, 0], &[0, 0, 1]]).unwrap(),
            NepsSpec::from_rows(&[4, 8, 2], &[&[1, 1, 1], &[0, 1, 0]]).unwrap(),
            NepsSpec::from_rows(&[8, 2, 2], &[&[0, 1, 1], &[1, 1, 0], &[1, 0, 1]]).unwrap(),
        ];
        for spec in &specs {
            let table = delta_case_table(spec).unwrap();
            assert!((table - delta_from_factors(spec)).norm() < 1e-15, "{spec:?}");
            let rec = assert_matches_generic(spec, ClosedForm::MixedQuarter);
            let h = transition(spec, RationalAngle::HALF_PI).unwrap();
            let numeric = extract_phase(spec, &h, &rec.shift, ANALYTIC_TOL).unwrap().unwrap();
            assert!((numeric - table).norm() <= ANALYTIC_TOL, "{spec:?}");
        }
    }

    #[test]
    fn mixed_period_and_fiber_refinement() {
        let odd = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let rec = assert_matches_generic(&odd, ClosedForm::MixedPeriod);
        assert_eq!(rec.rule, Rule::Theorem3a);
        assert!(closed_form(&odd, &ClosedForm::MixedFiber).is_err());

        let even = NepsSpec::from_rows(&[6, 2], &[&[1, 1], &[1, 0], &[0, 1]]).unwrap();
        let rec = assert_matches_generic(&even, ClosedForm::MixedPeriod);
        assert_eq!((rec.rule, rec.phase), (Rule::Theorem3b, -ONE));

        let ai = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 0, 0], &[1, 0, 1], &[1, 1, 0], &[1, 1, 1], &[0, 0, 1]]).unwrap();
        let rec = assert_matches_generic(&ai, ClosedForm::MixedFiber);
        assert_eq!((rec.rule, rec.phase), (Rule::Theorem3ai, -I));
        assert_eq!(rec.shift, bv(&[0, 0, 1]));
    }

    #[test]
    fn hypothesis_failures() {
        let spec = NepsSpec::from_rows(&[4, 2], &[&[1, 1]]).unwrap();
        assert!(matches!(closed_form(&spec, &ClosedForm::LargeBasis), Err(Error::HypothesisNotMet(_))));
        assert!(closed_form(&spec, &ClosedForm::BinaryBasis).is_err());
        assert!(closed_form(&spec, &ClosedForm::MixedFiber).is_err());
        let cube = NepsSpec::hamming(&[2, 2]).unwrap();
        assert!(closed_form(&cube, &ClosedForm::MixedPeriod).is_err());
    }
}
