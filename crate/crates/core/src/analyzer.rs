//! Numeric detection of perfect state transfer and periodicity, and the
//! structural predictors that say when either is guaranteed.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{RationalAngle, Time};
use crate::closed_form::{
    closed_form_record, is_mixed_basis, ClosedForm, PhaseRecord, Rule,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::neps::{BasisVector, NepsSpec, Vertex};
use crate::spectral::{transition_with, TransitionOptions};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PstEvent {
    pub source: Vertex,
    pub target: Vertex,
    pub time: Time,
    pub modulus: f64,
    pub phase: Complex64,
}

/// Result of [`detect_periodic`]. `scalar` is set when every diagonal entry
/// carries the same phase; otherwise `vertex_phases` lists them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Periodicity {
    pub scalar: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_phases: Option<Vec<Complex64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PredictionKind {
    #[serde(rename = "PST")]
    Pst,
    Periodic,
    NoClaim,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub kind: PredictionKind,
    pub time: RationalAngle,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_shift: Option<BasisVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<RationalAngle>,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<Complex64>,
}

impl Prediction {
    fn from_record(rec: PhaseRecord) -> Self {
        if rec.is_transfer() {
            Prediction {
                kind: PredictionKind::Pst,
                time: rec.time,
                target_shift: Some(rec.shift),
                period: None,
                rule: rec.rule,
                phase: Some(rec.phase),
            }
        } else {
            Prediction {
                kind: PredictionKind::Periodic,
                time: rec.time,
                target_shift: None,
                period: Some(rec.time),
                rule: rec.rule,
                phase: Some(rec.phase),
            }
        }
    }

    fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    fn no_claim(rule: Rule, time: RationalAngle) -> Self {
        Prediction {
            kind: PredictionKind::NoClaim,
            time,
            target_shift: None,
            period: None,
            rule,
            phase: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicRecord {
    pub time: Time,
    #[serde(flatten)]
    pub periodicity: Periodicity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub rule: Rule,
    pub time: RationalAngle,
    pub confirmed: bool,
    /// Worst modulus or phase deviation seen while checking.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub spec: NepsSpec,
    pub tolerance: f64,
    pub times: Vec<Time>,
    pub events: Vec<PstEvent>,
    pub periodic_at: Vec<PeriodicRecord>,
    pub predictions: Vec<Prediction>,
    pub verification: Vec<Verification>,
    /// Times with PST events that no prediction accounts for.
    pub pst_beyond_sufficient_conditions: Vec<Time>,
}

impl AnalysisReport {
    pub fn has_discrepancy(&self) -> bool {
        self.verification.iter().any(|v| !v.confirmed)
    }

    pub fn events_at(&self, t: Time) -> impl Iterator<Item = &PstEvent> {
        self.events.iter().filter(move |e| e.time == t)
    }

    pub fn periodic_at_time(&self, t: Time) -> Option<&Periodicity> {
        self.periodic_at.iter().find(|p| p.time == t).map(|p| &p.periodicity)
    }
}

fn check_unitary(h: &ComplexMatrix, tol: f64) -> Result<()> {
    let residual = h.unitarity_residual();
    if residual > tol.max(1e-9) {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Every ordered pair `(u, v)`, `u != v`, with `|h[u,v]| >= 1 - tol`.
pub fn detect_pst(h: &ComplexMatrix, spec: &NepsSpec, time: Time, tol: f64) -> Result<Vec<PstEvent>> {
    if h.dim() != spec.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: spec.vertex_count(),
            found: h.dim(),
        });
    }
    check_unitary(h, tol)?;
    let mut events = Vec::new();
    for u in 0..h.dim() {
        for (v, &z) in h.row(u).iter().enumerate() {
            if u != v && z.norm() >= 1.0 - tol {
                events.push(PstEvent {
                    source: spec.index_vertex(u)?,
                    target: spec.index_vertex(v)?,
                    time,
                    modulus: z.norm(),
                    phase: z,
                });
                break;
            }
        }
    }
    Ok(events)
}

/// `Some` when every diagonal entry has modulus at least `1 - tol`.
pub fn detect_periodic(h: &ComplexMatrix, tol: f64) -> Option<Periodicity> {
    let diag: Vec<Complex64> = (0..h.dim()).map(|u| h[(u, u)]).collect();
    if diag.iter().any(|z| z.norm() < 1.0 - tol) {
        return None;
    }
    let first = diag[0];
    if diag.iter().all(|z| (z - first).norm() <= tol) {
        Some(Periodicity {
            scalar: Some(first),
            vertex_phases: None,
        })
    } else {
        Some(Periodicity {
            scalar: None,
            vertex_phases: Some(diag),
        })
    }
}

/// Distinct group shifts `v - u` over a set of events.
pub fn event_shifts(spec: &NepsSpec, events: &[PstEvent]) -> BTreeSet<Vec<usize>> {
    events
        .iter()
        .map(|e| spec.vertex_sub(&e.target, &e.source).0)
        .collect()
}

fn d_and_r(spec: &NepsSpec) -> (usize, usize) {
    (spec.large_indices().len(), spec.binary_indices().len())
}

/// Basis supported on large coordinates: periodic with period `2π/h`.
pub fn predict_theorem1(spec: &NepsSpec) -> Option<Prediction> {
    closed_form_record(spec, &ClosedForm::LargeBasis)
        .ok()
        .map(Prediction::from_record)
}

/// Basis supported on binary coordinates with at least one large factor:
/// PST to `u + c(A)` at `π/2`, or periodic there when `c(A) = 0`.
pub fn predict_theorem2(spec: &NepsSpec) -> Option<Prediction> {
    if d_and_r(spec).0 == 0 {
        return None;
    }
    closed_form_record(spec, &ClosedForm::BinaryBasis)
        .ok()
        .map(Prediction::from_record)
}

/// Mixed bases: the base period, plus the `π/2` refinement whenever its
/// conditions hold. A refinement whose fiber conditions hold only for some
/// fibers yields a `NoClaim` entry.
pub fn predict_theorem3(spec: &NepsSpec) -> Vec<Prediction> {
    if !is_mixed_basis(spec) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Ok(rec) = closed_form_record(spec, &ClosedForm::MixedPeriod) {
        out.push(Prediction::from_record(rec));
    }
    let h = spec.h().expect("mixed basis has a large factor");
    if h.is_multiple_of(4) {
        if let Ok(rec) = closed_form_record(spec, &ClosedForm::MixedQuarter) {
            out.push(Prediction::from_record(rec));
        }
    } else if let Ok(rec) = closed_form_record(spec, &ClosedForm::MixedFiber) {
        out.push(Prediction::from_record(rec));
    } else if some_fiber_qualifies(spec) {
        let rule = if h % 2 == 1 { Rule::Theorem3ai } else { Rule::Theorem3bi };
        out.push(Prediction::no_claim(rule, RationalAngle::HALF_PI));
    }
    out
}

fn some_fiber_qualifies(spec: &NepsSpec) -> bool {
    spec.project_star()
        .iter()
        .filter(|x| !x.is_zero())
        .any(|x| closed_form_record(spec, &ClosedForm::Fiber { x: x.clone() }).is_ok())
}

/// Standard basis with large and binary factors: period `2π` (h odd), `π`
/// (h even), and PST at `π/2` to the all-ones binary shift when `4 | h`.
pub fn predict_hamming(spec: &NepsSpec) -> Vec<Prediction> {
    let (d, r) = d_and_r(spec);
    if !spec.is_standard_basis() || d == 0 || r == 0 {
        return Vec::new();
    }
    let h = spec.h().expect("d >= 1");
    let mut out = Vec::new();
    if let Ok(rec) = closed_form_record(spec, &ClosedForm::MixedPeriod) {
        let rule = if h % 2 == 1 { Rule::Corollary1a } else { Rule::Corollary1b };
        out.push(Prediction::from_record(rec).with_rule(rule));
    }
    if h.is_multiple_of(4) {
        if let Ok(rec) = closed_form_record(spec, &ClosedForm::MixedQuarter) {
            out.push(Prediction::from_record(rec).with_rule(Rule::Corollary1c));
        }
    }
    out
}

/// All factors binary: PST to `u + c(A)` at `π/2`, periodic there when `c(A) = 0`.
pub fn predict_cubelike(spec: &NepsSpec) -> Option<Prediction> {
    if !spec.is_cubelike() {
        return None;
    }
    closed_form_record(spec, &ClosedForm::BinaryBasis)
        .ok()
        .map(Prediction::from_record)
}

/// Every predictor's output, in a fixed order.
pub fn predict_all(spec: &NepsSpec) -> Vec<Prediction> {
    let mut out = Vec::new();
    out.extend(predict_theorem1(spec));
    out.extend(predict_theorem2(spec));
    out.extend(predict_theorem3(spec));
    out.extend(predict_hamming(spec));
    out.extend(predict_cubelike(spec));
    out
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub verify_paths: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            tol: DEFAULT_TOL,
            verify_paths: false,
        }
    }
}

fn verify(spec: &NepsSpec, p: &Prediction, h: &ComplexMatrix, tol: f64) -> Result<Verification> {
    let mut deviation = 0.0f64;
    let mut confirmed = true;
    match p.kind {
        PredictionKind::Pst => {
            let shift = p.target_shift.as_ref().expect("PST prediction has a shift");
            for u in 0..h.dim() {
                let v = spec.vertex_index(&spec.vertex_add(&spec.index_vertex(u)?, shift)?)?;
                let z = h[(u, v)];
                deviation = deviation.max(1.0 - z.norm());
                if let Some(phase) = p.phase {
                    deviation = deviation.max((z - phase).norm());
                }
            }
            confirmed &= deviation <= tol;
        }
        PredictionKind::Periodic => match detect_periodic(h, tol) {
            Some(per) => {
                if let Some(phase) = p.phase {
                    match per.scalar {
                        Some(s) => deviation = (s - phase).norm(),
                        None => deviation = f64::INFINITY,
                    }
                    confirmed &= deviation <= tol;
                }
            }
            None => {
                confirmed = false;
                deviation = (0..h.dim()).map(|u| 1.0 - h[(u, u)].norm()).fold(0.0, f64::max);
            }
        },
        PredictionKind::NoClaim => {}
    }
    Ok(Verification {
        rule: p.rule,
        time: p.time,
        confirmed,
        deviation,
    })
}

/// Runs every predictor, evaluates `H` at the predicted times and at `times`,
/// verifies each prediction and records the numeric events.
pub fn analyze(spec: &NepsSpec, times: &[Time], tol: f64) -> Result<AnalysisReport> {
    analyze_with(spec, times, AnalyzeOptions { tol, ..Default::default() })
}

pub fn analyze_with(spec: &NepsSpec, times: &[Time], opts: AnalyzeOptions) -> Result<AnalysisReport> {
    spec.check_size_cap()?;
    let tol = opts.tol;
    let predictions = predict_all(spec);

    let mut all_times: Vec<Time> = Vec::new();
    for t in times.iter().copied().chain(
        predictions
            .iter()
            .filter(|p| p.kind != PredictionKind::NoClaim)
            .map(|p| Time::from(p.time)),
    ) {
        if !all_times.contains(&t) {
            all_times.push(t);
        }
    }

    let topts = TransitionOptions {
        verify_paths: opts.verify_paths,
        ..Default::default()
    };
    let evaluated: Vec<(Time, ComplexMatrix, Vec<PstEvent>, Option<Periodicity>)> = all_times
        .par_iter()
        .map(|&t| {
            let h = transition_with(spec, t, topts)?;
            let events = detect_pst(&h, spec, t, tol)?;
            let periodic = detect_periodic(&h, tol);
            Ok((t, h, events, periodic))
        })
        .collect::<Result<_>>()?;

    let mut verification = Vec::new();
    for p in &predictions {
        if p.kind == PredictionKind::NoClaim {
            continue;
        }
        let t = Time::from(p.time);
        let (_, h, _, _) = evaluated.iter().find(|e| e.0 == t).expect("predicted time evaluated");
        verification.push(verify(spec, p, h, tol)?);
    }

    let pst_times: Vec<RationalAngle> = predictions
        .iter()
        .filter(|p| p.kind == PredictionKind::Pst)
        .map(|p| p.time)
        .collect();
    let mut events = Vec::new();
    let mut periodic_at = Vec::new();
    let mut beyond = Vec::new();
    for (t, _, ev, per) in evaluated {
        let explained = t.as_rational().is_some_and(|a| pst_times.contains(&a));
        if !ev.is_empty() && !explained {
            beyond.push(t);
        }
        events.extend(ev);
        if let Some(periodicity) = per {
            periodic_at.push(PeriodicRecord { time: t, periodicity });
        }
    }

    Ok(AnalysisReport {
        spec: spec.clone(),
        tolerance: tol,
        times: all_times,
        events,
        periodic_at,
        predictions,
        verification,
        pst_beyond_sufficient_conditions: beyond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE};
    use crate::spectral::transition;

    fn bv(bits: &[u8]) -> BasisVector {
        BasisVector::from(bits)
    }

    #[test]
    fn cube_events_at_half_pi() {
        let q3 = NepsSpec::hamming(&[2, 2, 2]).unwrap();
        let t = Time::from(RationalAngle::HALF_PI);
        let h = transition(&q3, t).unwrap();
        let events = detect_pst(&h, &q3, t, DEFAULT_TOL).unwrap();
        assert_eq!(events.len(), 8);
        assert_eq!(event_shifts(&q3, &events), BTreeSet::from([vec![1, 1, 1]]));
    }

    #[test]
    fn complete_graph_has_no_events_but_is_periodic() {
        let k3 = NepsSpec::hamming(&[3]).unwrap();
        let t = Time::from(RationalAngle::new(2, 3));
        let h = transition(&k3, t).unwrap();
        assert!(detect_pst(&h, &k3, t, DEFAULT_TOL).unwrap().is_empty());
        let per = detect_periodic(&h, DEFAULT_TOL).unwrap();
        let expected = crate::linalg::unit_phase(2.0 * std::f64::consts::PI / 3.0);
        assert!((per.scalar.unwrap() - expected).norm() < 1e-12);
    }

    #[test]
    fn identity_has_no_events() {
        let q2 = NepsSpec::hamming(&[2, 2]).unwrap();
        let h = ComplexMatrix::identity(4);
        assert!(detect_pst(&h, &q2, Time::from(0.0), DEFAULT_TOL).unwrap().is_empty());
        assert_eq!(detect_periodic(&h, DEFAULT_TOL).unwrap().scalar, Some(ONE));
        let hq = transition(&q2, RationalAngle::HALF_PI).unwrap();
        assert!(detect_periodic(&hq, DEFAULT_TOL).is_none());
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let q2 = NepsSpec::hamming(&[2, 2]).unwrap();
        let h = ComplexMatrix::ones(4);
        assert!(matches!(
            detect_pst(&h, &q2, Time::from(0.0), DEFAULT_TOL),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn non_scalar_periodicity_is_flagged() {
        let mut h = ComplexMatrix::identity(2);
        h[(1, 1)] = -ONE;
        let per = detect_periodic(&h, DEFAULT_TOL).unwrap();
        assert!(per.scalar.is_none());
        assert_eq!(per.vertex_phases.unwrap(), vec![ONE, -ONE]);
    }

    #[test]
    fn theorem1_predictions() {
        let spec = NepsSpec::from_rows(&[3, 6, 2, 2], &[&[1, 1, 0, 0], &[1, 0, 0, 0]]).unwrap();
        let p = predict_theorem1(&spec).unwrap();
        assert_eq!((p.kind, p.period), (PredictionKind::Periodic, Some(RationalAngle::new(2, 3))));
        assert!(predict_theorem1(&NepsSpec::from_rows(&[3, 2], &[&[1, 1]]).unwrap()).is_none());
        let k5 = NepsSpec::hamming(&[5]).unwrap();
        assert_eq!(predict_theorem1(&k5).unwrap().time, RationalAngle::new(2, 5));
    }

    #[test]
    fn theorem2_predictions() {
        let a = NepsSpec::from_rows(&[3, 2, 2], &[&[0, 1, 0], &[0, 0, 1]]).unwrap();
        let p = predict_theorem2(&a).unwrap();
        assert_eq!(p.kind, PredictionKind::Pst);
        assert_eq!(p.target_shift, Some(bv(&[0, 1, 1])));
        assert_eq!(p.phase, Some(-ONE));

        let b = NepsSpec::from_rows(&[3, 2, 2], &[&[0, 1, 0], &[0, 0, 1], &[0, 1, 1]]).unwrap();
        let p = predict_theorem2(&b).unwrap();
        assert_eq!((p.kind, p.phase), (PredictionKind::Periodic, Some(I)));

        assert!(predict_theorem2(&NepsSpec::from_rows(&[4, 2], &[&[1, 1]]).unwrap()).is_none());
    }

    #[test]
    fn theorem3_predictions() {
        let c = NepsSpec::from_rows(&[4, 2], &[&[1, 1]]).unwrap();
        let preds = predict_theorem3(&c);
        let pst = preds.iter().find(|p| p.kind == PredictionKind::Pst).unwrap();
        assert_eq!((pst.rule, pst.time), (Rule::Theorem3ci, RationalAngle::HALF_PI));
        assert_eq!(pst.target_shift, Some(bv(&[0, 1])));

        let a = NepsSpec::from_rows(&[3, 2, 2], &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let preds = predict_theorem3(&a);
        assert_eq!(preds.len(), 1);
        assert_eq!((preds[0].rule, preds[0].period), (Rule::Theorem3a, Some(RationalAngle::TWO_PI)));

        let b = NepsSpec::from_rows(&[6, 2], &[&[1, 1], &[1, 0], &[0, 1]]).unwrap();
        let preds = predict_theorem3(&b);
        assert_eq!(preds.len(), 1);
        assert_eq!((preds[0].rule, preds[0].period), (Rule::Theorem3b, Some(RationalAngle::PI)));
    }

    #[test]
    fn partial_fiber_conditions_give_no_claim() {
        // fiber of (1,0) qualifies, fiber of (0,1) has size 1
        let spec = NepsSpec::from_rows(
            &[3, 3, 2, 2],
            &[&[1, 0, 0, 0], &[1, 0, 0, 1], &[1, 0, 1, 0], &[1, 0, 1, 1], &[0, 1, 0, 0]],
        )
        .unwrap();
        let preds = predict_theorem3(&spec);
        assert!(preds.iter().any(|p| p.kind == PredictionKind::NoClaim && p.rule == Rule::Theorem3ai));
    }

    #[test]
    fn hamming_predictions() {
        let p = predict_hamming(&NepsSpec::hamming(&[4, 2, 2]).unwrap());
        let pst = p.iter().find(|p| p.kind == PredictionKind::Pst).unwrap();
        assert_eq!(pst.rule, Rule::Corollary1c);
        assert_eq!(pst.target_shift, Some(bv(&[0, 1, 1])));
        let p = predict_hamming(&NepsSpec::hamming(&[3, 2]).unwrap());
        assert_eq!((p.len(), p[0].period), (1, Some(RationalAngle::TWO_PI)));
        let p = predict_hamming(&NepsSpec::hamming(&[6, 2]).unwrap());
        assert_eq!((p.len(), p[0].period), (1, Some(RationalAngle::PI)));
    }

    #[test]
    fn cubelike_predictions() {
        let q2 = NepsSpec::hamming(&[2, 2]).unwrap();
        let p = predict_cubelike(&q2).unwrap();
        assert_eq!((p.kind, p.target_shift.clone()), (PredictionKind::Pst, Some(bv(&[1, 1]))));
        let c0 = NepsSpec::from_rows(&[2, 2, 2], &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        let p = predict_cubelike(&c0).unwrap();
        assert_eq!((p.kind, p.phase), (PredictionKind::Periodic, Some(I)));
        let single = NepsSpec::from_rows(&[2, 2, 2], &[&[1, 0, 1]]).unwrap();
        assert_eq!(predict_cubelike(&single).unwrap().target_shift, Some(bv(&[1, 0, 1])));
    }

    #[test]
    fn analyze_confirms_hamming_pst() {
        let spec = NepsSpec::hamming(&[4, 2, 2]).unwrap();
        let report = analyze(&spec, &[], DEFAULT_TOL).unwrap();
        assert!(!report.has_discrepancy());
        assert!(report.verification.iter().any(|v| v.rule == Rule::Corollary1c && v.confirmed));
        assert!(report.pst_beyond_sufficient_conditions.is_empty());
    }

    #[test]
    fn analyze_flags_unexplained_transfer() {
        // Q2 with the standard basis only predicts π/2; at 3π/2 it transfers too.
        let q2 = NepsSpec::hamming(&[2, 2]).unwrap();
        let t = Time::from(RationalAngle::new(3, 2));
        let report = analyze(&q2, &[t], DEFAULT_TOL).unwrap();
        assert_eq!(report.pst_beyond_sufficient_conditions, vec![t]);
        assert!(!report.has_discrepancy());
    }

    #[test]
    fn report_serializes() {
        let spec = NepsSpec::from_rows(&[4, 2], &[&[1, 1]]).unwrap();
        let report = analyze(&spec, &[Time::from(RationalAngle::HALF_PI)], DEFAULT_TOL).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["predictions"][0]["kind"], "Periodic");
        assert_eq!(json["verification"][1]["rule"], "theorem3c.i");
    }
}
