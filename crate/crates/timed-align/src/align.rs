//! Purely timed alignment against a sequential process model.
//!
//! When the observed activities already match the model, the closest model
//! trace under the mixed-moves distance is obtained position by position:
//! clamp each observed flow component into its interval and rebuild the
//! timestamps. This is linear in the trace length.
//!
//! The optimal trace need not be unique. For the model `[1,3],[1,4],[0,3]`
//! and the observation `(4,6,6)`, both `(3,5,5)` and `(3,6,6)` are at distance
//! 1. The clamped trace is returned; only its distance is canonical.

use serde::{Deserialize, Serialize};

use crate::distance::d_n;
use crate::error::{Error, Result};
use crate::model::{first_label_divergence, membership, LabeledTrace, SequentialProcessModel, TimeInterval};
use crate::moves::MoveSequence;
use crate::rational::Rational;
use crate::trace::{flow_of, trace_of_flow, FlowVector, TimedTrace};

/// The point of `interval` nearest to `x`.
pub fn clamp_flow(x: &Rational, interval: &TimeInterval) -> Rational {
    interval.clamp(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionAlignment {
    pub observed_flow: Rational,
    pub aligned_flow: Rational,
    pub interval: TimeInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentResult {
    /// The model trace closest to the observation.
    pub aligned: TimedTrace,
    /// Mixed-moves distance between observation and `aligned`.
    pub distance: Rational,
    /// Stable run taking the observed timestamps to `aligned`.
    pub witness: MoveSequence,
    pub per_position: Vec<PositionAlignment>,
}

/// Serializable summary, used by report writers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentSummary {
    pub aligned: TimedTrace,
    pub distance: Rational,
    pub witness: MoveSequence,
}

impl From<&AlignmentResult> for AlignmentSummary {
    fn from(r: &AlignmentResult) -> Self {
        Self { aligned: r.aligned.clone(), distance: r.distance.clone(), witness: r.witness.clone() }
    }
}

/// Aligns an observed case to the model.
///
/// Fails with [`Error::UntimedMismatch`] naming the first diverging position
/// when the activities differ from the model's labels; repairing labels is
/// not attempted.
pub fn align(model: &SequentialProcessModel, observed: &LabeledTrace) -> Result<AlignmentResult> {
    if let Some((position, expected, found)) = first_label_divergence(model, observed) {
        return Err(Error::UntimedMismatch { position, expected, found });
    }
    align_timestamps(model, &observed.timed_trace())
}

/// Like [`align`], for bare timestamps of the model's length.
pub fn align_timestamps(model: &SequentialProcessModel, observed: &TimedTrace) -> Result<AlignmentResult> {
    if model.len() != observed.len() {
        return Err(Error::LengthMismatch { left: model.len(), right: observed.len() });
    }
    let observed_flow = flow_of(observed);
    let per_position: Vec<PositionAlignment> = observed_flow
        .iter()
        .zip(model.intervals())
        .map(|(f, iv)| PositionAlignment {
            observed_flow: f.clone(),
            aligned_flow: clamp_flow(f, iv),
            interval: iv.clone(),
        })
        .collect();
    let aligned_flow: FlowVector = per_position.iter().map(|p| p.aligned_flow.clone()).collect();
    let aligned = trace_of_flow(&aligned_flow);
    debug_assert!(membership(model, &aligned).unwrap_or(false));
    let report = d_n(observed, &aligned)?;
    Ok(AlignmentResult { aligned, distance: report.value, witness: report.witness, per_position })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::apply_run;
    use crate::testing::{q, trace};

    fn three_step_model() -> SequentialProcessModel {
        SequentialProcessModel::from_bounds(&[("d", "0", "1"), ("e", "2", "2"), ("f", "1", "1")]).unwrap()
    }

    #[test]
    fn clamp_examples() {
        let iv = |a: &str, b: &str| TimeInterval::bounded(q(a), q(b)).unwrap();
        assert_eq!(clamp_flow(&q("3"), &iv("0", "1")), q("1"));
        assert_eq!(clamp_flow(&q("1"), &iv("2", "2")), q("2"));
        assert_eq!(clamp_flow(&q("1"), &iv("1", "1")), q("1"));
        assert_eq!(clamp_flow(&q("-4"), &TimeInterval::unbounded(q("0")).unwrap()), q("0"));
    }

    #[test]
    fn late_case_alignment() {
        let observed = LabeledTrace::from_pairs("c1", &[("d", "3"), ("e", "4"), ("f", "5")]).unwrap();
        let r = align(&three_step_model(), &observed).unwrap();
        assert_eq!(r.aligned, trace("1,3,4"));
        assert_eq!(r.distance, q("2"));
        assert_eq!(apply_run(&trace("3,4,5"), &r.witness).unwrap(), r.aligned);
        assert_eq!(r.per_position[0].observed_flow, q("3"));
        assert_eq!(r.per_position[0].aligned_flow, q("1"));
    }

    #[test]
    fn optimum_is_not_unique() {
        let m = SequentialProcessModel::from_bounds(&[("d", "1", "3"), ("e", "1", "4"), ("f", "0", "3")]).unwrap();
        let r = align_timestamps(&m, &trace("4,6,6")).unwrap();
        assert_eq!(r.aligned, trace("3,5,5"));
        assert_eq!(r.distance, q("1"));
        // another optimum at the same distance
        assert_eq!(d_n(&trace("4,6,6"), &trace("3,6,6")).unwrap().value, q("1"));
        assert!(membership(&m, &trace("3,6,6")).unwrap());
    }

    #[test]
    fn members_are_fixpoints() {
        let r = align_timestamps(&three_step_model(), &trace("0.5,2.5,3.5")).unwrap();
        assert_eq!(r.aligned, trace("0.5,2.5,3.5"));
        assert!(r.distance.is_zero());
    }

    #[test]
    fn label_mismatch_is_reported() {
        let observed = LabeledTrace::from_pairs("c", &[("d", "3"), ("x", "4"), ("f", "5")]).unwrap();
        let err = align(&three_step_model(), &observed).unwrap_err();
        assert_eq!(err, Error::UntimedMismatch { position: 2, expected: "e".into(), found: "x".into() });
    }

    #[test]
    fn decreasing_observations_still_align() {
        let r = align_timestamps(&three_step_model(), &trace("2,1,-1")).unwrap();
        assert!(membership(&three_step_model(), &r.aligned).unwrap());
        assert_eq!(r.aligned, trace("1,3,4"));
    }
}
