//! Timed conformance checking with mixed edit moves.
//!
//! An observed timed trace is compared against another trace, or against a
//! sequential process model, by counting how much timestamp editing it takes
//! to turn one into the other. Two kinds of edits are available:
//!
//! * a **stamp** move shifts a single event and leaves the rest in place;
//! * a **delay** move shifts an event together with everything after it.
//!
//! The cheapest combination of both gives the mixed-moves distance, computed
//! here in linear time together with a witness run ([`distance::d_n`]). Against
//! a sequential process model, the closest conforming trace is found in
//! linear time too ([`align::align`]).
//!
//! All arithmetic is exact ([`Rational`]).
//!
//! ```
//! use timed_align::{d_n, apply_run, TimedTrace};
//!
//! let observed: TimedTrace = "0,3,4".parse()?;
//! let expected: TimedTrace = "0.5,2.5,3.5".parse()?;
//!
//! let report = d_n(&observed, &expected)?;
//! assert_eq!(report.value.to_string(), "1");
//! assert_eq!(apply_run(&observed, &report.witness)?, expected);
//! # Ok::<(), timed_align::Error>(())
//! ```
//!
//! The `oracle` module contains brute-force counterparts used to check the
//! fast algorithms on small inputs.

pub mod align;
pub mod distance;
mod error;
pub mod model;
pub mod moves;
pub mod oracle;
pub mod rational;
pub mod runs;
pub mod trace;

#[cfg(test)]
mod testing;

pub use align::{align, align_timestamps, clamp_flow, AlignmentResult, AlignmentSummary, PositionAlignment};
pub use distance::{d_n, d_t, d_theta, distance, DistanceReport, ErrorVector, Variant};
pub use error::{Error, Result};
pub use model::{
    first_label_divergence, membership, parse_model, sample_trace, serialize_model, untimed_match, Event, LabeledTrace,
    SequentialProcessModel, TimeInterval, Transition,
};
pub use moves::{
    apply_move, apply_move_to_flow, apply_run, apply_run_to_flow, net_effect, run_cost, MixedMove, MoveSequence,
};
pub use rational::{ParseRationalError, Rational};
pub use runs::{
    is_chronological, is_cooperative, is_cross_cooperative, is_reverse_chronological, is_stable, stable_stamp,
    to_chronological, to_cooperative, to_cross_cooperative,
};
pub use trace::{flow_of, trace_of_flow, FlowVector, TimedTrace};
