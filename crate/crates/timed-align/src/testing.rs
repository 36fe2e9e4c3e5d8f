//! Shorthands and proptest strategies shared by the unit tests.

use std::ops::Range;

use proptest::prelude::*;

use crate::moves::{MixedMove, MoveSequence};
use crate::rational::Rational;
use crate::trace::TimedTrace;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn trace(s: &str) -> TimedTrace {
    s.parse().unwrap()
}

pub fn mv(s: &str, d: &str, i: usize) -> MixedMove {
    MixedMove::new(q(s), q(d), i)
}

pub fn run(moves: &[(&str, &str, usize)]) -> MoveSequence {
    moves.iter().map(|&(s, d, i)| mv(s, d, i)).collect()
}

/// Small rationals with mixed denominators, zero included often enough to hit ties.
pub fn arb_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        1 => Just(Rational::zero()),
        6 => (-40i64..=40, prop::sample::select(vec![1i64, 2, 3, 4, 5, 10])).prop_map(|(n, d)| Rational::fraction(n, d).unwrap()),
    ]
}

pub fn arb_trace(len: Range<usize>) -> impl Strategy<Value = TimedTrace> {
    prop::collection::vec(arb_rational(), len).prop_map(TimedTrace::new)
}

pub fn arb_move_for(n: usize) -> impl Strategy<Value = MixedMove> {
    (arb_rational(), arb_rational(), 1..=n).prop_map(|(s, d, i)| MixedMove::new(s, d, i))
}

pub fn arb_run_for(n: usize, len: Range<usize>) -> impl Strategy<Value = MoveSequence> {
    prop::collection::vec(arb_move_for(n), len).prop_map(MoveSequence::new)
}

/// A pair of traces of the same length.
pub fn arb_pair(len: Range<usize>) -> impl Strategy<Value = (TimedTrace, TimedTrace)> {
    len.prop_flat_map(|n| (arb_trace(n..n + 1), arb_trace(n..n + 1)))
}
