//! Stamp, delay and mixed edit moves, and their effect on traces and flows.
//!
//! A mixed move `(s, d, i)` shifts event `i` by `s + d` and every later event
//! by `d`. On flows this touches at most two components: `f(i)` gains
//! `s + d` and `f(i+1)` loses `s`. Positions are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::trace::{FlowVector, TimedTrace};

/// A stamp of `stamp` and a delay of `delay`, both applied at `position`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedMove {
    pub stamp: Rational,
    pub delay: Rational,
    pub position: usize,
}

impl MixedMove {
    pub fn new(stamp: Rational, delay: Rational, position: usize) -> Self {
        Self { stamp, delay, position }
    }

    pub fn stamp(x: Rational, position: usize) -> Self {
        Self::new(x, Rational::zero(), position)
    }

    pub fn delay(x: Rational, position: usize) -> Self {
        Self::new(Rational::zero(), x, position)
    }

    pub fn zero(position: usize) -> Self {
        Self::new(Rational::zero(), Rational::zero(), position)
    }

    /// `|s| + |d|`.
    pub fn cost(&self) -> Rational {
        self.stamp.abs() + self.delay.abs()
    }

    pub fn is_pure_stamp(&self) -> bool {
        self.delay.is_zero()
    }

    pub fn is_pure_delay(&self) -> bool {
        self.stamp.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.stamp.is_zero() && self.delay.is_zero()
    }

    /// Stamp and delay do not pull in opposite directions (`s·d ≥ 0`).
    pub fn is_cooperative(&self) -> bool {
        !opposite_signs(&self.stamp, &self.delay)
    }

    fn check(&self, len: usize) -> Result<()> {
        if self.position == 0 || self.position > len {
            Err(Error::Index { position: self.position, len })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn opposite_signs(a: &Rational, b: &Rational) -> bool {
    (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive())
}

impl fmt::Display for MixedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.stamp, self.delay, self.position)
    }
}

/// An ordered run of mixed moves, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(Vec<MixedMove>);

impl MoveSequence {
    pub fn new(moves: Vec<MixedMove>) -> Self {
        Self(moves)
    }

    pub fn moves(&self) -> &[MixedMove] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<MixedMove> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, m: MixedMove) {
        self.0.push(m);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MixedMove> {
        self.0.iter()
    }

    pub fn cost(&self) -> Rational {
        run_cost(self)
    }

    /// The same moves in the opposite order.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().cloned().collect())
    }

    /// The moves that are not `(0, 0, i)`.
    pub fn nonzero(&self) -> impl Iterator<Item = &MixedMove> {
        self.0.iter().filter(|m| !m.is_zero())
    }
}

impl From<Vec<MixedMove>> for MoveSequence {
    fn from(v: Vec<MixedMove>) -> Self {
        Self(v)
    }
}

impl FromIterator<MixedMove> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = MixedMove>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a MoveSequence {
    type Item = &'a MixedMove;
    type IntoIter = std::slice::Iter<'a, MixedMove>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Applies a move to absolute timestamps.
pub fn apply_move(trace: &TimedTrace, m: &MixedMove) -> Result<TimedTrace> {
    let mut out = trace.clone();
    apply_move_in_place(&mut out, m)?;
    Ok(out)
}

pub(crate) fn apply_move_in_place(trace: &mut TimedTrace, m: &MixedMove) -> Result<()> {
    m.check(trace.len())?;
    let ts = trace.as_mut_vec();
    let i = m.position - 1;
    ts[i] += &m.stamp;
    if !m.delay.is_zero() {
        for t in &mut ts[i..] {
            *t += &m.delay;
        }
    }
    Ok(())
}

/// Applies a move to a flow vector: `f(i) += s + d`, `f(i+1) -= s`.
pub fn apply_move_to_flow(flow: &FlowVector, m: &MixedMove) -> Result<FlowVector> {
    let mut out = flow.clone();
    apply_move_to_flow_in_place(&mut out, m)?;
    Ok(out)
}

pub(crate) fn apply_move_to_flow_in_place(flow: &mut FlowVector, m: &MixedMove) -> Result<()> {
    m.check(flow.len())?;
    let fs = flow.as_mut_vec();
    let i = m.position - 1;
    fs[i] += &m.stamp;
    fs[i] += &m.delay;
    if let Some(next) = fs.get_mut(i + 1) {
        *next -= &m.stamp;
    }
    Ok(())
}

/// Applies every move of `run`, left to right.
pub fn apply_run(trace: &TimedTrace, run: &MoveSequence) -> Result<TimedTrace> {
    let mut out = trace.clone();
    for m in run {
        apply_move_in_place(&mut out, m)?;
    }
    Ok(out)
}

pub fn apply_run_to_flow(flow: &FlowVector, run: &MoveSequence) -> Result<FlowVector> {
    let mut out = flow.clone();
    for m in run {
        apply_move_to_flow_in_place(&mut out, m)?;
    }
    Ok(out)
}

/// `Σ (|s| + |d|)` over the run.
pub fn run_cost(run: &MoveSequence) -> Rational {
    run.iter().map(MixedMove::cost).sum()
}

/// The offset a run adds to each timestamp of any trace of length `len`.
///
/// Moves are translations, so `apply_run(τ, run) = τ + net_effect(run)` for
/// every `τ`. Two runs with the same net effect are interchangeable.
pub fn net_effect(run: &MoveSequence, len: usize) -> Result<Vec<Rational>> {
    let mut stamps = vec![Rational::zero(); len];
    let mut delays = vec![Rational::zero(); len];
    for m in run {
        m.check(len)?;
        stamps[m.position - 1] += &m.stamp;
        delays[m.position - 1] += &m.delay;
    }
    let mut shift = Rational::zero();
    Ok(stamps
        .into_iter()
        .zip(delays)
        .map(|(s, d)| {
            shift += d;
            &shift + s
        })
        .collect())
}
