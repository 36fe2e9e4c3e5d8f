//! Timed traces and their flow (duration) representation.
//!
//! A [`TimedTrace`] lists absolute timestamps `τ(1), …, τ(n)`. Its
//! [`FlowVector`] lists the durations between consecutive events, with the
//! first entry measured from time zero:
//!
//! ```text
//! f(1) = τ(1)
//! f(i) = τ(i) − τ(i−1)      for i > 1
//! ```
//!
//! The two are exact inverses of each other. Delay moves touch a single flow
//! component, which is why most of the algorithms in this crate work on flows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite sequence of timestamps. No ordering is imposed: observed traces
/// may contain decreasing or negative timestamps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimedTrace(Vec<Rational>);

/// Durations between consecutive events of a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlowVector(Vec<Rational>);

impl TimedTrace {
    pub fn new(timestamps: Vec<Rational>) -> Self {
        Self(timestamps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn timestamps(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Timestamp at a 1-based position.
    pub fn at(&self, position: usize) -> Option<&Rational> {
        position.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn flow(&self) -> FlowVector {
        flow_of(self)
    }

    /// True if some timestamp is strictly smaller than its predecessor.
    pub fn has_decreasing_step(&self) -> bool {
        self.0.windows(2).any(|w| w[1] < w[0])
    }

    pub fn has_negative_timestamp(&self) -> bool {
        self.0.iter().any(Rational::is_negative)
    }

    pub(crate) fn as_mut_vec(&mut self) -> &mut Vec<Rational> {
        &mut self.0
    }
}

impl FlowVector {
    pub fn new(flows: Vec<Rational>) -> Self {
        Self(flows)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flows(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Flow at a 1-based position.
    pub fn at(&self, position: usize) -> Option<&Rational> {
        position.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn trace(&self) -> TimedTrace {
        trace_of_flow(self)
    }

    pub(crate) fn as_mut_vec(&mut self) -> &mut Vec<Rational> {
        &mut self.0
    }
}

/// Durations between consecutive timestamps, the first measured from zero.
pub fn flow_of(trace: &TimedTrace) -> FlowVector {
    let ts = trace.timestamps();
    let mut flows = Vec::with_capacity(ts.len());
    if let Some(first) = ts.first() {
        flows.push(first.clone());
    }
    flows.extend(ts.windows(2).map(|w| &w[1] - &w[0]));
    FlowVector(flows)
}

/// Prefix sums of a flow vector.
pub fn trace_of_flow(flow: &FlowVector) -> TimedTrace {
    let mut acc = Rational::zero();
    let timestamps = flow
        .iter()
        .map(|f| {
            acc += f;
            acc.clone()
        })
        .collect();
    TimedTrace(timestamps)
}

impl From<Vec<Rational>> for TimedTrace {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl From<Vec<Rational>> for FlowVector {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

impl<'a> IntoIterator for &'a TimedTrace {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Rational> for TimedTrace {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl FromIterator<Rational> for FlowVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .enumerate()
        .map(|(i, item)| item.parse::<Rational>().map_err(|e| Error::data(format!("entry {}", i + 1), e.to_string())))
        .collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Rational]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Parses comma-separated numbers, e.g. `"0,3,4"` or `"0.5, 2.5, 7/2"`.
impl FromStr for TimedTrace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(TimedTrace)
    }
}

impl FromStr for FlowVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(FlowVector)
    }
}

/// Comma-separated, the same format [`FromStr`] accepts.
impl fmt::Display for TimedTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl fmt::Display for FlowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}
