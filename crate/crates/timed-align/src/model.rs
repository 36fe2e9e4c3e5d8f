//! Sequential process models: a chain of labeled transitions, each allowed
//! to fire within a closed interval of time after the previous one.
//!
//! A timestamp sequence `(t_1, …, t_n)` belongs to the model iff every
//! duration `t_i − t_{i−1}` (with `t_0 = 0`) lies in the `i`-th interval, that
//! is, iff every flow component lies in its interval.
//!
//! Models are stored as JSON with bounds written as strings, so that they
//! parse exactly:
//!
//! ```json
//! {"name": "n1", "transitions": [{"label": "d", "eft": "1", "lft": "3"},
//!                                {"label": "e", "eft": "1", "lft": "inf"}]}
//! ```

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::trace::{flow_of, trace_of_flow, FlowVector, TimedTrace};

/// `[eft, lft]`, with `lft = None` meaning unbounded above.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimeInterval {
    eft: Rational,
    lft: Option<Rational>,
}

impl TimeInterval {
    pub fn new(eft: Rational, lft: Option<Rational>) -> Result<Self> {
        if eft.is_negative() {
            return Err(Error::data("interval", format!("negative earliest firing time {eft}")));
        }
        if let Some(l) = &lft {
            if *l < eft {
                return Err(Error::data("interval", format!("earliest firing time {eft} exceeds latest {l}")));
            }
        }
        Ok(Self { eft, lft })
    }

    pub fn bounded(eft: Rational, lft: Rational) -> Result<Self> {
        Self::new(eft, Some(lft))
    }

    pub fn unbounded(eft: Rational) -> Result<Self> {
        Self::new(eft, None)
    }

    pub fn point(at: Rational) -> Result<Self> {
        Self::new(at.clone(), Some(at))
    }

    pub fn eft(&self) -> &Rational {
        &self.eft
    }

    pub fn lft(&self) -> Option<&Rational> {
        self.lft.as_ref()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        *x >= self.eft && self.lft.as_ref().map_or(true, |l| x <= l)
    }

    /// The point of the interval nearest to `x`.
    pub fn clamp(&self, x: &Rational) -> Rational {
        if *x < self.eft {
            return self.eft.clone();
        }
        match &self.lft {
            Some(l) if x > l => l.clone(),
            _ => x.clone(),
        }
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lft {
            Some(l) => write!(f, "[{}, {}]", self.eft, l),
            None => write!(f, "[{}, inf]", self.eft),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub label: String,
    pub interval: TimeInterval,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SequentialProcessModel {
    pub name: Option<String>,
    transitions: Vec<Transition>,
}

impl SequentialProcessModel {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        for (k, t) in transitions.iter().enumerate() {
            if t.label.is_empty() {
                return Err(Error::data(format!("transitions[{k}].label"), "label must be nonempty"));
            }
        }
        Ok(Self { name: None, transitions })
    }

    /// Shorthand for tests and examples: `[("d", "1", "3"), ("e", "0", "inf")]`.
    pub fn from_bounds(bounds: &[(&str, &str, &str)]) -> Result<Self> {
        let transitions = bounds
            .iter()
            .enumerate()
            .map(|(k, (label, eft, lft))| {
                Ok(Transition { label: (*label).to_owned(), interval: parse_interval(k, eft, lft)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(transitions)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.transitions.iter().map(|t| t.label.as_str())
    }

    pub fn intervals(&self) -> impl Iterator<Item = &TimeInterval> {
        self.transitions.iter().map(|t| &t.interval)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    pub activity: String,
    pub timestamp: Rational,
}

/// An observed case: activities with their timestamps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledTrace {
    pub case_id: String,
    pub events: Vec<Event>,
}

impl LabeledTrace {
    pub fn new(case_id: impl Into<String>, events: Vec<Event>) -> Self {
        Self { case_id: case_id.into(), events }
    }

    /// Builds a trace from `(activity, timestamp)` pairs.
    pub fn from_pairs(case_id: impl Into<String>, pairs: &[(&str, &str)]) -> Result<Self> {
        let events = pairs
            .iter()
            .enumerate()
            .map(|(k, (a, t))| {
                let timestamp = t.parse().map_err(|e: crate::rational::ParseRationalError| {
                    Error::data(format!("event {}", k + 1), e.to_string())
                })?;
                Ok(Event { activity: (*a).to_owned(), timestamp })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(case_id, events))
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.events.iter().map(|e| e.activity.as_str())
    }

    pub fn timed_trace(&self) -> TimedTrace {
        self.events.iter().map(|e| e.timestamp.clone()).collect()
    }
}

/// Whether `trace` is in the timed language of `model`.
pub fn membership(model: &SequentialProcessModel, trace: &TimedTrace) -> Result<bool> {
    if model.len() != trace.len() {
        return Err(Error::LengthMismatch { left: model.len(), right: trace.len() });
    }
    Ok(flow_of(trace).iter().zip(model.intervals()).all(|(f, iv)| iv.contains(f)))
}

/// Whether the activities of `trace` are exactly the model's labels.
pub fn untimed_match(model: &SequentialProcessModel, trace: &LabeledTrace) -> bool {
    first_label_divergence(model, trace).is_none()
}

/// The first 1-based position where labels differ, with the expected and
/// found labels (`"<end>"` past either end).
pub fn first_label_divergence(model: &SequentialProcessModel, trace: &LabeledTrace) -> Option<(usize, String, String)> {
    let n = model.len().max(trace.len());
    (0..n).find_map(|k| {
        let expected = model.transitions.get(k).map(|t| t.label.as_str());
        let found = trace.events.get(k).map(|e| e.activity.as_str());
        (expected != found)
            .then(|| (k + 1, expected.unwrap_or("<end>").to_owned(), found.unwrap_or("<end>").to_owned()))
    })
}

/// Samples a trace of the model: each flow is uniform on a grid of the
/// interval `[eft, lft]`, with an unbounded `lft` replaced by `eft + horizon`.
pub fn sample_trace(model: &SequentialProcessModel, seed: u64, horizon: &Rational) -> Result<TimedTrace> {
    if !horizon.is_positive() {
        return Err(Error::contract("sampling horizon must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flows: FlowVector = model
        .intervals()
        .map(|iv| {
            let hi = iv.lft().cloned().unwrap_or_else(|| iv.eft() + horizon);
            uniform_in(&mut rng, iv.eft(), &hi)
        })
        .collect();
    Ok(trace_of_flow(&flows))
}

const GRID: i64 = 1000;

/// A point of `{lo + (hi − lo)·k/GRID}`, uniformly.
pub(crate) fn uniform_in<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational) -> Rational {
    let k = rng.gen_range(0..=GRID);
    let step = Rational::fraction(k, GRID).expect("nonzero grid");
    lo + (hi - lo) * step
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    transitions: Vec<RawTransition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    label: String,
    eft: String,
    lft: String,
}

fn parse_interval(k: usize, eft: &str, lft: &str) -> Result<TimeInterval> {
    let eft: Rational = eft.parse().map_err(|e: crate::rational::ParseRationalError| {
        Error::data(format!("transitions[{k}].eft"), e.to_string())
    })?;
    let lft = if lft.trim().eq_ignore_ascii_case("inf") {
        None
    } else {
        Some(lft.parse().map_err(|e: crate::rational::ParseRationalError| {
            Error::data(format!("transitions[{k}].lft"), e.to_string())
        })?)
    };
    TimeInterval::new(eft, lft).map_err(|e| match e {
        Error::Data { message, .. } => Error::data(format!("transitions[{k}]"), message),
        other => other,
    })
}

/// Parses a model document. Errors name the JSON line and column, or the
/// offending transition field.
pub fn parse_model(text: &str) -> Result<SequentialProcessModel> {
    let raw: RawModel = serde_json::from_str(text)
        .map_err(|e| Error::data(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let transitions = raw
        .transitions
        .iter()
        .enumerate()
        .map(|(k, t)| Ok(Transition { label: t.label.clone(), interval: parse_interval(k, &t.eft, &t.lft)? }))
        .collect::<Result<Vec<_>>>()?;
    let mut model = SequentialProcessModel::new(transitions)?;
    model.name = raw.name;
    Ok(model)
}

/// Pretty-printed JSON accepted by [`parse_model`].
pub fn serialize_model(model: &SequentialProcessModel) -> String {
    let raw = RawModel {
        name: model.name.clone(),
        transitions: model
            .transitions
            .iter()
            .map(|t| RawTransition {
                label: t.label.clone(),
                eft: t.interval.eft.to_string(),
                lft: t.interval.lft.as_ref().map_or_else(|| "inf".to_owned(), Rational::to_string),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("model serialization cannot fail")
}
