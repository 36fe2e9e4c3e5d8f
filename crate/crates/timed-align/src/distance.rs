//! Distances between timed traces of equal length.
//!
//! * [`d_t`]: stamp moves only. Each stamp fixes one timestamp, so the
//!   distance is `Σ |a_i − b_i|`.
//! * [`d_theta`]: delay moves only. Each delay fixes one flow component, so
//!   the distance is `Σ |f_a(i) − f_b(i)|`.
//! * [`d_n`]: both kinds of moves. Computed in one right-to-left sweep over the
//!   flow errors, producing the unique stable run as a witness.
//!
//! Every report carries a witness run that maps `source` onto `target`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moves::{opposite_signs, MixedMove, MoveSequence};
use crate::rational::Rational;
use crate::runs::stable_stamp;
use crate::trace::TimedTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    StampOnly,
    DelayOnly,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub variant: Variant,
    pub value: Rational,
    /// A run of cost `value` with `apply_run(source, witness) == target`.
    pub witness: MoveSequence,
}

/// Per-position flow errors `e_i = f_target(i) − f_source(i)`, corrected in
/// place as moves are chosen. All zero once a full aligning run is played.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorVector(Vec<Rational>);

impl ErrorVector {
    pub fn between(source: &TimedTrace, target: &TimedTrace) -> Result<Self> {
        check_lengths(source, target)?;
        let s = source.timestamps();
        let t = target.timestamps();
        // f_t(i) − f_s(i) = (t_i − s_i) − (t_{i−1} − s_{i−1})
        let mut prev = Rational::zero();
        let errors = s
            .iter()
            .zip(t)
            .map(|(a, b)| {
                let gap = b - a;
                let e = &gap - &prev;
                prev = gap;
                e
            })
            .collect();
        Ok(Self(errors))
    }

    pub fn errors(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Accounts for a move being played: `e_i −= s + d`, `e_{i+1} += s`.
    pub fn record(&mut self, m: &MixedMove) {
        let i = m.position - 1;
        self.0[i] -= &m.stamp;
        self.0[i] -= &m.delay;
        if let Some(next) = self.0.get_mut(i + 1) {
            *next += &m.stamp;
        }
    }
}

fn check_lengths(a: &TimedTrace, b: &TimedTrace) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left: a.len(), right: b.len() })
    }
}

/// Stamp-only distance. The witness stamps every position, in order.
pub fn d_t(source: &TimedTrace, target: &TimedTrace) -> Result<DistanceReport> {
    check_lengths(source, target)?;
    let witness: MoveSequence =
        source.iter().zip(target).enumerate().map(|(k, (a, b))| MixedMove::stamp(b - a, k + 1)).collect();
    Ok(DistanceReport { variant: Variant::StampOnly, value: witness.cost(), witness })
}

/// Delay-only distance. The witness delays every position, in order.
pub fn d_theta(source: &TimedTrace, target: &TimedTrace) -> Result<DistanceReport> {
    let errors = ErrorVector::between(source, target)?;
    let witness: MoveSequence = errors.0.into_iter().enumerate().map(|(k, e)| MixedMove::delay(e, k + 1)).collect();
    Ok(DistanceReport { variant: Variant::DelayOnly, value: witness.cost(), witness })
}

/// Mixed-moves distance with its stable witness.
///
/// Sweeps positions `i = n, …, 2` with `a = e_i` (already corrected by the
/// stamp chosen at `i` one step earlier) and `b = e_{i−1}`:
///
/// * `a·b ≥ 0`: play the pure delay `a` at `i`;
/// * `|a| < |b|`: play the stamp `−a` at `i − 1`, which clears `e_i` and
///   shrinks `e_{i−1}` to `a + b`;
/// * otherwise: play the stamp `b` at `i − 1`, clearing `e_{i−1}`, and the
///   delay `a + b` at `i`.
///
/// Each step costs `|a|`. The leftover error at position 1 is removed by a
/// delay there. The witness is reverse chronological, co-operative, cross
/// co-operative and stable.
pub fn d_n(source: &TimedTrace, target: &TimedTrace) -> Result<DistanceReport> {
    let ErrorVector(mut errors) = ErrorVector::between(source, target)?;
    let n = errors.len();
    let mut stamps = vec![Rational::zero(); n];
    let mut delays = vec![Rational::zero(); n];
    let mut cost = Rational::zero();
    for i in (1..n).rev() {
        // 0-based: `i` is the position being cleared, `i − 1` its predecessor.
        let (head, tail) = errors.split_at_mut(i);
        let a = &tail[0];
        let b = &mut head[i - 1];
        let s = stable_stamp(a, b);
        debug_assert!(opposite_signs(a, b) || s.is_zero());
        cost += a.abs();
        delays[i] = a + &s;
        *b -= &s;
        stamps[i - 1] = s;
    }
    if let Some(first) = errors.first() {
        cost += first.abs();
        delays[0] = first.clone();
    }
    let witness: MoveSequence = (1..=n)
        .rev()
        .map(|p| MixedMove::new(std::mem::take(&mut stamps[p - 1]), std::mem::take(&mut delays[p - 1]), p))
        .collect();
    debug_assert_eq!(witness.cost(), cost);
    Ok(DistanceReport { variant: Variant::Mixed, value: cost, witness })
}

/// Dispatches on `variant`.
pub fn distance(variant: Variant, source: &TimedTrace, target: &TimedTrace) -> Result<DistanceReport> {
    match variant {
        Variant::StampOnly => d_t(source, target),
        Variant::DelayOnly => d_theta(source, target),
        Variant::Mixed => d_n(source, target),
    }
}
