//! Shape predicates on runs and the rewrites that normalize a run without
//! changing what it does or making it more expensive.
//!
//! The normal form, reached by composing the three rewrites, is a run with one
//! move per position (chronology), whose stamp and delay agree in sign
//! (co-operation), and whose stamps never agree in sign with the delay at the
//! next position (cross co-operation). The unique such run that also makes the
//! locally best stamp choice everywhere is the stable run, which is what
//! [`crate::distance::d_n`] computes.
//!
//! All rewrites check that the net effect of the run is unchanged; see
//! [`net_effect`](crate::moves::net_effect).

use crate::error::{Error, Result};
use crate::moves::{apply_run, net_effect, opposite_signs, MixedMove, MoveSequence};
use crate::rational::Rational;
use crate::trace::{flow_of, TimedTrace};

/// Positions are exactly `1, 2, …, n`, in that order.
pub fn is_chronological(run: &MoveSequence, n: usize) -> bool {
    run.len() == n && run.iter().enumerate().all(|(k, m)| m.position == k + 1)
}

/// Positions are exactly `n, n−1, …, 1`, in that order.
pub fn is_reverse_chronological(run: &MoveSequence, n: usize) -> bool {
    run.len() == n && run.iter().enumerate().all(|(k, m)| m.position == n - k)
}

/// Every move has `s·d ≥ 0`.
pub fn is_cooperative(run: &MoveSequence) -> bool {
    run.iter().all(MixedMove::is_cooperative)
}

/// No stamp shares a sign with the delay played at the next position.
///
/// Defined for runs with at most one move per position (in either order);
/// returns `false` if some position repeats.
pub fn is_cross_cooperative(run: &MoveSequence) -> bool {
    let Some(n) = run.iter().map(|m| m.position).max() else {
        return true;
    };
    let mut slots: Vec<Option<&MixedMove>> = vec![None; n + 1];
    for m in run {
        if slots[m.position].replace(m).is_some() {
            return false;
        }
    }
    slots.windows(2).skip(1).all(|w| match (w[0], w[1]) {
        (Some(here), Some(next)) => !(here.stamp.sign() == next.delay.sign() && !here.stamp.is_zero()),
        _ => true,
    })
}

/// The stable stamp choice at position `i − 1` while processing position `i`.
///
/// `a` is the remaining flow error at `i` and `b` the error at `i − 1`. When
/// they point the same way, no stamp helps. Otherwise the stamp moves as much
/// error as it can from `i − 1` onto `i`, bounded by whichever is smaller.
pub fn stable_stamp(a: &Rational, b: &Rational) -> Rational {
    if !opposite_signs(a, b) {
        Rational::zero()
    } else if a.abs() < b.abs() {
        -a
    } else {
        b.clone()
    }
}

/// Checks stability of a reverse chronological, co-operative run aligning
/// `source` to `target`.
///
/// The run is replayed on `flow_of(source)`; before each stamp at `i − 1` is
/// played, the partially aligned errors at `i` and `i − 1` determine what the
/// stable stamp would be, and the run's stamp must match it. The move at the
/// last position must be a pure delay.
///
/// Returns an error if the run does not align `source` to `target`, and
/// `Ok(false)` if it is not reverse chronological or not co-operative.
pub fn is_stable(run: &MoveSequence, source: &TimedTrace, target: &TimedTrace) -> Result<bool> {
    if source.len() != target.len() {
        return Err(Error::LengthMismatch { left: source.len(), right: target.len() });
    }
    if apply_run(source, run)? != *target {
        return Err(Error::contract("run does not align source to target"));
    }
    let n = source.len();
    if !is_reverse_chronological(run, n) || !is_cooperative(run) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    // run[k] sits at position n − k
    let move_at = |position: usize| &run.moves()[n - position];
    if !move_at(n).stamp.is_zero() {
        return Ok(false);
    }
    let goal = flow_of(target).into_inner();
    let mut current = flow_of(source).into_inner();
    for i in (2..=n).rev() {
        let a = &goal[i - 1] - &current[i - 1];
        let b = &goal[i - 2] - &current[i - 2];
        let prev = move_at(i - 1);
        if prev.stamp != stable_stamp(&a, &b) {
            return Ok(false);
        }
        let here = move_at(i);
        current[i - 1] += &here.delay;
        current[i - 1] -= &prev.stamp;
        current[i - 2] += &prev.stamp;
    }
    Ok(true)
}

fn per_position(run: &MoveSequence, n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut stamps = vec![Rational::zero(); n];
    let mut delays = vec![Rational::zero(); n];
    for m in run {
        if m.position == 0 || m.position > n {
            return Err(Error::Index { position: m.position, len: n });
        }
        stamps[m.position - 1] += &m.stamp;
        delays[m.position - 1] += &m.delay;
    }
    Ok((stamps, delays))
}

/// A stamp at the last position acts exactly like a delay there.
fn fold_last_stamp(stamps: &mut [Rational], delays: &mut [Rational]) {
    if let (Some(s), Some(d)) = (stamps.last_mut(), delays.last_mut()) {
        let moved = std::mem::take(s);
        *d += moved;
    }
}

fn chronological_from(stamps: Vec<Rational>, delays: Vec<Rational>) -> MoveSequence {
    stamps.into_iter().zip(delays).enumerate().map(|(k, (s, d))| MixedMove::new(s, d, k + 1)).collect()
}

fn ensure_same_effect(before: &[Rational], after: &MoveSequence, n: usize) -> Result<()> {
    if net_effect(after, n)? == before {
        Ok(())
    } else {
        Err(Error::contract("rewrite changed the net effect of the run"))
    }
}

/// Merges all moves at each position into one and orders them by position.
///
/// Moves commute, so this keeps the net effect on every trace of length `n`;
/// by the triangle inequality it never increases cost.
pub fn to_chronological(run: &MoveSequence, n: usize) -> Result<MoveSequence> {
    let (mut stamps, mut delays) = per_position(run, n)?;
    fold_last_stamp(&mut stamps, &mut delays);
    Ok(chronological_from(stamps, delays))
}

/// Rewrites each non co-operative move of a chronological run, left to right.
///
/// At a move with `s·d < 0`:
/// * if `|d| ≥ |s|`, the stamp becomes part of the delay, `(0, s + d, k)`, and
///   the next delay absorbs `−s` to cancel the extra shift on later events;
/// * otherwise the delay becomes part of the stamp, `(s + d, 0, k)`, and the
///   next delay absorbs `d` instead.
///
/// The rewrite at `k` can only break co-operation at `k + 1`, which is handled
/// next.
pub fn to_cooperative(run: &MoveSequence) -> Result<MoveSequence> {
    let n = run.len();
    if !is_chronological(run, n) {
        return Err(Error::contract("to_cooperative expects a chronological run"));
    }
    let before = net_effect(run, n)?;
    let (mut stamps, mut delays) = per_position(run, n)?;
    fold_last_stamp(&mut stamps, &mut delays);
    for k in 0..n {
        if !opposite_signs(&stamps[k], &delays[k]) {
            continue;
        }
        let s = std::mem::take(&mut stamps[k]);
        let d = std::mem::take(&mut delays[k]);
        if d.abs() >= s.abs() {
            delays[k] = &d + &s;
            // k < n − 1 here: the last stamp was folded away above
            delays[k + 1] -= s;
        } else {
            stamps[k] = &s + &d;
            delays[k + 1] += d;
        }
    }
    let out = chronological_from(stamps, delays);
    ensure_same_effect(&before, &out, n)?;
    Ok(out)
}

/// Removes every stamp that shares a sign with the next position's delay.
///
/// For a violation at `i` the common part `t` (sign of `s_i`, magnitude
/// `min(|s_i|, |d_{i+1}|)`) is taken off both the stamp at `i` and the delay at
/// `i + 1`, and added to the delay at `i`. Flow `i + 1` sees `−s_i + d_{i+1}`
/// unchanged and flow `i` sees `s_i + d_i` unchanged, while the cost drops by
/// `|t|`. Only the check at `i − 1` can be affected, so one pass from the right
/// suffices.
pub fn to_cross_cooperative(run: &MoveSequence, source: &TimedTrace, target: &TimedTrace) -> Result<MoveSequence> {
    if source.len() != target.len() {
        return Err(Error::LengthMismatch { left: source.len(), right: target.len() });
    }
    let n = source.len();
    if !is_reverse_chronological(run, n) {
        return Err(Error::contract("to_cross_cooperative expects a reverse chronological run"));
    }
    if !is_cooperative(run) {
        return Err(Error::contract("to_cross_cooperative expects a co-operative run"));
    }
    if apply_run(source, run)? != *target {
        return Err(Error::contract("run does not align source to target"));
    }
    let before = net_effect(run, n)?;
    let (mut stamps, mut delays) = per_position(run, n)?;
    fold_last_stamp(&mut stamps, &mut delays);
    for i in (0..n.saturating_sub(1)).rev() {
        let s = &stamps[i];
        let next_delay = &delays[i + 1];
        if s.is_zero() || s.sign() != next_delay.sign() {
            continue;
        }
        let common =
            if s.is_positive() { s.clone().min(next_delay.clone()) } else { s.clone().max(next_delay.clone()) };
        stamps[i] -= &common;
        delays[i + 1] -= &common;
        delays[i] += common;
        let step = reverse_chronological_from(&stamps, &delays);
        ensure_same_effect(&before, &step, n)?;
    }
    Ok(reverse_chronological_from(&stamps, &delays))
}

fn reverse_chronological_from(stamps: &[Rational], delays: &[Rational]) -> MoveSequence {
    (1..=stamps.len()).rev().map(|p| MixedMove::new(stamps[p - 1].clone(), delays[p - 1].clone(), p)).collect()
}
