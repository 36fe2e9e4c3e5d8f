//! Brute-force verifiers for small instances.
//!
//! [`oracle_dn`] shares no code with the sweep in [`crate::distance`], and
//! [`oracle_align`] does not use the clamping in [`crate::align`]: the point
//! is to check them. `oracle_align` scores candidates with `d_n`, which is
//! itself checked against `oracle_dn`.
//!
//! # The stamp program
//!
//! Any aligning run can be rearranged into one mixed move `(s_i, d_i, i)` per
//! position in increasing order. Such a run takes `γ` to `σ` iff
//! `σ_i = γ_i + s_i + Σ_{j ≤ i} d_j` for all `i`, so once the stamps are fixed
//! the delays are forced:
//!
//! ```text
//! d_i = (E_i − E_{i−1}) − s_i + s_{i−1},   E_i = σ_i − γ_i,   E_0 = s_0 = 0
//! ```
//!
//! A stamp at the last position is equivalent to a delay there, so
//! `s_n = 0` and the free variables are `s_1 … s_{n−1}`. The cost
//! `Σ |s_i| + Σ |d_i|` is convex, piecewise linear and coercive in them, so it
//! is minimized at a vertex of the arrangement of the `2n − 1` hyperplanes
//! `s_i = 0`, `d_i = 0`. [`oracle_dn`] visits every such vertex.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distance::d_n;
use crate::error::{Error, Result};
use crate::model::{uniform_in, SequentialProcessModel};
use crate::moves::{MixedMove, MoveSequence};
use crate::rational::Rational;
use crate::trace::{trace_of_flow, FlowVector, TimedTrace};

/// Largest trace length [`oracle_dn`] accepts.
pub const MAX_ORACLE_DN_LEN: usize = 8;
/// Largest trace length [`oracle_align`] accepts.
pub const MAX_ORACLE_ALIGN_LEN: usize = 6;

/// The forced-delay parametrization of chronological runs from `source` to
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StampProgram {
    /// `E_i = target_i − source_i`.
    errors: Vec<Rational>,
}

impl StampProgram {
    pub fn new(source: &TimedTrace, target: &TimedTrace) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::LengthMismatch { left: source.len(), right: target.len() });
        }
        Ok(Self { errors: source.iter().zip(target).map(|(a, b)| b - a).collect() })
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }

    /// Delays forced by `stamps` (one stamp per position; missing trailing
    /// entries count as zero).
    pub fn delays(&self, stamps: &[Rational]) -> Vec<Rational> {
        let zero = Rational::zero();
        let stamp = |k: usize| stamps.get(k).unwrap_or(&zero);
        (0..self.len())
            .map(|k| {
                let prev_error = if k == 0 { &zero } else { &self.errors[k - 1] };
                let prev_stamp = if k == 0 { &zero } else { stamp(k - 1) };
                &self.errors[k] - prev_error - stamp(k) + prev_stamp
            })
            .collect()
    }

    /// The chronological run with these stamps and their forced delays.
    pub fn run(&self, stamps: &[Rational]) -> MoveSequence {
        let zero = Rational::zero();
        self.delays(stamps)
            .into_iter()
            .enumerate()
            .map(|(k, d)| MixedMove::new(stamps.get(k).unwrap_or(&zero).clone(), d, k + 1))
            .collect()
    }

    pub fn objective(&self, stamps: &[Rational]) -> Rational {
        let stamp_cost: Rational = stamps.iter().map(Rational::abs).sum();
        let delay_cost: Rational = self.delays(stamps).iter().map(Rational::abs).sum();
        stamp_cost + delay_cost
    }

    /// The `2n − 1` breakpoint hyperplanes over `s_1 … s_{n−1}`, as
    /// `(coefficients, rhs)`.
    fn hyperplanes(&self) -> Vec<(Vec<Rational>, Rational)> {
        let n = self.len();
        let vars = n - 1;
        let mut planes = Vec::with_capacity(2 * n - 1);
        for k in 0..vars {
            let mut coeffs = vec![Rational::zero(); vars];
            coeffs[k] = Rational::one();
            planes.push((coeffs, Rational::zero()));
        }
        // d_i = c_i − s_i + s_{i−1} = 0   ⇔   s_i − s_{i−1} = c_i
        for k in 0..n {
            let mut coeffs = vec![Rational::zero(); vars];
            if k < vars {
                coeffs[k] = Rational::one();
            }
            if k > 0 {
                coeffs[k - 1] = -Rational::one();
            }
            let prev = if k == 0 { Rational::zero() } else { self.errors[k - 1].clone() };
            planes.push((coeffs, &self.errors[k] - prev));
        }
        planes
    }

    /// Exact minimum of the objective by vertex enumeration.
    pub fn minimum(&self) -> Rational {
        let n = self.len();
        if n <= 1 {
            return self.objective(&[]);
        }
        let planes = self.hyperplanes();
        let mut best: Option<Rational> = None;
        for subset in (0..planes.len()).combinations(n - 1) {
            let rows: Vec<_> = subset.iter().map(|&r| planes[r].clone()).collect();
            let Some(stamps) = solve(rows) else { continue };
            let value = self.objective(&stamps);
            if best.as_ref().map_or(true, |b| value < *b) {
                best = Some(value);
            }
        }
        best.expect("the s_i = 0 planes always meet in a vertex")
    }
}

/// Gauss-Jordan elimination over the rationals; `None` if singular.
fn solve(mut rows: Vec<(Vec<Rational>, Rational)>) -> Option<Vec<Rational>> {
    let m = rows.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r].0[col].is_zero())?;
        rows.swap(col, pivot);
        let (coeffs, rhs) = rows[col].clone();
        let inv = Rational::one() / &coeffs[col];
        let coeffs: Vec<Rational> = coeffs.iter().map(|c| c * &inv).collect();
        let rhs = rhs * &inv;
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row.0[col].is_zero() {
                continue;
            }
            let factor = row.0[col].clone();
            for (x, c) in row.0.iter_mut().zip(&coeffs) {
                *x -= &factor * c;
            }
            row.1 -= &factor * &rhs;
        }
        rows[col] = (coeffs, rhs);
    }
    Some(rows.into_iter().map(|(_, rhs)| rhs).collect())
}

/// Mixed-moves distance by exhaustive search over the stamp program's vertices.
pub fn oracle_dn(source: &TimedTrace, target: &TimedTrace) -> Result<Rational> {
    let program = StampProgram::new(source, target)?;
    if program.len() > MAX_ORACLE_DN_LEN {
        return Err(Error::Capacity { n: program.len(), max: MAX_ORACLE_DN_LEN });
    }
    Ok(program.minimum())
}

/// Smallest mixed-moves distance from `observed` to a model trace, over a
/// finite candidate set.
///
/// Candidates per position: both interval bounds (when finite), the observed
/// flow clamped into the interval, and `samples_per_position` seeded points
/// of the interval (an unbounded interval is sampled up to
/// `max(eft, observed flow) + 1`). Every combination is scored with
/// [`d_n`].
pub fn oracle_align(
    model: &SequentialProcessModel,
    observed: &TimedTrace,
    samples_per_position: usize,
    seed: u64,
) -> Result<Rational> {
    let n = observed.len();
    if model.len() != n {
        return Err(Error::LengthMismatch { left: model.len(), right: n });
    }
    if n > MAX_ORACLE_ALIGN_LEN {
        return Err(Error::Capacity { n, max: MAX_ORACLE_ALIGN_LEN });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prev = Rational::zero();
    let mut candidates: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (t, iv) in observed.iter().zip(model.intervals()) {
        let flow = t - &prev;
        prev = t.clone();
        let mut options = vec![iv.eft().clone()];
        options.extend(iv.lft().cloned());
        // nearest point of the interval, computed without the library clamp
        let nearest = if flow < *iv.eft() {
            iv.eft().clone()
        } else if iv.lft().is_some_and(|l| flow > *l) {
            iv.lft().cloned().unwrap()
        } else {
            flow.clone()
        };
        options.push(nearest);
        let hi = iv.lft().cloned().unwrap_or_else(|| iv.eft().clone().max(flow.clone()) + Rational::one());
        for _ in 0..samples_per_position {
            options.push(uniform_in(&mut rng, iv.eft(), &hi));
        }
        options.sort();
        options.dedup();
        candidates.push(options);
    }
    let mut best: Option<Rational> = None;
    for choice in candidates.iter().map(|c| c.iter()).multi_cartesian_product() {
        let flows: FlowVector = choice.into_iter().cloned().collect();
        let value = d_n(observed, &trace_of_flow(&flows))?.value;
        if best.as_ref().map_or(true, |b| value < *b) {
            best = Some(value);
        }
    }
    // multi_cartesian_product of zero iterators is empty
    Ok(best.unwrap_or_else(Rational::zero))
}

/// The chronological run built from the given stamps and the delays they force.
pub fn aligning_run_from_stamps(source: &TimedTrace, target: &TimedTrace, stamps: &[Rational]) -> Result<MoveSequence> {
    Ok(StampProgram::new(source, target)?.run(stamps))
}

/// A random run aligning `source` to `target`, deterministic in `seed`.
///
/// Random stamps (including at the last position) fix the delays; moves are
/// then randomly split in two and the whole run shuffled, which keeps its
/// effect since moves commute.
pub fn random_aligning_run(source: &TimedTrace, target: &TimedTrace, seed: u64) -> Result<MoveSequence> {
    let program = StampProgram::new(source, target)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = program.errors.iter().map(Rational::abs).max().unwrap_or_default() + Rational::one();
    let stamps: Vec<Rational> = (0..program.len())
        .map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { uniform_in(&mut rng, &-&spread, &spread) })
        .collect();
    let mut moves = Vec::new();
    for m in program.run(&stamps).into_inner() {
        if rng.gen_bool(0.5) {
            let part_s = uniform_in(&mut rng, &-&spread, &spread);
            let part_d = uniform_in(&mut rng, &-&spread, &spread);
            moves.push(MixedMove::new(&m.stamp - &part_s, &m.delay - &part_d, m.position));
            moves.push(MixedMove::new(part_s, part_d, m.position));
        } else {
            moves.push(m);
        }
    }
    moves.shuffle(&mut rng);
    Ok(moves.into())
}
