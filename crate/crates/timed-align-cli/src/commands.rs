use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timed_align::{
    align, distance, first_label_divergence, membership, parse_model, LabeledTrace, MoveSequence, Rational,
    SequentialProcessModel, TimedTrace, Variant,
};

use crate::error::CliError;
use crate::log::{timestamp_warnings, EventLog};
use crate::report::{BenchReport, BenchRow, CaseRecord, CaseReport, DistanceRecord, Report};

pub fn read_model(path: &Path) -> Result<SequentialProcessModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_model(&text).map_err(|e| CliError::data(path.display().to_string(), e))
}

fn nonzero(run: &MoveSequence) -> MoveSequence {
    run.nonzero().cloned().collect()
}

fn case_record(model: &SequentialProcessModel, case: &LabeledTrace, with_alignment: bool) -> CaseRecord {
    let observed = case.timed_trace();
    let mut record = CaseRecord {
        case_id: case.case_id.clone(),
        events: case.len(),
        untimed_match: false,
        membership: None,
        distance: None,
        aligned: None,
        witness: None,
        error: None,
        warnings: timestamp_warnings(&observed),
    };
    if let Some((position, expected, found)) = first_label_divergence(model, case) {
        record.error = Some(format!("activity at position {position}: expected {expected}, found {found}"));
        return record;
    }
    let aligned = align(model, case).expect("activities were checked against the model");
    record.untimed_match = true;
    record.membership = Some(membership(model, &observed).expect("lengths were checked"));
    record.distance = Some(aligned.distance);
    if with_alignment {
        record.aligned = Some(aligned.aligned);
        record.witness = Some(nonzero(&aligned.witness));
    }
    record
}

/// Activity and timing verdicts for every case, with its alignment distance
/// when the activities match.
pub fn check(model_path: &Path, log_path: &Path) -> Result<Report, CliError> {
    let model = read_model(model_path)?;
    let log = EventLog::read(log_path)?;
    let cases = log.cases().iter().map(|c| case_record(&model, c, false)).collect();
    Ok(Report::Check(CaseReport::new(model.name.clone(), cases)))
}

/// Aligns every case. Cases whose activities differ carry an error instead;
/// see [`nothing_aligned`].
pub fn align_log(model_path: &Path, log_path: &Path) -> Result<Report, CliError> {
    let model = read_model(model_path)?;
    let log = EventLog::read(log_path)?;
    let cases = log.cases().iter().map(|c| case_record(&model, c, true)).collect();
    Ok(Report::Align(CaseReport::new(model.name.clone(), cases)))
}

/// True when the report comes from `align` and no case could be aligned.
pub fn nothing_aligned(report: &Report) -> bool {
    matches!(report, Report::Align(r) if r.aggregate.untimed_matches == 0)
}

pub fn parse_trace(text: &str, flag: &str) -> Result<TimedTrace, CliError> {
    text.parse().map_err(|e| CliError::data(flag, e))
}

pub fn distance_between(variant: Variant, a: TimedTrace, b: TimedTrace) -> Result<Report, CliError> {
    let report = distance(variant, &a, &b).map_err(|e| CliError::Data(e.to_string()))?;
    let witness = (variant == Variant::Mixed).then(|| nonzero(&report.witness));
    Ok(Report::Distance(DistanceRecord { variant, a, b, value: report.value, witness }))
}

/// Distance between two cases of a log, which must share their activities.
pub fn distance_in_log(variant: Variant, log_path: &Path, first: &str, second: &str) -> Result<Report, CliError> {
    let log = EventLog::read(log_path)?;
    let origin = log_path.display().to_string();
    let find = |id: &str| log.case(id).ok_or_else(|| CliError::data(&origin, format!("no case `{id}`")));
    let (a, b) = (find(first)?, find(second)?);
    if a.labels().ne(b.labels()) {
        return Err(CliError::data(&origin, format!("cases `{first}` and `{second}` have different activities")));
    }
    distance_between(variant, a.timed_trace(), b.timed_trace())
}

/// The pair of traces timed for `length` events under `seed`.
pub fn bench_pair(length: usize, seed: u64) -> (TimedTrace, TimedTrace) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (length as u64).rotate_left(32));
    let mut trace = || -> TimedTrace {
        (0..length)
            .map(|_| Rational::fraction(rng.gen_range(0..1_000_000), 100).expect("nonzero denominator"))
            .collect()
    };
    (trace(), trace())
}

/// Times the mixed-moves distance on seeded random pairs, keeping the fastest
/// of `repeats` runs per length.
pub fn bench(lengths: &[usize], seed: u64, repeats: usize) -> Result<Report, CliError> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(CliError::Usage("--lengths needs positive integers".into()));
    }
    if repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(lengths.len());
    for &length in lengths {
        let (a, b) = bench_pair(length, seed);
        let mut best = f64::INFINITY;
        let mut value = Rational::zero();
        for _ in 0..repeats {
            let start = Instant::now();
            let report = distance(Variant::Mixed, &a, &b).expect("equal lengths");
            best = best.min(start.elapsed().as_secs_f64());
            value = report.value;
        }
        let ratio = rows.last().map(|prev| best / prev.seconds);
        rows.push(BenchRow { length, seconds: best, value, ratio });
    }
    Ok(Report::Bench(BenchReport { seed, repeats, rows }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bench_inputs_are_deterministic() {
        assert_eq!(bench_pair(50, 9), bench_pair(50, 9));
        assert_ne!(bench_pair(50, 9), bench_pair(50, 10));
    }

    #[test]
    fn bench_of_one_event() {
        let Report::Bench(r) = bench(&[1], 4, 2).unwrap() else { panic!("not a bench report") };
        let (a, b) = bench_pair(1, 4);
        assert_eq!(r.rows[0].value, (&a.timestamps()[0] - &b.timestamps()[0]).abs());
        assert!(r.rows[0].ratio.is_none());
    }

    #[test]
    fn bench_rejects_bad_flags() {
        assert_eq!(bench(&[10, 0], 1, 1).unwrap_err().exit_code(), 1);
        assert_eq!(bench(&[10], 1, 0).unwrap_err().exit_code(), 1);
    }
}
