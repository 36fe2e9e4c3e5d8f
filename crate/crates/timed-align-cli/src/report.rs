//! Command results and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use timed_align::{MoveSequence, Rational, TimedTrace, Variant};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Check(CaseReport),
    Align(CaseReport),
    Distance(DistanceRecord),
    Bench(BenchReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    /// Sorted by case id.
    pub cases: Vec<CaseRecord>,
    pub aggregate: Aggregate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub events: usize,
    pub untimed_match: bool,
    /// Absent when the activities do not match the model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aligned: Option<TimedTrace>,
    /// The non-zero moves of the alignment witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MoveSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub cases: usize,
    pub untimed_matches: usize,
    pub members: usize,
    /// Over the cases with a distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_distance: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_distance: Option<Rational>,
}

impl CaseReport {
    pub fn new(model: Option<String>, mut cases: Vec<CaseRecord>) -> Self {
        cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        let distances: Vec<&Rational> = cases.iter().filter_map(|c| c.distance.as_ref()).collect();
        let aggregate = Aggregate {
            cases: cases.len(),
            untimed_matches: cases.iter().filter(|c| c.untimed_match).count(),
            members: cases.iter().filter(|c| c.membership == Some(true)).count(),
            mean_distance: (!distances.is_empty()).then(|| {
                let count = Rational::from_integer(distances.len() as i64);
                distances.iter().copied().cloned().sum::<Rational>() / count
            }),
            max_distance: distances.iter().copied().max().cloned(),
        };
        Self { model, cases, aggregate }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub variant: Variant,
    pub a: TimedTrace,
    pub b: TimedTrace,
    pub value: Rational,
    /// Only for the mixed-moves distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MoveSequence>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub repeats: usize,
    pub rows: Vec<BenchRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub length: usize,
    /// Fastest of the repeats, in seconds.
    pub seconds: f64,
    pub value: Rational,
    /// `seconds` divided by the previous row's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

/// `p/q`, followed by the decimal form in parentheses when it terminates.
/// Integers are printed plainly.
pub fn exact(r: &Rational) -> String {
    let fraction = r.to_fraction_string();
    match r.to_decimal_string() {
        Some(decimal) if decimal != fraction => format!("{fraction} ({decimal})"),
        _ => fraction,
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(text(report)),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
            out.push('\n');
            Ok(out)
        }
        Format::Csv => csv_table(report),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Check(r) | Report::Align(r) => {
            for c in &r.cases {
                let _ = write!(
                    out,
                    "case {}: {} events, activities {}",
                    c.case_id,
                    c.events,
                    if c.untimed_match { "match" } else { "differ" }
                );
                if let Some(m) = c.membership {
                    let _ = write!(out, ", member {}", yes_no(m));
                }
                if let Some(d) = &c.distance {
                    let _ = write!(out, ", distance {}", exact(d));
                }
                out.push('\n');
                if let Some(a) = &c.aligned {
                    let _ = writeln!(out, "  aligned: {a}");
                }
                if let Some(w) = &c.witness {
                    let _ = writeln!(
                        out,
                        "  witness: {}",
                        if w.is_empty() { "none needed".to_string() } else { w.to_string() }
                    );
                }
                if let Some(e) = &c.error {
                    let _ = writeln!(out, "  error: {e}");
                }
                for w in &c.warnings {
                    let _ = writeln!(out, "  warning: {w}");
                }
            }
            let a = &r.aggregate;
            let _ =
                write!(out, "{} cases, {} with matching activities, {} members", a.cases, a.untimed_matches, a.members);
            if let (Some(mean), Some(max)) = (&a.mean_distance, &a.max_distance) {
                let _ = write!(out, ", mean distance {}, max distance {}", exact(mean), exact(max));
            }
            out.push('\n');
        }
        Report::Distance(d) => {
            let _ = writeln!(out, "{}", exact(&d.value));
            if let Some(w) = &d.witness {
                let _ =
                    writeln!(out, "witness: {}", if w.is_empty() { "none needed".to_string() } else { w.to_string() });
            }
        }
        Report::Bench(b) => {
            let _ = writeln!(out, "{:>10}  {:>12}  {:>7}", "length", "seconds", "ratio");
            for row in &b.rows {
                let ratio = row.ratio.map_or_else(|| "-".to_string(), |r| format!("{r:.2}"));
                let _ = writeln!(out, "{:>10}  {:>12.6}  {:>7}", row.length, row.seconds, ratio);
            }
        }
    }
    out
}

fn csv_table(report: &Report) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let opt = |r: Option<&Rational>| r.map(Rational::to_fraction_string).unwrap_or_default();
    let dec = |r: Option<&Rational>| r.and_then(Rational::to_decimal_string).unwrap_or_default();
    let result = match report {
        Report::Check(r) | Report::Align(r) => {
            let header = [
                "case_id",
                "events",
                "untimed_match",
                "membership",
                "distance",
                "distance_decimal",
                "aligned",
                "witness",
                "error",
                "warnings",
            ];
            w.write_record(header).and_then(|_| {
                r.cases.iter().try_for_each(|c| {
                    w.write_record([
                        c.case_id.clone(),
                        c.events.to_string(),
                        c.untimed_match.to_string(),
                        c.membership.map(|m| m.to_string()).unwrap_or_default(),
                        opt(c.distance.as_ref()),
                        dec(c.distance.as_ref()),
                        c.aligned.as_ref().map(ToString::to_string).unwrap_or_default(),
                        c.witness.as_ref().map(ToString::to_string).unwrap_or_default(),
                        c.error.clone().unwrap_or_default(),
                        c.warnings.join("; "),
                    ])
                })
            })
        }
        Report::Distance(d) => {
            w.write_record(["variant", "a", "b", "value", "value_decimal", "witness"]).and_then(|_| {
                w.write_record([
                    serde_json::to_value(d.variant)
                        .expect("variant serializes")
                        .as_str()
                        .unwrap_or_default()
                        .to_string(),
                    d.a.to_string(),
                    d.b.to_string(),
                    d.value.to_fraction_string(),
                    dec(Some(&d.value)),
                    d.witness.as_ref().map(ToString::to_string).unwrap_or_default(),
                ])
            })
        }
        Report::Bench(b) => w.write_record(["length", "seconds", "value", "ratio"]).and_then(|_| {
            b.rows.iter().try_for_each(|row| {
                w.write_record([
                    row.length.to_string(),
                    row.seconds.to_string(),
                    row.value.to_fraction_string(),
                    row.ratio.map(|r| r.to_string()).unwrap_or_default(),
                ])
            })
        }),
    };
    result.map_err(|e| CliError::Data(format!("writing CSV: {e}")))?;
    let bytes = w.into_inner().map_err(|e| CliError::Data(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn record(id: &str, distance: Option<&str>) -> CaseRecord {
        CaseRecord {
            case_id: id.into(),
            events: 3,
            untimed_match: distance.is_some(),
            membership: distance.map(|d| q(d).is_zero()),
            distance: distance.map(q),
            aligned: None,
            witness: None,
            error: None,
            warnings: Vec::new(),
        }
    }

    #[test]
    fn exact_rendering() {
        assert_eq!(exact(&q("2")), "2");
        assert_eq!(exact(&q("1.5")), "3/2 (1.5)");
        assert_eq!(exact(&q("1/3")), "1/3");
    }

    #[test]
    fn aggregate_is_exact_and_sorted() {
        let r = CaseReport::new(
            None,
            vec![record("b", Some("1")), record("a", Some("0")), record("c", None), record("d", Some("1"))],
        );
        let ids: Vec<_> = r.cases.iter().map(|c| c.case_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c", "d"]);
        assert_eq!(r.aggregate.mean_distance, Some(q("2/3")));
        assert_eq!(r.aggregate.max_distance, Some(q("1")));
        assert_eq!((r.aggregate.cases, r.aggregate.untimed_matches, r.aggregate.members), (4, 3, 1));
    }

    #[test]
    fn json_round_trips() {
        let report =
            Report::Align(CaseReport::new(Some("m".into()), vec![record("x", Some("7/3")), record("y", None)]));
        let text = render(&report, Format::Json).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), report);
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let report = Report::Check(CaseReport::new(None, vec![record("x", Some("0.25")), record("y", None)]));
        let text = render(&report, Format::Csv).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("x,3,true,false,1/4,0.25,"));
        assert!(lines[2].starts_with("y,3,false,,,,"));
    }
}
