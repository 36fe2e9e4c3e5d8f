//! CSV event logs: a `case_id,activity,timestamp` header, one event per row.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use timed_align::{Event, LabeledTrace, Rational, TimedTrace};

use crate::error::CliError;

const HEADER: [&str; 3] = ["case_id", "activity", "timestamp"];

/// Cases in order of first appearance; events within a case in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventLog {
    cases: Vec<LabeledTrace>,
}

impl EventLog {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
        Self::from_reader(file, &path.display().to_string())
    }

    /// Parses CSV from `reader`; `origin` names the source in error messages.
    pub fn from_reader<R: Read>(reader: R, origin: &str) -> Result<Self, CliError> {
        let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let at_line = |line: Option<u64>| match line {
            Some(l) => format!("{origin}: line {l}"),
            None => origin.to_string(),
        };
        let header = csv.headers().map_err(|e| CliError::data(at_line(e.position().map(|p| p.line())), &e))?;
        if header.iter().ne(HEADER) {
            return Err(CliError::data(
                at_line(Some(1)),
                format!(
                    "expected header `{}`, found `{}`",
                    HEADER.join(","),
                    header.iter().collect::<Vec<_>>().join(",")
                ),
            ));
        }
        let mut cases: Vec<LabeledTrace> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for row in csv.records() {
            let row = row.map_err(|e| CliError::data(at_line(e.position().map(|p| p.line())), &e))?;
            let line = row.position().map(|p| p.line());
            let (case_id, activity, timestamp) = (&row[0], &row[1], &row[2]);
            if case_id.is_empty() {
                return Err(CliError::data(at_line(line), "empty case_id"));
            }
            let timestamp: Rational = timestamp
                .parse()
                .map_err(|e| CliError::data(at_line(line), format!("timestamp `{timestamp}`: {e}")))?;
            let k = *index.entry(case_id.to_string()).or_insert_with(|| {
                cases.push(LabeledTrace::new(case_id, Vec::new()));
                cases.len() - 1
            });
            cases[k].events.push(Event { activity: activity.to_string(), timestamp });
        }
        if cases.is_empty() {
            return Err(CliError::data(origin, "the log contains no events"));
        }
        Ok(Self { cases })
    }

    pub fn cases(&self) -> &[LabeledTrace] {
        &self.cases
    }

    pub fn case(&self, id: &str) -> Option<&LabeledTrace> {
        self.cases.iter().find(|c| c.case_id == id)
    }
}

/// Warnings for timestamps that are negative or go backwards. The algorithms
/// accept such traces, but they usually point at a broken log.
pub fn timestamp_warnings(trace: &TimedTrace) -> Vec<String> {
    let mut warnings = Vec::new();
    if let Some(k) = trace.iter().position(Rational::is_negative) {
        warnings.push(format!("negative timestamp at position {}", k + 1));
    }
    for (k, pair) in trace.timestamps().windows(2).enumerate() {
        if pair[1] < pair[0] {
            warnings.push(format!("timestamp decreases at position {}", k + 2));
        }
    }
    warnings
}
