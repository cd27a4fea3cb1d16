//! The `.eta` table format.
//!
//! ```text
//! # outcomes: a b c
//! 2 2 0
//! 1 0 2
//! ```
//!
//! The outcomes line is optional and must precede the first row. Other lines
//! starting with `#` are comments. Each remaining nonblank line is one test.

use crate::error::{Error, Result};
use crate::etspace::{Limits, OutcomeSet, TestTable};
use crate::scalar::Coord;

const OUTCOMES_TAG: &str = "outcomes:";

pub fn parse_eta<S: Coord>(text: &str, limits: &Limits) -> Result<TestTable<S>> {
    let mut outcomes = None;
    let mut rows: Vec<Vec<S>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(names) = comment.trim().strip_prefix(OUTCOMES_TAG) {
                if !rows.is_empty() || outcomes.is_some() {
                    return Err(Error::Parse { line: n + 1, msg: "outcomes line must come first".into() });
                }
                let names: Vec<String> = names.split_whitespace().map(str::to_string).collect();
                outcomes = Some(OutcomeSet::new(names)?);
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<S>()
                    .map_err(|_| Error::Parse { line: n + 1, msg: format!("not an integer: {tok:?}") })
            })
            .collect::<Result<Vec<S>>>()?;
        rows.push(row);
    }
    TestTable::from_rows(rows, outcomes, limits)
}

/// Renders a table in canonical row order with an outcomes header.
pub fn write_eta<S: Coord>(table: &TestTable<S>) -> String {
    let mut out = format!("# {OUTCOMES_TAG} {}\n", table.outcomes().names().join(" "));
    for t in table.tests() {
        let row: Vec<String> = t.iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
