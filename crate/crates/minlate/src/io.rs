//! Reading and writing instances, and rendering traces as tables.
//!
//! The file format is plain CSV. The header is exactly `job,p,d` or
//! `job,p,d,w`; every record supplies that many decimal, non-negative
//! integer fields. Blank lines and lines starting with `#` are skipped, and
//! a three-column file gives every job weight 1:
//!
//! ```text
//! # an instance with one unreachable due date
//! job,p,d
//! 1,4,6
//! 2,9,2
//! ```
//!
//! [`write_instance`] emits the canonical form — records in ascending id
//! order, a `w` column only when the weights are explicit — so
//! write-parse-write round-trips are byte-identical.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::error::Error;
use crate::model::{edd_order, Instance, Job, JobId, Time, Weight};
use crate::solver::Trace;

/// Errors from [`parse_instance`], with 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line; expected `job,p,d` or `job,p,d,w`")]
    MissingHeader,
    #[error("line {line}: bad header `{found}`; expected `job,p,d` or `job,p,d,w`")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: invalid {field} value `{value}`")]
    InvalidField { line: usize, field: &'static str, value: String },
    #[error("line {line}: job ids must be >= 1")]
    ZeroJobId { line: usize },
    #[error("line {line}: duplicate job id {id}")]
    DuplicateJobId { line: usize, id: JobId },
    #[error(transparent)]
    Instance(#[from] Error),
}

fn parse_field<T: std::str::FromStr>(
    line: usize,
    field: &'static str,
    value: &str,
) -> Result<T, ParseError> {
    value.parse().map_err(|_| ParseError::InvalidField {
        line,
        field,
        value: value.to_string(),
    })
}

/// Parses the CSV instance format described in the module docs.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header_fields: Option<usize> = None;
    let mut jobs: Vec<Job> = Vec::new();
    let mut seen: HashSet<JobId> = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }

        let Some(expected) = header_fields else {
            header_fields = Some(match line {
                "job,p,d" => 3,
                "job,p,d,w" => 4,
                _ => {
                    return Err(ParseError::BadHeader {
                        line: line_no,
                        found: line.to_string(),
                    })
                }
            });
            continue;
        };

        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != expected {
            return Err(ParseError::FieldCount {
                line: line_no,
                expected,
                found: fields.len(),
            });
        }
        let id: JobId = parse_field(line_no, "job", fields[0])?;
        if id == 0 {
            return Err(ParseError::ZeroJobId { line: line_no });
        }
        if !seen.insert(id) {
            return Err(ParseError::DuplicateJobId { line: line_no, id });
        }
        let p: Time = parse_field(line_no, "p", fields[1])?;
        let d: Time = parse_field(line_no, "d", fields[2])?;
        let w: Weight = if expected == 4 {
            parse_field(line_no, "w", fields[3])?
        } else {
            1
        };
        jobs.push(Job::weighted(id, p, d, w));
    }

    match header_fields {
        None => Err(ParseError::MissingHeader),
        Some(4) => Ok(Instance::with_explicit_weights(jobs)?),
        Some(_) => Ok(Instance::new(jobs)?),
    }
}

/// Canonical CSV form: ascending ids, newline-terminated, `w` column iff the
/// instance's weights are explicit. `parse_instance` inverts it exactly.
pub fn write_instance(instance: &Instance) -> String {
    let weighted = instance.has_explicit_weights();
    let mut out = String::from(if weighted { "job,p,d,w\n" } else { "job,p,d\n" });
    for job in instance.jobs() {
        if weighted {
            writeln!(out, "{},{},{},{}", job.id, job.p, job.d, job.w).expect("string write");
        } else {
            writeln!(out, "{},{},{}", job.id, job.p, job.d).expect("string write");
        }
    }
    out
}

/// Renders a [`Trace`] as the classic worked-example table: one column per
/// job in EDD order, one row per solver step. A cell holds the job's
/// completion time if the step computed it, `*` if the job was rejected by
/// then, and stays blank if the scan never got that far. The last column
/// accumulates the rejected ids.
///
/// Fails with [`Error::TraceMismatch`] if the trace mentions jobs the
/// instance lacks or a row's position count disagrees with its completions.
pub fn render_trace(instance: &Instance, trace: &Trace) -> Result<String, Error> {
    for row in &trace.rows {
        for &id in row.completions.keys().chain(row.rejected_so_far.iter()) {
            if instance.job(id).is_none() {
                return Err(Error::TraceMismatch(format!(
                    "job {id} does not exist in the instance"
                )));
            }
        }
        if row.scanned_positions != row.completions.len() {
            return Err(Error::TraceMismatch(format!(
                "row covers {} positions but records {} completion times",
                row.scanned_positions,
                row.completions.len()
            )));
        }
        if row.completions.keys().any(|id| row.rejected_so_far.contains(id)) {
            return Err(Error::TraceMismatch(
                "a rejected job still has a completion time".to_string(),
            ));
        }
    }

    let order = edd_order(instance);
    let columns: Vec<&Job> = order
        .iter()
        .map(|id| instance.job(id).expect("edd covers the instance"))
        .collect();

    // Header rows (ids, due dates, processing times), then one row per step.
    let mut grid: Vec<(&str, Vec<String>, String)> = Vec::with_capacity(3 + trace.rows.len());
    grid.push((
        "EDD sequence:",
        columns.iter().map(|j| j.id.to_string()).collect(),
        "Rejected Jobs".to_string(),
    ));
    grid.push((
        "Due date:",
        columns.iter().map(|j| j.d.to_string()).collect(),
        String::new(),
    ));
    grid.push((
        "Processing time:",
        columns.iter().map(|j| j.p.to_string()).collect(),
        String::new(),
    ));
    for row in &trace.rows {
        let cells = columns
            .iter()
            .map(|job| {
                if row.rejected_so_far.contains(&job.id) {
                    "*".to_string()
                } else if let Some(c) = row.completions.get(&job.id) {
                    c.to_string()
                } else {
                    String::new()
                }
            })
            .collect();
        let rejected = row
            .rejected_so_far
            .iter()
            .map(|id| id.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        grid.push(("Completion time:", cells, rejected));
    }

    let label_width = grid.iter().map(|(label, _, _)| label.len()).max().unwrap_or(0);
    let col_widths: Vec<usize> = (0..columns.len())
        .map(|c| grid.iter().map(|(_, cells, _)| cells[c].len()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for (label, cells, tail) in &grid {
        let body = cells
            .iter()
            .zip(&col_widths)
            .map(|(cell, width)| format!("{cell:>width$}"))
            .collect::<Vec<_>>()
            .join(" ");
        let line = format!("{label:<label_width$} | {body} | {tail}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}
