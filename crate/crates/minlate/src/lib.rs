//! Minimize the number of late jobs on a single machine.
//!
//! Jobs with processing times and due dates are run back to back on one
//! machine; a job is late if it finishes strictly after its due date. This
//! crate schedules the jobs so that as few as possible are late, using the
//! classic rule of Moore and Hodgson: walk the jobs in earliest-due-date
//! order and, whenever a job finishes late, throw the longest job seen so far
//! out of the schedule.
//!
//! What's here:
//!
//! * [`model`] — jobs, instances, sequences and schedule measurements.
//! * [`solver`] — the iterative rejection solver (with a step-by-step
//!   [`solver::Trace`]), a heap-based `O(n log n)` variant, and the weighted
//!   extension for oppositely ordered weights.
//! * [`oracle`] — an exhaustive-search reference solver for small instances,
//!   plus machine checks for the three steps of the solver's correctness
//!   argument.
//! * [`io`] — a small CSV instance format and a renderer that prints a trace
//!   as the familiar worked-example table.
//! * [`generator`] — deterministic seeded random instances and a few
//!   adversarial families, for test suites that must reproduce bit for bit.

#![forbid(unsafe_code)]

pub mod error;
pub mod generator;
pub mod io;
pub mod model;
pub mod oracle;
pub mod solver;

pub use error::Error;
pub use model::{Instance, Job, JobId, Sequence, Solution, Time, Weight};
pub use solver::{solve, solve_fast, Trace};
