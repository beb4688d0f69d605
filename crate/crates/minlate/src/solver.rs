//! Solvers for minimizing the number of late jobs.
//!
//! The rule, due to Moore and Hodgson: keep the jobs in earliest-due-date
//! (EDD) order, and as long as some job finishes late, find the *first* late
//! position and reject the longest job at or before it. The rejected jobs are
//! appended after the on-time ones in any order (they are late regardless),
//! so solutions here simply list them separately.
//!
//! Why this minimizes the number of late jobs, in three steps — each one is
//! machine-checkable against exhaustive search via [`crate::oracle`]:
//!
//! 1. A set of jobs can be scheduled entirely on time iff its EDD order has
//!    no late job, so EDD is a perfect feasibility test
//!    ([`crate::oracle::check_prop1`]).
//! 2. If the first late position of the EDD order is `k`, some optimal
//!    schedule rejects a longest job among the first `k`
//!    ([`crate::oracle::check_lemma1`]): swapping any optimal solution's
//!    rejection for that job never makes the schedule worse.
//! 3. Rejecting that job lowers the optimum by exactly one
//!    ([`crate::oracle::check_induction_step`]), so induction on the optimum
//!    value finishes the proof.
//!
//! [`solve`] implements the rule literally, rescanning after every rejection,
//! and records a [`Trace`] of the scans — the same table you would build
//! working the example by hand. [`solve_fast`] reaches the identical
//! [`Solution`] in a single pass with a max-heap, `O(n log n)` overall.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap};

use crate::error::Error;
use crate::model::{Instance, Job, JobId, Sequence, Solution, Time, Weight};

/// What a [`TraceRow`] records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    /// A scan that stopped at the first late position.
    Scan,
    /// The state right after a rejection, completion times updated.
    Reject,
    /// The closing scan in which nothing is late.
    Final,
}

/// One row of the iteration table: completion times of the jobs scanned so
/// far (currently scheduled ones only) and the rejections made by then.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub kind: RowKind,
    /// How many schedule positions the row covers; always equals
    /// `completions.len()`.
    pub scanned_positions: usize,
    pub completions: BTreeMap<JobId, Time>,
    /// Ids rejected so far, in rejection order.
    pub rejected_so_far: Vec<JobId>,
}

/// The full iteration history of one [`solve`] run. Ends with a
/// [`RowKind::Final`] row in which no job is late.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
}

/// Jobs of `instance` in EDD order (due date, then id).
fn edd_jobs(instance: &Instance) -> Vec<Job> {
    let mut jobs: Vec<Job> = instance.jobs().to_vec();
    jobs.sort_unstable_by_key(|j| (j.d, j.id));
    jobs
}

fn build_solution(instance: &Instance, schedule: &[Job], rejected: Vec<JobId>) -> Solution {
    let mut completion_times = BTreeMap::new();
    let mut load: Time = 0;
    for job in schedule {
        load += job.p;
        completion_times.insert(job.id, load);
    }
    let weighted_late: Weight = rejected
        .iter()
        .map(|&id| instance.job(id).expect("rejected id comes from the instance").w)
        .sum();
    Solution {
        on_time: Sequence::new(schedule.iter().map(|j| j.id).collect()),
        num_late: rejected.len(),
        rejected,
        completion_times,
        weighted_late,
    }
}

/// The literal rejection loop; pushes trace rows when given a sink.
fn reject_loop(instance: &Instance, mut trace: Option<&mut Vec<TraceRow>>) -> Solution {
    let mut sigma = edd_jobs(instance);
    let mut rejected: Vec<JobId> = Vec::new();

    loop {
        // Rescan the current schedule from the start.
        let mut load: Time = 0;
        let mut first_late: Option<usize> = None;
        let mut loads: Vec<Time> = Vec::with_capacity(sigma.len());
        for (pos, job) in sigma.iter().enumerate() {
            load += job.p;
            loads.push(load);
            if load > job.d {
                first_late = Some(pos);
                break;
            }
        }

        let Some(k) = first_late else {
            if let Some(rows) = trace.as_deref_mut() {
                rows.push(TraceRow {
                    kind: RowKind::Final,
                    scanned_positions: sigma.len(),
                    completions: sigma.iter().map(|j| j.id).zip(loads).collect(),
                    rejected_so_far: rejected.clone(),
                });
            }
            break;
        };

        if let Some(rows) = trace.as_deref_mut() {
            rows.push(TraceRow {
                kind: RowKind::Scan,
                scanned_positions: k + 1,
                completions: sigma[..=k].iter().map(|j| j.id).zip(loads).collect(),
                rejected_so_far: rejected.clone(),
            });
        }

        // Reject the longest job at or before the late position; ties go to
        // the earliest position.
        let mut m = 0;
        for pos in 1..=k {
            if sigma[pos].p > sigma[m].p {
                m = pos;
            }
        }
        rejected.push(sigma[m].id);
        sigma.remove(m);

        if let Some(rows) = trace.as_deref_mut() {
            // The scanned prefix shrank by one; show its updated times.
            let mut load: Time = 0;
            let completions = sigma[..k]
                .iter()
                .map(|j| {
                    load += j.p;
                    (j.id, load)
                })
                .collect();
            rows.push(TraceRow {
                kind: RowKind::Reject,
                scanned_positions: k,
                completions,
                rejected_so_far: rejected.clone(),
            });
        }
    }

    build_solution(instance, &sigma, rejected)
}

/// Minimizes the number of late jobs and records the iteration history.
///
/// Each round rescans the schedule from the front, so this runs in `O(n)` per
/// rejection — transparent rather than fast. Use [`solve_fast`] for large
/// instances; both return the same [`Solution`].
pub fn solve(instance: &Instance) -> (Solution, Trace) {
    let mut rows = Vec::new();
    let solution = reject_loop(instance, Some(&mut rows));
    (solution, Trace { rows })
}

/// [`solve`] without the bookkeeping; same rejection loop, same result.
pub fn solve_no_trace(instance: &Instance) -> Solution {
    reject_loop(instance, None)
}

/// Single-pass `O(n log n)` variant: sweep the EDD order once, keeping the
/// scheduled prefix in a max-heap; whenever the running load passes a due
/// date, pop the longest prefix job. Returns a [`Solution`] identical to
/// [`solve`]'s, including the order of `rejected`.
pub fn solve_fast(instance: &Instance) -> Solution {
    let jobs = edd_jobs(instance);
    let n = jobs.len();
    // Max-heap on processing time; `Reverse` makes earlier EDD positions win
    // ties, matching the literal loop's choice.
    let mut heap: BinaryHeap<(Time, Reverse<usize>)> = BinaryHeap::with_capacity(n);
    let mut out: Vec<bool> = vec![false; n];
    let mut rejected: Vec<JobId> = Vec::new();
    let mut load: Time = 0;

    for (pos, job) in jobs.iter().enumerate() {
        heap.push((job.p, Reverse(pos)));
        load += job.p;
        if load > job.d {
            let (p, Reverse(longest)) = heap.pop().expect("prefix is non-empty");
            load -= p;
            out[longest] = true;
            rejected.push(jobs[longest].id);
        }
    }

    let mut schedule: Vec<Job> = Vec::with_capacity(n - rejected.len());
    schedule.extend(
        jobs.iter()
            .enumerate()
            .filter(|(pos, _)| !out[*pos])
            .map(|(_, job)| *job),
    );
    build_solution(instance, &schedule, rejected)
}

/// Do larger processing times always come with smaller-or-equal weights?
///
/// Formally: for every pair, `p_i <= p_j` implies `w_i >= w_j`. In
/// particular, jobs with equal processing times must have equal weights.
/// Uniform weights trivially qualify.
pub fn is_oppositely_ordered(instance: &Instance) -> bool {
    let mut pw: Vec<(Time, Weight)> = instance.jobs().iter().map(|j| (j.p, j.w)).collect();
    pw.sort_unstable();
    pw.windows(2).all(|pair| {
        let ((pa, wa), (pb, wb)) = (pair[0], pair[1]);
        if pa == pb {
            wa == wb
        } else {
            wa >= wb
        }
    })
}

/// Minimizes the total *weight* of late jobs, valid only when weights are
/// oppositely ordered to processing times (see [`is_oppositely_ordered`];
/// anything else is refused with [`Error::NotOppositelyOrdered`]).
///
/// Under that precondition the unweighted rule is already optimal: the
/// longest job of the first late prefix is also a cheapest one to reject, so
/// the three-step argument for [`solve`] carries over with weights in place
/// of counts. The returned solution's `weighted_late` is the optimal weight
/// of late jobs.
pub fn solve_weighted_opposite(instance: &Instance) -> Result<(Solution, Trace), Error> {
    if !is_oppositely_ordered(instance) {
        return Err(Error::NotOppositelyOrdered);
    }
    Ok(solve(instance))
}
