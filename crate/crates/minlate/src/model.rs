//! Jobs, instances, sequences and the handful of schedule measurements
//! everything else is built from.
//!
//! All times are exact unsigned 64-bit integers. An [`Instance`] refuses to be
//! built if the sum of its processing times (or weights) would overflow,
//! which makes every downstream prefix sum safe and keeps the on-time test
//! `C <= d` exact even when a completion time lands precisely on a due date.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::Error;

/// 1-based job identifier. 0 is never a valid id.
pub type JobId = u32;
/// Processing times, due dates and completion times.
pub type Time = u64;
/// Job weights (penalty for finishing late).
pub type Weight = u64;

/// A single job: processing time `p`, due date `d` and weight `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub id: JobId,
    pub p: Time,
    pub d: Time,
    pub w: Weight,
}

impl Job {
    /// Unweighted job (weight 1).
    pub fn new(id: JobId, p: Time, d: Time) -> Job {
        Job { id, p, d, w: 1 }
    }

    pub fn weighted(id: JobId, p: Time, d: Time, w: Weight) -> Job {
        Job { id, p, d, w }
    }
}

/// An immutable set of jobs with distinct positive ids, stored in ascending
/// id order regardless of construction order.
///
/// `explicit_weights` records whether weights are part of the instance's
/// identity (any weight differs from 1, or the source data spelled them out);
/// the writer in [`crate::io`] uses it to decide whether to emit a `w` column.
#[derive(Debug, Clone)]
pub struct Instance {
    jobs: Vec<Job>,
    by_id: HashMap<JobId, usize>,
    explicit_weights: bool,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Instance) -> bool {
        self.jobs == other.jobs && self.explicit_weights == other.explicit_weights
    }
}

impl Eq for Instance {}

impl Instance {
    /// Builds an instance, rejecting zero or duplicate ids and totals that
    /// overflow 64 bits. Weights become explicit iff any differs from 1.
    pub fn new(jobs: Vec<Job>) -> Result<Instance, Error> {
        let explicit = jobs.iter().any(|j| j.w != 1);
        Instance::build(jobs, explicit)
    }

    /// Like [`Instance::new`], but the weight column is part of the
    /// instance's identity even if every weight is 1.
    pub fn with_explicit_weights(jobs: Vec<Job>) -> Result<Instance, Error> {
        Instance::build(jobs, true)
    }

    fn build(mut jobs: Vec<Job>, explicit_weights: bool) -> Result<Instance, Error> {
        jobs.sort_unstable_by_key(|j| j.id);
        let mut by_id = HashMap::with_capacity(jobs.len());
        let mut total_p: Time = 0;
        let mut total_w: Weight = 0;
        for (idx, job) in jobs.iter().enumerate() {
            if job.id == 0 {
                return Err(Error::ZeroJobId);
            }
            if by_id.insert(job.id, idx).is_some() {
                return Err(Error::DuplicateJobId(job.id));
            }
            total_p = total_p.checked_add(job.p).ok_or(Error::TotalTimeOverflow)?;
            total_w = total_w.checked_add(job.w).ok_or(Error::TotalWeightOverflow)?;
        }
        Ok(Instance { jobs, by_id, explicit_weights })
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// All jobs, in ascending id order.
    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: JobId) -> Option<&Job> {
        self.by_id.get(&id).map(|&idx| &self.jobs[idx])
    }

    pub fn has_explicit_weights(&self) -> bool {
        self.explicit_weights
    }

    /// Sum of all processing times; fits in `u64` by construction.
    pub fn total_processing_time(&self) -> Time {
        self.jobs.iter().map(|j| j.p).sum()
    }

    /// Sum of all weights; fits in `u64` by construction.
    pub fn total_weight(&self) -> Weight {
        self.jobs.iter().map(|j| j.w).sum()
    }

    /// A copy of the instance with one job removed.
    pub fn without(&self, id: JobId) -> Result<Instance, Error> {
        if self.job(id).is_none() {
            return Err(Error::UnknownJobId(id));
        }
        let jobs = self.jobs.iter().filter(|j| j.id != id).copied().collect();
        Instance::build(jobs, self.explicit_weights)
    }
}

/// An ordering of some subset of an instance's jobs, by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sequence {
    ids: Vec<JobId>,
}

impl Sequence {
    pub fn new(ids: Vec<JobId>) -> Sequence {
        Sequence { ids }
    }

    pub fn ids(&self) -> &[JobId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = JobId> + '_ {
        self.ids.iter().copied()
    }
}

impl From<Vec<JobId>> for Sequence {
    fn from(ids: Vec<JobId>) -> Sequence {
        Sequence { ids }
    }
}

/// Output of a solver: the on-time jobs in schedule order, the rejected jobs
/// in rejection order, and the objective values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub on_time: Sequence,
    pub rejected: Vec<JobId>,
    /// Completion time of every on-time job under `on_time`'s order.
    pub completion_times: BTreeMap<JobId, Time>,
    pub num_late: usize,
    pub weighted_late: Weight,
}

/// All job ids sorted by due date, ties broken by ascending id.
pub fn edd_order(instance: &Instance) -> Sequence {
    let mut ids: Vec<JobId> = instance.jobs().iter().map(|j| j.id).collect();
    ids.sort_unstable_by_key(|&id| {
        let job = instance.job(id).expect("id drawn from the instance");
        (job.d, job.id)
    });
    Sequence::new(ids)
}

/// Checks that every id in `seq` names a job of `instance` and none repeats.
fn check_ids(instance: &Instance, seq: &Sequence) -> Result<(), Error> {
    let mut seen = HashSet::with_capacity(seq.len());
    for id in seq.iter() {
        if instance.job(id).is_none() {
            return Err(Error::UnknownJobId(id));
        }
        if !seen.insert(id) {
            return Err(Error::DuplicateJobId(id));
        }
    }
    Ok(())
}

/// Completion time of each job when `seq` is run back to back from time 0.
pub fn completion_times(
    instance: &Instance,
    seq: &Sequence,
) -> Result<BTreeMap<JobId, Time>, Error> {
    check_ids(instance, seq)?;
    let mut out = BTreeMap::new();
    let mut load: Time = 0;
    for id in seq.iter() {
        load += instance.job(id).expect("checked above").p;
        out.insert(id, load);
    }
    Ok(out)
}

/// 1-based position of the first late job in `seq`, if any.
///
/// A job is late only if it finishes strictly after its due date; `C == d` is
/// on time.
pub fn first_late_index(instance: &Instance, seq: &Sequence) -> Result<Option<usize>, Error> {
    check_ids(instance, seq)?;
    let mut load: Time = 0;
    for (pos, id) in seq.iter().enumerate() {
        let job = instance.job(id).expect("checked above");
        load += job.p;
        if load > job.d {
            return Ok(Some(pos + 1));
        }
    }
    Ok(None)
}

fn check_full_permutation(instance: &Instance, seq: &Sequence) -> Result<(), Error> {
    check_ids(instance, seq)?;
    if seq.len() != instance.len() {
        return Err(Error::NotFullPermutation {
            expected: instance.len(),
            found: seq.len(),
        });
    }
    Ok(())
}

/// Number of late jobs when the whole instance is run in `seq` order.
pub fn count_late(instance: &Instance, seq: &Sequence) -> Result<usize, Error> {
    check_full_permutation(instance, seq)?;
    let mut load: Time = 0;
    let mut late = 0;
    for id in seq.iter() {
        let job = instance.job(id).expect("checked above");
        load += job.p;
        if load > job.d {
            late += 1;
        }
    }
    Ok(late)
}

/// Total weight of the late jobs when the whole instance is run in `seq` order.
pub fn weighted_late_sum(instance: &Instance, seq: &Sequence) -> Result<Weight, Error> {
    check_full_permutation(instance, seq)?;
    let mut load: Time = 0;
    let mut late: Weight = 0;
    for id in seq.iter() {
        let job = instance.job(id).expect("checked above");
        load += job.p;
        if load > job.d {
            late += job.w;
        }
    }
    Ok(late)
}
