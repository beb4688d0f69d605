//! Exhaustive reference solver and machine checks for the three steps of the
//! rejection solver's correctness argument (laid out in [`crate::solver`]).
//!
//! [`brute_force`] tries every subset of jobs, so it is only usable for small
//! instances, but it is obviously correct: a subset can be scheduled entirely
//! on time iff running it in earliest-due-date order leaves nothing late, so
//! one pass per subset settles it. The test suites treat its answer as ground
//! truth for the real solvers.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::model::{edd_order, first_late_index, Instance, JobId, Time};

/// Largest instance [`brute_force`] accepts: 2^20 subsets is still fast,
/// another ten jobs would not be.
pub const SEARCH_CAP: usize = 20;

/// Result of an exhaustive search over on-time subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Minimal number (or total weight) of late jobs.
    pub min_objective: u64,
    /// One optimal on-time set: the first one found in the fixed subset
    /// enumeration order, so reruns return the same witness.
    pub witness_on_time: BTreeSet<JobId>,
    /// Every optimal on-time set, if the search was asked to collect them.
    pub all_optimal_on_time_sets: Option<Vec<BTreeSet<JobId>>>,
}

/// Can `subset` be scheduled with every job on time?
///
/// Ordering the subset by due date is enough to decide this: if that order
/// has a late job, every order does.
pub fn feasible_on_time(instance: &Instance, subset: &[JobId]) -> Result<bool, Error> {
    let mut jobs = Vec::with_capacity(subset.len());
    let mut seen = HashSet::with_capacity(subset.len());
    for &id in subset {
        let job = instance.job(id).ok_or(Error::UnknownJobId(id))?;
        if !seen.insert(id) {
            return Err(Error::DuplicateJobId(id));
        }
        jobs.push(job);
    }
    jobs.sort_unstable_by_key(|j| (j.d, j.id));
    let mut load: Time = 0;
    for job in &jobs {
        load += job.p;
        if load > job.d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive minimum of the (weighted) number of late jobs, capped at
/// [`SEARCH_CAP`] jobs. Does not collect the full optimal-set list.
pub fn brute_force(instance: &Instance, weighted: bool) -> Result<OracleResult, Error> {
    brute_force_with(instance, weighted, SEARCH_CAP, false)
}

/// [`brute_force`] with an explicit cap and, optionally, the list of every
/// optimal on-time set (needed by [`check_lemma1`]).
pub fn brute_force_with(
    instance: &Instance,
    weighted: bool,
    cap: usize,
    collect_all: bool,
) -> Result<OracleResult, Error> {
    let n = instance.len();
    if n > cap || n >= 64 {
        return Err(Error::SearchCapExceeded(n, cap.min(63)));
    }

    // Work in EDD order so each subset's feasibility is one prefix-sum pass.
    let edd = edd_order(instance);
    let jobs: Vec<_> = edd
        .iter()
        .map(|id| *instance.job(id).expect("edd covers the instance"))
        .collect();
    let total: u64 = if weighted {
        instance.total_weight()
    } else {
        n as u64
    };

    let mut best: Option<u64> = None;
    let mut witness: u64 = 0;
    let mut optimal_masks: Vec<u64> = Vec::new();
    for mask in 0..(1u64 << n) {
        let mut load: Time = 0;
        let mut kept: u64 = 0;
        let mut feasible = true;
        for (i, job) in jobs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                load += job.p;
                if load > job.d {
                    feasible = false;
                    break;
                }
                kept += if weighted { job.w } else { 1 };
            }
        }
        if !feasible {
            continue;
        }
        let objective = total - kept;
        if best.map_or(true, |b| objective < b) {
            best = Some(objective);
            witness = mask;
            if collect_all {
                optimal_masks.clear();
                optimal_masks.push(mask);
            }
        } else if collect_all && best == Some(objective) {
            optimal_masks.push(mask);
        }
    }

    let to_set = |mask: u64| -> BTreeSet<JobId> {
        jobs.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, job)| job.id)
            .collect()
    };
    Ok(OracleResult {
        // The empty subset is always feasible, so `best` is set.
        min_objective: best.expect("empty subset is feasible"),
        witness_on_time: to_set(witness),
        all_optimal_on_time_sets: collect_all.then(|| optimal_masks.iter().map(|&m| to_set(m)).collect()),
    })
}

/// The job the rejection rule removes first: among the jobs up to and
/// including the first late position of the EDD order, the one with maximal
/// processing time, earliest position on ties. Errors if nothing is late.
fn rejection_candidate(instance: &Instance) -> Result<JobId, Error> {
    let edd = edd_order(instance);
    let k = first_late_index(instance, &edd)?.ok_or(Error::NoLateJob)?;
    let prefix = &edd.ids()[..k];
    let mut candidate = prefix[0];
    let mut longest = instance.job(candidate).expect("edd id").p;
    for &id in &prefix[1..] {
        let p = instance.job(id).expect("edd id").p;
        if p > longest {
            candidate = id;
            longest = p;
        }
    }
    Ok(candidate)
}

/// Step 1 of the correctness argument: the EDD order has a late job iff the
/// true optimum is at least one (i.e. EDD is a perfect feasibility test).
pub fn check_prop1(instance: &Instance) -> Result<bool, Error> {
    let edd = edd_order(instance);
    let edd_has_late = first_late_index(instance, &edd)?.is_some();
    let opt = brute_force(instance, false)?.min_objective;
    Ok(edd_has_late == (opt >= 1))
}

/// Step 2: some optimal on-time set excludes the job the rejection rule
/// picks. Requires a late job in the EDD order.
pub fn check_lemma1(instance: &Instance) -> Result<bool, Error> {
    let rejected = rejection_candidate(instance)?;
    let result = brute_force_with(instance, false, SEARCH_CAP, true)?;
    let sets = result
        .all_optimal_on_time_sets
        .expect("collect_all was requested");
    Ok(sets.iter().any(|set| !set.contains(&rejected)))
}

/// Step 3: removing the rejection rule's pick lowers the optimum by exactly
/// one. Requires a late job in the EDD order.
pub fn check_induction_step(instance: &Instance) -> Result<bool, Error> {
    let rejected = rejection_candidate(instance)?;
    let whole = brute_force(instance, false)?.min_objective;
    let smaller = brute_force(&instance.without(rejected)?, false)?.min_objective;
    Ok(whole >= 1 && smaller == whole - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Job;
    use crate::test_data::{moore, moore_weighted};

    fn all_ties() -> Instance {
        // Six identical jobs, room for exactly two of them by the deadline.
        let jobs = (1..=6).map(|id| Job::new(id, 2, 5)).collect();
        Instance::new(jobs).unwrap()
    }

    #[test]
    fn feasibility_of_subsets() {
        let inst = moore();
        assert!(feasible_on_time(&inst, &[]).unwrap());
        assert!(feasible_on_time(&inst, &[1, 2]).unwrap());
        assert!(!feasible_on_time(&inst, &[1, 2, 3]).unwrap());
        assert!(feasible_on_time(&inst, &[1, 2, 4, 5, 7, 8]).unwrap());
        // Order of the argument is irrelevant.
        assert!(feasible_on_time(&inst, &[8, 7, 5, 4, 2, 1]).unwrap());
        assert_eq!(
            feasible_on_time(&inst, &[1, 1]).unwrap_err(),
            Error::DuplicateJobId(1)
        );
        assert_eq!(
            feasible_on_time(&inst, &[9]).unwrap_err(),
            Error::UnknownJobId(9)
        );
    }

    #[test]
    fn moore_optimum_is_two_late_jobs() {
        let result = brute_force(&moore(), false).unwrap();
        assert_eq!(result.min_objective, 2);
        assert_eq!(result.witness_on_time.len(), 6);
        assert!(feasible_on_time(&moore(), &result.witness_on_time.iter().copied().collect::<Vec<_>>()).unwrap());
        // The rejection solver's answer {1,2,4,5,7,8} is one of the optima,
        // and neither rejected job fits back in.
        assert!(feasible_on_time(&moore(), &[1, 2, 4, 5, 7, 8]).unwrap());
        assert!(!feasible_on_time(&moore(), &[1, 2, 3, 4, 5, 7, 8]).unwrap());
        assert!(!feasible_on_time(&moore(), &[1, 2, 4, 5, 6, 7, 8]).unwrap());
    }

    #[test]
    fn moore_weighted_optimum_is_eight() {
        let result = brute_force(&moore_weighted(), true).unwrap();
        assert_eq!(result.min_objective, 8);
        // Weight 8 is exactly the cost of rejecting jobs 3 and 6 (5 + 3).
        assert!(!result.witness_on_time.contains(&3));
        assert!(!result.witness_on_time.contains(&6));
    }

    #[test]
    fn all_ties_optimum_and_witness_are_deterministic() {
        let result = brute_force(&all_ties(), false).unwrap();
        assert_eq!(result.min_objective, 4);
        // First optimal subset in enumeration order: the two earliest ids.
        assert_eq!(result.witness_on_time, [1, 2].into_iter().collect());
    }

    #[test]
    fn empty_instance_is_trivially_optimal() {
        let empty = Instance::new(vec![]).unwrap();
        let result = brute_force(&empty, false).unwrap();
        assert_eq!(result.min_objective, 0);
        assert!(result.witness_on_time.is_empty());
    }

    #[test]
    fn search_cap_is_enforced() {
        let jobs = (1..=21).map(|id| Job::new(id, 1, 0)).collect();
        let big = Instance::new(jobs).unwrap();
        assert_eq!(
            brute_force(&big, false).unwrap_err(),
            Error::SearchCapExceeded(21, 20)
        );
    }

    #[test]
    fn optimal_set_collection_contains_the_witness() {
        let result = brute_force_with(&all_ties(), false, SEARCH_CAP, true).unwrap();
        let sets = result.all_optimal_on_time_sets.as_ref().unwrap();
        // Any two of six identical jobs fit: 15 optimal on-time sets.
        assert_eq!(sets.len(), 15);
        assert!(sets.contains(&result.witness_on_time));
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn rejection_candidate_matches_the_worked_example() {
        // First late position is 3; job 3 is the longest of jobs 1..3.
        assert_eq!(rejection_candidate(&moore()).unwrap(), 3);
        // Ties go to the earliest position.
        let tied = Instance::new(vec![Job::new(1, 3, 1), Job::new(2, 3, 2)]).unwrap();
        assert_eq!(rejection_candidate(&tied).unwrap(), 1);
    }

    #[test]
    fn proof_step_checks_hold_on_the_worked_example() {
        assert!(check_prop1(&moore()).unwrap());
        assert!(check_lemma1(&moore()).unwrap());
        assert!(check_induction_step(&moore()).unwrap());
        // Dropping job 3 leaves an optimum of exactly one.
        assert_eq!(
            brute_force(&moore().without(3).unwrap(), false).unwrap().min_objective,
            1
        );
    }

    #[test]
    fn proof_step_checks_on_boundary_instances() {
        let no_late = Instance::new(vec![Job::new(1, 2, 2), Job::new(2, 2, 4)]).unwrap();
        assert!(check_prop1(&no_late).unwrap());
        assert_eq!(check_lemma1(&no_late).unwrap_err(), Error::NoLateJob);
        assert_eq!(check_induction_step(&no_late).unwrap_err(), Error::NoLateJob);

        assert!(check_prop1(&all_ties()).unwrap());
        assert!(check_lemma1(&all_ties()).unwrap());
        assert!(check_induction_step(&all_ties()).unwrap());
    }
}
