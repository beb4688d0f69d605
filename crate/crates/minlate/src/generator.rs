//! Deterministic instance generation for reproducible test suites.
//!
//! Everything here is a pure function of its inputs: the random stream is a
//! self-contained splitmix64 (constants below), not the platform's RNG, so a
//! `(seed, n, ...)` spec produces byte-identical instances on every machine
//! and toolchain. Draw order is part of the contract: processing times
//! first, then due dates, then (if requested) weights.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::Error;
use crate::model::{Instance, Job, JobId, Time, Weight};

/// The splitmix64 generator: 64 bits of state, advanced by a Weyl increment
/// and finalized with two xor-shift multiplies.
///
/// Constants are the standard ones: increment `0x9E3779B97F4A7C15`,
/// multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, shifts
/// 30/27/31. Any 64-bit seed is valid, including 0.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..=bound`. Uses a simple modulo; the bias is below
    /// `bound / 2^64`, irrelevant for generating test instances.
    pub fn next_bounded(&mut self, bound: u64) -> u64 {
        match bound.checked_add(1) {
            Some(m) => self.next_u64() % m,
            None => self.next_u64(),
        }
    }
}

/// How due dates relate to the load the schedule accumulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DueDateMode {
    /// `d` uniform over `[0, sum of p]`: a broad mix of feasible and late.
    Uniform,
    /// `d` near each job's cumulative load, jittered by at most `p_max`
    /// either way: lots of rejection activity.
    Tight,
    /// `d >= sum of p` for every job: nothing is ever late.
    Loose,
}

impl FromStr for DueDateMode {
    type Err = String;

    fn from_str(s: &str) -> Result<DueDateMode, String> {
        match s {
            "uniform" => Ok(DueDateMode::Uniform),
            "tight" => Ok(DueDateMode::Tight),
            "loose" => Ok(DueDateMode::Loose),
            _ => Err(format!("unknown due-date mode `{s}` (expected uniform, tight or loose)")),
        }
    }
}

/// Full description of one random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    /// Processing times are drawn uniformly from `[0, p_max]`.
    pub p_max: Time,
    pub d_mode: DueDateMode,
    /// Assign weights that are oppositely ordered to processing times, so
    /// the weighted solver accepts the instance.
    pub weighted_opposite: bool,
}

/// Generates the instance a [`GenSpec`] describes. Fails only if the drawn
/// processing times sum past the 64-bit range.
pub fn generate(spec: &GenSpec) -> Result<Instance, Error> {
    let mut rng = SplitMix64::new(spec.seed);

    let p: Vec<Time> = (0..spec.n).map(|_| rng.next_bounded(spec.p_max)).collect();
    let total_wide: u128 = p.iter().map(|&x| x as u128).sum();
    let total = Time::try_from(total_wide).map_err(|_| Error::TotalTimeOverflow)?;

    let mut running: Time = 0;
    let d: Vec<Time> = p
        .iter()
        .map(|&p_j| {
            running += p_j;
            match spec.d_mode {
                DueDateMode::Uniform => rng.next_bounded(total),
                DueDateMode::Tight => {
                    let jitter = rng.next_bounded(spec.p_max.saturating_mul(2));
                    let d = running as i128 + jitter as i128 - spec.p_max as i128;
                    d.clamp(0, u64::MAX as i128) as Time
                }
                DueDateMode::Loose => total.saturating_add(rng.next_bounded(spec.p_max)),
            }
        })
        .collect();

    // Weights as a function of processing time: walking the distinct p
    // values from longest to shortest, weights never decrease — i.e. longer
    // jobs are never worth more. Equal p means equal w by construction.
    let weight_of: Option<BTreeMap<Time, Weight>> = spec.weighted_opposite.then(|| {
        let mut distinct: Vec<Time> = p.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut w: Weight = rng.next_bounded(2);
        let mut map = BTreeMap::new();
        for &pv in distinct.iter().rev() {
            map.insert(pv, w);
            w += rng.next_bounded(2);
        }
        map
    });

    let jobs: Vec<Job> = (0..spec.n)
        .map(|i| {
            let id = JobId::try_from(i + 1).expect("job ids fit in 32 bits");
            match &weight_of {
                Some(map) => Job::weighted(id, p[i], d[i], map[&p[i]]),
                None => Job::new(id, p[i], d[i]),
            }
        })
        .collect();

    if spec.weighted_opposite {
        Instance::with_explicit_weights(jobs)
    } else {
        Instance::new(jobs)
    }
}

/// Hand-built extreme shapes that exercise the solver's edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `p = 1, d = 0`: every job is late, even alone.
    AllLate,
    /// `p_j = j`, every `d` equal to the total load: nothing is late.
    NoneLate,
    /// All jobs identical (`p = 2, d = 5`): every tie-break fires.
    AllTies,
    /// `p_j = j`, `d_j` equal to the cumulative load: every job finishes
    /// exactly on its due date, probing the strict-lateness boundary.
    Staircase,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "all_late" => Ok(Family::AllLate),
            "none_late" => Ok(Family::NoneLate),
            "all_ties" => Ok(Family::AllTies),
            "staircase" => Ok(Family::Staircase),
            _ => Err(format!(
                "unknown family `{s}` (expected all_late, none_late, all_ties or staircase)"
            )),
        }
    }
}

/// Builds the `n`-job member of an adversarial family.
pub fn adversarial_family(family: Family, n: usize) -> Result<Instance, Error> {
    let job_id = |j: usize| JobId::try_from(j).expect("job ids fit in 32 bits");
    let jobs: Vec<Job> = match family {
        Family::AllLate => (1..=n).map(|j| Job::new(job_id(j), 1, 0)).collect(),
        Family::NoneLate => {
            let triangle = n as u128 * (n as u128 + 1) / 2;
            let total = Time::try_from(triangle).map_err(|_| Error::TotalTimeOverflow)?;
            (1..=n).map(|j| Job::new(job_id(j), j as u64, total)).collect()
        }
        Family::AllTies => (1..=n).map(|j| Job::new(job_id(j), 2, 5)).collect(),
        Family::Staircase => (1..=n)
            .map(|j| {
                let j = j as u64;
                Job::new(job_id(j as usize), j, j * (j + 1) / 2)
            })
            .collect(),
    };
    Instance::new(jobs)
}
