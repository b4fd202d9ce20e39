//! The LD heuristic and the classic list-scheduling baselines.
//!
//! LD assigns ranks in order `1..=k`. Within a rank the job with the largest
//! processing time goes to the machine with the smallest current completion
//! time, the second largest to the second smallest, and so on. After all
//! ranks are assigned the schedule is reversed and left-justified, so every
//! rank-`k` job starts at time zero; reversal leaves the machine loads (and
//! hence the makespan `t_LD`) unchanged.

use crate::instance::Instance;
use crate::schedule::{Profile, Schedule};
use crate::{Error, Result};

/// Outcome of [`ld_schedule`]: the reversed, left-justified schedule, its
/// makespan `t_LD`, and the forward-pass profile after every rank.
#[derive(Clone, Debug)]
pub struct LdResult {
    pub schedule: Schedule,
    pub makespan: u64,
    pub profiles: Vec<Profile>,
}

/// Forward LD pass over all ranks. `order[j]` is reused as the machine
/// visitation order: machines sorted by (load, index) ascending, so the
/// largest job of the rank lands on the machine with the smallest load and
/// ties go to the lowest machine index.
pub(crate) fn forward_pass(inst: &Instance) -> (Vec<usize>, Vec<u64>, Vec<Profile>) {
    let m = inst.machines();
    let k = inst.ranks();
    let mut loads = vec![0u64; m];
    let mut grid = vec![0usize; m * k];
    let mut profiles = Vec::with_capacity(k);
    let mut order: Vec<usize> = (0..m).collect();
    for rank in 1..=k {
        order.sort_by_key(|&i| (loads[i], i));
        for (j, job) in inst.rank_jobs(rank).enumerate() {
            let machine = order[j];
            loads[machine] += inst.time(job);
            grid[machine * k + (rank - 1)] = job;
        }
        profiles.push(Profile::new(rank, loads.clone()));
    }
    (grid, loads, profiles)
}

/// Runs the LD algorithm and returns the schedule, `t_LD`, and all forward
/// profiles.
pub fn ld_schedule(inst: &Instance) -> LdResult {
    let (grid, loads, profiles) = forward_pass(inst);
    let makespan = loads.iter().copied().max().unwrap_or(0);
    let schedule = Schedule::from_flat_grid(inst, grid);
    debug_assert_eq!(schedule.makespan(), makespan);
    LdResult {
        schedule,
        makespan,
        profiles,
    }
}

/// Forward-pass LD profile after rank `rank` (1-based).
pub fn profile_after(inst: &Instance, rank: usize) -> Result<Profile> {
    if rank < 1 || rank > inst.ranks() {
        return Err(Error::RankOutOfRange {
            rank,
            lo: 1,
            hi: inst.ranks(),
        });
    }
    let (_, _, mut profiles) = forward_pass(inst);
    Ok(profiles.swap_remove(rank - 1))
}

/// Graham list scheduling: each job in list order goes to the machine with
/// the smallest current load (ties to the lowest index). Returns the
/// makespan; no rank structure is imposed.
pub fn list_schedule(machines: usize, ordered_jobs: &[u64]) -> u64 {
    assert!(machines >= 1, "need at least one machine");
    let mut loads = vec![0u64; machines];
    for &p in ordered_jobs {
        let target = (0..machines).min_by_key(|&i| (loads[i], i)).unwrap();
        loads[target] += p;
    }
    loads.into_iter().max().unwrap()
}

/// LPT list scheduling: list scheduling with the jobs sorted nonincreasing.
pub fn lpt_schedule(machines: usize, jobs: &[u64]) -> u64 {
    let mut sorted = jobs.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    list_schedule(machines, &sorted)
}
