//! Instance-shrinking transforms.
//!
//! `reduce(P, r)` subtracts one time unit from every job of rank `r-1` and
//! from every rank-`r` job whose processing time equals the rank maximum
//! `lambda_r`. `box_reduce(P, r)` additionally tops up the rank-1 jobs of
//! the reduced instance's canonical optimal schedule so that every machine
//! finishes exactly at the makespan; the result therefore has a rectangular
//! optimal schedule by construction.

use crate::exact::{optimal_makespan_with, SolverLimits};
use crate::instance::Instance;
use crate::{Error, Result};

/// A transformed instance plus whether the move kept every job in its
/// original rank (re-sorting is always applied to the output either way).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub instance: Instance,
    pub rank_partition_preserved: bool,
}

/// Subtracts one unit from every rank-`(rank-1)` job and from every
/// rank-`rank` job at `lambda_rank`. `rank` is 1-based with
/// `2 <= rank <= k`; any decrement that would go below zero is refused.
pub fn reduce(inst: &Instance, rank: usize) -> Result<Reduced> {
    let k = inst.ranks();
    if rank < 2 || rank > k {
        return Err(Error::RankOutOfRange { rank, lo: 2, hi: k });
    }
    let stats = inst.rank_stats();
    if stats.mu(rank - 1) == 0 {
        return Err(Error::DecrementUnderflow { rank: rank - 1 });
    }
    if stats.lambda(rank) == 0 {
        return Err(Error::DecrementUnderflow { rank });
    }
    let lambda_r = stats.lambda(rank);
    let mut times = inst.times().to_vec();
    for j in inst.rank_jobs(rank - 1) {
        times[j] -= 1;
    }
    for j in inst.rank_jobs(rank) {
        if times[j] == lambda_r {
            times[j] -= 1;
        }
    }
    finish(inst, times)
}

/// `box_reduce` with default solver limits.
pub fn box_reduce(inst: &Instance, rank: usize) -> Result<Reduced> {
    box_reduce_with(inst, rank, &SolverLimits::default())
}

/// Applies [`reduce`], solves the reduced instance exactly, and raises each
/// rank-1 job on a below-makespan machine of the canonical optimal schedule
/// by that machine's deficit.
pub fn box_reduce_with(inst: &Instance, rank: usize, limits: &SolverLimits) -> Result<Reduced> {
    let red = reduce(inst, rank)?;
    let solved = optimal_makespan_with(&red.instance, limits)?;
    let sched = &solved.schedule;
    let mut times = red.instance.times().to_vec();
    for machine in 0..red.instance.machines() {
        let deficit = solved.t_star - sched.load(machine);
        times[sched.job_at(machine, 1)] += deficit;
    }
    // topping up rank-1 jobs cannot push them below rank 2 or break rank 1
    // internally, so preservation is inherited from the reduce step
    let boxed = finish(&red.instance, times)?;
    Ok(Reduced {
        instance: boxed.instance,
        rank_partition_preserved: red.rank_partition_preserved,
    })
}

/// Re-normalizes modified times and reports whether each rank, sorted
/// internally, still dominates the next one (i.e. the rank partition
/// survived the edit).
fn finish(inst: &Instance, mut times: Vec<u64>) -> Result<Reduced> {
    let m = inst.machines();
    let k = inst.ranks();
    for r in 0..k {
        times[r * m..(r + 1) * m].sort_unstable_by(|a, b| b.cmp(a));
    }
    let preserved = (1..k).all(|r| times[r * m - 1] >= times[r * m]);
    let instance = Instance::normalize(m, &times)?;
    Ok(Reduced {
        instance,
        rank_partition_preserved: preserved,
    })
}
