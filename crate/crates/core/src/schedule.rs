//! Rank-indexed schedules and machine-load profiles.

use crate::error::{Error, Result};
use crate::instance::Instance;

/// A flowtime-optimal schedule stored as an `m x k` grid of job indices:
/// `grid[machine][rank-1]` is the job of that rank run on that machine.
///
/// The time layout is implied by the grid: every machine runs its jobs in
/// decreasing rank order (rank `k` first, starting at time zero) with no
/// idle time, so start and completion times are derived on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    machines: usize,
    ranks: usize,
    times: Vec<u64>,
    grid: Vec<usize>,
    loads: Vec<u64>,
    makespan: u64,
    flowtime: u64,
}

impl Schedule {
    /// Builds a schedule from an explicit grid, validating that every rank
    /// places exactly one of its jobs on each machine.
    pub fn from_grid(inst: &Instance, grid: &[Vec<usize>]) -> Result<Self> {
        let m = inst.machines();
        let k = inst.ranks();
        if grid.len() != m || grid.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidGrid {
                reason: format!("grid must be {m} machines x {k} ranks"),
            });
        }
        for rank in 1..=k {
            let mut seen: Vec<usize> = (0..m).map(|i| grid[i][rank - 1]).collect();
            seen.sort_unstable();
            let expected: Vec<usize> = inst.rank_jobs(rank).collect();
            if seen != expected {
                return Err(Error::InvalidGrid {
                    reason: format!("rank {rank} is not a permutation of its jobs"),
                });
            }
        }
        let flat: Vec<usize> = grid.iter().flatten().copied().collect();
        Ok(Self::from_flat_grid(inst, flat))
    }

    pub(crate) fn from_flat_grid(inst: &Instance, grid: Vec<usize>) -> Self {
        let m = inst.machines();
        let k = inst.ranks();
        debug_assert_eq!(grid.len(), m * k);
        let times = inst.times().to_vec();
        let loads: Vec<u64> = (0..m)
            .map(|i| grid[i * k..(i + 1) * k].iter().map(|&j| times[j]).sum())
            .collect();
        let makespan = loads.iter().copied().max().unwrap_or(0);
        // Completion of the rank-r job on machine i is the sum of that
        // machine's rank r..k times, so the flowtime telescopes to
        // sum_r r * (rank-r total).
        let mut flowtime = 0u64;
        for i in 0..m {
            let mut suffix = 0u64;
            for r in (0..k).rev() {
                suffix += times[grid[i * k + r]];
                flowtime += suffix;
            }
        }
        Self {
            machines: m,
            ranks: k,
            times,
            grid,
            loads,
            makespan,
            flowtime,
        }
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn ranks(&self) -> usize {
        self.ranks
    }

    /// Job index scheduled on `machine` (0-based) in rank `rank` (1-based).
    pub fn job_at(&self, machine: usize, rank: usize) -> usize {
        self.grid[machine * self.ranks + (rank - 1)]
    }

    /// Processing time of the job at (`machine`, `rank`).
    pub fn time_at(&self, machine: usize, rank: usize) -> u64 {
        self.times[self.job_at(machine, rank)]
    }

    /// Start time of the job at (`machine`, `rank`): ranks below it on the
    /// same machine run first.
    pub fn start_at(&self, machine: usize, rank: usize) -> u64 {
        (rank + 1..=self.ranks)
            .map(|r| self.time_at(machine, r))
            .sum()
    }

    /// Completion time of the job at (`machine`, `rank`).
    pub fn completion_at(&self, machine: usize, rank: usize) -> u64 {
        self.start_at(machine, rank) + self.time_at(machine, rank)
    }

    /// (machine, rank) position of a 0-based job index.
    pub fn position_of(&self, job: usize) -> (usize, usize) {
        let pos = self
            .grid
            .iter()
            .position(|&j| j == job)
            .expect("job not in schedule");
        (pos / self.ranks, pos % self.ranks + 1)
    }

    /// Completion time of a 0-based job index.
    pub fn completion_of(&self, job: usize) -> u64 {
        let (machine, rank) = self.position_of(job);
        self.completion_at(machine, rank)
    }

    /// Total processing time assigned to `machine` (0-based).
    pub fn load(&self, machine: usize) -> u64 {
        self.loads[machine]
    }

    /// Per-machine loads in machine order.
    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    /// Per-machine loads sorted nonincreasing.
    pub fn sorted_loads(&self) -> Vec<u64> {
        let mut v = self.loads.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn makespan(&self) -> u64 {
        self.makespan
    }

    pub fn flowtime(&self) -> u64 {
        self.flowtime
    }

    /// `(makespan, flowtime)` of the schedule.
    pub fn evaluate(&self) -> (u64, u64) {
        (self.makespan, self.flowtime)
    }

    /// True iff every machine is busy from time zero to the makespan, i.e.
    /// all loads equal the makespan. A rectangular schedule meets the area
    /// lower bound `sum(p) / m` exactly and is therefore makespan-optimal.
    pub fn is_rectangular(&self) -> bool {
        self.loads.iter().all(|&l| l == self.makespan)
    }
}

/// Nonincreasing multiset of machine completion times after all jobs of
/// ranks `1..=rank` have been assigned in the forward LD pass. Machine
/// identity is erased.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    rank: usize,
    values: Vec<u64>,
}

impl Profile {
    pub fn new(rank: usize, mut values: Vec<u64>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        Self { rank, values }
    }

    /// The rank (1-based) this profile was taken after.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Completion times, nonincreasing.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Elementwise `>=` on the sorted vectors.
    pub fn dominates(&self, other: &Profile) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }
}
