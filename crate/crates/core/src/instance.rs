//! Problem instances and per-rank statistics.
//!
//! An instance of the flowtime-makespan (FM) problem is a machine count `m`
//! together with integer processing times sorted in nonincreasing order and
//! zero-padded so that the job count is an exact multiple of `m`. The `r`-th
//! block of `m` jobs in that order is *rank* `r`; every flowtime-optimal
//! schedule places exactly one job of each rank on each machine, with rank
//! `k` (the smallest jobs) starting at time zero.

use crate::error::{Error, Result};

/// A normalized FM instance: `m` identical machines and `m*k` nonincreasing
/// integer processing times partitioned into `k` ranks of `m` jobs each.
///
/// Jobs are identified by their 0-based position in the sorted order; ties in
/// processing time keep their input order, so normalization is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    machines: usize,
    ranks: usize,
    times: Vec<u64>,
}

impl Instance {
    /// Sorts `raw` nonincreasing and pads with zero-time jobs until the job
    /// count is `m * ceil(|raw| / m)`.
    pub fn normalize(machines: usize, raw: &[u64]) -> Result<Self> {
        if machines == 0 {
            return Err(Error::MachineCount { min: 1, got: 0 });
        }
        if raw.is_empty() {
            return Err(Error::EmptyTimes);
        }
        let ranks = raw.len().div_ceil(machines);
        let mut times = raw.to_vec();
        times.sort_by(|a, b| b.cmp(a));
        times.resize(machines * ranks, 0);
        Ok(Self {
            machines,
            ranks,
            times,
        })
    }

    /// Machine count `m`.
    pub fn machines(&self) -> usize {
        self.machines
    }

    /// Rank count `k`.
    pub fn ranks(&self) -> usize {
        self.ranks
    }

    /// Job count `n = m * k`.
    pub fn jobs(&self) -> usize {
        self.machines * self.ranks
    }

    /// All processing times, nonincreasing.
    pub fn times(&self) -> &[u64] {
        &self.times
    }

    /// Processing time of the job with 0-based sorted index `job`.
    pub fn time(&self, job: usize) -> u64 {
        self.times[job]
    }

    /// Sum of all processing times.
    pub fn total_time(&self) -> u64 {
        self.times.iter().sum()
    }

    /// Processing times of rank `rank` (1-based), nonincreasing.
    pub fn rank_times(&self, rank: usize) -> &[u64] {
        assert!(rank >= 1 && rank <= self.ranks, "rank {rank} out of range");
        let lo = (rank - 1) * self.machines;
        &self.times[lo..lo + self.machines]
    }

    /// 0-based job indices belonging to rank `rank` (1-based).
    pub fn rank_jobs(&self, rank: usize) -> std::ops::Range<usize> {
        assert!(rank >= 1 && rank <= self.ranks, "rank {rank} out of range");
        (rank - 1) * self.machines..rank * self.machines
    }

    /// Rank (1-based) of the job with 0-based index `job`.
    pub fn rank_of(&self, job: usize) -> usize {
        job / self.machines + 1
    }

    /// Largest/smallest processing time and sum for every rank.
    pub fn rank_stats(&self) -> RankStats {
        let m = self.machines;
        let mut lambda = Vec::with_capacity(self.ranks);
        let mut mu = Vec::with_capacity(self.ranks);
        let mut sums = Vec::with_capacity(self.ranks);
        for r in 0..self.ranks {
            let block = &self.times[r * m..(r + 1) * m];
            lambda.push(block[0]);
            mu.push(block[m - 1]);
            sums.push(block.iter().sum());
        }
        RankStats { lambda, mu, sums }
    }
}

/// Per-rank extremes and sums: `lambda[r-1]` and `mu[r-1]` are the largest
/// and smallest processing times within rank `r`.
///
/// For any normalized instance the interleaved chain
/// `lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ... >= mu_k >= 0` holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankStats {
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    pub sums: Vec<u64>,
}

impl RankStats {
    /// Largest processing time in rank `rank` (1-based).
    pub fn lambda(&self, rank: usize) -> u64 {
        self.lambda[rank - 1]
    }

    /// Smallest processing time in rank `rank` (1-based).
    pub fn mu(&self, rank: usize) -> u64 {
        self.mu[rank - 1]
    }

    /// Sum of processing times in rank `rank` (1-based).
    pub fn sum(&self, rank: usize) -> u64 {
        self.sums[rank - 1]
    }

    /// Checks the interleaved ordering chain over all ranks.
    pub fn chain_holds(&self) -> bool {
        let k = self.lambda.len();
        for r in 0..k {
            if self.lambda[r] < self.mu[r] {
                return false;
            }
            if r + 1 < k && self.mu[r] < self.lambda[r + 1] {
                return false;
            }
        }
        true
    }
}
