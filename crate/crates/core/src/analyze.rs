//! Ratio reports against the tight worst-case bound, LD schedule-shape
//! classifiers, profile-monotonicity checking, and the search harness.
//!
//! The LD makespan never exceeds `(5m-2)/(4m-1)` times the optimum, and the
//! bound is achieved by [`crate::generate::tight_family`] for every
//! `m >= 2`. All bound comparisons here are cross-multiplied integers; no
//! ratio is ever evaluated in floating point.

use num_rational::Ratio;

use crate::exact::{optimal_makespan_with, SolverLimits};
use crate::generate::{enumerate_instances, random_instance};
use crate::instance::Instance;
use crate::ld::{ld_schedule, profile_after};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The tight worst-case ratio `(5m-2)/(4m-1)` of the LD makespan to the
/// optimal makespan on `m` machines.
pub fn worst_case_bound(machines: usize) -> Ratio<u64> {
    let m = machines as u64;
    Ratio::new(5 * m - 2, 4 * m - 1)
}

/// Exact comparison of the LD makespan against the optimum and the
/// worst-case bound for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub machines: usize,
    pub t_ld: u64,
    pub t_star: u64,
    /// `t_ld / t_star` in lowest terms; `None` for the all-zero instance.
    pub ratio: Option<Ratio<u64>>,
    pub bound: Ratio<u64>,
    /// `t_ld * (4m-1) <= t_star * (5m-2)`, vacuously true when degenerate.
    pub meets_bound: bool,
    /// The ratio equals the bound exactly.
    pub tight: bool,
    /// `t_star = 0`: the all-zero instance, excluded from statistics.
    pub degenerate: bool,
}

impl RatioReport {
    pub fn from_values(machines: usize, t_ld: u64, t_star: u64) -> Self {
        let m = machines as u128;
        let degenerate = t_star == 0;
        let lhs = t_ld as u128 * (4 * m - 1);
        let rhs = t_star as u128 * (5 * m - 2);
        RatioReport {
            machines,
            t_ld,
            t_star,
            ratio: (!degenerate).then(|| Ratio::new(t_ld, t_star)),
            bound: worst_case_bound(machines),
            meets_bound: degenerate || lhs <= rhs,
            tight: !degenerate && lhs == rhs,
            degenerate,
        }
    }
}

/// Runs LD and the exact solver with default limits.
pub fn ratio_report(inst: &Instance) -> Result<RatioReport> {
    ratio_report_with(inst, &SolverLimits::default())
}

pub fn ratio_report_with(inst: &Instance, limits: &SolverLimits) -> Result<RatioReport> {
    let t_ld = ld_schedule(inst).makespan;
    let solved = optimal_makespan_with(inst, limits)?;
    Ok(RatioReport::from_values(
        inst.machines(),
        t_ld,
        solved.t_star,
    ))
}

/// Shape of an LD schedule with respect to the classifier predicates used
/// for counterexample taxonomy: uniqueness of the maximum-load machine
/// `i'`, whether every maximum-load machine carries a rank-`k` job of time
/// `lambda_k`, whether `i'` carries `lambda_r` in every rank `r >= 2`, and
/// whether `i'` carries `mu_1` in rank 1. `i_double_prime` is the smallest
/// other machine whose completion before the final rank is at least that of
/// `i'`, when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdClassification {
    pub makespan: u64,
    pub max_load_machines: usize,
    pub i_prime_unique: bool,
    pub i_prime: Option<usize>,
    pub has_lambda_k_on_max_machines: bool,
    pub i_prime_carries_all_lambdas: bool,
    pub i_prime_rank1_is_mu1: bool,
    pub i_double_prime: Option<usize>,
}

pub fn classify_ld(inst: &Instance) -> LdClassification {
    let result = ld_schedule(inst);
    let sched = &result.schedule;
    let m = inst.machines();
    let k = inst.ranks();
    let stats = inst.rank_stats();
    let makespan = result.makespan;

    let max_machines: Vec<usize> = (0..m).filter(|&i| sched.load(i) == makespan).collect();
    let i_prime = (max_machines.len() == 1).then(|| max_machines[0]);
    let lambda_k = stats.lambda(k);
    // forward completion after rank k-1 = final load minus the rank-k job
    let before_last = |i: usize| sched.load(i) - sched.time_at(i, k);

    LdClassification {
        makespan,
        max_load_machines: max_machines.len(),
        i_prime_unique: i_prime.is_some(),
        i_prime,
        has_lambda_k_on_max_machines: max_machines
            .iter()
            .all(|&i| sched.time_at(i, k) == lambda_k),
        i_prime_carries_all_lambdas: i_prime
            .is_some_and(|ip| (2..=k).all(|r| sched.time_at(ip, r) == stats.lambda(r))),
        i_prime_rank1_is_mu1: i_prime.is_some_and(|ip| sched.time_at(ip, 1) == stats.mu(1)),
        i_double_prime: i_prime.and_then(|ip| {
            (0..m)
                .filter(|&i| i != ip)
                .find(|&i| before_last(i) >= before_last(ip))
        }),
    }
}

/// Checks that raising the processing times of rank `rank` by `deltas`
/// (one nonnegative increment per job of that rank, which must keep every
/// job in its rank) does not lower any element of any LD profile from
/// `rank` onward.
pub fn check_monotonicity(inst: &Instance, rank: usize, deltas: &[u64]) -> Result<bool> {
    let k = inst.ranks();
    if rank < 1 || rank > k {
        return Err(Error::RankOutOfRange { rank, lo: 1, hi: k });
    }
    assert_eq!(
        deltas.len(),
        inst.machines(),
        "one increment per job of the rank"
    );
    let mut times = inst.times().to_vec();
    for (j, &d) in inst.rank_jobs(rank).zip(deltas) {
        times[j] = times[j]
            .checked_add(d)
            .ok_or(Error::RankOrderViolated { rank })?;
    }
    if rank >= 2 {
        let ceiling = inst.rank_stats().mu(rank - 1);
        let grown = inst.rank_jobs(rank).map(|j| times[j]).max().unwrap();
        if grown > ceiling {
            return Err(Error::RankOrderViolated { rank });
        }
    }
    let perturbed = Instance::normalize(inst.machines(), &times)?;
    for l in rank..=k {
        let before = profile_after(inst, l)?;
        let after = profile_after(&perturbed, l)?;
        if !after.dominates(&before) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What to sweep: every instance of a shape, or seeded random draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

/// An instance space for [`search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchSpace {
    pub machines: usize,
    pub ranks: usize,
    pub p_max: u64,
    pub mode: SearchMode,
}

/// Aggregated sweep results. A bound violation can only mean an
/// implementation bug, so `violations` doubles as a regression check;
/// `tight` collects the instances on the boundary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub violations: Vec<Instance>,
    pub tight: Vec<Instance>,
    pub evaluated: u64,
    pub degenerate: u64,
    pub failures: u64,
}

impl SearchOutcome {
    fn absorb(&mut self, inst: Instance, limits: &SolverLimits) {
        self.evaluated += 1;
        match ratio_report_with(&inst, limits) {
            Err(_) => self.failures += 1,
            Ok(rep) if rep.degenerate => self.degenerate += 1,
            Ok(rep) => {
                if !rep.meets_bound {
                    self.violations.push(inst.clone());
                }
                if rep.tight {
                    self.tight.push(inst);
                }
            }
        }
    }

    fn merge(mut self, other: SearchOutcome) -> SearchOutcome {
        self.violations.extend(other.violations);
        self.tight.extend(other.tight);
        self.evaluated += other.evaluated;
        self.degenerate += other.degenerate;
        self.failures += other.failures;
        self
    }

    /// Sorting makes the outcome independent of evaluation order.
    fn finalize(mut self) -> SearchOutcome {
        self.violations.sort_by(|a, b| a.times().cmp(b.times()));
        self.tight.sort_by(|a, b| a.times().cmp(b.times()));
        self
    }
}

/// Sweeps the space with default solver limits, in parallel when the
/// `parallel` feature is enabled.
pub fn search(space: &SearchSpace) -> Result<SearchOutcome> {
    search_with(space, &SolverLimits::default())
}

pub fn search_with(space: &SearchSpace, limits: &SolverLimits) -> Result<SearchOutcome> {
    #[cfg(feature = "parallel")]
    {
        search_parallel(space, limits)
    }
    #[cfg(not(feature = "parallel"))]
    {
        search_sequential_with(space, limits)
    }
}

/// Single-threaded sweep regardless of enabled features.
pub fn search_sequential(space: &SearchSpace) -> Result<SearchOutcome> {
    search_sequential_with(space, &SolverLimits::default())
}

pub fn search_sequential_with(space: &SearchSpace, limits: &SolverLimits) -> Result<SearchOutcome> {
    let mut out = SearchOutcome::default();
    match space.mode {
        SearchMode::Exhaustive => {
            for inst in enumerate_instances(space.machines, space.ranks, space.p_max)? {
                out.absorb(inst, limits);
            }
        }
        SearchMode::Random { trials, seed } => {
            for i in 0..trials {
                let inst = random_instance(
                    space.machines,
                    space.ranks,
                    space.p_max,
                    seed.wrapping_add(i),
                )?;
                out.absorb(inst, limits);
            }
        }
    }
    Ok(out.finalize())
}

#[cfg(feature = "parallel")]
fn search_parallel(space: &SearchSpace, limits: &SolverLimits) -> Result<SearchOutcome> {
    let out = match space.mode {
        SearchMode::Exhaustive => enumerate_instances(space.machines, space.ranks, space.p_max)?
            .par_bridge()
            .fold(SearchOutcome::default, |mut acc, inst| {
                acc.absorb(inst, limits);
                acc
            })
            .reduce(SearchOutcome::default, SearchOutcome::merge),
        SearchMode::Random { trials, seed } => {
            // validate the shape once, then per-trial generation cannot fail
            random_instance(space.machines, space.ranks, space.p_max, seed)?;
            (0..trials)
                .into_par_iter()
                .fold(SearchOutcome::default, |mut acc, i| {
                    let inst = random_instance(
                        space.machines,
                        space.ranks,
                        space.p_max,
                        seed.wrapping_add(i),
                    )
                    .expect("shape validated above");
                    acc.absorb(inst, limits);
                    acc
                })
                .reduce(SearchOutcome::default, SearchOutcome::merge)
        }
    };
    Ok(out.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::tight_family;

    fn inst(m: usize, times: &[u64]) -> Instance {
        Instance::normalize(m, times).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(worst_case_bound(2), Ratio::new(8, 7));
        assert_eq!(worst_case_bound(3), Ratio::new(13, 11));
        // (5*4-2)/(4*4-1) = 18/15 reduces to 6/5
        assert_eq!(worst_case_bound(4), Ratio::new(18, 15));
    }

    #[test]
    fn ratio_on_tight_family() {
        let rep = ratio_report(&tight_family(3).unwrap()).unwrap();
        assert_eq!((rep.t_ld, rep.t_star), (13, 11));
        assert!(rep.tight && rep.meets_bound && !rep.degenerate);
        assert_eq!(rep.ratio, Some(Ratio::new(13, 11)));

        let rep = ratio_report(&tight_family(2).unwrap()).unwrap();
        assert_eq!((rep.t_ld, rep.t_star), (8, 7));
        assert!(rep.tight);
    }

    #[test]
    fn ratio_on_symmetric_instance() {
        let rep = ratio_report(&inst(2, &[6, 6, 6, 6])).unwrap();
        assert_eq!((rep.t_ld, rep.t_star), (12, 12));
        assert_eq!(rep.ratio, Some(Ratio::new(1, 1)));
        assert!(rep.meets_bound && !rep.tight);
    }

    #[test]
    fn ratio_degenerate_all_zero() {
        let rep = ratio_report(&inst(2, &[0, 0, 0, 0])).unwrap();
        assert!(rep.degenerate && rep.meets_bound && !rep.tight);
        assert_eq!(rep.ratio, None);
    }

    #[test]
    fn classify_examples() {
        let c = classify_ld(&tight_family(3).unwrap());
        assert_eq!(c.max_load_machines, 1);
        assert!(c.i_prime_unique);
        assert!(c.has_lambda_k_on_max_machines);
        assert_eq!(c.i_double_prime, Some(1));

        let c = classify_ld(&inst(2, &[5, 5, 5, 5]));
        assert_eq!(c.max_load_machines, 2);
        assert!(!c.i_prime_unique);
        assert_eq!(c.i_prime, None);

        let c = classify_ld(&inst(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1]));
        assert_eq!(c.max_load_machines, 1);
        assert_eq!(c.makespan, 19);
    }

    #[test]
    fn family_is_ir1_shaped_up_to_five_machines() {
        for m in 2..=5 {
            let c = classify_ld(&tight_family(m).unwrap());
            assert!(c.i_prime_unique, "m={m}");
            assert!(c.has_lambda_k_on_max_machines, "m={m}");
        }
    }

    #[test]
    fn monotonicity_identity_and_single_bump() {
        let i = inst(3, &[7, 6, 5, 5, 4, 3, 3, 0, 0]);
        assert_eq!(check_monotonicity(&i, 2, &[0, 0, 0]), Ok(true));
        // bump the rank-2 job of time 3 to 4: profile after rank 2 goes
        // (10,10,10) -> (11,10,10)
        assert_eq!(check_monotonicity(&i, 2, &[0, 0, 1]), Ok(true));
    }

    #[test]
    fn monotonicity_rejects_rank_escape() {
        let i = inst(3, &[7, 6, 5, 5, 4, 3, 3, 0, 0]);
        // raising a rank-2 job above mu_1 = 5 changes its rank
        assert_eq!(
            check_monotonicity(&i, 2, &[1, 0, 0]),
            Err(Error::RankOrderViolated { rank: 2 })
        );
    }

    #[test]
    fn exhaustive_search_small_space() {
        let out = search(&SearchSpace {
            machines: 2,
            ranks: 2,
            p_max: 3,
            mode: SearchMode::Exhaustive,
        })
        .unwrap();
        assert_eq!(out.violations.len(), 0);
        assert_eq!(out.evaluated, 35); // C(4+4,4) multisets of size 4 over 0..=3
        assert_eq!(out.degenerate, 1);
        assert!(out.evaluated > out.degenerate);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let space = SearchSpace {
            machines: 2,
            ranks: 3,
            p_max: 3,
            mode: SearchMode::Random {
                trials: 64,
                seed: 9,
            },
        };
        let a = search(&space).unwrap();
        let b = search_sequential(&space).unwrap();
        assert_eq!(a, b);
    }
}
