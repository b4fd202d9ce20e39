//! Exact minimum makespan over flowtime-optimal schedules.
//!
//! The feasible set is every one-job-per-rank-per-machine assignment, so the
//! problem is: permute the values within each rank to minimize the maximum
//! machine sum. [`optimal_makespan`] fixes the rank-1 assignment (machines
//! are interchangeable while empty), explores ranks in order with
//! memoization on the sorted multiset of partial loads, prunes with
//! admissible lower bounds against a monotonically improving incumbent, and
//! closes the final rank greedily (largest job onto smallest load, which is
//! optimal for a single rank). A second, fully deterministic pass then
//! reconstructs the canonical witness schedule, so the result does not
//! depend on worker interleaving when the first branching level is solved in
//! parallel.
//!
//! [`brute_force_oracle`] is an independent check: plain enumeration of all
//! `(m!)^k` assignments with no pruning, memoization, or symmetry fixing. It
//! deliberately shares no search code with the solver.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::instance::Instance;
use crate::ld::ld_schedule;
use crate::schedule::Schedule;
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Size guards for the exact solver. An instance is accepted when
/// `m <= max_machines` **or** `k <= max_ranks`; only instances that exceed
/// both are refused, since either a small machine count or a small rank
/// count keeps the memoized search tractable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_machines: usize,
    pub max_ranks: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            max_machines: 6,
            max_ranks: 7,
        }
    }
}

/// Result of the exact solver.
#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Minimum makespan over all flowtime-optimal schedules.
    pub t_star: u64,
    /// Canonical optimal witness: among optimal schedules, the one with the
    /// lexicographically smallest nonincreasing load vector, ties broken by
    /// the lexicographically smallest rank-major grid of job indices.
    pub schedule: Schedule,
    /// Whether the witness is rectangular (all loads equal `t_star`); when
    /// true `t_star * m` equals the total processing time and the witness
    /// certifies optimality by the area bound alone.
    pub rectangular: bool,
    /// Search nodes visited across all passes. Diagnostic only; may vary
    /// with thread count.
    pub nodes_explored: u64,
}

const ORACLE_MAX_MACHINES: usize = 4;
const ORACLE_MAX_RANKS: usize = 4;

/// Exhaustive reference solver: minimum over all `(m!)^k` per-rank
/// assignments of the maximum machine load. Hard-limited to `m <= 4`,
/// `k <= 4`.
pub fn brute_force_oracle(inst: &Instance) -> Result<u64> {
    let m = inst.machines();
    let k = inst.ranks();
    if m > ORACLE_MAX_MACHINES || k > ORACLE_MAX_RANKS {
        return Err(Error::OracleLimit {
            machines: m,
            ranks: k,
            max_machines: ORACLE_MAX_MACHINES,
            max_ranks: ORACLE_MAX_RANKS,
        });
    }
    let perms = all_permutations(m);
    let ranks: Vec<&[u64]> = (1..=k).map(|r| inst.rank_times(r)).collect();
    let mut loads = vec![0u64; m];
    let mut best = u64::MAX;
    exhaust(&ranks, &perms, 0, &mut loads, &mut best);
    Ok(best)
}

fn exhaust(ranks: &[&[u64]], perms: &[Vec<usize>], r: usize, loads: &mut [u64], best: &mut u64) {
    if r == ranks.len() {
        *best = (*best).min(loads.iter().copied().max().unwrap());
        return;
    }
    for perm in perms {
        for (i, &p) in perm.iter().enumerate() {
            loads[i] += ranks[r][p];
        }
        exhaust(ranks, perms, r + 1, loads, best);
        for (i, &p) in perm.iter().enumerate() {
            loads[i] -= ranks[r][p];
        }
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    fn build(current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                current.push(i);
                build(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    build(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// General lower bound on `t_star`: the maximum of the area bound
/// `ceil(sum(p) / m)` and, for every rank `s`, the load forced onto the
/// machine that carries the largest rank-`s` job plus at least the smallest
/// job of every other rank.
pub fn lower_bound(inst: &Instance) -> u64 {
    let stats = inst.rank_stats();
    let area = inst.total_time().div_ceil(inst.machines() as u64);
    let mu_total: u64 = stats.mu.iter().sum();
    let lambda_bound = stats
        .lambda
        .iter()
        .zip(&stats.mu)
        .map(|(&l, &u)| mu_total - u + l)
        .max()
        .unwrap_or(0);
    area.max(lambda_bound)
}

/// Solves with default [`SolverLimits`].
pub fn optimal_makespan(inst: &Instance) -> Result<SolveResult> {
    optimal_makespan_with(inst, &SolverLimits::default())
}

/// Exact minimum makespan over flowtime-optimal schedules, with a canonical
/// optimal witness.
pub fn optimal_makespan_with(inst: &Instance, limits: &SolverLimits) -> Result<SolveResult> {
    let m = inst.machines();
    let k = inst.ranks();
    if m > limits.max_machines && k > limits.max_ranks {
        return Err(Error::SolverLimit {
            machines: m,
            ranks: k,
            max_machines: limits.max_machines,
            max_ranks: limits.max_ranks,
        });
    }
    let nodes = AtomicU64::new(1);
    if m == 1 || k == 1 {
        // one grid per machine relabeling: the identity grid is canonical
        let grid: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..k).map(|r| r * m + i).collect())
            .collect();
        let schedule = Schedule::from_grid(inst, &grid)?;
        return Ok(SolveResult {
            t_star: schedule.makespan(),
            rectangular: schedule.is_rectangular(),
            schedule,
            nodes_explored: nodes.into_inner(),
        });
    }

    let ctx = Ctx::new(inst);
    let t_star = solve_value(&ctx, &nodes);
    let target = target_final_loads(&ctx, t_star, &nodes);
    let rows = canonical_rows(&ctx, t_star, &target, &nodes);
    let grid: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..k).map(|r| rows[r][i]).collect())
        .collect();
    let schedule = Schedule::from_grid(inst, &grid)?;
    debug_assert_eq!(schedule.makespan(), t_star);
    Ok(SolveResult {
        t_star,
        rectangular: schedule.is_rectangular(),
        schedule,
        nodes_explored: nodes.into_inner(),
    })
}

struct Ctx {
    m: usize,
    k: usize,
    /// Processing times per 0-based rank, nonincreasing.
    rank_vals: Vec<Vec<u64>>,
    /// `mu_suffix[r]` = sum of rank minima over 0-based ranks `r..k`.
    mu_suffix: Vec<u64>,
    /// Area bound `ceil(total / m)`.
    area: u64,
    /// Achievable upper bound (the LD makespan).
    upper: u64,
}

impl Ctx {
    fn new(inst: &Instance) -> Self {
        let m = inst.machines();
        let k = inst.ranks();
        let rank_vals: Vec<Vec<u64>> = (1..=k).map(|r| inst.rank_times(r).to_vec()).collect();
        let mut mu_suffix = vec![0u64; k + 1];
        for r in (0..k).rev() {
            mu_suffix[r] = mu_suffix[r + 1] + rank_vals[r][m - 1];
        }
        Ctx {
            m,
            k,
            rank_vals,
            mu_suffix,
            area: inst.total_time().div_ceil(m as u64),
            upper: ld_schedule(inst).makespan,
        }
    }

    /// Admissible lower bound on the best completion of a state whose
    /// 0-based ranks `next_r..k` are still unassigned. Every machine still
    /// receives at least the minimum of each remaining rank, and the largest
    /// job of the next rank lands on some machine.
    fn bound(&self, next_r: usize, loads_desc: &[u64]) -> u64 {
        let mut b = loads_desc[0] + self.mu_suffix[next_r];
        if next_r < self.k {
            b = b.max(
                loads_desc[self.m - 1] + self.rank_vals[next_r][0] + self.mu_suffix[next_r + 1],
            );
        }
        b.max(self.area)
    }

    /// Exact best completion when only the last rank remains: pairing the
    /// largest remaining job with the smallest load minimizes the maximum
    /// pair sum.
    fn close_last_rank(&self, loads_desc: &[u64]) -> u64 {
        let vals = &self.rank_vals[self.k - 1];
        (0..self.m)
            .map(|i| loads_desc[self.m - 1 - i] + vals[i])
            .max()
            .unwrap()
    }
}

/// Calls `f` once per distinct assignment of the value multiset `vals_desc`
/// to positions `0..m`.
fn for_each_distinct_assignment(vals_desc: &[u64], f: &mut impl FnMut(&[u64])) {
    fn rec(
        pos: usize,
        counts: &mut Vec<(u64, usize)>,
        assign: &mut Vec<u64>,
        f: &mut impl FnMut(&[u64]),
    ) {
        if pos == assign.len() {
            f(assign);
            return;
        }
        for ci in 0..counts.len() {
            if counts[ci].1 == 0 {
                continue;
            }
            counts[ci].1 -= 1;
            assign[pos] = counts[ci].0;
            rec(pos + 1, counts, assign, f);
            counts[ci].1 += 1;
        }
    }
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for &v in vals_desc {
        match counts.last_mut() {
            Some((u, c)) if *u == v => *c += 1,
            _ => counts.push((v, 1)),
        }
    }
    let mut assign = vec![0u64; vals_desc.len()];
    rec(0, &mut counts, &mut assign, f);
}

/// Distinct successor load multisets (sorted nonincreasing) of a state.
fn successors(ctx: &Ctx, next_r: usize, loads_desc: &[u64]) -> Vec<Vec<u64>> {
    let mut set: HashSet<Vec<u64>> = HashSet::new();
    for_each_distinct_assignment(&ctx.rank_vals[next_r], &mut |assign| {
        let mut s: Vec<u64> = loads_desc
            .iter()
            .zip(assign)
            .map(|(&l, &a)| l + a)
            .collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        set.insert(s);
    });
    set.into_iter().collect()
}

struct ValueSearch<'a> {
    ctx: &'a Ctx,
    /// memo[next_r]: sorted loads -> best completion found with the pruning
    /// rules in force; exact whenever it beats every incumbent seen.
    memo: Vec<HashMap<Vec<u64>, u64>>,
    incumbent: &'a AtomicU64,
    nodes: &'a AtomicU64,
}

impl ValueSearch<'_> {
    fn dfs(&mut self, next_r: usize, loads_desc: &[u64]) -> u64 {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if next_r == self.ctx.k - 1 {
            let v = self.ctx.close_last_rank(loads_desc);
            self.incumbent.fetch_min(v, Ordering::Relaxed);
            return v;
        }
        if let Some(&v) = self.memo[next_r].get(loads_desc) {
            return v;
        }
        let mut scored: Vec<(u64, Vec<u64>)> = successors(self.ctx, next_r, loads_desc)
            .into_iter()
            .map(|c| (self.ctx.bound(next_r + 1, &c), c))
            .collect();
        scored.sort_unstable();
        let mut best = u64::MAX;
        for (b, child) in scored {
            if b >= best || b >= self.incumbent.load(Ordering::Relaxed) {
                break;
            }
            let v = self.dfs(next_r + 1, &child);
            best = best.min(v);
        }
        self.memo[next_r].insert(loads_desc.to_vec(), best);
        best
    }
}

/// Phase one: the optimal makespan value. The incumbent starts at the LD
/// makespan (always achievable) and only ever holds makespans of complete
/// schedules, so its final value is exact.
fn solve_value(ctx: &Ctx, nodes: &AtomicU64) -> u64 {
    let incumbent = AtomicU64::new(ctx.upper);
    let root: Vec<u64> = ctx.rank_vals[0].clone();
    if ctx.k == 2 {
        nodes.fetch_add(1, Ordering::Relaxed);
        return ctx.close_last_rank(&root).min(ctx.upper);
    }

    #[cfg(feature = "parallel")]
    {
        let mut scored: Vec<(u64, Vec<u64>)> = successors(ctx, 1, &root)
            .into_iter()
            .map(|c| (ctx.bound(2, &c), c))
            .collect();
        scored.sort_unstable();
        // split the first branching level across workers; they share only
        // the monotone incumbent, and the value of the minimum is
        // interleaving-independent
        if ctx.k >= 4 && scored.len() >= 4 {
            scored.par_iter().for_each(|(b, child)| {
                if *b >= incumbent.load(Ordering::Relaxed) {
                    return;
                }
                let mut search = ValueSearch {
                    ctx,
                    memo: vec![HashMap::new(); ctx.k],
                    incumbent: &incumbent,
                    nodes,
                };
                search.dfs(2, child);
            });
            return incumbent.into_inner();
        }
    }

    let mut search = ValueSearch {
        ctx,
        memo: vec![HashMap::new(); ctx.k],
        incumbent: &incumbent,
        nodes,
    };
    search.dfs(1, &root);
    incumbent.into_inner()
}

/// Phase two, step one: the canonical final load vector. Level-by-level
/// expansion of every state that can still finish at `t_star`, then the
/// lexicographic minimum over final nonincreasing load vectors.
fn target_final_loads(ctx: &Ctx, t_star: u64, nodes: &AtomicU64) -> Vec<u64> {
    let mut level: HashSet<Vec<u64>> = HashSet::new();
    level.insert(ctx.rank_vals[0].clone());
    for r in 1..ctx.k {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for state in &level {
            for_each_distinct_assignment(&ctx.rank_vals[r], &mut |assign| {
                let mut s: Vec<u64> = state.iter().zip(assign).map(|(&l, &a)| l + a).collect();
                s.sort_unstable_by(|a, b| b.cmp(a));
                if ctx.bound(r + 1, &s) <= t_star {
                    next.insert(s);
                }
            });
        }
        nodes.fetch_add(next.len() as u64, Ordering::Relaxed);
        level = next;
    }
    level
        .into_iter()
        .filter(|v| v[0] == t_star)
        .min()
        .expect("t_star is achievable")
}

struct WitnessSearch<'a> {
    ctx: &'a Ctx,
    t_star: u64,
    target: &'a [u64],
    /// dead[next_r]: sorted load multisets that cannot complete to `target`.
    dead: Vec<HashSet<Vec<u64>>>,
    /// Grid rows under construction, `rows[r][machine]` = job index.
    rows: Vec<Vec<usize>>,
    /// Machine-attached loads (unsorted).
    loads: Vec<u64>,
    nodes: &'a AtomicU64,
}

impl WitnessSearch<'_> {
    fn dfs(&mut self, next_r: usize) -> bool {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let mut key = self.loads.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        if next_r == self.ctx.k {
            return key == self.target;
        }
        if self.dead[next_r].contains(&key) {
            return false;
        }
        if self.ctx.bound(next_r, &key) > self.t_star {
            self.dead[next_r].insert(key);
            return false;
        }
        if self.assign_machine(next_r, 0, &mut vec![false; self.ctx.m]) {
            return true;
        }
        self.dead[next_r].insert(key);
        false
    }

    /// Chooses rank `next_r`'s job for each machine in turn, smallest job
    /// index first, so the first complete schedule found is the
    /// grid-lexicographic minimum. Equal-time jobs are interchangeable, so
    /// an index is skipped when a smaller unused index has the same time.
    fn assign_machine(&mut self, next_r: usize, machine: usize, used: &mut [bool]) -> bool {
        if machine == self.ctx.m {
            return self.dfs(next_r + 1);
        }
        let vals = &self.ctx.rank_vals[next_r];
        for j in 0..self.ctx.m {
            if used[j] || (j > 0 && !used[j - 1] && vals[j - 1] == vals[j]) {
                continue;
            }
            used[j] = true;
            self.rows[next_r][machine] = next_r * self.ctx.m + j;
            self.loads[machine] += vals[j];
            if self.assign_machine(next_r, machine + 1, used) {
                return true;
            }
            self.loads[machine] -= vals[j];
            used[j] = false;
        }
        false
    }
}

/// Phase two, step two: depth-first reconstruction of the canonical grid,
/// deterministic regardless of how phase one was scheduled.
fn canonical_rows(ctx: &Ctx, t_star: u64, target: &[u64], nodes: &AtomicU64) -> Vec<Vec<usize>> {
    let mut search = WitnessSearch {
        ctx,
        t_star,
        target,
        dead: vec![HashSet::new(); ctx.k],
        rows: vec![vec![0usize; ctx.m]; ctx.k],
        loads: ctx.rank_vals[0].clone(),
        nodes,
    };
    for i in 0..ctx.m {
        search.rows[0][i] = i;
    }
    let found = search.dfs(1);
    assert!(found, "no schedule reaches the optimal load vector");
    search.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(m: usize, times: &[u64]) -> Instance {
        Instance::normalize(m, times).unwrap()
    }

    #[test]
    fn oracle_known_values() {
        assert_eq!(
            brute_force_oracle(&inst(3, &[7, 6, 5, 5, 4, 3, 3, 0, 0])).unwrap(),
            11
        );
        assert_eq!(
            brute_force_oracle(&inst(2, &[4, 3, 3, 2, 2, 0])).unwrap(),
            7
        );
        assert_eq!(brute_force_oracle(&inst(2, &[9, 9, 9, 9])).unwrap(), 18);
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let big = inst(5, &[1; 10]);
        assert!(matches!(
            brute_force_oracle(&big),
            Err(Error::OracleLimit { .. })
        ));
        let deep = inst(2, &[1; 10]);
        assert!(matches!(
            brute_force_oracle(&deep),
            Err(Error::OracleLimit { .. })
        ));
    }

    #[test]
    fn solver_reproduces_reference_makespans() {
        let r = optimal_makespan(&inst(3, &[7, 6, 5, 5, 4, 3, 3, 0, 0])).unwrap();
        assert_eq!(r.t_star, 11);
        assert!(r.rectangular);
        assert_eq!(r.schedule.sorted_loads(), vec![11, 11, 11]);

        let r = optimal_makespan(&inst(3, &[8, 7, 6, 6, 6, 5, 5, 2, 1])).unwrap();
        assert_eq!(r.t_star, 16);

        let r = optimal_makespan(&inst(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1])).unwrap();
        assert_eq!(r.t_star, 17);
        assert_eq!(r.schedule.flowtime(), {
            let stats = inst(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1]).rank_stats();
            (1..=3).map(|rk| rk as u64 * stats.sum(rk)).sum::<u64>()
        });
    }

    #[test]
    fn solver_respects_limits_guard() {
        // m > 6 and k > 7 required for refusal
        let too_big = inst(7, &[0; 56]);
        assert!(matches!(
            optimal_makespan(&too_big),
            Err(Error::SolverLimit { .. })
        ));
        // m=7 with k=3 is allowed (k within limits)
        let wide = inst(7, &[3; 21]);
        assert_eq!(optimal_makespan(&wide).unwrap().t_star, 9);
        // custom limits
        let r = optimal_makespan_with(
            &inst(7, &[0; 56]),
            &SolverLimits {
                max_machines: 7,
                max_ranks: 8,
            },
        );
        assert_eq!(r.unwrap().t_star, 0);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(&inst(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1])), 17);
        assert_eq!(lower_bound(&inst(3, &[7, 6, 5, 5, 4, 3, 3, 0, 0])), 11);
        assert_eq!(lower_bound(&inst(1, &[5, 3])), 8);
    }

    #[test]
    fn trivial_shapes() {
        let r = optimal_makespan(&inst(1, &[5, 3])).unwrap();
        assert_eq!(r.t_star, 8);
        assert!(r.rectangular);
        let r = optimal_makespan(&inst(3, &[4, 2, 1])).unwrap();
        assert_eq!(r.t_star, 4);
        assert!(!r.rectangular);
    }

    #[test]
    fn canonical_witness_minimizes_load_vector() {
        // loads (16,15,15) beats (16,16,14) for this instance
        let r = optimal_makespan(&inst(3, &[8, 7, 6, 6, 6, 5, 5, 2, 1])).unwrap();
        assert_eq!(r.schedule.sorted_loads(), vec![16, 15, 15]);
        // rank-1 row of the canonical grid is the identity
        for i in 0..3 {
            assert_eq!(r.schedule.job_at(i, 1), i);
        }
    }

    #[test]
    fn witness_is_deterministic_across_runs() {
        let i = inst(4, &[9, 8, 8, 7, 6, 6, 5, 3, 3, 2, 1, 0]);
        let a = optimal_makespan(&i).unwrap();
        let b = optimal_makespan(&i).unwrap();
        assert_eq!(a.t_star, b.t_star);
        assert_eq!(a.schedule, b.schedule);
        // and under differently sized thread pools
        for threads in [1usize, 2, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let c = pool.install(|| optimal_makespan(&i)).unwrap();
            assert_eq!(c.t_star, a.t_star);
            assert_eq!(c.schedule, a.schedule);
        }
    }

    #[test]
    fn zero_rank_append_keeps_t_star() {
        let base = inst(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1]);
        let mut extended = base.times().to_vec();
        extended.extend_from_slice(&[0, 0, 0]);
        let ext = inst(3, &extended);
        assert_eq!(
            optimal_makespan(&base).unwrap().t_star,
            optimal_makespan(&ext).unwrap().t_star
        );
    }

    #[test]
    fn matches_oracle_on_small_instances() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let m = rng.gen_range(2usize..=3);
            let k = rng.gen_range(2usize..=4);
            let raw: Vec<u64> = (0..m * k).map(|_| rng.gen_range(0..=9)).collect();
            let i = Instance::normalize(m, &raw).unwrap();
            let fast = optimal_makespan(&i).unwrap();
            let slow = brute_force_oracle(&i).unwrap();
            assert_eq!(fast.t_star, slow, "mismatch on {:?}", i.times());
            assert_eq!(fast.schedule.makespan(), fast.t_star);
        }
    }
}
