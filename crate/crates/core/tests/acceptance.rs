//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p flowspan-core --test acceptance --release
//! -- --nocapture` to see the lines.

use rayon::prelude::*;

use flowspan_core::{
    box_reduce, brute_force_oracle, check_monotonicity, ld_schedule, lower_bound, lpt_schedule,
    optimal_makespan, random_instance, ratio_report, reduce, search, tight_family, Instance,
    SearchMode, SearchSpace,
};

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({name}): {verdict} — {detail}");
    assert!(pass, "acceptance {number} ({name}) failed: {detail}");
}

fn p1() -> Instance {
    Instance::normalize(3, &[9, 8, 7, 7, 6, 5, 5, 2, 1]).unwrap()
}

#[test]
fn criterion_1_tight_family_exactness() {
    let mut detail = String::new();
    let mut pass = true;
    for m in 2usize..=5 {
        let rep = ratio_report(&tight_family(m).unwrap()).unwrap();
        let lhs = rep.t_ld as u128 * (4 * m as u128 - 1);
        let rhs = rep.t_star as u128 * (5 * m as u128 - 2);
        pass &= lhs == rhs && rep.tight;
        if m == 3 {
            pass &= rep.t_ld == 13 && rep.t_star == 11;
        }
        detail.push_str(&format!("m={m}: {}/{} ", rep.t_ld, rep.t_star));
    }
    report(1, "tight-family exactness", pass, detail.trim());
}

#[test]
fn criterion_2_figure_reproduction() {
    let ld_loads = ld_schedule(&p1()).schedule.sorted_loads();
    let loads_ok = ld_loads == vec![19, 16, 15];

    let reduced = reduce(&p1(), 2).unwrap();
    let reduce_ok = reduced.instance.times() == [8, 7, 6, 6, 6, 5, 5, 2, 1];

    let solved_reduced = optimal_makespan(&reduced.instance).unwrap();
    let t_star_ok = solved_reduced.t_star == 16;

    let boxed = box_reduce(&p1(), 2).unwrap();
    let box_ok = boxed.instance.times() == [9, 8, 6, 6, 6, 5, 5, 2, 1];
    let solved_boxed = optimal_makespan(&boxed.instance).unwrap();
    let box_rect_ok = solved_boxed.rectangular && solved_boxed.t_star == 16;

    report(
        2,
        "figure reproduction",
        loads_ok && reduce_ok && t_star_ok && box_ok && box_rect_ok,
        &format!(
            "LD loads {ld_loads:?}, reduce -> {:?} (t*={}), box-reduce -> {:?} (t*={}, rectangular={})",
            reduced.instance.times(),
            solved_reduced.t_star,
            boxed.instance.times(),
            solved_boxed.t_star,
            solved_boxed.rectangular
        ),
    );
}

#[test]
fn criterion_3_oracle_equivalence() {
    let trials: u64 = 10_000;
    let mismatches: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let m = 2 + (i % 2) as usize;
            let k = 2 + (i % 3) as usize;
            let inst = random_instance(m, k, 9, 0xC3 ^ i).unwrap();
            let fast = optimal_makespan(&inst).unwrap().t_star;
            let slow = brute_force_oracle(&inst).unwrap();
            u64::from(fast != slow)
        })
        .sum();
    report(
        3,
        "oracle equivalence",
        mismatches == 0,
        &format!(
            "{trials} random instances (m in 2..=3, k in 2..=4, p <= 9), {mismatches} mismatches"
        ),
    );
}

#[test]
fn criterion_4_bound_sweep() {
    let mut pass = true;
    let mut detail = String::new();

    // exhaustive: m=2 with k <= 3 and p_max <= 4, m=3 with k=2 and p_max <= 3
    let exhaustive = [(2usize, 1usize, 4u64), (2, 2, 4), (2, 3, 4), (3, 2, 3)];
    for (machines, ranks, p_max) in exhaustive {
        let out = search(&SearchSpace {
            machines,
            ranks,
            p_max,
            mode: SearchMode::Exhaustive,
        })
        .unwrap();
        pass &= out.violations.is_empty() && out.failures == 0;
        detail.push_str(&format!(
            "exhaustive m={machines} k={ranks} p<={p_max}: {}/{} violations; ",
            out.violations.len(),
            out.evaluated
        ));
    }

    // random: 625 trials per (m, k) pair over m, k in 2..=5 -> 10^4 total
    let mut random_violations = 0usize;
    let mut random_total = 0u64;
    for machines in 2usize..=5 {
        for ranks in 2usize..=5 {
            let out = search(&SearchSpace {
                machines,
                ranks,
                p_max: 9,
                mode: SearchMode::Random {
                    trials: 625,
                    seed: (machines * 31 + ranks) as u64,
                },
            })
            .unwrap();
            pass &= out.failures == 0;
            random_violations += out.violations.len();
            random_total += out.evaluated;
        }
    }
    pass &= random_violations == 0;
    detail.push_str(&format!(
        "random m,k in 2..=5 p<=9: {random_violations}/{random_total} violations"
    ));

    report(4, "bound sweep", pass, &detail);
}

#[test]
fn criterion_5_profile_monotonicity() {
    use rand::Rng;
    use rand::SeedableRng;
    let trials = 10_000u32;
    let failures: u32 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1e2 + t as u64);
            let m = rng.gen_range(2usize..=4);
            let k = rng.gen_range(2usize..=4);
            let inst = random_instance(m, k, 9, rng.gen()).unwrap();
            let rank = rng.gen_range(1..=k);
            let stats = inst.rank_stats();
            let deltas: Vec<u64> = inst
                .rank_times(rank)
                .iter()
                .map(|&p| {
                    let room = if rank >= 2 { stats.mu(rank - 1) - p } else { 3 };
                    rng.gen_range(0..=room)
                })
                .collect();
            match check_monotonicity(&inst, rank, &deltas) {
                Ok(true) => 0,
                _ => 1,
            }
        })
        .sum();
    report(
        5,
        "profile monotonicity",
        failures == 0,
        &format!("{trials} random rank perturbations, {failures} profile regressions"),
    );
}

/// Independent flowtime oracle: enumerate every rank-respecting schedule
/// and accumulate completion times directly from the reversed time layout.
#[allow(clippy::needless_range_loop)]
fn min_flowtime_by_enumeration(inst: &Instance) -> u64 {
    fn perms(m: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }
    fn rec(
        inst: &Instance,
        perms: &[Vec<usize>],
        rank: usize,
        chosen: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if rank > inst.ranks() {
            let m = inst.machines();
            let mut flowtime = 0u64;
            for machine in 0..m {
                let mut clock = 0u64;
                for r in (1..=inst.ranks()).rev() {
                    let job_pos = perms[chosen[r - 1]][machine];
                    clock += inst.rank_times(r)[job_pos];
                    flowtime += clock;
                }
            }
            *best = (*best).min(flowtime);
            return;
        }
        for p in 0..perms.len() {
            chosen.push(p);
            rec(inst, perms, rank + 1, chosen, best);
            chosen.pop();
        }
    }
    let perms = perms(inst.machines());
    let mut best = u64::MAX;
    rec(inst, &perms, 1, &mut Vec::new(), &mut best);
    best
}

#[test]
fn criterion_6_flowtime_optimality() {
    let trials: u64 = 1_000;
    let mismatches: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let m = 2 + (i % 2) as usize;
            let k = 2 + ((i / 2) % 2) as usize;
            let inst = random_instance(m, k, 6, 0xF10 + i).unwrap();
            let stats = inst.rank_stats();
            let formula: u64 = (1..=inst.ranks()).map(|r| r as u64 * stats.sum(r)).sum();
            let ld = ld_schedule(&inst).schedule.flowtime();
            let enumerated = min_flowtime_by_enumeration(&inst);
            u64::from(ld != formula || enumerated != formula)
        })
        .sum();
    report(
        6,
        "flowtime optimality",
        mismatches == 0,
        &format!("{trials} random instances, {mismatches} mismatches against enumeration"),
    );
}

/// Exhaustive makespan optimum without rank structure: all m^n assignments.
fn exhaustive_cmax(machines: usize, jobs: &[u64]) -> u64 {
    fn rec(jobs: &[u64], idx: usize, loads: &mut [u64], best: &mut u64) {
        if idx == jobs.len() {
            *best = (*best).min(loads.iter().copied().max().unwrap());
            return;
        }
        for i in 0..loads.len() {
            loads[i] += jobs[idx];
            rec(jobs, idx + 1, loads, best);
            loads[i] -= jobs[idx];
        }
    }
    let mut best = u64::MAX;
    rec(jobs, 0, &mut vec![0; machines], &mut best);
    best
}

#[test]
fn criterion_7_lpt_baseline() {
    use rand::Rng;
    use rand::SeedableRng;

    // the classic tight case: ratio exactly 7/6 = 4/3 - 1/(3*2)
    let classic_lpt = lpt_schedule(2, &[3, 3, 2, 2, 2]);
    let classic_opt = exhaustive_cmax(2, &[3, 3, 2, 2, 2]);
    let classic_ok = classic_lpt == 7 && classic_opt == 6 && classic_lpt * 6 == classic_opt * 7;

    let trials = 1_000u32;
    let violations: u32 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x397 + t as u64);
            let m = rng.gen_range(2usize..=3);
            let n = rng.gen_range(1usize..=8);
            let jobs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
            let lpt = lpt_schedule(m, &jobs) as u128;
            let opt = exhaustive_cmax(m, &jobs) as u128;
            u32::from(lpt * 3 * m as u128 > opt * (4 * m as u128 - 1))
        })
        .sum();

    report(
        7,
        "LPT baseline",
        classic_ok && violations == 0,
        &format!(
            "classic instance lpt={classic_lpt} opt={classic_opt}; {trials} random instances, {violations} bound violations"
        ),
    );
}

#[test]
fn criterion_8_lower_bound_tightness() {
    let lb = lower_bound(&p1());
    let solved = optimal_makespan(&p1()).unwrap();
    report(
        8,
        "lower-bound tightness",
        lb == 17 && solved.t_star == 17,
        &format!("lower_bound(P1)={lb}, t*(P1)={}", solved.t_star),
    );
}
