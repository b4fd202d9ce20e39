//! Flowtime-optimal makespan scheduling on parallel identical machines.
//!
//! Given `m` identical machines and `n` jobs with integer processing times,
//! the flowtime-makespan (FM) problem asks for the schedule minimizing the
//! makespan `C_max` among all schedules that minimize the total flowtime
//! `sum C_j`. Flowtime-optimal schedules are exactly the rank-respecting
//! ones: sort the times nonincreasing, split them into ranks of `m` jobs,
//! and run one job of each rank per machine with ranks in decreasing order
//! and no idle time.
//!
//! This crate provides:
//!
//! * [`Instance`] / [`Schedule`] — normalized instances and rank-indexed
//!   schedules, all in exact integer arithmetic ([`instance`], [`schedule`]);
//! * [`ld_schedule`] — the LD heuristic (largest job of each rank onto the
//!   smallest profile entry), plus Graham list-scheduling and LPT baselines
//!   ([`ld`]);
//! * [`optimal_makespan`] — exact minimum makespan `t*` over the rank-
//!   respecting schedules with a deterministic canonical witness, an
//!   independent [`brute_force_oracle`], and analytic lower bounds
//!   ([`exact`]);
//! * [`reduce`] / [`box_reduce`] — instance-shrinking transforms, the boxed
//!   variant yielding a rectangular optimum by construction ([`transforms`]);
//! * [`tight_family`] — the instance family achieving the worst-case LD
//!   ratio `(5m-2)/(4m-1)` exactly, plus random sampling and exhaustive
//!   enumeration ([`generate`]);
//! * [`ratio_report`] / [`search`] — exact rational bound verification and a
//!   sweep harness over instance spaces ([`analyze`]).
//!
//! With the default `parallel` feature the sweep harness and the first
//! branching level of the exact solver distribute over rayon; results are
//! identical to the sequential build.

pub mod analyze;
pub mod error;
pub mod exact;
pub mod generate;
pub mod instance;
pub mod ld;
pub mod schedule;
pub mod transforms;

pub use analyze::{
    check_monotonicity, classify_ld, ratio_report, ratio_report_with, search, search_sequential,
    search_sequential_with, search_with, worst_case_bound, LdClassification, RatioReport,
    SearchMode, SearchOutcome, SearchSpace,
};
pub use error::{Error, Result};
pub use exact::{
    brute_force_oracle, lower_bound, optimal_makespan, optimal_makespan_with, SolveResult,
    SolverLimits,
};
pub use generate::{
    enumerate_instances, enumerate_instances_capped, enumeration_count, random_instance,
    tight_family, InstanceEnumeration, DEFAULT_ENUMERATION_CAP,
};
pub use instance::{Instance, RankStats};
pub use ld::{ld_schedule, list_schedule, lpt_schedule, profile_after, LdResult};
pub use schedule::{Profile, Schedule};
pub use transforms::{box_reduce, box_reduce_with, reduce, Reduced};
