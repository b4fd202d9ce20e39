//! `flowspan` — LD scheduling analysis on parallel identical machines.
//!
//! Exit codes: 0 success, 1 bound violation found by `search` or `ratio`,
//! 2 invalid input, 3 resource limit exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use flowspan_core::{
    box_reduce_with, classify_ld, ld_schedule, lower_bound, optimal_makespan_with,
    ratio_report_with, reduce, search_with, worst_case_bound, RatioReport, Schedule, SearchMode,
    SearchOutcome, SearchSpace, SolverLimits,
};

mod format;
mod gantt;

use format::{emit_instance, parse_instance_file};

#[derive(Parser)]
#[command(
    name = "flowspan",
    version,
    about = "LD heuristic, exact makespan, and worst-case bound checks for flowtime-optimal scheduling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the LD heuristic: schedule, t_LD, and forward profiles
    Ld { file: PathBuf },
    /// Exact optimal makespan t* with a canonical witness schedule
    Opt { file: PathBuf },
    /// Compare t_LD against t* and the worst-case bound (5m-2)/(4m-1)
    Ratio { file: PathBuf },
    /// Print the worst-case bound for a machine count
    Bound {
        #[arg(long)]
        m: usize,
    },
    /// Emit the tight worst-case family instance for a machine count
    Family {
        #[arg(long)]
        m: usize,
    },
    /// Subtract one unit from rank r-1 and the lambda_r jobs of rank r
    Reduce {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Reduce, then top rank-1 jobs up to a rectangular optimum
    BoxReduce {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// LD schedule shape classifiers (max-load machines, IR1/I2 predicates)
    Classify { file: PathBuf },
    /// Sweep an instance space for bound violations and tight instances
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        pmax: u64,
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        #[arg(long)]
        random: bool,
        #[arg(long, requires = "random")]
        trials: Option<u64>,
        #[arg(long, requires = "random")]
        seed: Option<u64>,
        /// Worker threads for the sweep (defaults to all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Render the LD schedule (or the optimal one) as a Gantt chart
    Gantt {
        file: PathBuf,
        #[arg(long)]
        optimal: bool,
        #[arg(long, value_enum, default_value_t = ChartFormat::Ascii)]
        format: ChartFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartFormat {
    Ascii,
    Svg,
}

enum CliError {
    Invalid(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(2),
            CliError::Resource(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<flowspan_core::Error> for CliError {
    fn from(e: flowspan_core::Error) -> Self {
        if e.is_resource_limit() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<format::ParseError> for CliError {
    fn from(e: format::ParseError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Solver limits, overridable via FLOWSPAN_SOLVER_LIMITS="m_max,k_max".
fn solver_limits() -> Result<SolverLimits, CliError> {
    let Ok(raw) = std::env::var("FLOWSPAN_SOLVER_LIMITS") else {
        return Ok(SolverLimits::default());
    };
    let parts: Vec<&str> = raw.split(',').collect();
    let parsed = if parts.len() == 2 {
        parts[0]
            .trim()
            .parse()
            .ok()
            .zip(parts[1].trim().parse().ok())
    } else {
        None
    };
    match parsed {
        Some((max_machines, max_ranks)) => Ok(SolverLimits {
            max_machines,
            max_ranks,
        }),
        None => Err(CliError::Invalid(format!(
            "FLOWSPAN_SOLVER_LIMITS must be \"m_max,k_max\" (got {raw:?})"
        ))),
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Ld { file } => cmd_ld(&file),
        Command::Opt { file } => cmd_opt(&file),
        Command::Ratio { file } => cmd_ratio(&file),
        Command::Bound { m } => cmd_bound(m),
        Command::Family { m } => {
            let inst = flowspan_core::tight_family(m)?;
            print!("{}", emit_instance(&inst));
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce { file, rank } => {
            let inst = parse_instance_file(&file)?;
            let red = reduce(&inst, rank)?;
            print!("{}", emit_instance(&red.instance));
            eprintln!("rank partition preserved: {}", red.rank_partition_preserved);
            Ok(ExitCode::SUCCESS)
        }
        Command::BoxReduce { file, rank } => {
            let inst = parse_instance_file(&file)?;
            let red = box_reduce_with(&inst, rank, &solver_limits()?)?;
            print!("{}", emit_instance(&red.instance));
            eprintln!("rank partition preserved: {}", red.rank_partition_preserved);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { file } => cmd_classify(&file),
        Command::Search {
            m,
            k,
            pmax,
            exhaustive,
            random,
            trials,
            seed,
            jobs,
        } => cmd_search(m, k, pmax, exhaustive, random, trials, seed, jobs),
        Command::Gantt {
            file,
            optimal,
            format,
        } => cmd_gantt(&file, optimal, format),
    }
}

fn print_schedule(sched: &Schedule) {
    for machine in 0..sched.machines() {
        let mut parts = Vec::new();
        for rank in (1..=sched.ranks()).rev() {
            let job = sched.job_at(machine, rank);
            parts.push(format!(
                "j{}[{}..{})",
                job + 1,
                sched.start_at(machine, rank),
                sched.completion_at(machine, rank)
            ));
        }
        println!(
            "machine {} (load {}): {}",
            machine + 1,
            sched.load(machine),
            parts.join(" ")
        );
    }
}

fn cmd_ld(file: &Path) -> Result<ExitCode, CliError> {
    let inst = parse_instance_file(file)?;
    let result = ld_schedule(&inst);
    println!("t_LD = {}", result.makespan);
    print_schedule(&result.schedule);
    for profile in &result.profiles {
        let values: Vec<String> = profile.values().iter().map(u64::to_string).collect();
        println!(
            "profile after rank {}: {}",
            profile.rank(),
            values.join(" ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_opt(file: &Path) -> Result<ExitCode, CliError> {
    let inst = parse_instance_file(file)?;
    let solved = optimal_makespan_with(&inst, &solver_limits()?)?;
    println!("t* = {}", solved.t_star);
    println!("rectangular: {}", solved.rectangular);
    println!("nodes explored: {}", solved.nodes_explored);
    print_schedule(&solved.schedule);
    Ok(ExitCode::SUCCESS)
}

/// Rounded 6-decimal rendering of an exact ratio, computed in integers.
fn decimal(r: Ratio<u64>) -> String {
    let num = *r.numer() as u128;
    let den = *r.denom() as u128;
    let scaled = (num * 1_000_000 + den / 2) / den;
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

fn ratio_line(rep: &RatioReport) -> String {
    let status = if rep.degenerate {
        "DEGENERATE"
    } else if !rep.meets_bound {
        "VIOLATION"
    } else if rep.tight {
        "TIGHT"
    } else {
        "OK"
    };
    let ratio = match rep.ratio {
        Some(r) => format!("{}/{}", r.numer(), r.denom()),
        None => "undefined".to_string(),
    };
    format!(
        "t_LD={} t*={} ratio={} bound={}/{} {}",
        rep.t_ld,
        rep.t_star,
        ratio,
        rep.bound.numer(),
        rep.bound.denom(),
        status
    )
}

fn cmd_ratio(file: &Path) -> Result<ExitCode, CliError> {
    let inst = parse_instance_file(file)?;
    let rep = ratio_report_with(&inst, &solver_limits()?)?;
    println!("{}", ratio_line(&rep));
    if let Some(r) = rep.ratio {
        println!("ratio = {}  bound = {}", decimal(r), decimal(rep.bound));
    }
    Ok(if rep.meets_bound {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_bound(m: usize) -> Result<ExitCode, CliError> {
    if m == 0 {
        return Err(CliError::Invalid("machine count must be at least 1".into()));
    }
    let bound = worst_case_bound(m);
    println!("{}/{} = {}", bound.numer(), bound.denom(), decimal(bound));
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(file: &Path) -> Result<ExitCode, CliError> {
    let inst = parse_instance_file(file)?;
    let c = classify_ld(&inst);
    println!("t_LD = {}", c.makespan);
    println!("machines at makespan: {}", c.max_load_machines);
    match c.i_prime {
        Some(ip) => println!("unique max-load machine i': machine {}", ip + 1),
        None => println!("unique max-load machine i': none"),
    }
    println!(
        "every max-load machine carries lambda_k in rank k (IR1 shape): {}",
        c.has_lambda_k_on_max_machines
    );
    println!(
        "i' carries lambda_r in every rank r >= 2 (I2 shape): {}",
        c.i_prime_carries_all_lambdas
    );
    println!("i' rank-1 job equals mu_1: {}", c.i_prime_rank1_is_mu1);
    match c.i_double_prime {
        Some(i) => println!(
            "machine i'' with completion after rank k-1 at least that of i': machine {}",
            i + 1
        ),
        None => println!("machine i'' with completion after rank k-1 at least that of i': none"),
    }
    println!("lower bound on t*: {}", lower_bound(&inst));
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    m: usize,
    k: usize,
    pmax: u64,
    exhaustive: bool,
    random: bool,
    trials: Option<u64>,
    seed: Option<u64>,
    jobs: Option<usize>,
) -> Result<ExitCode, CliError> {
    let mode = match (exhaustive, random) {
        (true, false) => SearchMode::Exhaustive,
        (false, true) => SearchMode::Random {
            trials: trials.unwrap_or(1000),
            seed: seed.unwrap_or(0),
        },
        _ => {
            return Err(CliError::Invalid(
                "choose exactly one of --exhaustive or --random".into(),
            ))
        }
    };
    let space = SearchSpace {
        machines: m,
        ranks: k,
        p_max: pmax,
        mode,
    };
    let limits = solver_limits()?;
    let outcome = run_search(&space, &limits, jobs)?;

    match mode {
        SearchMode::Exhaustive => println!("search space: m={m} k={k} p_max={pmax} exhaustive"),
        SearchMode::Random { trials, seed } => {
            println!("search space: m={m} k={k} p_max={pmax} random trials={trials} seed={seed}")
        }
    }
    println!(
        "evaluated {} instances ({} degenerate skipped, {} solver failures)",
        outcome.evaluated, outcome.degenerate, outcome.failures
    );
    println!(
        "{} violations, {} tight instances found",
        outcome.violations.len(),
        outcome.tight.len()
    );
    for inst in outcome.tight.iter().take(10) {
        let times: Vec<String> = inst.times().iter().map(u64::to_string).collect();
        println!("tight: [{}]", times.join(" "));
    }
    if outcome.tight.len() > 10 {
        println!("... and {} more tight instances", outcome.tight.len() - 10);
    }
    if outcome.violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for inst in &outcome.violations {
            let times: Vec<String> = inst.times().iter().map(u64::to_string).collect();
            println!("VIOLATION: [{}]", times.join(" "));
        }
        Ok(ExitCode::from(1))
    }
}

#[cfg(feature = "parallel")]
fn run_search(
    space: &SearchSpace,
    limits: &SolverLimits,
    jobs: Option<usize>,
) -> Result<SearchOutcome, CliError> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Invalid(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(|| search_with(space, limits))?)
        }
        None => Ok(search_with(space, limits)?),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_search(
    space: &SearchSpace,
    limits: &SolverLimits,
    jobs: Option<usize>,
) -> Result<SearchOutcome, CliError> {
    if jobs.is_some() {
        eprintln!("note: built without the parallel feature; --jobs is ignored");
    }
    Ok(search_with(space, limits)?)
}

fn cmd_gantt(file: &Path, optimal: bool, format: ChartFormat) -> Result<ExitCode, CliError> {
    let inst = parse_instance_file(file)?;
    let sched = if optimal {
        optimal_makespan_with(&inst, &solver_limits()?)?.schedule
    } else {
        ld_schedule(&inst).schedule
    };
    match format {
        ChartFormat::Ascii => print!("{}", gantt::render_ascii(&sched)),
        ChartFormat::Svg => print!("{}", gantt::render_svg(&sched)),
    }
    Ok(ExitCode::SUCCESS)
}
