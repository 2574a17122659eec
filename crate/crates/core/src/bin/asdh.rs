use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use asdh::bench::{self, BenchPlan, Metric};
use asdh::suite::{self, ProblemId};
use asdh::{solve, SolverConfig};

#[derive(Parser)]
#[command(
    name = "asdh",
    version,
    about = "Matrix-free nonlinear least-squares solver and benchmark harness"
)]
struct Cli {
    /// Print the problem catalog and exit.
    #[arg(long)]
    list_problems: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Benchmark sweeps and performance profiles.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Solve one suite problem and print the run summary.
    Solve(SolveArgs),
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Run a sweep and write a results CSV.
    Run(RunArgs),
    /// Build performance profiles from a results CSV.
    Profile(ProfileArgs),
    /// Print the problem catalog.
    ListProblems,
}

#[derive(Args)]
struct RunArgs {
    /// Problem ids (comma separated); defaults to every implemented problem.
    #[arg(long, value_delimiter = ',')]
    problems: Vec<ProblemId>,
    /// Dimensions for the large-scale problems.
    #[arg(long, value_delimiter = ',', default_values_t = [1000, 5000, 10000])]
    dims: Vec<usize>,
    /// Solver configuration: `asdh`, `asdh-monotone` or a config file.
    /// Repeatable; defaults to both built-ins.
    #[arg(long = "config", value_delimiter = ',')]
    configs: Vec<String>,
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Runs per cell for timing (forces a serial sweep).
    #[arg(long, default_value_t = 1)]
    repeats: usize,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// niter, nfeval, nmvp, time or all.
    #[arg(long, default_value = "nmvp")]
    metric: String,
    /// `.svg` (also writes a `.csv` beside it) or `.csv`.
    #[arg(long, default_value = "profile.svg")]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: ProblemId,
    /// Number of unknowns; defaults to the problem's standard size.
    #[arg(long)]
    n: Option<usize>,
    /// Named configuration or config file; flags below override it.
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        _ if cli.list_problems => list_problems(),
        Some(Command::Bench(BenchCommand::ListProblems)) => list_problems(),
        Some(Command::Bench(BenchCommand::Run(args))) => bench_run(args),
        Some(Command::Bench(BenchCommand::Profile(args))) => bench_profile(args),
        Some(Command::Solve(args)) => solve_one(args),
        None => {
            eprintln!("nothing to do; see `asdh --help`");
            Ok(ExitCode::from(2))
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn list_problems() -> CliResult {
    println!(
        "{:<4} {:<36} {:<6} {:<18} {:<32} status",
        "id", "name", "scale", "dims", "start"
    );
    for p in suite::list_problems() {
        println!(
            "{:<4} {:<36} {:<6} {:<18} {:<32} {}",
            p.id.to_string(),
            p.name,
            p.scale.to_string(),
            p.dims.to_string(),
            p.start,
            p.status
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn bench_run(args: RunArgs) -> CliResult {
    let configs = if args.configs.is_empty() {
        BenchPlan::default().configs
    } else {
        args.configs
            .iter()
            .map(|c| bench::resolve_config(c))
            .collect::<Result<_, _>>()?
    };
    let plan = BenchPlan {
        problems: if args.problems.is_empty() {
            suite::required_ids()
        } else {
            args.problems
        },
        large_dims: args.dims,
        configs,
        repeats: args.repeats,
    };
    let records = bench::run_benchmark(&plan)?;
    bench::emit_csv(&records, &args.out)?;
    println!(
        "{:<5} {:>6} {:<14} {:>6} {:>7} {:>7} {:>10} {:>13}  status",
        "prob", "n", "solver", "niter", "nfeval", "nmvp", "time_s", "f"
    );
    for r in &records {
        println!(
            "{:<5} {:>6} {:<14} {:>6} {:>7} {:>7} {:>10.4} {:>13.6e}  {}",
            r.problem, r.n, r.solver, r.niter, r.nfeval, r.nmvp, r.time_s, r.fvalue, r.status
        );
    }
    let failed = records.iter().filter(|r| !r.converged()).count();
    println!(
        "{} runs, {} not converged; wrote {}",
        records.len(),
        failed,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn suffixed(path: &Path, metric: Metric) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or("profile".into(), |s| s.to_string_lossy());
    let ext = path
        .extension()
        .map_or("svg".into(), |s| s.to_string_lossy());
    path.with_file_name(format!("{stem}_{metric}.{ext}"))
}

fn bench_profile(args: ProfileArgs) -> CliResult {
    let records = bench::read_csv(&args.input)?;
    let metrics: Vec<(Metric, PathBuf)> = if args.metric == "all" {
        Metric::ALL
            .iter()
            .map(|&m| (m, suffixed(&args.out, m)))
            .collect()
    } else {
        vec![(args.metric.parse()?, args.out.clone())]
    };
    for (metric, out) in metrics {
        let curves = bench::performance_profile(&records, metric)?;
        for c in &curves {
            println!("{metric:<7} {:<14} rho(1) = {:.3}", c.solver, c.rho_at(1.0));
        }
        for p in bench::emit_profile(&curves, &out)? {
            println!("wrote {}", p.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve_one(args: SolveArgs) -> CliResult {
    let mut cfg: SolverConfig = match &args.config {
        Some(c) => bench::resolve_config(c)?.config,
        None => SolverConfig::default(),
    };
    let overrides = [
        (args.eps, &mut cfg.eps),
        (args.theta, &mut cfg.theta),
        (args.gamma, &mut cfg.gamma),
        (args.rho, &mut cfg.rho),
        (args.l, &mut cfg.l),
        (args.u, &mut cfg.u),
    ];
    for (v, slot) in overrides {
        if let Some(v) = v {
            *slot = v;
        }
    }
    if let Some(k) = args.kmax {
        cfg.k_max = k;
    }
    cfg.validate()?;
    let n = args
        .n
        .unwrap_or_else(|| suite::spec(args.problem).default_dim());
    let problem = suite::instantiate(args.problem, n)?;
    let r = solve(&problem, &cfg);
    println!("problem  {} (n = {}, m = {})", r.problem, r.n, r.m);
    println!("status   {}", r.status);
    println!("niter    {}", r.niter);
    println!("nfeval   {}", r.nfeval);
    println!("nmvp     {}", r.nmvp);
    println!("f        {:.10e}", r.fvalue);
    println!("|g|      {:.3e}", r.gnorm);
    println!("time_s   {:.6}", r.time_s);
    Ok(if r.converged() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
