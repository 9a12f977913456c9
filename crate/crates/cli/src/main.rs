//! Command-line front end for the bee-colony optimizer.
//!
//! Exit codes: 0 when the requested optimization reached its target (or the
//! command has no target), 1 when a run finished without reaching the
//! acceptable error, 2 on usage or configuration errors.

mod config;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use beecolony::benchmarks::{catalog, problem_by_name, ProblemSpec};
use beecolony::engine::{self, Variant};
use beecolony::error::{Error, Result};
use beecolony::harness::{self, ExperimentConfig, OutputFormat, Summary};
use beecolony::problem::ObjectiveProblem;
use beecolony::spring::{snap, spring_constraints, SpringConstants};

#[derive(Parser)]
#[command(
    name = "beecolony",
    version,
    about = "Bee-colony optimization: benchmark problems, algorithm variants, experiments, and charts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List benchmark problems and algorithm presets, or detail one problem
    List {
        /// Problem id or alias to describe in full
        problem: Option<String>,
    },
    /// Execute a single seeded optimization run
    Run {
        /// Algorithm preset (abc, gabc, meabc, rmabc, hjabc)
        #[arg(long)]
        algo: String,
        /// Problem id or alias (f1…f10, zakharov, spring, …)
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Hard evaluation budget
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        /// Colony size NP; the colony keeps NP/2 food sources
        #[arg(long, default_value_t = 50)]
        np: u32,
        /// Trial limit before scout abandonment
        #[arg(long, default_value_t = 1500)]
        limit: u32,
    },
    /// Run a batch experiment and write records plus summaries
    Experiment {
        /// Key=value config file; explicit flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated algorithm presets
        #[arg(long, value_delimiter = ',')]
        algorithms: Vec<String>,
        /// Comma-separated problem ids or aliases
        #[arg(long, value_delimiter = ',')]
        problems: Vec<String>,
        /// Independent runs per (algorithm, problem) pair
        #[arg(long)]
        runs: Option<u32>,
        /// Run r is seeded with base_seed + r
        #[arg(long)]
        base_seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        np: Option<u32>,
        #[arg(long)]
        limit: Option<u32>,
        /// Refinement interval tolerance for the memetic variants
        #[arg(long)]
        q: Option<f64>,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Records file; CSV summaries land in a sibling .summary.csv
        #[arg(long, default_value = "results.csv")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Optimize the compression-spring design and report the best design
    Spring {
        #[arg(long, default_value = "rmabc")]
        algo: String,
        #[arg(long, default_value_t = 100)]
        runs: u32,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[arg(long, default_value_t = 50)]
        np: u32,
        #[arg(long, default_value_t = 1500)]
        limit: u32,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Render grouped bar charts (one per problem) from a results file
    Plot {
        /// Results file written by `experiment` (.csv or .json)
        results: PathBuf,
        /// Summary statistic to chart: sd, me, afe, or sr
        #[arg(long, default_value = "afe")]
        measure: String,
        #[arg(long, default_value = "chart.svg")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::List { problem } => cmd_list(problem.as_deref()),
        Command::Run {
            algo,
            function,
            seed,
            budget,
            np,
            limit,
        } => cmd_run(&algo, &function, seed, budget, np, limit),
        Command::Experiment {
            config,
            algorithms,
            problems,
            runs,
            base_seed,
            budget,
            np,
            limit,
            q,
            jobs,
            out,
            format,
        } => {
            let mut experiment = ExperimentConfig::default();
            if let Some(path) = config {
                config::apply_config_file(&mut experiment, &path)?;
            }
            if !algorithms.is_empty() {
                experiment.algorithms = algorithms;
            }
            if !problems.is_empty() {
                experiment.problems = problems;
            }
            if let Some(v) = runs {
                experiment.runs = v;
            }
            if let Some(v) = base_seed {
                experiment.base_seed = v;
            }
            if let Some(v) = budget {
                experiment.budget = v;
            }
            if let Some(v) = np {
                experiment.np = v;
            }
            if let Some(v) = limit {
                experiment.limit = v;
            }
            if let Some(v) = q {
                experiment.q = v;
            }
            cmd_experiment(experiment, jobs, &out, format)
        }
        Command::Spring {
            algo,
            runs,
            base_seed,
            budget,
            np,
            limit,
            jobs,
        } => cmd_spring(&algo, runs, base_seed, budget, np, limit, jobs),
        Command::Plot {
            results,
            measure,
            out,
        } => cmd_plot(&results, &measure, &out),
    }
}

/// Scientific notation in the `1.0E-02` style used throughout the reports:
/// one-decimal mantissa and a signed two-digit exponent.
pub fn sci(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let text = format!("{value:.1E}");
    let (mantissa, exponent) = text.split_once('E').expect("exponential format");
    let (sign, digits) = match exponent.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("+", exponent),
    };
    format!("{mantissa}E{sign}{digits:0>2}")
}

/// `[lo, hi]` when every coordinate shares one interval, otherwise the
/// per-coordinate intervals joined with `×`.
fn bounds_text(problem: &dyn ObjectiveProblem) -> String {
    let bounds = problem.bounds();
    let intervals: Vec<(f64, f64)> = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(&lo, &hi)| (lo, hi))
        .collect();
    if intervals.iter().all(|&pair| pair == intervals[0]) {
        format!("[{}, {}]", intervals[0].0, intervals[0].1)
    } else {
        intervals
            .iter()
            .map(|(lo, hi)| format!("[{lo}, {hi}]"))
            .collect::<Vec<_>>()
            .join(" × ")
    }
}

fn algorithm_blurb(variant: Variant) -> &'static str {
    match variant {
        Variant::Abc => "canonical artificial bee colony",
        Variant::Gabc => "best-solution-guided moves in both bee phases",
        Variant::MeAbc => "golden-section refinement of the best solution",
        Variant::RmAbc => "randomized golden-section refinement",
        Variant::HjAbc => "rank fitness with periodic pattern search",
    }
}

fn catalog_entry(name: &str) -> Result<&'static ProblemSpec> {
    let key = name.to_ascii_lowercase();
    catalog()
        .iter()
        .find(|spec| spec.id == key || spec.aliases.contains(&key.as_str()))
        .ok_or_else(|| Error::UnknownProblem {
            name: name.to_string(),
            valid: catalog().iter().map(|s| s.id).collect::<Vec<_>>().join(", "),
        })
}

fn cmd_list(problem: Option<&str>) -> Result<ExitCode> {
    if let Some(name) = problem {
        let spec = catalog_entry(name)?;
        let problem = (spec.make)();
        println!("{}  ({})", spec.id, spec.aliases.join(", "));
        println!("  dimension  {}", problem.dimension());
        println!("  bounds     {}", bounds_text(problem.as_ref()));
        if let Some(steps) = problem.granularity() {
            let text: Vec<String> = steps
                .iter()
                .map(|s| match s {
                    Some(step) => format!("step {step}"),
                    None => "continuous".to_string(),
                })
                .collect();
            println!("  grid       {}", text.join(", "));
        }
        println!("  optimum    {}", problem.optimum_value());
        println!("  AE         {}", sci(problem.acceptable_error()));
        return Ok(ExitCode::SUCCESS);
    }

    println!("problems:");
    for spec in catalog() {
        let problem = (spec.make)();
        println!(
            "  {:<4} {:<20} D={:<3} {:<34} optimum {:<8} AE {}",
            spec.id,
            spec.aliases[0],
            problem.dimension(),
            bounds_text(problem.as_ref()),
            problem.optimum_value(),
            sci(problem.acceptable_error()),
        );
    }
    println!();
    println!("algorithms:");
    for variant in Variant::ALL {
        println!("  {:<6} {}", variant.id(), algorithm_blurb(variant));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(
    algo: &str,
    function: &str,
    seed: u64,
    budget: u64,
    np: u32,
    limit: u32,
) -> Result<ExitCode> {
    let variant = Variant::from_name(algo)?;
    let problem = problem_by_name(function)?;
    let mut variant_config = variant.config();
    variant_config.limit = limit;

    let started = Instant::now();
    let record = engine::run(problem.as_ref(), &variant_config, np, budget, seed)?;
    println!("algorithm      {}", record.algorithm);
    println!("problem        {}", record.problem);
    println!("seed           {}", record.seed);
    println!("evaluations    {}", record.evaluations);
    println!("best objective {}", sci(record.best_objective));
    println!("error          {}", sci(record.error));
    println!("success        {}", record.success);
    println!("# elapsed {:.2?}", started.elapsed());
    Ok(if record.success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn require_key(values: &[String], key: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "missing required key \"{key}\" (set it in the config file or pass --{key})"
        )));
    }
    Ok(())
}

fn cmd_experiment(
    experiment: ExperimentConfig,
    jobs: usize,
    out: &Path,
    format: FormatArg,
) -> Result<ExitCode> {
    require_key(&experiment.algorithms, "algorithms")?;
    require_key(&experiment.problems, "problems")?;

    let started = Instant::now();
    let records = harness::run_experiment(&experiment, jobs)?;
    let summaries = harness::group_summaries(&records)?;
    let format = match format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    harness::write_results(&records, &summaries, out, format)?;

    print_summary_grid(&summaries, &experiment);
    println!();
    println!("wrote records to {}", out.display());
    if format == OutputFormat::Csv {
        println!("wrote summaries to {}", harness::summary_path(out).display());
    }
    println!("# elapsed {:.2?}", started.elapsed());
    Ok(ExitCode::SUCCESS)
}

fn print_summary_grid(summaries: &[Summary], config: &ExperimentConfig) {
    let mut problems: Vec<&str> = Vec::new();
    for summary in summaries {
        if !problems.contains(&summary.problem.as_str()) {
            problems.push(&summary.problem);
        }
    }
    for problem in problems {
        let group: Vec<&Summary> = summaries.iter().filter(|s| s.problem == problem).collect();
        println!();
        println!(
            "problem {problem}  (runs {}, np {}, limit {}, budget {})",
            config.runs, config.np, config.limit, config.budget
        );
        print!("  {:<5}", "stat");
        for summary in &group {
            print!(" {:>13}", summary.algorithm);
        }
        println!();
        print!("  {:<5}", "SD");
        for summary in &group {
            print!(" {:>13}", sci(summary.sd));
        }
        println!();
        print!("  {:<5}", "ME");
        for summary in &group {
            print!(" {:>13}", sci(summary.me));
        }
        println!();
        print!("  {:<5}", "AFE");
        for summary in &group {
            print!(" {:>13.2}", summary.afe);
        }
        println!();
        print!("  {:<5}", "SR");
        for summary in &group {
            print!(" {:>13}", summary.sr);
        }
        println!();
    }
}

fn cmd_spring(
    algo: &str,
    runs: u32,
    base_seed: u64,
    budget: u64,
    np: u32,
    limit: u32,
    jobs: usize,
) -> Result<ExitCode> {
    let experiment = ExperimentConfig {
        algorithms: vec![algo.to_string()],
        problems: vec!["f10".to_string()],
        runs,
        base_seed,
        budget,
        np,
        limit,
        ..ExperimentConfig::default()
    };
    let started = Instant::now();
    let records = harness::run_experiment(&experiment, jobs)?;
    let summary = harness::summarize(&records)?;
    let best = records
        .iter()
        .min_by(|a, b| a.best_objective.total_cmp(&b.best_objective))
        .expect("campaigns run at least once");

    let design = snap(&best.best_position);
    let report = spring_constraints(&design, &SpringConstants::default());
    println!("spring design — {} over {} runs", summary.algorithm, summary.runs);
    println!("best design (seed {}):", best.seed);
    println!("  coils           {}", design.coils);
    println!("  outer diameter  {:.6}", design.outer_diameter);
    println!("  wire diameter   {:.3}", design.wire_diameter);
    println!("  objective       {:.6}", best.best_objective);
    for (i, g) in report.g.iter().enumerate() {
        println!("  g{}              {}", i + 1, sci(*g));
    }
    println!("  feasible        {}", report.feasible);
    println!(
        "summary: SD {}  ME {}  AFE {:.2}  SR {}",
        sci(summary.sd),
        sci(summary.me),
        summary.afe,
        summary.sr
    );
    println!("# elapsed {:.2?}", started.elapsed());
    Ok(if records.iter().any(|r| r.success) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_plot(results: &Path, measure: &str, out: &Path) -> Result<ExitCode> {
    let measure = plot::Measure::from_name(measure)?;
    let records = harness::read_records(results)?;
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let summaries = harness::group_summaries(&records)?;
    let svg = plot::render_bar_charts(&summaries, measure);
    std::fs::write(out, svg)?;
    println!("wrote chart to {}", out.display());
    Ok(ExitCode::SUCCESS)
}
