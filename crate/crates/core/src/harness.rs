//! Batch experiment harness: runs seeded campaigns of (algorithm × problem
//! × run) tasks, reduces them to the usual reporting statistics, compares
//! algorithms, and moves results through CSV or JSON files.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::problem_by_name;
use crate::engine::{self, RunRecord, Variant};
use crate::error::{Error, Result};

/// A full experiment specification.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Algorithm names (`abc`, `gabc`, `meabc`, `rmabc`, `hjabc`).
    pub algorithms: Vec<String>,
    /// Problem names or aliases (`f1` … `f10`, `beale`, `spring`, …).
    pub problems: Vec<String>,
    /// Independent runs per (algorithm, problem) pair.
    pub runs: u32,
    /// Run `r` (1-based) is seeded with `base_seed + r`.
    pub base_seed: u64,
    /// Hard evaluation budget per run.
    pub budget: u64,
    /// Colony size NP; the colony keeps NP/2 food sources.
    pub np: u32,
    /// Trial limit before a source is abandoned to a scout.
    pub limit: u32,
    /// Refinement interval tolerance for the memetic variants.
    pub q: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            problems: Vec::new(),
            runs: 100,
            base_seed: 0,
            budget: 200_000,
            np: 50,
            limit: 1500,
            q: 0.01,
        }
    }
}

/// Reduced statistics over one (algorithm, problem) record group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub algorithm: String,
    pub problem: String,
    pub runs: u32,
    /// Population standard deviation of the final errors (failures included).
    pub sd: f64,
    /// Mean of the final errors.
    pub me: f64,
    /// Average function evaluations per run.
    pub afe: f64,
    /// Success rate as an integer percentage, rounded to nearest.
    pub sr: u32,
}

/// Outcome of an algorithm-versus-algorithm comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// The subject is better.
    Plus,
    /// The subject is worse or tied.
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Lexicographic comparison of `subject` against `other` on the same
/// problem: higher success rate wins; on ties, lower average evaluations;
/// on ties again, lower mean error. Remaining ties count against the
/// subject.
pub fn compare_sign(subject: &Summary, other: &Summary) -> Sign {
    if subject.sr != other.sr {
        return if subject.sr > other.sr { Sign::Plus } else { Sign::Minus };
    }
    if subject.afe != other.afe {
        return if subject.afe < other.afe { Sign::Plus } else { Sign::Minus };
    }
    if subject.me < other.me {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn summarize_refs(records: &[&RunRecord]) -> Result<Summary> {
    let Some(first) = records.first() else {
        return Err(Error::EmptyRecords);
    };
    if records
        .iter()
        .any(|r| r.algorithm != first.algorithm || r.problem != first.problem)
    {
        return Err(Error::InvalidParameter(
            "summaries reduce one (algorithm, problem) group at a time".into(),
        ));
    }
    let n = records.len() as f64;
    let me = records.iter().map(|r| r.error).sum::<f64>() / n;
    let variance = records
        .iter()
        .map(|r| (r.error - me).powi(2))
        .sum::<f64>()
        / n;
    let afe = records.iter().map(|r| r.evaluations as f64).sum::<f64>() / n;
    let successes = records.iter().filter(|r| r.success).count() as f64;
    Ok(Summary {
        algorithm: first.algorithm.clone(),
        problem: first.problem.clone(),
        runs: records.len() as u32,
        sd: variance.sqrt(),
        me,
        afe,
        sr: (100.0 * successes / n).round() as u32,
    })
}

/// Reduces one (algorithm, problem) record group to its statistics.
pub fn summarize(records: &[RunRecord]) -> Result<Summary> {
    let refs: Vec<&RunRecord> = records.iter().collect();
    summarize_refs(&refs)
}

/// Groups records by (algorithm, problem) in first-appearance order and
/// summarizes each group.
pub fn group_summaries(records: &[RunRecord]) -> Result<Vec<Summary>> {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    let mut groups: Vec<Vec<&RunRecord>> = Vec::new();
    for record in records {
        let key = (record.algorithm.as_str(), record.problem.as_str());
        match keys.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(record),
            None => {
                keys.push(key);
                groups.push(vec![record]);
            }
        }
    }
    groups.iter().map(|group| summarize_refs(group)).collect()
}

fn validate(config: &ExperimentConfig) -> Result<()> {
    if config.algorithms.is_empty() {
        return Err(Error::InvalidParameter("no algorithms selected".into()));
    }
    if config.problems.is_empty() {
        return Err(Error::InvalidParameter("no problems selected".into()));
    }
    if config.runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    if config.np < 4 {
        return Err(Error::InvalidParameter(format!(
            "colony size NP must be at least 4 (got {})",
            config.np
        )));
    }
    let needed = u64::from(config.np / 2);
    if config.budget < needed {
        return Err(Error::BudgetTooSmall {
            budget: config.budget,
            needed,
        });
    }
    // Negated so NaN is rejected along with zero and negatives.
    let q_is_positive = config.q > 0.0;
    if !q_is_positive {
        return Err(Error::InvalidParameter(format!(
            "refinement tolerance q must be positive (got {})",
            config.q
        )));
    }
    for name in &config.algorithms {
        Variant::from_name(name)?;
    }
    for name in &config.problems {
        problem_by_name(name)?;
    }
    Ok(())
}

/// Runs the full campaign: every algorithm on every problem for `runs`
/// seeded repetitions (run `r` uses seed `base_seed + r`). Records come
/// back in task order — algorithms outermost, then problems, then runs —
/// regardless of `jobs`. `jobs` > 1 runs tasks on that many threads;
/// `jobs` = 0 uses all available cores.
pub fn run_experiment(config: &ExperimentConfig, jobs: usize) -> Result<Vec<RunRecord>> {
    validate(config)?;

    let mut tasks: Vec<(Variant, &str, u64)> = Vec::new();
    for algorithm in &config.algorithms {
        let variant = Variant::from_name(algorithm)?;
        for problem in &config.problems {
            for r in 1..=u64::from(config.runs) {
                tasks.push((variant, problem.as_str(), config.base_seed.wrapping_add(r)));
            }
        }
    }

    let execute = |&(variant, problem_name, seed): &(Variant, &str, u64)| -> Result<RunRecord> {
        let problem = problem_by_name(problem_name)?;
        let mut variant_config = variant.config();
        variant_config.limit = config.limit;
        variant_config.memetic.epsilon = config.q;
        engine::run(problem.as_ref(), &variant_config, config.np, config.budget, seed)
    };

    if jobs == 1 {
        tasks.iter().map(execute).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(execute).collect())
    }
}

/// File layout for results on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Records at the given path plus a sibling `.summary.csv` file.
    Csv,
    /// One JSON document holding both records and summaries.
    Json,
}

const RECORD_HEADERS: [&str; 7] = [
    "algorithm",
    "problem",
    "seed",
    "evaluations",
    "best_objective",
    "error",
    "success",
];

const SUMMARY_HEADERS: [&str; 7] = ["algorithm", "problem", "runs", "sd", "me", "afe", "sr"];

#[derive(Serialize, Deserialize)]
struct ResultsFile {
    records: Vec<RunRecord>,
    summaries: Vec<Summary>,
}

fn write_csv<T: Serialize>(path: &Path, headers: &[&str], rows: &[T]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    writer.write_record(headers)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Sibling path carrying the per-group summaries next to a records CSV.
pub fn summary_path(records_path: &Path) -> std::path::PathBuf {
    records_path.with_extension("summary.csv")
}

/// Writes records and their summaries. CSV output lands in two files
/// (records at `path`, summaries at [`summary_path`]); JSON output is a
/// single document holding both.
pub fn write_results(
    records: &[RunRecord],
    summaries: &[Summary],
    path: &Path,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            write_csv(path, &RECORD_HEADERS, records)?;
            write_csv(&summary_path(path), &SUMMARY_HEADERS, summaries)?;
        }
        OutputFormat::Json => {
            let file = File::create(path)?;
            serde_json::to_writer_pretty(
                file,
                &ResultsFile {
                    records: records.to_vec(),
                    summaries: summaries.to_vec(),
                },
            )?;
        }
    }
    Ok(())
}

/// Reads records back from a results file written by [`write_results`];
/// the format is chosen by the `.json` extension, anything else parses as
/// CSV. Positions are not stored on disk, so read-back records carry empty
/// best positions.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        let file = BufReader::new(File::open(path)?);
        let parsed: ResultsFile = serde_json::from_reader(file)?;
        return Ok(parsed.records);
    }
    let mut reader = csv::Reader::from_path(path)?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}
