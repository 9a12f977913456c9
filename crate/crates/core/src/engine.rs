//! The bee-colony engine: food sources, colony state, position-update and
//! fitness rules, the employed/onlooker/scout phases, variant presets, and
//! the top-level run loop shared by every algorithm flavour.
//!
//! A colony holds `SN = NP/2` food sources. Each cycle the employed phase
//! probes one neighbour per source, the onlooker phase re-exploits sources
//! drawn proportionally to fitness, the scout phase abandons the most
//! exhausted source once it exceeds the trial limit, and (for memetic
//! variants) a refinement phase polishes the best-so-far solution. Every
//! objective evaluation anywhere charges the same hard budget.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::memetic::{self, MemeticConfig};
use crate::problem::{
    repair_position, sample_uniform_position, EvaluationBudget, ObjectiveProblem, RandomStream,
};

/// One candidate solution with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub objective: f64,
    pub fitness: f64,
    /// Consecutive failed improvement attempts; drives scout abandonment.
    pub trials: u32,
}

/// Which neighbour-move rule a phase uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    /// Single-dimension move against a random partner.
    Classic,
    /// Classic move plus attraction toward the best-so-far solution.
    GbestGuided,
}

/// How fitness derives from raw objectives for onlooker selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitnessRule {
    /// Piecewise map `1/(2f+1)` for `f ≥ 0`, `1 + |1/f|` otherwise (default).
    Branch,
    /// Older piecewise map `1/(1+f)` / `1 + |f|`, kept as a config switch.
    ClassicBranch,
    /// Linear ranking with selection pressure `sp ∈ [1, 2]`; magnitude-free.
    Rank { sp: f64 },
}

/// Which local-refinement phase runs after the scouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemeticPhase {
    None,
    /// Deterministic golden-section interval refinement of the best.
    GoldenSection,
    /// Golden-section refinement with per-iteration random point scaling.
    RandomizedGoldenSection,
    /// Pattern search seeded from population spread, every few cycles.
    HookeJeeves,
}

/// Everything distinguishing one algorithm variant from another.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantConfig {
    pub name: String,
    pub employed_rule: UpdateRule,
    pub onlooker_rule: UpdateRule,
    pub fitness_rule: FitnessRule,
    pub memetic_phase: MemeticPhase,
    /// Upper bound of the gbest attraction draw ψ ~ U[0, C].
    pub gbest_coefficient: f64,
    /// Trial count beyond which a source is abandoned to a scout.
    pub limit: u32,
    pub memetic: MemeticConfig,
}

/// The five shipped algorithm presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Canonical artificial bee colony.
    Abc,
    /// Gbest-guided ABC: both phases steer toward the best-so-far.
    Gabc,
    /// Memetic ABC: gbest onlookers plus golden-section refinement.
    MeAbc,
    /// Randomized-memetic ABC: golden-section with random point scaling.
    RmAbc,
    /// Rank-fitness ABC with periodic Hooke–Jeeves pattern search.
    HjAbc,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Abc,
        Variant::Gabc,
        Variant::MeAbc,
        Variant::RmAbc,
        Variant::HjAbc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Variant::Abc => "abc",
            Variant::Gabc => "gabc",
            Variant::MeAbc => "meabc",
            Variant::RmAbc => "rmabc",
            Variant::HjAbc => "hjabc",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        let key = name.to_ascii_lowercase();
        Variant::ALL
            .into_iter()
            .find(|v| v.id() == key)
            .ok_or_else(|| Error::UnknownAlgorithm {
                name: name.to_string(),
                valid: Variant::ALL.map(Variant::id).join(", "),
            })
    }

    /// The preset configuration for this variant, with default tuning.
    pub fn config(self) -> VariantConfig {
        let (employed, onlooker, fitness, memetic_phase) = match self {
            Variant::Abc => (
                UpdateRule::Classic,
                UpdateRule::Classic,
                FitnessRule::Branch,
                MemeticPhase::None,
            ),
            Variant::Gabc => (
                UpdateRule::GbestGuided,
                UpdateRule::GbestGuided,
                FitnessRule::Branch,
                MemeticPhase::None,
            ),
            Variant::MeAbc => (
                UpdateRule::Classic,
                UpdateRule::GbestGuided,
                FitnessRule::Branch,
                MemeticPhase::GoldenSection,
            ),
            Variant::RmAbc => (
                UpdateRule::Classic,
                UpdateRule::GbestGuided,
                FitnessRule::Branch,
                MemeticPhase::RandomizedGoldenSection,
            ),
            Variant::HjAbc => (
                UpdateRule::Classic,
                UpdateRule::Classic,
                FitnessRule::Rank { sp: 1.5 },
                MemeticPhase::HookeJeeves,
            ),
        };
        VariantConfig {
            name: self.id().to_string(),
            employed_rule: employed,
            onlooker_rule: onlooker,
            fitness_rule: fitness,
            memetic_phase,
            gbest_coefficient: 1.5,
            limit: 1500,
            memetic: MemeticConfig::default(),
        }
    }
}

/// Fitness of a raw objective under the default branch rule.
pub fn fitness_branch(objective: f64) -> f64 {
    if objective >= 0.0 {
        1.0 / (2.0 * objective + 1.0)
    } else {
        1.0 + (1.0 / objective).abs()
    }
}

/// Fitness under the older branch rule.
pub fn fitness_classic(objective: f64) -> f64 {
    if objective >= 0.0 {
        1.0 / (1.0 + objective)
    } else {
        1.0 + objective.abs()
    }
}

/// Linear rank fitness: rank 1 = worst … `np` = best, pressure `sp ∈ [1, 2]`.
/// Values span `[2 − sp, sp]`; a single-member population grades 1.
pub fn rank_fitness(rank: u32, np: u32, sp: f64) -> f64 {
    if np <= 1 {
        return 1.0;
    }
    2.0 - sp + 2.0 * (sp - 1.0) * (rank - 1) as f64 / (np - 1) as f64
}

/// Normalizes fitness values into selection probabilities; an all-zero
/// vector falls back to the uniform distribution.
pub fn selection_probabilities(fitness: &[f64]) -> Vec<f64> {
    let total: f64 = fitness.iter().sum();
    if total <= 0.0 {
        return vec![1.0 / fitness.len() as f64; fitness.len()];
    }
    fitness.iter().map(|f| f / total).collect()
}

/// The classical cycling acceptance scan: walk the sources round-robin,
/// accepting source `i` with probability `p_i`, until `visits` targets are
/// placed. Returns the target indices in placement order.
pub fn select_onlooker_targets(
    probabilities: &[f64],
    visits: usize,
    rng: &mut RandomStream,
) -> Vec<usize> {
    let mut targets = Vec::with_capacity(visits);
    let mut i = 0;
    while targets.len() < visits {
        if rng.uniform(0.0, 1.0) < probabilities[i] {
            targets.push(i);
        }
        i = (i + 1) % probabilities.len();
    }
    targets
}

/// Single-coordinate neighbour move: `v_j = x_j + φ·(x_j − partner_j)`.
pub fn classic_step(x_j: f64, partner_j: f64, phi: f64) -> f64 {
    x_j + phi * (x_j - partner_j)
}

/// Gbest-guided move adding `ψ·(best_j − x_j)` attraction toward the best.
pub fn gbest_step(x_j: f64, partner_j: f64, best_j: f64, phi: f64, psi: f64) -> f64 {
    x_j + phi * (x_j - partner_j) + psi * (best_j - x_j)
}

/// Live optimizer state for a single run.
pub struct Colony {
    pub sources: Vec<FoodSource>,
    /// Best-so-far solution; never worsens once set.
    pub best_position: Vec<f64>,
    pub best_objective: f64,
    pub budget: EvaluationBudget,
    pub rng: RandomStream,
}

impl Colony {
    pub fn source_count(&self) -> usize {
        self.sources.len()
    }

    /// Charges the budget and evaluates; `None` once the budget is spent.
    pub fn try_evaluate(&mut self, problem: &dyn ObjectiveProblem, x: &[f64]) -> Option<f64> {
        if !self.budget.charge() {
            return None;
        }
        Some(problem.evaluate(x))
    }

    /// Index of the best current source (ties → lowest index).
    pub fn best_source_index(&self) -> usize {
        let mut best = 0;
        for i in 1..self.sources.len() {
            if self.sources[i].objective < self.sources[best].objective {
                best = i;
            }
        }
        best
    }

    /// Folds any strictly better source into the best-so-far record.
    pub fn refresh_best(&mut self) {
        let idx = self.best_source_index();
        if self.sources[idx].objective < self.best_objective {
            self.best_objective = self.sources[idx].objective;
            self.best_position.clone_from(&self.sources[idx].position);
        }
    }

    /// Recomputes every source's fitness under `rule`. For rank fitness,
    /// equal objectives rank by source index (earlier index ranks worse).
    pub fn regrade(&mut self, rule: FitnessRule) {
        match rule {
            FitnessRule::Branch => {
                for s in &mut self.sources {
                    s.fitness = fitness_branch(s.objective);
                }
            }
            FitnessRule::ClassicBranch => {
                for s in &mut self.sources {
                    s.fitness = fitness_classic(s.objective);
                }
            }
            FitnessRule::Rank { sp } => {
                let np = self.sources.len() as u32;
                let mut order: Vec<usize> = (0..self.sources.len()).collect();
                order.sort_by(|&a, &b| {
                    self.sources[b]
                        .objective
                        .total_cmp(&self.sources[a].objective)
                        .then(a.cmp(&b))
                });
                for (worst_first, &idx) in order.iter().enumerate() {
                    self.sources[idx].fitness = rank_fitness(worst_first as u32 + 1, np, sp);
                }
            }
        }
    }
}

/// Seeds a colony of `NP/2` sources sampled uniformly inside the box, each
/// evaluated against the budget. Requires `NP ≥ 4` and budget for one
/// evaluation per source.
pub fn initialize_colony(
    problem: &dyn ObjectiveProblem,
    np: u32,
    mut budget: EvaluationBudget,
    mut rng: RandomStream,
    fitness_rule: FitnessRule,
) -> Result<Colony> {
    if np < 4 {
        return Err(Error::InvalidParameter(format!(
            "colony size NP must be at least 4 (got {np})"
        )));
    }
    let sn = (np / 2) as usize;
    if budget.remaining() < sn as u64 {
        return Err(Error::BudgetTooSmall {
            budget: budget.remaining(),
            needed: sn as u64,
        });
    }

    let mut sources = Vec::with_capacity(sn);
    for _ in 0..sn {
        let position = sample_uniform_position(problem, &mut rng);
        assert!(budget.charge(), "initial budget was pre-checked");
        let objective = problem.evaluate(&position);
        sources.push(FoodSource {
            position,
            objective,
            fitness: 0.0,
            trials: 0,
        });
    }

    let mut colony = Colony {
        best_position: sources[0].position.clone(),
        best_objective: f64::INFINITY,
        sources,
        budget,
        rng,
    };
    colony.refresh_best();
    colony.regrade(fitness_rule);
    Ok(colony)
}

/// Builds a repaired neighbour candidate for source `i` under `rule`.
/// Draw order: dimension `j`, partner `k ≠ i`, φ ~ U[−1, 1], then (gbest
/// only) ψ ~ U[0, c].
pub fn build_candidate(
    colony: &mut Colony,
    problem: &dyn ObjectiveProblem,
    i: usize,
    rule: UpdateRule,
    c: f64,
) -> Result<Vec<f64>> {
    let sn = colony.sources.len();
    if sn < 2 {
        return Err(Error::PartnerSelection(sn));
    }
    let dim = problem.dimension();
    let j = colony.rng.index(dim);
    let k = colony.rng.index_excluding(sn, i);
    let phi = colony.rng.uniform(-1.0, 1.0);

    let mut candidate = colony.sources[i].position.clone();
    let x_j = candidate[j];
    let partner_j = colony.sources[k].position[j];
    candidate[j] = match rule {
        UpdateRule::Classic => classic_step(x_j, partner_j, phi),
        UpdateRule::GbestGuided => {
            let psi = colony.rng.uniform(0.0, c);
            gbest_step(x_j, partner_j, colony.best_position[j], phi, psi)
        }
    };
    repair_position(problem, &mut candidate);
    Ok(candidate)
}

/// Strict-improvement greedy selection: a better candidate replaces the
/// source and resets its trials; ties and worse candidates keep the
/// incumbent and increment trials. Returns whether the candidate won.
pub fn greedy_select(source: &mut FoodSource, candidate: Vec<f64>, objective: f64) -> bool {
    if objective < source.objective {
        source.position = candidate;
        source.objective = objective;
        source.trials = 0;
        true
    } else {
        source.trials += 1;
        false
    }
}

/// Employed phase: one neighbour probe per source, greedy-selected.
/// Stops early when the budget runs out.
pub fn employed_phase(
    colony: &mut Colony,
    problem: &dyn ObjectiveProblem,
    config: &VariantConfig,
) -> Result<()> {
    for i in 0..colony.source_count() {
        if colony.budget.exhausted() {
            break;
        }
        let candidate =
            build_candidate(colony, problem, i, config.employed_rule, config.gbest_coefficient)?;
        let Some(objective) = colony.try_evaluate(problem, &candidate) else {
            break;
        };
        greedy_select(&mut colony.sources[i], candidate, objective);
    }
    colony.regrade(config.fitness_rule);
    colony.refresh_best();
    Ok(())
}

/// Onlooker phase: grades the colony, snapshots selection probabilities,
/// places `SN` visits via the cycling acceptance scan, and probes a
/// neighbour per visit. Stops early when the budget runs out.
pub fn onlooker_phase(
    colony: &mut Colony,
    problem: &dyn ObjectiveProblem,
    config: &VariantConfig,
) -> Result<()> {
    colony.regrade(config.fitness_rule);
    let fitness: Vec<f64> = colony.sources.iter().map(|s| s.fitness).collect();
    let probabilities = selection_probabilities(&fitness);
    let visits = colony.source_count();
    let targets = select_onlooker_targets(&probabilities, visits, &mut colony.rng);

    for &i in &targets {
        if colony.budget.exhausted() {
            break;
        }
        let candidate =
            build_candidate(colony, problem, i, config.onlooker_rule, config.gbest_coefficient)?;
        let Some(objective) = colony.try_evaluate(problem, &candidate) else {
            break;
        };
        greedy_select(&mut colony.sources[i], candidate, objective);
    }
    colony.regrade(config.fitness_rule);
    colony.refresh_best();
    Ok(())
}

/// Scout phase: at most one abandonment per cycle. The source with the
/// largest trial count (ties → lowest index) is resampled uniformly once its
/// trials exceed the limit and budget remains for the fresh evaluation.
pub fn scout_phase(colony: &mut Colony, problem: &dyn ObjectiveProblem, config: &VariantConfig) {
    let mut worst = 0;
    for i in 1..colony.sources.len() {
        if colony.sources[i].trials > colony.sources[worst].trials {
            worst = i;
        }
    }
    if colony.sources[worst].trials > config.limit && !colony.budget.exhausted() {
        let position = sample_uniform_position(problem, &mut colony.rng);
        if let Some(objective) = colony.try_evaluate(problem, &position) {
            colony.sources[worst] = FoodSource {
                position,
                objective,
                fitness: 0.0,
                trials: 0,
            };
        }
    }
    colony.regrade(config.fitness_rule);
    colony.refresh_best();
}

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub seed: u64,
    pub evaluations: u64,
    pub best_objective: f64,
    /// |best_objective − problem optimum|.
    pub error: f64,
    /// True when the error reached the problem's acceptable error.
    pub success: bool,
    /// In-memory only; serialized outputs carry the scalar fields above.
    #[serde(skip)]
    pub best_position: Vec<f64>,
}

fn run_finished(colony: &Colony, problem: &dyn ObjectiveProblem) -> bool {
    colony.budget.exhausted()
        || (colony.best_objective - problem.optimum_value()).abs() <= problem.acceptable_error()
}

/// Executes one full optimization run: employed → onlooker → scout →
/// memetic refinement, cycling until the budget is spent or the best error
/// reaches the problem's acceptable error (checked between phases).
pub fn run(
    problem: &dyn ObjectiveProblem,
    config: &VariantConfig,
    np: u32,
    budget: u64,
    seed: u64,
) -> Result<RunRecord> {
    let mut colony = initialize_colony(
        problem,
        np,
        EvaluationBudget::new(budget),
        RandomStream::with_seed(seed),
        config.fitness_rule,
    )?;

    let mut cycle: u64 = 0;
    while !run_finished(&colony, problem) {
        cycle += 1;
        employed_phase(&mut colony, problem, config)?;
        if run_finished(&colony, problem) {
            break;
        }
        onlooker_phase(&mut colony, problem, config)?;
        if run_finished(&colony, problem) {
            break;
        }
        scout_phase(&mut colony, problem, config);
        if run_finished(&colony, problem) {
            break;
        }
        match config.memetic_phase {
            MemeticPhase::None => {}
            MemeticPhase::GoldenSection => {
                memetic::meabc_memetic_phase(&mut colony, problem, &config.memetic);
            }
            MemeticPhase::RandomizedGoldenSection => {
                memetic::rmabc_memetic_phase(&mut colony, problem, &config.memetic);
            }
            MemeticPhase::HookeJeeves => {
                if cycle.is_multiple_of(config.memetic.hj_interval as u64) {
                    memetic::hjabc_memetic_phase(&mut colony, problem, &config.memetic);
                }
            }
        }
    }

    let error = (colony.best_objective - problem.optimum_value()).abs();
    Ok(RunRecord {
        algorithm: config.name.clone(),
        problem: problem.name().to_string(),
        seed,
        evaluations: colony.budget.used(),
        best_objective: colony.best_objective,
        error,
        success: error <= problem.acceptable_error(),
        best_position: colony.best_position,
    })
}
