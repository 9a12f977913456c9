//! Artificial-bee-colony optimization over box-constrained problems.
//!
//! The crate ships five algorithm variants sharing one engine — the
//! canonical colony, a gbest-guided flavour, two golden-section memetic
//! flavours (deterministic and randomized), and a rank-fitness flavour
//! with Hooke–Jeeves pattern search — together with a ten-problem
//! benchmark suite (nine analytic functions plus a constrained
//! compression-spring design task), and a seeded experiment harness that
//! reduces batches of runs to the usual reporting statistics.
//!
//! Every run is fully reproducible: a run is identified by (algorithm,
//! problem, seed, budget, colony size), and identical inputs yield
//! identical outputs on every platform.
//!
//! ```
//! use beecolony::benchmarks::problem_by_name;
//! use beecolony::engine::{self, Variant};
//!
//! let problem = problem_by_name("beale").unwrap();
//! let config = Variant::RmAbc.config();
//! let record = engine::run(problem.as_ref(), &config, 50, 50_000, 7).unwrap();
//! assert!(record.success, "final error {:.3e}", record.error);
//! ```

pub mod benchmarks;
pub mod engine;
pub mod error;
pub mod harness;
pub mod memetic;
pub mod problem;
pub mod spring;

pub use engine::{RunRecord, Variant, VariantConfig};
pub use error::{Error, Result};
pub use harness::{ExperimentConfig, OutputFormat, Summary};
pub use problem::{Bounds, EvaluationBudget, ObjectiveProblem, RandomStream};
