//! Core contracts shared by every optimizer and problem: box bounds, the
//! objective-problem trait, the hard evaluation budget, and the seeded
//! random stream that is the sole randomness source of a run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Closed per-dimension search ranges `[lower_j, upper_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Builds bounds from explicit per-dimension limits. Both vectors must
    /// have the same non-zero length and satisfy `lower < upper` everywhere.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidParameter(format!(
                "bounds need matching non-empty limit vectors (got {} lower, {} upper)",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            // Negated so NaN limits are rejected too.
            let ordered = lo < hi;
            if !ordered {
                return Err(Error::InvalidParameter(format!(
                    "bounds dimension {j}: lower {lo} must be below upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// Same closed range `[lo, hi]` in every dimension.
    pub fn uniform(dimension: usize, lo: f64, hi: f64) -> Self {
        Self::new(vec![lo; dimension], vec![hi; dimension]).expect("valid uniform bounds")
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// True when every coordinate lies inside its closed range.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }
}

/// Clamps every coordinate into its closed range, in place. Coordinates
/// already inside are untouched.
pub fn clamp_to_bounds(position: &mut [f64], bounds: &Bounds) -> Result<()> {
    if position.len() != bounds.dimension() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dimension(),
            got: position.len(),
        });
    }
    for (v, (lo, hi)) in position
        .iter_mut()
        .zip(bounds.lower.iter().zip(&bounds.upper))
    {
        *v = v.clamp(*lo, *hi);
    }
    Ok(())
}

/// A minimization problem over a box-shaped, optionally quantized, domain.
///
/// Evaluations must be pure: the same position always yields bit-identical
/// objective values. Lower objective is better.
pub trait ObjectiveProblem: Send + Sync {
    /// Short identifier used in records and the registry (e.g. `"f1"`).
    fn name(&self) -> &str;

    fn dimension(&self) -> usize;

    fn bounds(&self) -> &Bounds;

    /// Objective value at `x`. Callers are responsible for charging the
    /// evaluation budget before calling this.
    fn evaluate(&self, x: &[f64]) -> f64;

    /// Best known objective value, the reference for error/success accounting.
    fn optimum_value(&self) -> f64;

    /// Success threshold: a run succeeds when |best − optimum| ≤ this.
    fn acceptable_error(&self) -> f64;

    /// Per-dimension grid steps for quantized dimensions (`None` entries are
    /// continuous). Positions must be snapped to the grid before evaluation;
    /// [`repair_position`] does this.
    fn granularity(&self) -> Option<&[Option<f64>]> {
        None
    }
}

/// Snaps quantized coordinates to their nearest grid value (multiples of the
/// step; ties round half away from zero, i.e. half-up on positive grids),
/// then clamps everything into bounds. A no-op for continuous positions
/// already inside the box, and exactly idempotent: quantized coordinates are
/// clamped on the integer grid (grids are assumed aligned with their
/// bounds), so a repaired position repairs to itself.
pub fn repair_position(problem: &dyn ObjectiveProblem, x: &mut [f64]) {
    let bounds = problem.bounds();
    if let Some(steps) = problem.granularity() {
        for ((v, step), (lo, hi)) in x
            .iter_mut()
            .zip(steps)
            .zip(bounds.lower.iter().zip(&bounds.upper))
        {
            if let Some(s) = step {
                let k = (*v / s).round().clamp((lo / s).round(), (hi / s).round());
                *v = k * s;
            }
        }
    }
    clamp_to_bounds(x, bounds).expect("engine positions match problem dimension");
}

/// Hard cap on objective evaluations for one run. Every evaluation — phase
/// moves, scouts, and memetic refinement alike — must charge it first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationBudget {
    max: u64,
    used: u64,
}

impl EvaluationBudget {
    pub fn new(max: u64) -> Self {
        Self { max, used: 0 }
    }

    /// Records one evaluation. Returns false — leaving the count unchanged —
    /// once the cap is reached; the caller must then stop evaluating.
    pub fn charge(&mut self) -> bool {
        if self.used >= self.max {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn remaining(&self) -> u64 {
        self.max - self.used
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.max
    }
}

/// Seeded deterministic random stream. ChaCha8 keeps the sequence identical
/// across platforms and builds, which the reproducibility guarantees rely on.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from the closed range `[lo, hi]`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform draw from `{0, 1, …, n−1}`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Uniform draw from `{0, …, n−1} \ {skip}`; `n` must be at least 2.
    pub fn index_excluding(&mut self, n: usize, skip: usize) -> usize {
        debug_assert!(n >= 2 && skip < n);
        let k = self.rng.gen_range(0..n - 1);
        if k >= skip {
            k + 1
        } else {
            k
        }
    }
}

/// Maps a unit draw `t ∈ [0, 1]` linearly onto `[lo, hi]`.
pub fn lerp(lo: f64, hi: f64, t: f64) -> f64 {
    lo + t * (hi - lo)
}

/// Samples a fresh position uniformly inside the problem's box, snapped to
/// any quantized dimensions.
pub fn sample_uniform_position(
    problem: &dyn ObjectiveProblem,
    rng: &mut RandomStream,
) -> Vec<f64> {
    let bounds = problem.bounds();
    let mut x: Vec<f64> = (0..bounds.dimension())
        .map(|j| lerp(bounds.lower()[j], bounds.upper()[j], rng.uniform(0.0, 1.0)))
        .collect();
    repair_position(problem, &mut x);
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Minimal continuous sphere used to exercise the sampling helpers.
    struct Sphere {
        bounds: Bounds,
    }

    impl Sphere {
        fn new(dimension: usize, lo: f64, hi: f64) -> Self {
            Self {
                bounds: Bounds::uniform(dimension, lo, hi),
            }
        }
    }

    impl ObjectiveProblem for Sphere {
        fn name(&self) -> &str {
            "sphere"
        }
        fn dimension(&self) -> usize {
            self.bounds.dimension()
        }
        fn bounds(&self) -> &Bounds {
            &self.bounds
        }
        fn evaluate(&self, x: &[f64]) -> f64 {
            x.iter().map(|v| v * v).sum()
        }
        fn optimum_value(&self) -> f64 {
            0.0
        }
        fn acceptable_error(&self) -> f64 {
            1e-6
        }
    }

    /// Sphere restricted to an integer grid in every dimension.
    struct GriddedSphere {
        inner: Sphere,
        steps: Vec<Option<f64>>,
    }

    impl GriddedSphere {
        fn new(dimension: usize, lo: f64, hi: f64, step: f64) -> Self {
            Self {
                inner: Sphere::new(dimension, lo, hi),
                steps: vec![Some(step); dimension],
            }
        }
    }

    impl ObjectiveProblem for GriddedSphere {
        fn name(&self) -> &str {
            "gridded-sphere"
        }
        fn dimension(&self) -> usize {
            self.inner.dimension()
        }
        fn bounds(&self) -> &Bounds {
            self.inner.bounds()
        }
        fn evaluate(&self, x: &[f64]) -> f64 {
            self.inner.evaluate(x)
        }
        fn optimum_value(&self) -> f64 {
            0.0
        }
        fn acceptable_error(&self) -> f64 {
            1e-6
        }
        fn granularity(&self) -> Option<&[Option<f64>]> {
            Some(&self.steps)
        }
    }

    #[test]
    fn bounds_reject_bad_limits() {
        assert!(Bounds::new(vec![], vec![]).is_err(), "empty bounds");
        assert!(
            Bounds::new(vec![0.0, 0.0], vec![1.0]).is_err(),
            "mismatched lengths"
        );
        assert!(
            Bounds::new(vec![1.0], vec![1.0]).is_err(),
            "degenerate range"
        );
        assert!(
            Bounds::new(vec![2.0], vec![1.0]).is_err(),
            "inverted range"
        );
    }

    #[test]
    fn clamp_pulls_outliers_to_the_nearest_edge() {
        let bounds = Bounds::uniform(3, -5.12, 5.12);
        let mut x = vec![-6.0, 0.0, 7.0];
        clamp_to_bounds(&mut x, &bounds).unwrap();
        assert_eq!(x, vec![-5.12, 0.0, 5.12]);
    }

    #[test]
    fn clamp_leaves_interior_points_alone() {
        let bounds = Bounds::uniform(2, -1.0, 1.0);
        let mut x = vec![0.25, -0.75];
        clamp_to_bounds(&mut x, &bounds).unwrap();
        assert_eq!(x, vec![0.25, -0.75]);
    }

    #[test]
    fn clamp_rejects_dimension_mismatch() {
        let bounds = Bounds::uniform(3, 0.0, 1.0);
        let mut x = vec![0.5; 2];
        match clamp_to_bounds(&mut x, &bounds) {
            Err(Error::DimensionMismatch { expected: 3, got: 2 }) => {}
            other => panic!("expected dimension mismatch, got {other:?}"),
        }
    }

    #[test]
    fn lerp_matches_hand_arithmetic() {
        assert_eq!(lerp(-1.0, 1.0, 0.5), 0.0);
        assert_eq!(lerp(-1.0, 1.0, 0.0), -1.0);
        // 0.6 + 0.25 · 2.4 = 1.2
        assert!((lerp(0.6, 3.0, 0.25) - 1.2).abs() < 1e-15);
    }

    #[test]
    fn budget_charges_up_to_its_cap_and_no_further() {
        let mut budget = EvaluationBudget::new(3);
        assert!(budget.charge());
        assert!(budget.charge());
        assert!(budget.charge());
        assert!(!budget.charge(), "fourth charge must be refused");
        assert!(!budget.charge());
        assert_eq!(budget.used(), 3);
        assert_eq!(budget.remaining(), 0);
        assert!(budget.exhausted());
    }

    #[test]
    fn zero_budget_is_exhausted_from_the_start() {
        let mut budget = EvaluationBudget::new(0);
        assert!(budget.exhausted());
        assert!(!budget.charge());
        assert_eq!(budget.used(), 0);
    }

    #[test]
    fn stream_is_deterministic_per_seed() {
        let mut a = RandomStream::with_seed(42);
        let mut b = RandomStream::with_seed(42);
        for _ in 0..1000 {
            assert_eq!(a.uniform(-1.0, 1.0), b.uniform(-1.0, 1.0));
            assert_eq!(a.index(17), b.index(17));
        }
        let mut c = RandomStream::with_seed(43);
        let differs = (0..100).any(|_| a.uniform(0.0, 1.0) != c.uniform(0.0, 1.0));
        assert!(differs, "different seeds should diverge");
    }

    #[test]
    fn uniform_draws_stay_in_the_closed_range() {
        let mut rng = RandomStream::with_seed(7);
        for _ in 0..10_000 {
            let v = rng.uniform(-2.5, 3.5);
            assert!((-2.5..=3.5).contains(&v));
        }
    }

    #[test]
    fn index_excluding_skips_exactly_the_excluded_value() {
        let mut rng = RandomStream::with_seed(11);
        let mut seen = [false; 5];
        for _ in 0..1000 {
            let k = rng.index_excluding(5, 2);
            assert_ne!(k, 2);
            seen[k] = true;
        }
        assert!(seen[0] && seen[1] && seen[3] && seen[4]);
    }

    #[test]
    fn sampled_positions_respect_bounds_and_grid() {
        let sphere = Sphere::new(4, -5.12, 5.12);
        let mut rng = RandomStream::with_seed(3);
        for _ in 0..1000 {
            let x = sample_uniform_position(&sphere, &mut rng);
            assert!(sphere.bounds().contains(&x));
        }

        let grid = GriddedSphere::new(3, 0.0, 10.0, 1.0);
        for _ in 0..1000 {
            let x = sample_uniform_position(&grid, &mut rng);
            assert!(grid.bounds().contains(&x));
            assert!(x.iter().all(|v| (v - v.round()).abs() < 1e-12));
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let sphere = Sphere::new(6, -1.0, 1.0);
        let mut a = RandomStream::with_seed(99);
        let mut b = RandomStream::with_seed(99);
        for _ in 0..100 {
            assert_eq!(
                sample_uniform_position(&sphere, &mut a),
                sample_uniform_position(&sphere, &mut b)
            );
        }
    }

    #[test]
    fn repair_snaps_before_clamping() {
        // 70.9 snaps to 71, then clamps onto the upper bound 70.
        let grid = GriddedSphere::new(1, 1.0, 70.0, 1.0);
        let mut x = vec![70.9];
        repair_position(&grid, &mut x);
        assert_eq!(x, vec![70.0]);
        let mut y = vec![0.2];
        repair_position(&grid, &mut y);
        assert_eq!(y, vec![1.0]);
    }

    proptest! {
        #[test]
        fn clamped_points_always_land_inside(
            raw in proptest::collection::vec(-1e3..1e3f64, 5)
        ) {
            let bounds = Bounds::uniform(5, -5.12, 5.12);
            let mut x = raw;
            clamp_to_bounds(&mut x, &bounds).unwrap();
            prop_assert!(bounds.contains(&x));
        }

        #[test]
        fn budget_used_never_exceeds_max(max in 0u64..200, charges in 0usize..500) {
            let mut budget = EvaluationBudget::new(max);
            for _ in 0..charges {
                budget.charge();
            }
            prop_assert!(budget.used() <= max);
            prop_assert_eq!(budget.used() == max, budget.exhausted());
        }
    }
}
