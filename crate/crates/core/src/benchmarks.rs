//! Benchmark objective suite: nine classic box-constrained minimization
//! problems spanning unimodal, multimodal, separable and tightly coupled
//! landscapes, plus a registry resolving ids (`f1`…`f10`) and human aliases.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::problem::{Bounds, ObjectiveProblem, RandomStream};
use crate::spring::SpringProblem;

/// Zakharov function: `Σ x_i² + (Σ ½·i·x_i)² + (Σ ½·i·x_i)⁴`.
/// Unimodal, non-separable; optimum 0 at the origin.
pub struct Zakharov {
    bounds: Bounds,
}

impl Zakharov {
    pub fn new(dimension: usize) -> Self {
        Self {
            bounds: Bounds::uniform(dimension, -5.12, 5.12),
        }
    }
}

impl ObjectiveProblem for Zakharov {
    fn name(&self) -> &str {
        "f1"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let square_sum: f64 = x.iter().map(|v| v * v).sum();
        let weighted: f64 = x
            .iter()
            .enumerate()
            .map(|(i, v)| 0.5 * (i as f64 + 1.0) * v)
            .sum();
        square_sum + weighted.powi(2) + weighted.powi(4)
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-2
    }
}

/// Salomon function: `1 − cos(2π‖x‖) + 0.1‖x‖`.
/// Ring-shaped multimodal landscape; optimum 0 at the origin.
pub struct Salomon {
    bounds: Bounds,
}

impl Salomon {
    pub fn new(dimension: usize) -> Self {
        Self {
            bounds: Bounds::uniform(dimension, -100.0, 100.0),
        }
    }
}

impl ObjectiveProblem for Salomon {
    fn name(&self) -> &str {
        "f2"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let radius = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        1.0 - (2.0 * PI * radius).cos() + 0.1 * radius
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-1
    }
}

/// Sum of different powers: `Σ |x_i|^(i+1)` (i 1-based).
/// Separable and unimodal; optimum 0 at the origin.
pub struct SumPowers {
    bounds: Bounds,
}

impl SumPowers {
    pub fn new(dimension: usize) -> Self {
        Self {
            bounds: Bounds::uniform(dimension, -1.0, 1.0),
        }
    }
}

impl ObjectiveProblem for SumPowers {
    fn name(&self) -> &str {
        "f3"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .map(|(i, v)| v.abs().powi(i as i32 + 2))
            .sum()
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// First Levy–Montalvo-style function over `y_i = 1 + (x_i + 1)/4`:
/// `(π/D)·(10 sin²(π y₁) + Σ_{i<D} (y_i − 1)²·(1 + 10 sin²(π y_{i+1}))) + (y_D − 1)²`.
/// Optimum 0 at `x = −1⃗` (where `y = 1⃗`).
pub struct Levy1 {
    bounds: Bounds,
}

impl Levy1 {
    pub fn new(dimension: usize) -> Self {
        Self {
            bounds: Bounds::uniform(dimension, -10.0, 10.0),
        }
    }
}

impl ObjectiveProblem for Levy1 {
    fn name(&self) -> &str {
        "f4"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let d = x.len();
        let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
        let mut inner = 10.0 * (PI * y(x[0])).sin().powi(2);
        for i in 0..d - 1 {
            let yi = y(x[i]);
            let yn = y(x[i + 1]);
            inner += (yi - 1.0).powi(2) * (1.0 + 10.0 * (PI * yn).sin().powi(2));
        }
        let yd = y(x[d - 1]);
        (PI / d as f64) * inner + (yd - 1.0).powi(2)
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// Second Levy-style function, directly on `x`:
/// `0.1·(sin²(3π x₁) + Σ_{i<D} (x_i − 1)²·(1 + sin²(3π x_{i+1}))) + (x_D − 1)²·(1 + sin²(2π x_D))`.
/// Optimum 0 at `x = 1⃗`.
pub struct Levy2 {
    bounds: Bounds,
}

impl Levy2 {
    pub fn new(dimension: usize) -> Self {
        Self {
            bounds: Bounds::uniform(dimension, -5.0, 5.0),
        }
    }
}

impl ObjectiveProblem for Levy2 {
    fn name(&self) -> &str {
        "f5"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let d = x.len();
        let mut inner = (3.0 * PI * x[0]).sin().powi(2);
        for i in 0..d - 1 {
            inner += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
        }
        let last = x[d - 1];
        0.1 * inner + (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2))
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// Beale function (2-D): optimum 0 at `(3, 0.5)`.
pub struct Beale {
    bounds: Bounds,
}

impl Default for Beale {
    fn default() -> Self {
        Self {
            bounds: Bounds::uniform(2, -4.5, 4.5),
        }
    }
}

impl ObjectiveProblem for Beale {
    fn name(&self) -> &str {
        "f6"
    }
    fn dimension(&self) -> usize {
        2
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let (a, b) = (x[0], x[1]);
        (1.5 - a + a * b).powi(2)
            + (2.25 - a + a * b * b).powi(2)
            + (2.625 - a + a * b * b * b).powi(2)
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// Colville function (4-D): optimum 0 at `(1, 1, 1, 1)`.
pub struct Colville {
    bounds: Bounds,
}

impl Default for Colville {
    fn default() -> Self {
        Self {
            bounds: Bounds::uniform(4, -10.0, 10.0),
        }
    }
}

impl ObjectiveProblem for Colville {
    fn name(&self) -> &str {
        "f7"
    }
    fn dimension(&self) -> usize {
        4
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        100.0 * (x1 * x1 - x2).powi(2)
            + (x1 - 1.0).powi(2)
            + (x3 - 1.0).powi(2)
            + 90.0 * (x3 * x3 - x4).powi(2)
            + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
            + 19.8 * (x2 - 1.0) * (x4 - 1.0)
    }
    fn optimum_value(&self) -> f64 {
        0.0
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// Measurement constants of the Kowalik least-squares fit. The eleven
/// `(a_i, b_i)` pairs are the standard dataset from the global-optimization
/// literature; they are data, printed by `list f8` for auditability.
pub const KOWALIK_A: [f64; 11] = [
    0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246,
];
pub const KOWALIK_B: [f64; 11] = [
    4.0,
    2.0,
    1.0,
    0.5,
    0.25,
    1.0 / 6.0,
    1.0 / 8.0,
    1.0 / 10.0,
    1.0 / 12.0,
    1.0 / 14.0,
    1.0 / 16.0,
];

/// Value returned when a Kowalik denominator is numerically singular;
/// treated as a very poor objective rather than producing inf/NaN.
pub const KOWALIK_SINGULAR_VALUE: f64 = 1e10;

/// Kowalik function (4-D least-squares fit):
/// `Σ_i (a_i − x₁·(b_i² + b_i·x₂)/(b_i² + b_i·x₃ + x₄))²`.
/// Best known value ≈ 3.07e−4 at `(0.1928, 0.1908, 0.1231, 0.1357)`.
pub struct Kowalik {
    bounds: Bounds,
}

impl Default for Kowalik {
    fn default() -> Self {
        Self {
            bounds: Bounds::uniform(4, -5.0, 5.0),
        }
    }
}

impl ObjectiveProblem for Kowalik {
    fn name(&self) -> &str {
        "f8"
    }
    fn dimension(&self) -> usize {
        4
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        let mut sum = 0.0;
        for (a, b) in KOWALIK_A.iter().zip(&KOWALIK_B) {
            let denominator = b * b + b * x3 + x4;
            if denominator.abs() < 1e-300 {
                return KOWALIK_SINGULAR_VALUE;
            }
            let model = x1 * (b * b + b * x2) / denominator;
            sum += (a - model).powi(2);
        }
        sum
    }
    fn optimum_value(&self) -> f64 {
        3.07e-4
    }
    fn acceptable_error(&self) -> f64 {
        1e-5
    }
}

/// Seed behind the default f9 shift vector, frozen so registry instances are
/// identical across processes and builds.
pub const DEFAULT_SHIFT_SEED: u64 = 0xF9;

/// Default objective offset added to the shifted Rosenbrock sum.
pub const DEFAULT_ROSENBROCK_BIAS: f64 = 390.0;

/// Shifted Rosenbrock function over `z = x − o + 1`:
/// `Σ_{i<D} (100·(z_i² − z_{i+1})² + (z_i − 1)²) + bias`.
/// Optimum `bias` at `x = o`; `o` must lie strictly inside the box.
pub struct ShiftedRosenbrock {
    bounds: Bounds,
    shift: Vec<f64>,
    bias: f64,
}

impl ShiftedRosenbrock {
    pub fn new(dimension: usize, shift: Vec<f64>, bias: f64) -> Result<Self> {
        if shift.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: shift.len(),
            });
        }
        if shift.iter().any(|o| o.abs() >= 100.0) {
            return Err(Error::InvalidParameter(
                "shift offsets must lie strictly inside [-100, 100]".into(),
            ));
        }
        Ok(Self {
            bounds: Bounds::uniform(dimension, -100.0, 100.0),
            shift,
            bias,
        })
    }

    /// Draws the shift uniformly from `[−80, 80]^D` with a seeded stream.
    pub fn seeded(dimension: usize, seed: u64, bias: f64) -> Self {
        let mut rng = RandomStream::with_seed(seed);
        let shift = (0..dimension).map(|_| rng.uniform(-80.0, 80.0)).collect();
        Self::new(dimension, shift, bias).expect("seeded shift is interior by construction")
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }
}

impl Default for ShiftedRosenbrock {
    fn default() -> Self {
        Self::seeded(10, DEFAULT_SHIFT_SEED, DEFAULT_ROSENBROCK_BIAS)
    }
}

impl ObjectiveProblem for ShiftedRosenbrock {
    fn name(&self) -> &str {
        "f9"
    }
    fn dimension(&self) -> usize {
        self.bounds.dimension()
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let mut sum = 0.0;
        let z = |i: usize| x[i] - self.shift[i] + 1.0;
        for i in 0..x.len() - 1 {
            let zi = z(i);
            let zn = z(i + 1);
            sum += 100.0 * (zi * zi - zn).powi(2) + (zi - 1.0).powi(2);
        }
        sum + self.bias
    }
    fn optimum_value(&self) -> f64 {
        self.bias
    }
    fn acceptable_error(&self) -> f64 {
        1e-1
    }
}

/// One registry entry: canonical id, accepted aliases, and a constructor
/// producing the problem at its default dimension.
pub struct ProblemSpec {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub make: fn() -> Box<dyn ObjectiveProblem>,
}

/// The full problem catalog in id order (`f1`…`f10`).
pub fn catalog() -> &'static [ProblemSpec] {
    &[
        ProblemSpec {
            id: "f1",
            aliases: &["zakharov"],
            make: || Box::new(Zakharov::new(30)),
        },
        ProblemSpec {
            id: "f2",
            aliases: &["salomon"],
            make: || Box::new(Salomon::new(30)),
        },
        ProblemSpec {
            id: "f3",
            aliases: &["sum-powers", "sumpowers"],
            make: || Box::new(SumPowers::new(30)),
        },
        ProblemSpec {
            id: "f4",
            aliases: &["levy1"],
            make: || Box::new(Levy1::new(30)),
        },
        ProblemSpec {
            id: "f5",
            aliases: &["levy2"],
            make: || Box::new(Levy2::new(30)),
        },
        ProblemSpec {
            id: "f6",
            aliases: &["beale"],
            make: || Box::<Beale>::default(),
        },
        ProblemSpec {
            id: "f7",
            aliases: &["colville"],
            make: || Box::<Colville>::default(),
        },
        ProblemSpec {
            id: "f8",
            aliases: &["kowalik"],
            make: || Box::<Kowalik>::default(),
        },
        ProblemSpec {
            id: "f9",
            aliases: &["shifted-rosenbrock", "rosenbrock"],
            make: || Box::<ShiftedRosenbrock>::default(),
        },
        ProblemSpec {
            id: "f10",
            aliases: &["spring", "compression-spring"],
            make: || Box::<SpringProblem>::default(),
        },
    ]
}

/// Resolves a canonical id or alias (case-insensitive) to a fresh problem
/// instance at its default dimension.
pub fn problem_by_name(name: &str) -> Result<Box<dyn ObjectiveProblem>> {
    let key = name.to_ascii_lowercase();
    for spec in catalog() {
        if spec.id == key || spec.aliases.contains(&key.as_str()) {
            return Ok((spec.make)());
        }
    }
    Err(Error::UnknownProblem {
        name: name.to_string(),
        valid: catalog()
            .iter()
            .map(|s| s.id)
            .collect::<Vec<_>>()
            .join(", "),
    })
}
