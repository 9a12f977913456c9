//! Compression-spring design problem: minimize spring wire volume subject to
//! four engineering constraints, over one integer variable (coil count), one
//! continuous diameter, and one 0.001-inch-gridded wire diameter.

use std::f64::consts::PI;

use crate::problem::{Bounds, ObjectiveProblem};

/// Physical constants of the spring case study (imperial units).
#[derive(Debug, Clone, PartialEq)]
pub struct SpringConstants {
    /// Maximum working load F_max (lb).
    pub max_working_load: f64,
    /// Allowable maximum shear stress S (psi).
    pub max_shear_stress: f64,
    /// Maximum free length l_max (in).
    pub max_free_length: f64,
    /// Allowable maximum deflection under preload σ_pm (in).
    pub max_preload_deflection: f64,
    /// Preload compression force F_p (lb).
    pub preload_force: f64,
    /// Required deflection from preload to maximum load σ_w (in).
    pub working_deflection: f64,
    /// Numerator coefficient of the spring rate K = c·x₃⁴/(8·x₁·x₂³).
    pub rate_coefficient: f64,
}

impl Default for SpringConstants {
    fn default() -> Self {
        Self {
            max_working_load: 1000.0,
            max_shear_stress: 189_000.0,
            max_free_length: 14.0,
            max_preload_deflection: 6.0,
            preload_force: 300.0,
            working_deflection: 1.25,
            rate_coefficient: 11.5e6,
        }
    }
}

/// One candidate spring: x₁ = number of coils (integer-valued), x₂ = outside
/// coil diameter (in), x₃ = wire diameter (in, on a 0.001 grid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringDesign {
    pub coils: f64,
    pub outer_diameter: f64,
    pub wire_diameter: f64,
}

pub const COILS_RANGE: (f64, f64) = (1.0, 70.0);
pub const DIAMETER_RANGE: (f64, f64) = (0.6, 3.0);
pub const WIRE_RANGE: (f64, f64) = (0.207, 0.5);
pub const WIRE_STEP: f64 = 0.001;

/// Constraint values are treated as satisfied up to this slack.
pub const FEASIBLE_TOLERANCE: f64 = 1e-9;

/// Default weight of the normalized constraint-violation penalty.
pub const PENALTY_WEIGHT: f64 = 1e3;

/// Objective reported for geometrically meaningless designs (x₂ ≤ x₃).
pub const INFEASIBLE_SENTINEL: f64 = 1e30;

/// Best known design for the default constants, and its objective.
pub const BEST_KNOWN_DESIGN: SpringDesign = SpringDesign {
    coils: 7.0,
    outer_diameter: 1.386599591,
    wire_diameter: 0.292,
};
pub const BEST_KNOWN_OBJECTIVE: f64 = 2.6254;

/// Rounds a raw 3-vector onto the design grid: coil count to the nearest
/// integer, wire diameter to the nearest 0.001; ties round half away from
/// zero (half-up on these positive grids). Each value is then clamped to its
/// range — the wire diameter on its integer grid, keeping snapping exactly
/// idempotent. The outer diameter stays continuous apart from clamping.
pub fn snap(raw: &[f64]) -> SpringDesign {
    assert_eq!(raw.len(), 3, "spring designs are 3-vectors");
    let wire_grid = (raw[2] / WIRE_STEP).round().clamp(
        (WIRE_RANGE.0 / WIRE_STEP).round(),
        (WIRE_RANGE.1 / WIRE_STEP).round(),
    );
    SpringDesign {
        coils: raw[0].round().clamp(COILS_RANGE.0, COILS_RANGE.1),
        outer_diameter: raw[1].clamp(DIAMETER_RANGE.0, DIAMETER_RANGE.1),
        wire_diameter: wire_grid * WIRE_STEP,
    }
}

/// Spring wire volume: `π²·x₂·x₃²·(x₁ + 2)/4`.
pub fn spring_objective(design: &SpringDesign) -> f64 {
    PI * PI * design.outer_diameter * design.wire_diameter.powi(2) * (design.coils + 2.0) / 4.0
}

/// The four constraint values g₁…g₄ (feasible ⇔ all ≤ 0), their normalized
/// violations, and the overall feasibility verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintReport {
    pub g: [f64; 4],
    /// `max(0, g_i)` scaled by the constraint's natural magnitude; zero for
    /// values within [`FEASIBLE_TOLERANCE`].
    pub violation: [f64; 4],
    pub feasible: bool,
}

/// Evaluates the four spring constraints:
/// g₁ = shear stress − S, g₂ = free length − l_max,
/// g₃ = preload deflection − σ_pm, g₄ = σ_w − working deflection capacity.
/// Designs with x₂ ≤ x₃ are geometrically meaningless and report maximal
/// violation instead of a numeric fault.
pub fn spring_constraints(design: &SpringDesign, constants: &SpringConstants) -> ConstraintReport {
    let (x1, x2, x3) = (design.coils, design.outer_diameter, design.wire_diameter);
    if x2 <= x3 {
        let g = [INFEASIBLE_SENTINEL; 4];
        return ConstraintReport {
            g,
            violation: g,
            feasible: false,
        };
    }

    let stress_factor = 1.0 + 0.75 * x3 / (x2 - x3) + 0.615 * x3 / x2;
    let rate = constants.rate_coefficient * x3.powi(4) / (8.0 * x1 * x2.powi(3));
    let free_length = constants.max_working_load / rate + 1.05 * (x1 + 2.0) * x3;
    let preload_deflection = constants.preload_force / rate;

    let g = [
        8.0 * stress_factor * constants.max_working_load * x2 / (PI * x3.powi(3))
            - constants.max_shear_stress,
        free_length - constants.max_free_length,
        preload_deflection - constants.max_preload_deflection,
        constants.working_deflection
            - (constants.max_working_load - constants.preload_force) / rate,
    ];

    let scales = [
        constants.max_shear_stress,
        constants.max_free_length,
        constants.max_preload_deflection,
        constants.working_deflection,
    ];
    let mut violation = [0.0; 4];
    for i in 0..4 {
        if g[i] > FEASIBLE_TOLERANCE {
            violation[i] = g[i] / scales[i];
        }
    }

    ConstraintReport {
        g,
        violation,
        feasible: g.iter().all(|gi| *gi <= FEASIBLE_TOLERANCE),
    }
}

/// Raw objective plus `weight · Σ` normalized violations; exactly the raw
/// objective for feasible designs. x₂ ≤ x₃ yields [`INFEASIBLE_SENTINEL`].
pub fn penalized_spring_objective(
    design: &SpringDesign,
    constants: &SpringConstants,
    weight: f64,
) -> f64 {
    if design.outer_diameter <= design.wire_diameter {
        return INFEASIBLE_SENTINEL;
    }
    let report = spring_constraints(design, constants);
    spring_objective(design) + weight * report.violation.iter().sum::<f64>()
}

/// The spring task wrapped as a registry problem: positions are raw
/// 3-vectors, snapped onto the design grid before every evaluation.
pub struct SpringProblem {
    constants: SpringConstants,
    bounds: Bounds,
    granularity: [Option<f64>; 3],
    penalty_weight: f64,
}

impl SpringProblem {
    pub fn new(constants: SpringConstants, penalty_weight: f64) -> Self {
        Self {
            constants,
            bounds: Bounds::new(
                vec![COILS_RANGE.0, DIAMETER_RANGE.0, WIRE_RANGE.0],
                vec![COILS_RANGE.1, DIAMETER_RANGE.1, WIRE_RANGE.1],
            )
            .expect("spring ranges are valid"),
            granularity: [Some(1.0), None, Some(WIRE_STEP)],
            penalty_weight,
        }
    }

    pub fn constants(&self) -> &SpringConstants {
        &self.constants
    }
}

impl Default for SpringProblem {
    fn default() -> Self {
        Self::new(SpringConstants::default(), PENALTY_WEIGHT)
    }
}

impl ObjectiveProblem for SpringProblem {
    fn name(&self) -> &str {
        "f10"
    }
    fn dimension(&self) -> usize {
        3
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        let design = snap(x);
        penalized_spring_objective(&design, &self.constants, self.penalty_weight)
    }
    fn optimum_value(&self) -> f64 {
        BEST_KNOWN_OBJECTIVE
    }
    fn acceptable_error(&self) -> f64 {
        1e-4
    }
    fn granularity(&self) -> Option<&[Option<f64>]> {
        Some(&self.granularity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_constants_are_pinned() {
        let c = SpringConstants::default();
        assert_eq!(c.max_working_load, 1000.0);
        assert_eq!(c.max_shear_stress, 189_000.0);
        assert_eq!(c.max_free_length, 14.0);
        assert_eq!(c.max_preload_deflection, 6.0);
        assert_eq!(c.preload_force, 300.0);
        assert_eq!(c.working_deflection, 1.25);
        assert_eq!(c.rate_coefficient, 11.5e6);
    }

    #[test]
    fn objective_matches_hand_arithmetic() {
        // π²·0.6·0.207²·(1+2)/4 ≈ 0.1903062.
        let d = SpringDesign {
            coils: 1.0,
            outer_diameter: 0.6,
            wire_diameter: 0.207,
        };
        let direct = PI * PI * 0.6 * 0.207 * 0.207 * 3.0 / 4.0;
        assert_eq!(spring_objective(&d), direct);
        assert!((spring_objective(&d) - 0.1903062).abs() < 1e-6);
    }

    #[test]
    fn objective_scales_linearly_in_diameter_and_coils() {
        let base = SpringDesign {
            coils: 8.0,
            outer_diameter: 1.0,
            wire_diameter: 0.3,
        };
        let double_diameter = SpringDesign {
            outer_diameter: 2.0,
            ..base
        };
        assert!((spring_objective(&double_diameter) - 2.0 * spring_objective(&base)).abs() < 1e-12);
        // Volume is proportional to (coils + 2).
        let more_coils = SpringDesign { coils: 18.0, ..base };
        assert!(
            (spring_objective(&more_coils) / spring_objective(&base) - 2.0).abs() < 1e-12,
            "(18+2)/(8+2) = 2"
        );
    }

    #[test]
    fn best_known_design_is_feasible_and_near_best_objective() {
        let report = spring_constraints(&BEST_KNOWN_DESIGN, &SpringConstants::default());
        assert!(report.feasible, "constraints: {:?}", report.g);
        assert!(report.g.iter().all(|g| *g <= FEASIBLE_TOLERANCE));
        // The working-deflection constraint is the active one at the optimum.
        assert!(report.g[3].abs() < 1e-5, "g4 ≈ 0, got {}", report.g[3]);
        assert!(report.g[0] < -1.0 && report.g[0] > -1000.0, "g1 comfortably slack");

        let objective = spring_objective(&BEST_KNOWN_DESIGN);
        assert!((objective - BEST_KNOWN_OBJECTIVE).abs() < 1e-3);
    }

    #[test]
    fn working_deflection_boundary_sits_at_rate_700_over_125() {
        // Choosing x₂ so the spring rate is exactly (F_max − F_p)/σ_w = 560
        // puts g₄ on its boundary.
        let c = SpringConstants::default();
        let x1 = 7.0;
        let x3: f64 = 0.292;
        let x2 = (c.rate_coefficient * x3.powi(4) / (8.0 * x1 * 560.0)).cbrt();
        let report = spring_constraints(
            &SpringDesign {
                coils: x1,
                outer_diameter: x2,
                wire_diameter: x3,
            },
            &c,
        );
        assert!(report.g[3].abs() < 1e-9, "g4 at boundary, got {}", report.g[3]);
    }

    #[test]
    fn full_preload_makes_the_deflection_constraint_infeasible() {
        // F_p = F_max leaves no working deflection: g₄ = σ_w > 0.
        let c = SpringConstants {
            preload_force: 1000.0,
            ..SpringConstants::default()
        };
        let report = spring_constraints(&BEST_KNOWN_DESIGN, &c);
        assert!(!report.feasible);
        assert!((report.g[3] - c.working_deflection).abs() < 1e-12);
    }

    #[test]
    fn wire_meeting_coil_diameter_is_maximally_infeasible() {
        let degenerate = SpringDesign {
            coils: 5.0,
            outer_diameter: 0.3,
            wire_diameter: 0.3,
        };
        let report = spring_constraints(&degenerate, &SpringConstants::default());
        assert!(!report.feasible);
        assert!(report.violation.iter().all(|v| *v >= INFEASIBLE_SENTINEL));
        assert_eq!(
            penalized_spring_objective(&degenerate, &SpringConstants::default(), PENALTY_WEIGHT),
            INFEASIBLE_SENTINEL
        );
    }

    #[test]
    fn feasible_designs_pay_no_penalty() {
        let c = SpringConstants::default();
        let penalized = penalized_spring_objective(&BEST_KNOWN_DESIGN, &c, PENALTY_WEIGHT);
        assert_eq!(penalized, spring_objective(&BEST_KNOWN_DESIGN));
    }

    #[test]
    fn free_length_violation_pays_exactly_its_normalized_excess() {
        // Pick x₂ so the free length is exactly 2·l_max = 28 while the other
        // constraints stay satisfied: l_f = x₂³·F_max/920 + 17.64 with the
        // rate K = 920/x₂³ at x₁ = 40, x₃ = 0.4.
        let c = SpringConstants::default();
        let x2 = ((28.0 - 1.05 * 42.0 * 0.4) * 920.0_f64 / 1000.0).cbrt();
        let d = SpringDesign {
            coils: 40.0,
            outer_diameter: x2,
            wire_diameter: 0.4,
        };
        let report = spring_constraints(&d, &c);
        assert!((report.g[1] - 14.0).abs() < 1e-9, "g2 = 2·l_max − l_max");
        assert!(report.g[0] < 0.0 && report.g[2] < 0.0 && report.g[3] < 0.0);
        assert!((report.violation[1] - 1.0).abs() < 1e-10);

        let penalized = penalized_spring_objective(&d, &c, PENALTY_WEIGHT);
        let raw = spring_objective(&d);
        assert!((penalized - (raw + PENALTY_WEIGHT)).abs() < 1e-6);
        // A heavier weight penalizes at least as much.
        assert!(penalized_spring_objective(&d, &c, 2.0 * PENALTY_WEIGHT) > penalized);
    }

    #[test]
    fn snap_rounds_and_clamps_onto_the_design_grid() {
        let d = snap(&[7.4, 1.0, 0.2914]);
        assert_eq!(d.coils, 7.0);
        assert_eq!(d.outer_diameter, 1.0);
        assert!((d.wire_diameter - 0.291).abs() < 1e-12);

        // Ties round half-up.
        assert_eq!(snap(&[7.5, 1.0, 0.3]).coils, 8.0);

        // Out-of-range raws clamp onto their limits.
        let clamped = snap(&[0.2, 5.0, 0.5004]);
        assert_eq!(clamped.coils, 1.0);
        assert_eq!(clamped.outer_diameter, 3.0);
        assert_eq!(clamped.wire_diameter, 0.5);
    }

    #[test]
    fn registry_problem_snaps_before_evaluating() {
        let p = SpringProblem::default();
        let exact = p.evaluate(&[
            BEST_KNOWN_DESIGN.coils,
            BEST_KNOWN_DESIGN.outer_diameter,
            BEST_KNOWN_DESIGN.wire_diameter,
        ]);
        assert_eq!(exact, spring_objective(&BEST_KNOWN_DESIGN));
        // 7.4 coils, 0.2919 wire → same snapped design (7, ·, 0.292).
        let nearby = p.evaluate(&[7.4, BEST_KNOWN_DESIGN.outer_diameter, 0.2919]);
        assert_eq!(nearby, exact);
        assert_eq!(p.optimum_value(), BEST_KNOWN_OBJECTIVE);
        assert_eq!(p.acceptable_error(), 1e-4);
        assert_eq!(
            p.granularity(),
            Some([Some(1.0), None, Some(WIRE_STEP)].as_slice())
        );
    }

    proptest! {
        #[test]
        fn snap_is_idempotent(
            coils in -10.0..80.0f64,
            diameter in 0.0..4.0f64,
            wire in 0.0..1.0f64,
        ) {
            let once = snap(&[coils, diameter, wire]);
            let twice = snap(&[once.coils, once.outer_diameter, once.wire_diameter]);
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn penalized_objective_never_undershoots_raw(
            coils in 1.0..70.0f64,
            diameter in 0.6..3.0f64,
            wire in 0.207..0.5f64,
        ) {
            let d = snap(&[coils, diameter, wire]);
            let c = SpringConstants::default();
            prop_assert!(
                penalized_spring_objective(&d, &c, PENALTY_WEIGHT) >= spring_objective(&d)
            );
        }
    }
}
