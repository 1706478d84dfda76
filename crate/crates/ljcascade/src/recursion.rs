//! The Δχ fluctuation recursion, its stability analysis, and the exact
//! fixed-point constants.
//!
//! A disturbance Δχ about a base value χ propagates through the reduced
//! potential as Δ′ = f(χ + Δ) − f(χ) = Δ(8χ − 4 + 4Δ); the linearization
//! keeps only the slope term (8χ − 4)Δ. The recursion contracts exactly
//! where |8χ − 4| ≤ 1, i.e. on [3/8, 5/8], whose endpoints are the two
//! bifurcation values. Both map to the fixed-point level f = −15/16, and
//! their tangents intersect at the deep attractive point (1/2, −17/16),
//! one quantum of 1/8 below the fixed point and 1/16 below the well
//! bottom. All of these constants are kept as exact rationals; the
//! shifted-frame self-similar condition is solved numerically rather than
//! assumed.

use num_rational::Ratio;
use num_traits::One;
use std::fmt;
use thiserror::Error;

use crate::potential::f_reduced;
use crate::root;

/// Errors from trajectory iteration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecursionError {
    #[error("n_steps must be at least 1 (got {n_steps})")]
    InvalidStepCount { n_steps: usize },
}

/// A disturbance larger than this spans the whole stable χ band; the
/// trajectory is reported as diverged and iteration stops.
pub const DIVERGENCE_CUTOFF: f64 = 0.5;

/// Half-width of the band around |slope| = 1 classified as marginal.
pub const MARGINAL_TOL: f64 = 1e-12;

/// Slope of the reduced potential, f′(χ) = 8χ − 4.
pub fn slope(chi: f64) -> f64 {
    8.0 * chi - 4.0
}

/// Exact fluctuation step Δ′ = f(χ + Δ) − f(χ), in the cancellation-free
/// factored form Δ(8χ − 4 + 4Δ).
pub fn step_exact(chi: f64, delta: f64) -> f64 {
    delta * (slope(chi) + 4.0 * delta)
}

/// Linearized fluctuation step Δ′ = (8χ − 4)·Δ.
///
/// Differs from [`step_exact`] by exactly 4Δ².
pub fn step_linear(chi: f64, delta: f64) -> f64 {
    slope(chi) * delta
}

/// Which step rule a trajectory uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    Exact,
    Linearized,
}

impl fmt::Display for StepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepMode::Exact => write!(f, "exact"),
            StepMode::Linearized => write!(f, "linearized"),
        }
    }
}

/// How a trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    Diverged,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::Completed => write!(f, "completed"),
            Termination::Diverged => write!(f, "diverged"),
        }
    }
}

/// One recorded iteration state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStep {
    pub index: usize,
    pub delta: f64,
    /// f(base_chi + delta) at this step.
    pub f_value: f64,
}

/// The recorded evolution of a disturbance about a fixed base χ.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationTrajectory {
    pub mode: StepMode,
    pub base_chi: f64,
    pub steps: Vec<TrajectoryStep>,
    pub terminated_by: Termination,
}

/// Applies the selected step rule `n_steps` times starting from `delta0`.
///
/// Step 0 records the initial disturbance itself. Iteration stops early,
/// flagged [`Termination::Diverged`], as soon as some |Δ| exceeds
/// [`DIVERGENCE_CUTOFF`]; the offending step is kept in the record.
pub fn iterate(
    base_chi: f64,
    delta0: f64,
    n_steps: usize,
    mode: StepMode,
) -> Result<FluctuationTrajectory, RecursionError> {
    if n_steps < 1 {
        return Err(RecursionError::InvalidStepCount { n_steps });
    }
    let step: fn(f64, f64) -> f64 = match mode {
        StepMode::Exact => step_exact,
        StepMode::Linearized => step_linear,
    };
    let mut steps = Vec::with_capacity((n_steps + 1).min(1024));
    let mut delta = delta0;
    let mut terminated_by = Termination::Completed;
    for index in 0..=n_steps {
        if index > 0 {
            delta = step(base_chi, delta);
        }
        steps.push(TrajectoryStep {
            index,
            delta,
            f_value: f_reduced(base_chi + delta),
        });
        if delta.abs() > DIVERGENCE_CUTOFF {
            terminated_by = Termination::Diverged;
            break;
        }
    }
    Ok(FluctuationTrajectory {
        mode,
        base_chi,
        steps,
        terminated_by,
    })
}

/// Stability class of the recursion at a given χ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Contracting,
    Marginal,
    Expanding,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Contracting => write!(f, "contracting"),
            Stability::Marginal => write!(f, "marginal"),
            Stability::Expanding => write!(f, "expanding"),
        }
    }
}

/// Slope, contraction factor and classification at one χ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub chi: f64,
    pub slope: f64,
    /// s = |8χ − 4|, the per-step amplification of a linearized disturbance.
    pub s: f64,
    pub classification: Stability,
}

/// Classifies the recursion at `chi`: contracting for s < 1, expanding for
/// s > 1, marginal within [`MARGINAL_TOL`] of s = 1.
pub fn stability_at(chi: f64) -> StabilityReport {
    let slope = slope(chi);
    let s = slope.abs();
    let classification = if (s - 1.0).abs() <= MARGINAL_TOL {
        Stability::Marginal
    } else if s < 1.0 {
        Stability::Contracting
    } else {
        Stability::Expanding
    };
    StabilityReport {
        chi,
        slope,
        s,
        classification,
    }
}

/// The exact bifurcation constants, kept as rationals so the identity
/// tests mean something.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BifurcationConstants {
    /// χ₊₁ = 3/8, the fast branch (slope −1).
    pub chi_plus: Ratio<i64>,
    /// χ₋₁ = 5/8, the slow branch (slope +1).
    pub chi_minus: Ratio<i64>,
    /// The fixed-point level f(χ₊₁) = f(χ₋₁) = −15/16.
    pub u_c_star: Ratio<i64>,
    /// The deep attractive point (1/2, −17/16) as (χ, f).
    pub deep_point: (Ratio<i64>, Ratio<i64>),
    /// The interface-excitation quantum 1/8.
    pub qiee: Ratio<i64>,
}

/// f(χ) in exact rational arithmetic.
pub fn f_reduced_exact(chi: Ratio<i64>) -> Ratio<i64> {
    -Ratio::from_integer(4) * chi * (Ratio::one() - chi)
}

/// Converts a small rational constant to floating point.
pub fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The bifurcation constants, derived (not typed in) from χ = 3/8 and 5/8.
pub fn bifurcation_constants() -> BifurcationConstants {
    let chi_plus = Ratio::new(3, 8);
    let chi_minus = Ratio::new(5, 8);
    let u_c_star = f_reduced_exact(chi_plus);
    let deep_chi = Ratio::new(1, 2);
    let qiee = chi_minus - deep_chi;
    let deep_f = u_c_star - qiee;
    BifurcationConstants {
        chi_plus,
        chi_minus,
        u_c_star,
        deep_point: (deep_chi, deep_f),
        qiee,
    }
}

/// A solution of the shifted-frame self-similar condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarPoint {
    pub chi_shifted: f64,
    pub f_shifted: f64,
}

impl SelfSimilarPoint {
    /// Maps back from the shifted frame to the (χ, f) plane.
    pub fn unshifted(&self) -> (f64, f64) {
        let c = bifurcation_constants();
        (
            self.chi_shifted + ratio_to_f64(c.deep_point.0),
            self.f_shifted + ratio_to_f64(c.deep_point.1),
        )
    }
}

/// The reduced potential in the frame centered on the deep attractive
/// point: f′(χ′) = f(χ′ + 1/2) + 17/16 = 4χ′² + 1/16.
pub fn f_shifted(chi_shifted: f64) -> f64 {
    let c = bifurcation_constants();
    f_reduced(chi_shifted + ratio_to_f64(c.deep_point.0)) - ratio_to_f64(c.deep_point.1)
}

/// Residual of the self-similar condition ∂f′/∂χ′ = f′/χ′.
pub fn self_similar_residual(chi_shifted: f64) -> f64 {
    let c = bifurcation_constants();
    slope(chi_shifted + ratio_to_f64(c.deep_point.0)) - f_shifted(chi_shifted) / chi_shifted
}

/// Solves the self-similar condition on both sides of the origin by
/// bracketed bisection, returning the (positive, negative) solutions.
///
/// The analytic answer is χ′ = ±1/8 with f′ = 1/8; the solver is kept a
/// genuine root find so that claim stays machine-checked.
pub fn self_similar_points() -> (SelfSimilarPoint, SelfSimilarPoint) {
    let positive = root::bisect(1e-4, 0.5, 1e-15, self_similar_residual);
    let negative = root::bisect(-0.5, -1e-4, 1e-15, self_similar_residual);
    (
        SelfSimilarPoint {
            chi_shifted: positive,
            f_shifted: f_shifted(positive),
        },
        SelfSimilarPoint {
            chi_shifted: negative,
            f_shifted: f_shifted(negative),
        },
    )
}

/// Intersection of the tangents to f at the two bifurcation values.
///
/// The slopes there are ∓1, so the lines meet at (1/2, −17/16): the deep
/// attractive point, one QIEE below the fixed-point level.
pub fn tangent_intersection() -> (f64, f64) {
    let c = bifurcation_constants();
    let chi_a = ratio_to_f64(c.chi_plus);
    let chi_b = ratio_to_f64(c.chi_minus);
    let (m_a, m_b) = (slope(chi_a), slope(chi_b));
    let b_a = f_reduced(chi_a) - m_a * chi_a;
    let b_b = f_reduced(chi_b) - m_b * chi_b;
    let chi = (b_b - b_a) / (m_a - m_b);
    (chi, m_a * chi + b_a)
}
