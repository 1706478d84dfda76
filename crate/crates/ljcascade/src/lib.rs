//! Self-similar Lennard-Jones fixed-point analysis.
//!
//! The 12-6 pair potential U(q) = 4ε[(σ/q)¹² − (σ/q)⁶] collapses onto the
//! parabola f(χ) = −4χ(1 − χ) under the reduced variable χ = (σ/q)⁶. This
//! crate works out the consequences of that reduction end to end:
//!
//! - [`potential`]: curve evaluation, the χ ↔ q maps, and the two crossing
//!   radii at a given potential level (closed form plus a bisection route).
//! - [`recursion`]: the Δχ fluctuation recursion, its linearization and
//!   stability classification, the exact bifurcation constants χ = 3/8 and
//!   5/8 with fixed point −15/16, the shifted-frame self-similar condition,
//!   and the tangent construction of the deep attractive point (1/2, −17/16).
//! - [`cascade`]: the geometric hierarchy of cluster sizes
//!   σᵢ = σ₁(5/3)^((i−1)/6) whose crossing radii chain end to end, the
//!   constant Lindemann gap ratio ≈ 0.10465, the order count M = 8, and the
//!   vacancy criterion q > 2σ₁.
//! - [`profile`]: figure-ready tables: the sampled curve family with its
//!   lower envelope, the delocalization path anchors, the recursion tent
//!   path, and CSV/JSON serialization.
//! - [`verify`]: a one-shot re-derivation of every constant with pass/fail
//!   reporting, exposed through the [`cli`] front end.

pub mod cascade;
pub mod cli;
pub mod potential;
pub mod profile;
pub mod recursion;
pub mod verify;

mod root;

/// NaN-rejecting positivity check used by the argument validators.
pub(crate) fn positive(x: f64) -> bool {
    x > 0.0
}

pub use cascade::{CascadeError, CascadeLevel, EnergyLedger};
pub use potential::{f_reduced, CrossingPair, PotentialError, PotentialSpec};
pub use profile::{OutputFormat, PathPoint, ProfileError, ProfileRow, RecursionRow};
pub use recursion::{
    BifurcationConstants, FluctuationTrajectory, RecursionError, SelfSimilarPoint, Stability,
    StabilityReport, StepMode, Termination, TrajectoryStep,
};
