//! The 12-6 pair potential, its reduced form, and level-set crossings.
//!
//! A curve is described by a [`PotentialSpec`] (diameter σ, well depth ε).
//! Under χ = (σ/q)⁶ every curve maps onto the parabola f(χ) = −4χ(1 − χ),
//! so the well bottom sits at χ = 1/2 and any level u ∈ (−ε, 0) is attained
//! at exactly two radii, recovered in closed form by inverting the
//! quadratic. A deliberately separate bisection route solves the same
//! problem branch by branch so the two can verify each other.

use thiserror::Error;

use crate::{positive, root};

/// Errors from potential evaluation and crossing solves.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("sigma and epsilon must both be positive (got sigma = {sigma}, epsilon = {epsilon})")]
    InvalidSpec { sigma: f64, epsilon: f64 },
    #[error("radius must be positive (got q = {q})")]
    NonPositiveRadius { q: f64 },
    #[error("chi must be positive (got chi = {chi})")]
    NonPositiveChi { chi: f64 },
    #[error("level {u_c} is outside the valid open interval ({lo}, 0)")]
    LevelOutOfRange { u_c: f64, lo: f64 },
    #[error("level {u_c} coincides with the well minimum; the crossing radii degenerate to q = {q}")]
    DegenerateLevel { u_c: f64, q: f64 },
}

/// One 12-6 curve: U(q) = 4ε[(σ/q)¹² − (σ/q)⁶].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    sigma: f64,
    epsilon: f64,
}

/// The two radii where a curve attains the level `u_c`.
///
/// `q_left` sits on the repulsive branch, `q_right` on the attractive one,
/// so `q_left < 2^(1/6) σ < q_right`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingPair {
    pub u_c: f64,
    pub q_left: f64,
    pub q_right: f64,
}

/// Reduced potential f(χ) = −4χ(1 − χ), with U = ε·f(χ).
///
/// Symmetric about χ = 1/2 where it attains its minimum −1.
pub fn f_reduced(chi: f64) -> f64 {
    -4.0 * chi * (1.0 - chi)
}

impl PotentialSpec {
    /// Builds a curve description; both parameters must be positive.
    pub fn new(sigma: f64, epsilon: f64) -> Result<Self, PotentialError> {
        if !positive(sigma) || !positive(epsilon) {
            return Err(PotentialError::InvalidSpec { sigma, epsilon });
        }
        Ok(Self { sigma, epsilon })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The balance radius q₀ = 2^(1/6) σ where the curve bottoms out at −ε.
    pub fn minimum_radius(&self) -> f64 {
        2.0_f64.powf(1.0 / 6.0) * self.sigma
    }

    fn u_raw(&self, q: f64) -> f64 {
        let r6 = (self.sigma / q).powi(6);
        4.0 * self.epsilon * (r6 * r6 - r6)
    }

    /// U(q) by the direct 12-6 form.
    pub fn evaluate(&self, q: f64) -> Result<f64, PotentialError> {
        if !positive(q) {
            return Err(PotentialError::NonPositiveRadius { q });
        }
        Ok(self.u_raw(q))
    }

    /// χ = (σ/q)⁶, strictly decreasing in q; χ = 1/2 at the well bottom.
    pub fn chi_of(&self, q: f64) -> Result<f64, PotentialError> {
        if !positive(q) {
            return Err(PotentialError::NonPositiveRadius { q });
        }
        Ok((self.sigma / q).powi(6))
    }

    /// Exact inverse of [`chi_of`](Self::chi_of): q = σ·χ^(−1/6).
    pub fn q_of_chi(&self, chi: f64) -> Result<f64, PotentialError> {
        if !positive(chi) {
            return Err(PotentialError::NonPositiveChi { chi });
        }
        Ok(self.sigma * chi.powf(-1.0 / 6.0))
    }

    /// Both crossing radii at the level `u_c` ∈ (−ε, 0), in closed form.
    ///
    /// Solving ε·f(χ) = u_c gives χ = (1 ± √(1 + u_c/ε))/2; the larger root
    /// maps to the repulsive-branch radius. The smaller root comes from the
    /// product of roots, −u_c/(4ε), which avoids cancellation for shallow
    /// levels.
    pub fn crossings(&self, u_c: f64) -> Result<CrossingPair, PotentialError> {
        self.validate_level(u_c)?;
        let disc = (1.0 + u_c / self.epsilon).sqrt();
        let chi_high = 0.5 * (1.0 + disc);
        let chi_low = (-u_c / self.epsilon) / (4.0 * chi_high);
        Ok(CrossingPair {
            u_c,
            q_left: self.q_of_chi(chi_high)?,
            q_right: self.q_of_chi(chi_low)?,
        })
    }

    /// Crossing radii by branchwise bisection, independent of the closed form.
    ///
    /// Brackets the repulsive branch on [10⁻³σ, q₀] and the attractive branch
    /// on [q₀, 10³σ], halving until the bracket is narrower than 10⁻¹⁴σ.
    pub fn crossings_by_bisection(&self, u_c: f64) -> Result<CrossingPair, PotentialError> {
        self.validate_level(u_c)?;
        let q0 = self.minimum_radius();
        let width_tol = 1e-14 * self.sigma;
        let residual = |q: f64| self.u_raw(q) - u_c;
        Ok(CrossingPair {
            u_c,
            q_left: root::bisect(1e-3 * self.sigma, q0, width_tol, residual),
            q_right: root::bisect(q0, 1e3 * self.sigma, width_tol, residual),
        })
    }

    fn validate_level(&self, u_c: f64) -> Result<(), PotentialError> {
        if u_c == -self.epsilon {
            return Err(PotentialError::DegenerateLevel {
                u_c,
                q: self.minimum_radius(),
            });
        }
        if !(u_c > -self.epsilon && u_c < 0.0) {
            return Err(PotentialError::LevelOutOfRange {
                u_c,
                lo: -self.epsilon,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    // High-precision reference values (frozen from a 40-digit computation).
    const Q0: f64 = 1.122462048309373; // 2^(1/6)
    const QR_FIXED: f64 = 1.177591843000481; // (8/3)^(1/6), crossing at chi = 3/8
    const QL_FIXED: f64 = 1.0814837471201989; // (8/5)^(1/6), crossing at chi = 5/8
    const CROSS_HALF_L: f64 = 1.0267425288283043; // left radius at u_c = -1/2
    const CROSS_HALF_R: f64 = 1.3773789656760046; // right radius at u_c = -1/2

    #[test]
    fn spec_rejects_non_positive_parameters() {
        assert!(matches!(
            PotentialSpec::new(0.0, 1.0),
            Err(PotentialError::InvalidSpec { .. })
        ));
        assert!(matches!(
            PotentialSpec::new(1.0, -2.0),
            Err(PotentialError::InvalidSpec { .. })
        ));
        assert!(matches!(
            PotentialSpec::new(f64::NAN, 1.0),
            Err(PotentialError::InvalidSpec { .. })
        ));
    }

    #[test]
    fn well_minimum_sits_at_q0() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert_relative_eq!(spec.minimum_radius(), Q0, max_relative = 1e-14);
        assert_relative_eq!(
            spec.evaluate(spec.minimum_radius()).unwrap(),
            -1.0,
            max_relative = 1e-12
        );

        let scaled = PotentialSpec::new(3.4, 0.238).unwrap();
        assert_relative_eq!(
            scaled.evaluate(scaled.minimum_radius()).unwrap(),
            -0.238,
            max_relative = 1e-12
        );
    }

    #[test]
    fn potential_vanishes_at_sigma() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(spec.evaluate(1.0).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn fixed_point_level_at_right_crossing() {
        // q = (8/3)^(1/6) gives chi = 3/8 and U = -15/16
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        let q = (8.0_f64 / 3.0).powf(1.0 / 6.0);
        assert_relative_eq!(spec.evaluate(q).unwrap(), -0.9375, max_relative = 1e-12);
    }

    #[test]
    fn evaluate_rejects_non_positive_radius() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert!(matches!(
            spec.evaluate(0.0),
            Err(PotentialError::NonPositiveRadius { .. })
        ));
        assert!(matches!(
            spec.evaluate(-1.0),
            Err(PotentialError::NonPositiveRadius { .. })
        ));
        assert!(matches!(
            spec.chi_of(0.0),
            Err(PotentialError::NonPositiveRadius { .. })
        ));
    }

    #[test]
    fn chi_examples() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert_eq!(spec.chi_of(1.0).unwrap(), 1.0);
        assert_relative_eq!(spec.chi_of(Q0).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(spec.chi_of(QR_FIXED).unwrap(), 0.375, max_relative = 1e-14);
    }

    #[test]
    fn q_of_chi_examples() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert_eq!(spec.q_of_chi(1.0).unwrap(), 1.0);
        assert_relative_eq!(spec.q_of_chi(0.625).unwrap(), QL_FIXED, max_relative = 1e-14);

        let wide = PotentialSpec::new(2.0, 1.0).unwrap();
        assert_relative_eq!(wide.q_of_chi(0.5).unwrap(), 2.0 * Q0, max_relative = 1e-14);

        assert!(matches!(
            spec.q_of_chi(0.0),
            Err(PotentialError::NonPositiveChi { .. })
        ));
    }

    #[test]
    fn f_reduced_fixed_values() {
        assert_eq!(f_reduced(0.5), -1.0);
        assert_eq!(f_reduced(0.375), -0.9375);
        assert_eq!(f_reduced(0.625), -0.9375);
        assert_eq!(f_reduced(1.0), 0.0);
    }

    #[test]
    fn crossings_at_fixed_point_level() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        let pair = spec.crossings(-0.9375).unwrap();
        assert_relative_eq!(pair.q_left, QL_FIXED, max_relative = 1e-12);
        assert_relative_eq!(pair.q_right, QR_FIXED, max_relative = 1e-12);
        assert!((spec.evaluate(pair.q_left).unwrap() - pair.u_c).abs() < 1e-10);
        assert!((spec.evaluate(pair.q_right).unwrap() - pair.u_c).abs() < 1e-10);
    }

    #[test]
    fn crossings_at_half_depth() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        let pair = spec.crossings(-0.5).unwrap();
        assert_relative_eq!(pair.q_left, CROSS_HALF_L, max_relative = 1e-12);
        assert_relative_eq!(pair.q_right, CROSS_HALF_R, max_relative = 1e-12);
    }

    #[test]
    fn crossings_rejects_out_of_range_levels() {
        let spec = PotentialSpec::new(1.0, 1.0).unwrap();
        assert!(matches!(
            spec.crossings(-1.0),
            Err(PotentialError::DegenerateLevel { .. })
        ));
        assert!(matches!(
            spec.crossings(0.0),
            Err(PotentialError::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            spec.crossings(-1.5),
            Err(PotentialError::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            spec.crossings(0.25),
            Err(PotentialError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn bisection_route_matches_closed_form() {
        let spec = PotentialSpec::new(1.3, 0.7).unwrap();
        for u_c in [-0.65, -0.35, -0.07] {
            let exact = spec.crossings(u_c).unwrap();
            let slow = spec.crossings_by_bisection(u_c).unwrap();
            assert_relative_eq!(exact.q_left, slow.q_left, max_relative = 1e-10);
            assert_relative_eq!(exact.q_right, slow.q_right, max_relative = 1e-10);
        }
    }

    #[test]
    fn reduced_and_direct_forms_agree_on_grid() {
        let spec = PotentialSpec::new(1.7, 0.6).unwrap();
        for k in 0..1000 {
            let q = 0.9 * spec.sigma() + k as f64 * (2.1 * spec.sigma()) / 999.0;
            let direct = spec.evaluate(q).unwrap();
            let reduced = spec.epsilon() * f_reduced(spec.chi_of(q).unwrap());
            assert_relative_eq!(direct, reduced, max_relative = 1e-12, epsilon = 1e-15);
        }
    }

    #[test]
    fn crossing_scale_covariance() {
        let unit = PotentialSpec::new(1.0, 1.0).unwrap();
        let scaled = PotentialSpec::new(2.5, 3.0).unwrap();
        for u_over_eps in [-0.9, -0.5, -0.1] {
            let a = scaled.crossings(u_over_eps * scaled.epsilon()).unwrap();
            let b = unit.crossings(u_over_eps).unwrap();
            assert_relative_eq!(a.q_left, scaled.sigma() * b.q_left, max_relative = 1e-12);
            assert_relative_eq!(a.q_right, scaled.sigma() * b.q_right, max_relative = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn chi_round_trips(exponent in -3.0f64..1.0) {
            let chi = 10.0_f64.powf(exponent);
            let spec = PotentialSpec::new(1.0, 1.0).unwrap();
            let back = spec.chi_of(spec.q_of_chi(chi).unwrap()).unwrap();
            prop_assert!((back - chi).abs() <= 1e-12 * chi);
        }

        #[test]
        fn reflection_symmetry(chi in 0.0f64..1.0) {
            prop_assert!((f_reduced(chi) - f_reduced(1.0 - chi)).abs() < 1e-15);
        }

        #[test]
        fn crossings_straddle_the_minimum(u_c in -0.999f64..-0.001) {
            let spec = PotentialSpec::new(1.0, 1.0).unwrap();
            let pair = spec.crossings(u_c).unwrap();
            let q0 = spec.minimum_radius();
            prop_assert!(pair.q_left < q0 && q0 < pair.q_right);
            prop_assert!((spec.evaluate(pair.q_left).unwrap() - u_c).abs() < 1e-10);
            prop_assert!((spec.evaluate(pair.q_right).unwrap() - u_c).abs() < 1e-10);
        }
    }
}
