//! The self-similar cluster hierarchy and its derived constants.
//!
//! Requiring every consecutive pair of curves to cross at the fixed-point
//! level pins the geometry completely: χ = 3/8 at the right crossing and
//! 5/8 at the left one force σᵢ = σ₁(5/3)^((i−1)/6), qᵢ,R = σᵢ(8/3)^(1/6)
//! and qᵢ,L = σᵢ(8/5)^(1/6), with qᵢ₊₁,L = qᵢ,R chaining the levels end to
//! end. The gap-to-size ratio (qᵢ₊₁,R − qᵢ,R)/σᵢ is then the same constant
//! for every order, and the right crossing first exceeds 2σ₁ at order 8.

use num_rational::Ratio;
use thiserror::Error;

use crate::positive;
use crate::potential::{PotentialError, PotentialSpec};
use crate::recursion::{bifurcation_constants, ratio_to_f64};

/// Upper bound on the number of orders a single build may request.
pub const MAX_ORDERS: usize = 64;

/// Errors from cascade construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CascadeError {
    #[error("sigma1 and eps1 must both be positive (got sigma1 = {sigma1}, eps1 = {eps1})")]
    InvalidParameters { sigma1: f64, eps1: f64 },
    #[error("max_orders must lie in 1..={max} (got {requested})")]
    OrdersOutOfRange { requested: usize, max: usize },
}

/// One order of the hierarchy.
///
/// `gap_prev` and `lindemann` relate the level to its predecessor and are
/// absent for the first order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeLevel {
    pub order: usize,
    pub sigma: f64,
    pub q_left: f64,
    pub q_right: f64,
    /// Δqᵢ = qᵢ,R − qᵢ₋₁,R.
    pub gap_prev: Option<f64>,
    /// Δqᵢ / σᵢ₋₁, the same constant at every order.
    pub lindemann: Option<f64>,
}

impl CascadeLevel {
    /// The potential curve of this order, with the well depth injected.
    ///
    /// The depth is a parameter rather than a stored field so an
    /// order-dependent scaling can be supplied later without touching the
    /// geometry.
    pub fn spec(&self, epsilon: f64) -> Result<PotentialSpec, PotentialError> {
        PotentialSpec::new(self.sigma, epsilon)
    }
}

/// qᵢ,R/σᵢ = (8/3)^(1/6), from χ = 3/8 at the right crossing.
pub fn right_crossing_ratio() -> f64 {
    ratio_to_f64(bifurcation_constants().chi_plus).powf(-1.0 / 6.0)
}

/// qᵢ,L/σᵢ = (8/5)^(1/6), from χ = 5/8 at the left crossing.
pub fn left_crossing_ratio() -> f64 {
    ratio_to_f64(bifurcation_constants().chi_minus).powf(-1.0 / 6.0)
}

/// σᵢ₊₁/σᵢ = (5/3)^(1/6), forced by the chain condition qᵢ₊₁,L = qᵢ,R.
pub fn growth_ratio() -> f64 {
    let c = bifurcation_constants();
    ratio_to_f64(c.chi_minus / c.chi_plus).powf(1.0 / 6.0)
}

/// Builds `max_orders` levels from the closed forms.
///
/// The crossing solver is deliberately not used here; tests reconstruct the
/// radii through it as an independent check.
pub fn build(sigma1: f64, eps1: f64, max_orders: usize) -> Result<Vec<CascadeLevel>, CascadeError> {
    if !positive(sigma1) || !positive(eps1) {
        return Err(CascadeError::InvalidParameters { sigma1, eps1 });
    }
    if !(1..=MAX_ORDERS).contains(&max_orders) {
        return Err(CascadeError::OrdersOutOfRange {
            requested: max_orders,
            max: MAX_ORDERS,
        });
    }
    let c = bifurcation_constants();
    let size_base = ratio_to_f64(c.chi_minus / c.chi_plus); // 5/3
    let c_right = right_crossing_ratio();
    let c_left = left_crossing_ratio();
    let mut levels: Vec<CascadeLevel> = Vec::with_capacity(max_orders);
    for order in 1..=max_orders {
        let sigma = sigma1 * size_base.powf((order - 1) as f64 / 6.0);
        let q_right = sigma * c_right;
        let q_left = sigma * c_left;
        let (gap_prev, lindemann) = match levels.last() {
            Some(prev) => {
                let gap = q_right - prev.q_right;
                (Some(gap), Some(gap / prev.sigma))
            }
            None => (None, None),
        };
        levels.push(CascadeLevel {
            order,
            sigma,
            q_left,
            q_right,
            gap_prev,
            lindemann,
        });
    }
    Ok(levels)
}

/// The constant gap-to-size ratio (qᵢ₊₁,R − qᵢ,R)/σᵢ = (8/3)^(1/6)[(5/3)^(1/6) − 1].
///
/// Evaluates to 0.10464892…; the commonly quoted rounding is 0.1047.
pub fn lindemann_ratio() -> f64 {
    right_crossing_ratio() * (growth_ratio() - 1.0)
}

/// Smallest order whose right crossing exceeds 2σ₁.
///
/// The criterion is a pure ratio test, so the answer is 8 for every
/// positive `sigma1`.
///
/// Panics if `sigma1` is not positive.
pub fn order_count(sigma1: f64) -> usize {
    assert!(sigma1 > 0.0, "sigma1 must be positive (got {sigma1})");
    let c = bifurcation_constants();
    let size_base = ratio_to_f64(c.chi_minus / c.chi_plus);
    let c_right = right_crossing_ratio();
    let mut order = 1;
    loop {
        let q_right = sigma1 * size_base.powf((order - 1) as f64 / 6.0) * c_right;
        if q_right > 2.0 * sigma1 {
            return order;
        }
        order += 1;
    }
}

/// Per level: can a σ₁-sized vacancy sit between the pair, i.e. qᵢ,R > 2σ₁.
///
/// Panics if `levels` is empty.
pub fn vacancy_check(levels: &[CascadeLevel], sigma1: f64) -> Vec<bool> {
    assert!(!levels.is_empty(), "vacancy_check needs at least one level");
    levels.iter().map(|l| l.q_right > 2.0 * sigma1).collect()
}

/// The fixed-point energy constants scaled by a first-order well depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLedger {
    /// The fixed-point level, −15/16 ε₁.
    pub u_c_star: f64,
    /// The interface-excitation quantum, 1/8 ε₁.
    pub qiee: f64,
    /// The deep attractive point, −17/16 ε₁.
    pub deep_attractive: f64,
    /// The localized energy to form the 8th-order cluster, 20/3 ε₁.
    pub e_c: f64,
    /// The Van der Waals critical energy, 8 ε₁.
    pub k_t_c: f64,
}

/// Collects the energy constants at a given well depth.
///
/// Panics if `eps1` is not positive.
pub fn energy_ledger(eps1: f64) -> EnergyLedger {
    assert!(eps1 > 0.0, "eps1 must be positive (got {eps1})");
    let c = bifurcation_constants();
    EnergyLedger {
        u_c_star: ratio_to_f64(c.u_c_star) * eps1,
        qiee: ratio_to_f64(c.qiee) * eps1,
        deep_attractive: ratio_to_f64(c.deep_point.1) * eps1,
        e_c: ratio_to_f64(Ratio::new(20, 3)) * eps1,
        k_t_c: 8.0 * eps1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Frozen from a 40-digit computation.
    const SIGMA_2: f64 = 1.088866888787003; // (5/3)^(1/6)
    const Q_1L: f64 = 1.0814837471201989; // (8/5)^(1/6)
    const Q_1R: f64 = 1.177591843000481; // (8/3)^(1/6)
    const Q_2R: f64 = 1.2822407663488866; // (40/9)^(1/6)
    const SIGMA_8: f64 = 1.8147781479783384; // (5/3)^(7/6)
    const Q_8R: f64 = 2.137067943914811;
    const Q_7R: f64 = 1.9626530716674683;
    const Q_9R: f64 = 2.326982523216958;
    const LINDEMANN: f64 = 0.10464892334840566;

    #[test]
    fn two_order_build_matches_the_closed_forms() {
        let levels = build(1.0, 1.0, 2).unwrap();
        assert_eq!(levels.len(), 2);
        assert_eq!(levels[0].order, 1);
        assert_eq!(levels[0].sigma, 1.0);
        assert_relative_eq!(levels[0].q_left, Q_1L, max_relative = 1e-12);
        assert_relative_eq!(levels[0].q_right, Q_1R, max_relative = 1e-12);
        assert!(levels[0].gap_prev.is_none() && levels[0].lindemann.is_none());

        assert_relative_eq!(levels[1].sigma, SIGMA_2, max_relative = 1e-12);
        assert_relative_eq!(levels[1].q_left, Q_1R, max_relative = 1e-12);
        assert_relative_eq!(levels[1].q_right, Q_2R, max_relative = 1e-12);
        assert_relative_eq!(
            levels[1].gap_prev.unwrap(),
            Q_2R - Q_1R,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            levels[1].lindemann.unwrap(),
            LINDEMANN,
            max_relative = 1e-12
        );
    }

    #[test]
    fn eighth_order_reaches_past_two_sigma() {
        let levels = build(1.0, 1.0, 8).unwrap();
        let last = &levels[7];
        assert_relative_eq!(last.sigma, SIGMA_8, max_relative = 1e-12);
        assert_relative_eq!(last.q_right, Q_8R, max_relative = 1e-12);
        assert_relative_eq!(levels[6].q_right, Q_7R, max_relative = 1e-12);
        assert!(levels[6].q_right < 2.0 && last.q_right > 2.0);
    }

    #[test]
    fn build_is_scale_covariant() {
        let unit = build(1.0, 1.0, 4).unwrap();
        let wide = build(2.0, 1.0, 4).unwrap();
        for (u, w) in unit.iter().zip(&wide) {
            assert_relative_eq!(w.sigma, 2.0 * u.sigma, max_relative = 1e-14);
            assert_relative_eq!(w.q_left, 2.0 * u.q_left, max_relative = 1e-14);
            assert_relative_eq!(w.q_right, 2.0 * u.q_right, max_relative = 1e-14);
        }
    }

    #[test]
    fn build_rejects_bad_arguments() {
        assert!(matches!(
            build(0.0, 1.0, 8),
            Err(CascadeError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(1.0, -1.0, 8),
            Err(CascadeError::InvalidParameters { .. })
        ));
        assert!(matches!(
            build(1.0, 1.0, 0),
            Err(CascadeError::OrdersOutOfRange { .. })
        ));
        assert!(matches!(
            build(1.0, 1.0, 65),
            Err(CascadeError::OrdersOutOfRange { .. })
        ));
    }

    #[test]
    fn size_ratio_is_constant_over_16_levels() {
        let levels = build(0.7, 1.0, 16).unwrap();
        let g = growth_ratio();
        for pair in levels.windows(2) {
            assert_relative_eq!(pair[1].sigma / pair[0].sigma, g, max_relative = 1e-12);
        }
    }

    #[test]
    fn chain_continuity_holds() {
        let sigma1 = 1.0;
        let levels = build(sigma1, 1.0, 16).unwrap();
        for pair in levels.windows(2) {
            assert!((pair[1].q_left - pair[0].q_right).abs() < 1e-12 * sigma1);
        }
    }

    #[test]
    fn consecutive_curves_cross_at_the_fixed_point_level() {
        let eps1 = 0.7;
        let levels = build(1.0, eps1, 8).unwrap();
        let u_star = -0.9375 * eps1;
        for pair in levels.windows(2) {
            let q = pair[0].q_right;
            let below = pair[0].spec(eps1).unwrap().evaluate(q).unwrap();
            let above = pair[1].spec(eps1).unwrap().evaluate(q).unwrap();
            assert_relative_eq!(below, u_star, max_relative = 1e-12);
            assert_relative_eq!(above, u_star, max_relative = 1e-12);
        }
    }

    #[test]
    fn crossings_carry_the_bifurcation_chis() {
        let levels = build(1.0, 1.0, 8).unwrap();
        for pair in levels.windows(2) {
            let below = pair[0].spec(1.0).unwrap();
            let above = pair[1].spec(1.0).unwrap();
            assert_relative_eq!(
                below.chi_of(pair[0].q_right).unwrap(),
                0.375,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                above.chi_of(pair[1].q_left).unwrap(),
                0.625,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn lindemann_ratio_is_the_per_level_constant() {
        assert_relative_eq!(lindemann_ratio(), LINDEMANN, max_relative = 1e-12);
        assert!((lindemann_ratio() - 0.1047).abs() < 2e-4);
        let levels = build(1.0, 1.0, 8).unwrap();
        for level in &levels[1..] {
            assert!((level.lindemann.unwrap() - lindemann_ratio()).abs() < 1e-12);
        }
    }

    #[test]
    fn order_count_is_eight_and_scale_free() {
        assert_eq!(order_count(1.0), 8);
        assert_eq!(order_count(3.4), 8);
        assert_eq!(order_count(0.1), 8);
        assert_eq!(order_count(100.0), 8);
        let levels = build(1.0, 1.0, 8).unwrap();
        assert!(levels[6].q_right < 2.0 && levels[7].q_right > 2.0);
    }

    #[test]
    fn vacancy_opens_exactly_at_order_eight() {
        let eight = build(1.0, 1.0, 8).unwrap();
        let mut expected = vec![false; 7];
        expected.push(true);
        assert_eq!(vacancy_check(&eight, 1.0), expected);

        let one = build(1.0, 1.0, 1).unwrap();
        assert_eq!(vacancy_check(&one, 1.0), vec![false]);

        let nine = build(1.0, 1.0, 9).unwrap();
        let flags = vacancy_check(&nine, 1.0);
        assert!(flags[8]);
        assert_relative_eq!(nine[8].q_right, Q_9R, max_relative = 1e-12);
    }

    #[test]
    fn energy_ledger_values_and_linearity() {
        let unit = energy_ledger(1.0);
        assert_eq!(unit.u_c_star, -0.9375);
        assert_eq!(unit.deep_attractive, -1.0625);
        assert_eq!(unit.qiee, 0.125);
        assert_relative_eq!(unit.e_c, 20.0 / 3.0, max_relative = 1e-15);
        assert_eq!(unit.k_t_c, 8.0);
        assert_eq!(unit.deep_attractive - unit.u_c_star, -unit.qiee);
        assert!(unit.e_c < unit.k_t_c);

        let doubled = energy_ledger(2.0);
        assert_eq!(doubled.u_c_star, 2.0 * unit.u_c_star);
        assert_eq!(doubled.qiee, 2.0 * unit.qiee);
        assert_eq!(doubled.deep_attractive, 2.0 * unit.deep_attractive);
        assert_eq!(doubled.e_c, 2.0 * unit.e_c);
        assert_eq!(doubled.k_t_c, 2.0 * unit.k_t_c);
    }
}
