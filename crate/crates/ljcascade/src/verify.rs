//! One-shot re-derivation of every fixed-point constant, with pass/fail
//! reporting.
//!
//! Each check recomputes a constant along an independent route (scan,
//! bisection, rational arithmetic, seeded random sampling) and compares it
//! against the expected value at a pinned tolerance. The whole battery is
//! deterministic, self-contained, and runs in well under a second.

use num_rational::Ratio;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cascade;
use crate::potential::{f_reduced, PotentialSpec};
use crate::recursion::{
    self, bifurcation_constants, f_reduced_exact, ratio_to_f64, stability_at, Stability, StepMode,
};

/// One verified constant or identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    /// |computed − expected| in the check's own metric.
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn numeric(name: &'static str, expected: f64, computed: f64, tolerance: f64) -> Self {
        let error = (computed - expected).abs();
        Check {
            name,
            expected: expected.to_string(),
            computed: computed.to_string(),
            error,
            tolerance,
            pass: error <= tolerance,
        }
    }

    fn residual(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Check {
            name,
            expected: "0".to_string(),
            computed: format!("{residual:e}"),
            error: residual.abs(),
            tolerance,
            pass: residual.abs() <= tolerance,
        }
    }

    fn exact(name: &'static str, expected: &str, computed: String, pass: bool) -> Self {
        Check {
            name,
            expected: expected.to_string(),
            computed,
            error: if pass { 0.0 } else { f64::NAN },
            tolerance: 0.0,
            pass,
        }
    }
}

const SIGMA_SEED: u64 = 0x5a17_0001;
const STEP_SEED: u64 = 0x5a17_0002;

/// Runs the full battery. Deterministic across runs.
pub fn run_checks() -> Vec<Check> {
    let mut checks = Vec::with_capacity(24);
    let c = bifurcation_constants();
    let chi_plus = ratio_to_f64(c.chi_plus);
    let chi_minus = ratio_to_f64(c.chi_minus);
    let u_star = ratio_to_f64(c.u_c_star);

    // 1. fixed point of the reduced map
    checks.push(Check::numeric(
        "f(chi_plus) = U_c*",
        u_star,
        f_reduced(chi_plus),
        1e-15,
    ));
    checks.push(Check::numeric(
        "f(chi_minus) = U_c*",
        u_star,
        f_reduced(chi_minus),
        1e-15,
    ));

    // 2. stability interval boundaries from a 1e5-point scan
    let n = 100_000;
    let mut lo_edge = f64::NAN;
    let mut hi_edge = f64::NAN;
    for k in 0..=n {
        let chi = k as f64 / n as f64;
        if stability_at(chi).classification != Stability::Expanding {
            if lo_edge.is_nan() {
                lo_edge = chi;
            }
            hi_edge = chi;
        }
    }
    checks.push(Check::numeric(
        "stability lower edge",
        chi_plus,
        lo_edge,
        1.0 / n as f64,
    ));
    checks.push(Check::numeric(
        "stability upper edge",
        chi_minus,
        hi_edge,
        1.0 / n as f64,
    ));

    // 3. self-similar condition, solved rather than assumed
    let (pos, neg) = recursion::self_similar_points();
    checks.push(Check::numeric(
        "self-similar chi' (+)",
        0.125,
        pos.chi_shifted,
        1e-12,
    ));
    checks.push(Check::numeric(
        "self-similar chi' (-)",
        -0.125,
        neg.chi_shifted,
        1e-12,
    ));
    let residual = recursion::self_similar_residual(pos.chi_shifted)
        .abs()
        .max(recursion::self_similar_residual(neg.chi_shifted).abs());
    checks.push(Check::residual("self-similar residual", residual, 1e-12));
    let (chi_back_pos, f_back_pos) = pos.unshifted();
    let (chi_back_neg, f_back_neg) = neg.unshifted();
    let map_err = (chi_back_pos - chi_minus)
        .abs()
        .max((f_back_pos - u_star).abs())
        .max((chi_back_neg - chi_plus).abs())
        .max((f_back_neg - u_star).abs());
    checks.push(Check::residual("self-similar mapped back", map_err, 1e-12));

    // 4. deep attractive point from the tangent construction
    let (tangent_chi, tangent_f) = recursion::tangent_intersection();
    let deep_f = ratio_to_f64(c.deep_point.1);
    let tangent_err = (tangent_chi - 0.5).abs().max((tangent_f - deep_f).abs());
    checks.push(Check::residual("tangent intersection", tangent_err, 1e-12));
    let mirror = ((u_star - -1.0).abs() - 0.0625)
        .abs()
        .max(((deep_f - -1.0).abs() - 0.0625).abs());
    checks.push(Check::exact(
        "reflection about the well bottom",
        "1/16 each side",
        format!("{} / {}", (u_star - -1.0).abs(), (deep_f - -1.0).abs()),
        mirror == 0.0,
    ));

    // 5. QIEE ledger, exact rational identities
    let eighth = Ratio::new(1, 8);
    let qiee_ok = c.qiee == eighth
        && c.u_c_star - c.deep_point.1 == eighth
        && c.deep_point.0 - c.chi_plus == eighth
        && c.chi_minus - c.deep_point.0 == eighth;
    checks.push(Check::exact(
        "QIEE spacings (exact)",
        "1/8",
        c.qiee.to_string(),
        qiee_ok,
    ));
    let sum_ok = c.chi_plus + c.chi_minus == Ratio::one()
        && f_reduced_exact(c.chi_plus + c.chi_minus) == Ratio::from_integer(0)
        && f_reduced(chi_plus + chi_minus) == 0.0;
    checks.push(Check::exact(
        "sum rule chi_+ + chi_- = 1",
        "1",
        (c.chi_plus + c.chi_minus).to_string(),
        sum_ok,
    ));

    // 6. Lindemann ratio, closed form vs per-level construction
    let lindemann = cascade::lindemann_ratio();
    checks.push(Check::numeric(
        "lindemann ratio vs 0.1047",
        0.1047,
        lindemann,
        2e-4,
    ));
    let levels = cascade::build(1.0, 1.0, 8).expect("8-order cascade");
    let spread = levels[1..]
        .iter()
        .map(|l| (l.lindemann.expect("per-level ratio") - lindemann).abs())
        .fold(0.0, f64::max);
    checks.push(Check::residual("lindemann per-level spread", spread, 1e-12));

    // 7. order count and the crossing that first clears 2 sigma1
    let mut rng = StdRng::seed_from_u64(SIGMA_SEED);
    let all_eight = (0..100).all(|_| cascade::order_count(rng.random_range(0.1..100.0)) == 8);
    checks.push(Check::exact(
        "order count M (100 random sigma1)",
        "8",
        if all_eight {
            "8".to_string()
        } else {
            "mixed".to_string()
        },
        all_eight && cascade::order_count(1.0) == 8,
    ));
    checks.push(Check::numeric(
        "q_8R / sigma1 vs 2.137",
        2.137,
        levels[7].q_right,
        1e-3,
    ));
    let q7r = levels[6].q_right;
    checks.push(Check::exact(
        "q_7R / sigma1 < 2",
        "< 2",
        q7r.to_string(),
        q7r < 2.0,
    ));

    // 8. consecutive curves cross exactly at the fixed-point level
    let mut sharp = 0.0_f64;
    for pair in levels.windows(2) {
        let q = pair[0].q_right;
        for level in pair {
            let u = level
                .spec(1.0)
                .and_then(|s| s.evaluate(q))
                .expect("cascade radii are positive");
            sharp = sharp.max(((u - u_star) / u_star).abs());
        }
    }
    checks.push(Check::residual("sharp-angle residual (rel)", sharp, 1e-12));

    // 9. closed forms against the independent routes
    let spec = PotentialSpec::new(1.0, 1.0).expect("unit spec");
    let mut oracle_dev = 0.0_f64;
    for k in 0..100 {
        let u_c = -0.999 + (k as f64 + 0.5) * 0.998 / 100.0;
        let fast = spec.crossings(u_c).expect("level in range");
        let slow = spec.crossings_by_bisection(u_c).expect("level in range");
        oracle_dev = oracle_dev
            .max(((fast.q_left - slow.q_left) / slow.q_left).abs())
            .max(((fast.q_right - slow.q_right) / slow.q_right).abs());
    }
    checks.push(Check::residual(
        "crossings vs bisection (rel)",
        oracle_dev,
        1e-10,
    ));
    let mut rebuild_dev = 0.0_f64;
    for level in &levels {
        let pair = level
            .spec(1.0)
            .and_then(|s| s.crossings(u_star))
            .expect("fixed-point level is in range");
        rebuild_dev = rebuild_dev
            .max(((pair.q_left - level.q_left) / level.q_left).abs())
            .max(((pair.q_right - level.q_right) / level.q_right).abs());
    }
    checks.push(Check::residual(
        "cascade vs crossing solver (rel)",
        rebuild_dev,
        1e-10,
    ));

    // 10. recursion identities
    let mut rng = StdRng::seed_from_u64(STEP_SEED);
    let mut step_dev = 0.0_f64;
    for _ in 0..1000 {
        let chi = rng.random_range(0.0..1.0);
        let delta = rng.random_range(-0.1..0.1);
        let gap = recursion::step_exact(chi, delta) - recursion::step_linear(chi, delta);
        step_dev = step_dev.max((gap - 4.0 * delta * delta).abs());
    }
    checks.push(Check::residual(
        "step_exact - step_linear - 4d^2",
        step_dev,
        1e-14,
    ));
    let flip = recursion::iterate(chi_plus, 0.01, 100, StepMode::Linearized)
        .expect("positive step count");
    let flip_dev = flip
        .steps
        .iter()
        .map(|s| {
            let expected = if s.index % 2 == 0 { 0.01 } else { -0.01 };
            (s.delta - expected).abs()
        })
        .fold(0.0, f64::max);
    checks.push(Check::residual("marginal flip at chi_plus", flip_dev, 1e-12));
    let keep = recursion::iterate(chi_minus, 0.01, 100, StepMode::Linearized)
        .expect("positive step count");
    let keep_dev = keep
        .steps
        .iter()
        .map(|s| (s.delta - 0.01).abs())
        .fold(0.0, f64::max);
    checks.push(Check::residual("marginal keep at chi_minus", keep_dev, 1e-12));

    checks
}

/// True when every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Plain-text table: name, expected, computed, |error|, status.
pub fn render_table(checks: &[Check]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<34} {:>22} {:>22} {:>10} {:>6}\n",
        "check", "expected", "computed", "|error|", "status"
    ));
    for check in checks {
        out.push_str(&format!(
            "{:<34} {:>22} {:>22} {:>10.2e} {:>6}\n",
            check.name,
            truncate(&check.expected),
            truncate(&check.computed),
            check.error,
            if check.pass { "pass" } else { "FAIL" }
        ));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}

fn truncate(s: &str) -> String {
    if s.len() <= 22 {
        s.to_string()
    } else {
        format!("{}…", &s[..21])
    }
}

/// JSON rendering of the same battery.
pub fn render_json(checks: &[Check]) -> String {
    let mut out = String::from("[\n");
    let objects: Vec<String> = checks
        .iter()
        .map(|c| {
            let error = if c.error.is_nan() {
                "null".to_string()
            } else {
                format!("{:e}", c.error)
            };
            let tolerance = format!("{:e}", c.tolerance);
            format!(
                "  {{\"name\":\"{}\",\"expected\":\"{}\",\"computed\":\"{}\",\"error\":{},\"tolerance\":{},\"pass\":{}}}",
                c.name, c.expected, c.computed, error, tolerance, c.pass
            )
        })
        .collect();
    out.push_str(&objects.join(",\n"));
    out.push_str("\n]\n");
    out
}
