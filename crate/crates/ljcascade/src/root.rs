//! Scalar bracketed root finding.

/// Bisection on `[lo, hi]`; the function must change sign across the bracket.
///
/// Halves the bracket until it is narrower than `width_tol` (or the midpoint
/// is no longer representable strictly inside it) and returns the midpoint.
pub(crate) fn bisect<F>(mut lo: f64, mut hi: f64, width_tol: f64, f: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    debug_assert!(
        f_lo == 0.0 || f(hi) == 0.0 || (f_lo > 0.0) != (f(hi) > 0.0),
        "bisect requires a sign change over [{lo}, {hi}]"
    );
    while hi - lo > width_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid >= 0.0) == (f_lo >= 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
