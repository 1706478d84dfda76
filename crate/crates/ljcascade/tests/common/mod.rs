//! Shared test helpers: an independent slow-route solver used as the
//! oracle against the library's closed forms.

#![allow(dead_code)]

/// Direct 12-6 evaluation, written from scratch on purpose.
pub fn lj(sigma: f64, epsilon: f64, q: f64) -> f64 {
    4.0 * epsilon * ((sigma / q).powi(12) - (sigma / q).powi(6))
}

/// Plain bisection; `f` must change sign over `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, width_tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    assert!(
        f_lo == 0.0 || f(hi) == 0.0 || (f_lo > 0.0) != (f(hi) > 0.0),
        "oracle bisection needs a sign change over [{lo}, {hi}]"
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

/// Both crossing radii of the level `u_c`, solved branch by branch on
/// [10^-3 sigma, q0] and [q0, 10^3 sigma] down to a 10^-14 sigma bracket.
pub fn crossings_oracle(sigma: f64, epsilon: f64, u_c: f64) -> (f64, f64) {
    assert!(u_c > -epsilon && u_c < 0.0, "level out of range");
    let q0 = 2.0_f64.powf(1.0 / 6.0) * sigma;
    let width_tol = 1e-14 * sigma;
    let residual = |q: f64| lj(sigma, epsilon, q) - u_c;
    (
        bisect(1e-3 * sigma, q0, width_tol, residual),
        bisect(q0, 1e3 * sigma, width_tol, residual),
    )
}
