//! Bracketing root finder and golden-section maximizer.

use crate::error::{ContestError, Result};

pub const ROOT_TOLERANCE: f64 = 1e-12;
pub const MAX_BISECTIONS: usize = 200;

/// Bisection on `[lo, hi]`, which must bracket a sign change of `g`.
///
/// Returns as soon as `g` hits zero exactly or the bracket is narrower than
/// `tol`.
pub fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut g_lo = g(lo);
    let g_hi = g(hi);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() || g_lo.is_nan() || g_hi.is_nan() {
        return Err(ContestError::NoSignChange { lo, hi });
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Err(ContestError::NonConvergence {
        what: "bisection",
        iterations: MAX_BISECTIONS,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximizer of a unimodal objective on
/// `[lo, hi]`.
///
/// `prefer(a, b)` must return the sign of `objective(a) − objective(b)`;
/// taking a difference rather than two values lets callers evaluate it
/// without cancellation near the optimum.
pub fn golden_section_max<P: Fn(f64, f64) -> f64>(prefer: P, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    for _ in 0..500 {
        if hi - lo <= tol {
            break;
        }
        if prefer(x1, x2) >= 0.0 {
            hi = x2;
            x2 = x1;
            x1 = hi - INV_PHI * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + INV_PHI * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}
