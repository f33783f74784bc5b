//! One-dimensional root finding and minimization used throughout the crate.
//!
//! All numeric inversions (gauge norms, interpolated Young functions, sphere
//! crossings) go through [`log_bracket`]: the bracket is grown by doubling or
//! halving from 1, then shrunk by regula falsi (Illinois variant) on the log
//! axis with a bisection fallback whenever a value is not finite or the
//! interpolated step fails to halve the bracket.

use crate::error::{Error, Result};

/// Relative width at which bracketing stops.
pub const REL_TOL: f64 = 1e-13;
/// Iteration cap for the shrinking phase.
pub const MAX_ITER: usize = 200;
const MAX_DOUBLINGS: usize = 1100;

/// Bracket `lo < hi` around the sign change of a non-decreasing function:
/// `h(lo) < 0 <= h(hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub evaluations: usize,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Locates the sign change of a non-decreasing `h` on `(0, inf)`.
///
/// `h` may return infinities; NaN is treated as "not yet positive".
pub fn log_bracket<F: Fn(f64) -> f64>(h: F) -> Result<Bracket> {
    let is_up = |v: f64| v >= 0.0;
    let mut evals = 1;
    let mut u_lo;
    let mut u_hi;
    let mut f_lo;
    let mut f_hi;
    let f1 = h(1.0);
    if is_up(f1) {
        u_hi = 0.0;
        f_hi = f1;
        let mut u = 0.0;
        loop {
            u -= std::f64::consts::LN_2;
            let v = h(u.exp());
            evals += 1;
            if !is_up(v) {
                u_lo = u;
                f_lo = v;
                break;
            }
            u_hi = u;
            f_hi = v;
            if evals > MAX_DOUBLINGS {
                return Err(Error::SearchExhausted(
                    "no lower bracket end above the smallest positive double".into(),
                ));
            }
        }
    } else {
        u_lo = 0.0;
        f_lo = f1;
        let mut u = 0.0;
        loop {
            u += std::f64::consts::LN_2;
            let v = h(u.exp());
            evals += 1;
            if is_up(v) {
                u_hi = u;
                f_hi = v;
                break;
            }
            u_lo = u;
            f_lo = v;
            if evals > MAX_DOUBLINGS {
                return Err(Error::SearchExhausted(
                    "no upper bracket end below the largest double".into(),
                ));
            }
        }
    }

    // Illinois iteration on [u_lo, u_hi].
    let mut side = 0i8;
    let mut width = u_hi - u_lo;
    for _ in 0..MAX_ITER {
        // Width on the log axis is the relative width of the bracket.
        if u_hi - u_lo <= REL_TOL {
            break;
        }
        let bisect = 0.5 * (u_lo + u_hi);
        let mut u = if f_lo.is_finite() && f_hi.is_finite() && f_hi > f_lo {
            u_hi - f_hi * (u_hi - u_lo) / (f_hi - f_lo)
        } else {
            bisect
        };
        if !(u > u_lo && u < u_hi) {
            u = bisect;
        }
        if u <= u_lo || u >= u_hi {
            // Adjacent doubles; nothing left to split.
            break;
        }
        let v = h(u.exp());
        evals += 1;
        if is_up(v) {
            u_hi = u;
            f_hi = v;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        } else {
            u_lo = u;
            f_lo = if v.is_nan() { f64::NEG_INFINITY } else { v };
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        }
        let new_width = u_hi - u_lo;
        if new_width > 0.5 * width {
            // Force progress: one plain bisection step.
            let m = 0.5 * (u_lo + u_hi);
            if m > u_lo && m < u_hi {
                let v = h(m.exp());
                evals += 1;
                if is_up(v) {
                    u_hi = m;
                    f_hi = v;
                } else {
                    u_lo = m;
                    f_lo = if v.is_nan() { f64::NEG_INFINITY } else { v };
                }
                side = 0;
            }
        }
        width = u_hi - u_lo;
    }
    Ok(Bracket {
        lo: u_lo.exp(),
        hi: u_hi.exp(),
        evaluations: evals,
    })
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
///
/// Returns the best abscissa seen and its value.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc < fd { (c, fc) } else { (d, fd) };
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            if fc < best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            if fd < best_f {
                best_x = d;
                best_f = fd;
            }
        }
    }
    (best_x, best_f)
}

/// Standard log-spaced grid with `n` points on `[lo, hi]`, endpoints exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = lo;
    g[n - 1] = hi;
    g
}
