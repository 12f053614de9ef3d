//! Grid isolation of sign changes and plain bisection.
//!
//! Bisection keeps a bracket `[lo, hi]` with `f(lo) f(hi) < 0` and halves it
//! until its width is at most `tol`, which takes `ceil(log2((hi - lo) / tol))`
//! halvings. An exact zero at an endpoint or midpoint ends the search at that
//! point.

use serde::Serialize;
use thiserror::Error;

/// Default absolute tolerance on λ.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default number of grid cells used by [`isolate`].
pub const DEFAULT_GRID: usize = 4096;
/// Inward shrink applied to open brackets before scanning.
pub const BRACKET_SHRINK: f64 = 1e-9;
/// Smallest grid [`isolate`] accepts.
pub const MIN_GRID: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootFindError {
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("expected {expected} sign change(s) on ({lo}, {hi}), found {found}")]
    CountMismatch {
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    pub bracket_width: f64,
    pub f_at_value: f64,
    pub iterations: u32,
    /// Final bracket.
    pub lo: f64,
    pub hi: f64,
}

/// Bisects `f` on `[lo, hi]` down to a bracket of width at most `tol`.
///
/// Also stops when the midpoint can no longer be separated from an endpoint
/// in `f64`; pass a tiny `tol` to bisect to full resolution. The returned
/// value is whichever final endpoint has the smaller `|f|`.
pub fn bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Root, RootFindError>
where
    F: Fn(f64) -> f64,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(RootFindError::Invalid(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(RootFindError::Invalid(format!("bad bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    let exact = |v: f64, fv: f64, it| Root {
        value: v,
        bracket_width: 0.0,
        f_at_value: fv,
        iterations: it,
        lo: v,
        hi: v,
    };
    if fa == 0.0 {
        return Ok(exact(a, fa, 0));
    }
    if fb == 0.0 {
        return Ok(exact(b, fb, 0));
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(RootFindError::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut iterations = 0;
    while b - a > tol {
        let mid = a + 0.5 * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(exact(mid, fm, iterations));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (value, f_at_value) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    Ok(Root {
        value,
        bracket_width: b - a,
        f_at_value,
        iterations,
        lo: a,
        hi: b,
    })
}

/// Upper bound on the halvings [`bisect`] performs on a bracket of `width`.
pub fn max_iterations(width: f64, tol: f64) -> u32 {
    ((width / tol).log2().ceil().max(0.0) as u32) + 1
}

/// Scans `[lo + ε, hi - ε]` at `grid + 1` equally spaced points and returns
/// every adjacent pair across which `f` changes sign.
///
/// A grid point where `f` is exactly zero is reported as the degenerate
/// bracket `(p, p)`. Fails unless exactly `expected` brackets are found.
pub fn isolate<F>(
    f: F,
    lo: f64,
    hi: f64,
    expected: usize,
    grid: usize,
) -> Result<Vec<(f64, f64)>, RootFindError>
where
    F: Fn(f64) -> f64,
{
    if grid < MIN_GRID {
        return Err(RootFindError::Invalid(format!(
            "grid {grid} is below the minimum of {MIN_GRID}"
        )));
    }
    let (a, b) = (lo + BRACKET_SHRINK, hi - BRACKET_SHRINK);
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(RootFindError::Invalid(format!("bad bracket ({lo}, {hi})")));
    }
    let step = (b - a) / grid as f64;
    let point = |i: usize| if i == grid { b } else { a + step * i as f64 };

    let mut found = Vec::new();
    let mut prev = (point(0), f(point(0)));
    if prev.1 == 0.0 {
        found.push((prev.0, prev.0));
    }
    for i in 1..=grid {
        let x = point(i);
        let fx = f(x);
        if fx == 0.0 {
            found.push((x, x));
        } else if prev.1 != 0.0 && fx.signum() != prev.1.signum() {
            found.push((prev.0, x));
        }
        prev = (x, fx);
    }
    if found.len() != expected {
        return Err(RootFindError::CountMismatch {
            lo,
            hi,
            expected,
            found: found.len(),
        });
    }
    Ok(found)
}
