//! Real branches of the Lambert W function.
//!
//! `W(x)` solves `w * exp(w) = x`. The principal branch `W0` is defined on
//! `[-1/e, inf)` with `W0 >= -1`; the lower branch `W-1` on `[-1/e, 0)` with
//! `W-1 <= -1`. Both are refined by Halley iteration from a branch-point
//! series, a Winitzki-style guess, or the asymptotic expansion.

use crate::error::{Error, Result};

/// `1/e` split into a double plus its rounding error so `x + 1/e` can be
/// formed without cancellation near the branch point.
const INV_E_HI: f64 = 0.367_879_441_171_442_33;
const INV_E_LO: f64 = -1.242_875_367_278_836_3e-17;

/// Arguments up to this far below `-1/e` are treated as the branch point.
/// Covers the rounding error in forming `-exp(-1)` and `w * exp(w)` at `w = -1`.
const BRANCH_SLACK: f64 = 4.0 * f64::EPSILON * INV_E_HI;

const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Principal,
    MinusOne,
}

/// Distance of `x` from the branch point, `x + 1/e`.
fn branch_offset(x: f64) -> f64 {
    (x + INV_E_HI) + INV_E_LO
}

/// Lambert W on the requested real branch.
pub fn lambert_w(branch: Branch, x: f64) -> Result<f64> {
    match branch {
        Branch::Principal => w0(x),
        Branch::MinusOne => wm1(x),
    }
}

fn domain(branch: Branch, x: f64) -> Error {
    let range = match branch {
        Branch::Principal => "[-1/e, inf)",
        Branch::MinusOne => "[-1/e, 0)",
    };
    Error::domain(format!(
        "lambert_w({branch:?}) is defined on {range}, got {x}"
    ))
}

fn w0(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain(Branch::Principal, x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let offset = branch_offset(x);
    if offset < -BRANCH_SLACK {
        return Err(domain(Branch::Principal, x));
    }
    if offset <= 0.0 {
        return Ok(-1.0);
    }

    let guess = if offset < 0.25 {
        let p = (2.0 * std::f64::consts::E * offset).sqrt();
        let w = branch_series(p);
        if p < 1e-3 {
            return Ok(w);
        }
        w
    } else if x < 3.0 {
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    halley(x, guess, Branch::Principal)
}

fn wm1(x: f64) -> Result<f64> {
    if x.is_nan() || x >= 0.0 {
        return Err(domain(Branch::MinusOne, x));
    }
    let offset = branch_offset(x);
    if offset < -BRANCH_SLACK {
        return Err(domain(Branch::MinusOne, x));
    }
    if offset <= 0.0 {
        return Ok(-1.0);
    }

    let guess = if offset < 0.25 {
        let p = -(2.0 * std::f64::consts::E * offset).sqrt();
        let w = branch_series(p);
        if p > -1e-3 {
            return Ok(w);
        }
        w
    } else {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    halley(x, guess, Branch::MinusOne)
}

/// Expansion of W about the branch point in `p = ±sqrt(2(e x + 1))`.
fn branch_series(p: f64) -> f64 {
    const C: [f64; 7] = [
        -1.0,
        1.0,
        -1.0 / 3.0,
        11.0 / 72.0,
        -43.0 / 540.0,
        769.0 / 17280.0,
        -221.0 / 8505.0,
    ];
    C.iter().rev().fold(0.0, |acc, c| acc * p + c)
}

fn halley(x: f64, mut w: f64, branch: Branch) -> Result<f64> {
    let tolerance = 1e-12 * x.abs().max(1.0);
    let mut best = (w, f64::INFINITY);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() < best.1 {
            best = (w, f.abs());
        }
        // at roundoff level; further steps only chase noise near the branch point
        if f.abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let mut next = w - f / denom;
        // keep iterates on the requested side of the branch point
        match branch {
            Branch::Principal if next < -1.0 => next = 0.5 * (w - 1.0),
            Branch::MinusOne if next > -1.0 => next = 0.5 * (w - 1.0),
            _ => {}
        }
        let step = (next - w).abs();
        w = next;
        if step <= 2.0 * f64::EPSILON * w.abs().max(1.0) {
            break;
        }
    }
    let residual = (w * w.exp() - x).abs();
    if residual < best.1 {
        best = (w, residual);
    }
    if best.1 <= tolerance {
        Ok(best.0)
    } else {
        Err(Error::Numerical {
            message: format!("lambert_w did not converge at x={x}"),
            iterations: MAX_ITERATIONS,
            residual: best.1,
        })
    }
}
