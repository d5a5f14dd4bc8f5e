//! The scalar characteristic equation `s = a + b e^{-s tau}` and its
//! rightmost root.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::lambert::{lambert_w, Branch};
use crate::error::{Error, Result};
use crate::model::EpidemicParams;

const NEWTON_MAX_ITERATIONS: usize = 200;
const NEWTON_TOLERANCE: f64 = 1e-12;
const MAX_HALVINGS: usize = 60;

/// Coefficients of `s = a + b e^{-s tau}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicParams {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
}

impl CharacteristicParams {
    pub fn new(a: f64, b: f64, tau: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(Error::domain(format!(
                "delay must be nonnegative, got {tau}"
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::domain("characteristic coefficients must be finite"));
        }
        Ok(Self { a, b, tau })
    }

    /// Scalarized equation for effective mixing rate `beta_h`:
    /// `a = beta_h - gamma`, `b = -beta_h * alpha * e^{-gamma tau}`.
    pub fn for_mixing(beta_h: f64, params: &EpidemicParams) -> Self {
        Self {
            a: beta_h - params.gamma(),
            b: -beta_h * params.isolation_factor(),
            tau: params.t_delay(),
        }
    }

    /// `s - a - b e^{-s tau}`; shares its zeros with [`char_fn`].
    pub fn residual(&self, s: Complex64) -> Complex64 {
        s - self.a - self.b * (-s * self.tau).exp()
    }

    fn derivative(&self, s: Complex64) -> Complex64 {
        1.0 + self.b * self.tau * (-s * self.tau).exp()
    }
}

/// `f(s) = s - beta_h (1 - alpha e^{-(gamma + s) T}) + gamma`.
pub fn char_fn(s: Complex64, beta_h: f64, params: &EpidemicParams) -> Complex64 {
    let decay = (-(s + params.gamma()) * params.t_delay()).exp();
    s - beta_h * (1.0 - params.alpha() * decay) + params.gamma()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    /// `tau = 0` or `b = 0`: the root is `a + b`.
    Closed,
    /// Real root from the principal Lambert W branch.
    Lambert,
    /// Complex dominant pair refined by damped Newton.
    Newton,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootReport {
    /// Rightmost root; for a complex pair, the member with positive imaginary part.
    pub root: Complex64,
    pub method: RootMethod,
    pub iterations: usize,
    /// `|s - a - b e^{-s tau}|` at the returned root.
    pub residual: f64,
}

/// Rightmost root of `s = a + b e^{-s tau}`.
pub fn rightmost_root(cp: &CharacteristicParams) -> Result<Complex64> {
    rightmost_root_report(cp).map(|r| r.root)
}

/// Rightmost root together with how it was obtained.
///
/// Substituting `s = a + w/tau` turns the equation into `w e^w = b tau e^{-a tau}`,
/// so the roots are `a + W_k(x)/tau` over the branches of Lambert W and the
/// principal branch is rightmost. For `x >= -1/e` that root is real. Below
/// the branch point the dominant pair is complex and is found by Newton on
/// the characteristic residual.
pub fn rightmost_root_report(cp: &CharacteristicParams) -> Result<RootReport> {
    let CharacteristicParams { a, b, tau } = *cp;
    if tau == 0.0 || b == 0.0 {
        return Ok(RootReport {
            root: Complex64::new(a + b, 0.0),
            method: RootMethod::Closed,
            iterations: 0,
            residual: 0.0,
        });
    }

    let x = b * tau * (-a * tau).exp();
    if !x.is_finite() {
        return Err(Error::Numerical {
            message: format!("Lambert argument overflow for a={a}, b={b}, tau={tau}"),
            iterations: 0,
            residual: f64::INFINITY,
        });
    }
    match lambert_w(Branch::Principal, x) {
        Ok(w) => {
            let root = Complex64::new(a + w / tau, 0.0);
            Ok(RootReport {
                root,
                method: RootMethod::Lambert,
                iterations: 0,
                residual: cp.residual(root).norm(),
            })
        }
        // below the branch point
        Err(Error::Domain(_)) => complex_dominant_root(cp, x),
        Err(e) => Err(e),
    }
}

fn complex_dominant_root(cp: &CharacteristicParams, x: f64) -> Result<RootReport> {
    let CharacteristicParams { a, tau, .. } = *cp;
    let scale = 1.0f64.max(cp.a.abs() + cp.b.abs());

    // Seeds in w-space: the branch point lifted to the middle of the principal
    // strip, then the branch-point series and the large-|x| asymptote.
    let mut seeds = vec![Complex64::new(-1.0, PI / 2.0)];
    let p = Complex64::new(0.0, (-2.0 * (std::f64::consts::E * x + 1.0)).sqrt());
    seeds.push(-1.0 + p - p * p / 3.0 + p * p * p * (11.0 / 72.0));
    let l1 = Complex64::new((-x).ln(), PI);
    seeds.push(l1 - l1.ln());

    let mut last_err = None;
    let mut total_iterations = 0;
    for w_seed in seeds {
        let seed = a + w_seed / tau;
        match damped_newton(cp, seed, scale) {
            Ok((root, iterations)) => {
                total_iterations += iterations;
                let root = if root.im < 0.0 { root.conj() } else { root };
                // principal branch: 0 < Im(w) < pi
                let wim = root.im * tau;
                if wim > 0.0 && wim < PI {
                    return Ok(RootReport {
                        root,
                        method: RootMethod::Newton,
                        iterations: total_iterations,
                        residual: cp.residual(root).norm(),
                    });
                }
                last_err = Some(Error::Numerical {
                    message: format!(
                        "Newton converged to a non-principal root {root} (Im*tau={wim})"
                    ),
                    iterations: total_iterations,
                    residual: cp.residual(root).norm(),
                });
            }
            Err(e) => {
                if let Error::Numerical { iterations, .. } = &e {
                    total_iterations += iterations;
                }
                last_err = Some(e);
            }
        }
    }
    Err(last_err.expect("at least one seed"))
}

fn damped_newton(
    cp: &CharacteristicParams,
    mut s: Complex64,
    scale: f64,
) -> Result<(Complex64, usize)> {
    let tol = NEWTON_TOLERANCE * scale;
    let mut f = cp.residual(s);
    for iter in 0..NEWTON_MAX_ITERATIONS {
        if f.norm() <= tol {
            return Ok((s, iter));
        }
        let df = cp.derivative(s);
        if df.norm() == 0.0 || !df.is_finite() {
            break;
        }
        let mut step = -f / df;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let trial = s + step;
            let ft = cp.residual(trial);
            if ft.is_finite() && ft.norm() < f.norm() {
                s = trial;
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if f.norm() <= tol {
        return Ok((s, NEWTON_MAX_ITERATIONS));
    }
    Err(Error::Numerical {
        message: format!(
            "Newton failed for s = {} + {} e^(-s {}) (last iterate {s})",
            cp.a, cp.b, cp.tau
        ),
        iterations: NEWTON_MAX_ITERATIONS,
        residual: f.norm(),
    })
}
