//! Fixed-step method-of-steps integration of the delayed SIR systems.
//!
//! Each step is classic RK4. Delayed terms at `t - T_delay` come from the
//! initial history for `t - T_delay <= 0` and from the cubic Hermite
//! interpolant of the already computed solution afterwards. With
//! `dt <= T_delay / 4` every delayed lookup falls inside finished steps.

mod growth;
mod system;
mod trajectory;

use std::fmt;
use std::sync::Arc;

pub use growth::{default_growth_window, estimate_growth_rate, fit_exponential, GrowthFit};
pub use system::{
    consistent_reduced_history, degree_weighted_seeding, uniform_seeding, DelaySystem,
    HomogeneousSir, PartitionedSir, ReducedInit, ReducedSir, SusceptibleMode,
};
pub use trajectory::Trajectory;

use crate::error::{Error, Result};

pub const DEFAULT_DT: f64 = 0.01;

/// History callback writing the state at `t` into the output slice.
pub type HistoryFn = Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>;

/// Initial data on `[-T_delay, 0]`.
#[derive(Clone)]
pub enum History {
    /// The same state at every past instant.
    Constant(Vec<f64>),
    /// `e^{rate t} * state0`, matching a pure exponential mode.
    Exponential { state0: Vec<f64>, rate: f64 },
    /// Arbitrary function of `t <= 0` filling the output slice.
    Function { dim: usize, f: HistoryFn },
}

impl fmt::Debug for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            History::Constant(s) => f.debug_tuple("Constant").field(s).finish(),
            History::Exponential { state0, rate } => f
                .debug_struct("Exponential")
                .field("state0", state0)
                .field("rate", rate)
                .finish(),
            History::Function { dim, .. } => f.debug_struct("Function").field("dim", dim).finish(),
        }
    }
}

impl History {
    pub fn dim(&self) -> usize {
        match self {
            History::Constant(s) => s.len(),
            History::Exponential { state0, .. } => state0.len(),
            History::Function { dim, .. } => *dim,
        }
    }

    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        match self {
            History::Constant(s) => out.copy_from_slice(s),
            History::Exponential { state0, rate } => {
                let g = (rate * t).exp();
                for (o, s) in out.iter_mut().zip(state0) {
                    *o = g * s;
                }
            }
            History::Function { f, .. } => f(t, out),
        }
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.eval_into(t, &mut out);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Abort once any component exceeds this magnitude.
    pub max_magnitude: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            max_magnitude: 1e30,
        }
    }
}

/// Integrates `system` from `t = 0` to `t_end` with step `dt`.
pub fn integrate(
    system: &DelaySystem,
    history: &History,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_with(system, history, t_end, dt, IntegrateOptions::default())
}

pub fn integrate_with(
    system: &DelaySystem,
    history: &History,
    t_end: f64,
    dt: f64,
    options: IntegrateOptions,
) -> Result<Trajectory> {
    let dim = system.dim();
    let tau = system.delay();
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::domain(format!("dt must be positive, got {dt}")));
    }
    if tau > 0.0 && dt > tau / 4.0 {
        return Err(Error::domain(format!(
            "dt={dt} too coarse for T_delay={tau}; need dt <= T_delay/4"
        )));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::domain(format!(
            "t_end must be nonnegative, got {t_end}"
        )));
    }
    if history.dim() != dim {
        return Err(Error::domain(format!(
            "history has dimension {}, system has {dim}",
            history.dim()
        )));
    }

    let steps = (t_end / dt).round() as usize;
    let mut traj = Trajectory::with_capacity(system.component_names(), steps + 1);
    let mut y = history.eval(0.0);
    traj.push(0.0, &y);

    let mut delayed = vec![0.0; dim];
    let mut stage = vec![0.0; dim];
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];

    // delayed state seen at time t by a stage evaluated at `state`
    let lookup = |traj: &Trajectory, t: f64, state: &[f64], out: &mut [f64]| -> Result<()> {
        if tau == 0.0 {
            out.copy_from_slice(state);
            return Ok(());
        }
        let td = t - tau;
        if td <= 0.0 {
            history.eval_into(td, out);
            Ok(())
        } else {
            traj.interpolate_into(td, out)
        }
    };

    for n in 0..steps {
        let t = n as f64 * dt;

        lookup(&traj, t, &y, &mut delayed)?;
        system.rhs(&y, &delayed, &mut k1);
        traj.push_derivative(&k1);

        for i in 0..dim {
            stage[i] = y[i] + 0.5 * dt * k1[i];
        }
        lookup(&traj, t + 0.5 * dt, &stage, &mut delayed)?;
        system.rhs(&stage, &delayed, &mut k2);
        for i in 0..dim {
            stage[i] = y[i] + 0.5 * dt * k2[i];
        }
        lookup(&traj, t + 0.5 * dt, &stage, &mut delayed)?;
        system.rhs(&stage, &delayed, &mut k3);
        for i in 0..dim {
            stage[i] = y[i] + dt * k3[i];
        }
        lookup(&traj, t + dt, &stage, &mut delayed)?;
        system.rhs(&stage, &delayed, &mut k4);

        for i in 0..dim {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|v| !(v.abs() <= options.max_magnitude)) {
            return Err(Error::Integration {
                message: format!(
                    "state magnitude exceeded {:e} during the step from t={t}",
                    options.max_magnitude
                ),
                last_valid_time: t,
            });
        }
        traj.push((n + 1) as f64 * dt, &y);
    }

    lookup(&traj, steps as f64 * dt, &y, &mut delayed)?;
    system.rhs(&y, &delayed, &mut k1);
    traj.push_derivative(&k1);
    Ok(traj)
}
