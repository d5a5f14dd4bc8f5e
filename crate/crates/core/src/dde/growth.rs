use super::Trajectory;
use crate::error::{Error, Result};

/// Least-squares fit of `ln(observable) = intercept + rate * t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    /// Exponential growth rate (1/day).
    pub rate: f64,
    pub intercept: f64,
    /// RMS of the log-residuals.
    pub residual_rms: f64,
    pub samples: usize,
}

/// Fits the exponential growth rate of `observable` over samples with
/// `t0 <= t <= t1`.
pub fn estimate_growth_rate<F>(
    traj: &Trajectory,
    observable: F,
    window: (f64, f64),
) -> Result<GrowthFit>
where
    F: Fn(&[f64]) -> f64,
{
    let (t0, t1) = window;
    let (times, values): (Vec<f64>, Vec<f64>) = traj
        .times()
        .iter()
        .zip(traj.states())
        .filter(|(t, _)| **t >= t0 && **t <= t1)
        .map(|(t, s)| (*t, observable(s)))
        .unzip();
    fit_exponential(&times, &values)
}

/// Log-linear least squares on raw samples.
pub fn fit_exponential(times: &[f64], values: &[f64]) -> Result<GrowthFit> {
    if times.len() != values.len() {
        return Err(Error::domain("times and values differ in length"));
    }
    if times.len() < 2 {
        return Err(Error::domain(
            "growth fit needs at least two samples in the window",
        ));
    }
    if let Some((t, v)) = times.iter().zip(values).find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::domain(format!(
            "observable must be positive on the fit window; got {v} at t={t}"
        )));
    }
    let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = times.len() as f64;
    let t_mean = times.iter().sum::<f64>() / n;
    let l_mean = logs.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (t, l) in times.iter().zip(&logs) {
        let dt = t - t_mean;
        sxx += dt * dt;
        sxy += dt * (l - l_mean);
    }
    if sxx == 0.0 {
        return Err(Error::domain("growth fit window has no time spread"));
    }
    let rate = sxy / sxx;
    let intercept = l_mean - rate * t_mean;
    let ss: f64 = times
        .iter()
        .zip(&logs)
        .map(|(t, l)| {
            let r = l - (intercept + rate * t);
            r * r
        })
        .sum();
    Ok(GrowthFit {
        rate,
        intercept,
        residual_rms: (ss / n).sqrt(),
        samples: times.len(),
    })
}

/// Fit window that skips the transient: starts at `5 max(1/gamma, T_delay)`.
pub fn default_growth_window(gamma: f64, t_delay: f64, t_end: f64) -> (f64, f64) {
    (5.0 * (1.0 / gamma).max(t_delay), t_end)
}
