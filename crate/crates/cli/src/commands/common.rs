use std::path::Path;

use caseiso::model::{compute_stats, DegreeDistribution, DegreeStats, EpidemicParams};
use caseiso::{effective_beta, fmt_f64};

use crate::args::{PopulationArgs, RateArgs};
use crate::error::{CliError, CliResult};
use crate::output::{io_err, Meta};

/// Parameters after resolving `--r0` and the population description.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: EpidemicParams,
    pub stats: DegreeStats,
    pub dist: Option<DegreeDistribution>,
}

impl Resolved {
    pub fn beta_h(&self) -> f64 {
        effective_beta(&self.params, &self.stats)
    }

    pub fn record(&self, meta: &mut Meta) {
        let p = &self.params;
        meta.set("rho", fmt_f64(p.rho()))
            .set("gamma", fmt_f64(p.gamma()))
            .set("alpha", fmt_f64(p.alpha()))
            .set("t_delay", fmt_f64(p.t_delay()))
            .set("mu", fmt_f64(self.stats.mu))
            .set("sigma", fmt_f64(self.stats.sigma))
            .set("cv", fmt_f64(self.stats.cv))
            .set("h", fmt_f64(self.stats.h))
            .set("het_mode", format!("{:?}", self.stats.mode))
            .set("beta_h", fmt_f64(self.beta_h()));
    }
}

pub fn read_distribution(path: &Path) -> CliResult<DegreeDistribution> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(text.parse()?)
}

pub fn resolve(rates: &RateArgs, pop: &PopulationArgs) -> CliResult<Resolved> {
    let mode = pop.het_mode.into();
    let (stats, dist) = match &pop.dist {
        Some(path) => {
            let dist = read_distribution(path)?;
            (compute_stats(&dist, mode)?, Some(dist))
        }
        None => (DegreeStats::from_mu_cv(pop.mu, pop.cv, mode)?, None),
    };
    let rho = match (rates.rho, rates.r0) {
        (Some(rho), None) => rho,
        (None, Some(r0)) => r0 * rates.gamma / stats.mu,
        _ => return Err(CliError::usage("give exactly one of --rho and --r0")),
    };
    let params = EpidemicParams::new(rho, rates.gamma, rates.alpha, rates.t_delay)?;
    Ok(Resolved {
        params,
        stats,
        dist,
    })
}

/// Parses an inclusive `start:stop:step` range.
pub fn parse_range(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        CliError::usage(format!(
            "malformed range {spec:?}; expected start:stop:step"
        ))
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite() && stop >= start) {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 10_000_000 {
        return Err(CliError::usage(format!(
            "range {spec:?} has too many points"
        )));
    }
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}
