//! Epidemic parameters, contact-degree distributions and derived moments.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Transmission, recovery and isolation parameters shared by every model.
///
/// `rho` is the per-contact transmission rate, `gamma` the recovery rate,
/// `alpha` the fraction of new cases that get isolated and `t_delay` the
/// delay in days between infection and isolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpidemicParams {
    rho: f64,
    gamma: f64,
    alpha: f64,
    t_delay: f64,
}

impl EpidemicParams {
    pub fn new(rho: f64, gamma: f64, alpha: f64, t_delay: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::domain(format!("rho must lie in [0, 1], got {rho}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if !(t_delay >= 0.0 && t_delay.is_finite()) {
            return Err(Error::domain(format!(
                "t_delay must be finite and nonnegative, got {t_delay}"
            )));
        }
        Ok(Self {
            rho,
            gamma,
            alpha,
            t_delay,
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn t_delay(&self) -> f64 {
        self.t_delay
    }

    /// Same parameters with a different isolation delay.
    pub fn with_t_delay(&self, t_delay: f64) -> Result<Self> {
        Self::new(self.rho, self.gamma, self.alpha, t_delay)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.rho, self.gamma, alpha, self.t_delay)
    }

    /// Surviving, isolated fraction `alpha * exp(-gamma * t_delay)` of a cohort
    /// infected `t_delay` days ago.
    pub fn isolation_factor(&self) -> f64 {
        self.alpha * (-self.gamma * self.t_delay).exp()
    }
}

/// Exact integer head-counts `N_k` of individuals with `k` contacts per day.
///
/// Degree-0 individuals are allowed; they count toward the population but
/// never transmit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDistribution {
    counts: Vec<u64>,
}

impl DegreeDistribution {
    /// Builds a distribution from counts indexed by degree (`counts[k] = N_k`).
    pub fn from_counts(mut counts: Vec<u64>) -> Result<Self> {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::domain("degree distribution is empty"));
        }
        if counts.iter().skip(1).all(|&c| c == 0) {
            return Err(Error::domain(
                "degree distribution has no individuals with k >= 1",
            ));
        }
        Ok(Self { counts })
    }

    /// Builds a distribution from `(k, N_k)` pairs. Repeated degrees are summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in pairs {
            *map.entry(k).or_insert(0u64) += c;
        }
        let n = map.keys().next_back().copied().unwrap_or(0);
        let mut counts = vec![0u64; n + 1];
        for (k, c) in map {
            counts[k] = c;
        }
        Self::from_counts(counts)
    }

    /// Population with every individual at degree `k`.
    pub fn degenerate(k: usize, count: u64) -> Result<Self> {
        Self::from_pairs([(k, count)])
    }

    /// `N_k`; zero for degrees outside the support.
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// Maximum degree `n` with `N_n > 0`.
    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }

    /// Total population `N`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(k, N_k)` for every degree with a nonzero count.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k, c))
    }

    /// Counts indexed by degree, `0..=max_degree`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `sum_k k^p N_k`, compensated.
    pub fn raw_sum(&self, p: i32) -> f64 {
        let mut acc = NeumaierSum::default();
        for (k, c) in self.iter() {
            acc.add((k as f64).powi(p) * c as f64);
        }
        acc.value()
    }
}

impl FromStr for DegreeDistribution {
    type Err = Error;

    /// Parses the `k,count` text format. The header line is required; LF and
    /// CRLF line endings are both accepted and blank lines are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim() == "k,count" => {}
            Some((_, header)) => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header `k,count`, found `{}`", header.trim()),
                })
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "missing header `k,count`".into(),
                })
            }
        }

        let mut seen = BTreeMap::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let (k, count) = line
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected `k,count`, found `{line}`")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("invalid degree `{}`: {e}", k.trim())))?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("invalid count `{}`: {e}", count.trim())))?;
            if seen.insert(k, count).is_some() {
                return Err(parse_err(format!("degree {k} listed twice")));
            }
        }
        DegreeDistribution::from_pairs(seen).map_err(|e| match e {
            Error::Domain(message) => Error::Parse {
                line: text.lines().count().max(1),
                message,
            },
            other => other,
        })
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k,count")?;
        for (k, c) in self.iter() {
            writeln!(f, "{k},{c}")?;
        }
        Ok(())
    }
}

/// How contact-rate variance maps onto the effective mixing rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeterogeneityMode {
    /// Well-mixed partitions: `h = cv^2 + 1`.
    #[default]
    MixedPopulation,
    /// Fixed contact graph, where an infectious node cannot reinfect its
    /// infector: `h = (mu + sigma^2/mu - 1) / mu`.
    FixedGraph,
}

/// Moments of a degree distribution and the resulting heterogeneity factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub mu: f64,
    pub sigma: f64,
    pub cv: f64,
    /// Third raw moment `<k^3>`; unknown when built from `(mu, sigma)` alone.
    pub k3: Option<f64>,
    pub h: f64,
    pub mode: HeterogeneityMode,
}

impl DegreeStats {
    /// Stats from a mean and standard deviation, without a full distribution.
    pub fn from_moments(mu: f64, sigma: f64, mode: HeterogeneityMode) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!(
                "mean degree must be positive, got {mu}"
            )));
        }
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!(
                "degree standard deviation must be nonnegative, got {sigma}"
            )));
        }
        Ok(Self::assemble(mu, sigma, None, mode))
    }

    /// Stats from a mean and coefficient of variation.
    pub fn from_mu_cv(mu: f64, cv: f64, mode: HeterogeneityMode) -> Result<Self> {
        Self::from_moments(mu, cv * mu, mode)
    }

    fn assemble(mu: f64, sigma: f64, k3: Option<f64>, mode: HeterogeneityMode) -> Self {
        let cv = sigma / mu;
        let h = match mode {
            HeterogeneityMode::MixedPopulation => cv * cv + 1.0,
            HeterogeneityMode::FixedGraph => (mu + sigma * sigma / mu - 1.0) / mu,
        };
        Self {
            mu,
            sigma,
            cv,
            k3,
            h,
            mode,
        }
    }

    /// Second raw moment `<k^2> = sigma^2 + mu^2`.
    pub fn second_moment(&self) -> f64 {
        self.sigma * self.sigma + self.mu * self.mu
    }

    /// Mean degree of a contact reached by following a random edge,
    /// `mu + sigma^2/mu`.
    pub fn effective_contacts(&self) -> f64 {
        self.mu + self.sigma * self.sigma / self.mu
    }
}

/// Exact moments of `dist` and its heterogeneity factor under `mode`.
pub fn compute_stats(dist: &DegreeDistribution, mode: HeterogeneityMode) -> Result<DegreeStats> {
    let n = dist.total() as f64;
    if n <= 0.0 {
        return Err(Error::domain("degree distribution is empty"));
    }
    let mu = dist.raw_sum(1) / n;
    if mu <= 0.0 {
        return Err(Error::domain("mean degree is zero"));
    }
    let mut var = NeumaierSum::default();
    for (k, c) in dist.iter() {
        let d = k as f64 - mu;
        var.add(d * d * c as f64);
    }
    let sigma = (var.value() / n).max(0.0).sqrt();
    let k3 = dist.raw_sum(3) / n;
    Ok(DegreeStats::assemble(mu, sigma, Some(k3), mode))
}

/// Effective mixing rate `beta = rho * mu * h` (1/day).
pub fn effective_beta(params: &EpidemicParams, stats: &DegreeStats) -> f64 {
    params.rho() * stats.mu * stats.h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReproductionNumbers {
    /// Basic reproduction number `beta / gamma`.
    pub r0: f64,
    /// Effective reproduction number under isolation.
    pub re: f64,
}

/// `R0 = beta/gamma` and `Re = R0 (1 - alpha e^{-gamma T})`.
pub fn reproduction_numbers(beta: f64, params: &EpidemicParams) -> ReproductionNumbers {
    let r0 = beta / params.gamma();
    ReproductionNumbers {
        r0,
        re: r0 * (1.0 - params.isolation_factor()),
    }
}

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
