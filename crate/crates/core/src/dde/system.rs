use crate::error::{Error, Result};
use crate::model::{
    compute_stats, DegreeDistribution, DegreeStats, EpidemicParams, HeterogeneityMode,
};

/// Nonlinear homogeneous SIR with delayed isolation, state `[S, I, R]` as
/// population proportions.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousSir {
    pub beta: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub t_delay: f64,
}

impl HomogeneousSir {
    pub fn new(beta: f64, params: &EpidemicParams) -> Self {
        Self {
            beta,
            gamma: params.gamma(),
            alpha: params.alpha(),
            t_delay: params.t_delay(),
        }
    }

    fn isolation_factor(&self) -> f64 {
        self.alpha * (-self.gamma * self.t_delay).exp()
    }
}

/// Whether susceptible counts evolve or stay pinned at the partition sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SusceptibleMode {
    /// Linearized about the all-susceptible state: `X_k = N_k`.
    #[default]
    Frozen,
    /// Full nonlinear model with `X_k` in the state.
    Dynamic,
}

/// Degree-partitioned SIR with delayed isolation.
///
/// The state holds `Y_1..Y_n` (individuals), preceded by `X_1..X_n` in
/// [`SusceptibleMode::Dynamic`]. Degree-0 individuals only enter through the
/// population size.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedSir {
    rho: f64,
    gamma: f64,
    t_delay: f64,
    /// `N_k` for `k = 1..=n`.
    sizes: Vec<f64>,
    /// Isolated fraction per partition, `k = 1..=n`.
    isolation: Vec<f64>,
    population: f64,
    /// `sum_k k N_k`
    contact_total: f64,
    mode: SusceptibleMode,
}

impl PartitionedSir {
    /// Uniform isolation: every partition isolates the same fraction `alpha`.
    pub fn new(dist: &DegreeDistribution, params: &EpidemicParams, mode: SusceptibleMode) -> Self {
        let n = dist.max_degree();
        let sizes: Vec<f64> = (1..=n).map(|k| dist.count(k) as f64).collect();
        Self {
            rho: params.rho(),
            gamma: params.gamma(),
            t_delay: params.t_delay(),
            isolation: vec![params.alpha(); n],
            population: dist.total() as f64,
            contact_total: dist.raw_sum(1),
            sizes,
            mode,
        }
    }

    /// Replaces the common isolated fraction with one value per degree
    /// `k = 1..=n`.
    pub fn with_isolation_profile(mut self, isolation: Vec<f64>) -> Result<Self> {
        if isolation.len() != self.sizes.len() {
            return Err(Error::domain(format!(
                "isolation profile has {} entries, expected {}",
                isolation.len(),
                self.sizes.len()
            )));
        }
        if isolation.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::domain("isolated fractions must lie in [0, 1]"));
        }
        self.isolation = isolation;
        Ok(self)
    }

    /// Degree-proportional isolation `alpha_k = alpha k / n`.
    pub fn with_degree_proportional_isolation(self, alpha: f64) -> Result<Self> {
        let n = self.sizes.len() as f64;
        let profile = (1..=self.sizes.len())
            .map(|k| alpha * k as f64 / n)
            .collect();
        self.with_isolation_profile(profile)
    }

    pub fn max_degree(&self) -> usize {
        self.sizes.len()
    }

    pub fn population(&self) -> f64 {
        self.population
    }

    pub fn mode(&self) -> SusceptibleMode {
        self.mode
    }

    fn infectious_offset(&self) -> usize {
        match self.mode {
            SusceptibleMode::Frozen => 0,
            SusceptibleMode::Dynamic => self.sizes.len(),
        }
    }

    /// Builds the initial state from infectious counts `Y_k` for `k = 1..=n`.
    pub fn initial_state(&self, infectious: &[f64]) -> Result<Vec<f64>> {
        let n = self.sizes.len();
        if infectious.len() != n {
            return Err(Error::domain(format!(
                "infectious profile has {} entries, expected {n}",
                infectious.len()
            )));
        }
        if infectious.iter().any(|y| !(*y >= 0.0)) {
            return Err(Error::domain("infectious counts must be nonnegative"));
        }
        Ok(match self.mode {
            SusceptibleMode::Frozen => infectious.to_vec(),
            SusceptibleMode::Dynamic => self
                .sizes
                .iter()
                .zip(infectious)
                .map(|(n_k, y)| n_k - y)
                .chain(infectious.iter().copied())
                .collect(),
        })
    }
}

/// Population-level linear dynamics in `[I, lambda]`: infectious proportion
/// and force of infection.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSir {
    pub rho: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub t_delay: f64,
    pub mu: f64,
    /// `sigma^2/mu + mu`, mean degree reached along a random contact.
    pub effective_contacts: f64,
}

impl ReducedSir {
    pub fn new(params: &EpidemicParams, stats: &DegreeStats) -> Self {
        Self {
            rho: params.rho(),
            gamma: params.gamma(),
            alpha: params.alpha(),
            t_delay: params.t_delay(),
            mu: stats.mu,
            effective_contacts: stats.effective_contacts(),
        }
    }

    pub fn from_distribution(dist: &DegreeDistribution, params: &EpidemicParams) -> Result<Self> {
        let stats = compute_stats(dist, HeterogeneityMode::MixedPopulation)?;
        Ok(Self::new(params, &stats))
    }
}

/// One of the three delayed systems.
#[derive(Debug, Clone, PartialEq)]
pub enum DelaySystem {
    Homogeneous(HomogeneousSir),
    Partitioned(PartitionedSir),
    Reduced(ReducedSir),
}

impl DelaySystem {
    pub fn dim(&self) -> usize {
        match self {
            DelaySystem::Homogeneous(_) => 3,
            DelaySystem::Partitioned(p) => match p.mode {
                SusceptibleMode::Frozen => p.sizes.len(),
                SusceptibleMode::Dynamic => 2 * p.sizes.len(),
            },
            DelaySystem::Reduced(_) => 2,
        }
    }

    pub fn delay(&self) -> f64 {
        match self {
            DelaySystem::Homogeneous(s) => s.t_delay,
            DelaySystem::Partitioned(s) => s.t_delay,
            DelaySystem::Reduced(s) => s.t_delay,
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            DelaySystem::Homogeneous(s) => s.gamma,
            DelaySystem::Partitioned(s) => s.gamma,
            DelaySystem::Reduced(s) => s.gamma,
        }
    }

    pub fn component_names(&self) -> Vec<String> {
        match self {
            DelaySystem::Homogeneous(_) => vec!["S".into(), "I".into(), "R".into()],
            DelaySystem::Partitioned(p) => {
                let n = p.sizes.len();
                let ys = (1..=n).map(|k| format!("Y_{k}"));
                match p.mode {
                    SusceptibleMode::Frozen => ys.collect(),
                    SusceptibleMode::Dynamic => {
                        (1..=n).map(|k| format!("X_{k}")).chain(ys).collect()
                    }
                }
            }
            DelaySystem::Reduced(_) => vec!["I".into(), "lambda".into()],
        }
    }

    /// Infectious proportion of the whole population.
    pub fn infectious(&self, y: &[f64]) -> f64 {
        match self {
            DelaySystem::Homogeneous(_) | DelaySystem::Reduced(_) => y[0],
            DelaySystem::Partitioned(p) => {
                y[p.infectious_offset()..].iter().sum::<f64>() / p.population
            }
        }
    }

    /// Force of infection on a susceptible with one contact per day:
    /// `beta I`, `lambda`, or `rho sum k Y_k / sum k N_k`.
    pub fn force_of_infection(&self, y: &[f64]) -> f64 {
        match self {
            DelaySystem::Homogeneous(s) => s.beta * y[1],
            DelaySystem::Reduced(_) => y[1],
            DelaySystem::Partitioned(p) => {
                let weighted: f64 = y[p.infectious_offset()..]
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * v)
                    .sum();
                p.rho * weighted / p.contact_total
            }
        }
    }

    /// Right-hand side given the current state `y` and the state `delayed`
    /// at `t - T_delay`.
    pub fn rhs(&self, y: &[f64], delayed: &[f64], out: &mut [f64]) {
        match self {
            DelaySystem::Homogeneous(s) => {
                let q = s.isolation_factor() * delayed[1];
                let infection = s.beta * y[0] * (y[1] - q);
                let recovery = s.gamma * y[1];
                out[0] = -infection;
                out[1] = infection - recovery;
                out[2] = recovery;
            }
            DelaySystem::Reduced(s) => {
                let decay = s.alpha * (-s.gamma * s.t_delay).exp();
                // isolation-adjusted force of infection
                let xi = y[1] - decay * delayed[1];
                out[0] = -s.gamma * y[0] + s.mu * xi;
                out[1] = s.rho * s.effective_contacts * xi - s.gamma * y[1];
            }
            DelaySystem::Partitioned(p) => {
                let off = p.infectious_offset();
                let decay = (-p.gamma * p.t_delay).exp();
                let mut weighted = 0.0;
                for (i, alpha) in p.isolation.iter().enumerate() {
                    let k = (i + 1) as f64;
                    weighted += k * (y[off + i] - alpha * decay * delayed[off + i]);
                }
                let xi = p.rho * weighted / p.contact_total;
                for i in 0..p.sizes.len() {
                    let k = (i + 1) as f64;
                    let susceptible = match p.mode {
                        SusceptibleMode::Frozen => p.sizes[i],
                        SusceptibleMode::Dynamic => y[i],
                    };
                    let infection = k * susceptible * xi;
                    if p.mode == SusceptibleMode::Dynamic {
                        out[i] = -infection;
                    }
                    out[off + i] = infection - p.gamma * y[off + i];
                }
            }
        }
    }
}

/// Constant-history initial data for the reduced system that is consistent
/// with per-degree infectious counts `Y_k(0)`, `k = 1..=n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedInit {
    pub infectious: f64,
    pub lambda: f64,
}

impl ReducedInit {
    pub fn state(&self) -> Vec<f64> {
        vec![self.infectious, self.lambda]
    }
}

/// `I(0) = sum Y_k / N` and `lambda(0) = rho sum k Y_k / sum k N_k`.
pub fn consistent_reduced_history(
    dist: &DegreeDistribution,
    params: &EpidemicParams,
    infectious: &[f64],
) -> Result<ReducedInit> {
    let n = dist.max_degree();
    if infectious.len() != n {
        return Err(Error::domain(format!(
            "seeding profile has {} entries, expected {n}",
            infectious.len()
        )));
    }
    if infectious.iter().any(|y| !(*y >= 0.0)) {
        return Err(Error::domain("seeding profile must be nonnegative"));
    }
    if infectious.iter().all(|&y| y == 0.0) {
        return Err(Error::domain("seeding profile is all zero"));
    }
    let total: f64 = infectious.iter().sum();
    let weighted: f64 = infectious
        .iter()
        .enumerate()
        .map(|(i, y)| (i + 1) as f64 * y)
        .sum();
    Ok(ReducedInit {
        infectious: total / dist.total() as f64,
        lambda: params.rho() * weighted / dist.raw_sum(1),
    })
}

/// Seeding with `Y_k` proportional to `N_k`, scaled to `total` individuals.
pub fn uniform_seeding(dist: &DegreeDistribution, total: f64) -> Vec<f64> {
    let n = dist.max_degree();
    let mass: f64 = (1..=n).map(|k| dist.count(k) as f64).sum();
    (1..=n)
        .map(|k| total * dist.count(k) as f64 / mass)
        .collect()
}

/// Seeding with `Y_k` proportional to `k N_k`, scaled to `total` individuals.
pub fn degree_weighted_seeding(dist: &DegreeDistribution, total: f64) -> Vec<f64> {
    let n = dist.max_degree();
    let mass = dist.raw_sum(1);
    (1..=n)
        .map(|k| total * k as f64 * dist.count(k) as f64 / mass)
        .collect()
}
