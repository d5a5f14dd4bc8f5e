use rand::seq::index;
use rand::Rng;

use super::ContactGraph;
use crate::error::{Error, Result};
use crate::model::EpidemicParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeStatus {
    Susceptible,
    Infectious,
    Removed,
    /// Still infectious and recovering, but no longer transmitting.
    Isolated,
}

/// Epidemic state of one node. Days are whole-number labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeEpiState {
    pub status: NodeStatus,
    pub infection_day: Option<u32>,
    pub isolation_day: Option<u32>,
}

impl NodeEpiState {
    pub const SUSCEPTIBLE: Self = Self {
        status: NodeStatus::Susceptible,
        infection_day: None,
        isolation_day: None,
    };

    pub fn is_infected(&self) -> bool {
        matches!(self.status, NodeStatus::Infectious | NodeStatus::Isolated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedingMode {
    #[default]
    Uniform,
    /// Sampling without replacement with probability proportional to degree.
    DegreeProportional,
}

/// Per-day network simulation parameters derived from [`EpidemicParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailyRates {
    /// Per-contact daily transmission probability.
    pub rho: f64,
    /// Daily recovery probability `1 - e^{-gamma}`.
    pub recovery: f64,
    pub alpha: f64,
    /// Isolation delay rounded to whole days.
    pub delay_days: u32,
}

impl DailyRates {
    pub fn new(params: &EpidemicParams) -> Self {
        Self {
            rho: params.rho(),
            recovery: 1.0 - (-params.gamma()).exp(),
            alpha: params.alpha(),
            delay_days: params.t_delay().round() as u32,
        }
    }
}

/// Counts and infectious mean degree for one day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DayMetrics {
    pub day: u32,
    pub susceptible: usize,
    pub infectious: usize,
    pub removed: usize,
    pub isolated: usize,
    /// Mean degree over infectious and isolated nodes; `None` when there are none.
    pub mean_inf_degree: Option<f64>,
}

impl DayMetrics {
    pub fn measure(graph: &ContactGraph, states: &[NodeEpiState], day: u32) -> Self {
        let mut m = DayMetrics {
            day,
            susceptible: 0,
            infectious: 0,
            removed: 0,
            isolated: 0,
            mean_inf_degree: None,
        };
        let mut degree_sum = 0u64;
        for (node, s) in states.iter().enumerate() {
            match s.status {
                NodeStatus::Susceptible => m.susceptible += 1,
                NodeStatus::Infectious => m.infectious += 1,
                NodeStatus::Removed => m.removed += 1,
                NodeStatus::Isolated => m.isolated += 1,
            }
            if s.is_infected() {
                degree_sum += graph.degree(node) as u64;
            }
        }
        let infected = m.infectious + m.isolated;
        if infected > 0 {
            m.mean_inf_degree = Some(degree_sum as f64 / infected as f64);
        }
        m
    }
}

/// Picks `count` initial cases. Degree-proportional sampling falls back to
/// uniform among zero-degree nodes once the positive-degree ones run out.
pub fn seed_nodes<R: Rng + ?Sized>(
    graph: &ContactGraph,
    count: usize,
    mode: SeedingMode,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = graph.node_count();
    if count > n {
        return Err(Error::domain(format!("cannot seed {count} of {n} nodes")));
    }
    let mut nodes = match mode {
        SeedingMode::Uniform => index::sample(rng, n, count).into_vec(),
        SeedingMode::DegreeProportional => {
            let mut picked = index::sample_weighted(rng, n, |i| graph.degree(i) as f64, count)
                .map_err(|e| Error::domain(format!("weighted seeding failed: {e}")))?
                .into_vec();
            if picked.len() < count {
                let isolated: Vec<usize> = (0..n).filter(|&i| graph.degree(i) == 0).collect();
                let extra = index::sample(rng, isolated.len(), count - picked.len());
                picked.extend(extra.iter().map(|j| isolated[j]));
            }
            picked
        }
    };
    nodes.sort_unstable();
    Ok(nodes)
}

/// Initial states with `count` cases infected on `day`.
pub fn seed_infections<R: Rng + ?Sized>(
    graph: &ContactGraph,
    count: usize,
    mode: SeedingMode,
    rates: &DailyRates,
    day: u32,
    rng: &mut R,
) -> Result<Vec<NodeEpiState>> {
    let mut states = vec![NodeEpiState::SUSCEPTIBLE; graph.node_count()];
    for node in seed_nodes(graph, count, mode, rng)? {
        states[node] = infect(rates, day, rng);
    }
    Ok(states)
}

fn infect<R: Rng + ?Sized>(rates: &DailyRates, day: u32, rng: &mut R) -> NodeEpiState {
    let isolation_day =
        (rates.alpha > 0.0 && rng.random_bool(rates.alpha)).then(|| day + rates.delay_days);
    let status = if isolation_day == Some(day) {
        NodeStatus::Isolated
    } else {
        NodeStatus::Infectious
    };
    NodeEpiState {
        status,
        infection_day: Some(day),
        isolation_day,
    }
}

/// Advances `states` from `day` to `day + 1` and returns the metrics of the new day.
///
/// Updates are synchronous: infection pressure and recoveries use the
/// start-of-day states. Random draws happen in node order, infections first.
pub fn step_day<R: Rng + ?Sized>(
    graph: &ContactGraph,
    states: &mut [NodeEpiState],
    rates: &DailyRates,
    day: u32,
    rng: &mut R,
) -> DayMetrics {
    let next = day + 1;
    let n = graph.node_count();
    let escape = 1.0 - rates.rho;

    let mut newly: Vec<usize> = Vec::new();
    if rates.rho > 0.0 {
        for node in 0..n {
            if states[node].status != NodeStatus::Susceptible {
                continue;
            }
            let m = graph
                .neighbors(node)
                .iter()
                .filter(|&&v| states[v as usize].status == NodeStatus::Infectious)
                .count();
            if m > 0 && rng.random::<f64>() < 1.0 - escape.powi(m as i32) {
                newly.push(node);
            }
        }
    }

    for s in states.iter_mut() {
        if s.is_infected() && rng.random::<f64>() < rates.recovery {
            *s = NodeEpiState {
                status: NodeStatus::Removed,
                infection_day: s.infection_day,
                isolation_day: None,
            };
        }
    }

    for s in states.iter_mut() {
        if s.status == NodeStatus::Infectious && s.isolation_day.is_some_and(|d| d <= next) {
            s.status = NodeStatus::Isolated;
        }
    }

    for node in newly {
        states[node] = infect(rates, next, rng);
    }

    DayMetrics::measure(graph, states, next)
}
