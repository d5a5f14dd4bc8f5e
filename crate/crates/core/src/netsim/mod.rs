//! Discrete-time stochastic SIR with delayed isolation on random contact graphs.
//!
//! One simulated day applies, synchronously from the start-of-day state:
//! infection of each susceptible with `m` transmitting neighbours with
//! probability `1 - (1 - rho)^m`, recovery with probability `1 - e^{-gamma}`,
//! and isolation of cases whose scheduled isolation day has arrived. Isolated
//! nodes keep recovering but never transmit.

mod ensemble;
mod epidemic;
mod graph;

pub use ensemble::{
    graph_for_run, run_ensemble, run_rng, simulate_run, DaySummary, EnsembleConfig,
    NetworkEnsembleStats, RunSeries,
};
pub use epidemic::{
    seed_infections, seed_nodes, step_day, DailyRates, DayMetrics, NodeEpiState, NodeStatus,
    SeedingMode,
};
pub use graph::{generate_graph, ContactGraph, DegreeMoments, GraphKind, GraphSpec};
