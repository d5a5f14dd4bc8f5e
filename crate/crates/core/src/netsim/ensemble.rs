use std::io::Write;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    generate_graph, seed_infections, step_day, ContactGraph, DailyRates, DayMetrics, DegreeMoments,
    GraphSpec, SeedingMode,
};
use crate::error::{Error, Result};
use crate::fmt_f64;
use crate::model::{EpidemicParams, NeumaierSum};

/// Stream used for the shared graph when graphs are reused across runs.
const SHARED_GRAPH_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub graph: GraphSpec,
    pub params: EpidemicParams,
    pub seeding: SeedingMode,
    pub initial_cases: usize,
    pub runs: usize,
    /// Number of reported days; day 1 is the seeded state.
    pub days: u32,
    pub base_seed: u64,
    /// Use one graph realisation for every run instead of one per run.
    pub reuse_graph: bool,
}

impl EnsembleConfig {
    pub const DEFAULT_INITIAL_CASES: usize = 10;

    pub fn new(
        graph: GraphSpec,
        params: EpidemicParams,
        runs: usize,
        days: u32,
        base_seed: u64,
    ) -> Self {
        Self {
            graph,
            params,
            seeding: SeedingMode::Uniform,
            initial_cases: Self::DEFAULT_INITIAL_CASES,
            runs,
            days,
            base_seed,
            reuse_graph: false,
        }
    }
}

/// Daily series of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSeries {
    pub run: usize,
    pub graph_seed: u64,
    pub graph_moments: DegreeMoments,
    pub days: Vec<DayMetrics>,
}

/// Ensemble averages for one day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DaySummary {
    pub day: u32,
    pub mean_susceptible: f64,
    pub mean_infectious: f64,
    pub mean_removed: f64,
    pub mean_isolated: f64,
    /// Mean over runs that have at least one infected node that day.
    pub mean_inf_degree: Option<f64>,
    /// Sample standard deviation across those runs.
    pub stddev_inf_degree: Option<f64>,
    /// Number of runs contributing to the degree statistics.
    pub degree_runs: usize,
}

impl DaySummary {
    /// Standard error of the ensemble mean infectious degree.
    pub fn stderr_inf_degree(&self) -> Option<f64> {
        self.stddev_inf_degree
            .map(|sd| sd / (self.degree_runs as f64).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkEnsembleStats {
    pub base_seed: u64,
    pub node_count: usize,
    pub runs: Vec<RunSeries>,
    pub summary: Vec<DaySummary>,
}

impl NetworkEnsembleStats {
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Degree moments averaged over the graphs used by the runs.
    pub fn mean_graph_moments(&self) -> DegreeMoments {
        let n = self.runs.len() as f64;
        DegreeMoments {
            mean: self.runs.iter().map(|r| r.graph_moments.mean).sum::<f64>() / n,
            variance: self
                .runs
                .iter()
                .map(|r| r.graph_moments.variance)
                .sum::<f64>()
                / n,
        }
    }

    /// Per-run rows: `day,run,S,I,R,isolated,mean_inf_degree`.
    pub fn write_runs_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "day,run,S,I,R,isolated,mean_inf_degree")?;
        for r in &self.runs {
            for d in &r.days {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    d.day,
                    r.run,
                    d.susceptible,
                    d.infectious,
                    d.removed,
                    d.isolated,
                    fmt_f64(d.mean_inf_degree.unwrap_or(f64::NAN))
                )?;
            }
        }
        Ok(())
    }

    /// Aggregated rows: `day,mean_S,mean_I,mean_R,mean_isolated,mean_inf_degree,stddev_inf_degree`.
    pub fn write_summary_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "day,mean_S,mean_I,mean_R,mean_isolated,mean_inf_degree,stddev_inf_degree"
        )?;
        for d in &self.summary {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                d.day,
                fmt_f64(d.mean_susceptible),
                fmt_f64(d.mean_infectious),
                fmt_f64(d.mean_removed),
                fmt_f64(d.mean_isolated),
                fmt_f64(d.mean_inf_degree.unwrap_or(f64::NAN)),
                fmt_f64(d.stddev_inf_degree.unwrap_or(f64::NAN))
            )?;
        }
        Ok(())
    }
}

/// Random stream for one run, fixed by `base_seed` and the run index.
pub fn run_rng(base_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(stream);
    rng
}

/// The graph realisation used by `run`.
pub fn graph_for_run(config: &EnsembleConfig, run: usize) -> Result<ContactGraph> {
    let stream = if config.reuse_graph {
        SHARED_GRAPH_STREAM
    } else {
        run as u64
    };
    generate_graph(&config.graph, run_rng(config.base_seed, stream).next_u64())
}

/// Simulates one run on `graph`, drawing seeds and dynamics from `rng`.
pub fn simulate_run(
    graph: &ContactGraph,
    rates: &DailyRates,
    seeding: SeedingMode,
    initial_cases: usize,
    days: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DayMetrics>> {
    let mut states = seed_infections(graph, initial_cases, seeding, rates, 1, rng)?;
    let mut out = Vec::with_capacity(days as usize);
    if days == 0 {
        return Ok(out);
    }
    out.push(DayMetrics::measure(graph, &states, 1));
    for day in 1..days {
        out.push(step_day(graph, &mut states, rates, day, rng));
    }
    Ok(out)
}

/// Runs the ensemble on the current rayon pool. Results do not depend on
/// the number of threads.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<NetworkEnsembleStats> {
    if config.runs == 0 {
        return Err(Error::domain("ensemble needs at least one run"));
    }
    if config.initial_cases > config.graph.node_count {
        return Err(Error::domain(format!(
            "cannot seed {} of {} nodes",
            config.initial_cases, config.graph.node_count
        )));
    }
    let rates = DailyRates::new(&config.params);
    let shared = if config.reuse_graph {
        Some(graph_for_run(config, 0)?)
    } else {
        None
    };

    let runs: Vec<RunSeries> = (0..config.runs)
        .into_par_iter()
        .map(|run| -> Result<RunSeries> {
            let mut rng = run_rng(config.base_seed, run as u64);
            let owned;
            let graph = match &shared {
                Some(g) => g,
                None => {
                    owned = generate_graph(&config.graph, rng.next_u64())?;
                    &owned
                }
            };
            let days = simulate_run(
                graph,
                &rates,
                config.seeding,
                config.initial_cases,
                config.days,
                &mut rng,
            )?;
            Ok(RunSeries {
                run,
                graph_seed: graph.seed(),
                graph_moments: graph.degree_moments(),
                days,
            })
        })
        .collect::<Result<_>>()?;

    let summary = summarize(&runs, config.days);
    Ok(NetworkEnsembleStats {
        base_seed: config.base_seed,
        node_count: config.graph.node_count,
        runs,
        summary,
    })
}

fn summarize(runs: &[RunSeries], days: u32) -> Vec<DaySummary> {
    let n = runs.len() as f64;
    (0..days as usize)
        .map(|i| {
            let mean_of = |f: fn(&DayMetrics) -> usize| {
                runs.iter().map(|r| f(&r.days[i]) as f64).sum::<f64>() / n
            };
            let degrees: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.days[i].mean_inf_degree)
                .collect();
            let (mean, sd) = mean_and_sd(&degrees);
            DaySummary {
                day: runs[0].days[i].day,
                mean_susceptible: mean_of(|d| d.susceptible),
                mean_infectious: mean_of(|d| d.infectious),
                mean_removed: mean_of(|d| d.removed),
                mean_isolated: mean_of(|d| d.isolated),
                mean_inf_degree: mean,
                stddev_inf_degree: sd,
                degree_runs: degrees.len(),
            }
        })
        .collect()
}

fn mean_and_sd(xs: &[f64]) -> (Option<f64>, Option<f64>) {
    if xs.is_empty() {
        return (None, None);
    }
    let n = xs.len() as f64;
    let mut s = NeumaierSum::default();
    xs.iter().for_each(|&x| s.add(x));
    let mean = s.value() / n;
    if xs.len() < 2 {
        return (Some(mean), None);
    }
    let mut ss = NeumaierSum::default();
    xs.iter().for_each(|&x| ss.add((x - mean) * (x - mean)));
    (Some(mean), Some((ss.value() / (n - 1.0)).sqrt()))
}
