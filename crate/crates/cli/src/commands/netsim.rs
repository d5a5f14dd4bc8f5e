use std::io::Write;
use std::path::{Path, PathBuf};

use caseiso::fmt_f64;
use caseiso::model::EpidemicParams;
use caseiso::netsim::{
    graph_for_run, run_ensemble, EnsembleConfig, GraphKind, GraphSpec, NetworkEnsembleStats,
    SeedingMode,
};

use crate::args::{GraphChoice, NetsimArgs, SeedingChoice};
use crate::error::{CliError, CliResult};
use crate::output::{io_err, write_file, Meta};

pub const DESK_SCALE_NODES: usize = 100_000;
pub const DESK_SCALE_RUNS: usize = 100;

pub fn ensemble_config(args: &NetsimArgs) -> CliResult<EnsembleConfig> {
    let (nodes, runs) = if args.desk_scale {
        (DESK_SCALE_NODES, DESK_SCALE_RUNS)
    } else {
        (args.nodes, args.runs)
    };
    let kind = match args.graph {
        GraphChoice::Config => GraphKind::ConfigurationPoisson,
        GraphChoice::Ba => GraphKind::BarabasiAlbert,
        GraphChoice::Ws => GraphKind::WattsStrogatz {
            rewire: args.rewire,
        },
    };
    let graph = GraphSpec::new(kind, nodes, args.mean_degree)?;
    let params = EpidemicParams::new(args.rho, args.gamma, args.alpha, args.t_delay)?;
    let mut cfg = EnsembleConfig::new(graph, params, runs, args.days, args.seed);
    cfg.seeding = match args.seeding {
        SeedingChoice::Uniform => SeedingMode::Uniform,
        SeedingChoice::Degree => SeedingMode::DegreeProportional,
    };
    cfg.initial_cases = args.initial_cases;
    cfg.reuse_graph = args.reuse_graph;
    Ok(cfg)
}

/// Runs the ensemble on a pool of `threads` workers, or the global pool.
pub fn run_with_threads(
    cfg: &EnsembleConfig,
    threads: Option<usize>,
) -> CliResult<NetworkEnsembleStats> {
    match threads {
        None => Ok(run_ensemble(cfg)?),
        Some(0) => Err(CliError::usage("--threads must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::usage(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(|| run_ensemble(cfg))?)
        }
    }
}

fn check_conservation(stats: &NetworkEnsembleStats) -> CliResult<()> {
    for r in &stats.runs {
        for d in &r.days {
            let total = d.susceptible + d.infectious + d.removed + d.isolated;
            if total != stats.node_count {
                return Err(CliError::Consistency(format!(
                    "run {} day {}: compartments sum to {total}, expected {}",
                    r.run, d.day, stats.node_count
                )));
            }
        }
    }
    Ok(())
}

pub fn summary_path(args: &NetsimArgs) -> PathBuf {
    args.summary.clone().unwrap_or_else(|| {
        let mut s = args.out.as_os_str().to_owned();
        s.push(".summary.csv");
        PathBuf::from(s)
    })
}

pub fn run(args: &NetsimArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = ensemble_config(args)?;
    let stats = run_with_threads(&cfg, args.threads)?;
    check_conservation(&stats)?;

    let summary = summary_path(args);
    write_file(&args.out, |w| Ok(stats.write_runs_csv(w)?))?;
    write_file(&summary, |w| Ok(stats.write_summary_csv(w)?))?;
    if let Some(path) = &args.edge_list {
        let g = graph_for_run(&cfg, 0)?;
        write_file(path, |w| Ok(g.write_edge_list(w)?))?;
    }

    let moments = stats.mean_graph_moments();
    let mut meta = Meta::new("netsim");
    let p = &cfg.params;
    meta.set("graph", cfg.graph.kind.tag())
        .set("nodes", cfg.graph.node_count)
        .set("mean_degree", fmt_f64(cfg.graph.mean_degree))
        .set("rho", fmt_f64(p.rho()))
        .set("gamma", fmt_f64(p.gamma()))
        .set("alpha", fmt_f64(p.alpha()))
        .set("t_delay", fmt_f64(p.t_delay()))
        .set("seeding", format!("{:?}", args.seeding).to_lowercase())
        .set("initial_cases", cfg.initial_cases)
        .set("runs", cfg.runs)
        .set("days", cfg.days)
        .set("base_seed", cfg.base_seed)
        .set("reuse_graph", cfg.reuse_graph)
        .set("desk_scale", args.desk_scale)
        .set("measured_mean_degree", fmt_f64(moments.mean))
        .set("measured_degree_variance", fmt_f64(moments.variance))
        .set("effective_contacts", fmt_f64(moments.effective_contacts()))
        .set("out", args.out.display())
        .set("summary", summary.display());
    if let GraphKind::WattsStrogatz { rewire } = cfg.graph.kind {
        meta.set("rewire", fmt_f64(rewire));
    }
    if let Some(path) = &args.edge_list {
        meta.set("edge_list", path.display());
    }
    // thread count is deliberately absent: it never changes the output
    meta.write_beside(&args.out)?;

    writeln!(
        stdout,
        "result runs={} days={} measured_mean_degree={} measured_degree_variance={} effective_contacts={}",
        cfg.runs,
        cfg.days,
        fmt_f64(moments.mean),
        fmt_f64(moments.variance),
        fmt_f64(moments.effective_contacts())
    )
    .map_err(|e| io_err(Path::new("<stdout>"), e))?;
    Ok(())
}
