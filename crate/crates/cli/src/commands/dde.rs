use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use caseiso::dde::{
    consistent_reduced_history, default_growth_window, degree_weighted_seeding,
    estimate_growth_rate, integrate, uniform_seeding, DelaySystem, GrowthFit, History,
    HomogeneousSir, PartitionedSir, ReducedSir, SusceptibleMode, Trajectory,
};
use caseiso::effective_beta;
use caseiso::fmt_f64;
use caseiso::model::DegreeDistribution;
use caseiso::stability::{
    degree_proportional_alpha, heterogeneous_delay_bound, rightmost_root, CharacteristicParams,
};
use caseiso::VerdictKind;
use num_complex::Complex64;

use super::common::{resolve, Resolved};
use crate::args::{
    DdeArgs, HistoryChoice, IsolationScheme, PartitionSeeding, SusceptibleChoice, SystemChoice,
};
use crate::error::{CliError, CliResult};
use crate::output::{io_err, write_file, Meta};

/// Outcome of a single-system integration.
#[derive(Debug, Clone)]
pub struct DdeRun {
    pub resolved: Resolved,
    pub system: DelaySystem,
    pub trajectory: Trajectory,
    pub root: Complex64,
    pub window: (f64, f64),
    pub fit: Result<GrowthFit, String>,
}

/// Outcome of a partitioned/reduced pair.
#[derive(Debug, Clone)]
pub struct PairedRun {
    pub resolved: Resolved,
    pub times: Vec<f64>,
    pub partitioned: Vec<f64>,
    pub reduced: Vec<f64>,
    pub max_rel_gap: f64,
}

fn resolve_with_delay(args: &DdeArgs) -> CliResult<Resolved> {
    let mut resolved = resolve(&args.rates, &args.population)?;
    if args.at_boundary {
        let verdict = heterogeneous_delay_bound(&resolved.params, &resolved.stats)?;
        let VerdictKind::StableUpTo(t_max) = verdict.kind else {
            return Err(CliError::usage(format!(
                "--at-boundary needs a bounded verdict, got {}",
                verdict.kind.label()
            )));
        };
        resolved.params = resolved.params.with_t_delay(t_max)?;
    }
    Ok(resolved)
}

fn require_dist<'a>(resolved: &'a Resolved, what: &str) -> CliResult<&'a DegreeDistribution> {
    resolved
        .dist
        .as_ref()
        .ok_or_else(|| CliError::usage(format!("{what} needs --dist")))
}

fn partition_seed(args: &DdeArgs, dist: &DegreeDistribution) -> Vec<f64> {
    let total = args.initial * dist.total() as f64;
    match args.seeding {
        PartitionSeeding::Uniform => uniform_seeding(dist, total),
        PartitionSeeding::DegreeWeighted => degree_weighted_seeding(dist, total),
    }
}

/// Builds the system and its initial state; the mask marks infectious-like
/// components that follow the exponential history.
fn build(args: &DdeArgs, resolved: &Resolved) -> CliResult<(DelaySystem, Vec<f64>, Vec<bool>)> {
    let params = &resolved.params;
    let i0 = args.initial;
    if !(i0 > 0.0 && i0 < 1.0) {
        return Err(CliError::usage(format!(
            "--initial must lie in (0, 1), got {i0}"
        )));
    }
    Ok(match args.system {
        SystemChoice::Homogeneous => (
            DelaySystem::Homogeneous(HomogeneousSir::new(resolved.beta_h(), params)),
            vec![1.0 - i0, i0, 0.0],
            vec![false, true, false],
        ),
        SystemChoice::Reduced => match &resolved.dist {
            Some(dist) => {
                let init = consistent_reduced_history(dist, params, &partition_seed(args, dist))?;
                (
                    DelaySystem::Reduced(ReducedSir::from_distribution(dist, params)?),
                    init.state(),
                    vec![true, true],
                )
            }
            None => (
                DelaySystem::Reduced(ReducedSir::new(params, &resolved.stats)),
                vec![i0, params.rho() * i0],
                vec![true, true],
            ),
        },
        SystemChoice::Partitioned => {
            let dist = require_dist(resolved, "--system partitioned")?;
            let mode = match args.susceptible {
                SusceptibleChoice::Frozen => SusceptibleMode::Frozen,
                SusceptibleChoice::Dynamic => SusceptibleMode::Dynamic,
            };
            let mut sys = PartitionedSir::new(dist, params, mode);
            if args.isolation == IsolationScheme::DegreeProportional {
                sys = sys.with_degree_proportional_isolation(params.alpha())?;
            }
            let n = sys.max_degree();
            let state = sys.initial_state(&partition_seed(args, dist))?;
            let mut mask = vec![true; state.len()];
            if mode == SusceptibleMode::Dynamic {
                mask[..n].iter_mut().for_each(|m| *m = false);
            }
            (DelaySystem::Partitioned(sys), state, mask)
        }
    })
}

fn history(choice: HistoryChoice, state: Vec<f64>, mask: Vec<bool>, rate: f64) -> History {
    match choice {
        HistoryChoice::Constant => History::Constant(state),
        HistoryChoice::Exponential => {
            let dim = state.len();
            History::Function {
                dim,
                f: Arc::new(move |t, out| {
                    let g = (rate * t).exp();
                    for i in 0..dim {
                        out[i] = if mask[i] { state[i] * g } else { state[i] };
                    }
                }),
            }
        }
    }
}

/// Characteristic parameters of the run, using the equivalent common
/// fraction when isolation is degree-proportional.
fn characteristic(args: &DdeArgs, resolved: &Resolved) -> CliResult<CharacteristicParams> {
    let mut params = resolved.params;
    if args.system == SystemChoice::Partitioned
        && args.isolation == IsolationScheme::DegreeProportional
    {
        let dist = require_dist(resolved, "--system partitioned")?;
        let alpha_eff =
            degree_proportional_alpha(params.alpha(), &resolved.stats, dist.max_degree())?;
        params = params.with_alpha(alpha_eff)?;
    }
    Ok(CharacteristicParams::for_mixing(
        effective_beta(&params, &resolved.stats),
        &params,
    ))
}

pub fn integrate_single(args: &DdeArgs) -> CliResult<DdeRun> {
    let resolved = resolve_with_delay(args)?;
    let root = rightmost_root(&characteristic(args, &resolved)?)?;
    let (system, state, mask) = build(args, &resolved)?;
    let hist = history(args.history, state, mask, root.re);
    let trajectory = integrate(&system, &hist, args.horizon, args.dt)?;
    if let Some((t, i, v)) = trajectory
        .states()
        .zip(trajectory.times())
        .find_map(|(s, &t)| s.iter().position(|v| !v.is_finite()).map(|i| (t, i, s[i])))
    {
        return Err(CliError::Consistency(format!(
            "non-finite component {i} = {v} at t={t}"
        )));
    }
    let p = &resolved.params;
    let mut window = default_growth_window(p.gamma(), p.t_delay(), args.horizon);
    if let Some(start) = args.fit_start {
        window.0 = start;
    }
    let fit = estimate_growth_rate(&trajectory, |s| system.force_of_infection(s), window)
        .map_err(|e| e.to_string());
    Ok(DdeRun {
        resolved,
        system,
        trajectory,
        root,
        window,
        fit,
    })
}

pub fn integrate_paired(args: &DdeArgs) -> CliResult<PairedRun> {
    if args.history != HistoryChoice::Constant {
        return Err(CliError::usage(
            "--paired uses consistent constant histories only",
        ));
    }
    let resolved = resolve_with_delay(args)?;
    let dist = require_dist(&resolved, "--paired")?;
    let params = &resolved.params;
    let seed = partition_seed(args, dist);

    let part = DelaySystem::Partitioned(PartitionedSir::new(dist, params, SusceptibleMode::Frozen));
    let part_tr = integrate(
        &part,
        &History::Constant(seed.clone()),
        args.horizon,
        args.dt,
    )?;
    let init = consistent_reduced_history(dist, params, &seed)?;
    let red = DelaySystem::Reduced(ReducedSir::from_distribution(dist, params)?);
    let red_tr = integrate(
        &red,
        &History::Constant(init.state()),
        args.horizon,
        args.dt,
    )?;

    let partitioned: Vec<f64> = part_tr.states().map(|s| part.infectious(s)).collect();
    let reduced = red_tr.component(0);
    let max_rel_gap = partitioned
        .iter()
        .zip(&reduced)
        .map(|(a, b)| rel_gap(*a, *b))
        .fold(0.0, f64::max);
    Ok(PairedRun {
        times: part_tr.times().to_vec(),
        resolved,
        partitioned,
        reduced,
        max_rel_gap,
    })
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn record_common(meta: &mut Meta, args: &DdeArgs, resolved: &Resolved) {
    resolved.record(meta);
    meta.set("system", format!("{:?}", args.system).to_lowercase())
        .set("dt", fmt_f64(args.dt))
        .set("horizon", fmt_f64(args.horizon))
        .set("history", format!("{:?}", args.history).to_lowercase())
        .set("initial", fmt_f64(args.initial))
        .set("seeding", format!("{:?}", args.seeding).to_lowercase())
        .set("isolation", format!("{:?}", args.isolation).to_lowercase())
        .set(
            "susceptible",
            format!("{:?}", args.susceptible).to_lowercase(),
        )
        .set("at_boundary", args.at_boundary)
        .set("paired", args.paired)
        .set("out", args.out.display());
    if let Some(d) = &args.population.dist {
        meta.set("dist", d.display());
    }
}

pub fn run(args: &DdeArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let out_err = |e| io_err(Path::new("<stdout>"), e);
    let mut meta = Meta::new("dde");
    if args.paired {
        let run = integrate_paired(args)?;
        write_file(&args.out, |w| {
            let io = |e| io_err(&args.out, e);
            writeln!(w, "t,I_partitioned,I_reduced,rel_gap").map_err(io)?;
            for i in 0..run.times.len() {
                let (a, b) = (run.partitioned[i], run.reduced[i]);
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_f64(run.times[i]),
                    fmt_f64(a),
                    fmt_f64(b),
                    fmt_f64(rel_gap(a, b))
                )
                .map_err(io)?;
            }
            Ok(())
        })?;
        record_common(&mut meta, args, &run.resolved);
        meta.set("max_rel_gap", fmt_f64(run.max_rel_gap));
        meta.write_beside(&args.out)?;
        writeln!(
            stdout,
            "result max_rel_gap={} samples={}",
            fmt_f64(run.max_rel_gap),
            run.times.len()
        )
        .map_err(out_err)?;
        return Ok(());
    }

    let run = integrate_single(args)?;
    write_file(&args.out, |w| Ok(run.trajectory.write_csv(w)?))?;
    record_common(&mut meta, args, &run.resolved);
    meta.set("fit_window_start", fmt_f64(run.window.0))
        .set("fit_window_end", fmt_f64(run.window.1));
    let rate = match &run.fit {
        Ok(fit) => fit.rate,
        Err(e) => {
            eprintln!("warning: growth fit unavailable: {e}");
            f64::NAN
        }
    };
    meta.set("growth_rate", fmt_f64(rate));
    meta.write_beside(&args.out)?;
    writeln!(
        stdout,
        "result growth_rate={} rightmost_root_re={} rightmost_root_im={} t_delay={} fit_window_start={} fit_window_end={}",
        fmt_f64(rate),
        fmt_f64(run.root.re),
        fmt_f64(run.root.im),
        fmt_f64(run.resolved.params.t_delay()),
        fmt_f64(run.window.0),
        fmt_f64(run.window.1),
    )
    .map_err(out_err)?;
    Ok(())
}
