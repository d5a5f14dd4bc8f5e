use std::io::Write;

use caseiso::fmt_f64;
use caseiso::model::{effective_beta, DegreeStats, EpidemicParams};
use caseiso::stability::classify;
use caseiso::VerdictKind;

use super::common::parse_range;
use crate::args::{BoundArgs, Sweep};
use crate::error::{CliError, CliResult};
use crate::output::{write_file, Meta};

/// c_v values always present in a c_v sweep.
pub const CV_MARKERS: [f64; 2] = [0.37, 0.67];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub x: f64,
    pub alpha: f64,
    pub verdict: VerdictKind,
}

impl BoundRow {
    pub fn t_max_days(&self) -> f64 {
        self.verdict.t_max()
    }
}

pub fn bound_rows(args: &BoundArgs) -> CliResult<Vec<BoundRow>> {
    if !(args.gamma > 0.0 && args.gamma.is_finite()) {
        return Err(CliError::usage(format!(
            "--gamma must be positive, got {}",
            args.gamma
        )));
    }
    if let Some(a) = args.alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(CliError::usage(format!(
            "alpha values must lie in [0, 1], got {a}"
        )));
    }
    let mut xs = parse_range(&args.range)?;
    if args.sweep == Sweep::Cv {
        for m in CV_MARKERS {
            if !xs.iter().any(|x| (x - m).abs() < 1e-12) {
                xs.push(m);
            }
        }
        xs.sort_by(f64::total_cmp);
    }

    let mut rows = Vec::with_capacity(xs.len() * args.alpha.len());
    for &alpha in &args.alpha {
        for &x in &xs {
            let beta_h = match args.sweep {
                Sweep::R0 => {
                    if !(x > 0.0) {
                        return Err(CliError::usage(format!(
                            "R0 values must be positive, got {x}"
                        )));
                    }
                    x * args.gamma
                }
                Sweep::Cv => {
                    let stats = DegreeStats::from_mu_cv(args.mu, x, args.het_mode.into())?;
                    let params = EpidemicParams::new(
                        args.r0 * args.gamma / args.mu,
                        args.gamma,
                        alpha,
                        0.0,
                    )?;
                    effective_beta(&params, &stats)
                }
            };
            rows.push(BoundRow {
                x,
                alpha,
                verdict: classify(beta_h, args.gamma, alpha),
            });
        }
    }
    Ok(rows)
}

pub fn write_rows<W: Write>(rows: &[BoundRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "x,alpha,T_max_days,verdict")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(r.x),
            fmt_f64(r.alpha),
            fmt_f64(r.t_max_days()),
            r.verdict.label()
        )?;
    }
    Ok(())
}

pub fn run(args: &BoundArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let rows = bound_rows(args)?;
    write_file(&args.out, |w| {
        write_rows(&rows, w).map_err(|e| crate::output::io_err(&args.out, e))
    })?;
    let mut meta = Meta::new("bound");
    meta.set("sweep", format!("{:?}", args.sweep).to_lowercase())
        .set("range", &args.range)
        .set(
            "alpha",
            args.alpha
                .iter()
                .map(|a| fmt_f64(*a))
                .collect::<Vec<_>>()
                .join(";"),
        )
        .set("gamma", fmt_f64(args.gamma))
        .set("t_max_unit", "days")
        .set("out", args.out.display());
    if args.sweep == Sweep::Cv {
        meta.set("r0", fmt_f64(args.r0))
            .set("mu", fmt_f64(args.mu))
            .set("het_mode", format!("{:?}", args.het_mode).to_lowercase())
            .set("cv_markers", "0.37;0.67");
    }
    meta.write_beside(&args.out)?;
    writeln!(
        stdout,
        "result rows={} out={}",
        rows.len(),
        args.out.display()
    )
    .map_err(|e| crate::output::io_err(std::path::Path::new("<stdout>"), e))?;
    Ok(())
}
