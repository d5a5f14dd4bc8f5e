use std::io::Write;
use std::path::Path;

use caseiso::fmt_f64;
use caseiso::model::reproduction_numbers;
use caseiso::stability::heterogeneous_delay_bound;
use caseiso::{StabilityVerdict, VerdictKind};

use super::common::{resolve, Resolved};
use crate::args::ClassifyArgs;
use crate::error::CliResult;
use crate::output::{io_err, write_file, Meta};

#[derive(Debug, Clone)]
pub struct Classification {
    pub resolved: Resolved,
    pub verdict: StabilityVerdict,
    pub r0: f64,
    pub re: f64,
}

impl Classification {
    /// Single `key=value` line carrying every reported quantity.
    pub fn machine_line(&self) -> String {
        let v = &self.verdict;
        format!(
            "result verdict={} t_max_days={} t_delay={} stable_at_t_delay={} rightmost_root_re={} rightmost_root_im={} root_method={:?} r0={} re={} beta_h={}",
            v.kind.label(),
            fmt_f64(v.kind.t_max()),
            fmt_f64(v.t_delay),
            v.is_stable(),
            fmt_f64(v.rightmost_root.re),
            fmt_f64(v.rightmost_root.im),
            v.root_method,
            fmt_f64(self.r0),
            fmt_f64(self.re),
            fmt_f64(self.resolved.beta_h()),
        )
    }

    pub fn human_lines(&self) -> Vec<String> {
        let v = &self.verdict;
        let mut out = vec![match v.kind {
            VerdictKind::UnconditionallyStable => {
                "verdict: unconditionally stable (R0 <= 1)".to_string()
            }
            VerdictKind::StableUpTo(t) => {
                format!("verdict: stable for isolation delays below {t:.4} days")
            }
            VerdictKind::InfeasibleAtZeroDelay => {
                "verdict: unstable even with zero delay (alpha too small)".to_string()
            }
        }];
        out.push(format!(
            "rightmost root at T_delay={:.4}: {:.6} {:+.6}i ({})",
            v.t_delay,
            v.rightmost_root.re,
            v.rightmost_root.im,
            if v.is_stable() {
                "stable"
            } else {
                "not stable"
            }
        ));
        out.push(format!("R0={:.6} Re={:.6}", self.r0, self.re));
        out
    }
}

pub fn classification(args: &ClassifyArgs) -> CliResult<Classification> {
    let resolved = resolve(&args.rates, &args.population)?;
    let verdict = heterogeneous_delay_bound(&resolved.params, &resolved.stats)?;
    let rn = reproduction_numbers(resolved.beta_h(), &resolved.params);
    Ok(Classification {
        resolved,
        verdict,
        r0: rn.r0,
        re: rn.re,
    })
}

pub fn run(args: &ClassifyArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let c = classification(args)?;
    let line = c.machine_line();
    let out_err = |e| io_err(Path::new("<stdout>"), e);
    for l in c.human_lines() {
        writeln!(stdout, "{l}").map_err(out_err)?;
    }
    writeln!(stdout, "{line}").map_err(out_err)?;
    if let Some(path) = &args.out {
        write_file(path, |w| writeln!(w, "{line}").map_err(|e| io_err(path, e)))?;
        let mut meta = Meta::new("classify");
        c.resolved.record(&mut meta);
        if let Some(d) = &args.population.dist {
            meta.set("dist", d.display());
        }
        meta.set("out", path.display());
        meta.write_beside(path)?;
    }
    Ok(())
}
