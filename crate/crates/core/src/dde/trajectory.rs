use std::io::Write;

use crate::error::{Error, Result};
use crate::fmt_f64;

/// Sampled solution of a delayed system with a cubic Hermite interpolant
/// over each step.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    names: Vec<String>,
    times: Vec<f64>,
    /// Row-major states, `dim` values per sample.
    states: Vec<f64>,
    /// Right-hand side at each sample, same layout as `states`.
    derivatives: Vec<f64>,
}

impl Trajectory {
    pub(crate) fn with_capacity(names: Vec<String>, samples: usize) -> Self {
        let dim = names.len();
        Self {
            names,
            times: Vec::with_capacity(samples),
            states: Vec::with_capacity(samples * dim),
            derivatives: Vec::with_capacity(samples * dim),
        }
    }

    pub(crate) fn push(&mut self, t: f64, state: &[f64]) {
        debug_assert!(self.times.last().is_none_or(|&last| t > last));
        self.times.push(t);
        self.states.extend_from_slice(state);
    }

    pub(crate) fn push_derivative(&mut self, deriv: &[f64]) {
        self.derivatives.extend_from_slice(deriv);
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn state(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.states[i * d..(i + 1) * d]
    }

    pub fn derivative(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.derivatives[i * d..(i + 1) * d]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn states(&self) -> impl Iterator<Item = &[f64]> {
        self.states.chunks_exact(self.dim())
    }

    /// One component over all samples.
    pub fn component(&self, index: usize) -> Vec<f64> {
        self.states().map(|s| s[index]).collect()
    }

    /// Index of a named component.
    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Hermite interpolation at `t` inside the sampled range, written to `out`.
    ///
    /// Only samples whose derivative is already recorded are used, which is
    /// what lets the integrator read delayed values mid-run.
    pub fn interpolate_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        let known = self.derivatives.len() / self.dim().max(1);
        if known == 0 || t < self.times[0] || t > self.times[known - 1] {
            return Err(Error::domain(format!(
                "t={t} outside the interpolable range of the trajectory"
            )));
        }
        if known == 1 {
            out.copy_from_slice(self.state(0));
            return Ok(());
        }
        // first sample index j with times[j] <= t < times[j+1]
        let j = match self.times[..known].partition_point(|&x| x <= t) {
            0 => 0,
            p => (p - 1).min(known - 2),
        };
        let (t0, t1) = (self.times[j], self.times[j + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let (y0, y1) = (self.state(j), self.state(j + 1));
        let (f0, f1) = (self.derivative(j), self.derivative(j + 1));
        for (i, o) in out.iter_mut().enumerate() {
            *o = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
        }
        Ok(())
    }

    pub fn interpolate(&self, t: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.interpolate_into(t, &mut out)?;
        Ok(out)
    }

    /// First sample with a component below `-threshold`, as `(t, index, value)`.
    pub fn negative_excursion(&self, threshold: f64) -> Option<(f64, usize, f64)> {
        self.states()
            .zip(&self.times)
            .find_map(|(s, &t)| s.iter().position(|&v| v < -threshold).map(|i| (t, i, s[i])))
    }

    /// CSV with header `t,<component names>` and 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        write!(w, "t")?;
        for n in &self.names {
            write!(w, ",{n}")?;
        }
        writeln!(w)?;
        for (t, s) in self.times.iter().zip(self.states()) {
            write!(w, "{}", fmt_f64(*t))?;
            for v in s {
                write!(w, ",{}", fmt_f64(*v))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
