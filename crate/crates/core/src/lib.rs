//! Stability analysis and simulation of delayed case isolation in SIR
//! populations with heterogeneous contact rates.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: epidemic parameters, degree distributions and their moments.
//! - [`stability`]: closed-form delay bounds, the scalar characteristic
//!   function and its rightmost root (via the Lambert W function).
//! - [`dde`]: a fixed-step method-of-steps RK4 integrator for the
//!   homogeneous, partitioned and reduced delayed systems.
//! - [`netsim`]: discrete-time stochastic SIR with isolation on random
//!   contact graphs, run as seeded ensembles.
//!
//! All models assume a closed population early in the outbreak: no imported
//! cases, no loss of immunity, and (for the linear systems) a susceptible
//! pool that is not depleted.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dde;
pub mod error;
pub mod model;
pub mod netsim;
pub mod stability;

pub use error::{Error, Result};
pub use model::{
    compute_stats, effective_beta, reproduction_numbers, DegreeDistribution, DegreeStats,
    EpidemicParams, HeterogeneityMode, ReproductionNumbers,
};
pub use stability::{StabilityVerdict, VerdictKind};

/// Formats a float with 17 significant digits so CSV output round-trips.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}
