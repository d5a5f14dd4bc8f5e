//! Delay bounds for case isolation and the rightmost characteristic root.
//!
//! Linearized about the all-susceptible state, the population-level dynamics
//! have characteristic roots `-gamma` and the zeros of
//! `f(s) = s - beta_h (1 - alpha e^{-(gamma + s) T}) + gamma`. The
//! equilibrium is stable iff `Re < 1`, which gives the closed-form delay
//! bound `T < ln(alpha beta_h / (beta_h - gamma)) / gamma`.

mod lambert;
mod roots;

pub use lambert::{lambert_w, Branch};
pub use roots::{
    char_fn, rightmost_root, rightmost_root_report, CharacteristicParams, RootMethod, RootReport,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{effective_beta, DegreeStats, EpidemicParams};

/// Closed-form classification of a parameter set over all delays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerdictKind {
    /// `R0 <= 1`: stable for every delay.
    UnconditionallyStable,
    /// Stable iff the delay is strictly below the bound (days).
    StableUpTo(f64),
    /// `alpha <= 1 - 1/R0`: unstable even with instantaneous isolation.
    InfeasibleAtZeroDelay,
}

impl VerdictKind {
    /// Maximum admissible delay; infinite or zero for the unbounded cases.
    pub fn t_max(&self) -> f64 {
        match *self {
            VerdictKind::UnconditionallyStable => f64::INFINITY,
            VerdictKind::StableUpTo(t) => t,
            VerdictKind::InfeasibleAtZeroDelay => 0.0,
        }
    }

    /// Whether a delay of `t_delay` days keeps the equilibrium asymptotically
    /// stable. The marginal delay `t_delay == t_max` counts as unstable.
    pub fn admits(&self, t_delay: f64) -> bool {
        match *self {
            VerdictKind::UnconditionallyStable => true,
            VerdictKind::StableUpTo(t) => t_delay < t,
            VerdictKind::InfeasibleAtZeroDelay => false,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            VerdictKind::UnconditionallyStable => "unconditionally_stable",
            VerdictKind::StableUpTo(_) => "stable_up_to",
            VerdictKind::InfeasibleAtZeroDelay => "infeasible_at_zero_delay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    /// Rightmost root of `f` at the queried delay.
    pub rightmost_root: Complex64,
    /// `Re(rightmost_root)`.
    pub margin: f64,
    /// The delay the root was evaluated at.
    pub t_delay: f64,
    /// The other characteristic root, `-gamma`, which is always stable.
    pub recovery_root: f64,
    pub root_method: RootMethod,
}

impl StabilityVerdict {
    /// Stability at the queried delay, decided by the closed-form bound.
    pub fn is_stable(&self) -> bool {
        self.kind.admits(self.t_delay)
    }
}

/// Classification for mixing rate `beta_h`, recovery `gamma` and isolated
/// fraction `alpha`.
pub fn classify(beta_h: f64, gamma: f64, alpha: f64) -> VerdictKind {
    if beta_h <= gamma {
        return VerdictKind::UnconditionallyStable;
    }
    let threshold = 1.0 - gamma / beta_h;
    if alpha <= threshold {
        return VerdictKind::InfeasibleAtZeroDelay;
    }
    VerdictKind::StableUpTo((alpha / threshold).ln() / gamma)
}

fn verdict_for(beta_h: f64, params: &EpidemicParams) -> Result<StabilityVerdict> {
    let kind = classify(beta_h, params.gamma(), params.alpha());
    let report = rightmost_root_report(&CharacteristicParams::for_mixing(beta_h, params))?;
    Ok(StabilityVerdict {
        kind,
        rightmost_root: report.root,
        margin: report.root.re,
        t_delay: params.t_delay(),
        recovery_root: -params.gamma(),
        root_method: report.method,
    })
}

/// Delay bound for a homogeneous population with basic reproduction number `r0`.
pub fn homogeneous_delay_bound(params: &EpidemicParams, r0: f64) -> Result<StabilityVerdict> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::domain(format!("R0 must be positive, got {r0}")));
    }
    verdict_for(r0 * params.gamma(), params)
}

/// Delay bound for a heterogeneous population, using `beta_h = rho mu h`.
pub fn heterogeneous_delay_bound(
    params: &EpidemicParams,
    stats: &DegreeStats,
) -> Result<StabilityVerdict> {
    verdict_for(effective_beta(params, stats), params)
}

/// Result of [`max_cv`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxCv {
    /// Positive delays are admissible iff `cv` is strictly below this value.
    Bound(f64),
    /// `R0 (1 - alpha) >= 1`: no positive delay even for a homogeneous population.
    Infeasible,
}

/// Largest contact-rate coefficient of variation that still admits a positive
/// delay, for homogeneous-equivalent `r0 > 1` and `alpha` in `[0, 1)`.
pub fn max_cv(r0: f64, alpha: f64) -> Result<MaxCv> {
    if !(r0 > 1.0 && r0.is_finite()) {
        return Err(Error::domain(format!("max_cv requires R0 > 1, got {r0}")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "max_cv requires alpha in [0, 1), got {alpha}"
        )));
    }
    let radicand = 1.0 / (r0 * (1.0 - alpha)) - 1.0;
    if radicand <= 0.0 {
        Ok(MaxCv::Infeasible)
    } else {
        Ok(MaxCv::Bound(radicand.sqrt()))
    }
}

/// Common isolated fraction equivalent, for stability, to isolating a
/// fraction `alpha * k / n` of each degree-`k` partition.
///
/// Matching the isolation terms weighted by `k^2 N_k` gives
/// `alpha_eff = alpha <k^3> / (n <k^2>)`.
pub fn degree_proportional_alpha(alpha: f64, stats: &DegreeStats, n: usize) -> Result<f64> {
    let k3 = stats.k3.ok_or_else(|| {
        Error::domain("degree-proportional isolation needs the third moment <k^3>")
    })?;
    let denom = n as f64 * stats.second_moment();
    if denom <= 0.0 || !denom.is_finite() {
        return Err(Error::domain(format!(
            "degree-proportional isolation: zero denominator n<k^2> = {denom}"
        )));
    }
    Ok(alpha * k3 / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{compute_stats, DegreeDistribution, HeterogeneityMode};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const MIXED: HeterogeneityMode = HeterogeneityMode::MixedPopulation;

    fn params(alpha: f64, t: f64) -> EpidemicParams {
        EpidemicParams::new(0.075, 0.1, alpha, t).unwrap()
    }

    #[test]
    fn homogeneous_examples() {
        let v = homogeneous_delay_bound(&params(0.8, 0.0), 3.0).unwrap();
        match v.kind {
            VerdictKind::StableUpTo(t) => {
                assert_relative_eq!(t, 1.2f64.ln() / 0.1, epsilon = 1e-12);
                assert!((t - 1.823).abs() < 1e-3);
            }
            k => panic!("unexpected {k:?}"),
        }
        assert!(v.is_stable() && v.margin < 0.0);

        let v = homogeneous_delay_bound(&params(0.6, 0.0), 3.0).unwrap();
        assert_eq!(v.kind, VerdictKind::InfeasibleAtZeroDelay);
        assert!(v.margin > 0.0);

        for alpha in [0.0, 0.3, 1.0] {
            let v = homogeneous_delay_bound(&params(alpha, 20.0), 0.9).unwrap();
            assert_eq!(v.kind, VerdictKind::UnconditionallyStable);
            assert!(v.margin < 0.0);
        }

        assert!(homogeneous_delay_bound(&params(0.8, 0.0), 0.0).is_err());
        assert!(homogeneous_delay_bound(&params(0.8, 0.0), -1.0).is_err());
    }

    #[test]
    fn heterogeneous_examples() {
        // rho mu = 0.3, cv = 0.5 -> beta_h = 0.375
        let stats = DegreeStats::from_mu_cv(4.0, 0.5, MIXED).unwrap();
        let v = heterogeneous_delay_bound(&params(0.8, 0.0), &stats).unwrap();
        let t = v.kind.t_max();
        assert_relative_eq!(t, (0.3f64 / 0.275).ln() / 0.1, epsilon = 1e-12);
        assert!((t - 0.870).abs() < 1e-3);

        let at = |t: f64| {
            heterogeneous_delay_bound(&params(0.8, t), &stats)
                .unwrap()
                .margin
        };
        assert!(at(t * 0.99) < 0.0 && at(t * 1.01) > 0.0);
        assert!(at(t).abs() < 1e-8);

        let just_below = DegreeStats::from_mu_cv(4.0, 0.816, MIXED).unwrap();
        let v = heterogeneous_delay_bound(&params(0.8, 0.0), &just_below).unwrap();
        assert!(matches!(v.kind, VerdictKind::StableUpTo(t) if t > 0.0 && t < 0.01));
        let just_above = DegreeStats::from_mu_cv(4.0, 0.82, MIXED).unwrap();
        let v = heterogeneous_delay_bound(&params(0.8, 0.0), &just_above).unwrap();
        assert_eq!(v.kind, VerdictKind::InfeasibleAtZeroDelay);
    }

    #[test]
    fn max_cv_examples() {
        assert!(matches!(max_cv(3.0, 0.8).unwrap(), MaxCv::Bound(c) if (c - 0.8165).abs() < 1e-4));
        match max_cv(3.0, 0.9).unwrap() {
            MaxCv::Bound(c) => assert_relative_eq!(c, (7.0f64 / 3.0).sqrt(), epsilon = 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(max_cv(3.0, 2.0 / 3.0).unwrap(), MaxCv::Infeasible);
        assert!(max_cv(3.0, 1.0).is_err());
        assert!(max_cv(0.9, 0.5).is_err());
    }

    #[test]
    fn max_cv_matches_sign_change_of_bound() {
        let c = match max_cv(3.0, 0.9).unwrap() {
            MaxCv::Bound(c) => c,
            _ => unreachable!(),
        };
        let p = params(0.9, 0.0);
        let kind = |cv: f64| {
            let stats = DegreeStats::from_mu_cv(4.0, cv, MIXED).unwrap();
            heterogeneous_delay_bound(&p, &stats).unwrap().kind
        };
        assert!(matches!(kind(c - 1e-6), VerdictKind::StableUpTo(_)));
        assert_eq!(kind(c + 1e-6), VerdictKind::InfeasibleAtZeroDelay);
    }

    #[test]
    fn degree_proportional_examples() {
        let stats = compute_stats(&DegreeDistribution::degenerate(5, 10).unwrap(), MIXED).unwrap();
        assert_relative_eq!(
            degree_proportional_alpha(0.7, &stats, 5).unwrap(),
            0.7,
            epsilon = 1e-15
        );

        let d = DegreeDistribution::from_pairs([(1, 500), (7, 500)]).unwrap();
        let stats = compute_stats(&d, MIXED).unwrap();
        let a = degree_proportional_alpha(0.7, &stats, 7).unwrap();
        assert_relative_eq!(a, 0.7 * 172.0 / 175.0, epsilon = 1e-12);
        assert_eq!(degree_proportional_alpha(0.0, &stats, 7).unwrap(), 0.0);

        let no_k3 = DegreeStats::from_mu_cv(4.0, 0.5, MIXED).unwrap();
        assert!(degree_proportional_alpha(0.7, &no_k3, 7).is_err());
        assert!(degree_proportional_alpha(0.7, &stats, 0).is_err());
    }

    #[test]
    fn on_boundary_char_fn_vanishes_at_origin() {
        let stats = DegreeStats::from_mu_cv(4.0, 0.3, MIXED).unwrap();
        let t = heterogeneous_delay_bound(&params(0.85, 0.0), &stats)
            .unwrap()
            .kind
            .t_max();
        let p = params(0.85, t);
        let beta_h = effective_beta(&p, &stats);
        assert!(char_fn(Complex64::new(0.0, 0.0), beta_h, &p).norm() < 1e-15);
    }

    fn arb_bounded() -> impl Strategy<Value = (f64, f64, f64, f64)> {
        // (rho mu, gamma, alpha, cv) with R0_eff > 1 and alpha above threshold
        (0.05f64..1.0, 0.02f64..0.5, 0.0f64..1.0, 0.0f64..1.5).prop_filter_map(
            "bounded verdict",
            |(beta, gamma, alpha, cv)| {
                let bh = beta * (1.0 + cv * cv);
                (bh > gamma * 1.05 && alpha > 1.0 - gamma / bh + 1e-3)
                    .then_some((beta, gamma, alpha, cv))
            },
        )
    }

    proptest! {
        #[test]
        fn verdict_matches_root_sign((beta, gamma, alpha, cv) in arb_bounded(), frac in 0.05f64..3.0) {
            let stats = DegreeStats::from_mu_cv(1.0, cv, MIXED).unwrap();
            let base = EpidemicParams::new(beta, gamma, alpha, 0.0).unwrap();
            let t_max = heterogeneous_delay_bound(&base, &stats).unwrap().kind.t_max();
            prop_assume!((frac - 1.0).abs() > 0.01);
            let v = heterogeneous_delay_bound(&base.with_t_delay(frac * t_max).unwrap(), &stats).unwrap();
            prop_assert_eq!(v.is_stable(), v.margin < 0.0, "t_max={} margin={}", t_max, v.margin);
        }

        #[test]
        fn heterogeneous_reduces_to_homogeneous(rho_mu in 0.01f64..1.0, gamma in 0.01f64..0.5,
                                                alpha in 0.0f64..=1.0, t in 0.0f64..10.0) {
            let p = EpidemicParams::new(rho_mu / 4.0, gamma, alpha, t).unwrap();
            let stats = DegreeStats::from_mu_cv(4.0, 0.0, MIXED).unwrap();
            let het = heterogeneous_delay_bound(&p, &stats).unwrap();
            let hom = homogeneous_delay_bound(&p, rho_mu / gamma).unwrap();
            let (a, b) = (het.kind.t_max(), hom.kind.t_max());
            prop_assert_eq!(het.kind.label(), hom.kind.label());
            if a.is_finite() && a > 0.0 {
                prop_assert!((a - b).abs() <= 1e-12 * a);
            }
        }

        #[test]
        fn f_at_origin_identity(beta_h in 0.0f64..2.0, gamma in 0.01f64..1.0,
                                alpha in 0.0f64..=1.0, t in 0.0f64..20.0) {
            let p = EpidemicParams::new(0.5, gamma, alpha, t).unwrap();
            let f0 = char_fn(Complex64::new(0.0, 0.0), beta_h, &p).re;
            let re = crate::model::reproduction_numbers(beta_h, &p).re;
            let expected = gamma * (1.0 - re);
            prop_assert!((f0 - expected).abs() <= 1e-12 * expected.abs().max(gamma));
        }

        #[test]
        fn t_max_decreasing_in_cv(r0 in 1.01f64..6.0, alpha in 0.0f64..=1.0,
                                  c1 in 0.0f64..2.0, c2 in 0.0f64..2.0) {
            let gamma = 0.1;
            prop_assume!((c1 - c2).abs() > 1e-6);
            let (lo, hi) = if c1 < c2 { (c1, c2) } else { (c2, c1) };
            let p = EpidemicParams::new(r0 * gamma / 4.0, gamma, alpha, 0.0).unwrap();
            let t = |cv: f64| {
                let s = DegreeStats::from_mu_cv(4.0, cv, MIXED).unwrap();
                heterogeneous_delay_bound(&p, &s).unwrap().kind
            };
            if let VerdictKind::StableUpTo(t_hi) = t(hi) {
                prop_assert!(t(lo).t_max() > t_hi);
            }
        }
    }
}
