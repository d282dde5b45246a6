//! Translated three-parameter Weibull distribution, its discretization to
//! run counts, and least-squares fitting to empirical run frequencies.
//!
//! The continuous density with scale `a`, location `b` and shape `c` is
//!
//! ```text
//! f(x) = (c/a) * ((x-b)/a)^(c-1) * exp(-((x-b)/a)^c)   for x >= b
//! f(x) = 0                                             for x <  b
//! ```
//!
//! The probability of scoring exactly `r` runs is the cell mass
//! `P(r) = F(r+1) - F(r)` of the cdf `F`. Fitting minimizes the sum of
//! squared deviations between `P(i)` and the observed run frequencies over
//! `i = 0..=30`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optim::{nelder_mead, NelderMeadOptions};

/// Runs are modeled on `0..=MAX_RUNS`; 30 is the historical single-game
/// maximum for one team.
pub const MAX_RUNS: usize = 30;

/// Number of cells in an empirical run pmf (`0..=MAX_RUNS`).
pub const RUN_CELLS: usize = MAX_RUNS + 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeibullError {
    #[error("invalid parameters (scale {scale}, location {location}, shape {shape}): {reason}")]
    InvalidParams {
        scale: f64,
        location: f64,
        shape: f64,
        reason: String,
    },
    #[error("empirical pmf invalid: {0}")]
    InvalidPmf(String),
}

/// Parameters of the translated Weibull: scale > 0, shape > 0, location
/// unconstrained (keep it below 0.5 so that P(0) > 0 is representable).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullParams {
    pub scale: f64,
    pub location: f64,
    pub shape: f64,
}

impl WeibullParams {
    pub fn new(scale: f64, location: f64, shape: f64) -> Result<Self, WeibullError> {
        let p = WeibullParams {
            scale,
            location,
            shape,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), WeibullError> {
        let bad = |reason: &str| WeibullError::InvalidParams {
            scale: self.scale,
            location: self.location,
            shape: self.shape,
            reason: reason.to_string(),
        };
        if !(self.scale.is_finite() && self.location.is_finite() && self.shape.is_finite()) {
            return Err(bad("parameters must be finite"));
        }
        if self.scale <= 0.0 {
            return Err(bad("scale must be positive"));
        }
        if self.shape <= 0.0 {
            return Err(bad("shape must be positive"));
        }
        Ok(())
    }
}

/// Observed run frequencies over `r = 0..=30`.
///
/// For a full data set the entries sum to 1. A strict sub-distribution
/// (sum < 1) is also accepted: frequencies generated under the continuous
/// model can place mass below 0 or above 30, and that mass is simply
/// absent here.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalRunPmf {
    probs: Vec<f64>,
}

impl EmpiricalRunPmf {
    pub fn new(probs: Vec<f64>) -> Result<Self, WeibullError> {
        if probs.len() != RUN_CELLS {
            return Err(WeibullError::InvalidPmf(format!(
                "expected {RUN_CELLS} cells, got {}",
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0 || *p > 1.0) {
            return Err(WeibullError::InvalidPmf(
                "entries must lie in [0, 1]".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if sum <= 0.0 || sum > 1.0 + 1e-9 {
            return Err(WeibullError::InvalidPmf(format!(
                "entries sum to {sum}, expected a value in (0, 1]"
            )));
        }
        Ok(EmpiricalRunPmf { probs })
    }

    /// Builds a pmf from per-run counts, folding any counts above 30 runs
    /// into the last cell. Returns the pmf and the number of folded games.
    pub fn from_counts(counts: &[u64]) -> Result<(Self, u64), WeibullError> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(WeibullError::InvalidPmf("no games counted".into()));
        }
        let mut cells = vec![0u64; RUN_CELLS];
        let mut folded = 0u64;
        for (r, &c) in counts.iter().enumerate() {
            if r < RUN_CELLS {
                cells[r] += c;
            } else {
                cells[MAX_RUNS] += c;
                folded += c;
            }
        }
        let probs = cells.iter().map(|&c| c as f64 / total as f64).collect();
        Ok((EmpiricalRunPmf::new(probs)?, folded))
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, r: usize) -> f64 {
        self.probs.get(r).copied().unwrap_or(0.0)
    }

    /// Mean of the distribution (conditioned on the observed cells).
    pub fn mean(&self) -> f64 {
        let sum: f64 = self.probs.iter().sum();
        let weighted: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(r, p)| r as f64 * p)
            .sum();
        weighted / sum
    }

    /// Standard deviation of the distribution (conditioned on the observed
    /// cells).
    pub fn std_dev(&self) -> f64 {
        let sum: f64 = self.probs.iter().sum();
        let mean = self.mean();
        let var: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(r, p)| (r as f64 - mean).powi(2) * p)
            .sum::<f64>()
            / sum;
        var.max(0.0).sqrt()
    }
}

fn cdf_unchecked(x: f64, p: &WeibullParams) -> f64 {
    if x <= p.location {
        0.0
    } else {
        let z = (x - p.location) / p.scale;
        1.0 - (-z.powf(p.shape)).exp()
    }
}

/// Density of the translated Weibull. Zero below the location parameter.
pub fn pdf(x: f64, p: &WeibullParams) -> Result<f64, WeibullError> {
    p.validate()?;
    if x < p.location {
        return Ok(0.0);
    }
    let z = (x - p.location) / p.scale;
    Ok((p.shape / p.scale) * z.powf(p.shape - 1.0) * (-z.powf(p.shape)).exp())
}

/// Cumulative distribution `1 - exp(-((x-location)/scale)^shape)` above the
/// location, zero at or below it.
pub fn cdf(x: f64, p: &WeibullParams) -> Result<f64, WeibullError> {
    p.validate()?;
    Ok(cdf_unchecked(x, p))
}

/// Probability of exactly `r` runs under the discretized model:
/// `cdf(r+1) - cdf(r)`.
pub fn discrete_pmf(r: u32, p: &WeibullParams) -> Result<f64, WeibullError> {
    p.validate()?;
    Ok(discrete_pmf_unchecked(r, p))
}

fn discrete_pmf_unchecked(r: u32, p: &WeibullParams) -> f64 {
    (cdf_unchecked(f64::from(r) + 1.0, p) - cdf_unchecked(f64::from(r), p)).max(0.0)
}

/// Sum of squared deviations between the discretized model and the observed
/// frequencies over runs `0..=30`.
pub fn objective(p: &WeibullParams, emp: &EmpiricalRunPmf) -> Result<f64, WeibullError> {
    p.validate()?;
    Ok(objective_unchecked(p, emp))
}

fn objective_unchecked(p: &WeibullParams, emp: &EmpiricalRunPmf) -> f64 {
    (0..RUN_CELLS as u32)
        .map(|r| {
            let d = discrete_pmf_unchecked(r, p) - emp.prob(r as usize);
            d * d
        })
        .sum()
}

/// Controls for the least-squares fit.
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Additional simplex runs started from perturbed copies of the
    /// initialization; the best result wins.
    pub restarts: usize,
    /// Simplex collapse tolerance.
    pub tol: f64,
    /// Evaluation budget per simplex run.
    pub max_evals: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            restarts: 5,
            tol: 1e-10,
            max_evals: 10_000,
        }
    }
}

/// Result of a fit. `converged` is false when every simplex run exhausted
/// its budget; the best parameters seen are still returned.
#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub params: WeibullParams,
    pub objective: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// Method-of-moments style starting point: scale from the sample standard
/// deviation, location half a run below the lowest observed count (-0.5
/// for anything supported at zero), shape 1.7.
pub fn default_init(emp: &EmpiricalRunPmf) -> WeibullParams {
    let std = emp.std_dev();
    let min_support = emp
        .probs
        .iter()
        .position(|&p| p > 0.0)
        .unwrap_or(0) as f64;
    WeibullParams {
        scale: if std > 1e-3 { std } else { 0.5 },
        location: min_support - 0.5,
        shape: 1.7,
    }
}

/// Least-squares fit of the discretized Weibull to `emp`.
///
/// Scale and shape are optimized through their logarithms, so the returned
/// parameters are always positive. The search runs Nelder-Mead from `init`
/// and from `opts.restarts` perturbed copies of it, keeping the best
/// endpoint. The final objective never exceeds the objective at `init`.
pub fn fit(
    emp: &EmpiricalRunPmf,
    init: &WeibullParams,
    opts: &FitOptions,
) -> Result<FitOutcome, WeibullError> {
    init.validate()?;

    let to_params = |theta: &[f64]| WeibullParams {
        scale: theta[0].exp(),
        location: theta[1],
        shape: theta[2].exp(),
    };
    let objective_fn = |theta: &[f64]| {
        let p = to_params(theta);
        if !(p.scale.is_finite() && p.shape.is_finite()) {
            return f64::INFINITY;
        }
        objective_unchecked(&p, emp)
    };

    let theta0 = [init.scale.ln(), init.location, init.shape.ln()];
    let nm_opts = NelderMeadOptions {
        tol: opts.tol,
        max_evals: opts.max_evals,
        ..Default::default()
    };

    let mut best: Option<(Vec<f64>, f64, bool)> = None;
    let mut evaluations = 0usize;
    let mut any_converged = false;
    for attempt in 0..=opts.restarts {
        // Deterministic perturbation pattern around the supplied start.
        let scale = 0.25 * attempt as f64 / opts.restarts.max(1) as f64;
        let start: Vec<f64> = theta0
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let sign = if (attempt + j) % 2 == 0 { 1.0 } else { -1.0 };
                t + sign * scale
            })
            .collect();
        let res = nelder_mead(objective_fn, &start, &nm_opts);
        evaluations += res.evaluations;
        any_converged |= res.converged;
        if best.as_ref().map_or(true, |(_, fx, _)| res.fx < *fx) {
            best = Some((res.x, res.fx, res.converged));
        }
    }

    let (theta, fx, _) = best.expect("at least one simplex run");
    Ok(FitOutcome {
        params: to_params(&theta),
        objective: fx,
        converged: any_converged,
        evaluations,
    })
}
