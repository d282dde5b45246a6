//! Random score generators for simulated games.
//!
//! Two models, both built from discretized Weibull run distributions:
//!
//! * [`SimpleWeibullModel`] draws home and away scores independently and
//!   rejects ties, redrawing the whole pair.
//! * [`BivariateScoreModel`] draws a run difference k from the observed
//!   diagonal weights, then an away score from that diagonal's
//!   distribution, yielding home = away + k with no ties by construction.
//!
//! Samplers precompute cumulative tables once so the Monte Carlo inner
//! loop only does two uniform draws and two binary searches per game.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::core::GameRecord;
use crate::weibull::{
    self, discrete_pmf, EmpiricalRunPmf, FitOptions, WeibullError, WeibullParams,
};

/// Upper bound on the modeled runs per team, matching the run cells of the
/// Weibull fit.
pub const DEFAULT_MAX_RUNS: u32 = weibull::MAX_RUNS as u32;

/// Redraw attempts before a tie-rejection sampler gives up; hitting it
/// signals degenerate parameters.
pub const REJECTION_LIMIT: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Weibull(#[from] WeibullError),
    #[error("{0} consecutive tied draws; score distributions look degenerate")]
    RejectionLimit(usize),
    #[error("score pair ({0}, {0}) is a tie; the model has no mass there")]
    TieQuery(u32),
    #[error("score {score} outside the modeled range 0..={max_runs}")]
    ScoreOutOfRange { score: u32, max_runs: u32 },
    #[error("no games to fit")]
    EmptyInput,
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

fn default_max_runs() -> u32 {
    DEFAULT_MAX_RUNS
}

/// Independent home/away Weibull marginals with tie rejection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimpleWeibullModel {
    pub home: WeibullParams,
    pub away: WeibullParams,
    #[serde(default = "default_max_runs")]
    pub max_runs: u32,
}

impl SimpleWeibullModel {
    pub fn new(home: WeibullParams, away: WeibullParams) -> Result<Self, ModelError> {
        let m = SimpleWeibullModel {
            home,
            away,
            max_runs: DEFAULT_MAX_RUNS,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        validate_max_runs(self.max_runs)?;
        self.home.validate()?;
        self.away.validate()?;
        Ok(())
    }
}

/// One diagonal of the score grid: all scores with home - away = k.
/// Carries either fitted Weibull parameters or, for sparsely populated
/// diagonals, the empirical away-score pmf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagonal {
    pub k: i32,
    pub weight: f64,
    /// Number of historical games on this diagonal.
    pub games: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<WeibullParams>,
    /// Least-squares objective of the fit, when `params` is present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    /// Away-score frequencies over `0..=max_runs`, when no fit was done.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical_pmf: Option<Vec<f64>>,
}

/// Weighted family of per-diagonal distributions; k = 0 is absent because
/// games cannot tie.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BivariateScoreModel {
    #[serde(default = "default_max_runs")]
    pub max_runs: u32,
    /// Sorted by k; only diagonals observed in data are present.
    pub diagonals: Vec<Diagonal>,
}

impl BivariateScoreModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        validate_max_runs(self.max_runs)?;
        if self.diagonals.is_empty() {
            return Err(ModelError::InvalidModel("no diagonals".into()));
        }
        let mut weight_sum = 0.0;
        let mut prev_k: Option<i32> = None;
        for d in &self.diagonals {
            if d.k == 0 {
                return Err(ModelError::InvalidModel("k = 0 diagonal (ties)".into()));
            }
            if d.k.unsigned_abs() > self.max_runs - 1 {
                return Err(ModelError::InvalidModel(format!(
                    "diagonal k = {} outside +-{}",
                    d.k,
                    self.max_runs - 1
                )));
            }
            if let Some(p) = prev_k {
                if d.k <= p {
                    return Err(ModelError::InvalidModel(
                        "diagonals must be sorted by k and distinct".into(),
                    ));
                }
            }
            prev_k = Some(d.k);
            if !(0.0..=1.0).contains(&d.weight) {
                return Err(ModelError::InvalidModel(format!(
                    "weight {} outside [0, 1]",
                    d.weight
                )));
            }
            weight_sum += d.weight;
            match (&d.params, &d.empirical_pmf) {
                (Some(p), None) => p.validate()?,
                (None, Some(pmf)) => {
                    if pmf.len() != self.max_runs as usize + 1 {
                        return Err(ModelError::InvalidModel(format!(
                            "diagonal k = {}: empirical pmf has {} cells, expected {}",
                            d.k,
                            pmf.len(),
                            self.max_runs + 1
                        )));
                    }
                    if pmf.iter().any(|p| !p.is_finite() || *p < 0.0) {
                        return Err(ModelError::InvalidModel(format!(
                            "diagonal k = {}: negative empirical pmf entry",
                            d.k
                        )));
                    }
                }
                _ => {
                    return Err(ModelError::InvalidModel(format!(
                        "diagonal k = {}: exactly one of params or empirical_pmf required",
                        d.k
                    )))
                }
            }
        }
        if (weight_sum - 1.0).abs() > 1e-9 {
            return Err(ModelError::InvalidModel(format!(
                "diagonal weights sum to {weight_sum}, expected 1"
            )));
        }
        Ok(())
    }
}

/// A score model of either flavor. This is what the simulator consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScoreModel {
    Simple(SimpleWeibullModel),
    Bivariate(BivariateScoreModel),
}

impl ScoreModel {
    pub fn max_runs(&self) -> u32 {
        match self {
            ScoreModel::Simple(m) => m.max_runs,
            ScoreModel::Bivariate(m) => m.max_runs,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            ScoreModel::Simple(m) => m.validate(),
            ScoreModel::Bivariate(m) => m.validate(),
        }
    }

    /// Builds the precomputed sampler for this model.
    pub fn sampler(&self) -> Result<ScoreSampler, ModelError> {
        ScoreSampler::new(self)
    }

    /// Exact probability that the sampler produces (home, away). Sums to 1
    /// over all non-tied pairs in range.
    pub fn pmf(&self, home: u32, away: u32) -> Result<f64, ModelError> {
        let max_runs = self.max_runs();
        for &score in &[home, away] {
            if score > max_runs {
                return Err(ModelError::ScoreOutOfRange { score, max_runs });
            }
        }
        if home == away {
            return Err(ModelError::TieQuery(home));
        }
        match self {
            ScoreModel::Simple(m) => {
                let ph = truncated_marginal(&m.home, max_runs)?;
                let pa = truncated_marginal(&m.away, max_runs)?;
                let tie_mass: f64 = ph.iter().zip(&pa).map(|(h, a)| h * a).sum();
                Ok(ph[home as usize] * pa[away as usize] / (1.0 - tie_mass))
            }
            ScoreModel::Bivariate(m) => {
                let k = home as i64 - away as i64;
                let Some(diag) = m.diagonals.iter().find(|d| i64::from(d.k) == k) else {
                    return Ok(0.0);
                };
                let (a_min, pmf) = diagonal_away_pmf(diag, max_runs)?;
                let idx = away as usize - a_min as usize;
                Ok(diag.weight * pmf.get(idx).copied().unwrap_or(0.0))
            }
        }
    }
}

fn validate_max_runs(max_runs: u32) -> Result<(), ModelError> {
    if max_runs == 0 || max_runs > DEFAULT_MAX_RUNS {
        return Err(ModelError::InvalidModel(format!(
            "max_runs must be in 1..={DEFAULT_MAX_RUNS}, got {max_runs}"
        )));
    }
    Ok(())
}

/// Discretized Weibull pmf truncated to `0..=max_runs` and renormalized.
fn truncated_marginal(p: &WeibullParams, max_runs: u32) -> Result<Vec<f64>, ModelError> {
    let raw: Vec<f64> = (0..=max_runs)
        .map(|r| discrete_pmf(r, p))
        .collect::<Result<_, _>>()?;
    let total: f64 = raw.iter().sum();
    if total <= 1e-12 {
        return Err(ModelError::InvalidModel(format!(
            "parameters {p:?} put no mass on 0..={max_runs}"
        )));
    }
    Ok(raw.iter().map(|v| v / total).collect())
}

/// Away-score pmf along one diagonal, truncated to the range where both
/// scores stay within `0..=max_runs` and renormalized. Returns the lowest
/// valid away score and the pmf starting there.
fn diagonal_away_pmf(diag: &Diagonal, max_runs: u32) -> Result<(u32, Vec<f64>), ModelError> {
    let a_min = if diag.k < 0 { diag.k.unsigned_abs() } else { 0 };
    let a_max = if diag.k > 0 {
        max_runs - diag.k as u32
    } else {
        max_runs
    };
    let raw: Vec<f64> = match (&diag.params, &diag.empirical_pmf) {
        (Some(p), None) => (a_min..=a_max)
            .map(|a| discrete_pmf(a, p))
            .collect::<Result<_, _>>()?,
        (None, Some(pmf)) => (a_min..=a_max).map(|a| pmf[a as usize]).collect(),
        _ => {
            return Err(ModelError::InvalidModel(format!(
                "diagonal k = {}: exactly one of params or empirical_pmf required",
                diag.k
            )))
        }
    };
    let total: f64 = raw.iter().sum();
    if total <= 1e-12 {
        return Err(ModelError::InvalidModel(format!(
            "diagonal k = {} has no mass on its valid away-score range",
            diag.k
        )));
    }
    Ok((a_min, raw.iter().map(|v| v / total).collect()))
}

fn cumulative(pmf: &[f64]) -> Vec<f64> {
    let mut cum = Vec::with_capacity(pmf.len());
    let mut acc = 0.0;
    for p in pmf {
        acc += p;
        cum.push(acc);
    }
    if let Some(last) = cum.last_mut() {
        *last = 1.0;
    }
    cum
}

fn draw_index<R: Rng + ?Sized>(cum: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    cum.partition_point(|&c| c <= u).min(cum.len() - 1)
}

enum SamplerTables {
    Simple {
        home_cum: Vec<f64>,
        away_cum: Vec<f64>,
    },
    Bivariate {
        k_cum: Vec<f64>,
        diagonals: Vec<DiagonalTable>,
    },
}

struct DiagonalTable {
    k: i32,
    a_min: u32,
    away_cum: Vec<f64>,
}

/// Precomputed sampling tables for a [`ScoreModel`]. Cheap to sample from,
/// immutable, and safe to share across simulation workers.
pub struct ScoreSampler {
    tables: SamplerTables,
}

impl ScoreSampler {
    pub fn new(model: &ScoreModel) -> Result<Self, ModelError> {
        model.validate()?;
        let tables = match model {
            ScoreModel::Simple(m) => SamplerTables::Simple {
                home_cum: cumulative(&truncated_marginal(&m.home, m.max_runs)?),
                away_cum: cumulative(&truncated_marginal(&m.away, m.max_runs)?),
            },
            ScoreModel::Bivariate(m) => {
                let mut diagonals = Vec::with_capacity(m.diagonals.len());
                let mut weights = Vec::with_capacity(m.diagonals.len());
                for d in &m.diagonals {
                    let (a_min, pmf) = diagonal_away_pmf(d, m.max_runs)?;
                    diagonals.push(DiagonalTable {
                        k: d.k,
                        a_min,
                        away_cum: cumulative(&pmf),
                    });
                    weights.push(d.weight);
                }
                SamplerTables::Bivariate {
                    k_cum: cumulative(&weights),
                    diagonals,
                }
            }
        };
        Ok(ScoreSampler { tables })
    }

    /// Draws one (home_runs, away_runs) pair. Never returns a tie.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(u8, u8), ModelError> {
        match &self.tables {
            SamplerTables::Simple { home_cum, away_cum } => {
                for _ in 0..REJECTION_LIMIT {
                    let h = draw_index(home_cum, rng);
                    let a = draw_index(away_cum, rng);
                    if h != a {
                        return Ok((h as u8, a as u8));
                    }
                }
                Err(ModelError::RejectionLimit(REJECTION_LIMIT))
            }
            SamplerTables::Bivariate { k_cum, diagonals } => {
                let diag = &diagonals[draw_index(k_cum, rng)];
                let a = diag.a_min as i64 + draw_index(&diag.away_cum, rng) as i64;
                let h = a + i64::from(diag.k);
                Ok((h as u8, a as u8))
            }
        }
    }
}

/// Controls for [`fit_bivariate_with`].
#[derive(Debug, Clone)]
pub struct BivariateFitOptions {
    /// Diagonals with fewer games than this keep their empirical pmf
    /// instead of a 3-parameter fit.
    pub min_fit_games: u64,
    pub fit: FitOptions,
}

impl Default for BivariateFitOptions {
    fn default() -> Self {
        BivariateFitOptions {
            min_fit_games: 20,
            fit: FitOptions::default(),
        }
    }
}

/// Bookkeeping from a bivariate fit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BivariateFitDiagnostics {
    pub total_games: u64,
    /// Games whose scores were clamped down to `max_runs`.
    pub folded_games: u64,
    /// Games dropped because their run difference cannot be represented
    /// (|k| >= max_runs, or a fold collapsed the game to a tie).
    pub skipped_games: u64,
    pub fitted_diagonals: usize,
    pub empirical_diagonals: usize,
    /// Structural diagonal count 2*(max_runs - 1), for comparison with the
    /// populated count.
    pub structural_diagonals: usize,
}

/// Fits the diagonal-weighted bivariate model with default options.
pub fn fit_bivariate(
    games: &[GameRecord],
    max_runs: u32,
) -> Result<(BivariateScoreModel, BivariateFitDiagnostics), ModelError> {
    fit_bivariate_with(games, max_runs, &BivariateFitOptions::default())
}

/// Fits one Weibull per populated diagonal of the score grid, weighting
/// each diagonal by its observed share of games. Sparse diagonals keep
/// their empirical pmf: three parameters fit to a handful of points mean
/// nothing.
pub fn fit_bivariate_with(
    games: &[GameRecord],
    max_runs: u32,
    opts: &BivariateFitOptions,
) -> Result<(BivariateScoreModel, BivariateFitDiagnostics), ModelError> {
    validate_max_runs(max_runs)?;
    if games.is_empty() {
        return Err(ModelError::EmptyInput);
    }

    let mut diag = BivariateFitDiagnostics {
        structural_diagonals: 2 * (max_runs as usize - 1),
        ..Default::default()
    };
    let cells = max_runs as usize + 1;
    let mut counts: std::collections::BTreeMap<i32, Vec<u64>> = std::collections::BTreeMap::new();
    let mut included = 0u64;
    for g in games {
        diag.total_games += 1;
        let h = u32::from(g.home_runs).min(max_runs);
        let a = u32::from(g.away_runs).min(max_runs);
        if h != u32::from(g.home_runs) || a != u32::from(g.away_runs) {
            diag.folded_games += 1;
        }
        let k = i64::from(h) - i64::from(a);
        if k == 0 || k.unsigned_abs() > u64::from(max_runs - 1) {
            diag.skipped_games += 1;
            continue;
        }
        counts.entry(k as i32).or_insert_with(|| vec![0; cells])[a as usize] += 1;
        included += 1;
    }
    if included == 0 {
        return Err(ModelError::EmptyInput);
    }

    let mut diagonals = Vec::with_capacity(counts.len());
    for (k, away_counts) in counts {
        let total: u64 = away_counts.iter().sum();
        let weight = total as f64 / included as f64;
        let empirical: Vec<f64> = away_counts
            .iter()
            .map(|&c| c as f64 / total as f64)
            .collect();
        let mut entry = Diagonal {
            k,
            weight,
            games: total,
            params: None,
            objective: None,
            empirical_pmf: None,
        };
        if total >= opts.min_fit_games {
            let mut fit_cells = vec![0.0; weibull::RUN_CELLS];
            fit_cells[..cells].copy_from_slice(&empirical);
            let emp = EmpiricalRunPmf::new(fit_cells)?;
            let out = weibull::fit(&emp, &weibull::default_init(&emp), &opts.fit)?;
            // Guard against a fit that leaves no mass on the diagonal's
            // valid away-score range; keep the empirical pmf instead.
            let candidate = Diagonal {
                params: Some(out.params),
                objective: Some(out.objective),
                ..entry.clone()
            };
            if diagonal_away_pmf(&candidate, max_runs).is_ok() {
                entry = candidate;
            }
        }
        if entry.params.is_none() {
            entry.empirical_pmf = Some(empirical);
        }
        if entry.params.is_some() {
            diag.fitted_diagonals += 1;
        } else {
            diag.empirical_diagonals += 1;
        }
        diagonals.push(entry);
    }

    let model = BivariateScoreModel { max_runs, diagonals };
    model.validate()?;
    Ok((model, diag))
}
