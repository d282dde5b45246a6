//! Monte Carlo season ensembles.
//!
//! One replicate = a fresh schedule plus a fresh score for every game,
//! then league-wide streak counts. Replicates run in parallel; every
//! (year, replicate) pair owns an independent random stream derived from
//! the root seed, so results are bit-identical regardless of worker count
//! or execution order.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::core::{TeamGameView, TeamId, TeamSeason, YearConfig};
use crate::models::{ModelError, ScoreModel, ScoreSampler};
use crate::schedule::{
    basic_schedule, realistic_schedule, Schedule, ScheduleError, ScheduleKind, SeriesDistribution,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("streak order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("order {0} was not simulated")]
    UnknownOrder(u32),
    #[error("need at least 1 replicate")]
    NoReps,
    #[error("no years configured")]
    NoYears,
    #[error("simulated and historic years do not overlap")]
    DisjointYears,
    #[error("year stats mix streak orders")]
    MixedOrders,
    #[error("score range is empty: min {min} exceeds max {max}")]
    InvalidRange { min: u32, max: u32 },
    #[error("need at least 2 repeats of a score, got {0}")]
    InvalidRepeats(u32),
}

/// Full configuration of an ensemble run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub years: Vec<YearConfig>,
    pub reps: u32,
    pub model: ScoreModel,
    pub schedule: ScheduleKind,
    #[serde(default)]
    pub series_dist: SeriesDistribution,
    pub orders: Vec<u32>,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.years.is_empty() {
            return Err(SimError::NoYears);
        }
        if self.reps == 0 {
            return Err(SimError::NoReps);
        }
        if let Some(&bad) = self.orders.iter().find(|&&n| n < 2) {
            return Err(SimError::InvalidOrder(bad));
        }
        self.model.validate()?;
        Ok(())
    }
}

/// Summary of one (year, order) ensemble: extremes, mean and nearest-rank
/// percentiles of the replicate counts, plus the historic count when known.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YearStats {
    pub year: i32,
    pub order: u32,
    pub min: f64,
    pub p05: f64,
    pub mean: f64,
    pub p95: f64,
    pub max: f64,
    pub historic: Option<u64>,
}

/// Distribution of total order-n streaks over a whole simulated era.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EraHistogram {
    pub order: u32,
    pub reps: u32,
    /// Fraction of era replicates with each total streak count; sums to 1.
    pub fractions: BTreeMap<u64, f64>,
    /// Fraction of (year, replicate) seasons containing at least one
    /// order-n streak.
    pub year_occurrence_rate: f64,
}

/// How the historic record sits inside the simulated bands, counted over
/// the overlapping years.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub order: u32,
    pub years: usize,
    pub exceeds_mean: usize,
    pub exceeds_p95: usize,
    pub below_p05: usize,
    pub exceeds_max: usize,
    pub below_min: usize,
}

/// All replicate counts from one ensemble run, indexed
/// `[year][replicate][order]`.
pub struct Ensemble {
    pub config: SimConfig,
    counts: Vec<Vec<Vec<u32>>>,
    /// Years whose game count was reduced by one so a basic schedule's
    /// exact home/away split exists.
    pub adjusted_years: Vec<(i32, u32)>,
}

/// Independent random stream for one (year, replicate) cell, derived from
/// the root seed via the stream id of the underlying counter-based
/// generator.
pub fn replicate_rng(seed: u64, year: i32, rep: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(year as u32) << 32) | u64::from(rep));
    rng
}

fn generate_schedule<R: rand::Rng + ?Sized>(
    kind: ScheduleKind,
    t: u32,
    g: u32,
    dist: &SeriesDistribution,
    rng: &mut R,
) -> Result<Schedule, ScheduleError> {
    match kind {
        ScheduleKind::Basic => basic_schedule(t, g, rng),
        ScheduleKind::Realistic => realistic_schedule(t, g, dist, rng),
    }
}

/// Draws one score per scheduled game in order, appending each game to both
/// participants' (scored, allowed) sequences.
fn draw_season_scores<R: rand::Rng + ?Sized>(
    schedule: &Schedule,
    sampler: &ScoreSampler,
    rng: &mut R,
    per_team: &mut [Vec<(u8, u8)>],
) -> Result<(), SimError> {
    for &(h, a) in &schedule.games {
        let (home_runs, away_runs) = sampler.sample(rng)?;
        per_team[h as usize].push((home_runs, away_runs));
        per_team[a as usize].push((away_runs, home_runs));
    }
    Ok(())
}

/// League-wide sliding-window streak counts for each order, summed over
/// teams. Streak windows overlap, so a maximal run of L identical views
/// contributes L - n + 1 spans of order n.
fn count_streaks_compact(per_team: &[Vec<(u8, u8)>], orders: &[u32], out: &mut [u32]) {
    out.fill(0);
    for games in per_team {
        let mut i = 0;
        while i < games.len() {
            let mut j = i + 1;
            while j < games.len() && games[j] == games[i] {
                j += 1;
            }
            let run = (j - i) as u32;
            for (slot, &n) in orders.iter().enumerate() {
                if run >= n {
                    out[slot] += run - n + 1;
                }
            }
            i = j;
        }
    }
}

/// Simulates one season: a score per scheduled game, assembled into
/// per-team ordered seasons. Game dates are synthetic (one slot per list
/// position) so the views sort the way the schedule orders them.
pub fn simulate_season<R: rand::Rng + ?Sized>(
    schedule: &Schedule,
    model: &ScoreModel,
    year: i32,
    rng: &mut R,
) -> Result<Vec<TeamSeason>, SimError> {
    let sampler = model.sampler()?;
    let t = schedule.num_teams as usize;
    let mut per_team: Vec<Vec<(u8, u8)>> = vec![Vec::new(); t];
    let mut venues: Vec<Vec<(usize, u16, bool)>> = vec![Vec::new(); t];
    for (slot, &(h, a)) in schedule.games.iter().enumerate() {
        venues[h as usize].push((slot, a, true));
        venues[a as usize].push((slot, h, false));
    }
    draw_season_scores(schedule, &sampler, rng, &mut per_team)?;

    let base = NaiveDate::from_ymd_opt(year, 1, 1).unwrap_or_default();
    let teams: Vec<TeamId> = (0..t)
        .map(|i| TeamId::new(&format!("T{i:02}")).expect("synthetic team id"))
        .collect();
    let seasons = per_team
        .into_iter()
        .zip(venues)
        .enumerate()
        .map(|(i, (scores, venue))| {
            let games = scores
                .into_iter()
                .zip(venue)
                .map(|((scored, allowed), (slot, opponent, is_home))| TeamGameView {
                    scored,
                    allowed,
                    opponent: teams[opponent as usize].clone(),
                    is_home,
                    date: base + chrono::Duration::days(slot as i64),
                    seq: 0,
                })
                .collect();
            TeamSeason {
                team: teams[i].clone(),
                year,
                games,
            }
        })
        .collect();
    Ok(seasons)
}

/// Runs the full ensemble: `reps` independent (schedule, scores) replicates
/// for every configured year, counting every requested streak order in one
/// pass. This is the engine behind [`simulate_year`] and [`simulate_era`].
pub fn run_ensemble(sim: &SimConfig) -> Result<Ensemble, SimError> {
    sim.validate()?;
    let sampler = sim.model.sampler()?;
    let mut adjusted_years = Vec::new();
    let mut counts = Vec::with_capacity(sim.years.len());

    for cfg in &sim.years {
        let mut g = cfg.games_per_team;
        if sim.schedule == ScheduleKind::Basic && g % 2 == 1 {
            // Basic schedules need an even game count for the exact
            // home/away split; shortened seasons can average odd.
            g -= 1;
            adjusted_years.push((cfg.year, g));
        }
        let t = cfg.num_teams;
        let year_counts: Vec<Vec<u32>> = (0..sim.reps)
            .into_par_iter()
            .map(|rep| {
                let mut rng = replicate_rng(sim.seed, cfg.year, rep);
                let schedule = generate_schedule(sim.schedule, t, g, &sim.series_dist, &mut rng)?;
                let mut per_team: Vec<Vec<(u8, u8)>> =
                    vec![Vec::with_capacity(g as usize); t as usize];
                draw_season_scores(&schedule, &sampler, &mut rng, &mut per_team)?;
                let mut out = vec![0u32; sim.orders.len()];
                count_streaks_compact(&per_team, &sim.orders, &mut out);
                Ok(out)
            })
            .collect::<Result<_, SimError>>()?;
        counts.push(year_counts);
    }

    Ok(Ensemble {
        config: sim.clone(),
        counts,
        adjusted_years,
    })
}

/// Index of the nearest-rank q-th percentile (q in percent) among n sorted
/// values: ceil(q/100 * n) - 1, computed in integers.
fn nearest_rank_index(percent: usize, n: usize) -> usize {
    (percent * n).div_ceil(100).saturating_sub(1)
}

impl Ensemble {
    fn order_slot(&self, order: u32) -> Result<usize, SimError> {
        self.config
            .orders
            .iter()
            .position(|&n| n == order)
            .ok_or(SimError::UnknownOrder(order))
    }

    fn year_slot(&self, year: i32) -> Option<usize> {
        self.config.years.iter().position(|c| c.year == year)
    }

    /// Replicate counts for one (year, order) cell.
    pub fn replicate_counts(&self, year: i32, order: u32) -> Result<Vec<u32>, SimError> {
        let yi = self.year_slot(year).ok_or(SimError::NoYears)?;
        let oi = self.order_slot(order)?;
        Ok(self.counts[yi].iter().map(|rep| rep[oi]).collect())
    }

    /// Per-year summary statistics for one order, in configured year order.
    pub fn year_stats(&self, order: u32) -> Result<Vec<YearStats>, SimError> {
        let oi = self.order_slot(order)?;
        let reps = self.config.reps as usize;
        let mut out = Vec::with_capacity(self.config.years.len());
        for (yi, cfg) in self.config.years.iter().enumerate() {
            let mut sorted: Vec<u32> = self.counts[yi].iter().map(|rep| rep[oi]).collect();
            sorted.sort_unstable();
            let total: u64 = sorted.iter().map(|&c| u64::from(c)).sum();
            out.push(YearStats {
                year: cfg.year,
                order,
                min: f64::from(sorted[0]),
                p05: f64::from(sorted[nearest_rank_index(5, reps)]),
                mean: total as f64 / reps as f64,
                p95: f64::from(sorted[nearest_rank_index(95, reps)]),
                max: f64::from(sorted[reps - 1]),
                historic: None,
            });
        }
        Ok(out)
    }

    /// Histogram of era totals (sum over all years at a fixed replicate
    /// index) for one order.
    pub fn era_histogram(&self, order: u32) -> Result<EraHistogram, SimError> {
        let oi = self.order_slot(order)?;
        let reps = self.config.reps as usize;
        let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
        let mut seasons_with_streak = 0u64;
        for rep in 0..reps {
            let mut era_total = 0u64;
            for year_counts in &self.counts {
                let c = year_counts[rep][oi];
                era_total += u64::from(c);
                if c > 0 {
                    seasons_with_streak += 1;
                }
            }
            *histogram.entry(era_total).or_insert(0) += 1;
        }
        let fractions = histogram
            .into_iter()
            .map(|(count, occurrences)| (count, occurrences as f64 / reps as f64))
            .collect();
        Ok(EraHistogram {
            order,
            reps: self.config.reps,
            fractions,
            year_occurrence_rate: seasons_with_streak as f64
                / (reps as f64 * self.counts.len() as f64),
        })
    }
}

/// Replicate statistics of league-wide order-n streak counts for a single
/// year. Uses the same per-(year, replicate) streams as a full ensemble
/// run, so the numbers agree with [`run_ensemble`] on the same seed.
pub fn simulate_year(cfg: &YearConfig, sim: &SimConfig, order: u32) -> Result<YearStats, SimError> {
    let single = SimConfig {
        years: vec![*cfg],
        orders: vec![order],
        ..sim.clone()
    };
    let ensemble = run_ensemble(&single)?;
    Ok(ensemble.year_stats(order)?.remove(0))
}

/// Simulates every configured year once per replicate and histograms the
/// era-total order-n streak counts.
pub fn simulate_era(sim: &SimConfig, order: u32) -> Result<EraHistogram, SimError> {
    let single = SimConfig {
        orders: vec![order],
        ..sim.clone()
    };
    run_ensemble(&single)?.era_histogram(order)
}

/// Counts how the historic per-year streak record sits against the
/// simulated bands. All stats must be for the same order; only years
/// present on both sides are compared.
pub fn compare_to_history(
    stats: &[YearStats],
    historic: &BTreeMap<i32, u64>,
) -> Result<ComparisonReport, SimError> {
    let order = stats.first().map(|s| s.order).unwrap_or(0);
    if stats.iter().any(|s| s.order != order) {
        return Err(SimError::MixedOrders);
    }
    let mut report = ComparisonReport {
        order,
        years: 0,
        exceeds_mean: 0,
        exceeds_p95: 0,
        below_p05: 0,
        exceeds_max: 0,
        below_min: 0,
    };
    for s in stats {
        let Some(&count) = historic.get(&s.year) else {
            continue;
        };
        let count = count as f64;
        report.years += 1;
        if count > s.mean {
            report.exceeds_mean += 1;
        }
        if count > s.p95 {
            report.exceeds_p95 += 1;
        }
        if count < s.p05 {
            report.below_p05 += 1;
        }
        if count > s.max {
            report.exceeds_max += 1;
        }
        if count < s.min {
            report.below_min += 1;
        }
    }
    if report.years == 0 {
        return Err(SimError::DisjointYears);
    }
    Ok(report)
}

/// Back-of-the-envelope streak probability under uniform independent
/// scores on `score_min..=score_max`: the first game is free, so a run of
/// `repeats` identical scores has probability `(1/range^2)^(repeats-1)`.
pub fn naive_estimate(score_min: u32, score_max: u32, repeats: u32) -> Result<f64, SimError> {
    if score_max < score_min {
        return Err(SimError::InvalidRange {
            min: score_min,
            max: score_max,
        });
    }
    if repeats < 2 {
        return Err(SimError::InvalidRepeats(repeats));
    }
    let span = f64::from(score_max - score_min + 1);
    Ok((1.0 / (span * span)).powi(repeats as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::SimpleWeibullModel;
    use crate::streaks;
    use crate::weibull::WeibullParams;

    fn point_mass(v: u32) -> WeibullParams {
        WeibullParams {
            scale: 0.2,
            location: f64::from(v),
            shape: 6.0,
        }
    }

    fn deterministic_model() -> ScoreModel {
        ScoreModel::Simple(SimpleWeibullModel {
            home: point_mass(5),
            away: point_mass(3),
            max_runs: 30,
        })
    }

    fn baseball_model() -> ScoreModel {
        ScoreModel::Simple(SimpleWeibullModel {
            home: WeibullParams::new(4.2, -0.4, 1.8).unwrap(),
            away: WeibullParams::new(4.0, -0.5, 1.7).unwrap(),
            max_runs: 30,
        })
    }

    fn config(years: Vec<YearConfig>, reps: u32, model: ScoreModel) -> SimConfig {
        SimConfig {
            years,
            reps,
            model,
            schedule: ScheduleKind::Basic,
            series_dist: SeriesDistribution::default(),
            orders: vec![2, 3, 4],
            seed: 0xC0FFEE,
        }
    }

    fn year(y: i32, t: u32, g: u32) -> YearConfig {
        YearConfig::new(y, t, g).unwrap()
    }

    #[test]
    fn single_replicate_collapses_the_stats() {
        let sim = config(vec![year(1990, 6, 20)], 1, baseball_model());
        let stats = simulate_year(&sim.years[0], &sim, 2).unwrap();
        assert_eq!(stats.min, stats.mean);
        assert_eq!(stats.mean, stats.max);
        assert_eq!(stats.p05, stats.p95);
        assert_eq!(stats.p05, stats.min);
    }

    #[test]
    fn deterministic_single_series_season_counts_exactly() {
        // One 4-game series between two teams with a fixed score: each team
        // sees four identical games, so order-2 counts are 2 * (G - 1).
        let mut sim = config(vec![year(1, 2, 4)], 16, deterministic_model());
        sim.schedule = ScheduleKind::Realistic;
        sim.series_dist = SeriesDistribution::new(0.0, 0.0, 1.0).unwrap();
        let stats = simulate_year(&sim.years[0], &sim, 2).unwrap();
        assert_eq!(stats.min, 6.0);
        assert_eq!(stats.max, 6.0);
        assert_eq!(stats.mean, 6.0);
        let order3 = simulate_year(&sim.years[0], &sim, 3).unwrap();
        assert_eq!(order3.mean, 4.0);
    }

    #[test]
    fn venue_flips_break_deterministic_streaks() {
        // A 2-team, 2-game basic schedule: each team hosts once, so its two
        // views differ and no order-2 streak is possible.
        let sim = config(vec![year(1, 2, 2)], 8, deterministic_model());
        let stats = simulate_year(&sim.years[0], &sim, 2).unwrap();
        assert_eq!(stats.max, 0.0);
    }

    #[test]
    fn simulated_seasons_conserve_game_counts() {
        let mut rng = replicate_rng(1, 2001, 0);
        let schedule = basic_schedule(8, 30, &mut rng).unwrap();
        let seasons = simulate_season(&schedule, &baseball_model(), 2001, &mut rng).unwrap();
        assert_eq!(seasons.len(), 8);
        for s in &seasons {
            assert_eq!(s.len(), 30);
            assert!(s.games.iter().all(|v| v.scored != v.allowed));
            assert!(s
                .games
                .windows(2)
                .all(|w| (w[0].date, w[0].seq) < (w[1].date, w[1].seq)));
        }
    }

    #[test]
    fn compact_counts_agree_with_the_streak_module() {
        let model = baseball_model();
        let sampler = model.sampler().unwrap();
        for rep in 0..20 {
            let mut rng = replicate_rng(7, 1950, rep);
            let schedule = basic_schedule(6, 24, &mut rng).unwrap();

            let mut per_team: Vec<Vec<(u8, u8)>> = vec![Vec::new(); 6];
            draw_season_scores(&schedule, &sampler, &mut rng, &mut per_team).unwrap();
            let mut compact = vec![0u32; 3];
            count_streaks_compact(&per_team, &[2, 3, 4], &mut compact);

            // Same stream, same draws, now through the public season path.
            let mut rng = replicate_rng(7, 1950, rep);
            let schedule = basic_schedule(6, 24, &mut rng).unwrap();
            let seasons = simulate_season(&schedule, &model, 1950, &mut rng).unwrap();
            for (slot, &n) in [2usize, 3, 4].iter().enumerate() {
                let total: u64 = streaks::league_streak_counts(&seasons, n)
                    .unwrap()
                    .values()
                    .sum();
                assert_eq!(u64::from(compact[slot]), total, "order {n}");
            }
        }
    }

    #[test]
    fn ensembles_are_identical_across_worker_counts() {
        let sim = config(
            vec![year(1901, 4, 12), year(1902, 6, 18)],
            32,
            baseball_model(),
        );
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_ensemble(&sim).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.year_stats(2).unwrap(), b.year_stats(2).unwrap());
        assert_eq!(a.era_histogram(4).unwrap(), b.era_histogram(4).unwrap());
    }

    #[test]
    fn higher_orders_never_exceed_lower_in_the_same_replicate() {
        let sim = config(vec![year(1955, 8, 40)], 64, baseball_model());
        let ensemble = run_ensemble(&sim).unwrap();
        let order2 = ensemble.replicate_counts(1955, 2).unwrap();
        let order3 = ensemble.replicate_counts(1955, 3).unwrap();
        let order4 = ensemble.replicate_counts(1955, 4).unwrap();
        for i in 0..order2.len() {
            assert!(order3[i] <= order2[i]);
            assert!(order4[i] <= order3[i]);
        }
    }

    #[test]
    fn percentile_sandwich_holds() {
        let mut sim = config(vec![year(1960, 10, 50)], 200, baseball_model());
        sim.schedule = ScheduleKind::Realistic;
        for order in [2, 3] {
            let stats = simulate_year(&sim.years[0], &sim, order).unwrap();
            assert!(stats.min <= stats.p05);
            assert!(stats.p05 <= stats.p95);
            assert!(stats.p95 <= stats.max);
            assert!(stats.min <= stats.mean && stats.mean <= stats.max);
        }
    }

    #[test]
    fn doubling_reps_moves_the_mean_within_monte_carlo_error() {
        let base = config(vec![year(1970, 8, 60)], 200, baseball_model());
        let double = SimConfig {
            reps: 400,
            ..base.clone()
        };
        let a = run_ensemble(&base).unwrap();
        let b = run_ensemble(&double).unwrap();
        let counts_a = a.replicate_counts(1970, 2).unwrap();
        let mean_a = a.year_stats(2).unwrap()[0].mean;
        let mean_b = b.year_stats(2).unwrap()[0].mean;
        let var = counts_a
            .iter()
            .map(|&c| (f64::from(c) - mean_a).powi(2))
            .sum::<f64>()
            / (counts_a.len() - 1) as f64;
        let se = (var / counts_a.len() as f64).sqrt();
        assert!(
            (mean_a - mean_b).abs() < 4.0 * se,
            "means {mean_a} vs {mean_b}, se {se}"
        );
    }

    #[test]
    fn mean_matches_semi_analytic_pair_expectation() {
        // Per-view score pmf under random venue: q(s,o) averages the two
        // orientations; a consecutive pair matches with probability sum of
        // q^2, and a season holds T*(G-1) pairs.
        let model = baseball_model();
        let mut q2 = 0.0;
        for s in 0..=30u32 {
            for o in 0..=30u32 {
                if s != o {
                    let q = 0.5 * (model.pmf(s, o).unwrap() + model.pmf(o, s).unwrap());
                    q2 += q * q;
                }
            }
        }
        let (t, g) = (20u32, 162u32);
        let expected = f64::from(t) * f64::from(g - 1) * q2;

        let sim = config(vec![year(1962, t, g)], 300, model);
        let ensemble = run_ensemble(&sim).unwrap();
        let counts = ensemble.replicate_counts(1962, 2).unwrap();
        let stats = ensemble.year_stats(2).unwrap().remove(0);
        let var = counts
            .iter()
            .map(|&c| (f64::from(c) - stats.mean).powi(2))
            .sum::<f64>()
            / (counts.len() - 1) as f64;
        let se = (var / counts.len() as f64).sqrt();
        assert!(
            (stats.mean - expected).abs() <= 5.0 * se,
            "mean {} vs semi-analytic {expected}, se {se}",
            stats.mean
        );
    }

    #[test]
    fn one_year_one_rep_era_is_a_point_mass() {
        let sim = config(vec![year(1999, 4, 10)], 1, baseball_model());
        let hist = simulate_era(&sim, 2).unwrap();
        assert_eq!(hist.fractions.len(), 1);
        let (_, &fraction) = hist.fractions.iter().next().unwrap();
        assert_eq!(fraction, 1.0);
    }

    #[test]
    fn era_fractions_sum_to_one() {
        let sim = config(
            vec![year(1901, 4, 16), year(1902, 4, 16), year(1903, 6, 12)],
            128,
            baseball_model(),
        );
        let hist = simulate_era(&sim, 2).unwrap();
        let total: f64 = hist.fractions.values().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!((0.0..=1.0).contains(&hist.year_occurrence_rate));
    }

    #[test]
    fn comparison_counts_each_band() {
        let stats = vec![
            YearStats {
                year: 2000,
                order: 2,
                min: 1.0,
                p05: 2.0,
                mean: 5.0,
                p95: 8.0,
                max: 10.0,
                historic: None,
            },
            YearStats {
                year: 2001,
                order: 2,
                min: 1.0,
                p05: 2.0,
                mean: 5.0,
                p95: 8.0,
                max: 10.0,
                historic: None,
            },
        ];
        let historic: BTreeMap<i32, u64> = [(2000, 11), (2001, 0)].into_iter().collect();
        let report = compare_to_history(&stats, &historic).unwrap();
        assert_eq!(report.years, 2);
        assert_eq!(report.exceeds_mean, 1);
        assert_eq!(report.exceeds_p95, 1);
        assert_eq!(report.exceeds_max, 1);
        assert_eq!(report.below_p05, 1);
        assert_eq!(report.below_min, 1);

        // Historic exactly at the mean counts nowhere.
        let historic: BTreeMap<i32, u64> = [(2000, 5), (2001, 5)].into_iter().collect();
        let report = compare_to_history(&stats, &historic).unwrap();
        assert_eq!(report.exceeds_mean, 0);
        assert_eq!(report.exceeds_p95, 0);
        assert_eq!(report.below_p05, 0);

        let disjoint: BTreeMap<i32, u64> = [(1900, 5)].into_iter().collect();
        assert!(matches!(
            compare_to_history(&stats, &disjoint),
            Err(SimError::DisjointYears)
        ));
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let mk = |order| YearStats {
            year: 2000,
            order,
            min: 0.0,
            p05: 0.0,
            mean: 0.0,
            p95: 0.0,
            max: 0.0,
            historic: None,
        };
        let historic: BTreeMap<i32, u64> = [(2000, 1)].into_iter().collect();
        assert!(matches!(
            compare_to_history(&[mk(2), mk(3)], &historic),
            Err(SimError::MixedOrders)
        ));
    }

    #[test]
    fn naive_estimate_examples() {
        assert_eq!(
            naive_estimate(50, 89, 3).unwrap(),
            (1.0f64 / 1600.0).powi(2)
        );
        assert_eq!(naive_estimate(50, 89, 2).unwrap(), 1.0 / 1600.0);
        assert_eq!(naive_estimate(5, 5, 3).unwrap(), 1.0);
        assert!(matches!(
            naive_estimate(9, 5, 3),
            Err(SimError::InvalidRange { .. })
        ));
        assert!(matches!(
            naive_estimate(5, 9, 1),
            Err(SimError::InvalidRepeats(1))
        ));
    }

    #[test]
    fn odd_game_years_are_adjusted_for_basic_schedules() {
        let sim = config(vec![year(1981, 4, 103)], 4, baseball_model());
        let ensemble = run_ensemble(&sim).unwrap();
        assert_eq!(ensemble.adjusted_years, vec![(1981, 102)]);
    }

    #[test]
    fn config_validation() {
        let mut sim = config(vec![], 4, baseball_model());
        assert!(matches!(sim.validate(), Err(SimError::NoYears)));
        sim.years = vec![year(1901, 4, 10)];
        sim.reps = 0;
        assert!(matches!(sim.validate(), Err(SimError::NoReps)));
        sim.reps = 1;
        sim.orders = vec![2, 1];
        assert!(matches!(sim.validate(), Err(SimError::InvalidOrder(1))));
    }
}
