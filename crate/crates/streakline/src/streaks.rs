//! Detection and counting of same-score streaks.
//!
//! An order-n streak is a window of n consecutive games in one team's
//! season whose (scored, allowed) pairs are all identical; the opponent may
//! vary. Windows overlap: a run of four identical games contains two
//! order-3 streaks and three order-2 streaks, and a same-score series
//! contributes to both participants' counts.

use std::collections::{BTreeMap, HashSet};

use chrono::NaiveDate;
use thiserror::Error;

use crate::core::{TeamId, TeamSeason};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StreakError {
    #[error("streak order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("no consecutive game pairs in the input")]
    NoPairs,
    #[error("no games selected")]
    EmptySelection,
}

/// One order-n window of identical scores in a team's season.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreakSpan {
    pub team: TeamId,
    pub year: i32,
    /// 0-based index of the first game of the window in the season.
    pub start_index: usize,
    pub order: usize,
    pub scored: u8,
    pub allowed: u8,
}

/// Mean and population standard deviation of per-game run totals.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTotalStats {
    pub mean: f64,
    pub std_dev: f64,
    pub count: usize,
}

/// Which games feed [`run_total_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameSelector {
    AllGames,
    /// Games lying inside at least one order-n streak span.
    InStreakOfOrder(usize),
}

/// Finds every order-n window of identical (scored, allowed) pairs.
/// Overlapping windows each count.
pub fn find_streaks(season: &TeamSeason, n: usize) -> Result<Vec<StreakSpan>, StreakError> {
    if n < 2 {
        return Err(StreakError::InvalidOrder(n));
    }
    let mut spans = Vec::new();
    for (start, len) in maximal_runs(season) {
        if len >= n {
            for offset in 0..=(len - n) {
                let g = &season.games[start];
                spans.push(StreakSpan {
                    team: season.team.clone(),
                    year: season.year,
                    start_index: start + offset,
                    order: n,
                    scored: g.scored,
                    allowed: g.allowed,
                });
            }
        }
    }
    Ok(spans)
}

/// Maximal runs of identical consecutive (scored, allowed) pairs, as
/// (start index, length).
fn maximal_runs(season: &TeamSeason) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let games = &season.games;
    let mut start = 0;
    for i in 1..=games.len() {
        let extends = i < games.len()
            && games[i].scored == games[i - 1].scored
            && games[i].allowed == games[i - 1].allowed;
        if !extends {
            runs.push((start, i - start));
            start = i;
        }
    }
    runs
}

/// Per-year totals of order-n spans over all seasons. Every year present in
/// the input appears in the map, even with a zero count.
pub fn league_streak_counts(
    seasons: &[TeamSeason],
    n: usize,
) -> Result<BTreeMap<i32, u64>, StreakError> {
    if n < 2 {
        return Err(StreakError::InvalidOrder(n));
    }
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for season in seasons {
        let spans = find_streaks(season, n)?;
        *counts.entry(season.year).or_insert(0) += spans.len() as u64;
    }
    Ok(counts)
}

/// Number of consecutive-game pairs across all seasons:
/// sum of max(len - 1, 0).
pub fn pair_count(seasons: &[TeamSeason]) -> u64 {
    seasons
        .iter()
        .map(|s| s.len().saturating_sub(1) as u64)
        .sum()
}

/// Fraction of consecutive-game pairs that are order-2 streaks.
pub fn pair_probability(seasons: &[TeamSeason]) -> Result<f64, StreakError> {
    let pairs = pair_count(seasons);
    if pairs == 0 {
        return Err(StreakError::NoPairs);
    }
    let streaks: u64 = league_streak_counts(seasons, 2)?.values().sum();
    Ok(streaks as f64 / pairs as f64)
}

type GameKey = (NaiveDate, u8, TeamId, TeamId);

/// Mean and population standard deviation of total runs per game over the
/// selected games. Games are deduplicated by (date, seq, home, away), so a
/// game inside both teams' spans counts once.
pub fn run_total_stats(
    seasons: &[TeamSeason],
    selector: GameSelector,
) -> Result<RunTotalStats, StreakError> {
    let mut seen: HashSet<GameKey> = HashSet::new();
    let mut totals: Vec<f64> = Vec::new();
    let mut select = |season: &TeamSeason, index: usize, seen: &mut HashSet<GameKey>| {
        let view = &season.games[index];
        if seen.insert(view.game_key(&season.team)) {
            totals.push(f64::from(view.scored) + f64::from(view.allowed));
        }
    };

    match selector {
        GameSelector::AllGames => {
            for season in seasons {
                for i in 0..season.len() {
                    select(season, i, &mut seen);
                }
            }
        }
        GameSelector::InStreakOfOrder(n) => {
            for season in seasons {
                for span in find_streaks(season, n)? {
                    for i in span.start_index..span.start_index + n {
                        select(season, i, &mut seen);
                    }
                }
            }
        }
    }

    if totals.is_empty() {
        return Err(StreakError::EmptySelection);
    }
    let count = totals.len();
    let mean = totals.iter().sum::<f64>() / count as f64;
    let var = totals.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / count as f64;
    Ok(RunTotalStats {
        mean,
        std_dev: var.sqrt(),
        count,
    })
}
