//! Synthetic season schedules.
//!
//! A schedule is an ordered list of (home, away) team-index pairs; a team
//! experiences its games in list order. Two generators are provided:
//!
//! * [`basic_schedule`]: random pairings with exact per-team totals and
//!   exact home/away balance, no other structure.
//! * [`realistic_schedule`]: the season is built from 2-, 3- and 4-game
//!   series against a fixed opponent with a single host per series, the
//!   way real league calendars work.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("need at least 2 teams, got {0}")]
    TooFewTeams(u32),
    #[error("basic schedules need an even games-per-team count, got {0}")]
    OddGames(u32),
    #[error("games per team must be positive")]
    NoGames,
    #[error("{0} games per team cannot be partitioned into series of 2, 3 or 4")]
    PartitionInfeasible(u32),
    #[error("{teams} teams x {games} games is an odd total; no schedule exists")]
    OddTotalGames { teams: u32, games: u32 },
    #[error("could not pair teams into series ({0} rebuild attempts)")]
    PairingFailed(u32),
    #[error("invalid series distribution: {0}")]
    BadDistribution(String),
}

/// Ordered list of games; team indices run `0..num_teams`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub num_teams: u32,
    pub games: Vec<(u16, u16)>,
}

impl Schedule {
    /// Per-team opponent sequences in the order each team plays.
    fn team_sequences(&self) -> Vec<Vec<u16>> {
        let mut seqs = vec![Vec::new(); self.num_teams as usize];
        for &(h, a) in &self.games {
            if (h as usize) < seqs.len() {
                seqs[h as usize].push(a);
            }
            if (a as usize) < seqs.len() {
                seqs[a as usize].push(h);
            }
        }
        seqs
    }
}

pub const SERIES_LENGTHS: [u32; 3] = [2, 3, 4];

/// Weights over series lengths 2, 3 and 4. Normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesDistWire", into = "SeriesDistWire")]
pub struct SeriesDistribution {
    weights: [f64; 3],
}

#[derive(Serialize, Deserialize)]
struct SeriesDistWire {
    #[serde(rename = "2")]
    two: f64,
    #[serde(rename = "3")]
    three: f64,
    #[serde(rename = "4")]
    four: f64,
}

impl From<SeriesDistribution> for SeriesDistWire {
    fn from(d: SeriesDistribution) -> Self {
        SeriesDistWire {
            two: d.weights[0],
            three: d.weights[1],
            four: d.weights[2],
        }
    }
}

impl TryFrom<SeriesDistWire> for SeriesDistribution {
    type Error = ScheduleError;
    fn try_from(w: SeriesDistWire) -> Result<Self, ScheduleError> {
        SeriesDistribution::new(w.two, w.three, w.four)
    }
}

impl Default for SeriesDistribution {
    /// Three-game series dominate real MLB schedules.
    fn default() -> Self {
        SeriesDistribution {
            weights: [0.2, 0.6, 0.2],
        }
    }
}

impl SeriesDistribution {
    pub fn new(two: f64, three: f64, four: f64) -> Result<Self, ScheduleError> {
        let raw = [two, three, four];
        if raw.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(ScheduleError::BadDistribution(
                "weights must be non-negative".into(),
            ));
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(ScheduleError::BadDistribution(
                "at least one weight must be positive".into(),
            ));
        }
        Ok(SeriesDistribution {
            weights: [raw[0] / sum, raw[1] / sum, raw[2] / sum],
        })
    }

    pub fn weight(&self, length: u32) -> f64 {
        SERIES_LENGTHS
            .iter()
            .position(|&l| l == length)
            .map_or(0.0, |i| self.weights[i])
    }

    /// Draws a length among the allowed ones, renormalizing the weights.
    /// Falls back to a uniform choice when the allowed lengths all have
    /// zero weight.
    fn draw_restricted<R: Rng + ?Sized>(&self, allowed: [bool; 3], rng: &mut R) -> u32 {
        let total: f64 = self
            .weights
            .iter()
            .zip(allowed)
            .filter(|(_, a)| *a)
            .map(|(w, _)| w)
            .sum();
        if total > 0.0 {
            let mut u = rng.gen::<f64>() * total;
            for (i, &w) in self.weights.iter().enumerate() {
                if allowed[i] && w > 0.0 {
                    u -= w;
                    if u <= 0.0 {
                        return SERIES_LENGTHS[i];
                    }
                }
            }
        }
        let options: Vec<u32> = SERIES_LENGTHS
            .iter()
            .zip(allowed)
            .filter(|(_, a)| *a)
            .map(|(&l, _)| l)
            .collect();
        options[rng.gen_range(0..options.len())]
    }
}

/// Random schedule with exact per-team totals: each team plays `g` games,
/// hosting exactly half of them, in uniformly shuffled order.
pub fn basic_schedule<R: Rng + ?Sized>(
    t: u32,
    g: u32,
    rng: &mut R,
) -> Result<Schedule, ScheduleError> {
    if t < 2 {
        return Err(ScheduleError::TooFewTeams(t));
    }
    if g == 0 {
        return Err(ScheduleError::NoGames);
    }
    if g % 2 != 0 {
        return Err(ScheduleError::OddGames(g));
    }

    let per_side = (g / 2) as usize;
    let n = t as usize * per_side;
    let mut home: Vec<u16> = Vec::with_capacity(n);
    let mut away: Vec<u16> = Vec::with_capacity(n);
    for team in 0..t as u16 {
        home.extend(std::iter::repeat(team).take(per_side));
        away.extend(std::iter::repeat(team).take(per_side));
    }
    away.shuffle(rng);

    // Repair self-pairings by swapping the away slot with a position that
    // involves neither side of the conflict; one exists whenever t >= 2.
    for i in 0..n {
        if home[i] == away[i] {
            let conflicted = home[i];
            let j = (0..n)
                .find(|&j| home[j] != conflicted && away[j] != conflicted)
                .expect("a conflict-free slot always exists for t >= 2");
            away.swap(i, j);
        }
    }

    let mut games: Vec<(u16, u16)> = home.into_iter().zip(away).collect();
    games.shuffle(rng);
    Ok(Schedule { num_teams: t, games })
}

const MAX_REBUILDS: u32 = 400;

/// Series lengths playable by a pair with `ra` and `rb` games remaining:
/// the length must fit both teams and must not strand either team with a
/// single leftover game (a remainder of 1 cannot form a series).
fn allowed_lengths(ra: u32, rb: u32) -> [bool; 3] {
    let mut allowed = [false; 3];
    for (i, &len) in SERIES_LENGTHS.iter().enumerate() {
        allowed[i] = len <= ra && len <= rb && ra - len != 1 && rb - len != 1;
    }
    allowed
}

struct SeriesSpan {
    start: usize,
    len: u32,
    host: u16,
    guest: u16,
}

/// Schedule built from series blocks: every team's season is a sequence of
/// 2-, 3- or 4-game series, each against one opponent with one host, and
/// consecutive series are against different opponents whenever more than
/// two teams exist. Home/away balance is greedy during construction and
/// repaired afterward to within two games of an even split.
pub fn realistic_schedule<R: Rng + ?Sized>(
    t: u32,
    g: u32,
    dist: &SeriesDistribution,
    rng: &mut R,
) -> Result<Schedule, ScheduleError> {
    if t < 2 {
        return Err(ScheduleError::TooFewTeams(t));
    }
    if g < 2 {
        return Err(ScheduleError::PartitionInfeasible(g));
    }
    if (t * g) % 2 == 1 {
        return Err(ScheduleError::OddTotalGames { teams: t, games: g });
    }
    if t % 2 == 1 && g < 4 {
        // Each team plays exactly one series, and an odd team count has no
        // perfect matching.
        return Err(ScheduleError::PairingFailed(0));
    }
    for _ in 0..MAX_REBUILDS {
        if let Some((games, series)) = try_build_realistic(t, g, dist, rng) {
            let mut schedule = Schedule { num_teams: t, games };
            if rebalance_hosts(&mut schedule, &series) {
                return Ok(schedule);
            }
        }
    }
    Err(ScheduleError::PairingFailed(MAX_REBUILDS))
}

fn try_build_realistic<R: Rng + ?Sized>(
    t: u32,
    g: u32,
    dist: &SeriesDistribution,
    rng: &mut R,
) -> Option<(Vec<(u16, u16)>, Vec<SeriesSpan>)> {
    let t_us = t as usize;
    let mut remaining = vec![g; t_us];
    let mut home_so_far = vec![0u32; t_us];
    let mut prev_opponent: Vec<Option<u16>> = vec![None; t_us];
    let mut games: Vec<(u16, u16)> = Vec::with_capacity((t * g / 2) as usize);
    let mut series: Vec<SeriesSpan> = Vec::new();

    let block_cap = (t_us * g as usize).max(64);
    for _ in 0..block_cap {
        let unfinished: Vec<u16> = (0..t as u16)
            .filter(|&i| remaining[i as usize] > 0)
            .collect();
        if unfinished.is_empty() {
            return Some((games, series));
        }
        if unfinished.len() == 1 {
            return None;
        }

        let pairs = find_block_pairing(&unfinished, &remaining, &prev_opponent, t, rng)?;
        for (a, b) in pairs {
            let (ra, rb) = (remaining[a as usize], remaining[b as usize]);
            let len = dist.draw_restricted(allowed_lengths(ra, rb), rng);
            let host_is_a = match home_so_far[a as usize].cmp(&home_so_far[b as usize]) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => rng.gen_bool(0.5),
            };
            let (host, guest) = if host_is_a { (a, b) } else { (b, a) };
            series.push(SeriesSpan {
                start: games.len(),
                len,
                host,
                guest,
            });
            for _ in 0..len {
                games.push((host, guest));
            }
            home_so_far[host as usize] += len;
            remaining[a as usize] -= len;
            remaining[b as usize] -= len;
            prev_opponent[a as usize] = Some(b);
            prev_opponent[b as usize] = Some(a);
        }
    }
    None
}

/// Pairs the unfinished teams for one series block by backtracking over
/// perfect matchings. Teams are ordered by remaining games (descending,
/// random tiebreak) so each team tries similar-remaining partners first,
/// which keeps playable series lengths available deep into the season end.
/// Returns None only when no valid pairing exists within the node budget.
fn find_block_pairing<R: Rng + ?Sized>(
    unfinished: &[u16],
    remaining: &[u32],
    prev_opponent: &[Option<u16>],
    t: u32,
    rng: &mut R,
) -> Option<Vec<(u16, u16)>> {
    let mut order = unfinished.to_vec();
    order.shuffle(rng);
    order.sort_by_key(|&i| std::cmp::Reverse(remaining[i as usize]));

    let compatible = |a: u16, b: u16| {
        // Rematch check runs both directions: an idle block leaves one
        // side's previous opponent pointing here even after the other
        // side moves on.
        let rematch = t > 2
            && (prev_opponent[a as usize] == Some(b) || prev_opponent[b as usize] == Some(a));
        let lengths = allowed_lengths(remaining[a as usize], remaining[b as usize]);
        !rematch && lengths.iter().any(|&ok| ok)
    };

    fn search(
        order: &[u16],
        used: &mut [bool],
        compatible: &impl Fn(u16, u16) -> bool,
        budget: &mut u32,
        out: &mut Vec<(u16, u16)>,
    ) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            return true;
        };
        let a = order[i];
        used[i] = true;
        for j in (i + 1)..order.len() {
            if used[j] || *budget == 0 {
                continue;
            }
            *budget -= 1;
            let b = order[j];
            if compatible(a, b) {
                used[j] = true;
                out.push((a, b));
                if search(order, used, compatible, budget, out) {
                    return true;
                }
                out.pop();
                used[j] = false;
            }
        }
        used[i] = false;
        false
    }

    let mut used = vec![false; order.len()];
    let mut pairs = Vec::with_capacity(order.len() / 2);
    let mut budget = 4_000u32;
    if order.len() % 2 == 1 {
        // One team idles this block; try the team with the fewest games
        // left first (it has the most future blocks to finish in).
        for idle in (0..order.len()).rev() {
            used[idle] = true;
            if search(&order, &mut used, &compatible, &mut budget, &mut pairs) {
                return Some(pairs);
            }
            used[idle] = false;
        }
        None
    } else if search(&order, &mut used, &compatible, &mut budget, &mut pairs) {
        Some(pairs)
    } else {
        None
    }
}

/// Flips series hosts until every team's home count is within two games of
/// an even split (|home - away| <= 4), greedily reducing the squared
/// imbalance. Returns false when no sequence of improving flips reaches the
/// target, in which case the caller rebuilds the schedule.
fn rebalance_hosts(schedule: &mut Schedule, series: &[SeriesSpan]) -> bool {
    let t = schedule.num_teams as usize;
    let mut diff = vec![0i64; t];
    for &(h, a) in &schedule.games {
        diff[h as usize] += 1;
        diff[a as usize] -= 1;
    }
    let mut hosts: Vec<u16> = series.iter().map(|s| s.host).collect();

    // Flipping series `idx` moves 2*len of imbalance from host to guest;
    // the squared-imbalance gain is 4*len*(d_host - d_guest - 2*len).
    let flip_gain = |idx: usize, hosts: &[u16], diff: &[i64]| -> i64 {
        let span = &series[idx];
        let (host, guest) = if hosts[idx] == span.host {
            (span.host as usize, span.guest as usize)
        } else {
            (span.guest as usize, span.host as usize)
        };
        let len = i64::from(span.len);
        4 * len * (diff[host] - diff[guest] - 2 * len)
    };

    for _ in 0..10_000 {
        let worst = (0..t).max_by_key(|&i| diff[i].abs()).unwrap_or(0);
        if diff[worst].abs() <= 4 {
            return true;
        }
        // Prefer flips touching the worst team, but accept any improving
        // flip: shrinking the global imbalance opens moves for later.
        let involves_worst = |idx: &usize| {
            let span = &series[*idx];
            span.host as usize == worst || span.guest as usize == worst
        };
        let best = (0..series.len())
            .filter(involves_worst)
            .map(|idx| (idx, flip_gain(idx, &hosts, &diff)))
            .filter(|&(_, gain)| gain > 0)
            .max_by_key(|&(_, gain)| gain)
            .or_else(|| {
                (0..series.len())
                    .map(|idx| (idx, flip_gain(idx, &hosts, &diff)))
                    .filter(|&(_, gain)| gain > 0)
                    .max_by_key(|&(_, gain)| gain)
            });
        let Some((idx, _)) = best else { return false };
        let span = &series[idx];
        let (host, guest) = if hosts[idx] == span.host {
            (span.host, span.guest)
        } else {
            (span.guest, span.host)
        };
        for game in &mut schedule.games[span.start..span.start + span.len as usize] {
            *game = (guest, host);
        }
        diff[host as usize] -= 2 * i64::from(span.len);
        diff[guest as usize] += 2 * i64::from(span.len);
        hosts[idx] = guest;
    }
    (0..t).all(|i| diff[i].abs() <= 4)
}

/// Which generator produced a schedule; decides how strictly home/away
/// balance is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    Basic,
    Realistic,
}

/// Outcome of [`validate_schedule`]: per-team tallies, hard violations,
/// and the histogram of maximal same-opponent run lengths (the realized
/// series lengths, for realistic schedules).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleReport {
    pub per_team_games: Vec<u32>,
    pub per_team_home: Vec<u32>,
    pub violations: Vec<String>,
    pub series_lengths: BTreeMap<u32, u64>,
}

impl ScheduleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ScheduleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "teams: {}, games per team: {:?}",
            self.per_team_games.len(),
            self.per_team_games
        )?;
        writeln!(f, "home games per team: {:?}", self.per_team_home)?;
        writeln!(f, "series length histogram: {:?}", self.series_lengths)?;
        if self.violations.is_empty() {
            writeln!(f, "no violations")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks a schedule against the invariants for `t` teams and `g` games
/// per team. Basic schedules must balance home/away exactly; realistic
/// ones within two games.
pub fn validate_schedule(s: &Schedule, t: u32, g: u32, kind: ScheduleKind) -> ScheduleReport {
    let t_us = t as usize;
    let mut report = ScheduleReport {
        per_team_games: vec![0; t_us],
        per_team_home: vec![0; t_us],
        violations: Vec::new(),
        series_lengths: BTreeMap::new(),
    };

    let mut out_of_range = 0u64;
    let mut self_play = 0u64;
    for &(h, a) in &s.games {
        if h == a {
            self_play += 1;
        }
        for side in [h, a] {
            if (side as usize) < t_us {
                report.per_team_games[side as usize] += 1;
            } else {
                out_of_range += 1;
            }
        }
        if (h as usize) < t_us {
            report.per_team_home[h as usize] += 1;
        }
    }
    if self_play > 0 {
        report
            .violations
            .push(format!("{self_play} games where a team hosts itself"));
    }
    if out_of_range > 0 {
        report
            .violations
            .push(format!("{out_of_range} team indices outside 0..{t}"));
    }
    for (team, &count) in report.per_team_games.iter().enumerate() {
        if count != g {
            report
                .violations
                .push(format!("team {team} plays {count} games, expected {g}"));
        }
    }
    for (team, &home) in report.per_team_home.iter().enumerate() {
        let imbalance = (2 * i64::from(home) - i64::from(g)).abs();
        let limit = match kind {
            ScheduleKind::Basic => 0,
            ScheduleKind::Realistic => 4,
        };
        if imbalance > limit {
            report.violations.push(format!(
                "team {team} hosts {home} of {g} games (imbalance {imbalance})"
            ));
        }
    }

    for seq in s.team_sequences() {
        let mut run = 0u32;
        let mut prev: Option<u16> = None;
        for &opp in &seq {
            if prev == Some(opp) {
                run += 1;
            } else {
                if prev.is_some() {
                    *report.series_lengths.entry(run).or_insert(0) += 1;
                }
                prev = Some(opp);
                run = 1;
            }
        }
        if prev.is_some() {
            *report.series_lengths.entry(run).or_insert(0) += 1;
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn two_teams_two_games_host_once_each() {
        let s = basic_schedule(2, 2, &mut rng(1)).unwrap();
        assert_eq!(s.games.len(), 2);
        let mut sorted = s.games.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn odd_games_are_rejected() {
        assert_eq!(
            basic_schedule(3, 3, &mut rng(1)),
            Err(ScheduleError::OddGames(3))
        );
        assert_eq!(
            basic_schedule(1, 2, &mut rng(1)),
            Err(ScheduleError::TooFewTeams(1))
        );
        assert_eq!(
            basic_schedule(2, 0, &mut rng(1)),
            Err(ScheduleError::NoGames)
        );
    }

    #[test]
    fn modern_league_basic_schedule_is_exact() {
        let s = basic_schedule(30, 162, &mut rng(5)).unwrap();
        assert_eq!(s.games.len(), 2430);
        let report = validate_schedule(&s, 30, 162, ScheduleKind::Basic);
        assert!(report.is_valid(), "{report}");
        assert!(report.per_team_home.iter().all(|&h| h == 81));
    }

    #[test]
    fn basic_schedules_hold_for_many_configs() {
        let mut r = rng(7);
        for _ in 0..300 {
            let t = r.gen_range(2u32..=16);
            let g = r.gen_range(1u32..=30) * 2;
            let s = basic_schedule(t, g, &mut r).unwrap();
            let report = validate_schedule(&s, t, g, ScheduleKind::Basic);
            assert!(report.is_valid(), "t={t} g={g}: {report}");
        }
    }

    #[test]
    fn realistic_two_team_four_game_series() {
        let dist = SeriesDistribution::new(0.0, 0.0, 1.0).unwrap();
        let s = realistic_schedule(2, 4, &dist, &mut rng(3)).unwrap();
        assert_eq!(s.games.len(), 4);
        let first = s.games[0];
        assert!(s.games.iter().all(|&game| game == first), "one fixed host");
    }

    #[test]
    fn realistic_seasons_sum_to_g() {
        let dist = SeriesDistribution::default();
        let mut r = rng(11);
        for &(t, g) in &[(4u32, 162u32), (6, 17), (30, 162), (8, 5), (5, 12), (2, 9)] {
            let s = realistic_schedule(t, g, &dist, &mut r).unwrap();
            let report = validate_schedule(&s, t, g, ScheduleKind::Realistic);
            assert!(report.is_valid(), "t={t} g={g}: {report}");
        }
    }

    #[test]
    fn realistic_series_lengths_stay_in_range() {
        let dist = SeriesDistribution::default();
        let mut r = rng(13);
        for _ in 0..150 {
            let t = r.gen_range(2u32..=15);
            let g = r.gen_range(2u32..=60);
            if t * g % 2 == 1 || (t % 2 == 1 && g < 4) {
                continue;
            }
            let s = realistic_schedule(t, g, &dist, &mut r).unwrap();
            let report = validate_schedule(&s, t, g, ScheduleKind::Realistic);
            assert!(report.is_valid(), "t={t} g={g}: {report}");
            if t >= 4 {
                for (&len, _) in &report.series_lengths {
                    assert!(
                        (2..=4).contains(&len),
                        "t={t} g={g}: series of length {len}"
                    );
                }
            }
        }
    }

    #[test]
    fn modern_league_realistic_statistics() {
        let dist = SeriesDistribution::default();
        let mut r = rng(17);
        let mut total_series = 0u64;
        let mut total_games_in_series = 0u64;
        for _ in 0..100 {
            let s = realistic_schedule(30, 162, &dist, &mut r).unwrap();
            let report = validate_schedule(&s, 30, 162, ScheduleKind::Realistic);
            assert!(report.is_valid(), "{report}");
            for (&len, &count) in &report.series_lengths {
                assert!((2..=4).contains(&len), "series of length {len}");
                total_series += count;
                total_games_in_series += u64::from(len) * count;
            }
            for &home in &report.per_team_home {
                assert!(
                    (79..=83).contains(&home),
                    "home count {home} outside 81 +- 2"
                );
            }
        }
        let mean_len = total_games_in_series as f64 / total_series as f64;
        assert!(
            (2.5..=3.5).contains(&mean_len),
            "mean series length {mean_len}"
        );
    }

    #[test]
    fn partition_infeasible_g() {
        let dist = SeriesDistribution::default();
        assert_eq!(
            realistic_schedule(4, 1, &dist, &mut rng(1)),
            Err(ScheduleError::PartitionInfeasible(1))
        );
    }

    #[test]
    fn schedules_are_deterministic_under_a_seed() {
        let dist = SeriesDistribution::default();
        let a = realistic_schedule(12, 40, &dist, &mut rng(99)).unwrap();
        let b = realistic_schedule(12, 40, &dist, &mut rng(99)).unwrap();
        assert_eq!(a, b);
        let a = basic_schedule(12, 40, &mut rng(99)).unwrap();
        let b = basic_schedule(12, 40, &mut rng(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validator_flags_hand_built_violations() {
        let s = Schedule {
            num_teams: 3,
            games: vec![(0, 0), (1, 2), (2, 1), (0, 1)],
        };
        let report = validate_schedule(&s, 3, 2, ScheduleKind::Basic);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("hosts itself")));
    }

    #[test]
    fn odd_team_counts_idle_one_team_per_block() {
        let dist = SeriesDistribution::default();
        let mut r = rng(23);
        for &(t, g) in &[(3u32, 4u32), (5, 8), (7, 12)] {
            let s = realistic_schedule(t, g, &dist, &mut r).unwrap();
            let report = validate_schedule(&s, t, g, ScheduleKind::Realistic);
            assert!(report.is_valid(), "t={t} g={g}: {report}");
        }
    }

    #[test]
    fn series_distribution_validates_and_serializes() {
        assert!(SeriesDistribution::new(-0.1, 0.5, 0.5).is_err());
        assert!(SeriesDistribution::new(0.0, 0.0, 0.0).is_err());
        let d = SeriesDistribution::new(1.0, 1.0, 2.0).unwrap();
        assert!((d.weight(2) - 0.25).abs() < 1e-15);
        assert!((d.weight(4) - 0.5).abs() < 1e-15);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"2":0.25,"3":0.25,"4":0.5}"#);
        let back: SeriesDistribution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}
