//! Shared domain types: team identifiers, game records, and the
//! per-team view of a season.
//!
//! Everything here is an immutable value type; the rest of the crate
//! builds on these.

use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sanity bound on a single team's runs in one game. Anything above this
/// indicates corrupt input and is rejected at parse time.
pub const MAX_SCORE: u8 = 99;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("team identifier is empty")]
    EmptyTeamId,
    #[error("home and away team are both {0}")]
    SameTeams(String),
    #[error("game ended {0}-{0}; tied scores are not valid results")]
    TieScore(u8),
    #[error("score {0} exceeds the sanity bound of {MAX_SCORE}")]
    ScoreOutOfRange(u32),
    #[error("team {team} did not play in {home} vs {away}")]
    TeamNotInGame {
        team: String,
        home: String,
        away: String,
    },
    #[error("invalid year config: {0}")]
    InvalidYearConfig(String),
}

/// Opaque team token, e.g. `"LAA"`. Normalized to uppercase; comparison is
/// exact token equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TeamId(String);

impl TeamId {
    pub fn new(token: &str) -> Result<Self, CoreError> {
        let canonical = token.trim().to_ascii_uppercase();
        if canonical.is_empty() {
            return Err(CoreError::EmptyTeamId);
        }
        Ok(TeamId(canonical))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TeamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One completed game: who played, where, and the final score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameRecord {
    pub date: NaiveDate,
    /// Disambiguates doubleheaders on the same date (0 for the first or
    /// only game, 1 for the second, ...).
    pub seq: u8,
    pub home: TeamId,
    pub away: TeamId,
    pub home_runs: u8,
    pub away_runs: u8,
}

impl GameRecord {
    /// Builds a record, enforcing the game invariants: distinct teams,
    /// no tied score, scores within the sanity bound.
    pub fn new(
        date: NaiveDate,
        seq: u8,
        home: TeamId,
        away: TeamId,
        home_runs: u32,
        away_runs: u32,
    ) -> Result<Self, CoreError> {
        if home == away {
            return Err(CoreError::SameTeams(home.to_string()));
        }
        for &runs in &[home_runs, away_runs] {
            if runs > u32::from(MAX_SCORE) {
                return Err(CoreError::ScoreOutOfRange(runs));
            }
        }
        if home_runs == away_runs {
            return Err(CoreError::TieScore(home_runs as u8));
        }
        Ok(GameRecord {
            date,
            seq,
            home,
            away,
            home_runs: home_runs as u8,
            away_runs: away_runs as u8,
        })
    }

    /// Season year of the game (MLB regular seasons do not span New Year,
    /// so this is just the calendar year).
    pub fn year(&self) -> i32 {
        use chrono::Datelike;
        self.date.year()
    }

    pub fn total_runs(&self) -> u32 {
        u32::from(self.home_runs) + u32::from(self.away_runs)
    }
}

/// A game as experienced by one of its two participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamGameView {
    pub scored: u8,
    pub allowed: u8,
    pub opponent: TeamId,
    pub is_home: bool,
    pub date: NaiveDate,
    pub seq: u8,
}

impl TeamGameView {
    /// Key identifying the underlying game regardless of perspective:
    /// (date, seq, home, away).
    pub fn game_key(&self, team: &TeamId) -> (NaiveDate, u8, TeamId, TeamId) {
        if self.is_home {
            (self.date, self.seq, team.clone(), self.opponent.clone())
        } else {
            (self.date, self.seq, self.opponent.clone(), team.clone())
        }
    }
}

/// A team's chronologically ordered season.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamSeason {
    pub team: TeamId,
    pub year: i32,
    /// Sorted ascending by (date, seq).
    pub games: Vec<TeamGameView>,
}

impl TeamSeason {
    pub fn len(&self) -> usize {
        self.games.len()
    }

    pub fn is_empty(&self) -> bool {
        self.games.is_empty()
    }
}

/// League shape for one season year: team count and games per team.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearConfig {
    pub year: i32,
    pub num_teams: u32,
    pub games_per_team: u32,
}

impl YearConfig {
    pub fn new(year: i32, num_teams: u32, games_per_team: u32) -> Result<Self, CoreError> {
        if num_teams < 2 {
            return Err(CoreError::InvalidYearConfig(format!(
                "need at least 2 teams, got {num_teams}"
            )));
        }
        if games_per_team == 0 {
            return Err(CoreError::InvalidYearConfig(
                "games_per_team must be positive".into(),
            ));
        }
        if (num_teams * games_per_team) % 2 != 0 {
            return Err(CoreError::InvalidYearConfig(format!(
                "num_teams * games_per_team = {} is odd, so the total game \
                 count is not an integer",
                num_teams * games_per_team
            )));
        }
        Ok(YearConfig {
            year,
            num_teams,
            games_per_team,
        })
    }

    /// Total games in the season: T*G/2.
    pub fn total_games(&self) -> u32 {
        self.num_teams * self.games_per_team / 2
    }
}

/// Views a game from `team`'s perspective.
///
/// Errors when `team` is neither the home nor the away side.
pub fn team_perspective(game: &GameRecord, team: &TeamId) -> Result<TeamGameView, CoreError> {
    if *team == game.home {
        Ok(TeamGameView {
            scored: game.home_runs,
            allowed: game.away_runs,
            opponent: game.away.clone(),
            is_home: true,
            date: game.date,
            seq: game.seq,
        })
    } else if *team == game.away {
        Ok(TeamGameView {
            scored: game.away_runs,
            allowed: game.home_runs,
            opponent: game.home.clone(),
            is_home: false,
            date: game.date,
            seq: game.seq,
        })
    } else {
        Err(CoreError::TeamNotInGame {
            team: team.to_string(),
            home: game.home.to_string(),
            away: game.away.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    fn angels_dodgers() -> GameRecord {
        GameRecord::new(
            date("2019-06-10"),
            0,
            TeamId::new("LAA").unwrap(),
            TeamId::new("LAD").unwrap(),
            5,
            3,
        )
        .unwrap()
    }

    #[test]
    fn team_id_normalizes_to_uppercase() {
        assert_eq!(TeamId::new(" laa ").unwrap().as_str(), "LAA");
        assert_eq!(TeamId::new(""), Err(CoreError::EmptyTeamId));
        assert_eq!(TeamId::new("   "), Err(CoreError::EmptyTeamId));
    }

    #[test]
    fn home_perspective() {
        let g = angels_dodgers();
        let v = team_perspective(&g, &TeamId::new("LAA").unwrap()).unwrap();
        assert_eq!(v.scored, 5);
        assert_eq!(v.allowed, 3);
        assert!(v.is_home);
        assert_eq!(v.opponent.as_str(), "LAD");
    }

    #[test]
    fn away_perspective_is_symmetric() {
        let g = angels_dodgers();
        let v = team_perspective(&g, &TeamId::new("LAD").unwrap()).unwrap();
        assert_eq!(v.scored, 3);
        assert_eq!(v.allowed, 5);
        assert!(!v.is_home);
    }

    #[test]
    fn non_participant_is_an_error() {
        let g = angels_dodgers();
        let err = team_perspective(&g, &TeamId::new("TBR").unwrap()).unwrap_err();
        assert!(matches!(err, CoreError::TeamNotInGame { .. }));
    }

    #[test]
    fn perspectives_conserve_total_runs() {
        let g = angels_dodgers();
        let home = team_perspective(&g, &g.home.clone()).unwrap();
        let away = team_perspective(&g, &g.away.clone()).unwrap();
        assert_eq!(
            u32::from(home.scored) + u32::from(home.allowed),
            g.total_runs()
        );
        assert_eq!(home.scored, away.allowed);
        assert_eq!(home.allowed, away.scored);
    }

    #[test]
    fn record_invariants() {
        let laa = TeamId::new("LAA").unwrap();
        let lad = TeamId::new("LAD").unwrap();
        let d = date("2019-06-10");
        assert!(matches!(
            GameRecord::new(d, 0, laa.clone(), laa.clone(), 5, 3),
            Err(CoreError::SameTeams(_))
        ));
        assert!(matches!(
            GameRecord::new(d, 0, laa.clone(), lad.clone(), 4, 4),
            Err(CoreError::TieScore(4))
        ));
        assert!(matches!(
            GameRecord::new(d, 0, laa, lad, 100, 3),
            Err(CoreError::ScoreOutOfRange(100))
        ));
    }

    #[test]
    fn year_config_requires_even_total() {
        assert!(YearConfig::new(1901, 3, 3).is_err());
        assert!(YearConfig::new(1901, 1, 4).is_err());
        assert!(YearConfig::new(1901, 2, 0).is_err());
        let cfg = YearConfig::new(2019, 30, 162).unwrap();
        assert_eq!(cfg.total_games(), 2430);
    }
}
