//! Game-log parsing and season assembly.
//!
//! Two input formats are supported: a normalized `SimpleCsv` layout
//! (`date,seq,home,away,home_runs,away_runs`, header required) and the
//! standard positional Retrosheet game-log CSV (read-only). Parsed records
//! are grouped into per-team ordered seasons and per-year league
//! configurations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{self, BufRead, BufReader, Read, Write};

use chrono::NaiveDate;
use thiserror::Error;

use crate::core::{team_perspective, CoreError, GameRecord, TeamId, TeamSeason, YearConfig};

/// Supported game-log layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameLogFormat {
    /// `date,seq,home,away,home_runs,away_runs` with a header row.
    SimpleCsv,
    /// Retrosheet game logs: date in field 1, doubleheader code in field 2,
    /// away team in field 4, home team in field 7, away score in field 10,
    /// home score in field 11 (1-indexed).
    RetrosheetGameLog,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: u64, reason: String },
    #[error("line {line}: tied score {score}-{score}")]
    TieScore { line: u64, score: u32 },
    #[error("unknown game-log format: {0}")]
    UnknownFormat(String),
    #[error("no games in input")]
    EmptyInput,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Result of parsing one game log. `dropped_ties` counts Retrosheet rows
/// with equal scores (historical ties/forfeits) that were skipped rather
/// than failing the whole file.
#[derive(Debug, Default)]
pub struct ParsedLog {
    pub records: Vec<GameRecord>,
    pub dropped_ties: usize,
}

const SIMPLE_HEADER: [&str; 6] = ["date", "seq", "home", "away", "home_runs", "away_runs"];

/// Parses a game log from `source` in the declared format, preserving the
/// source order of records.
pub fn parse_game_log<R: Read>(source: R, format: GameLogFormat) -> Result<ParsedLog, IngestError> {
    match format {
        GameLogFormat::SimpleCsv => parse_simple_csv(source),
        GameLogFormat::RetrosheetGameLog => parse_retrosheet(source),
    }
}

fn malformed(line: u64, reason: impl Into<String>) -> IngestError {
    IngestError::MalformedLine {
        line,
        reason: reason.into(),
    }
}

fn core_to_ingest(line: u64, err: CoreError) -> IngestError {
    match err {
        CoreError::TieScore(score) => IngestError::TieScore {
            line,
            score: u32::from(score),
        },
        other => malformed(line, other.to_string()),
    }
}

fn parse_simple_csv<R: Read>(source: R) -> Result<ParsedLog, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.is_empty() || headers.iter().all(|h| h.is_empty()) {
        // Empty file: no header, no records.
        return Ok(ParsedLog::default());
    }
    let got: Vec<&str> = headers.iter().collect();
    if got != SIMPLE_HEADER {
        return Err(malformed(
            1,
            format!(
                "expected header {:?}, got {:?}",
                SIMPLE_HEADER.join(","),
                got.join(",")
            ),
        ));
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| malformed(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 6 {
            return Err(malformed(line, format!("expected 6 fields, got {}", row.len())));
        }
        let date: NaiveDate = row[0]
            .parse()
            .map_err(|_| malformed(line, format!("bad date {:?}", &row[0])))?;
        let seq: u8 = row[1]
            .parse()
            .map_err(|_| malformed(line, format!("bad seq {:?}", &row[1])))?;
        let home = TeamId::new(&row[2]).map_err(|e| core_to_ingest(line, e))?;
        let away = TeamId::new(&row[3]).map_err(|e| core_to_ingest(line, e))?;
        let home_runs: u32 = row[4]
            .parse()
            .map_err(|_| malformed(line, format!("bad home_runs {:?}", &row[4])))?;
        let away_runs: u32 = row[5]
            .parse()
            .map_err(|_| malformed(line, format!("bad away_runs {:?}", &row[5])))?;
        let record = GameRecord::new(date, seq, home, away, home_runs, away_runs)
            .map_err(|e| core_to_ingest(line, e))?;
        records.push(record);
    }
    Ok(ParsedLog {
        records,
        dropped_ties: 0,
    })
}

fn parse_retrosheet<R: Read>(source: R) -> Result<ParsedLog, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(source);

    let mut out = ParsedLog::default();
    for row in reader.records() {
        let row = row.map_err(|e| malformed(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() < 11 {
            return Err(malformed(
                line,
                format!("expected at least 11 fields, got {}", row.len()),
            ));
        }
        let date = NaiveDate::parse_from_str(&row[0], "%Y%m%d")
            .map_err(|_| malformed(line, format!("bad date {:?}", &row[0])))?;
        let dh_code: u8 = row[1]
            .parse()
            .map_err(|_| malformed(line, format!("bad doubleheader code {:?}", &row[1])))?;
        let seq = dh_code.saturating_sub(1);
        let away = TeamId::new(&row[3]).map_err(|e| core_to_ingest(line, e))?;
        let home = TeamId::new(&row[6]).map_err(|e| core_to_ingest(line, e))?;
        let away_runs: u32 = row[9]
            .parse()
            .map_err(|_| malformed(line, format!("bad away score {:?}", &row[9])))?;
        let home_runs: u32 = row[10]
            .parse()
            .map_err(|_| malformed(line, format!("bad home score {:?}", &row[10])))?;
        if home_runs == away_runs {
            // Historical ties and forfeits exist in raw sources; the modeled
            // universe has none, so skip the row instead of failing the file.
            out.dropped_ties += 1;
            continue;
        }
        let record = GameRecord::new(date, seq, home, away, home_runs, away_runs)
            .map_err(|e| core_to_ingest(line, e))?;
        out.records.push(record);
    }
    Ok(out)
}

/// Writes records in the normalized `SimpleCsv` layout.
pub fn write_simple_csv<W: Write>(records: &[GameRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", SIMPLE_HEADER.join(","))?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.date.format("%Y-%m-%d"),
            r.seq,
            r.home,
            r.away,
            r.home_runs,
            r.away_runs
        )?;
    }
    Ok(())
}

/// Sniffs the format of a game-log file from its first line.
pub fn detect_format<R: Read>(source: R) -> Result<GameLogFormat, IngestError> {
    let mut reader = BufReader::new(source);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let first = first.trim();
    if first.is_empty() || first.starts_with("date,") {
        return Ok(GameLogFormat::SimpleCsv);
    }
    let head = first.trim_start_matches('"');
    if head.len() >= 8 && head.as_bytes()[..8].iter().all(u8::is_ascii_digit) {
        return Ok(GameLogFormat::RetrosheetGameLog);
    }
    Err(IngestError::UnknownFormat(format!(
        "unrecognized first line {first:?}"
    )))
}

/// Groups records into per-team, per-year ordered seasons. Every game
/// appears in exactly two seasons (home and away perspective). The output
/// is sorted by (team, year); each season's games are sorted by (date, seq).
pub fn build_team_seasons(games: &[GameRecord]) -> Vec<TeamSeason> {
    let mut by_key: HashMap<(TeamId, i32), TeamSeason> = HashMap::new();
    for game in games {
        for team in [&game.home, &game.away] {
            let view = team_perspective(game, team).expect("participant view");
            by_key
                .entry((team.clone(), game.year()))
                .or_insert_with(|| TeamSeason {
                    team: team.clone(),
                    year: game.year(),
                    games: Vec::new(),
                })
                .games
                .push(view);
        }
    }
    let mut seasons: Vec<TeamSeason> = by_key.into_values().collect();
    for season in &mut seasons {
        season.games.sort_by(|a, b| {
            (a.date, a.seq, &a.opponent, a.scored, a.allowed)
                .cmp(&(b.date, b.seq, &b.opponent, b.scored, b.allowed))
        });
    }
    seasons.sort_by(|a, b| (&a.team, a.year).cmp(&(&b.team, b.year)));
    seasons
}

/// How to derive `games_per_team` for a year from the observed season
/// lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeasonLengthRule {
    /// Mean season length, rounded to the nearest integer. Rainouts make
    /// actual counts vary, so the mean is the season's nominal size.
    #[default]
    RoundedMean,
    /// Longest observed season.
    Max,
}

/// Derives one [`YearConfig`] per year present in the data.
///
/// `num_teams` is the number of distinct teams seen that year. When the
/// team count and the derived game count are both odd, the game count is
/// bumped by one so the total game count stays integral.
pub fn year_configs_from_data(
    games: &[GameRecord],
    rule: SeasonLengthRule,
) -> Result<Vec<YearConfig>, IngestError> {
    if games.is_empty() {
        return Err(IngestError::EmptyInput);
    }
    let mut teams_by_year: BTreeMap<i32, BTreeSet<&TeamId>> = BTreeMap::new();
    let mut games_by_team: BTreeMap<(i32, &TeamId), u32> = BTreeMap::new();
    for g in games {
        let year = g.year();
        for team in [&g.home, &g.away] {
            teams_by_year.entry(year).or_default().insert(team);
            *games_by_team.entry((year, team)).or_insert(0) += 1;
        }
    }
    let mut configs = Vec::new();
    for (year, teams) in &teams_by_year {
        let lengths: Vec<u32> = teams
            .iter()
            .map(|t| games_by_team[&(*year, *t)])
            .collect();
        let games_per_team = match rule {
            SeasonLengthRule::RoundedMean => {
                let mean = lengths.iter().map(|&l| f64::from(l)).sum::<f64>() / lengths.len() as f64;
                mean.round() as u32
            }
            SeasonLengthRule::Max => *lengths.iter().max().expect("non-empty year"),
        };
        let num_teams = teams.len() as u32;
        let games_per_team = if (num_teams * games_per_team) % 2 == 1 {
            games_per_team + 1
        } else {
            games_per_team
        };
        let cfg = YearConfig::new(*year, num_teams, games_per_team.max(1))
            .map_err(|e| malformed(0, e.to_string()))?;
        configs.push(cfg);
    }
    Ok(configs)
}
