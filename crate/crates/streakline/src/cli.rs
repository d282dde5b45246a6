//! Command-line orchestration: ingest data, count historical streaks, fit
//! models, run simulations, and emit comparison reports.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure, 4 infeasible
//! configuration.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::core::YearConfig;
use crate::ingest::{
    self, detect_format, parse_game_log, write_simple_csv, GameLogFormat, IngestError, ParsedLog,
    SeasonLengthRule,
};
use crate::models::{self, ModelError, ScoreModel};
use crate::schedule::{ScheduleError, ScheduleKind, SeriesDistribution};
use crate::sim::{self, ComparisonReport, SimConfig, SimError, YearStats};
use crate::streaks::{self, GameSelector, StreakError};
use crate::weibull::{self, EmpiricalRunPmf, FitOptions, WeibullError};

#[derive(Parser)]
#[command(
    name = "streakline",
    version,
    about = "Same-score streak analysis: historical counts, Weibull score models, Monte Carlo season ensembles"
)]
struct Cli {
    /// Worker threads for simulation (default: machine parallelism). The
    /// STREAKLINE_THREADS environment variable overrides this flag.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Simple,
    Retrosheet,
}

impl From<FormatArg> for GameLogFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Simple => GameLogFormat::SimpleCsv,
            FormatArg::Retrosheet => GameLogFormat::RetrosheetGameLog,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FitMode {
    Simple,
    Bivariate,
}

#[derive(Subcommand)]
enum Command {
    /// Parse game logs and write one normalized CSV plus a summary.
    Ingest {
        /// Input game-log files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Input format; auto-detected per file when omitted (all files
        /// must then agree).
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Normalized CSV output path.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Count same-score streaks in a game log.
    Streaks {
        gamelog: PathBuf,
        /// Streak orders to count.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        orders: Vec<usize>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Per-year counts CSV (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fit a score model to a game log and write it as JSON.
    Fit {
        gamelog: PathBuf,
        #[arg(long, value_enum)]
        mode: FitMode,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a Monte Carlo season ensemble from a JSON config.
    Simulate {
        config: PathBuf,
        /// Output directory (overrides the config's output_dir).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Probability that a uniform score on min..=max repeats this many
    /// times in a row.
    Estimate { min: u32, max: u32, repeats: u32 },
}

/// Errors grouped by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input: exit 2.
    Input(String),
    /// Optimizer or sampler breakdown: exit 3.
    Numerical(String),
    /// No schedule exists for the requested configuration: exit 4.
    Infeasible(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) | CliError::Infeasible(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<StreakError> for CliError {
    fn from(e: StreakError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WeibullError> for CliError {
    fn from(e: WeibullError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::RejectionLimit(_) | ModelError::Weibull(_) => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ScheduleError> for CliError {
    fn from(e: ScheduleError) -> Self {
        match e {
            ScheduleError::BadDistribution(_) => CliError::Input(e.to_string()),
            _ => CliError::Infeasible(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Model(m) => m.into(),
            SimError::Schedule(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Parses arguments, configures the worker pool, and dispatches. This is
/// the whole binary.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let threads = std::env::var("STREAKLINE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.threads);
    if let Some(n) = threads {
        // Ignore failure: the global pool can only be built once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }

    let result = match cli.command {
        Command::Ingest {
            inputs,
            format,
            output,
        } => cmd_ingest(&inputs, format.map(Into::into), &output),
        Command::Streaks {
            gamelog,
            orders,
            format,
            output,
        } => cmd_streaks(&gamelog, &orders, format.map(Into::into), output.as_deref()),
        Command::Fit {
            gamelog,
            mode,
            format,
            output,
        } => cmd_fit(&gamelog, mode, format.map(Into::into), &output),
        Command::Simulate { config, output } => cmd_simulate(&config, output.as_deref()),
        Command::Estimate { min, max, repeats } => cmd_estimate(min, max, repeats),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_gamelog(path: &Path, format: Option<GameLogFormat>) -> Result<ParsedLog, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let format = match format {
        Some(f) => f,
        None => detect_format(bytes.as_slice())?,
    };
    Ok(parse_game_log(bytes.as_slice(), format)?)
}

fn cmd_ingest(
    inputs: &[PathBuf],
    format: Option<GameLogFormat>,
    output: &Path,
) -> Result<(), CliError> {
    let mut records = Vec::new();
    let mut dropped_ties = 0usize;
    let mut detected: Option<GameLogFormat> = None;
    for path in inputs {
        let bytes = fs::read(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let file_format = match format {
            Some(f) => f,
            None => {
                let f = detect_format(bytes.as_slice())?;
                if let Some(previous) = detected {
                    if previous != f {
                        return Err(CliError::Input(format!(
                            "{} has a different format than earlier inputs; pass --format",
                            path.display()
                        )));
                    }
                }
                detected = Some(f);
                f
            }
        };
        let log = parse_game_log(bytes.as_slice(), file_format)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        dropped_ties += log.dropped_ties;
        records.extend(log.records);
    }

    let mut out = fs::File::create(output)?;
    write_simple_csv(&records, &mut out)?;

    let mut by_year: BTreeMap<i32, (u64, std::collections::BTreeSet<&crate::core::TeamId>)> =
        BTreeMap::new();
    for g in &records {
        let entry = by_year.entry(g.year()).or_default();
        entry.0 += 1;
        entry.1.insert(&g.home);
        entry.1.insert(&g.away);
    }
    println!("year,games,teams");
    for (year, (games, teams)) in &by_year {
        println!("{year},{games},{}", teams.len());
    }
    println!("total games: {}", records.len());
    if dropped_ties > 0 {
        println!("dropped tied/forfeit rows: {dropped_ties}");
    }
    println!("wrote {}", output.display());
    Ok(())
}

fn cmd_streaks(
    gamelog: &Path,
    orders: &[usize],
    format: Option<GameLogFormat>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let log = load_gamelog(gamelog, format)?;
    let seasons = ingest::build_team_seasons(&log.records);

    let mut csv = String::from("year,order,count\n");
    for &order in orders {
        let counts = streaks::league_streak_counts(&seasons, order)?;
        for (year, count) in &counts {
            csv.push_str(&format!("{year},{order},{count}\n"));
        }
        let total: u64 = counts.values().sum();
        println!("order {order}: {total} streaks");
    }
    match output {
        Some(path) => {
            fs::write(path, csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }

    let pairs = streaks::pair_count(&seasons);
    println!("consecutive-game pairs: {pairs}");
    if pairs > 0 {
        println!(
            "order-2 pair probability: {}",
            fmt_sig6(streaks::pair_probability(&seasons)?)
        );
    }

    println!("run totals (mean/std/games):");
    let mut selectors = vec![("all games".to_string(), GameSelector::AllGames)];
    for &order in orders {
        selectors.push((format!("order-{order}"), GameSelector::InStreakOfOrder(order)));
    }
    for (label, selector) in selectors {
        match streaks::run_total_stats(&seasons, selector) {
            Ok(stats) => println!(
                "  {label}: {} / {} / {}",
                fmt_sig6(stats.mean),
                fmt_sig6(stats.std_dev),
                stats.count
            ),
            Err(StreakError::EmptySelection) => println!("  {label}: no games"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

/// Wire shape of `fit --mode simple` output: a loadable simple model whose
/// parameter blocks carry their fit objectives.
#[derive(Serialize)]
struct SimpleFitFile {
    kind: &'static str,
    max_runs: u32,
    home: FittedParams,
    away: FittedParams,
}

#[derive(Serialize)]
struct FittedParams {
    scale: f64,
    location: f64,
    shape: f64,
    objective: f64,
    converged: bool,
    evaluations: usize,
}

impl From<&weibull::FitOutcome> for FittedParams {
    fn from(out: &weibull::FitOutcome) -> Self {
        FittedParams {
            scale: out.params.scale,
            location: out.params.location,
            shape: out.params.shape,
            objective: out.objective,
            converged: out.converged,
            evaluations: out.evaluations,
        }
    }
}

fn empirical_run_pmfs(log: &ParsedLog) -> Result<(EmpiricalRunPmf, EmpiricalRunPmf), CliError> {
    let mut home_counts = vec![0u64; 100];
    let mut away_counts = vec![0u64; 100];
    for g in &log.records {
        home_counts[g.home_runs as usize] += 1;
        away_counts[g.away_runs as usize] += 1;
    }
    let (home, home_folded) = EmpiricalRunPmf::from_counts(&home_counts)?;
    let (away, away_folded) = EmpiricalRunPmf::from_counts(&away_counts)?;
    if home_folded + away_folded > 0 {
        eprintln!(
            "warning: {} scores above {} runs folded into the last cell",
            home_folded + away_folded,
            weibull::MAX_RUNS
        );
    }
    Ok((home, away))
}

fn cmd_fit(
    gamelog: &Path,
    mode: FitMode,
    format: Option<GameLogFormat>,
    output: &Path,
) -> Result<(), CliError> {
    let log = load_gamelog(gamelog, format)?;
    if log.records.is_empty() {
        return Err(CliError::Input("no games in input".into()));
    }

    let json = match mode {
        FitMode::Simple => {
            let (home_pmf, away_pmf) = empirical_run_pmfs(&log)?;
            let opts = FitOptions::default();
            let home = weibull::fit(&home_pmf, &weibull::default_init(&home_pmf), &opts)?;
            let away = weibull::fit(&away_pmf, &weibull::default_init(&away_pmf), &opts)?;
            if !home.converged || !away.converged {
                return Err(CliError::Numerical(
                    "least-squares fit did not converge in any restart".into(),
                ));
            }
            println!(
                "home: scale {} location {} shape {} (objective {})",
                fmt_sig6(home.params.scale),
                fmt_sig6(home.params.location),
                fmt_sig6(home.params.shape),
                fmt_sig6(home.objective)
            );
            println!(
                "away: scale {} location {} shape {} (objective {})",
                fmt_sig6(away.params.scale),
                fmt_sig6(away.params.location),
                fmt_sig6(away.params.shape),
                fmt_sig6(away.objective)
            );
            serde_json::to_string_pretty(&SimpleFitFile {
                kind: "simple",
                max_runs: models::DEFAULT_MAX_RUNS,
                home: (&home).into(),
                away: (&away).into(),
            })?
        }
        FitMode::Bivariate => {
            let (model, diagnostics) =
                models::fit_bivariate(&log.records, models::DEFAULT_MAX_RUNS)?;
            println!(
                "diagonals: {} fitted, {} empirical (structural {})",
                diagnostics.fitted_diagonals,
                diagnostics.empirical_diagonals,
                diagnostics.structural_diagonals
            );
            if diagnostics.skipped_games > 0 {
                eprintln!(
                    "warning: {} games outside the representable diagonals",
                    diagnostics.skipped_games
                );
            }
            let mut value = serde_json::to_value(ScoreModel::Bivariate(model))?;
            value["diagnostics"] = serde_json::to_value(&diagnostics)?;
            serde_json::to_string_pretty(&value)?
        }
    };
    fs::write(output, json + "\n")?;
    println!("wrote {}", output.display());
    Ok(())
}

fn default_reps() -> u32 {
    10_000
}

fn default_orders() -> Vec<u32> {
    vec![2, 3, 4]
}

/// On-disk simulation config. Paths are resolved relative to the config
/// file's directory.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CliSimConfig {
    /// Explicit per-year league shapes; alternative to years_from_gamelog.
    #[serde(default)]
    years: Option<Vec<YearConfig>>,
    /// Derive year configs (team and game counts) from this game log.
    #[serde(default)]
    years_from_gamelog: Option<PathBuf>,
    /// mean (default) or max observed season length per year.
    #[serde(default)]
    season_length_rule: SeasonLengthRuleArg,
    #[serde(default = "default_reps")]
    reps: u32,
    model: ModelSource,
    schedule: ScheduleKind,
    #[serde(default)]
    series_dist: SeriesDistribution,
    #[serde(default = "default_orders")]
    orders: Vec<u32>,
    seed: u64,
    /// Game log whose per-year streak counts feed the comparison report.
    #[serde(default)]
    historic_gamelog: Option<PathBuf>,
    #[serde(default)]
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum SeasonLengthRuleArg {
    #[default]
    Mean,
    Max,
}

impl From<SeasonLengthRuleArg> for SeasonLengthRule {
    fn from(r: SeasonLengthRuleArg) -> Self {
        match r {
            SeasonLengthRuleArg::Mean => SeasonLengthRule::RoundedMean,
            SeasonLengthRuleArg::Max => SeasonLengthRule::Max,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ModelSource {
    Path { path: PathBuf },
    Inline(Box<ScoreModel>),
}

#[derive(Serialize)]
struct RunManifest {
    tool_version: String,
    root_seed: u64,
    threads: usize,
    duration_seconds: f64,
    config: serde_json::Value,
    input_digests: BTreeMap<String, String>,
    /// Years whose basic-schedule game count was reduced by one to keep
    /// the home/away split exact.
    adjusted_years: Vec<(i32, u32)>,
}

fn sha256_hex(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

fn cmd_simulate(config_path: &Path, output_override: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let config_text = fs::read_to_string(config_path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", config_path.display())))?;
    let cli_config: CliSimConfig = serde_json::from_str(&config_text)
        .map_err(|e| CliError::Input(format!("{}: {e}", config_path.display())))?;
    let base = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();

    let mut input_digests = BTreeMap::new();
    input_digests.insert(
        config_path.display().to_string(),
        sha256_hex(config_path)?,
    );

    // Years: explicit or derived from a game log.
    let years: Vec<YearConfig> = match (&cli_config.years, &cli_config.years_from_gamelog) {
        (Some(years), None) => years.clone(),
        (None, Some(path)) => {
            let path = resolve(&base, path);
            input_digests.insert(path.display().to_string(), sha256_hex(&path)?);
            let log = load_gamelog(&path, None)?;
            ingest::year_configs_from_data(&log.records, cli_config.season_length_rule.into())?
        }
        _ => {
            return Err(CliError::Input(
                "config needs exactly one of years or years_from_gamelog".into(),
            ))
        }
    };

    let model: ScoreModel = match &cli_config.model {
        ModelSource::Inline(m) => (**m).clone(),
        ModelSource::Path { path } => {
            let path = resolve(&base, path);
            input_digests.insert(path.display().to_string(), sha256_hex(&path)?);
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        }
    };
    model.validate()?;

    let historic: Option<BTreeMap<i32, BTreeMap<u32, u64>>> = match &cli_config.historic_gamelog {
        Some(path) => {
            let path = resolve(&base, path);
            input_digests.insert(path.display().to_string(), sha256_hex(&path)?);
            let log = load_gamelog(&path, None)?;
            let seasons = ingest::build_team_seasons(&log.records);
            let mut per_order: BTreeMap<i32, BTreeMap<u32, u64>> = BTreeMap::new();
            for &order in &cli_config.orders {
                let counts = streaks::league_streak_counts(&seasons, order as usize)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                for (year, count) in counts {
                    per_order.entry(year).or_default().insert(order, count);
                }
            }
            Some(per_order)
        }
        None => None,
    };

    let sim_config = SimConfig {
        years,
        reps: cli_config.reps,
        model,
        schedule: cli_config.schedule,
        series_dist: cli_config.series_dist,
        orders: cli_config.orders.clone(),
        seed: cli_config.seed,
    };
    let ensemble = sim::run_ensemble(&sim_config)?;

    // Assemble every output in memory before touching the filesystem.
    let mut year_stats_csv = String::from("year,order,min,p05,mean,p95,max,historic\n");
    let mut all_stats: Vec<(u32, Vec<YearStats>)> = Vec::new();
    for &order in &sim_config.orders {
        let mut stats = ensemble.year_stats(order)?;
        if let Some(historic) = &historic {
            for s in &mut stats {
                s.historic = historic
                    .get(&s.year)
                    .and_then(|per_order| per_order.get(&order))
                    .copied();
            }
        }
        for s in &stats {
            year_stats_csv.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                s.year,
                s.order,
                fmt_sig6(s.min),
                fmt_sig6(s.p05),
                fmt_sig6(s.mean),
                fmt_sig6(s.p95),
                fmt_sig6(s.max),
                s.historic.map_or(String::new(), |h| h.to_string()),
            ));
        }
        all_stats.push((order, stats));
    }

    let mut era_csvs: Vec<(String, String)> = Vec::new();
    let mut report_text = String::new();
    for &order in &sim_config.orders {
        let hist = ensemble.era_histogram(order)?;
        let mut csv = String::from("count,fraction\n");
        for (count, fraction) in &hist.fractions {
            csv.push_str(&format!("{count},{}\n", fmt_sig6(*fraction)));
        }
        era_csvs.push((format!("era_histogram_order{order}.csv"), csv));
        report_text.push_str(&format!(
            "order {order}: per-year occurrence rate {}\n",
            fmt_sig6(hist.year_occurrence_rate)
        ));
    }

    if historic.is_some() {
        for (order, stats) in &all_stats {
            let historic_counts: BTreeMap<i32, u64> = stats
                .iter()
                .filter_map(|s| s.historic.map(|h| (s.year, h)))
                .collect();
            if historic_counts.is_empty() {
                continue;
            }
            let report: ComparisonReport = sim::compare_to_history(stats, &historic_counts)?;
            let pct = |n: usize| 100.0 * n as f64 / report.years as f64;
            report_text.push_str(&format!(
                "order {order} vs history over {} years: \
                 exceeds mean {} ({}%), exceeds p95 {} ({}%), below p05 {} ({}%), \
                 exceeds max {}, below min {}\n",
                report.years,
                report.exceeds_mean,
                fmt_sig6(pct(report.exceeds_mean)),
                report.exceeds_p95,
                fmt_sig6(pct(report.exceeds_p95)),
                report.below_p05,
                fmt_sig6(pct(report.below_p05)),
                report.exceeds_max,
                report.below_min,
            ));
        }
    }

    let out_dir = output_override
        .map(Path::to_path_buf)
        .or_else(|| cli_config.output_dir.as_ref().map(|p| resolve(&base, p)))
        .ok_or_else(|| {
            CliError::Input("no output directory: set output_dir or pass --output".into())
        })?;
    fs::create_dir_all(&out_dir)?;

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        root_seed: sim_config.seed,
        threads: rayon::current_num_threads(),
        duration_seconds: started.elapsed().as_secs_f64(),
        config: serde_json::from_str(&config_text)?,
        input_digests,
        adjusted_years: ensemble.adjusted_years.clone(),
    };

    let mut written: Vec<PathBuf> = Vec::new();
    let mut write_file = |name: &str, contents: &str| -> Result<(), CliError> {
        let path = out_dir.join(name);
        let mut f = fs::File::create(&path)?;
        f.write_all(contents.as_bytes())?;
        written.push(path);
        Ok(())
    };

    let result = (|| {
        write_file("year_stats.csv", &year_stats_csv)?;
        for (name, csv) in &era_csvs {
            write_file(name, csv)?;
        }
        write_file("comparison.txt", &report_text)?;
        write_file(
            "manifest.json",
            &(serde_json::to_string_pretty(&manifest)? + "\n"),
        )?;
        Ok(())
    })();
    if result.is_err() {
        for path in &written {
            let _ = fs::remove_file(path);
        }
        return result;
    }

    println!("wrote {} files to {}", 3 + era_csvs.len(), out_dir.display());
    Ok(())
}

fn cmd_estimate(min: u32, max: u32, repeats: u32) -> Result<(), CliError> {
    let p = sim::naive_estimate(min, max, repeats).map_err(|e| CliError::Input(e.to_string()))?;
    let one_in = (1.0 / p).round() as u128;
    println!("{p:e} (1 in {})", thousands(one_in));
    Ok(())
}

/// Fixed 6-significant-digit decimal formatting, so output files can be
/// compared byte-wise across runs.
fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn thousands(n: u128) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::SimpleWeibullModel;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig6(0.0), "0");
        assert_eq!(fmt_sig6(56.0), "56.0000");
        assert_eq!(fmt_sig6(0.0375700), "0.0375700");
        assert_eq!(fmt_sig6(123456.7), "123457");
        assert_eq!(fmt_sig6(-8.81), "-8.81000");
        assert_eq!(fmt_sig6(0.247133), "0.247133");
    }

    #[test]
    fn thousands_separators() {
        assert_eq!(thousands(1), "1");
        assert_eq!(thousands(999), "999");
        assert_eq!(thousands(1600), "1,600");
        assert_eq!(thousands(2_560_000), "2,560,000");
    }

    #[test]
    fn model_source_parses_inline_and_path() {
        let inline = r#"{"kind":"simple","home":{"scale":4.0,"location":-0.5,"shape":1.7},"away":{"scale":4.0,"location":-0.5,"shape":1.7}}"#;
        assert!(matches!(
            serde_json::from_str::<ModelSource>(inline).unwrap(),
            ModelSource::Inline(_)
        ));
        let by_path = r#"{"path":"model.json"}"#;
        assert!(matches!(
            serde_json::from_str::<ModelSource>(by_path).unwrap(),
            ModelSource::Path { .. }
        ));
    }

    #[test]
    fn fit_file_json_loads_as_a_score_model() {
        let out = weibull::FitOutcome {
            params: crate::weibull::WeibullParams {
                scale: 4.0,
                location: -0.5,
                shape: 1.7,
            },
            objective: 1e-5,
            converged: true,
            evaluations: 100,
        };
        let file = SimpleFitFile {
            kind: "simple",
            max_runs: models::DEFAULT_MAX_RUNS,
            home: (&out).into(),
            away: (&out).into(),
        };
        let json = serde_json::to_string(&file).unwrap();
        let model: ScoreModel = serde_json::from_str(&json).unwrap();
        model.validate().unwrap();
        match model {
            ScoreModel::Simple(SimpleWeibullModel { home, .. }) => {
                assert_eq!(home.scale, 4.0);
            }
            _ => panic!("expected a simple model"),
        }
    }
}
