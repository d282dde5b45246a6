//! Quantifying the rarity of same-score streaks in season-structured sports.
//!
//! A same-score streak of order n is a run of n consecutive games in one
//! team's season with identical (scored, allowed) final scores; the opponent
//! may vary. This crate counts such streaks in historical game logs, fits
//! discretized Weibull models to run distributions, generates synthetic
//! schedules, and runs Monte Carlo season ensembles so simulated streak
//! frequencies can be compared with history.
//!
//! Pipeline: [`ingest`] parses game logs into [`core::GameRecord`]s and
//! per-team seasons, [`streaks`] counts streaks and descriptive statistics,
//! [`weibull`] fits the score distribution, [`models`] turns fits into
//! samplers, [`schedule`] builds synthetic seasons, and [`sim`] runs the
//! replicate ensembles. The `streakline` binary exposes all of it as a CLI.

pub mod cli;
pub mod core;
pub mod ingest;
pub mod models;
pub mod optim;
pub mod schedule;
pub mod sim;
pub mod streaks;
pub mod weibull;

pub use crate::core::{team_perspective, GameRecord, TeamGameView, TeamId, TeamSeason, YearConfig};
