//! Run configuration and the flat `key = value` config file format.
//!
//! Lines are `key = value`, `#` starts a comment, blank lines are ignored,
//! unknown keys are errors. The `BELLHDA_SEED` environment variable
//! overrides the configured seed.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::angles::ChshSettings;
use crate::error::{Error, Result};
use crate::ledger::Mode;
use crate::tracking::ErrorWrap;

/// Which measuring-time distribution drives the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    StaticBlocks,
    RandomTelegraph,
    QuasiPeriodic,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scenario::StaticBlocks => "static_blocks",
            Scenario::RandomTelegraph => "random_telegraph",
            Scenario::QuasiPeriodic => "quasi_periodic",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Scenario {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "static_blocks" => Ok(Scenario::StaticBlocks),
            "random_telegraph" => Ok(Scenario::RandomTelegraph),
            "quasi_periodic" => Ok(Scenario::QuasiPeriodic),
            other => Err(Error::Config(format!("unknown scenario '{other}'"))),
        }
    }
}

/// Full description of one run. Times are in units of τ.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub gamma: f64,
    /// Telegraph switching rate μτ (random_telegraph scenario).
    pub mu_tau: f64,
    /// Measurement span after the transient.
    pub duration_tau: f64,
    /// Discarded initial span.
    pub transient_tau: f64,
    /// Coincidence rate per τ (sampled mode).
    pub rate_per_tau: f64,
    pub step_per_tau: usize,
    pub seed: u64,
    pub mode: Mode,
    pub error_wrap: ErrorWrap,
    /// Poisson-distributed coincidence event times instead of uniform spacing.
    pub poisson_events: bool,
    /// Quasi-periodic scenario: alternation period and fractional jitter.
    pub period_tau: f64,
    pub jitter: f64,
    pub settings: ChshSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::RandomTelegraph,
            gamma: 1.0,
            mu_tau: 0.25,
            duration_tau: 2000.0,
            transient_tau: 200.0,
            rate_per_tau: 500.0,
            step_per_tau: 64,
            seed: 1,
            mode: Mode::Exact,
            error_wrap: ErrorWrap::HalfPi,
            poisson_events: false,
            period_tau: 4.0,
            jitter: 0.1,
            settings: ChshSettings::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.duration_tau > 0.0) {
            return Err(Error::Config("duration_tau must be > 0".into()));
        }
        if !(self.transient_tau >= 0.0) {
            return Err(Error::Config("transient_tau must be ≥ 0".into()));
        }
        if !(self.rate_per_tau > 0.0) {
            return Err(Error::Config("rate_per_tau must be > 0".into()));
        }
        if !(self.gamma >= 0.0) {
            return Err(Error::Config("gamma must be ≥ 0".into()));
        }
        if !(self.mu_tau >= 0.0) {
            return Err(Error::Config("mu_tau must be ≥ 0".into()));
        }
        if self.step_per_tau < 8 {
            return Err(Error::Config("step_per_tau must be ≥ 8".into()));
        }
        Ok(())
    }

    /// Parse the flat key = value format. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut config = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| Error::Config(format!("line {}: key '{key}': {e}", lineno + 1));
            match key {
                "scenario" => config.scenario = value.parse()?,
                "gamma" => config.gamma = parse_f64(value).map_err(bad)?,
                "mu_tau" => config.mu_tau = parse_f64(value).map_err(bad)?,
                "duration_tau" => config.duration_tau = parse_f64(value).map_err(bad)?,
                "transient_tau" => config.transient_tau = parse_f64(value).map_err(bad)?,
                "rate_per_tau" => config.rate_per_tau = parse_f64(value).map_err(bad)?,
                "step_per_tau" => {
                    config.step_per_tau = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "seed" => config.seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                "mode" => {
                    config.mode = match value {
                        "exact" => Mode::Exact,
                        "sampled" => Mode::Sampled,
                        other => return Err(bad(format!("unknown mode '{other}'"))),
                    }
                }
                "error_wrap" => {
                    config.error_wrap = match value {
                        "half_pi" => ErrorWrap::HalfPi,
                        "none" => ErrorWrap::None,
                        other => return Err(bad(format!("unknown error_wrap '{other}'"))),
                    }
                }
                "poisson_events" => {
                    config.poisson_events = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "period_tau" => config.period_tau = parse_f64(value).map_err(bad)?,
                "jitter" => config.jitter = parse_f64(value).map_err(bad)?,
                "a0" => config.settings.a0 = parse_f64(value).map_err(bad)?,
                "a1" => config.settings.a1 = parse_f64(value).map_err(bad)?,
                "b0" => config.settings.b0 = parse_f64(value).map_err(bad)?,
                "b1" => config.settings.b1 = parse_f64(value).map_err(bad)?,
                other => {
                    return Err(Error::Config(format!("line {}: unknown key '{other}'", lineno + 1)))
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    /// Apply the `BELLHDA_SEED` override if set.
    pub fn apply_seed_env(&mut self) -> Result<()> {
        if let Ok(raw) = std::env::var("BELLHDA_SEED") {
            self.seed = raw
                .trim()
                .parse()
                .map_err(|e| Error::Config(format!("BELLHDA_SEED '{raw}': {e}")))?;
        }
        Ok(())
    }

    /// Render back to the config file format (angles with 12+ significant
    /// digits).
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario = {}", self.scenario);
        let _ = writeln!(out, "gamma = {:.12}", self.gamma);
        let _ = writeln!(out, "mu_tau = {:.12}", self.mu_tau);
        let _ = writeln!(out, "duration_tau = {:.12}", self.duration_tau);
        let _ = writeln!(out, "transient_tau = {:.12}", self.transient_tau);
        let _ = writeln!(out, "rate_per_tau = {:.12}", self.rate_per_tau);
        let _ = writeln!(out, "step_per_tau = {}", self.step_per_tau);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "mode = {}", self.mode);
        let _ = writeln!(
            out,
            "error_wrap = {}",
            match self.error_wrap {
                ErrorWrap::HalfPi => "half_pi",
                ErrorWrap::None => "none",
            }
        );
        let _ = writeln!(out, "poisson_events = {}", self.poisson_events);
        let _ = writeln!(out, "period_tau = {:.12}", self.period_tau);
        let _ = writeln!(out, "jitter = {:.12}", self.jitter);
        let _ = writeln!(out, "a0 = {:.12}", self.settings.a0);
        let _ = writeln!(out, "a1 = {:.12}", self.settings.a1);
        let _ = writeln!(out, "b0 = {:.12}", self.settings.b0);
        let _ = writeln!(out, "b1 = {:.12}", self.settings.b1);
        out
    }
}

fn parse_f64(value: &str) -> std::result::Result<f64, String> {
    let v: f64 = value.parse().map_err(|e| format!("{e}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite value {v}"));
    }
    Ok(v)
}
