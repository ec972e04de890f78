//! Simulator of an idealized two-station CHSH experiment whose photon
//! source carries a hidden polarization angle α(t) obeying a delayed
//! tracking equation.
//!
//! The crate computes factual and counterfactual expectation values per
//! setting pair, the CHSH statistic S, the time-ordered bound value S8
//! (≤ 8), and the discrepancy metric Δ that quantifies how far the factual
//! and counterfactual time averages drift apart. A brute-force local-realism
//! oracle cross-checks the classical S ≤ 2 bound by exhaustive strategy
//! enumeration.
//!
//! Start from the `examples/` directory: each example exercises one major
//! capability (static case, Γ sweep, α(t) traces, step responses, the LR
//! enumeration, exact-vs-sampled estimation). The `bellhda` binary exposes
//! the same machinery as `run`, `sweep`, `static` and `oracle` subcommands.

pub mod angles;
pub mod cli;
pub mod config;
pub mod detection;
pub mod error;
pub mod ledger;
pub mod lr;
pub mod runner;
pub mod signal;
pub mod tracking;

pub use angles::{wrap_diff, wrap_report, ChshSettings, SettingPair};
pub use config::{RunConfig, Scenario};
pub use error::{Error, Result};
pub use ledger::{Metrics, Mode, PairLedger};
pub use runner::{run, sweep_gamma, RunOutput};
pub use signal::SettingSignal;
pub use tracking::{integrate, AlphaTrajectory, ErrorWrap, TrackingParams};
