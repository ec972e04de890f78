//! Composition of scheduler, tracking dynamics, detection and ledger into
//! full experiment runs, Γ sweeps, and trace export.
//!
//! A run integrates α(t) from −transient to the end of the measurement
//! span, discards the transient, and accumulates the product observable for
//! all four setting pairs at every instant: the pair actually selected by
//! (a(t), b(t)) feeds its factual channel, the other three feed their
//! counterfactual channels. Exact mode integrates the conditional
//! expectation by the trapezoid rule on the integrator grid; sampled mode
//! draws coincidence outcomes event by event.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

use crate::angles::wrap_report;
use crate::config::{RunConfig, Scenario};
use crate::detection::{conditional_e, outcome_probs, sample_outcome};
use crate::error::{Error, Result};
use crate::ledger::{Metrics, Mode, PairLedger};
use crate::signal::{block_schedule, quasi_periodic, telegraph, SettingSignal, TelegraphConfig};
use crate::tracking::{integrate, TrackingParams};

/// Simulation time unit: τ = 1.
const TAU: f64 = 1.0;

/// Distinct RNG streams derived from one run seed.
fn derive_seed(base: u64, stream: u64) -> u64 {
    // splitmix64 step
    let mut z = base.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One trace sample: (t/τ, reported α, a, b).
pub type TraceRow = [f64; 4];

/// Output of a single run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: Metrics,
    /// Per-pair coincidence counts (sampled mode; all zero in exact mode).
    pub counts: [crate::ledger::CoincidenceCounts; 4],
    pub trace: Option<Vec<TraceRow>>,
}

pub const TRACE_CSV_HEADER: &str = "t_over_tau,alpha,a,b";

/// Render trace rows as CSV (header included).
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 48 + 32);
    out.push_str(TRACE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{:.12},{:.12},{:.12},{:.12}\n", r[0], r[1], r[2], r[3]));
    }
    out
}

/// Nearest station setting index for an observed signal value.
fn setting_index(value: f64, s0: f64, s1: f64) -> usize {
    usize::from((value - s1).abs() < (value - s0).abs())
}

fn build_signals(config: &RunConfig) -> Result<(SettingSignal, SettingSignal)> {
    let span = config.transient_tau + config.duration_tau + TAU;
    match config.scenario {
        Scenario::StaticBlocks => {
            let pairs = config.settings.pairs();
            let (a, b) = block_schedule(&pairs, config.duration_tau)?;
            // the integration grid may overshoot the span by a fraction of a
            // step; carry the last quarter's value forward
            Ok((a.extended(config.duration_tau + TAU), b.extended(config.duration_tau + TAU)))
        }
        Scenario::RandomTelegraph => {
            let a = telegraph(&TelegraphConfig {
                rate: config.mu_tau,
                low: config.settings.a0,
                high: config.settings.a1,
                seed: derive_seed(config.seed, 0),
                duration: span,
            })?
            .shifted(-config.transient_tau);
            let b = telegraph(&TelegraphConfig {
                rate: config.mu_tau,
                low: config.settings.b0,
                high: config.settings.b1,
                seed: derive_seed(config.seed, 1),
                duration: span,
            })?
            .shifted(-config.transient_tau);
            Ok((a, b))
        }
        Scenario::QuasiPeriodic => {
            let a = quasi_periodic(
                config.period_tau,
                config.jitter,
                config.settings.a0,
                config.settings.a1,
                derive_seed(config.seed, 0),
                span,
            )?
            .shifted(-config.transient_tau);
            let b = quasi_periodic(
                config.period_tau,
                config.jitter,
                config.settings.b0,
                config.settings.b1,
                derive_seed(config.seed, 1),
                span,
            )?
            .shifted(-config.transient_tau);
            Ok((a, b))
        }
    }
}

/// Execute one run. `trace_every` = Some(d) records every d-th grid point of
/// the measurement span.
pub fn run(config: &RunConfig, trace_every: Option<usize>) -> Result<RunOutput> {
    config.validate()?;
    let (a_sig, b_sig) = build_signals(config)?;

    let params = TrackingParams {
        gamma: config.gamma,
        tau: TAU,
        error_wrap: config.error_wrap,
        step_per_tau: config.step_per_tau,
    };
    // initial history a(t<0) = a0 with α tracking it from the same value
    let traj = integrate(
        &params,
        &a_sig,
        -config.transient_tau,
        config.duration_tau,
        config.settings.a0,
    )?;
    let h = traj.step();
    let i0 = traj.grid_index(0.0)?;
    let i_end = traj.grid_index(config.duration_tau)?;
    let pairs = config.settings.pairs();

    // the pair in force at time t: by schedule quarter for static blocks
    // (robust to degenerate angle sets), by signal value otherwise
    let active_pair = |t: f64, a_val: f64, b_val: f64| -> usize {
        match config.scenario {
            Scenario::StaticBlocks => {
                let quarter = config.duration_tau / 4.0;
                ((t.max(0.0) / quarter) as usize).min(3)
            }
            _ => {
                2 * setting_index(a_val, config.settings.a0, config.settings.a1)
                    + setting_index(b_val, config.settings.b0, config.settings.b1)
            }
        }
    };

    let mut ledger = PairLedger::new();
    match config.mode {
        Mode::Exact => {
            for n in i0..i_end {
                let t_n = traj.t_start() + n as f64 * h;
                let a_val = a_sig.value_at(t_n)?;
                let b_val = b_sig.value_at(t_n)?;
                let active = active_pair(t_n, a_val, b_val);
                let (alpha0, alpha1) = (traj.sample(n), traj.sample(n + 1));
                for (p, pair) in pairs.iter().enumerate() {
                    let ab = 0.5
                        * (conditional_e(pair.a, pair.b, alpha0)
                            + conditional_e(pair.a, pair.b, alpha1));
                    ledger.accumulate(p, p == active, ab, h)?;
                }
            }
        }
        Mode::Sampled => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, 2));
            let times = event_times(config, &mut rng)?;
            for t in times {
                // snap the event to the integrator grid
                let idx = traj.grid_index(t)?;
                let t_snap = traj.t_start() + idx as f64 * h;
                let alpha = traj.sample(idx);
                let a_val = a_sig.value_at(t_snap)?;
                let b_val = b_sig.value_at(t_snap)?;
                let active = active_pair(t_snap, a_val, b_val);
                for (p, pair) in pairs.iter().enumerate() {
                    let probs = outcome_probs(pair.a, pair.b, alpha);
                    let outcome = sample_outcome(&probs, rng.gen::<f64>())?;
                    if p == active {
                        let c = &mut ledger.counts[p];
                        match (outcome.a_result, outcome.b_result) {
                            (1, 1) => c.cpp += 1,
                            (1, -1) => c.cpm += 1,
                            (-1, 1) => c.cmp += 1,
                            _ => c.cmm += 1,
                        }
                    }
                    ledger.accumulate(p, p == active, outcome.product(), 1.0)?;
                }
            }
        }
    }

    let metrics = Metrics::from_ledger(
        &ledger,
        config.mode,
        config.seed,
        config.gamma,
        config.mu_tau,
        config.duration_tau,
    )?;

    let trace = match trace_every {
        Some(every) => {
            let every = every.max(1);
            let mut rows = Vec::with_capacity((i_end - i0) / every + 1);
            for n in (i0..=i_end).step_by(every) {
                let t = traj.t_start() + n as f64 * h;
                rows.push([
                    t / TAU,
                    wrap_report(traj.sample(n))?,
                    a_sig.value_at(t)?,
                    b_sig.value_at(t)?,
                ]);
            }
            Some(rows)
        }
        None => None,
    };

    Ok(RunOutput { metrics, counts: ledger.counts, trace })
}

/// Coincidence event times on (0, duration): uniform spacing 1/rate at
/// interval midpoints by default, Poisson if configured.
fn event_times(config: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let rate = config.rate_per_tau;
    if config.poisson_events {
        let exp = Exp::new(rate).map_err(|e| Error::InvalidArgument(format!("event rate: {e}")))?;
        let mut times = Vec::with_capacity((config.duration_tau * rate) as usize + 16);
        let mut t = 0.0;
        loop {
            t += exp.sample(rng);
            if t >= config.duration_tau {
                break;
            }
            times.push(t);
        }
        Ok(times)
    } else {
        let n = (config.duration_tau * rate).round() as usize;
        Ok((0..n).map(|k| (k as f64 + 0.5) / rate).collect())
    }
}

/// One run per (γ, replicate); replicate k runs with seed `base.seed + k`.
/// Rows come back in input order regardless of worker completion order.
pub fn sweep_gamma(
    base: &RunConfig,
    gammas: &[f64],
    replicates: usize,
    jobs: usize,
) -> Result<Vec<Metrics>> {
    if gammas.is_empty() {
        return Err(Error::InvalidArgument("empty gamma list".into()));
    }
    if replicates == 0 {
        return Err(Error::InvalidArgument("replicates must be ≥ 1".into()));
    }
    let tasks: Vec<RunConfig> = gammas
        .iter()
        .flat_map(|&gamma| {
            (0..replicates).map(move |k| RunConfig {
                gamma,
                seed: base.seed + k as u64,
                ..base.clone()
            })
        })
        .collect();

    let execute = |configs: &[RunConfig]| -> Result<Vec<Metrics>> {
        use rayon::prelude::*;
        configs
            .par_iter()
            .map(|c| run(c, None).map(|out| out.metrics))
            .collect()
    };

    if jobs <= 1 {
        tasks.iter().map(|c| run(c, None).map(|out| out.metrics)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
        pool.install(|| execute(&tasks))
    }
}

/// Render sweep results as CSV (header included).
pub fn metrics_csv(rows: &[Metrics]) -> String {
    let mut out = String::from(Metrics::CSV_HEADER);
    out.push('\n');
    for m in rows {
        out.push_str(&m.csv_row());
        out.push('\n');
    }
    out
}
