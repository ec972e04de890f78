//! Analyzer setting signals a(t) and b(t) for the three measuring-time
//! distributions: static blocks, quasi-periodic alternation, and random
//! telegraph switching.
//!
//! All three generators produce the same [`SettingSignal`] type, so the
//! integrator is agnostic to how a schedule was built. Transitions are
//! instantaneous and signals are right-continuous: the value *at* a jump
//! time is the new value.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Uniform};

use crate::angles::SettingPair;
use crate::error::{Error, Result};

/// A piecewise-constant function of time.
///
/// `breakpoints[k]` is the time at which `values[k]` takes effect; the first
/// breakpoint is ≤ 0 and its value also serves as the t < 0 history. Lookup
/// is right-continuous.
#[derive(Debug, Clone, PartialEq)]
pub struct SettingSignal {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    domain_end: f64,
}

impl SettingSignal {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, domain_end: f64) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::InvalidArgument(
                "signal needs equal, non-zero breakpoint and value counts".into(),
            ));
        }
        if breakpoints[0] > 0.0 {
            return Err(Error::InvalidArgument(
                "first breakpoint must be ≤ 0 (defines the t<0 history)".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        if !breakpoints.iter().chain(values.iter()).all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite breakpoint or value".into()));
        }
        Ok(SettingSignal { breakpoints, values, domain_end })
    }

    /// A signal equal to `value` everywhere on (−∞, domain_end].
    pub fn constant(value: f64, domain_end: f64) -> Self {
        SettingSignal { breakpoints: vec![0.0], values: vec![value], domain_end }
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right-continuous value lookup. Times before the first breakpoint
    /// return the first value (the history segment).
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if t > self.domain_end {
            return Err(Error::OutOfDomain { t, start: self.breakpoints[0], end: self.domain_end });
        }
        let idx = self.breakpoints.partition_point(|&bp| bp <= t);
        Ok(self.values[idx.saturating_sub(1)])
    }

    /// Same signal with the domain extended to `domain_end` (the final
    /// segment value carries forward).
    pub fn extended(&self, domain_end: f64) -> Self {
        SettingSignal {
            breakpoints: self.breakpoints.clone(),
            values: self.values.clone(),
            domain_end: self.domain_end.max(domain_end),
        }
    }

    /// Same signal with all times shifted by `dt`.
    pub fn shifted(&self, dt: f64) -> Self {
        SettingSignal {
            breakpoints: self.breakpoints.iter().map(|t| t + dt).collect(),
            values: self.values.clone(),
            domain_end: self.domain_end + dt,
        }
    }
}

/// Parameters of the random telegraph generator.
#[derive(Debug, Clone, Copy)]
pub struct TelegraphConfig {
    /// Mean jump rate μ (jumps per unit time).
    pub rate: f64,
    pub low: f64,
    pub high: f64,
    pub seed: u64,
    pub duration: f64,
}

/// Random telegraph signal on [0, duration]: starts at `low` (also the t<0
/// history), then alternates low↔high at Poisson jump times of rate μ
/// (i.i.d. exponential gaps). Deterministic given the seed.
pub fn telegraph(config: &TelegraphConfig) -> Result<SettingSignal> {
    if !(config.rate >= 0.0) {
        return Err(Error::InvalidArgument(format!("telegraph rate {} < 0", config.rate)));
    }
    if !(config.duration > 0.0) {
        return Err(Error::InvalidArgument("telegraph duration must be > 0".into()));
    }
    let mut breakpoints = vec![0.0];
    let mut values = vec![config.low];
    if config.rate > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let exp = Exp::new(config.rate)
            .map_err(|e| Error::InvalidArgument(format!("exponential rate: {e}")))?;
        let mut t = 0.0;
        let mut at_low = true;
        loop {
            t += exp.sample(&mut rng);
            if t >= config.duration {
                break;
            }
            at_low = !at_low;
            breakpoints.push(t);
            values.push(if at_low { config.low } else { config.high });
        }
    }
    SettingSignal::new(breakpoints, values, config.duration)
}

/// Block schedule over [0, total]: quarter k carries the k-th setting pair in
/// enumeration order; t < 0 carries pair 0's angles. Returns the station A
/// and station B signals.
pub fn block_schedule(pairs: &[SettingPair; 4], total: f64) -> Result<(SettingSignal, SettingSignal)> {
    if !(total > 0.0) {
        return Err(Error::InvalidArgument("block schedule length must be > 0".into()));
    }
    let quarter = total / 4.0;
    let breakpoints: Vec<f64> = (0..4).map(|k| k as f64 * quarter).collect();
    let a = SettingSignal::new(breakpoints.clone(), pairs.iter().map(|p| p.a).collect(), total)?;
    let b = SettingSignal::new(breakpoints, pairs.iter().map(|p| p.b).collect(), total)?;
    Ok((a, b))
}

/// Quasi-periodic alternation between `low` and `high`: successive dwell
/// times are period·(1 + u) with u uniform in [−jitter, jitter].
pub fn quasi_periodic(
    period: f64,
    jitter: f64,
    low: f64,
    high: f64,
    seed: u64,
    duration: f64,
) -> Result<SettingSignal> {
    if !(period > 0.0) {
        return Err(Error::InvalidArgument("quasi-periodic period must be > 0".into()));
    }
    if !(0.0..1.0).contains(&jitter) {
        return Err(Error::InvalidArgument(format!("jitter {jitter} outside [0, 1)")));
    }
    if !(duration > 0.0) {
        return Err(Error::InvalidArgument("quasi-periodic duration must be > 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut breakpoints = vec![0.0];
    let mut values = vec![low];
    let mut t = 0.0;
    let mut at_low = true;
    loop {
        let dwell = if jitter == 0.0 {
            period
        } else {
            let u = Uniform::new_inclusive(-jitter, jitter).sample(&mut rng);
            period * (1.0 + u)
        };
        t += dwell;
        if t > duration {
            break;
        }
        at_low = !at_low;
        breakpoints.push(t);
        values.push(if at_low { low } else { high });
    }
    SettingSignal::new(breakpoints, values, duration)
}
