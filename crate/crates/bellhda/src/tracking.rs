//! Fixed-step integration of the delayed tracking equation
//!
//! ```text
//! dα(t)/dt = −(Γ/τ)·[α(t−τ) − a(t)]
//! ```
//!
//! for the hidden polarization angle α(t). Explicit Euler on a uniform grid
//! of `step_per_tau` points per delay τ; the delayed value is read exactly
//! on-grid (`step_per_tau` samples back), so no interpolation happens inside
//! the integrator. The forcing a(t) is evaluated right-continuously at each
//! grid point, which snaps setting jumps to the grid.
//!
//! The error term α(t−τ) − a(t) is wrapped into [−π/4, π/4) by default
//! (the mixture state is π/2-periodic in α); `ErrorWrap::None` keeps the raw
//! difference, which reproduces the unbounded runaway of the linear equation
//! above its Γ = π/2 stability threshold.

use crate::angles::wrap_diff;
use crate::error::{Error, Result};
use crate::signal::SettingSignal;

/// How the tracking error α(t−τ) − a(t) is reduced before use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorWrap {
    /// Wrap into [−π/4, π/4) with period π/2 (default).
    HalfPi,
    /// Raw difference, no wrap.
    None,
}

/// Parameters of the tracking dynamics.
#[derive(Debug, Clone, Copy)]
pub struct TrackingParams {
    /// Dimensionless tracking strength Γ.
    pub gamma: f64,
    /// Delay time τ; also the simulation time unit.
    pub tau: f64,
    pub error_wrap: ErrorWrap,
    /// Grid points per τ; the step is h = τ / step_per_tau.
    pub step_per_tau: usize,
}

impl Default for TrackingParams {
    fn default() -> Self {
        TrackingParams { gamma: 1.0, tau: 1.0, error_wrap: ErrorWrap::HalfPi, step_per_tau: 64 }
    }
}

impl TrackingParams {
    fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0) {
            return Err(Error::InvalidArgument(format!("gamma {} < 0", self.gamma)));
        }
        if !(self.tau > 0.0) {
            return Err(Error::InvalidArgument(format!("tau {} must be > 0", self.tau)));
        }
        if self.step_per_tau < 8 {
            return Err(Error::InvalidArgument(format!(
                "step_per_tau {} < 8",
                self.step_per_tau
            )));
        }
        Ok(())
    }
}

/// α(t) sampled on the uniform integration grid, history segment included.
#[derive(Debug, Clone)]
pub struct AlphaTrajectory {
    /// Time of `samples[0]` (= t_start − τ).
    t0: f64,
    /// Grid step, τ / step_per_tau exactly.
    h: f64,
    samples: Vec<f64>,
}

impl AlphaTrajectory {
    pub fn t_start(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.h * (self.samples.len() - 1) as f64
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// α at an exact grid index.
    pub fn sample(&self, idx: usize) -> f64 {
        self.samples[idx]
    }

    /// Nearest grid index for a time value.
    pub fn grid_index(&self, t: f64) -> Result<usize> {
        let idx = ((t - self.t0) / self.h).round();
        if idx < 0.0 || idx as usize >= self.samples.len() {
            return Err(Error::OutOfDomain { t, start: self.t0, end: self.t_end() });
        }
        Ok(idx as usize)
    }

    /// Linear interpolation between grid samples.
    pub fn alpha_at(&self, t: f64) -> Result<f64> {
        let x = (t - self.t0) / self.h;
        if x < -1e-9 || x > (self.samples.len() - 1) as f64 + 1e-9 {
            return Err(Error::OutOfDomain { t, start: self.t0, end: self.t_end() });
        }
        let x = x.clamp(0.0, (self.samples.len() - 1) as f64);
        let i = (x.floor() as usize).min(self.samples.len() - 2);
        let frac = x - i as f64;
        Ok(self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac)
    }
}

/// Integrate the tracking equation over [t_start, t_end] with constant
/// history α ≡ `alpha_history` on [t_start − τ, t_start].
///
/// The forcing signal must cover [t_start − τ, t_end].
pub fn integrate(
    params: &TrackingParams,
    a_signal: &SettingSignal,
    t_start: f64,
    t_end: f64,
    alpha_history: f64,
) -> Result<AlphaTrajectory> {
    params.validate()?;
    if !(t_end > t_start) {
        return Err(Error::InvalidArgument("t_end must exceed t_start".into()));
    }
    if a_signal.domain_end() < t_end {
        return Err(Error::OutOfDomain {
            t: t_end,
            start: t_start,
            end: a_signal.domain_end(),
        });
    }
    let lag = params.step_per_tau;
    let h = params.tau / lag as f64;
    let steps = ((t_end - t_start) / h).ceil() as usize;
    let t0 = t_start - params.tau;

    let mut samples = Vec::with_capacity(lag + steps + 1);
    samples.extend(std::iter::repeat(alpha_history).take(lag + 1));

    let coeff = params.gamma / params.tau;
    for n in lag..lag + steps {
        let t_n = t0 + n as f64 * h;
        let delayed = samples[n - lag];
        let a = a_signal.value_at(t_n)?;
        let err = match params.error_wrap {
            ErrorWrap::HalfPi => wrap_diff(delayed - a)?,
            ErrorWrap::None => delayed - a,
        };
        let next = samples[n] - coeff * err * h;
        if !next.is_finite() {
            return Err(Error::NumericFailure { t: t_n + h });
        }
        samples.push(next);
    }
    Ok(AlphaTrajectory { t0, h, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    fn constant_run(gamma: f64, wrap: ErrorWrap, history: f64, t_end: f64) -> AlphaTrajectory {
        let params = TrackingParams { gamma, error_wrap: wrap, ..Default::default() };
        let sig = SettingSignal::constant(0.0, t_end);
        integrate(&params, &sig, 0.0, t_end, history).unwrap()
    }

    /// Times of local extrema of |α|, skipping the flat history segment.
    fn extrema(traj: &AlphaTrajectory) -> Vec<(f64, f64)> {
        let s = traj.samples();
        let mut out = Vec::new();
        for i in 1..s.len() - 1 {
            let (d0, d1) = (s[i] - s[i - 1], s[i + 1] - s[i]);
            if d0 * d1 < 0.0 {
                out.push((traj.t_start() + i as f64 * traj.step(), s[i]));
            }
        }
        out
    }

    #[test]
    fn constant_forcing_is_exact_fixed_point() {
        let params = TrackingParams::default();
        let sig = SettingSignal::constant(FRAC_PI_8, 50.0);
        let traj = integrate(&params, &sig, 0.0, 50.0, FRAC_PI_8).unwrap();
        // the update adds exactly zero, so every sample is bit-identical
        assert!(traj.samples().iter().all(|&a| a == FRAC_PI_8));
    }

    #[test]
    fn gamma_one_damped_oscillation_period_4tau() {
        let traj = constant_run(1.0, ErrorWrap::HalfPi, FRAC_PI_8, 40.0);
        let ext = extrema(&traj);
        assert!(ext.len() >= 4, "expected several oscillation extrema");
        // peak-to-peak spacing ≈ 4τ within ±10% (one full period spans two extrema)
        for w in ext.windows(2).take(6) {
            let half_period = w[1].0 - w[0].0;
            assert!(
                (half_period - 2.0).abs() < 0.2 * 2.0,
                "half period {half_period} not within 10% of 2τ"
            );
        }
        // damped: extremum magnitudes decrease
        assert!(ext[2].1.abs() < ext[0].1.abs());
    }

    #[test]
    fn gamma_two_unwrapped_grows() {
        let traj = constant_run(2.0, ErrorWrap::None, 0.01, 60.0);
        let ext = extrema(&traj);
        assert!(ext.len() >= 10);
        let mut growth = 0;
        for w in ext.windows(2) {
            if w[1].1.abs() > w[0].1.abs() {
                growth += 1;
            }
        }
        // successive extrema grow over ≥ 5 periods (10 half-periods)
        assert!(growth >= 10, "only {growth} growing extremum pairs");
    }

    #[test]
    fn small_gamma_slow_decay() {
        let traj = constant_run(0.05, ErrorWrap::HalfPi, FRAC_PI_8, 40.0);
        let end = traj.alpha_at(40.0).unwrap();
        assert!(end.abs() < FRAC_PI_8 / 2.0);
        // monotone envelope: no overshoot through zero at this Γ
        assert!(traj.samples().iter().all(|&a| a >= -1e-12));
    }

    #[test]
    fn hopf_threshold_bracketed() {
        // linear equation: decay at Γ = 1.4, growth at Γ = 1.8 (threshold π/2)
        let envelope = |traj: &AlphaTrajectory, from: f64, to: f64| {
            let i0 = traj.grid_index(from).unwrap();
            let i1 = traj.grid_index(to).unwrap();
            traj.samples()[i0..=i1].iter().fold(0.0f64, |m, &a| m.max(a.abs()))
        };
        let low = constant_run(1.4, ErrorWrap::None, 0.01, 50.0);
        let high = constant_run(1.8, ErrorWrap::None, 0.01, 50.0);
        assert!(envelope(&low, 40.0, 50.0) < envelope(&low, 0.0, 10.0));
        assert!(envelope(&high, 40.0, 50.0) > envelope(&high, 0.0, 10.0));
    }

    #[test]
    fn grid_refinement_converges() {
        // Γ = 1 driven by a persistent square wave so α(100τ) is O(0.1);
        // unwrapped dynamics keep the solution linear and branch-free
        let sig = crate::signal::quasi_periodic(3.0, 0.0, 0.0, FRAC_PI_8 * 2.0, 0, 101.0).unwrap();
        let coarse =
            TrackingParams { step_per_tau: 64, error_wrap: ErrorWrap::None, ..Default::default() };
        let fine =
            TrackingParams { step_per_tau: 128, error_wrap: ErrorWrap::None, ..Default::default() };
        let a = integrate(&coarse, &sig, 0.0, 100.0, 0.0).unwrap().alpha_at(100.0).unwrap();
        let b = integrate(&fine, &sig, 0.0, 100.0, 0.0).unwrap().alpha_at(100.0).unwrap();
        let rel = (a - b).abs() / b.abs();
        assert!(b.abs() > 0.02, "probe point sits on a node: α = {b}");
        assert!(rel < 0.01, "refinement change {rel}");
    }

    #[test]
    fn deterministic_bit_identical() {
        let t1 = constant_run(1.0, ErrorWrap::HalfPi, 0.3, 30.0);
        let t2 = constant_run(1.0, ErrorWrap::HalfPi, 0.3, 30.0);
        assert_eq!(t1.samples(), t2.samples());
    }

    #[test]
    fn interpolation_midpoint() {
        let traj = constant_run(1.0, ErrorWrap::HalfPi, FRAC_PI_8, 10.0);
        let h = traj.step();
        let i = traj.grid_index(5.0).unwrap();
        let t = traj.t_start() + i as f64 * h;
        assert_eq!(traj.alpha_at(t).unwrap(), traj.sample(i));
        let mid = traj.alpha_at(t + 0.5 * h).unwrap();
        let expect = 0.5 * (traj.sample(i) + traj.sample(i + 1));
        assert!((mid - expect).abs() < 1e-14);
    }

    #[test]
    fn short_signal_rejected() {
        let params = TrackingParams::default();
        let sig = SettingSignal::constant(0.0, 5.0);
        assert!(integrate(&params, &sig, 0.0, 10.0, 0.0).is_err());
    }
}
