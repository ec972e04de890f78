//! Angle arithmetic with the polarization-relevant periodicities, and the
//! canonical CHSH setting set.
//!
//! Two distinct wrap periods are in play. The tracking error term is
//! physically π/2-periodic (the mixture state is invariant under a π/2
//! rotation of the hidden angle), so differences are reduced into
//! [−π/4, π/4) by [`wrap_diff`]. Trace output instead reports angles on the
//! conventional [−π/4, π/2) display interval via [`wrap_report`]; that wrap
//! never enters the dynamics.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use crate::error::{Error, Result};

/// Reduce `x` modulo π/2 into [−π/4, π/4).
///
/// This is the wrap applied to the tracking error α(t−τ) − a(t): the largest
/// meaningful distance between the hidden angle and an analyzer setting is
/// π/4.
pub fn wrap_diff(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("wrap_diff of {x}")));
    }
    let period = PI / 2.0;
    let k = ((x + FRAC_PI_4) / period).floor();
    Ok(x - k * period)
}

/// Reduce `x` with period 3π/4 into the reporting interval [−π/4, π/2).
///
/// Used only when writing traces; never in the dynamics.
pub fn wrap_report(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("wrap_report of {x}")));
    }
    let period = 3.0 * PI / 4.0;
    let k = ((x + FRAC_PI_4) / period).floor();
    Ok(x - k * period)
}

/// One analyzer setting pair (station A angle, station B angle), radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettingPair {
    pub a: f64,
    pub b: f64,
}

/// The four CHSH analyzer angles, two per station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl Default for ChshSettings {
    /// The standard maximal-violation set {0, π/8, π/4, 3π/8}.
    fn default() -> Self {
        ChshSettings {
            a0: 0.0,
            a1: FRAC_PI_4,
            b0: FRAC_PI_8,
            b1: 3.0 * FRAC_PI_8,
        }
    }
}

impl ChshSettings {
    /// The four setting pairs in fixed enumeration order:
    /// (a0,b0), (a0,b1), (a1,b0), (a1,b1).
    ///
    /// Pair index p maps to (i, j) = (p >> 1, p & 1) throughout the crate.
    pub fn pairs(&self) -> [SettingPair; 4] {
        [
            SettingPair { a: self.a0, b: self.b0 },
            SettingPair { a: self.a0, b: self.b1 },
            SettingPair { a: self.a1, b: self.b0 },
            SettingPair { a: self.a1, b: self.b1 },
        ]
    }
}
