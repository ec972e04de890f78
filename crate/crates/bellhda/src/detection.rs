//! Coincidence outcome probabilities for the classical mixture of photon
//! pairs polarized parallel and orthogonal to the hidden angle α, and
//! outcome sampling.
//!
//! For analyzer angles (a, b) the joint probability of a double transmission
//! is
//!
//! ```text
//! P++(a, b, α) = ½·{cos²(a−α)·cos²(b−α) + sin²(a−α)·sin²(b−α)}
//! ```
//!
//! with P++ = P−− and P++ + P+− = ½, so the conditional expectation of the
//! product observable is E(a, b, α) = 4·P++ − 1 = cos(2(a−α))·cos(2(b−α)).
//! Detection is ideal: every pair yields a coincidence.

use crate::error::{Error, Result};

/// Joint probabilities for the four coincidence outcomes (++, +−, −+, −−).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeProbs {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

/// One coincidence result; the product `a_result * b_result` is the AB
/// observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub a_result: i8,
    pub b_result: i8,
}

impl Outcome {
    pub fn product(&self) -> f64 {
        f64::from(self.a_result * self.b_result)
    }
}

/// The double-transmission probability P++(a, b, α), in [0, 1/2].
pub fn p_plus_plus(a: f64, b: f64, alpha: f64) -> f64 {
    let ca = (a - alpha).cos();
    let sa = (a - alpha).sin();
    let cb = (b - alpha).cos();
    let sb = (b - alpha).sin();
    0.5 * (ca * ca * cb * cb + sa * sa * sb * sb)
}

/// All four outcome probabilities; pp = mm and pm = mp by the mixture's
/// symmetry.
pub fn outcome_probs(a: f64, b: f64, alpha: f64) -> OutcomeProbs {
    let pp = p_plus_plus(a, b, alpha);
    let pm = 0.5 - pp;
    OutcomeProbs { pp, pm, mp: pm, mm: pp }
}

/// Conditional expectation of the product observable,
/// E(a, b, α) = 4·P++ − 1 = cos(2(a−α))·cos(2(b−α)).
pub fn conditional_e(a: f64, b: f64, alpha: f64) -> f64 {
    4.0 * p_plus_plus(a, b, alpha) - 1.0
}

/// Inverse-CDF sampling of one coincidence from a single uniform draw, in
/// the fixed outcome order (++, +−, −+, −−).
pub fn sample_outcome(probs: &OutcomeProbs, rng_draw: f64) -> Result<Outcome> {
    let OutcomeProbs { pp, pm, mp, mm } = *probs;
    let total = pp + pm + mp + mm;
    if !(0.0..2.0).contains(&total) || (total - 1.0).abs() > 1e-9 || [pp, pm, mp, mm].iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidArgument(format!("invalid outcome probabilities {probs:?}")));
    }
    let u = rng_draw;
    let outcome = if u < pp {
        Outcome { a_result: 1, b_result: 1 }
    } else if u < pp + pm {
        Outcome { a_result: 1, b_result: -1 }
    } else if u < pp + pm + mp {
        Outcome { a_result: -1, b_result: 1 }
    } else {
        Outcome { a_result: -1, b_result: -1 }
    };
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

    const TOL: f64 = 1e-12;

    #[test]
    fn p_plus_plus_examples() {
        assert!((p_plus_plus(0.0, 0.0, 0.0) - 0.5).abs() < TOL);
        assert!((p_plus_plus(0.0, FRAC_PI_4, 0.0) - 0.25).abs() < TOL);
        let expect = 0.5 * FRAC_PI_8.cos().powi(2); // ≈ 0.426777
        assert!((p_plus_plus(0.0, FRAC_PI_8, 0.0) - expect).abs() < TOL);
        assert!((expect - 0.426777).abs() < 1e-6);
    }

    #[test]
    fn outcome_probs_examples() {
        let p = outcome_probs(0.0, 0.0, 0.0);
        assert!((p.pp - 0.5).abs() < TOL && p.pm.abs() < TOL);
        let p = outcome_probs(0.0, FRAC_PI_4, 0.0);
        for v in [p.pp, p.pm, p.mp, p.mm] {
            assert!((v - 0.25).abs() < TOL);
        }
    }

    #[test]
    fn conditional_e_closed_forms() {
        // alpha = a reduces to cos(2(a−b))
        assert!((conditional_e(0.3, 0.7, 0.3) - (2.0f64 * (0.3 - 0.7)).cos()).abs() < TOL);
        assert!((conditional_e(0.0, FRAC_PI_8, FRAC_PI_8) - FRAC_PI_4.cos()).abs() < TOL);
        // the "other two terms are zero" case
        assert!(conditional_e(0.0, 3.0 * FRAC_PI_8, FRAC_PI_4).abs() < TOL);
    }

    #[test]
    fn sample_outcome_degenerate_and_quartile() {
        let sure = OutcomeProbs { pp: 1.0, pm: 0.0, mp: 0.0, mm: 0.0 };
        for u in [0.0, 0.3, 0.999] {
            assert_eq!(sample_outcome(&sure, u).unwrap(), Outcome { a_result: 1, b_result: 1 });
        }
        let flat = OutcomeProbs { pp: 0.25, pm: 0.25, mp: 0.25, mm: 0.25 };
        assert_eq!(
            sample_outcome(&flat, 0.6).unwrap(),
            Outcome { a_result: -1, b_result: 1 }
        );
    }

    #[test]
    fn sampled_mean_matches_conditional_e() {
        let probs = outcome_probs(0.0, FRAC_PI_8, 0.0);
        let expect = conditional_e(0.0, FRAC_PI_8, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 1_000_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += sample_outcome(&probs, rng.gen::<f64>()).unwrap().product();
        }
        let mean = sum / n as f64;
        let sigma = ((1.0 - expect * expect) / n as f64).sqrt();
        assert!((mean - expect).abs() < 3.0 * sigma + 1e-9, "mean {mean} vs {expect}");
    }

    #[test]
    fn uniform_alpha_average_halves_correlation() {
        // quadrature over one π/2 period: mean of E → ½cos(2(a−b))
        let (a, b) = (0.1, 0.5);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|k| conditional_e(a, b, (k as f64 + 0.5) / n as f64 * PI / 2.0))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5 * (2.0 * (a - b)).cos()).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn probs_well_formed(a in -4.0f64..4.0, b in -4.0f64..4.0, alpha in -4.0f64..4.0) {
            let p = outcome_probs(a, b, alpha);
            for v in [p.pp, p.pm, p.mp, p.mm] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            prop_assert!((p.pp + p.pm + p.mp + p.mm - 1.0).abs() < TOL);
            prop_assert!((p.pp - p.mm).abs() < TOL);
            prop_assert!((p.pm - p.mp).abs() < TOL);
            prop_assert!((p.pp + p.pm - 0.5).abs() < TOL);
        }

        #[test]
        fn e_is_product_of_cosines(a in -4.0f64..4.0, b in -4.0f64..4.0, alpha in -4.0f64..4.0) {
            let direct = conditional_e(a, b, alpha);
            let closed = (2.0 * (a - alpha)).cos() * (2.0 * (b - alpha)).cos();
            prop_assert!((direct - closed).abs() < TOL);
        }

        #[test]
        fn shift_and_period_invariance(a in -2.0f64..2.0, b in -2.0f64..2.0,
                                       alpha in -2.0f64..2.0, s in -2.0f64..2.0) {
            let base = p_plus_plus(a, b, alpha);
            prop_assert!((p_plus_plus(a + s, b + s, alpha + s) - base).abs() < TOL);
            prop_assert!((p_plus_plus(a, b, alpha + PI / 2.0) - base).abs() < 1e-11);
        }
    }
}
