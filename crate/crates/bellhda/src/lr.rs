//! Brute-force local-realism oracle for the two-setting CHSH scenario.
//!
//! A deterministic strategy assigns a fixed ±1 outcome to each station
//! setting; a hidden-variable model is a convex mixture of the 16 such
//! strategies. Exhaustive enumeration shows the maximum of the CHSH
//! statistic over strategies is exactly 2, and every mixture stays ≤ 2.
//!
//! The time-sliced evaluator demonstrates the gap the time-ordered
//! inequality closes: when the strategy in force correlates with a block
//! measurement schedule, the naive factual-only CHSH value can reach 4,
//! while the counterfactual-completed bound value never exceeds 8.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ledger::{s8, s_chsh};

/// Fixed ±1 responses per station setting index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub a_map: [i8; 2],
    pub b_map: [i8; 2],
}

impl DeterministicStrategy {
    /// Product observable for setting pair (i, j).
    pub fn product(&self, i: usize, j: usize) -> f64 {
        f64::from(self.a_map[i] * self.b_map[j])
    }

    /// The four pair expectations in enumeration order.
    pub fn expectations(&self) -> [f64; 4] {
        [self.product(0, 0), self.product(0, 1), self.product(1, 0), self.product(1, 1)]
    }
}

/// All 16 deterministic strategies, in a fixed order.
pub fn all_strategies() -> Vec<DeterministicStrategy> {
    let signs = [1i8, -1];
    let mut out = Vec::with_capacity(16);
    for a0 in signs {
        for a1 in signs {
            for b0 in signs {
                for b1 in signs {
                    out.push(DeterministicStrategy { a_map: [a0, a1], b_map: [b0, b1] });
                }
            }
        }
    }
    out
}

/// CHSH value of a single deterministic strategy.
pub fn strategy_chsh(s: &DeterministicStrategy) -> f64 {
    s_chsh(&s.expectations())
}

/// A convex mixture of deterministic strategies.
#[derive(Debug, Clone)]
pub struct LambdaModel {
    pub strategies: Vec<DeterministicStrategy>,
    pub weights: Vec<f64>,
}

impl LambdaModel {
    pub fn validate(&self) -> Result<()> {
        if self.strategies.len() != self.weights.len() || self.strategies.is_empty() {
            return Err(Error::InvalidArgument("model needs matching strategy/weight lists".into()));
        }
        if self.weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(Error::InvalidArgument("weights must be non-negative".into()));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("weights sum to {total}, not 1")));
        }
        Ok(())
    }

    /// Weight-averaged pair expectations.
    pub fn expectations(&self) -> [f64; 4] {
        let mut e = [0.0; 4];
        for (s, &w) in self.strategies.iter().zip(&self.weights) {
            for (acc, v) in e.iter_mut().zip(s.expectations()) {
                *acc += w * v;
            }
        }
        e
    }

    /// Uniform mixture of all 16 strategies.
    pub fn uniform() -> Self {
        let strategies = all_strategies();
        let n = strategies.len();
        LambdaModel { strategies, weights: vec![1.0 / n as f64; n] }
    }

    /// Seeded random mixture over all 16 strategies; weights drawn flat on
    /// the simplex via sorted uniform spacings.
    pub fn random(seed: u64) -> Self {
        let strategies = all_strategies();
        let n = strategies.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cuts: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>()).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.push(1.0);
        let mut weights = Vec::with_capacity(n);
        let mut prev = 0.0;
        for c in cuts {
            weights.push(c - prev);
            prev = c;
        }
        LambdaModel { strategies, weights }
    }
}

/// CHSH value of a convex mixture; ≤ 2 for every valid model.
pub fn model_chsh(m: &LambdaModel) -> Result<f64> {
    m.validate()?;
    Ok(s_chsh(&m.expectations()))
}

/// A piecewise-constant choice of strategy index over time.
#[derive(Debug, Clone)]
pub struct StrategySchedule {
    /// Ascending segment start times; the first must be ≤ 0.
    pub breakpoints: Vec<f64>,
    /// Strategy index in force from each breakpoint on.
    pub indices: Vec<usize>,
}

impl StrategySchedule {
    pub fn constant(index: usize) -> Self {
        StrategySchedule { breakpoints: vec![0.0], indices: vec![index] }
    }

    fn index_at(&self, t: f64) -> usize {
        let k = self.breakpoints.partition_point(|&bp| bp <= t);
        self.indices[k.saturating_sub(1)]
    }
}

/// Evaluate a λ(t) schedule against the four-quarter block measurement
/// schedule on [0, total]: quarter p measures pair p.
///
/// Returns `(s_per_eq1, s8)`: the factual-only CHSH value (which may exceed
/// 2 when λ(t) correlates with the schedule) and the counterfactual-
/// completed bound value (which never exceeds 8).
pub fn time_sliced_model_chsh(
    m: &LambdaModel,
    total: f64,
    lambda: &StrategySchedule,
) -> Result<(f64, f64)> {
    m.validate()?;
    if lambda.breakpoints.len() != lambda.indices.len() || lambda.breakpoints.is_empty() {
        return Err(Error::InvalidArgument("empty strategy schedule".into()));
    }
    if lambda.indices.iter().any(|&i| i >= m.strategies.len()) {
        return Err(Error::InvalidArgument("strategy index out of range".into()));
    }
    if !(total > 0.0) {
        return Err(Error::InvalidArgument("schedule length must be > 0".into()));
    }
    let quarter = total / 4.0;
    // merge quarter boundaries with λ breakpoints into one segment list
    let mut cuts: Vec<f64> = (0..=4).map(|k| k as f64 * quarter).collect();
    cuts.extend(lambda.breakpoints.iter().copied().filter(|&t| t > 0.0 && t < total));
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let mut factual_sum = [0.0; 4];
    let mut cf_sum = [0.0; 4];
    for w in cuts.windows(2) {
        let (start, end) = (w[0], w[1]);
        let dwell = end - start;
        let s = &m.strategies[lambda.index_at(start)];
        let active = ((start / quarter) as usize).min(3);
        for p in 0..4 {
            let ab = s.product(p >> 1, p & 1);
            if p == active {
                factual_sum[p] += dwell * ab;
            } else {
                cf_sum[p] += dwell * ab;
            }
        }
    }
    let e: [f64; 4] = std::array::from_fn(|p| factual_sum[p] / quarter);
    // triple-interval counterfactual sum, normalized by the same ΔT = T/4
    let e_cf_triple: [f64; 4] = std::array::from_fn(|p| cf_sum[p] / quarter);
    Ok((s_chsh(&e), s8(&e, &e_cf_triple)))
}

/// An adversarial λ(t): per quarter, a strategy whose product on the active
/// pair matches the sign pattern (+1, −1, +1, +1), driving the factual-only
/// CHSH value to 4.
pub fn adversarial_schedule(m: &LambdaModel, total: f64) -> Option<StrategySchedule> {
    let target = [1.0, -1.0, 1.0, 1.0];
    let quarter = total / 4.0;
    let mut breakpoints = Vec::with_capacity(4);
    let mut indices = Vec::with_capacity(4);
    for p in 0..4 {
        let idx = m
            .strategies
            .iter()
            .position(|s| s.product(p >> 1, p & 1) == target[p])?;
        breakpoints.push(p as f64 * quarter);
        indices.push(idx);
    }
    Some(StrategySchedule { breakpoints, indices })
}

/// The enumeration table printed by the `oracle` CLI subcommand.
pub fn enumeration_table() -> String {
    let mut out = String::from("a(0) a(1) b(0) b(1)  E00 E01 E10 E11      S\n");
    for s in all_strategies() {
        let e = s.expectations();
        out.push_str(&format!(
            "{:>4} {:>4} {:>4} {:>4} {:>4} {:>3} {:>3} {:>3}  {:.3}\n",
            s.a_map[0], s.a_map[1], s.b_map[0], s.b_map[1], e[0], e[1], e[2], e[3],
            strategy_chsh(&s)
        ));
    }
    let max = all_strategies()
        .iter()
        .map(strategy_chsh)
        .fold(f64::NEG_INFINITY, f64::max);
    out.push_str(&format!("max over 16 deterministic strategies: S = {max:.3}\n"));
    out
}
