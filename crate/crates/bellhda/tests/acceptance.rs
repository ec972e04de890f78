//! Acceptance suite: one pass/fail line per criterion, run with
//! `cargo test --test acceptance -- --nocapture`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bellhda::detection::conditional_e;
use bellhda::ledger::Mode;
use bellhda::lr;
use bellhda::runner::{metrics_csv, run, trace_csv};
use bellhda::tracking::{integrate, ErrorWrap, TrackingParams};
use bellhda::{Metrics, RunConfig, Scenario, SettingSignal};

const SQRT2: f64 = std::f64::consts::SQRT_2;

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn record(&mut self, criterion: usize, ok: bool, detail: String) {
        println!(
            "criterion {criterion:>2}: {} — {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            self.failures.push(format!("criterion {criterion}: {detail}"));
        }
    }
}

fn base_config() -> RunConfig {
    RunConfig {
        scenario: Scenario::RandomTelegraph,
        mode: Mode::Exact,
        seed: 1,
        ..Default::default()
    }
}

fn static_config() -> RunConfig {
    RunConfig { scenario: Scenario::StaticBlocks, gamma: 1.0, ..base_config() }
}

/// The criterion-4 grid: 4 Γ values × 5 seeds, exact mode.
fn grid_runs() -> Vec<Metrics> {
    let mut rows = Vec::new();
    for gamma in [1.0, 0.1, 0.02, 2.0] {
        for seed in 1..=5u64 {
            let config = RunConfig { gamma, seed, ..base_config() };
            rows.push(run(&config, None).unwrap().metrics);
        }
    }
    rows
}

fn mean<'a>(rows: impl Iterator<Item = &'a Metrics>, f: impl Fn(&Metrics) -> f64) -> f64 {
    let collected: Vec<f64> = rows.map(f).collect();
    collected.iter().sum::<f64>() / collected.len() as f64
}

#[test]
fn acceptance() {
    let mut report = Report { failures: Vec::new() };

    // 1. static case: S = 2√2 ± 0.01 and Δ = 2 ± 0.01, runtime < 5 s
    let started = Instant::now();
    let static_metrics = run(&static_config(), None).unwrap().metrics;
    let elapsed = started.elapsed().as_secs_f64();
    let ok = (static_metrics.s_chsh - 2.0 * SQRT2).abs() < 0.01
        && (static_metrics.delta - 2.0).abs() < 0.01
        && elapsed < 5.0;
    report.record(
        1,
        ok,
        format!(
            "static: S = {:.4} (2√2 ± 0.01), Δ = {:.4} (2 ± 0.01), {elapsed:.2} s",
            static_metrics.s_chsh, static_metrics.delta
        ),
    );

    // 2. QM angle prediction with α clamped to a
    let pairs = RunConfig::default().settings.pairs();
    let e: Vec<f64> = pairs.iter().map(|p| conditional_e(p.a, p.b, p.a)).collect();
    let expect = [SQRT2 / 2.0, -SQRT2 / 2.0, SQRT2 / 2.0, SQRT2 / 2.0];
    let s = (e[0] - e[1]).abs() + (e[2] + e[3]).abs();
    let ok = e.iter().zip(expect).all(|(v, x)| (v - x).abs() < 1e-9)
        && (s - 2.0 * SQRT2).abs() < 1e-9;
    report.record(2, ok, format!("clamped α: E = {e:?}, S = {s:.9}"));

    // 3. uncorrelated limit: uniform-α quadrature average → ½cos(2(a−b))
    let n = 10_000;
    let mut quad_e = [0.0f64; 4];
    for (p, pair) in pairs.iter().enumerate() {
        quad_e[p] = (0..n)
            .map(|k| conditional_e(pair.a, pair.b, (k as f64 + 0.5) / n as f64 * FRAC_PI_2))
            .sum::<f64>()
            / n as f64;
    }
    let mut ok = true;
    for (p, pair) in pairs.iter().enumerate() {
        ok &= (quad_e[p] - 0.5 * (2.0 * (pair.a - pair.b)).cos()).abs() < 1e-6;
    }
    let s = (quad_e[0] - quad_e[1]).abs() + (quad_e[2] + quad_e[3]).abs();
    ok &= (s - SQRT2).abs() < 1e-6;
    report.record(3, ok, format!("uniform-α average: S = {s:.9} (√2 ± 1e-6)"));

    // 4. Fig.4 phenomenology at desk scale, 5-seed means, runtime < 2 min
    let started = Instant::now();
    let grid = grid_runs();
    let grid_elapsed = started.elapsed().as_secs_f64();
    let by_gamma = |g: f64| grid.iter().filter(move |m| m.gamma == g);
    let (s1, d1) = (mean(by_gamma(1.0), |m| m.s_chsh), mean(by_gamma(1.0), |m| m.delta));
    let (s01, d01) = (mean(by_gamma(0.1), |m| m.s_chsh), mean(by_gamma(0.1), |m| m.delta));
    let (s002, d002) = (mean(by_gamma(0.02), |m| m.s_chsh), mean(by_gamma(0.02), |m| m.delta));
    let (s2, d2) = (mean(by_gamma(2.0), |m| m.s_chsh), mean(by_gamma(2.0), |m| m.delta));
    let ok = s1 > 2.0
        && (0.6..=1.6).contains(&d1)
        && s01 < 2.0
        && d01 > 0.5
        && (s002 - SQRT2).abs() < 0.1
        && d002 < 0.2
        && (s2 - SQRT2).abs() < 0.15
        && d2 < 0.2
        && grid_elapsed < 120.0;
    report.record(
        4,
        ok,
        format!(
            "Γ=1: S={s1:.3},Δ={d1:.3}; Γ=0.1: S={s01:.3},Δ={d01:.3}; Γ=0.02: S={s002:.3},Δ={d002:.3}; Γ=2: S={s2:.3},Δ={d2:.3}; {grid_elapsed:.1} s"
        ),
    );

    // 5. necessary-not-sufficient across the criterion-4 runs
    let no_violation_without_hda_break =
        grid.iter().all(|m| !(m.s_chsh > 2.0 && m.delta <= 0.5));
    let witness = grid.iter().any(|m| m.delta > 0.5 && m.s_chsh < 2.0);
    let ok = no_violation_without_hda_break && witness;
    report.record(
        5,
        ok,
        format!(
            "no (S>2, Δ≤0.5) run: {no_violation_without_hda_break}; (Δ>0.5, S<2) witness: {witness}"
        ),
    );

    // 6. S8 ≤ 8 across all criteria runs plus 10³ randomized fuzz configs
    let mut s8_max = static_metrics.s8;
    for m in &grid {
        s8_max = s8_max.max(m.s8);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xFE11);
    let mut fuzz_ok = 0u32;
    let mut attempts = 0u32;
    while fuzz_ok < 1_000 && attempts < 1_300 {
        attempts += 1;
        let scenario = match rng.gen_range(0..3) {
            0 => Scenario::StaticBlocks,
            1 => Scenario::RandomTelegraph,
            _ => Scenario::QuasiPeriodic,
        };
        let config = RunConfig {
            scenario,
            gamma: rng.gen_range(0.0..3.0),
            mu_tau: rng.gen_range(0.05..2.0),
            duration_tau: rng.gen_range(150.0..400.0),
            transient_tau: 20.0,
            rate_per_tau: 50.0,
            seed: rng.gen(),
            mode: if rng.gen_bool(0.25) { Mode::Sampled } else { Mode::Exact },
            error_wrap: if rng.gen_bool(0.5) { ErrorWrap::HalfPi } else { ErrorWrap::None },
            period_tau: rng.gen_range(2.0..12.0),
            jitter: rng.gen_range(0.0..0.5),
            ..base_config()
        };
        match run(&config, None) {
            Ok(out) => {
                fuzz_ok += 1;
                s8_max = s8_max.max(out.metrics.s8);
            }
            // a pair can legitimately accumulate no dwell in a short run
            Err(bellhda::Error::InsufficientDwell { .. }) => continue,
            Err(e) => panic!("fuzz config failed: {e}"),
        }
    }
    let ok = s8_max <= 8.0 && fuzz_ok >= 1_000;
    report.record(6, ok, format!("max S8 = {s8_max:.4} over {fuzz_ok} fuzz + criteria runs"));

    // 7. DDE validation, runtime < 1 s
    let started = Instant::now();
    let constant_run = |gamma: f64, wrap: ErrorWrap| {
        let params = TrackingParams { gamma, error_wrap: wrap, ..Default::default() };
        let sig = SettingSignal::constant(0.0, 60.0);
        integrate(&params, &sig, 0.0, 60.0, 0.1).unwrap()
    };
    let traj = constant_run(1.0, ErrorWrap::HalfPi);
    let samples = traj.samples();
    let mut extrema_times = Vec::new();
    for i in 1..samples.len() - 1 {
        if (samples[i] - samples[i - 1]) * (samples[i + 1] - samples[i]) < 0.0 {
            extrema_times.push(traj.t_start() + i as f64 * traj.step());
        }
    }
    // Least-damped root of λ = −e^{−λ} (Γ = 1, τ = 1): eliminating the real
    // part gives ω = e^{ω·cot ω}·sin ω, ω ≈ 1.337, period 2π/ω ≈ 4.70τ.
    let g = |w: f64| w - (w * w.cos() / w.sin()).exp() * w.sin();
    let (mut lo, mut hi) = (1.0f64, 1.6f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if g(lo) * g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let analytic_period = 2.0 * PI / (0.5 * (lo + hi));
    let mut period_ok = extrema_times.len() >= 3;
    let mut measured_period = 0.0;
    if period_ok {
        measured_period = extrema_times[2] - extrema_times[0]; // one full period
        period_ok = (measured_period - analytic_period).abs() < 0.1 * analytic_period;
    }
    let envelope = |traj: &bellhda::AlphaTrajectory, from: f64, to: f64| {
        let i0 = traj.grid_index(from).unwrap();
        let i1 = traj.grid_index(to).unwrap();
        traj.samples()[i0..=i1].iter().fold(0.0f64, |m, &a| m.max(a.abs()))
    };
    let decaying = constant_run(1.4, ErrorWrap::None);
    let growing = constant_run(1.8, ErrorWrap::None);
    let bracket_ok = envelope(&decaying, 50.0, 60.0) < envelope(&decaying, 0.0, 10.0)
        && envelope(&growing, 50.0, 60.0) > envelope(&growing, 0.0, 10.0);
    let elapsed = started.elapsed().as_secs_f64();
    let ok = period_ok && bracket_ok && elapsed < 1.0;
    report.record(
        7,
        ok,
        format!(
            "period {measured_period:.2}τ (analytic {analytic_period:.2}τ ± 10%), Γ=1.4 decays / Γ=1.8 grows: {bracket_ok}, {elapsed:.2} s"
        ),
    );

    // 8. LR oracle
    let strategies = lr::all_strategies();
    let max_s = strategies.iter().map(lr::strategy_chsh).fold(0.0f64, f64::max);
    let mixtures_ok = (0..10_000u64)
        .all(|seed| lr::model_chsh(&lr::LambdaModel::random(seed)).unwrap() <= 2.0 + 1e-12);
    let model = lr::LambdaModel::uniform();
    let sched = lr::adversarial_schedule(&model, 4.0).unwrap();
    let (witness_s, witness_s8) = lr::time_sliced_model_chsh(&model, 4.0, &sched).unwrap();
    let ok = max_s == 2.0
        && mixtures_ok
        && (witness_s - 4.0).abs() < 1e-12
        && witness_s8 <= 8.0 + 1e-12;
    report.record(
        8,
        ok,
        format!(
            "max strategy S = {max_s}, 10⁴ mixtures ≤ 2: {mixtures_ok}, witness S = {witness_s:.3} with S8 = {witness_s8:.3}"
        ),
    );

    // 9. estimator consistency on the criterion-4 grid
    let mut worst = 0.0f64;
    let mut ok = true;
    for gamma in [1.0, 0.1, 0.02, 2.0] {
        for seed in 1..=5u64 {
            let config = RunConfig { gamma, seed, ..base_config() };
            let exact = run(&config, None).unwrap().metrics;
            let sampled_out =
                run(&RunConfig { mode: Mode::Sampled, ..config }, None).unwrap();
            for p in 0..4 {
                let n = sampled_out.counts[p].total() as f64;
                let tol = 4.0 / n.sqrt();
                let diff = (exact.e[p] - sampled_out.metrics.e[p]).abs();
                worst = worst.max(diff / tol);
                ok &= diff < tol;
            }
        }
    }
    report.record(9, ok, format!("sampled vs exact per-pair E: worst |ΔE|/(4/√N) = {worst:.2}"));

    // 10. determinism: byte-identical CSV on repeated runs
    let rerun_static = run(&static_config(), None).unwrap().metrics;
    let telegraph_config = RunConfig { gamma: 1.0, seed: 3, ..base_config() };
    let t1 = run(&telegraph_config, Some(64)).unwrap();
    let t2 = run(&telegraph_config, Some(64)).unwrap();
    let ok = metrics_csv(&[static_metrics.clone()]) == metrics_csv(&[rerun_static])
        && metrics_csv(&[t1.metrics.clone()]) == metrics_csv(&[t2.metrics.clone()])
        && trace_csv(t1.trace.as_ref().unwrap()) == trace_csv(t2.trace.as_ref().unwrap());
    report.record(10, ok, "metrics and trace CSV byte-identical across repeats".into());

    assert!(
        report.failures.is_empty(),
        "failed criteria:\n{}",
        report.failures.join("\n")
    );
}
