//! Step responses of the delayed tracking equation
//! dα/dt = −(Γ/τ)·[α(t−τ) − a(t)] for a constant target a ≡ 0:
//! slow monotone decay for Γ ≪ 1, damped ~4.7τ oscillation at Γ = 1, and —
//! with the error wrap disabled — exponential growth past the linear
//! stability threshold Γ = π/2.

use std::f64::consts::FRAC_PI_8;

use bellhda::{integrate, ErrorWrap, SettingSignal, TrackingParams};

fn response(gamma: f64, wrap: ErrorWrap) -> bellhda::Result<Vec<(f64, f64)>> {
    let params = TrackingParams { gamma, error_wrap: wrap, ..Default::default() };
    let sig = SettingSignal::constant(0.0, 60.0);
    let traj = integrate(&params, &sig, 0.0, 60.0, FRAC_PI_8)?;
    Ok((0..=60).map(|k| (k as f64, traj.alpha_at(k as f64).unwrap())).collect())
}

fn main() -> bellhda::Result<()> {
    for (gamma, wrap, label) in [
        (0.05, ErrorWrap::HalfPi, "slow decay"),
        (1.0, ErrorWrap::HalfPi, "damped oscillation"),
        (1.4, ErrorWrap::None, "below threshold (π/2): decaying envelope"),
        (1.8, ErrorWrap::None, "above threshold (π/2): growing envelope"),
    ] {
        let pts = response(gamma, wrap)?;
        let early = pts[..10].iter().map(|p| p.1.abs()).fold(0.0f64, f64::max);
        let late = pts[50..].iter().map(|p| p.1.abs()).fold(0.0f64, f64::max);
        println!("Γ = {gamma:<4}  {label}");
        println!("  max|α| on [0,10τ] = {early:.4}, on [50,60τ] = {late:.4}");
        let line: String = pts
            .iter()
            .step_by(2)
            .map(|p| {
                // crude ASCII plot: 40-column span over ±π/4
                let col = ((p.1 / 0.7854 + 1.0) * 20.0).clamp(0.0, 40.0) as usize;
                let mut row = vec![' '; 41];
                row[20] = '|';
                row[col] = '*';
                row.into_iter().collect::<String>() + "\n"
            })
            .collect();
        println!("{line}");
    }
    Ok(())
}
