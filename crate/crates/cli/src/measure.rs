//! The numerical experiments behind `verify` and the acceptance suite. Each
//! function returns a raw measurement; thresholds live with the callers.

use std::f64::consts::TAU;

use pseudonull::numerics::{
    burgers_gauge_check, cylinder_check, default_frame, evolve_filament, filament_velocity_residual,
    gram_drift, heat_gauge_check, hopf_cole_consistency, inverse_hopf_cole, reconstruct_curve,
    solve_viscous_burgers, AmbientMetric, CylinderReport, FrameState, MolOptions, NumericsError,
    SampledField,
};

fn periodic(n: usize, f: impl Fn(f64) -> f64) -> Result<SampledField, NumericsError> {
    SampledField::periodic_from_fn(n, TAU, f)
}

pub const HOPF_COLE_T_END: f64 = 0.5;

/// `max |hopf_cole(heat(k₀)) − burgers(hopf_cole(k₀))|` at `T = 0.5` for
/// `k₀ = 2 + cos s`, `G = 0`.
pub fn hopf_cole_error(n: usize, dt: f64) -> Result<f64, NumericsError> {
    hopf_cole_consistency(&periodic(n, |s| 2.0 + s.cos())?, 0.0, &MolOptions::new(HOPF_COLE_T_END, dt))
}

/// `τ = sin s` on `[0, 10]`, sampled every 0.08 so that every step used
/// below divides the sample spacing.
pub fn reconstruction_torsion() -> SampledField {
    SampledField::interval_from_fn(0.0, 10.0, 126, f64::sin).expect("valid grid")
}

pub fn reconstruction(h: f64) -> Result<(SampledField, Vec<FrameState>), NumericsError> {
    let tau = reconstruction_torsion();
    let m = AmbientMetric::new(0.0);
    let curve = reconstruct_curve(&tau, &m, &default_frame(&m), h)?;
    Ok((tau, curve))
}

/// Max Gram residual of the reconstructed frame at `G = 0`.
pub fn reconstruction_drift(h: f64) -> Result<f64, NumericsError> {
    let (_, curve) = reconstruction(h)?;
    Ok(gram_drift(&curve, &AmbientMetric::new(0.0)))
}

/// Lightlike-cylinder residuals of the reconstruction with `k = inverse_hopf_cole(τ, 1)`.
pub fn cylinder_residuals(h: f64) -> Result<CylinderReport, NumericsError> {
    let (tau, curve) = reconstruction(h)?;
    let k = inverse_hopf_cole(&tau, 1.0)?;
    cylinder_check(&curve, &k, &AmbientMetric::new(0.0))
}

pub const FILAMENT_T_END: f64 = 0.1;
pub const FILAMENT_DT: f64 = 1e-4;

/// `max_s |(γ(s, T) − γ(s, T − Δ))/Δ − N(s, T − Δ)|` for `τ₀ = 0.5 sin s`,
/// `N = 256`, `G = 0`.
pub fn filament_velocity(delta: f64) -> Result<f64, NumericsError> {
    let tau0 = periodic(256, |s| 0.5 * s.sin())?;
    let opts = MolOptions::new(FILAMENT_T_END, FILAMENT_DT).with_times(vec![FILAMENT_T_END - delta, FILAMENT_T_END]);
    let run = evolve_filament(&tau0, 0.0, &opts)?;
    filament_velocity_residual(&run, 1, 2)
}

pub const GAUGE_A: f64 = 1.0;
pub const GAUGE_B: f64 = 4.0;
const GAUGE_T: f64 = 0.5;
const GAUGE_DT: f64 = 1e-4;
const GAUGE_SPACING: f64 = 1e-3;

/// Residual of the gauged Burgers equation built from `u_t = u_xx + u u_x`,
/// `u₀ = sin x` on `n` points, with `a = 1`, `b = 4`.
pub fn burgers_gauge_residual(n: usize) -> Result<f64, NumericsError> {
    let u0 = periodic(n, f64::sin)?;
    let times = vec![GAUGE_T - GAUGE_SPACING, GAUGE_T, GAUGE_T + GAUGE_SPACING];
    let run = solve_viscous_burgers(&u0, &MolOptions::new(GAUGE_T, GAUGE_DT).with_times(times))?;
    Ok(burgers_gauge_check(&run, GAUGE_A, GAUGE_B)?.residual)
}

/// Relative deviation between the `d = 0.7` heat flow scaled back by
/// `e^{−dt}` and the `d = 0` flow.
pub fn heat_gauge_residual() -> Result<f64, NumericsError> {
    let k0 = periodic(128, |s| 2.0 + s.cos())?;
    heat_gauge_check(&k0, 0.0, 0.7, &MolOptions::new(0.2, 2e-4).with_snapshots(4))
}
