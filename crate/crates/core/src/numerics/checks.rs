//! Consistency checks tying the numerical flows back to the geometry.

use super::hopf_cole::hopf_cole;
use super::metric::{AmbientMetric, FrameState, Vec4};
use super::pde::{solve_burgers, solve_heat, EvolutionRun, MolOptions};
use super::{NumericsError, SampledField};

fn check_curve_grid(curve: &[FrameState], k: &SampledField) -> Result<(), NumericsError> {
    if curve.len() != k.len() {
        return Err(NumericsError::GridMismatch(format!(
            "curve has {} samples, k has {}",
            curve.len(),
            k.len()
        )));
    }
    if let Some((index, &value)) = k.values().iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(NumericsError::NonPositiveSample { index, value });
    }
    Ok(())
}

/// Residuals of the lightlike-cylinder picture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylinderReport {
    /// `max |ξ(s) − ξ(s₀)|`.
    pub parallelism: f64,
    /// `max |⟨γ(s) − γ(s₀), ξ(s₀)⟩|`.
    pub ruling_offset: f64,
}

pub fn cylinder_check(
    curve: &[FrameState],
    k: &SampledField,
    metric: &AmbientMetric,
) -> Result<CylinderReport, NumericsError> {
    check_curve_grid(curve, k)?;
    let xi0 = curve[0].n / k.values()[0];
    let r = metric.inner(&curve[0].gamma, &xi0);
    let mut report = CylinderReport {
        parallelism: 0.0,
        ruling_offset: 0.0,
    };
    for (f, &kv) in curve.iter().zip(k.values()) {
        report.parallelism = report.parallelism.max((f.n / kv - xi0).amax());
        report.ruling_offset = report.ruling_offset.max((metric.inner(&f.gamma, &xi0) - r).abs());
    }
    Ok(report)
}

/// The parallel frame along a sampled curve together with finite-difference
/// residuals of `∇_T ξ = 0` and `∇_T η = kT`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParallelFrameReport {
    pub samples: Vec<(Vec4, Vec4)>,
    pub xi_residual: f64,
    pub eta_residual: f64,
}

fn covariant_derivative(
    vectors: &[Vec4],
    curve: &[FrameState],
    k: &SampledField,
    metric: &AmbientMetric,
) -> Result<Vec<Vec4>, NumericsError> {
    let mut out = vec![Vec4::zeros(); vectors.len()];
    for c in 0..4 {
        let comp = SampledField::new(k.origin(), k.step(), vectors.iter().map(|v| v[c]).collect(), false)?;
        for (slot, d) in out.iter_mut().zip(comp.derivative(1, 4)?.values()) {
            slot[c] = *d;
        }
    }
    let g = metric.curvature();
    for ((slot, v), f) in out.iter_mut().zip(vectors).zip(curve) {
        *slot += f.gamma * (g * metric.inner(&f.t, v));
    }
    Ok(out)
}

pub fn parallel_frame_samples(
    curve: &[FrameState],
    k: &SampledField,
    metric: &AmbientMetric,
) -> Result<ParallelFrameReport, NumericsError> {
    check_curve_grid(curve, k)?;
    let samples: Vec<(Vec4, Vec4)> = curve
        .iter()
        .zip(k.values())
        .map(|(f, &kv)| f.parallel_vectors(kv))
        .collect();
    let xi: Vec<Vec4> = samples.iter().map(|p| p.0).collect();
    let eta: Vec<Vec4> = samples.iter().map(|p| p.1).collect();
    let dxi = covariant_derivative(&xi, curve, k, metric)?;
    let deta = covariant_derivative(&eta, curve, k, metric)?;
    let xi_residual = dxi.iter().map(|v| v.amax()).fold(0.0, f64::max);
    let eta_residual = deta
        .iter()
        .zip(curve.iter().zip(k.values()))
        .map(|(d, (f, &kv))| (d - f.t * kv).amax())
        .fold(0.0, f64::max);
    Ok(ParallelFrameReport {
        samples,
        xi_residual,
        eta_residual,
    })
}

/// `max_s |(γ(s, t_j) − γ(s, t_i))/(t_j − t_i) − N(s, t_i)|`.
pub fn filament_velocity_residual(run: &EvolutionRun, i: usize, j: usize) -> Result<f64, NumericsError> {
    let (Some(a), Some(b)) = (run.curves.get(i), run.curves.get(j)) else {
        return Err(NumericsError::InvalidParameter(format!("run has no curves {i} and {j}")));
    };
    let dt = run.times[j] - run.times[i];
    if dt == 0.0 {
        return Err(NumericsError::InvalidParameter("snapshots coincide".into()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(fa, fb)| ((fb.gamma - fa.gamma) / dt - fa.n).amax())
        .fold(0.0, f64::max))
}

/// `max_s |hopf_cole(heat(k₀))(T) − burgers(hopf_cole(k₀))(T)|` at the final time.
pub fn hopf_cole_consistency(k0: &SampledField, g: f64, opts: &MolOptions) -> Result<f64, NumericsError> {
    let heat = solve_heat(k0, g, 0.0, opts)?;
    let burgers = solve_burgers(&hopf_cole(k0)?, opts)?;
    hopf_cole(heat.last_field())?.max_abs_diff(burgers.last_field())
}

/// Relative deviation of `e^{−dt} k_d(t)` from `k_0(t)` over all snapshots.
pub fn heat_gauge_check(k0: &SampledField, g: f64, d: f64, opts: &MolOptions) -> Result<f64, NumericsError> {
    let plain = solve_heat(k0, g, 0.0, opts)?;
    let gauged = solve_heat(k0, g, d, opts)?;
    let mut worst = 0.0f64;
    for ((t, a), b) in plain.times.iter().zip(&plain.fields).zip(&gauged.fields) {
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let back = b.map(|v| v * (-d * t).exp());
        worst = worst.max(back.max_abs_diff(a)? / scale);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeReport {
    /// Max residual of `τ_t = bτ_ss + 2bττ_s + aτ_s` over snapshots with
    /// evenly spaced neighbours.
    pub residual: f64,
}

/// Maps a solution of `u_t = u_xx + u u_x` to
/// `τ(s,t) = u(s/√b, t)/(2√b) − a/(2b)` and measures how well `τ` solves
/// `τ_t = bτ_ss + 2bττ_s + aτ_s`. Spatial derivatives use fourth-order
/// stencils, time derivatives central differences across snapshots.
pub fn burgers_gauge_check(run: &EvolutionRun, a: f64, b: f64) -> Result<GaugeReport, NumericsError> {
    if !(b > 0.0) {
        return Err(NumericsError::InvalidParameter(format!("b must be positive, got {b}")));
    }
    if run.fields.len() < 3 {
        return Err(NumericsError::InvalidParameter("gauge check needs at least 3 snapshots".into()));
    }
    let centres: Vec<usize> = (1..run.times.len() - 1)
        .filter(|&j| {
            let (l, r) = (run.times[j] - run.times[j - 1], run.times[j + 1] - run.times[j]);
            (l - r).abs() <= 1e-9 * r
        })
        .collect();
    if centres.is_empty() {
        return Err(NumericsError::InvalidParameter(
            "gauge check needs three evenly spaced snapshots".into(),
        ));
    }
    let root = b.sqrt();
    let taus = run
        .fields
        .iter()
        .map(|u| {
            SampledField::from_fn(root * u.origin(), root * u.step(), u.len(), u.is_periodic(), |s| {
                u.interpolate(s / root) / (2.0 * root) - a / (2.0 * b)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut residual = 0.0f64;
    for j in centres {
        let tau = &taus[j];
        let span = run.times[j + 1] - run.times[j - 1];
        let ts = tau.derivative(1, 4)?;
        let tss = tau.derivative(2, 4)?;
        for i in 0..tau.len() {
            let tt = (taus[j + 1].values()[i] - taus[j - 1].values()[i]) / span;
            let t = tau.values()[i];
            let rhs = b * tss.values()[i] + 2.0 * b * t * ts.values()[i] + a * ts.values()[i];
            residual = residual.max((tt - rhs).abs());
        }
    }
    Ok(GaugeReport { residual })
}
