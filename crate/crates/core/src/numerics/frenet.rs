use super::metric::{AmbientMetric, FrameState, Vec4};
use super::{NumericsError, SampledField};

pub const INITIAL_FRAME_TOLERANCE: f64 = 1e-12;

/// `γ′ = T, T′ = N − Gγ, N′ = τN, B′ = T − τB`.
pub(crate) fn frenet_rhs(tau: f64, g: f64, state: &[Vec4; 4]) -> [Vec4; 4] {
    let [gamma, t, n, b] = state;
    [*t, n - gamma * g, n * tau, t - b * tau]
}

pub(crate) fn rk4_frame(
    state: &[Vec4; 4],
    h: f64,
    taus: [f64; 3],
    g: f64,
) -> [Vec4; 4] {
    let add = |a: &[Vec4; 4], k: &[Vec4; 4], c: f64| -> [Vec4; 4] {
        std::array::from_fn(|i| a[i] + k[i] * c)
    };
    let k1 = frenet_rhs(taus[0], g, state);
    let k2 = frenet_rhs(taus[1], g, &add(state, &k1, h / 2.0));
    let k3 = frenet_rhs(taus[1], g, &add(state, &k2, h / 2.0));
    let k4 = frenet_rhs(taus[2], g, &add(state, &k3, h));
    std::array::from_fn(|i| state[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
}

/// Integrates the Frenet system with classical RK4 at step `h` and returns the
/// frame at every sample of `tau`.
pub fn reconstruct_curve(
    tau: &SampledField,
    metric: &AmbientMetric,
    init: &FrameState,
    h: f64,
) -> Result<Vec<FrameState>, NumericsError> {
    reconstruct_curve_with_tolerance(tau, metric, init, h, INITIAL_FRAME_TOLERANCE)
}

/// [`reconstruct_curve`] accepting initial frames within `tolerance`.
pub fn reconstruct_curve_with_tolerance(
    tau: &SampledField,
    metric: &AmbientMetric,
    init: &FrameState,
    h: f64,
    tolerance: f64,
) -> Result<Vec<FrameState>, NumericsError> {
    let ratio = tau.step() / h;
    let substeps = ratio.round();
    if !(h > 0.0) || substeps < 1.0 || (ratio - substeps).abs() > 1e-9 * ratio {
        return Err(NumericsError::StepMismatch {
            step: tau.step(),
            h,
        });
    }
    let residual = init.residual(metric);
    if !(residual <= tolerance) {
        return Err(NumericsError::InvalidInitialFrame { residual });
    }
    let substeps = substeps as usize;
    let h = tau.step() / substeps as f64;
    let g = metric.curvature();
    let mut out = Vec::with_capacity(tau.len());
    let mut state = init.to_array();
    out.push(*init);
    for i in 0..tau.len() - 1 {
        for j in 0..substeps {
            let s = tau.s(i) + j as f64 * h;
            let taus = [
                tau.interpolate(s),
                tau.interpolate(s + h / 2.0),
                tau.interpolate(s + h),
            ];
            state = rk4_frame(&state, h, taus, g);
        }
        out.push(FrameState::from_array(state));
    }
    Ok(out)
}

/// Largest frame (and hyperquadric) residual along a curve.
pub fn gram_drift(curve: &[FrameState], metric: &AmbientMetric) -> f64 {
    curve.iter().map(|f| f.residual(metric)).fold(0.0, f64::max)
}
