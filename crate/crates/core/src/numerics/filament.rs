use super::frenet::reconstruct_curve_with_tolerance;
use super::metric::{default_frame, AmbientMetric, FrameState, Vec4};
use super::pde::{check_order, march, EvolutionRun, MolOptions, PeriodicOperator};
use super::{NumericsError, SampledField};

/// Frame tolerance accepted when rebuilding curves from a time-evolved anchor.
pub const ANCHOR_FRAME_TOLERANCE: f64 = 1e-8;

/// Default spatial accuracy of the filament flow.
pub const FILAMENT_ORDER: usize = 4;

fn unpack(tail: &[f64]) -> [Vec4; 4] {
    std::array::from_fn(|j| Vec4::from_column_slice(&tail[4 * j..4 * j + 4]))
}

/// Pseudo-null filament flow `γ_t = N`.
///
/// `τ` follows `τ_t = τ_ss + 2ττ_s`; the point and frame at `s₀` follow
/// `γ_t = N, T_t = τN, N_t = αN, B_t = τT − αB + Gγ` with
/// `α = τ′ + τ² + G`. Every snapshot curve is rebuilt from the anchor frame and
/// the current `τ`.
pub fn evolve_filament(tau0: &SampledField, g: f64, opts: &MolOptions) -> Result<EvolutionRun, NumericsError> {
    opts.validate(tau0)?;
    let order = opts.order.unwrap_or(FILAMENT_ORDER);
    check_order(order, tau0.len())?;
    let metric = AmbientMetric::new(g);
    let anchor = default_frame(&metric);
    let n = tau0.len();
    let d1 = PeriodicOperator::new(1, order, tau0.step());
    let d2 = PeriodicOperator::new(2, order, tau0.step());

    let mut state = tau0.values().to_vec();
    for v in anchor.to_array() {
        state.extend(v.iter());
    }

    let rebuild = |tau: &SampledField, frame: &FrameState| {
        reconstruct_curve_with_tolerance(tau, &metric, frame, tau.step(), ANCHOR_FRAME_TOLERANCE)
    };
    let mut fields = vec![tau0.clone()];
    let mut curves = vec![rebuild(tau0, &anchor)?];
    march(
        state,
        &opts.times,
        opts.dt,
        |u, out| {
            let tau = &u[..n];
            for i in 0..n {
                out[i] = d2.at(tau, i) + 2.0 * tau[i] * d1.at(tau, i);
            }
            let [gamma, t, nn, b] = unpack(&u[n..]);
            let t0 = tau[0];
            let alpha = d1.at(tau, 0) + t0 * t0 + g;
            let rates = [nn, nn * t0, nn * alpha, t * t0 - b * alpha + gamma * g];
            for (j, r) in rates.iter().enumerate() {
                out[n + 4 * j..n + 4 * j + 4].copy_from_slice(r.as_slice());
            }
        },
        |u| {
            let tau = tau0.with_values(u[..n].to_vec())?;
            let frame = FrameState::from_array(unpack(&u[n..]));
            curves.push(rebuild(&tau, &frame)?);
            fields.push(tau);
            Ok(())
        },
    )?;
    let mut times = vec![0.0];
    times.extend(&opts.times);
    Ok(EvolutionRun {
        dt: opts.dt,
        ds: tau0.step(),
        times,
        fields,
        curves,
    })
}
