use super::grid::central_stencil;
use super::metric::FrameState;
use super::{NumericsError, SampledField};

/// Explicit schemes require `dt ≤ STABILITY_FACTOR · Δs²`.
pub const STABILITY_FACTOR: f64 = 0.4;

/// Time grid and spatial accuracy for a method-of-lines run.
#[derive(Clone, Debug, PartialEq)]
pub struct MolOptions {
    /// Snapshot times after `t = 0`, strictly increasing.
    pub times: Vec<f64>,
    /// Largest time step.
    pub dt: f64,
    /// Spatial stencil accuracy; each solver has its own default.
    pub order: Option<usize>,
}

impl MolOptions {
    /// A single snapshot at `t_end`.
    pub fn new(t_end: f64, dt: f64) -> Self {
        Self {
            times: vec![t_end],
            dt,
            order: None,
        }
    }

    /// `count` equally spaced snapshots ending at the last requested time.
    pub fn with_snapshots(mut self, count: usize) -> Self {
        let t_end = self.t_end();
        self.times = (1..=count.max(1))
            .map(|j| t_end * j as f64 / count.max(1) as f64)
            .collect();
        self
    }

    pub fn with_times(mut self, times: Vec<f64>) -> Self {
        self.times = times;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = Some(order);
        self
    }

    pub fn t_end(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    pub(crate) fn validate(&self, field: &SampledField) -> Result<(), NumericsError> {
        if !field.is_periodic() {
            return Err(NumericsError::InvalidGrid("evolution needs a periodic grid".into()));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(NumericsError::InvalidParameter(format!("dt must be positive, got {}", self.dt)));
        }
        let limit = STABILITY_FACTOR * field.step() * field.step();
        if self.dt > limit {
            return Err(NumericsError::StabilityViolation { dt: self.dt, limit });
        }
        let mut prev = 0.0;
        for &t in &self.times {
            if !(t > prev && t.is_finite()) {
                return Err(NumericsError::InvalidParameter(
                    "snapshot times must increase strictly from 0".into(),
                ));
            }
            prev = t;
        }
        if self.times.is_empty() {
            return Err(NumericsError::InvalidParameter("no snapshot times".into()));
        }
        Ok(())
    }
}

/// Snapshots of an evolution; `times[0] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionRun {
    pub dt: f64,
    pub ds: f64,
    pub times: Vec<f64>,
    pub fields: Vec<SampledField>,
    /// Reconstructed curves per snapshot; empty for scalar runs.
    pub curves: Vec<Vec<FrameState>>,
}

impl EvolutionRun {
    pub fn last_field(&self) -> &SampledField {
        self.fields.last().expect("runs hold the initial snapshot")
    }
}

/// Periodic derivative operator applied to raw sample slices.
pub(crate) struct PeriodicOperator {
    offsets: Vec<i64>,
    weights: Vec<f64>,
}

impl PeriodicOperator {
    pub(crate) fn new(d: usize, p: usize, step: f64) -> Self {
        let (offsets, w) = central_stencil(d, p);
        let scale = step.powi(-(d as i32));
        Self {
            offsets,
            weights: w.into_iter().map(|x| x * scale).collect(),
        }
    }

    pub(crate) fn at(&self, u: &[f64], i: usize) -> f64 {
        let n = u.len() as i64;
        self.offsets
            .iter()
            .zip(&self.weights)
            .map(|(&o, &w)| w * u[(i as i64 + o).rem_euclid(n) as usize])
            .sum()
    }

}

/// Classical RK4 on a flat state vector, stopping exactly at each time in
/// `times`; `snapshot` sees the state at every stop.
pub(crate) fn march(
    mut state: Vec<f64>,
    times: &[f64],
    dt: f64,
    mut rhs: impl FnMut(&[f64], &mut [f64]),
    mut snapshot: impl FnMut(&[f64]) -> Result<(), NumericsError>,
) -> Result<(), NumericsError> {
    let len = state.len();
    let mut k = vec![vec![0.0; len]; 4];
    let mut stage = vec![0.0; len];
    let mut t = 0.0;
    for &target in times {
        let steps = ((target - t) / dt - 1e-9).ceil().max(1.0) as usize;
        let h = (target - t) / steps as f64;
        for _ in 0..steps {
            rhs(&state, &mut k[0]);
            for (j, c) in [0.5, 0.5, 1.0].into_iter().enumerate() {
                for i in 0..len {
                    stage[i] = state[i] + c * h * k[j][i];
                }
                rhs(&stage, &mut k[j + 1]);
            }
            for i in 0..len {
                state[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
            }
        }
        t = target;
        snapshot(&state)?;
    }
    Ok(())
}

pub(crate) fn check_order(order: usize, len: usize) -> Result<(), NumericsError> {
    if order == 0 || order % 2 == 1 {
        return Err(NumericsError::InvalidParameter(format!(
            "stencil accuracy must be a positive even integer, got {order}"
        )));
    }
    if len < order + 3 {
        return Err(NumericsError::InvalidGrid(format!(
            "{len} samples are too few for accuracy {order}"
        )));
    }
    Ok(())
}

/// Method of lines for `u_t = F(u, u_s, u_ss)` on a periodic grid.
pub(crate) fn solve_local(
    u0: &SampledField,
    opts: &MolOptions,
    default_order: usize,
    f: impl Fn(f64, f64, f64) -> f64,
) -> Result<EvolutionRun, NumericsError> {
    opts.validate(u0)?;
    let order = opts.order.unwrap_or(default_order);
    check_order(order, u0.len())?;
    let d1 = PeriodicOperator::new(1, order, u0.step());
    let d2 = PeriodicOperator::new(2, order, u0.step());
    let mut fields = vec![u0.clone()];
    march(
        u0.values().to_vec(),
        &opts.times,
        opts.dt,
        |u, out| {
            for i in 0..u.len() {
                out[i] = f(u[i], d1.at(u, i), d2.at(u, i));
            }
        },
        |u| {
            fields.push(u0.with_values(u.to_vec())?);
            Ok(())
        },
    )?;
    let mut times = vec![0.0];
    times.extend(&opts.times);
    Ok(EvolutionRun {
        dt: opts.dt,
        ds: u0.step(),
        times,
        fields,
        curves: Vec::new(),
    })
}

/// `τ_t = τ_ss + 2ττ_s`, second-order central differences by default.
pub fn solve_burgers(tau0: &SampledField, opts: &MolOptions) -> Result<EvolutionRun, NumericsError> {
    solve_local(tau0, opts, 2, |u, us, uss| uss + 2.0 * u * us)
}

/// `u_t = u_xx + u u_x`.
pub fn solve_viscous_burgers(u0: &SampledField, opts: &MolOptions) -> Result<EvolutionRun, NumericsError> {
    solve_local(u0, opts, 2, |u, ux, uxx| uxx + u * ux)
}

/// `k_t = k_ss + Gk + dk`.
pub fn solve_heat(k0: &SampledField, g: f64, d: f64, opts: &MolOptions) -> Result<EvolutionRun, NumericsError> {
    solve_local(k0, opts, 2, move |k, _, kss| kss + (g + d) * k)
}
