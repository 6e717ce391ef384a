//! Floating-point companion to the symbolic layer: curve reconstruction from
//! torsion samples, Burgers and heat solvers on periodic grids, the Hopf-Cole
//! map and the pseudo-null filament flow.

mod checks;
mod filament;
mod frenet;
mod grid;
mod hopf_cole;
mod metric;
mod pde;

pub use checks::{
    burgers_gauge_check, cylinder_check, filament_velocity_residual, heat_gauge_check,
    hopf_cole_consistency, parallel_frame_samples, CylinderReport, GaugeReport,
    ParallelFrameReport,
};
pub use filament::{evolve_filament, ANCHOR_FRAME_TOLERANCE, FILAMENT_ORDER};
pub use frenet::{gram_drift, reconstruct_curve, reconstruct_curve_with_tolerance, INITIAL_FRAME_TOLERANCE};
pub use grid::{central_half_width, central_stencil, fd_weights, SampledField};
pub use hopf_cole::{hopf_cole, inverse_hopf_cole};
pub use metric::{default_frame, AmbientMetric, FrameState, Vec4};
pub use pde::{
    solve_burgers, solve_heat, solve_viscous_burgers, EvolutionRun, MolOptions, STABILITY_FACTOR,
};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integrator step {h} does not divide the grid step {step}")]
    StepMismatch { step: f64, h: f64 },
    #[error("initial frame violates the frame relations (residual {residual:e})")]
    InvalidInitialFrame { residual: f64 },
    #[error("time step {dt} exceeds the stability bound {limit}")]
    StabilityViolation { dt: f64, limit: f64 },
    #[error("sample {index} is not positive ({value})")]
    NonPositiveSample { index: usize, value: f64 },
}
