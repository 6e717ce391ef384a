//! Variation calculus for pseudo-null curves in a Lorentzian space form of
//! curvature `G`.
//!
//! Vector fields are written in the Frenet frame `{T, N, B}` (components over
//! `τ`) or in the parallel frame `{T, ξ, η}` (components over `k`). The frame
//! derivation and the bracket are restricted to evolution fields, i.e.
//! `V = cT + gN` with `c` constant.

mod bracket;
mod field;
mod variation;

pub use bracket::{curvature_identity_check, derive_field, frame_derivation, lie_bracket, FrameMatrix};
pub use field::{FrenetField, ParallelField};
pub use variation::{
    curvature_variation, frame_torsion_variation, tangency_check, torsion_variation,
    variation_coefficients, TangencyReport, VariationData,
};

use thiserror::Error;

use crate::diffalg::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
