//! The frame derivation `D_V` and the Lie bracket of evolution fields.

use crate::diffalg::{evolution_derivation, DiffPoly, Generator};

use super::variation::{torsion_variation, variation_coefficients};
use super::{FrenetField, GeometryError};

/// Matrix of `D_V` on the ordered basis `(T, N, B)`: row `X` holds the
/// components of `D_V X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameMatrix {
    pub rows: [[DiffPoly; 3]; 3],
}

impl FrameMatrix {
    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(DiffPoly::is_zero)
    }

    /// `Σ_X u_X (D_V X)` for `U = Σ_X u_X X`.
    pub fn apply(&self, u: &FrenetField) -> FrenetField {
        let comps = u.components();
        let mut out: [DiffPoly; 3] = std::array::from_fn(|_| DiffPoly::zero(Generator::Tau));
        for (x, ux) in comps.iter().enumerate() {
            if ux.is_zero() {
                continue;
            }
            for (y, slot) in out.iter_mut().enumerate() {
                *slot = &*slot + &(*ux * &self.rows[x][y]);
            }
        }
        FrenetField::from_components(out).expect("components stay over τ")
    }
}

/// `((0, φ, ψ), (ψ, α, 0), (φ, 0, −α))`.
pub fn frame_derivation(v: &FrenetField) -> Result<FrameMatrix, GeometryError> {
    v.require_evolution("frame derivation")?;
    let data = variation_coefficients(v);
    let zero = DiffPoly::zero(Generator::Tau);
    Ok(FrameMatrix {
        rows: [
            [zero.clone(), data.phi.clone(), data.psi.clone()],
            [data.psi, data.alpha.clone(), zero.clone()],
            [data.phi, zero, -&data.alpha],
        ],
    })
}

/// `D_V U`: scalars move by `∂_{V(τ)}`, frame vectors by [`frame_derivation`].
pub fn derive_field(v: &FrenetField, u: &FrenetField) -> Result<FrenetField, GeometryError> {
    let matrix = frame_derivation(v)?;
    let flow = torsion_variation(v)?;
    let scalar = u
        .components()
        .map(|c| evolution_derivation(&flow, c).expect("same generator"));
    let scalar = FrenetField::from_components(scalar)?;
    Ok(&scalar + &matrix.apply(u))
}

/// `[V₁, V₂] = D_{V₁}V₂ − D_{V₂}V₁` on evolution fields.
pub fn lie_bracket(v1: &FrenetField, v2: &FrenetField) -> Result<FrenetField, GeometryError> {
    v1.require_evolution("Lie bracket")?;
    v2.require_evolution("Lie bracket")?;
    Ok(&derive_field(v1, v2)? - &derive_field(v2, v1)?)
}

/// Left minus right side of
/// `D_{[V₁,V₂]}U − D_{V₁}D_{V₂}U + D_{V₂}D_{V₁}U = G(⟨U,V₁⟩V₂ − ⟨U,V₂⟩V₁)`.
pub fn curvature_identity_check(
    v1: &FrenetField,
    v2: &FrenetField,
    u: &FrenetField,
) -> Result<FrenetField, GeometryError> {
    let bracket = lie_bracket(v1, v2)?;
    let lhs = &(&derive_field(&bracket, u)? - &derive_field(v1, &derive_field(v2, u)?)?)
        + &derive_field(v2, &derive_field(v1, u)?)?;
    let g = DiffPoly::g(Generator::Tau);
    let rhs = &v2.scale(&(&g * &u.inner(v1))) - &v1.scale(&(&g * &u.inner(v2)));
    Ok(&lhs - &rhs)
}
