//! First-order variation formulas for fields along a pseudo-null curve.

use crate::diffalg::{total_derivative, Coefficient, DiffPoly, Generator};

use super::{FrenetField, GeometryError, ParallelField};

/// Scalars describing `∇_T V` and the induced frame motion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationData {
    /// `ρ = ⟨∇_T V, T⟩ = f′ + h`.
    pub rho: DiffPoly,
    /// `φ = −⟨∇_T V, B⟩ = f + g′ + τg`.
    pub phi: DiffPoly,
    /// `ψ = −⟨∇_T V, N⟩ = h′ − τh`.
    pub psi: DiffPoly,
    /// `α = φ′ + τφ + Gg − ρ`.
    pub alpha: DiffPoly,
}

fn tau() -> DiffPoly {
    DiffPoly::var(Generator::Tau, 0)
}

fn d(p: &DiffPoly) -> DiffPoly {
    total_derivative(p)
}

pub fn variation_coefficients(v: &FrenetField) -> VariationData {
    let tau = tau();
    let g_const = DiffPoly::g(Generator::Tau);
    let rho = &d(v.f()) + v.h();
    let phi = &(v.f() + &d(v.g())) + &(&tau * v.g());
    let psi = &d(v.h()) - &(&tau * v.h());
    let alpha = &(&(&d(&phi) + &(&tau * &phi)) + &(&g_const * v.g())) - &rho;
    VariationData {
        rho,
        phi,
        psi,
        alpha,
    }
}

/// Residuals of the two tangency conditions for `T_γΛ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyReport {
    pub pseudo_null_ok: bool,
    pub arclength_ok: bool,
    /// `h″ − 2τh′ + (τ² − τ′ + G)h`.
    pub pseudo_null_residual: DiffPoly,
    /// `f′ + h`.
    pub arclength_residual: DiffPoly,
}

pub fn tangency_check(v: &FrenetField) -> TangencyReport {
    let tau = tau();
    let h = v.h();
    let h1 = d(h);
    let h2 = d(&h1);
    let potential = &(&(&tau * &tau) - &d(&tau)) + &DiffPoly::g(Generator::Tau);
    let two = DiffPoly::from_int(Generator::Tau, 2);
    let pseudo_null_residual = &(&h2 - &(&(&two * &tau) * &h1)) + &(&potential * h);
    let arclength_residual = &d(v.f()) + h;
    TangencyReport {
        pseudo_null_ok: pseudo_null_residual.is_zero(),
        arclength_ok: arclength_residual.is_zero(),
        pseudo_null_residual,
        arclength_residual,
    }
}

/// `V(τ) = g‴ + 2τg″ + (3τ′ + τ² + G)g′ + (τ″ + 2ττ′)g + 2τf′ + τ′f`.
///
/// Defined for fields tangent to the space of arc-length parametrized
/// pseudo-null curves.
pub fn torsion_variation(v: &FrenetField) -> Result<DiffPoly, GeometryError> {
    let report = tangency_check(v);
    if !(report.pseudo_null_ok && report.arclength_ok) {
        return Err(GeometryError::InvalidField(format!(
            "field {v} is not tangent to the pseudo-null curve space"
        )));
    }
    let t = |m| DiffPoly::var(Generator::Tau, m);
    let n = |k| DiffPoly::from_int(Generator::Tau, k);
    let (f, g) = (v.f(), v.g());
    let g1 = d(g);
    let g2 = d(&g1);
    let g3 = d(&g2);
    let c2 = &n(2) * &t(0);
    let c1 = &(&(&n(3) * &t(1)) + &t(0).pow(2)) + &DiffPoly::g(Generator::Tau);
    let c0 = &t(2) + &(&(&n(2) * &t(0)) * &t(1));
    let mut out = &g3 + &(&c2 * &g2);
    out = &out + &(&c1 * &g1);
    out = &out + &(&c0 * g);
    out = &out + &(&(&n(2) * &t(0)) * &d(f));
    out = &out + &(&t(1) * f);
    Ok(out)
}

/// `V(τ) = α′ + ψ − τρ`, the frame-motion form of the torsion variation.
/// Agrees with [`torsion_variation`] on tangent fields.
pub fn frame_torsion_variation(v: &FrenetField) -> DiffPoly {
    let data = variation_coefficients(v);
    &(&d(&data.alpha) + &data.psi) - &(&tau() * &data.rho)
}

/// `V(k) = g̃″ + k′f̃ + Gg̃ + d·k` for an evolution field in the parallel frame.
///
/// `d` is the integration constant; `d = 0` gives the heat hierarchy directly.
pub fn curvature_variation(v: &ParallelField, d_const: &Coefficient) -> Result<DiffPoly, GeometryError> {
    if !v.h().is_zero() {
        return Err(GeometryError::InvalidField(
            "curvature variation needs h̃ = 0; the D⁻¹(k′h̃) term leaves the polynomial algebra".into(),
        ));
    }
    if !v.f().is_constant() {
        return Err(GeometryError::InvalidField(
            "tangential component must be constant when h̃ = 0".into(),
        ));
    }
    let k = DiffPoly::var(Generator::Kappa, 0);
    let k1 = DiffPoly::var(Generator::Kappa, 1);
    let g = v.g();
    let g2 = d(&d(g));
    let mut out = &g2 + &(&k1 * v.f());
    out = &out + &(&DiffPoly::g(Generator::Kappa) * g);
    out = &out + &k.scale(d_const);
    Ok(out)
}
