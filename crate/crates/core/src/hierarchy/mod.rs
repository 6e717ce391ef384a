//! The Burgers recursion operator and the geometric hierarchy of commuting
//! flows `V₀ = T`, `V_{n+1} = ∇_T V_n` projected onto `N`.

mod operator;

pub use operator::RecursionOperator;

use thiserror::Error;

use crate::diffalg::{commutator, AlgebraError, Coefficient, DiffPoly, Generator};
use crate::geometry::{
    curvature_variation, torsion_variation, variation_coefficients, FrenetField, GeometryError,
    ParallelField,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("invalid recursion operator: {0}")]
    InvalidOperator(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One member of the hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyLevel {
    pub index: usize,
    pub field: FrenetField,
    /// `V_n(τ)`.
    pub tau_flow: DiffPoly,
    /// `V_n(k)` with integration constant `d = 0`.
    pub k_flow: DiffPoly,
}

/// `V ↦ φ_V N = (f + g′ + τg) N`.
pub fn geometric_recursion_step(v: &FrenetField) -> Result<FrenetField, GeometryError> {
    if !v.is_evolution() {
        return Err(GeometryError::InvalidField(format!(
            "recursion step requires an evolution field, got {v}"
        )));
    }
    Ok(FrenetField::normal_multiple(variation_coefficients(v).phi))
}

/// Parallel-frame field of level `n`: `T` for `n = 0`, `k^(n−1) ξ` after that.
fn parallel_field(n: usize) -> ParallelField {
    if n == 0 {
        ParallelField::evolution(Coefficient::one(), DiffPoly::zero(Generator::Kappa))
    } else {
        ParallelField::evolution(Coefficient::zero(), DiffPoly::var(Generator::Kappa, n - 1))
    }
}

/// The first `levels` members `V₀, …, V_{levels−1}`.
pub fn generate_hierarchy(levels: usize) -> Vec<HierarchyLevel> {
    let mut out = Vec::with_capacity(levels);
    let mut field = FrenetField::tangent();
    for index in 0..levels {
        if index > 0 {
            field = geometric_recursion_step(&field).expect("hierarchy fields are evolution fields");
        }
        let tau_flow = torsion_variation(&field).expect("hierarchy fields are tangent");
        let k_flow = curvature_variation(&parallel_field(index), &Coefficient::zero())
            .expect("parallel hierarchy fields have h̃ = 0");
        out.push(HierarchyLevel {
            index,
            field: field.clone(),
            tau_flow,
            k_flow,
        });
    }
    out
}

/// `(𝓡² + G)(g′)` for `g` without constant term.
pub fn recursion_flow(g: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    if !g.constant_term().is_zero() {
        return Err(AlgebraError::NotTotalDerivative);
    }
    let r = RecursionOperator::burgers();
    let g = g.with_generator(Generator::Tau);
    r.apply_squared_plus(&Coefficient::g(), &crate::diffalg::total_derivative(&g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub is_symmetry: bool,
    /// `[f, σ]`.
    pub residual: DiffPoly,
}

/// Whether `sigma` is a symmetry of `u_t = f`.
pub fn is_symmetry(f: &DiffPoly, sigma: &DiffPoly) -> Result<SymmetryReport, AlgebraError> {
    let residual = commutator(f, sigma)?;
    Ok(SymmetryReport {
        is_symmetry: residual.is_zero(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::parse;

    fn p(s: &str) -> DiffPoly {
        parse(s, Generator::Tau).unwrap()
    }

    fn field(s: &str) -> FrenetField {
        FrenetField::parse(s).unwrap()
    }

    #[test]
    fn recursion_step_examples() {
        assert_eq!(geometric_recursion_step(&FrenetField::tangent()).unwrap(), FrenetField::normal());
        assert_eq!(geometric_recursion_step(&FrenetField::normal()).unwrap(), field("0;t;0"));
        assert_eq!(
            geometric_recursion_step(&field("0;t1 + t^2;0")).unwrap(),
            field("0;t2 + 3*t*t1 + t^3;0")
        );
        assert!(geometric_recursion_step(&FrenetField::binormal()).is_err());
    }

    #[test]
    fn first_two_levels() {
        let h = generate_hierarchy(2);
        assert_eq!(h[0].field, FrenetField::tangent());
        assert_eq!(h[0].tau_flow, p("t1"));
        assert_eq!(h[0].k_flow, parse("k1", Generator::Kappa).unwrap());
        assert_eq!(h[1].field, FrenetField::normal());
        assert_eq!(h[1].tau_flow, p("t2 + 2*t*t1"));
        assert_eq!(h[1].k_flow, parse("k2 + G*k", Generator::Kappa).unwrap());
    }

    #[test]
    fn recursion_flow_examples() {
        assert_eq!(recursion_flow(&p("t")).unwrap(), p("t3 + 3*t*t2 + 3*t1^2 + (G + 3*t^2)*t1"));
        assert!(recursion_flow(&p("0")).unwrap().is_zero());
        let g = p("t1");
        assert_eq!(
            recursion_flow(&g).unwrap(),
            torsion_variation(&FrenetField::normal_multiple(g)).unwrap()
        );
        assert_eq!(recursion_flow(&p("1 + t")), Err(AlgebraError::NotTotalDerivative));
    }

    #[test]
    fn symmetry_examples() {
        let burgers = p("t2 + 2*t*t1");
        assert!(is_symmetry(&burgers, &p("t1")).unwrap().is_symmetry);
        assert!(is_symmetry(&burgers, &burgers).unwrap().is_symmetry);
        let r = is_symmetry(&burgers, &p("t^2")).unwrap();
        assert!(!r.is_symmetry);
        assert_eq!(r.residual, p("-2*t1^2 - 2*t^2*t1"));
    }
}
