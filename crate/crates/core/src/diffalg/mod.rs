//! Exact differential polynomial algebra `Q[G][u, u', u'', ...]`.
//!
//! Two generators are supported: the pseudo-torsion `τ` ([`Generator::Tau`])
//! and the pseudo-curvature `k` ([`Generator::Kappa`]). Everything here is
//! exact; no floating point is involved except in [`DiffPoly::evaluate`].

mod calculus;
mod coefficient;
mod monomial;
mod parse;
mod poly;

pub use calculus::{
    antiderivative, commutator, evolution_derivation, frechet, total_derivative,
    total_derivative_n, variational_derivative,
};
pub use coefficient::{rational, Coefficient, Rational};
pub use monomial::DiffMonomial;
pub use parse::{parse, parse_any, ParseError, ParseErrorKind};
pub use poly::{DiffPoly, Generator};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator mismatch: {left} vs {right}")]
    GeneratorMismatch { left: Generator, right: Generator },
    #[error("not a total derivative of a polynomial without constant term")]
    NotTotalDerivative,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
