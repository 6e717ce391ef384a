use std::collections::BTreeMap;
use std::fmt;

use crate::diffalg::{
    antiderivative, total_derivative_n, AlgebraError, Coefficient, DiffPoly, Generator,
};

use super::HierarchyError;

/// `Σ c_p D^p` with `p ≥ −1`; `D^{-1}` is the antiderivative normalized to
/// zero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionOperator {
    generator: Generator,
    terms: BTreeMap<i32, DiffPoly>,
}

impl RecursionOperator {
    pub fn new(
        generator: Generator,
        terms: impl IntoIterator<Item = (i32, DiffPoly)>,
    ) -> Result<Self, HierarchyError> {
        let mut out = BTreeMap::new();
        for (power, coeff) in terms {
            if power < -1 {
                return Err(HierarchyError::InvalidOperator(format!(
                    "power {power} is below −1"
                )));
            }
            if coeff.generator() != generator {
                return Err(AlgebraError::GeneratorMismatch {
                    left: generator,
                    right: coeff.generator(),
                }
                .into());
            }
            if out.insert(power, coeff).is_some() {
                return Err(HierarchyError::InvalidOperator(format!(
                    "duplicate term for power {power}"
                )));
            }
        }
        out.retain(|_, c: &mut DiffPoly| !c.is_zero());
        Ok(Self {
            generator,
            terms: out,
        })
    }

    /// `𝓡 = τ′D⁻¹ + τ + D`.
    pub fn burgers() -> Self {
        let t = |m| DiffPoly::var(Generator::Tau, m);
        Self::new(
            Generator::Tau,
            [(-1, t(1)), (0, t(0)), (1, DiffPoly::one(Generator::Tau))],
        )
        .expect("well-formed operator")
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &DiffPoly)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn apply(&self, p: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
        if p.generator() != self.generator {
            return Err(AlgebraError::GeneratorMismatch {
                left: self.generator,
                right: p.generator(),
            });
        }
        let mut out = DiffPoly::zero(self.generator);
        for (&power, coeff) in &self.terms {
            let image = if power < 0 {
                antiderivative(p)?
            } else {
                total_derivative_n(p, power as usize)
            };
            out = &out + &(coeff * &image);
        }
        Ok(out)
    }

    /// `(𝓡² + c)(p)`.
    pub fn apply_squared_plus(&self, c: &Coefficient, p: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
        let twice = self.apply(&self.apply(p)?)?;
        Ok(&twice + &p.scale(c))
    }
}

impl fmt::Display for RecursionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(power, c)| {
                let op = match power {
                    0 => String::new(),
                    1 => "D".to_string(),
                    p => format!("D^{p}"),
                };
                let one = DiffPoly::one(self.generator);
                match (c == &one, op.is_empty()) {
                    (true, true) => "1".to_string(),
                    (true, false) => op,
                    (false, true) => format!("({c})"),
                    (false, false) => format!("({c})*{op}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
