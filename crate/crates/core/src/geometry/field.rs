use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::diffalg::{parse, AlgebraError, Coefficient, DiffPoly, Generator};

use super::GeometryError;

/// `V = f T + g N + h B` along a pseudo-null curve, components in `P = Q[G][τ^(m)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrenetField {
    f: DiffPoly,
    g: DiffPoly,
    h: DiffPoly,
}

impl FrenetField {
    pub fn new(f: DiffPoly, g: DiffPoly, h: DiffPoly) -> Result<Self, GeometryError> {
        for (name, c) in [("f", &f), ("g", &g), ("h", &h)] {
            if c.generator() != Generator::Tau {
                return Err(GeometryError::InvalidField(format!(
                    "component {name} must be a polynomial in τ"
                )));
            }
        }
        Ok(Self { f, g, h })
    }

    fn from_parts(f: DiffPoly, g: DiffPoly, h: DiffPoly) -> Self {
        Self { f, g, h }
    }

    pub fn zero() -> Self {
        let z = DiffPoly::zero(Generator::Tau);
        Self::from_parts(z.clone(), z.clone(), z)
    }

    /// `T`.
    pub fn tangent() -> Self {
        Self::evolution(Coefficient::one(), DiffPoly::zero(Generator::Tau))
    }

    /// `N`.
    pub fn normal() -> Self {
        Self::normal_multiple(DiffPoly::one(Generator::Tau))
    }

    /// `B`.
    pub fn binormal() -> Self {
        let z = DiffPoly::zero(Generator::Tau);
        Self::from_parts(z.clone(), z, DiffPoly::one(Generator::Tau))
    }

    /// `g N`. Panics unless `g` is over `τ`.
    pub fn normal_multiple(g: DiffPoly) -> Self {
        Self::evolution(Coefficient::zero(), g)
    }

    /// `c T + g N` with constant `c`. Panics unless `g` is over `τ`.
    pub fn evolution(c: Coefficient, g: DiffPoly) -> Self {
        assert_eq!(g.generator(), Generator::Tau, "Frenet components are polynomials in τ");
        Self::from_parts(
            DiffPoly::constant(Generator::Tau, c),
            g,
            DiffPoly::zero(Generator::Tau),
        )
    }

    /// Parses `"f;g;h"`, each part in the expression grammar over `t`.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 3 {
            return Err(AlgebraError::Parse(crate::diffalg::ParseError {
                offset: text.len(),
                kind: crate::diffalg::ParseErrorKind::Expected("three components `f;g;h`"),
            }));
        }
        let mut offset = 0;
        let mut out = Vec::with_capacity(3);
        for part in parts {
            let p = parse(part, Generator::Tau).map_err(|mut e| {
                e.offset += offset;
                e
            })?;
            out.push(p);
            offset += part.len() + 1;
        }
        let h = out.pop().unwrap();
        let g = out.pop().unwrap();
        let f = out.pop().unwrap();
        Ok(Self::from_parts(f, g, h))
    }

    pub fn f(&self) -> &DiffPoly {
        &self.f
    }

    pub fn g(&self) -> &DiffPoly {
        &self.g
    }

    pub fn h(&self) -> &DiffPoly {
        &self.h
    }

    pub fn components(&self) -> [&DiffPoly; 3] {
        [&self.f, &self.g, &self.h]
    }

    pub fn from_components([f, g, h]: [DiffPoly; 3]) -> Result<Self, GeometryError> {
        Self::new(f, g, h)
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    /// `h = 0` and `f` constant.
    pub fn is_evolution(&self) -> bool {
        self.h.is_zero() && self.f.is_constant()
    }

    pub(crate) fn require_evolution(&self, what: &str) -> Result<(), GeometryError> {
        if self.is_evolution() {
            Ok(())
        } else {
            Err(GeometryError::InvalidField(format!(
                "{what} requires an evolution field (h = 0, f constant), got {self}"
            )))
        }
    }

    /// Multiplies every component by `p`.
    pub fn scale(&self, p: &DiffPoly) -> Self {
        Self::from_parts(p * &self.f, p * &self.g, p * &self.h)
    }

    /// Pseudo-orthonormal inner product: `⟨T,T⟩ = 1`, `⟨N,B⟩ = −1`, others 0.
    pub fn inner(&self, other: &Self) -> DiffPoly {
        &(&self.f * &other.f) - &(&(&self.g * &other.h) + &(&self.h * &other.g))
    }

    /// Typeset rendering such as `T`, `τN` or `(τ′ + τ²)N`.
    pub fn to_pretty(&self) -> String {
        let mut parts = Vec::new();
        for (c, frame) in self.components().into_iter().zip(["T", "N", "B"]) {
            if c.is_zero() {
                continue;
            }
            let text = c.to_pretty();
            let one = DiffPoly::one(Generator::Tau);
            if *c == one {
                parts.push(frame.to_string());
            } else if c.len() == 1 && !text.starts_with('-') {
                parts.push(format!("{text}{frame}"));
            } else {
                parts.push(format!("({text}){frame}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FrenetField {
    /// `f;g;h` in canonical grammar text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.f, self.g, self.h)
    }
}

impl Add for &FrenetField {
    type Output = FrenetField;
    fn add(self, rhs: &FrenetField) -> FrenetField {
        FrenetField::from_parts(&self.f + &rhs.f, &self.g + &rhs.g, &self.h + &rhs.h)
    }
}

impl Sub for &FrenetField {
    type Output = FrenetField;
    fn sub(self, rhs: &FrenetField) -> FrenetField {
        FrenetField::from_parts(&self.f - &rhs.f, &self.g - &rhs.g, &self.h - &rhs.h)
    }
}

impl Neg for &FrenetField {
    type Output = FrenetField;
    fn neg(self) -> FrenetField {
        FrenetField::from_parts(-&self.f, -&self.g, -&self.h)
    }
}

/// `V = f̃ T + g̃ ξ + h̃ η` in the parallel frame, components over `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParallelField {
    f: DiffPoly,
    g: DiffPoly,
    h: DiffPoly,
}

impl ParallelField {
    pub fn new(f: DiffPoly, g: DiffPoly, h: DiffPoly) -> Result<Self, GeometryError> {
        for (name, c) in [("f", &f), ("g", &g), ("h", &h)] {
            if c.generator() != Generator::Kappa {
                return Err(GeometryError::InvalidField(format!(
                    "parallel component {name} must be a polynomial in k"
                )));
            }
        }
        Ok(Self { f, g, h })
    }

    /// `c T + g̃ ξ`. Panics unless `g` is over `k`.
    pub fn evolution(c: Coefficient, g: DiffPoly) -> Self {
        assert_eq!(g.generator(), Generator::Kappa, "parallel components are polynomials in k");
        Self {
            f: DiffPoly::constant(Generator::Kappa, c),
            g,
            h: DiffPoly::zero(Generator::Kappa),
        }
    }

    pub fn f(&self) -> &DiffPoly {
        &self.f
    }

    pub fn g(&self) -> &DiffPoly {
        &self.g
    }

    pub fn h(&self) -> &DiffPoly {
        &self.h
    }

    pub fn is_evolution(&self) -> bool {
        self.h.is_zero() && self.f.is_constant()
    }
}
