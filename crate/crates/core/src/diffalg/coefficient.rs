//! Coefficients of differential polynomials: polynomials in the formal
//! curvature constant `G` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the symbolic layer.
pub type Rational = BigRational;

/// Builds `n / d` as an exact rational. Panics when `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An element of `Q[G]`, stored sparsely as `G`-exponent -> rational.
///
/// Zero rationals are never stored, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    terms: BTreeMap<u32, Rational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The formal constant `G`.
    pub fn g() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `r * G^exp`.
    pub fn monomial(r: Rational, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(exp, r);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|r| r.is_one())
    }

    /// True when the coefficient does not involve `G`.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// The `G^0` part.
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(G-exponent, rational)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&e, r)| (e, r))
    }

    pub fn g_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: u32, r: Rational) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `G` by an exact value.
    pub fn substitute_g(&self, g: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&e, r) in &self.terms {
            acc += r * num_traits::pow(g.clone(), e as usize);
        }
        acc
    }

    /// Evaluates at a floating-point value of `G`.
    pub fn evaluate(&self, g: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, r)| rational_to_f64(r) * g.powi(e as i32))
            .sum()
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Writes a non-negative rational as `n` or `n/d`.
pub(crate) fn write_abs_rational(f: &mut impl fmt::Write, r: &Rational) -> fmt::Result {
    let r = r.abs();
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        for (&e, r) in &rhs.terms {
            out.add_term(e, r.clone());
        }
        out
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        for (&e, r) in &rhs.terms {
            out.add_term(e, -r.clone());
        }
        out
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (&ea, ra) in &self.terms {
            for (&eb, rb) in &rhs.terms {
                out.add_term(ea + eb, ra * rb);
            }
        }
        out
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(&e, r)| (e, -r.clone())).collect(),
        }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: Coefficient) -> Coefficient {
        &self + &rhs
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl fmt::Display for Coefficient {
    /// Prints in the expression grammar, e.g. `3/2 + G^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, r)) in self.terms.iter().enumerate() {
            let negative = r.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = r.abs().is_one();
            if e == 0 || !unit {
                write_abs_rational(f, r)?;
            }
            if e > 0 {
                if !unit {
                    f.write_str("*")?;
                }
                f.write_str("G")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
