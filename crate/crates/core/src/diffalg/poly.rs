//! Differential polynomials over a single generator.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::coefficient::{write_abs_rational, Coefficient, Rational};
use super::monomial::DiffMonomial;

/// The generator of the differential algebra.
///
/// `Tau` is the pseudo-torsion, `Kappa` the pseudo-curvature of the parallel
/// frame. The two algebras are never mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Tau,
    Kappa,
}

impl Generator {
    /// Letter used in the expression grammar.
    pub fn letter(self) -> char {
        match self {
            Generator::Tau => 't',
            Generator::Kappa => 'k',
        }
    }

    /// Symbol used in typeset output.
    pub fn symbol(self) -> char {
        match self {
            Generator::Tau => 'τ',
            Generator::Kappa => 'k',
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tau => f.write_str("TAU"),
            Generator::Kappa => f.write_str("KAPPA"),
        }
    }
}

/// A polynomial in `u, u', u'', ...` with coefficients in `Q[G]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    generator: Generator,
    terms: BTreeMap<DiffMonomial, Coefficient>,
}

impl DiffPoly {
    pub fn zero(generator: Generator) -> Self {
        Self {
            generator,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(generator: Generator) -> Self {
        Self::constant(generator, Coefficient::one())
    }

    pub fn constant(generator: Generator, c: Coefficient) -> Self {
        Self::term(generator, DiffMonomial::one(), c)
    }

    pub fn from_int(generator: Generator, n: i64) -> Self {
        Self::constant(generator, Coefficient::from_int(n))
    }

    /// The constant `G` viewed as an element of the algebra.
    pub fn g(generator: Generator) -> Self {
        Self::constant(generator, Coefficient::g())
    }

    /// The jet variable `u^(order)`.
    pub fn var(generator: Generator, order: usize) -> Self {
        Self::term(generator, DiffMonomial::var(order), Coefficient::one())
    }

    pub fn term(generator: Generator, monomial: DiffMonomial, c: Coefficient) -> Self {
        let mut p = Self::zero(generator);
        p.add_term(monomial, c);
        p
    }

    pub fn from_terms(
        generator: Generator,
        terms: impl IntoIterator<Item = (DiffMonomial, Coefficient)>,
    ) -> Self {
        let mut p = Self::zero(generator);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, monomial: DiffMonomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(slot) => {
                let sum = &*slot + &c;
                if sum.is_zero() {
                    self.terms.remove(&monomial);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(monomial, c);
            }
        }
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no jet variable occurs (the value may still involve `G`).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(DiffMonomial::is_one)
    }

    /// Coefficient of the unit monomial. Zero exactly on the ideal `P_0`.
    pub fn constant_term(&self) -> Coefficient {
        self.terms
            .get(&DiffMonomial::one())
            .cloned()
            .unwrap_or_default()
    }

    /// Highest derivative order occurring, `None` for constants.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().filter_map(DiffMonomial::order).max()
    }

    /// Highest total degree in the jet variables, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(DiffMonomial::degree).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Coefficient)> {
        self.terms.iter()
    }

    /// Relabels the generator, keeping every coefficient.
    pub fn with_generator(&self, generator: Generator) -> Self {
        Self {
            generator,
            terms: self.terms.clone(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.generator);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.generator);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.scale(r));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.generator);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `∂p/∂u^(order)`.
    pub fn partial(&self, order: usize) -> Self {
        let mut out = Self::zero(self.generator);
        for (m, c) in &self.terms {
            if let Some((k, rest)) = m.partial(order) {
                out.add_term(rest, c.scale(&Rational::from_integer(k.into())));
            }
        }
        out
    }

    /// Substitutes an exact value for `G`.
    pub fn substitute_g(&self, g: &Rational) -> Self {
        let mut out = Self::zero(self.generator);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Coefficient::from_rational(c.substitute_g(g)));
        }
        out
    }

    /// Evaluates at a numeric jet `jet[m] = u^(m)` and numeric `G`.
    ///
    /// Panics if the jet is shorter than `order() + 1`.
    pub fn evaluate(&self, jet: &[f64], g: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let v: f64 = m.factors().map(|(k, e)| jet[k].powi(e as i32)).product();
                c.evaluate(g) * v
            })
            .sum()
    }

    fn assert_same_generator(&self, other: &Self) {
        assert_eq!(
            self.generator, other.generator,
            "cannot combine differential polynomials over different generators"
        );
    }

    /// Canonical text in the expression grammar (same as `Display`).
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }

    /// Typeset rendering: `τ″ + 2ττ′`, `(τ′)³`, `τ⁽⁴⁾`.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        if self.is_zero() {
            return "0".into();
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (e, r) in c.terms() {
                write_sign(&mut out, r.is_negative(), first);
                first = false;
                let mut body = String::new();
                if e > 0 {
                    body.push('G');
                    if e > 1 {
                        body.push_str(&superscript(e as usize));
                    }
                }
                for (order, exp) in m.factors() {
                    let var = pretty_var(self.generator, order);
                    if exp > 1 {
                        if order == 0 {
                            body.push_str(&var);
                        } else {
                            let _ = write!(body, "({var})");
                        }
                        body.push_str(&superscript(exp as usize));
                    } else {
                        body.push_str(&var);
                    }
                }
                if body.is_empty() || !r.abs().is_one() {
                    let _ = write_abs_rational(&mut out, r);
                }
                out.push_str(&body);
            }
        }
        out
    }
}

fn write_sign(out: &mut String, negative: bool, first: bool) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn pretty_var(generator: Generator, order: usize) -> String {
    let s = generator.symbol();
    match order {
        0 => s.to_string(),
        1 => format!("{s}′"),
        2 => format!("{s}″"),
        3 => format!("{s}‴"),
        n => format!("{s}⁽{}⁾", superscript(n)),
    }
}

pub(crate) fn var_name(generator: Generator, order: usize) -> String {
    if order == 0 {
        generator.letter().to_string()
    } else {
        format!("{}{}", generator.letter(), order)
    }
}

impl fmt::Display for DiffPoly {
    /// Canonical grammar text: one term per (monomial, `G`-power) pair, in
    /// ascending monomial order and ascending `G` exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (m, c) in &self.terms {
            for (e, r) in c.terms() {
                write_sign(&mut out, r.is_negative(), first);
                first = false;
                let mut factors: Vec<String> = Vec::new();
                if e == 1 {
                    factors.push("G".into());
                } else if e > 1 {
                    factors.push(format!("G^{e}"));
                }
                for (order, exp) in m.factors() {
                    let name = var_name(self.generator, order);
                    if exp > 1 {
                        factors.push(format!("{name}^{exp}"));
                    } else {
                        factors.push(name);
                    }
                }
                if factors.is_empty() || !r.abs().is_one() {
                    write_abs_rational(&mut out, r)?;
                    if !factors.is_empty() {
                        out.push('*');
                    }
                }
                out.push_str(&factors.join("*"));
            }
        }
        f.write_str(&out)
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_generator(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_generator(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        self.assert_same_generator(rhs);
        let mut out = DiffPoly::zero(self.generator);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            generator: self.generator,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $method(self, rhs: DiffPoly) -> DiffPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}
