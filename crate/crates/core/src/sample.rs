//! Seedable random generators for differential polynomials and evolution
//! fields, used by property checks and the verification driver.

use rand::Rng;

use crate::diffalg::{rational, Coefficient, DiffMonomial, DiffPoly, Generator};
use crate::geometry::FrenetField;

/// Shape limits for a random polynomial.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_order: usize,
    pub max_terms: usize,
    /// Allow a nonzero constant term.
    pub constant_term: bool,
    /// Allow coefficients involving `G`.
    pub g_terms: bool,
}

impl PolyShape {
    pub fn new(max_degree: u32, max_order: usize, max_terms: usize) -> Self {
        Self {
            max_degree,
            max_order,
            max_terms,
            constant_term: false,
            g_terms: false,
        }
    }

    pub fn with_constant(mut self) -> Self {
        self.constant_term = true;
        self
    }

    pub fn with_g(mut self) -> Self {
        self.g_terms = true;
        self
    }
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> crate::diffalg::Rational {
    loop {
        let n = rng.gen_range(-4i64..=4);
        if n != 0 {
            let d = if rng.gen_bool(0.2) { 2 } else { 1 };
            return rational(n, d);
        }
    }
}

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R, g_terms: bool) -> Coefficient {
    let base = Coefficient::from_rational(random_rational(rng));
    if g_terms && rng.gen_bool(0.25) {
        &base + &Coefficient::monomial(random_rational(rng), 1)
    } else {
        base
    }
}

fn random_monomial<R: Rng + ?Sized>(rng: &mut R, shape: &PolyShape) -> DiffMonomial {
    let min_degree = if shape.constant_term { 0 } else { 1 };
    let degree = rng.gen_range(min_degree..=shape.max_degree.max(min_degree));
    DiffMonomial::from_pairs((0..degree).map(|_| (rng.gen_range(0..=shape.max_order), 1)))
}

/// A random polynomial within `shape`; may be zero after cancellation.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, generator: Generator, shape: &PolyShape) -> DiffPoly {
    let n = rng.gen_range(1..=shape.max_terms.max(1));
    DiffPoly::from_terms(
        generator,
        (0..n).map(|_| (random_monomial(rng, shape), random_coefficient(rng, shape.g_terms))),
    )
}

/// A random nonzero polynomial without constant term.
pub fn random_p0<R: Rng + ?Sized>(rng: &mut R, generator: Generator, shape: &PolyShape) -> DiffPoly {
    let shape = PolyShape {
        constant_term: false,
        ..*shape
    };
    loop {
        let p = random_poly(rng, generator, &shape);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random evolution field `cT + gN` with rational `c` and `g` within `shape`.
pub fn random_evolution_field<R: Rng + ?Sized>(rng: &mut R, shape: &PolyShape) -> FrenetField {
    let f = if rng.gen_bool(0.5) {
        Coefficient::from_rational(random_rational(rng))
    } else {
        Coefficient::zero()
    };
    let g = random_poly(rng, Generator::Tau, shape);
    FrenetField::evolution(f, g)
}
