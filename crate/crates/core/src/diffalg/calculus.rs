//! Derivations on the differential algebra: the total derivative, evolution
//! derivations and their commutator, the Euler operator and the formal
//! antiderivative.

use num_bigint::BigInt;

use super::coefficient::Rational;
use super::monomial::DiffMonomial;
use super::poly::DiffPoly;
use super::AlgebraError;

pub(crate) fn check_generators(a: &DiffPoly, b: &DiffPoly) -> Result<(), AlgebraError> {
    if a.generator() == b.generator() {
        Ok(())
    } else {
        Err(AlgebraError::GeneratorMismatch {
            left: a.generator(),
            right: b.generator(),
        })
    }
}

fn int(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `D = Σ u^(m+1) ∂/∂u^(m)`.
pub fn total_derivative(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero(p.generator());
    for (m, c) in p.terms() {
        for (order, e) in m.factors() {
            let raised = m
                .shifted(order, -1)
                .and_then(|x| x.shifted(order + 1, 1))
                .expect("factor is present");
            out.add_term(raised, c.scale(&int(e)));
        }
    }
    out
}

/// `D^n(p)`.
pub fn total_derivative_n(p: &DiffPoly, n: usize) -> DiffPoly {
    (0..n).fold(p.clone(), |acc, _| total_derivative(&acc))
}

/// The evolution derivation `∂_a(p) = Σ_m D^m(a) ∂p/∂u^(m)`.
pub fn evolution_derivation(a: &DiffPoly, p: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    check_generators(a, p)?;
    let mut out = DiffPoly::zero(p.generator());
    let Some(top) = p.order() else {
        return Ok(out);
    };
    let mut da = a.clone();
    for m in 0..=top {
        if m > 0 {
            da = total_derivative(&da);
        }
        let dp = p.partial(m);
        if !dp.is_zero() {
            out = &out + &(&da * &dp);
        }
    }
    Ok(out)
}

/// Fréchet derivative `a'[b] = d/dε|₀ a(u + εb) = ∂_b(a)`.
pub fn frechet(a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    evolution_derivation(b, a)
}

/// `[a, b] = ∂_a b − ∂_b a`.
pub fn commutator(a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    Ok(&evolution_derivation(a, b)? - &evolution_derivation(b, a)?)
}

/// Euler operator `E(p) = Σ_m (−D)^m ∂p/∂u^(m)`.
///
/// Vanishes exactly on total derivatives plus constants.
pub fn variational_derivative(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero(p.generator());
    let Some(top) = p.order() else {
        return out;
    };
    for m in 0..=top {
        let dp = p.partial(m);
        if dp.is_zero() {
            continue;
        }
        let term = total_derivative_n(&dp, m);
        out = if m % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Normalized formal antiderivative: the unique `q ∈ P_0` with `D(q) = p`.
///
/// Fails with [`AlgebraError::NotTotalDerivative`] when `p` has a constant
/// term or is not in the image of `D`.
pub fn antiderivative(p: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    if !p.constant_term().is_zero() || !variational_derivative(p).is_zero() {
        return Err(AlgebraError::NotTotalDerivative);
    }
    let mut residual = p.clone();
    let mut q = DiffPoly::zero(p.generator());
    while !residual.is_zero() {
        // Images of D are linear in the top-order variable u^(M); integrate
        // the coefficient of u^(M) in u^(M-1) and peel it off.
        let top = match residual.order() {
            Some(m) if m > 0 => m,
            _ => return Err(AlgebraError::NotTotalDerivative),
        };
        if residual.terms().any(|(m, _)| m.exponent(top) > 1) {
            return Err(AlgebraError::NotTotalDerivative);
        }
        let lead = residual.partial(top);
        let step = integrate_in(&lead, top - 1);
        residual = &residual - &total_derivative(&step);
        q = &q + &step;
    }
    Ok(q)
}

/// Ordinary antiderivative with respect to the single variable `u^(order)`.
fn integrate_in(p: &DiffPoly, order: usize) -> DiffPoly {
    DiffPoly::from_terms(
        p.generator(),
        p.terms().map(|(m, c)| {
            let e = m.exponent(order);
            let raised: DiffMonomial = m.shifted(order, 1).expect("raising never fails");
            (raised, c.scale(&Rational::new(1.into(), BigInt::from(e + 1))))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::{parse, Generator};

    fn p(s: &str) -> DiffPoly {
        parse(s, Generator::Tau).unwrap()
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&p("t")), p("t1"));
        assert_eq!(total_derivative(&p("t*t1")), p("t1^2 + t*t2"));
        assert_eq!(total_derivative(&p("t1 + t^2")), p("t2 + 2*t*t1"));
        assert!(total_derivative(&p("G + 3")).is_zero());
    }

    #[test]
    fn evolution_derivation_examples() {
        assert_eq!(evolution_derivation(&p("t^2"), &p("t")).unwrap(), p("t^2"));
        assert_eq!(evolution_derivation(&p("t1"), &p("t*t2")).unwrap(), p("t1*t2 + t*t3"));
        assert_eq!(evolution_derivation(&p("t^2"), &p("t2")).unwrap(), p("2*t1^2 + 2*t*t2"));
    }

    #[test]
    fn frechet_examples() {
        let burgers = p("t2 + 2*t*t1");
        assert_eq!(frechet(&burgers, &p("t")).unwrap(), p("t2 + 4*t*t1"));
        assert_eq!(frechet(&p("t"), &p("t3 + t")).unwrap(), p("t3 + t"));
        assert_eq!(frechet(&p("t^2"), &p("t1")).unwrap(), p("2*t*t1"));
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator(&p("t1"), &p("t*t2")).unwrap().is_zero());
        assert_eq!(
            commutator(&p("t2 + 2*t*t1"), &p("t^2")).unwrap(),
            p("-2*t1^2 - 2*t^2*t1")
        );
        let v2 = p("t3 + 3*t*t2 + 3*t1^2 + G*t1 + 3*t^2*t1");
        assert!(commutator(&p("t2 + 2*t*t1"), &v2).unwrap().is_zero());
    }

    #[test]
    fn generator_mismatch_is_reported() {
        let k = parse("k1", Generator::Kappa).unwrap();
        assert!(matches!(
            commutator(&p("t1"), &k),
            Err(AlgebraError::GeneratorMismatch { .. })
        ));
    }

    #[test]
    fn variational_derivative_examples() {
        assert!(variational_derivative(&p("t*t1")).is_zero());
        assert_eq!(variational_derivative(&p("t^2")), p("2*t"));
        assert_eq!(variational_derivative(&p("t1^2")), p("-2*t2"));
    }

    #[test]
    fn antiderivative_examples() {
        assert_eq!(antiderivative(&p("t*t1")).unwrap(), p("1/2*t^2"));
        assert_eq!(antiderivative(&p("t2 + 2*t*t1")).unwrap(), p("t1 + t^2"));
        assert_eq!(antiderivative(&p("t^2")), Err(AlgebraError::NotTotalDerivative));
        assert_eq!(antiderivative(&p("1 + t1")), Err(AlgebraError::NotTotalDerivative));
        assert!(antiderivative(&p("0")).unwrap().is_zero());
    }

    #[test]
    fn antiderivative_with_g_coefficients() {
        let q = p("G*t^2*t1 + t1*t3 - 1/3*t2^2");
        let dq = total_derivative(&q);
        assert_eq!(antiderivative(&dq).unwrap(), q);
    }
}
