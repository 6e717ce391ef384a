//! Monomials in the jet variables `u, u', u'', ...`.

use std::cmp::Ordering;

/// A product `Π (u^(m))^(e_m)`, stored densely by derivative order.
///
/// The exponent vector never carries trailing zeros, so the unit monomial is
/// the empty vector and structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    exps: Vec<u32>,
}

impl DiffMonomial {
    /// The empty product.
    pub fn one() -> Self {
        Self::default()
    }

    /// The single jet variable `u^(order)`.
    pub fn var(order: usize) -> Self {
        let mut exps = vec![0; order + 1];
        exps[order] = 1;
        Self { exps }
    }

    /// Builds from `(order, exponent)` pairs; repeated orders accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps = Vec::new();
        for (m, e) in pairs {
            if exps.len() <= m {
                exps.resize(m + 1, 0);
            }
            exps[m] += e;
        }
        Self::trimmed(exps)
    }

    fn trimmed(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Self { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, order: usize) -> u32 {
        self.exps.get(order).copied().unwrap_or(0)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Highest derivative order present, `None` for the unit monomial.
    pub fn order(&self) -> Option<usize> {
        self.exps.len().checked_sub(1)
    }

    /// Non-zero `(order, exponent)` pairs in ascending order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(m, &e)| (m, e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (slot, e) in exps.iter_mut().zip(&short.exps) {
            *slot += e;
        }
        Self { exps }
    }

    /// Multiplies by `(u^(order))^exp` (with `exp` possibly negative) and
    /// returns `None` if an exponent would drop below zero.
    pub fn shifted(&self, order: usize, delta: i64) -> Option<Self> {
        let mut exps = self.exps.clone();
        if exps.len() <= order {
            exps.resize(order + 1, 0);
        }
        let e = exps[order] as i64 + delta;
        if e < 0 {
            return None;
        }
        exps[order] = e as u32;
        Some(Self::trimmed(exps))
    }

    /// `∂/∂u^(order)` as `(multiplier, monomial)`, or `None` when the
    /// variable is absent.
    pub fn partial(&self, order: usize) -> Option<(u32, Self)> {
        let e = self.exponent(order);
        if e == 0 {
            return None;
        }
        self.shifted(order, -1).map(|m| (e, m))
    }
}

impl Ord for DiffMonomial {
    /// Total degree first, then lexicographic on the exponent vector indexed
    /// by ascending derivative order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            (0..n)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let m = DiffMonomial::var(3).shifted(3, -1).unwrap();
        assert!(m.is_one());
        assert_eq!(m.order(), None);
    }

    #[test]
    fn ordering_is_degree_then_lex() {
        let u2 = DiffMonomial::var(2);
        let u_u1 = DiffMonomial::from_pairs([(0, 1), (1, 1)]);
        let u1 = DiffMonomial::var(1);
        assert!(u2 < u1);
        assert!(u1 < u_u1);
        assert!(DiffMonomial::one() < u2);
    }

    #[test]
    fn partial_derivative() {
        let m = DiffMonomial::from_pairs([(0, 2), (1, 1)]);
        let (k, rest) = m.partial(0).unwrap();
        assert_eq!(k, 2);
        assert_eq!(rest, DiffMonomial::from_pairs([(0, 1), (1, 1)]));
        assert!(m.partial(2).is_none());
    }
}
