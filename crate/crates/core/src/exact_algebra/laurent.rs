use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::unipoly::{forward_owned, write_terms};
use super::{pow_int, AlgebraError, Rational, UniPoly};

/// Sparse Laurent polynomial in `x`: exponent (possibly negative) to
/// coefficient. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_unipoly(p: &UniPoly) -> Self {
        Self::from_terms(p.terms().map(|(i, c)| (i as i64, c.clone())))
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn ord_at_zero(&self) -> Result<i64, AlgebraError> {
        self.terms
            .keys()
            .next()
            .copied()
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is even (the zero polynomial counts as even).
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// True when every exponent is odd.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|e| e % 2 != 0)
    }

    /// A single term `c x^e`, i.e. a unit of `k[x, x^-1]`.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a * c)))
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitution `x -> lambda * x`. Fails only for `lambda = 0` with a
    /// negative exponent present.
    pub fn scale_var(&self, lambda: &Rational) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c * pow_int(lambda, e)?);
        }
        Ok(out)
    }

    /// Substitution `x -> x^-1`.
    pub fn invert_var(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// The polynomial part, if no negative exponent occurs.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        if self.ord_at_zero().is_ok_and(|o| o < 0) {
            return None;
        }
        let top = self.max_exponent().unwrap_or(0).max(0) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); top + 1];
        for (e, c) in self.terms() {
            coeffs[e as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(num_traits::One::one()), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

forward_owned!(LaurentPoly, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn half_x_cubed_times_odd_laurent() {
        let f = lp(&[(-3, 2), (-1, 2)]);
        let sigma = &LaurentPoly::monomial(ratio(1, 2), 3) * &f;
        assert_eq!(sigma, lp(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn order_at_zero() {
        assert_eq!(lp(&[(-3, 2), (-1, 2)]).ord_at_zero(), Ok(-3));
        assert_eq!(lp(&[(0, 1), (2, 1)]).ord_at_zero(), Ok(0));
        assert_eq!(lp(&[(-4, 1)]).ord_at_zero(), Ok(-4));
        assert_eq!(LaurentPoly::zero().ord_at_zero(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = lp(&[(-1, 1), (2, 3)]);
        assert!((&f - &f).is_zero());
        assert_eq!((&f + &lp(&[(-1, -1)])).ord_at_zero(), Ok(2));
    }

    #[test]
    fn parity_and_inversion() {
        assert!(lp(&[(-3, 1), (-1, 4)]).is_odd());
        assert!(lp(&[(-4, 1), (0, 4)]).is_even());
        assert_eq!(lp(&[(-2, 5)]).invert_var(), lp(&[(2, 5)]));
        assert_eq!(lp(&[(-2, 1)]).scale_var(&rat(2)).unwrap(), lp(&[(-2, 1)]).scale(&ratio(1, 4)));
    }
}
