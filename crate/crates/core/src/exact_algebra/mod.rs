//! Exact scalar and polynomial arithmetic.
//!
//! All coefficients live in [`Rational`]. Polynomials in one variable are
//! dense ([`UniPoly`]); Laurent polynomials ([`LaurentPoly`]), bihomogeneous
//! forms ([`BihomForm`]) and multivariate polynomials ([`MultiPoly`]) are
//! sparse.

mod bihom;
mod integers;
mod laurent;
mod linear;
mod multipoly;
mod unipoly;

pub use bihom::{diagonal_restrict, graph_restrict, BihomForm, BinaryForm};
pub use integers::{bezout, power_consistency, Bezout, PowerConsistency};
pub use laurent::LaurentPoly;
pub use linear::{solve_linear, LinearSolution};
pub use multipoly::MultiPoly;
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("the zero Laurent polynomial has no order at 0")]
    ZeroPolynomial,
    #[error("empty input")]
    EmptyInput,
    #[error("expected positive integers, found {0}")]
    NonPositive(i64),
    #[error("expected bidegree (_, {expected}), found (_, {found})")]
    Bidegree { expected: u32, found: u32 },
    #[error("monomial exponent ({i}, {j}) outside bidegree ({p}, {q})")]
    ExponentOutOfRange { i: u32, j: u32, p: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("negative power of a non-monomial substitution")]
    NotInvertible,
    #[error("rewrite rule does not lower the degree in the rewritten variable")]
    NonTerminatingRewrite,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer exponent; negative exponents invert.
pub fn pow_int(base: &Rational, exp: i64) -> Result<Rational, AlgebraError> {
    if exp < 0 {
        if base.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let magnitude = exp.unsigned_abs();
        Ok(num_traits::pow::Pow::pow(base.recip(), magnitude))
    } else {
        Ok(num_traits::pow::Pow::pow(base, exp as u64))
    }
}

/// Exact `n`-th root over the rationals, if one exists. For even `n` the
/// non-negative root is returned.
pub fn exact_root(value: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if n == 1 || value.is_zero() {
        return Some(value.clone());
    }
    if value.is_negative() && n % 2 == 0 {
        return None;
    }
    let root_int = |k: &BigInt| -> Option<BigInt> {
        let magnitude = k.abs();
        let r = magnitude.nth_root(n);
        if num_traits::pow::Pow::pow(&r, n) == magnitude {
            Some(if k.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    let num = root_int(value.numer())?;
    let den = root_int(value.denom())?;
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_int(&ratio(2, 3), 3).unwrap(), ratio(8, 27));
        assert_eq!(pow_int(&ratio(2, 3), -2).unwrap(), ratio(9, 4));
        assert_eq!(pow_int(&rat(0), 0).unwrap(), rat(1));
        assert_eq!(pow_int(&rat(0), -1), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(exact_root(&ratio(-8, 27), 3), Some(ratio(-2, 3)));
        assert_eq!(exact_root(&ratio(4, 9), 2), Some(ratio(2, 3)));
        assert_eq!(exact_root(&rat(2), 2), None);
        assert_eq!(exact_root(&rat(-4), 2), None);
    }
}
