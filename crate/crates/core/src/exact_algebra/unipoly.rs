use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{pow_int, rat, Rational};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// True when only even powers of `x` occur.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(i, _)| i % 2 == 0)
    }

    /// Nonzero terms as `(degree, coefficient)`, increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitution `x -> lambda * x`: the coefficient of `x^i` becomes
    /// `lambda^i c_i`.
    pub fn scale_var(&self, lambda: &Rational) -> Self {
        let mut power = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= lambda;
        }
        Self::from_coeffs(out)
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * other) + &UniPoly::constant(c.clone()))
    }

    /// The part of degree strictly below `degree`.
    pub fn truncate_below(&self, degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(degree).cloned().collect())
    }

    /// Divides by `x^k`, dropping the terms of degree below `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Coefficient of `x^i` after scaling by `mu^(i/2)`; used for even
    /// polynomials where only `lambda^2` matters.
    pub fn scale_even_var(&self, mu: &Rational) -> Option<Self> {
        if !self.is_even() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                out.push(Rational::zero());
            } else {
                out.push(c * pow_int(mu, (i / 2) as i64).ok()?);
            }
        }
        Some(Self::from_coeffs(out))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(i, c)| (i as i64, c)), "x")
    }
}

/// Writes `c0 + c1 x + c2 x^2 ...`; shared with Laurent polynomials.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rational)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let negative = c < &Rational::zero();
        let magnitude = if negative { -c } else { c.clone() };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let unit = magnitude.is_one();
        match e {
            0 => write!(f, "{magnitude}")?,
            _ => {
                if !unit {
                    write!(f, "{magnitude}*")?;
                }
                if e == 1 {
                    f.write_str(var)?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::ratio;
    use alloc::string::ToString;

    #[test]
    fn substitution_scales_coefficients() {
        let p = UniPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(p.scale_var(&rat(2)), UniPoly::from_i64s(&[1, 0, 4]));
    }

    #[test]
    fn difference_of_squares() {
        let a = UniPoly::from_i64s(&[1, 1]);
        let b = UniPoly::from_i64s(&[-1, 1]);
        assert_eq!(&a * &b, UniPoly::from_i64s(&[-1, 0, 1]));
    }

    #[test]
    fn trimming_and_degree() {
        let p = UniPoly::from_i64s(&[3, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(UniPoly::from_i64s(&[0, 0]).degree(), None);
        assert!(UniPoly::from_i64s(&[2, 0, 1]).is_monic());
    }

    #[test]
    fn composition() {
        // (x^2 + 1) o (x - 1) = x^2 - 2x + 2
        let p = UniPoly::from_i64s(&[1, 0, 1]);
        let q = UniPoly::from_i64s(&[-1, 1]);
        assert_eq!(p.compose(&q), UniPoly::from_i64s(&[2, -2, 1]));
    }

    #[test]
    fn evaluation_and_display() {
        let p = UniPoly::from_coeffs(alloc::vec![rat(1), rat(0), ratio(-3, 2)]);
        assert_eq!(p.eval(&rat(2)), rat(-5));
        assert_eq!(p.to_string(), "1 - 3/2*x^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn even_scaling() {
        let s = UniPoly::from_i64s(&[1, 0, 5]);
        assert_eq!(s.scale_even_var(&ratio(1, 5)).unwrap(), UniPoly::from_i64s(&[1, 0, 1]));
        assert!(UniPoly::from_i64s(&[1, 1]).scale_even_var(&rat(2)).is_none());
    }
}
