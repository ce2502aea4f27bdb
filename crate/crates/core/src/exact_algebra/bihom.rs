use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::{One, Zero};

use super::{pow_int, AlgebraError, Rational};

/// Bihomogeneous form on `P^1 x P^1` of bidegree `(p, q)`.
///
/// The key `(i, j)` addresses the monomial `u0^(p-i) u1^i v0^(q-j) v1^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BihomForm {
    bidegree: (u32, u32),
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BihomForm {
    pub fn zero(p: u32, q: u32) -> Self {
        Self {
            bidegree: (p, q),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        p: u32,
        q: u32,
        terms: impl IntoIterator<Item = ((u32, u32), Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut form = Self::zero(p, q);
        for ((i, j), c) in terms {
            form.add_term(i, j, c)?;
        }
        Ok(form)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) -> Result<(), AlgebraError> {
        let (p, q) = self.bidegree;
        if i > p || j > q {
            return Err(AlgebraError::ExponentOutOfRange { i, j, p, q });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
        Ok(())
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.bidegree.0, self.bidegree.1);
        for ((i, j), a) in self.terms() {
            out.coeffs.insert((i, j), a * c);
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    /// Pull-back under the diagonal torus element
    /// `(u0, u1, v0, v1) -> (a u0, b u1, c v0, d v1)`.
    pub fn scale_vars(
        &self,
        a: &Rational,
        b: &Rational,
        c: &Rational,
        d: &Rational,
    ) -> Result<Self, AlgebraError> {
        let (p, q) = self.bidegree;
        let mut out = Self::zero(p, q);
        for ((i, j), coeff) in self.terms() {
            let factor = pow_int(a, (p - i) as i64)?
                * pow_int(b, i as i64)?
                * pow_int(c, (q - j) as i64)?
                * pow_int(d, j as i64)?;
            out.add_term(i, j, coeff * factor)?;
        }
        Ok(out)
    }

    /// Splits a form of bidegree `(p, 1)` as `A(u) v0 + D(u) v1`.
    pub fn split_linear(&self) -> Result<(BinaryForm, BinaryForm), AlgebraError> {
        let (p, q) = self.bidegree;
        if q != 1 {
            return Err(AlgebraError::Bidegree { expected: 1, found: q });
        }
        let mut a = BinaryForm::zero(p);
        let mut d = BinaryForm::zero(p);
        for ((i, j), c) in self.terms() {
            let target = if j == 0 { &mut a } else { &mut d };
            target.add_term(i, c.clone());
        }
        Ok((a, d))
    }
}

impl core::ops::Sub for &BihomForm {
    type Output = BihomForm;

    fn sub(self, rhs: &BihomForm) -> BihomForm {
        assert_eq!(self.bidegree, rhs.bidegree, "bidegree mismatch");
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, -c).expect("same bidegree");
        }
        out
    }
}

impl fmt::Display for BihomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.bidegree;
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms().enumerate() {
            let negative = c < &Rational::zero();
            let magnitude = if negative { -c } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = alloc::vec::Vec::new();
            for (name, e) in [("u0", p - i), ("u1", i), ("v0", q - j), ("v1", j)] {
                match e {
                    0 => {}
                    1 => factors.push(alloc::string::String::from(name)),
                    _ => factors.push(alloc::format!("{name}^{e}")),
                }
            }
            if !magnitude.is_one() || factors.is_empty() {
                factors.insert(0, alloc::format!("{magnitude}"));
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Binary form of a given degree in `(u0, u1)`; key `i` addresses
/// `u0^(deg-i) u1^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl BinaryForm {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut form = Self::zero(degree);
        for (i, c) in terms {
            form.add_term(i, c);
        }
        form
    }

    fn add_term(&mut self, i: u32, c: Rational) {
        debug_assert!(i <= self.degree);
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, i: u32) -> Rational {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some((i, c))` when the form is the single monomial `c u0^(deg-i) u1^i`.
    pub fn as_monomial(&self) -> Option<(u32, &Rational)> {
        if self.coeffs.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Vanishing order at `[0:1]`, i.e. the smallest power of `u0`.
    /// `None` for the zero form.
    pub fn order_at_u0_zero(&self) -> Option<u32> {
        self.coeffs.keys().next_back().map(|i| self.degree - i)
    }

    /// Vanishing order at `[1:0]`, i.e. the smallest power of `u1`.
    pub fn order_at_u1_zero(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }
}

/// Restriction of a bidegree `(p, 1)` form to the diagonal `[v0:v1] = [u0:u1]`,
/// giving a binary form of degree `p + 1`.
pub fn diagonal_restrict(form: &BihomForm) -> Result<BinaryForm, AlgebraError> {
    graph_restrict(form, 1)
}

/// Restriction of a bidegree `(p, 1)` form to the curve
/// `[v0:v1] = [u0^e : u1^e]`, a binary form of degree `p + e`.
pub fn graph_restrict(form: &BihomForm, e: u32) -> Result<BinaryForm, AlgebraError> {
    let (p, q) = form.bidegree();
    if q != 1 {
        return Err(AlgebraError::Bidegree { expected: 1, found: q });
    }
    // u0^(p-i) u1^i v0^(1-j) v1^j  ->  u0^(p+e-i-ej) u1^(i+ej)
    Ok(BinaryForm::from_terms(
        p + e,
        form.terms().map(|((i, j), c)| (i + e * j, c.clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;
    use alloc::string::ToString;

    #[test]
    fn diagonal_lies_on_itself() {
        // u1 v0 - u0 v1
        let delta = BihomForm::from_terms(1, 1, [((1, 0), rat(1)), ((0, 1), rat(-1))]).unwrap();
        assert!(diagonal_restrict(&delta).unwrap().is_zero());
    }

    #[test]
    fn generic_one_one_form() {
        let (a, b, c, d) = (rat(2), rat(3), rat(5), rat(7));
        let form = BihomForm::from_terms(
            1,
            1,
            [
                ((0, 0), a.clone()),
                ((0, 1), b.clone()),
                ((1, 0), c.clone()),
                ((1, 1), d.clone()),
            ],
        )
        .unwrap();
        let restricted = diagonal_restrict(&form).unwrap();
        assert_eq!(restricted.degree(), 2);
        assert_eq!(restricted.coeff(0), a);
        assert_eq!(restricted.coeff(1), b + c);
        assert_eq!(restricted.coeff(2), d);
    }

    #[test]
    fn wrong_bidegree_rejected() {
        let form = BihomForm::zero(2, 2);
        assert_eq!(
            diagonal_restrict(&form),
            Err(AlgebraError::Bidegree { expected: 1, found: 2 })
        );
    }

    #[test]
    fn out_of_range_exponent_rejected() {
        assert!(BihomForm::from_terms(1, 1, [((2, 0), rat(1))]).is_err());
    }

    #[test]
    fn display() {
        let form = BihomForm::from_terms(2, 1, [((1, 1), rat(1)), ((0, 0), rat(-1))]).unwrap();
        assert_eq!(form.to_string(), "-u0^2*v0 + u0*u1*v1");
    }
}
