use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::unipoly::forward_owned;
use super::{AlgebraError, LaurentPoly, Rational, UniPoly};

/// Sparse polynomial in a fixed number of variables. Exponents are signed,
/// so Laurent monomials are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(c: Rational, exps: Vec<i32>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable with index `index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self, AlgebraError> {
        Self::var_pow(nvars, index, 1)
    }

    /// `x_index^exp`.
    pub fn var_pow(nvars: usize, index: usize, exp: i32) -> Result<Self, AlgebraError> {
        if index >= nvars {
            return Err(AlgebraError::VariableOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index] = exp;
        Ok(Self::monomial(Rational::one(), exps))
    }

    /// Embeds a Laurent polynomial as a polynomial in variable `index`.
    pub fn from_laurent(nvars: usize, index: usize, p: &LaurentPoly) -> Result<Self, AlgebraError> {
        if index >= nvars {
            return Err(AlgebraError::VariableOutOfRange { index, nvars });
        }
        let mut out = Self::zero(nvars);
        for (e, c) in p.terms() {
            let mut exps = vec![0; nvars];
            exps[index] = e as i32;
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    pub fn from_unipoly(nvars: usize, index: usize, p: &UniPoly) -> Result<Self, AlgebraError> {
        Self::from_laurent(nvars, index, &LaurentPoly::from_unipoly(p))
    }

    fn add_term(&mut self, exps: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in self.terms() {
            out.add_term(e.to_vec(), a * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// `Some((c, exps))` for a single nonzero term.
    pub fn as_monomial(&self) -> Option<(&Rational, &[i32])> {
        if self.terms.len() == 1 {
            self.terms().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    /// Simultaneous substitution `x_i -> images[i]`. A negative power needs a
    /// monomial image so that it can be inverted.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::LengthMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, MultiPoly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgebraError::LengthMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut out = MultiPoly::zero(target);
        for (exps, c) in self.terms() {
            let mut term = MultiPoly::constant(target, c.clone());
            for (image, &e) in images.iter().zip(exps) {
                let factor = if e >= 0 {
                    image.pow(e as u32)
                } else {
                    image.inverse_monomial()?.pow(e.unsigned_abs())
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn inverse_monomial(&self) -> Result<MultiPoly, AlgebraError> {
        let (c, exps) = self.as_monomial().ok_or(AlgebraError::NotInvertible)?;
        Ok(MultiPoly::monomial(
            c.recip(),
            exps.iter().map(|e| -e).collect(),
        ))
    }

    /// Rewrites with the rule `x_index^k -> replacement` until every term has
    /// exponent below `k` in that variable. The replacement must itself have
    /// exponent below `k` in `x_index`, which guarantees termination.
    pub fn reduce_power(
        &self,
        index: usize,
        k: i32,
        replacement: &MultiPoly,
    ) -> Result<MultiPoly, AlgebraError> {
        if index >= self.nvars {
            return Err(AlgebraError::VariableOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        if k <= 0 || replacement.terms().any(|(e, _)| e[index] >= k) {
            return Err(AlgebraError::NonTerminatingRewrite);
        }
        let mut current = self.clone();
        loop {
            let mut done = MultiPoly::zero(self.nvars);
            let mut pending = MultiPoly::zero(self.nvars);
            for (exps, c) in current.terms() {
                if exps[index] >= k {
                    let mut rest = exps.to_vec();
                    rest[index] -= k;
                    pending = &pending + &(&MultiPoly::monomial(c.clone(), rest) * replacement);
                } else {
                    done.add_term(exps.to_vec(), c.clone());
                }
            }
            if pending.is_zero() {
                return Ok(done);
            }
            current = &done + &pending;
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.to_vec(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                let exps = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(exps, x * y);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

forward_owned!(MultiPoly, Add::add, Sub::sub, Mul::mul);
