use alloc::vec;
use alloc::vec::Vec;

use super::{pow_int, AlgebraError, Rational};

/// `g = gcd(values)` together with coefficients `c` such that
/// `sum(c[i] * values[i]) == g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub g: i64,
    pub coeffs: Vec<i64>,
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Extended gcd of a nonempty sequence of positive integers.
pub fn bezout(values: &[i64]) -> Result<Bezout, AlgebraError> {
    let (&first, rest) = values.split_first().ok_or(AlgebraError::EmptyInput)?;
    if let Some(&bad) = values.iter().find(|&&v| v <= 0) {
        return Err(AlgebraError::NonPositive(bad));
    }
    let mut g = first;
    let mut coeffs = vec![1i64];
    for &v in rest {
        let (next, x, y) = egcd(g, v);
        for c in &mut coeffs {
            *c *= x;
        }
        coeffs.push(y);
        g = next;
    }
    Ok(Bezout { g, coeffs })
}

/// Outcome of asking whether some `mu` in the algebraic closure satisfies
/// `mu^weights[j] == targets[j]` for all `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerConsistency {
    /// `gcd` of the weights.
    pub g: i64,
    /// `prod(targets[j]^c[j])` for the Bezout coefficients `c`; equals
    /// `mu^g` for any solution `mu`.
    pub t: Rational,
    pub consistent: bool,
}

/// Decides solvability of `mu^w_j = r_j` without extracting roots: a
/// solution exists iff `t^(w_j / g) == r_j` for every `j`.
pub fn power_consistency(
    weights: &[i64],
    targets: &[Rational],
) -> Result<PowerConsistency, AlgebraError> {
    if weights.len() != targets.len() {
        return Err(AlgebraError::LengthMismatch {
            left: weights.len(),
            right: targets.len(),
        });
    }
    let Bezout { g, coeffs } = bezout(weights)?;
    let mut t = Rational::from_integer(1.into());
    for (r, &c) in targets.iter().zip(&coeffs) {
        t *= pow_int(r, c)?;
    }
    let mut consistent = true;
    for (r, &w) in targets.iter().zip(weights) {
        if &pow_int(&t, w / g)? != r {
            consistent = false;
            break;
        }
    }
    Ok(PowerConsistency { g, t, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio};

    fn check(values: &[i64]) -> Bezout {
        let b = bezout(values).unwrap();
        let sum: i64 = b.coeffs.iter().zip(values).map(|(c, v)| c * v).sum();
        assert_eq!(sum, b.g);
        b
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(check(&[2, 4]), Bezout { g: 2, coeffs: vec![1, 0] });
        assert_eq!(check(&[4, 6]), Bezout { g: 2, coeffs: vec![-1, 1] });
        assert_eq!(check(&[6, 10, 15]).g, 1);
        assert_eq!(check(&[7]).coeffs, vec![1]);
    }

    #[test]
    fn bezout_errors() {
        assert_eq!(bezout(&[]), Err(AlgebraError::EmptyInput));
        assert_eq!(bezout(&[3, 0]), Err(AlgebraError::NonPositive(0)));
    }

    #[test]
    fn consistency() {
        // mu = 2: mu^1 = 2, mu^2 = 4
        let ok = power_consistency(&[1, 2], &[rat(2), rat(4)]).unwrap();
        assert!(ok.consistent);
        assert_eq!(ok.t, rat(2));
        // mu^1 = 1 forces mu^2 = 1, not 1/2
        let bad = power_consistency(&[1, 2], &[rat(1), ratio(1, 2)]).unwrap();
        assert!(!bad.consistent);
        // mu^2 = 2, mu^4 = 4 is solvable over the closure (mu = sqrt 2)
        let irr = power_consistency(&[2, 4], &[rat(2), rat(4)]).unwrap();
        assert!(irr.consistent);
        assert_eq!((irr.g, irr.t), (2, rat(2)));
    }
}
