//! Classification of the surfaces `S_{l,s}`: `x^l z = y^2 - s(x)^2` modulo
//! the involution `(x, y, z) -> (-x, -y, (-1)^l z)`, with `s` even of
//! degree below `l` and `s(0) = 1`.
//!
//! Two parameter sets are equivalent iff `s_2(lambda x) = s_1(x)` for some
//! `lambda` over the algebraic closure. Since `s` is even only `mu =
//! lambda^2` matters, and the coefficient of `x^(2i)` scales by `mu^i`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exact_algebra::{
    exact_root, pow_int, power_consistency, rat, AlgebraError, LaurentPoly, MultiPoly, Rational,
    UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifierError {
    #[error("pole order {0} must be at least 1")]
    PoleOrder(i64),
    #[error("s has an odd term of degree {0}")]
    OddTerm(usize),
    #[error("s(0) must be 1")]
    ConstantTerm,
    #[error("deg s = {degree} must be below l = {l}")]
    DegreeTooLarge { degree: usize, l: u32 },
    #[error("gluing function has a positive power of x")]
    PositiveExponent,
    #[error("gluing function is constant")]
    ConstantGluing,
    #[error("gluing function parity does not match epsilon = {0}")]
    Parity(Epsilon),
    #[error("family needs l >= 5, got {0}")]
    FamilyTooSmall(u32),
    #[error("expected {expected} coordinates per sample point, found {found}")]
    SampleShape { expected: usize, found: usize },
    #[error("sample points {0} and {1} give equivalent surfaces")]
    Collision(usize, usize),
    #[error("expected degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("degree parameter {0} out of range")]
    DegreeParameter(u32),
    #[error("gluing datum does not match the {0} model")]
    DatumMismatch(&'static str),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sign by which the involution acts on the fiber coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    /// The sign attached to pole order `l`: `(-1)^(1-l)`.
    pub fn for_pole_order(l: u32) -> Self {
        if l % 2 == 1 {
            Epsilon::Plus
        } else {
            Epsilon::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+1",
            Epsilon::Minus => "-1",
        })
    }
}

/// Validated parameters `(l, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlsParams {
    l: u32,
    s: UniPoly,
}

impl SlsParams {
    pub fn new(l: u32, s: UniPoly) -> Result<Self, ClassifierError> {
        if l == 0 {
            return Err(ClassifierError::PoleOrder(0));
        }
        if s.coeff(0) != Rational::one() {
            return Err(ClassifierError::ConstantTerm);
        }
        if let Some((i, _)) = s.terms().find(|(i, _)| i % 2 == 1) {
            return Err(ClassifierError::OddTerm(i));
        }
        let degree = s.degree().unwrap_or(0);
        if degree >= l as usize {
            return Err(ClassifierError::DegreeTooLarge { degree, l });
        }
        Ok(Self { l, s })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn s(&self) -> &UniPoly {
        &self.s
    }

    /// `(i, a_i)` for the nonzero coefficients of `x^(2i)` with `i >= 1`.
    pub fn weighted_terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.s.terms().filter(|(e, _)| *e > 0).map(|(e, c)| ((e / 2) as u32, c))
    }

    /// Even exponents carrying a nonzero coefficient of `s - 1`.
    pub fn support(&self) -> BTreeSet<u32> {
        self.s.terms().filter(|(e, _)| *e > 0).map(|(e, _)| e as u32).collect()
    }
}

impl fmt::Display for SlsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l = {}, s = {})", self.l, self.s)
    }
}

/// Output of [`mu2_normalize`]: `f = 2 x^-l lambda (s + x^l r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mu2Normal {
    pub params: SlsParams,
    pub lambda: Rational,
    pub r: UniPoly,
}

impl Mu2Normal {
    pub fn reconstruct(&self) -> LaurentPoly {
        let l = self.params.l as i64;
        let sum = &LaurentPoly::from_unipoly(&self.params.s)
            + &LaurentPoly::from_unipoly(&self.r).shift(l);
        sum.shift(-l).scale(&(rat(2) * &self.lambda))
    }
}

/// Writes a gluing function `f` in `k[x^-1] \ k` of the parity forced by
/// `epsilon` as `2 x^-l lambda (s(x) + x^l r(x))`.
pub fn mu2_normalize(f: &LaurentPoly, epsilon: Epsilon) -> Result<Mu2Normal, ClassifierError> {
    if f.max_exponent().is_some_and(|e| e > 0) {
        return Err(ClassifierError::PositiveExponent);
    }
    let ord = f.ord_at_zero().unwrap_or(0);
    if ord >= 0 {
        return Err(ClassifierError::ConstantGluing);
    }
    let wanted = match epsilon {
        Epsilon::Plus => 1,
        Epsilon::Minus => 0,
    };
    if f.terms().any(|(e, _)| e != 0 && e.rem_euclid(2) != wanted) {
        return Err(ClassifierError::Parity(epsilon));
    }
    let l = -ord;
    let sigma = f.shift(l).scale(&Rational::new(1.into(), 2.into()));
    let sigma = sigma.to_unipoly().expect("non-negative exponents after shift");
    let lambda = sigma.coeff(0);
    let normalized = sigma.scale(&lambda.recip());
    let s = normalized.truncate_below(l as usize);
    let r = normalized.shift_down(l as usize);
    let out = Mu2Normal {
        params: SlsParams::new(l as u32, s)?,
        lambda,
        r,
    };
    if out.reconstruct() != *f {
        return Err(ClassifierError::IdentityFailed(String::from("mu2 reconstruction")));
    }
    Ok(out)
}

/// Why two parameter sets are not equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    PoleOrder,
    Support,
    Consistency,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::PoleOrder => "length",
            Obstruction::Support => "support",
            Obstruction::Consistency => "consistency",
        })
    }
}

/// Data certifying `s_right(lambda x) = s_left(x)` with `mu = lambda^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWitness {
    /// Common support of `s - 1`.
    pub support: BTreeSet<u32>,
    /// gcd of the halved exponents; 0 for empty support.
    pub g: i64,
    /// `mu^g`.
    pub t: Rational,
    /// A rational `mu`, when one exists.
    pub mu: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(EquivWitness),
    NotEquivalent(Obstruction),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }
}

/// Decides equivalence over the algebraic closure without extracting roots.
pub fn equivalent(left: &SlsParams, right: &SlsParams) -> Verdict {
    if left.l != right.l {
        return Verdict::NotEquivalent(Obstruction::PoleOrder);
    }
    let support = left.support();
    if support != right.support() {
        return Verdict::NotEquivalent(Obstruction::Support);
    }
    if support.is_empty() {
        return Verdict::Equivalent(EquivWitness {
            support,
            g: 0,
            t: Rational::one(),
            mu: Some(Rational::one()),
        });
    }
    let (weights, ratios): (Vec<i64>, Vec<Rational>) = left
        .weighted_terms()
        .zip(right.weighted_terms())
        .map(|((i, a), (_, b))| (i as i64, a / b))
        .unzip();
    let check = power_consistency(&weights, &ratios).expect("positive weights, nonzero ratios");
    if !check.consistent {
        return Verdict::NotEquivalent(Obstruction::Consistency);
    }
    let mu = exact_root(&check.t, check.g as u32).filter(|mu| {
        weights
            .iter()
            .zip(&ratios)
            .all(|(&w, r)| pow_int(mu, w).is_ok_and(|p| &p == r))
    });
    Verdict::Equivalent(EquivWitness {
        support,
        g: check.g,
        t: check.t,
        mu,
    })
}

/// Complete invariant of the scaling action: equal invariants (with equal
/// `l`) iff equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalInvariant {
    pub l: u32,
    pub support: Vec<u32>,
    pub normalized: Vec<Rational>,
}

pub fn canonical_invariant(p: &SlsParams) -> CanonicalInvariant {
    let (weights, coeffs): (Vec<i64>, Vec<Rational>) =
        p.weighted_terms().map(|(i, a)| (i as i64, a.clone())).unzip();
    let normalized = if weights.is_empty() {
        Vec::new()
    } else {
        let check = power_consistency(&weights, &coeffs).expect("positive weights, nonzero coefficients");
        weights
            .iter()
            .zip(&coeffs)
            .map(|(&w, a)| a / pow_int(&check.t, w / check.g).expect("t is nonzero"))
            .collect()
    };
    CanonicalInvariant {
        l: p.l,
        support: p.support().into_iter().collect(),
        normalized,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassCount {
    Finite(u64),
    Infinite { moduli_dim: u64 },
}

/// Number of equivalence classes for pole order `l`, summed over the
/// possible supports of `s - 1`: a support of size `n` contributes one class
/// when `n <= 1` and an `(n - 1)`-dimensional family otherwise.
pub fn count_classes(l: i64) -> Result<ClassCount, ClassifierError> {
    if l < 1 {
        return Err(ClassifierError::PoleOrder(l));
    }
    let k = ((l - 1) / 2) as u64;
    let mut finite = 0u64;
    let mut dim = 0u64;
    for n in 0..=k {
        if n <= 1 {
            finite += binomial(k, n);
        } else {
            dim = dim.max(n - 1);
        }
    }
    Ok(if dim == 0 {
        ClassCount::Finite(finite)
    } else {
        ClassCount::Infinite { moduli_dim: dim }
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of coordinates `a_2, ..., a_m`, `m = floor((l - 3) / 2)`, of the
/// explicit family for pole order `l`.
pub fn family_coordinates(l: u32) -> usize {
    ((l.saturating_sub(3)) / 2).saturating_sub(1) as usize
}

/// `s = 1 + x^2 + sum a_i x^(2i)` for each sample point `(a_2, ..., a_m)`;
/// rejects samples containing two equivalent members.
pub fn moduli_family(l: u32, sample: &[Vec<Rational>]) -> Result<Vec<SlsParams>, ClassifierError> {
    if l < 5 {
        return Err(ClassifierError::FamilyTooSmall(l));
    }
    let n = family_coordinates(l);
    let mut out: Vec<SlsParams> = Vec::with_capacity(sample.len());
    let mut seen = alloc::collections::BTreeMap::new();
    for (index, point) in sample.iter().enumerate() {
        if point.len() != n {
            return Err(ClassifierError::SampleShape {
                expected: n,
                found: point.len(),
            });
        }
        let mut coeffs = alloc::vec![Rational::zero(); 2 * n + 3];
        coeffs[0] = Rational::one();
        coeffs[2] = Rational::one();
        for (i, a) in point.iter().enumerate() {
            coeffs[2 * (i + 2)] = a.clone();
        }
        let params = SlsParams::new(l, UniPoly::from_coeffs(coeffs))?;
        if let Some(&first) = seen.get(&canonical_invariant(&params)) {
            return Err(ClassifierError::Collision(first, index));
        }
        seen.insert(canonical_invariant(&params), index);
        out.push(params);
    }
    Ok(out)
}

/// `(x, y) -> (lambda x + mu, nu y + r(x))` taking `y = x^(d+1)` to
/// `y = p(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalTransform {
    pub lambda: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub r: UniPoly,
}

pub fn maximal_normal_form(d: u32, p: &UniPoly) -> Result<MaximalTransform, ClassifierError> {
    let expected = d as usize + 1;
    if p.degree() != Some(expected) {
        return Err(ClassifierError::WrongDegree {
            expected,
            found: p.degree(),
        });
    }
    let nu = p.leading().expect("nonzero").clone();
    let target = UniPoly::monomial(Rational::one(), expected);
    let r = p - &target.scale(&nu);
    if (p - &r).scale(&nu.recip()) != target {
        return Err(ClassifierError::IdentityFailed(String::from("maximal normal form")));
    }
    Ok(MaximalTransform {
        lambda: Rational::one(),
        mu: Rational::zero(),
        nu,
        r,
    })
}

/// Transition `v' = alpha v + beta` between two affine charts of a fibration
/// over the punctured line, and the sign of the involution if there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingDatum {
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
    pub epsilon: Option<Epsilon>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GluingKind {
    Sls(SlsParams),
    Reduced { d: u32 },
    Wd { d: u32 },
}

impl GluingKind {
    fn name(&self) -> &'static str {
        match self {
            GluingKind::Sls(_) => "sls",
            GluingKind::Reduced { .. } => "reduced",
            GluingKind::Wd { .. } => "wd",
        }
    }
}

/// The gluing datum of each model.
pub fn gluing_datum(kind: &GluingKind) -> Result<GluingDatum, ClassifierError> {
    Ok(match kind {
        GluingKind::Sls(p) => GluingDatum {
            alpha: LaurentPoly::constant(Rational::one()),
            beta: LaurentPoly::from_unipoly(&p.s).shift(-(p.l as i64)).scale(&rat(2)),
            epsilon: Some(Epsilon::for_pole_order(p.l)),
        },
        GluingKind::Reduced { d } => {
            if *d < 2 {
                return Err(ClassifierError::DegreeParameter(*d));
            }
            let d = *d as i64;
            GluingDatum {
                alpha: LaurentPoly::monomial(Rational::one(), 2 - d),
                beta: LaurentPoly::monomial(Rational::one(), 1 - d),
                epsilon: None,
            }
        }
        GluingKind::Wd { d } => {
            if *d < 2 {
                return Err(ClassifierError::DegreeParameter(*d));
            }
            let d = *d as i64;
            GluingDatum {
                alpha: LaurentPoly::monomial(Rational::one(), d),
                beta: LaurentPoly::monomial(-Rational::one(), d - 1),
                epsilon: None,
            }
        }
    })
}

/// The identities verified by [`gluing_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub kind: &'static str,
    pub identities: Vec<String>,
}

struct Checker {
    passed: Vec<String>,
}

impl Checker {
    fn zero(&mut self, name: &str, value: &MultiPoly) -> Result<(), ClassifierError> {
        if !value.is_zero() {
            return Err(ClassifierError::IdentityFailed(format!("{name}: residue {value:?}")));
        }
        self.passed.push(String::from(name));
        Ok(())
    }
}

/// Verifies the datum against its model and checks the model's identities
/// symbolically.
pub fn gluing_check(datum: &GluingDatum, kind: &GluingKind) -> Result<GluingReport, ClassifierError> {
    if *datum != gluing_datum(kind)? || datum.alpha.is_zero() {
        return Err(ClassifierError::DatumMismatch(kind.name()));
    }
    let mut c = Checker { passed: Vec::new() };
    match kind {
        GluingKind::Sls(p) => check_sls(&mut c, p, datum)?,
        GluingKind::Reduced { .. } => check_affine(&mut c, datum)?,
        GluingKind::Wd { d } => {
            check_affine(&mut c, datum)?;
            check_wd_relations(&mut c, *d)?;
        }
    }
    Ok(GluingReport {
        kind: kind.name(),
        identities: c.passed,
    })
}

/// Variables `(x, y, z)` with `x^l z = y^2 - s^2`, charts
/// `u+ = x^-l (y - s)` and `u- = x^-l (y + s)`.
fn check_sls(c: &mut Checker, p: &SlsParams, datum: &GluingDatum) -> Result<(), ClassifierError> {
    const N: usize = 3;
    let l = p.l as i32;
    let x_l = MultiPoly::var_pow(N, 0, l)?;
    let x_neg_l = MultiPoly::var_pow(N, 0, -l)?;
    let y = MultiPoly::var(N, 1)?;
    let z = MultiPoly::var(N, 2)?;
    let s = MultiPoly::from_unipoly(N, 0, &p.s)?;
    let u_plus = &x_neg_l * &(&y - &s);
    let u_minus = &x_neg_l * &(&y + &s);
    let y_squared = &(&x_l * &z) + &s.pow(2);

    let product = (&u_plus * &u_minus).reduce_power(1, 2, &y_squared)?;
    c.zero("u+ u- = x^-l z", &(&product - &(&x_neg_l * &z)))?;
    let two_s = s.scale(&rat(2));
    c.zero("u+ - u- = -2 x^-l s", &(&(&u_plus - &u_minus) + &(&x_neg_l * &two_s)))?;
    let alpha = MultiPoly::from_laurent(N, 0, &datum.alpha)?;
    let beta = MultiPoly::from_laurent(N, 0, &datum.beta)?;
    c.zero("u- = alpha u+ + beta", &(&u_minus - &(&(&alpha * &u_plus) + &beta)))?;

    let sign = rat(if (l - 1) % 2 == 0 { 1 } else { -1 });
    let involution = [
        MultiPoly::var(N, 0)?.scale(&rat(-1)),
        y.scale(&rat(-1)),
        z.scale(&rat(if l % 2 == 0 { 1 } else { -1 })),
    ];
    let moved = u_plus.substitute(&involution)?;
    let eps = rat(datum.epsilon.map_or(1, Epsilon::value));
    if eps != sign {
        return Err(ClassifierError::DatumMismatch("sls"));
    }
    c.zero("involution sends u+ to epsilon u-", &(&moved - &u_minus.scale(&eps)))?;
    let surface = &(&x_l * &z) - &(&y.pow(2) - &s.pow(2));
    c.zero("involution preserves the surface", &(&surface.substitute(&involution)? - &surface))
}

/// Charts `(x, v)` and `(x', v')` with `v' = alpha v + beta`; checks that
/// the transition composed with its inverse is the identity both ways.
fn check_affine(c: &mut Checker, datum: &GluingDatum) -> Result<(), ClassifierError> {
    const N: usize = 2;
    let (a_exp, a_coeff) = datum
        .alpha
        .as_monomial()
        .ok_or_else(|| ClassifierError::IdentityFailed(String::from("alpha is not a unit")))?;
    let alpha = MultiPoly::from_laurent(N, 0, &datum.alpha)?;
    let alpha_inv = MultiPoly::monomial(a_coeff.recip(), alloc::vec![-(a_exp as i32), 0]);
    let beta = MultiPoly::from_laurent(N, 0, &datum.beta)?;
    let x = MultiPoly::var(N, 0)?;
    let v = MultiPoly::var(N, 1)?;
    let forward = &(&alpha * &v) + &beta;
    let backward = &alpha_inv * &(&v - &beta);
    let there_and_back = backward.substitute(&[x.clone(), forward.clone()])?;
    c.zero("inverse after transition", &(&there_and_back - &v))?;
    let back_and_there = forward.substitute(&[x, backward])?;
    c.zero("transition after inverse", &(&back_and_there - &v))?;
    Ok(())
}

/// Variables `x1..x4` (indices 0..3) with relations
/// `R1 = x1 x3 - x2 (x2 + 1)`, `R2 = x2^(d-2) x4 - x3^(d-1)`,
/// `R3 = x1^(d-2) x4 - (x2 + 1)^(d-2) x3`.
fn check_wd_relations(c: &mut Checker, d: u32) -> Result<(), ClassifierError> {
    const N: usize = 4;
    let x1 = MultiPoly::var(N, 0)?;
    let x2 = MultiPoly::var(N, 1)?;
    let x3 = MultiPoly::var(N, 2)?;
    let x4 = MultiPoly::var(N, 3)?;
    let x2p1 = &x2 + &MultiPoly::one(N);
    let r1 = &(&x1 * &x3) - &(&x2 * &x2p1);
    let r3 = &(&x1.pow(d - 2) * &x4) - &(&x2p1.pow(d - 2) * &x3);
    let image = &(&x1.pow(d - 1) * &x4) - &(&x2 * &x2p1.pow(d - 1));
    let combination = &(&x1 * &r3) + &(&x2p1.pow(d - 2) * &r1);
    c.zero("x1^(d-1) x4 - x2 (x2+1)^(d-1) lies in the ideal", &(&image - &combination))?;

    // Chart change (w, x4) -> (1/w, w^d x4 - w^(d-1)) and its inverse.
    const M: usize = 2;
    let d = d as i32;
    let w = MultiPoly::var(M, 0)?;
    let w_inv = MultiPoly::var_pow(M, 0, -1)?;
    let t = MultiPoly::var(M, 1)?;
    let forward = [
        w_inv.clone(),
        &(&MultiPoly::var_pow(M, 0, d)? * &t) - &MultiPoly::var_pow(M, 0, d - 1)?,
    ];
    let backward = [
        w_inv,
        &(&MultiPoly::var_pow(M, 0, d)? * &t) + &w,
    ];
    let round = |first: &[MultiPoly; 2], second: &[MultiPoly; 2]| -> Result<[MultiPoly; 2], ClassifierError> {
        Ok([first[0].substitute(second)?, first[1].substitute(second)?])
    };
    let identity = [w.clone(), t.clone()];
    let composed = round(&backward, &forward)?;
    c.zero("inverse after chart change (base)", &(&composed[0] - &identity[0]))?;
    c.zero("inverse after chart change (fiber)", &(&composed[1] - &identity[1]))?;
    let composed = round(&forward, &backward)?;
    c.zero("chart change after inverse (base)", &(&composed[0] - &identity[0]))?;
    c.zero("chart change after inverse (fiber)", &(&composed[1] - &identity[1]))
}
