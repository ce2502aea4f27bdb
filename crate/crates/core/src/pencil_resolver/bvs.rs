//! Sections of `P^1 x P^1` with prescribed contact at `q = ([0:1],[0:1])`
//! and the torus action on their parameters.
//!
//! Affine coordinates near `q` are `t = u0/u1` and `w = v0/v1`. The curve
//! `w = t^e` (for `e = 1` the diagonal) is written `Delta_e`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::PencilError;
use crate::exact_algebra::{
    graph_restrict, power_consistency, BihomForm, BinaryForm, Rational, UniPoly,
};

/// `u0 P v1 - (u0^(m+1) + u1 P) v0` where `P` is the degree-`m`
/// homogenization of the monic polynomial `p` in `u1/u0`.
pub fn bvs_curve(m: u32, p: &UniPoly) -> Result<BihomForm, PencilError> {
    if m == 0 {
        return Err(PencilError::InvalidParameter(format!("m = {m} must be positive")));
    }
    if p.degree() != Some(m as usize) {
        return Err(PencilError::WrongDegree {
            expected: m as usize,
            found: p.degree(),
        });
    }
    if !p.is_monic() {
        return Err(PencilError::NotMonic);
    }
    let mut form = BihomForm::zero(m + 1, 1);
    form.add_term(0, 0, -Rational::one())?;
    for (k, c) in p.terms() {
        let k = k as u32;
        form.add_term(k, 1, c.clone())?;
        form.add_term(k + 1, 0, -c.clone())?;
    }
    Ok(form)
}

/// Vanishing order at `[0:1]` of a form restricted to `Delta_e`. The
/// restriction must be a single monomial.
fn contact_with_graph(form: &BihomForm, e: u32) -> Result<(u32, BinaryForm), PencilError> {
    let restricted = graph_restrict(form, e)?;
    match restricted.as_monomial() {
        Some((i, _)) => Ok((restricted.degree() - i, restricted)),
        None => Err(PencilError::ContactNotMonomial(format!("{form}"))),
    }
}

/// Contact order of `bvs_curve(m, p)` with the diagonal at `q`.
pub fn bvs_contact_order(m: u32, p: &UniPoly) -> Result<u32, PencilError> {
    contact_with_graph(&bvs_curve(m, p)?, 1).map(|(order, _)| order)
}

fn check_shape(e: u32, m: u32) -> Result<(), PencilError> {
    if e == 0 || m == 0 {
        return Err(PencilError::InvalidParameter(format!(
            "e = {e} and m = {m} must be positive"
        )));
    }
    Ok(())
}

/// The curve `(t^(e+m) + a(t)) w - t^e a(t) = 0`, `a = sum a_k t^k` with
/// `k < m`, homogenized to bidegree `(e + m, 1)`. It has contact `2e + m`
/// with `Delta_e` at `q`. Parameters are taken modulo the pencil member
/// `t^m (w - t^e)`.
pub fn complete_type_form(e: u32, m: u32, params: &[Rational]) -> Result<BihomForm, PencilError> {
    check_shape(e, m)?;
    if params.len() != m as usize {
        return Err(PencilError::ParameterCount {
            expected: m as usize,
            found: params.len(),
        });
    }
    if params[0].is_zero() {
        return Err(PencilError::NotPrime);
    }
    let p = e + m;
    // t^k = u0^k u1^(p-k): key index p - k.
    let mut form = BihomForm::zero(p, 1);
    form.add_term(0, 0, Rational::one())?;
    for (k, a) in params.iter().enumerate() {
        let k = k as u32;
        form.add_term(p - k, 0, a.clone())?;
        form.add_term(p - k - e, 1, -a.clone())?;
    }
    Ok(form)
}

/// Recovers the parameters of a complete-type form, up to scalar.
pub fn complete_type_params(e: u32, m: u32, form: &BihomForm) -> Result<Vec<Rational>, PencilError> {
    check_shape(e, m)?;
    let p = e + m;
    if form.bidegree() != (p, 1) {
        return Err(PencilError::NotCompleteType(format!(
            "bidegree {:?}, expected ({p}, 1)",
            form.bidegree()
        )));
    }
    let (a, _) = form.split_linear()?;
    let lead = a.coeff(0);
    if lead.is_zero() {
        return Err(PencilError::NotCompleteType(format!("no t^{p} term in {form}")));
    }
    let params: Vec<Rational> = (0..m).map(|k| a.coeff(p - k) / &lead).collect();
    let rebuilt = complete_type_form(e, m, &params)?;
    if rebuilt.scale(&lead) != *form {
        return Err(PencilError::NotCompleteType(format!("{form}")));
    }
    Ok(params)
}

/// Pulls the parametrized curve back under
/// `([u0:u1],[v0:v1]) -> ([lambda u0 : u1], [v0 : lambda^-e v1])`, which
/// fixes `Delta_e`, and re-extracts its parameters.
pub fn torus_orbit_map(
    e: u32,
    m: u32,
    params: &[Rational],
    lambda: &Rational,
) -> Result<Vec<Rational>, PencilError> {
    if lambda.is_zero() {
        return Err(PencilError::ZeroScalar);
    }
    let form = complete_type_form(e, m, params)?;
    let one = Rational::one();
    let inv_e = crate::exact_algebra::pow_int(lambda, -(e as i64))?;
    let pulled = form.scale_vars(lambda, &one, &one, &inv_e)?;
    let (order, _) = contact_with_graph(&pulled, e)?;
    debug_assert_eq!(order, 2 * e + m);
    complete_type_params(e, m, &pulled)
}

/// Whether two parameter points lie in one orbit of the torus action,
/// decided without extracting roots: the action scales `a_k` by
/// `mu^(e+m-k)`.
pub fn same_torus_orbit(
    e: u32,
    m: u32,
    left: &[Rational],
    right: &[Rational],
) -> Result<bool, PencilError> {
    complete_type_form(e, m, left)?;
    complete_type_form(e, m, right)?;
    let mut weights = Vec::new();
    let mut targets = Vec::new();
    for (k, (a, b)) in left.iter().zip(right).enumerate() {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                weights.push((e + m) as i64 - k as i64);
                targets.push(b / a);
            }
            _ => return Ok(false),
        }
    }
    Ok(power_consistency(&weights, &targets)?.consistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn bvs_small_case() {
        let form = bvs_curve(1, &UniPoly::x()).unwrap();
        assert_eq!(form.bidegree(), (2, 1));
        assert_eq!(form.to_string(), "-u0^2*v0 + u0*u1*v1 - u1^2*v0");
        assert_eq!(bvs_contact_order(1, &UniPoly::x()).unwrap(), 3);
        assert_eq!(bvs_contact_order(5, &UniPoly::from_i64s(&[1, 2, 0, 0, 0, 1])).unwrap(), 7);
    }

    #[test]
    fn bvs_errors() {
        assert_eq!(bvs_curve(2, &UniPoly::from_i64s(&[1, 2])), Err(PencilError::WrongDegree { expected: 2, found: Some(1) }));
        assert_eq!(bvs_curve(1, &UniPoly::from_i64s(&[1, 2])), Err(PencilError::NotMonic));
        assert!(bvs_curve(0, &UniPoly::one()).is_err());
    }

    #[test]
    fn complete_type_contact() {
        for e in 1..4 {
            for m in 1..4 {
                let params: Vec<_> = (1..=m as i64).map(rat).collect();
                let form = complete_type_form(e, m, &params).unwrap();
                let (order, _) = contact_with_graph(&form, e).unwrap();
                assert_eq!(order, 2 * e + m);
                assert_eq!(complete_type_params(e, m, &form.scale(&rat(3))).unwrap(), params);
            }
        }
    }

    #[test]
    fn orbit_map_is_an_action() {
        let params = vec![rat(1), ratio(-2, 3), rat(5)];
        assert_eq!(torus_orbit_map(2, 3, &params, &rat(1)).unwrap(), params);
        let l1 = ratio(2, 5);
        let l2 = rat(-3);
        let step = torus_orbit_map(2, 3, &params, &l1).unwrap();
        let twice = torus_orbit_map(2, 3, &step, &l2).unwrap();
        assert_eq!(twice, torus_orbit_map(2, 3, &params, &(&l1 * &l2)).unwrap());
        assert!(same_torus_orbit(2, 3, &params, &twice).unwrap());
        assert!(!same_torus_orbit(2, 3, &params, &[rat(1), rat(1), rat(1)]).unwrap());
    }

    #[test]
    fn degenerate_parameters() {
        assert_eq!(complete_type_form(1, 2, &[rat(0), rat(1)]), Err(PencilError::NotPrime));
        assert_eq!(torus_orbit_map(1, 1, &[rat(1)], &rat(0)), Err(PencilError::ZeroScalar));
    }
}
