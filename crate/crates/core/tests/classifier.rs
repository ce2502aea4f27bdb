use a1fib_core::exact_algebra::{rat, ratio, LaurentPoly, Rational, UniPoly};
use a1fib_core::fibration_classifier::{
    canonical_invariant, equivalent, mu2_normalize, Epsilon, SlsParams, Verdict,
};
use num_traits::Zero;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(0)), (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))]
}

fn sls(max_l: u32) -> impl Strategy<Value = SlsParams> {
    (1..=max_l).prop_flat_map(|l| {
        let slots = ((l - 1) / 2) as usize;
        prop::collection::vec(coefficient(), slots).prop_map(move |cs| {
            let mut coeffs = vec![rat(0); 2 * slots + 1];
            coeffs[0] = rat(1);
            for (i, c) in cs.into_iter().enumerate() {
                coeffs[2 * (i + 1)] = c;
            }
            SlsParams::new(l, UniPoly::from_coeffs(coeffs)).unwrap()
        })
    })
}

/// `a_i -> a_i / mu^i` on the coefficient of `x^(2i)`.
fn scaled(p: &SlsParams, mu: &Rational) -> SlsParams {
    let coeffs = p
        .s()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(e, c)| c / num_traits::pow::Pow::pow(mu, (e / 2) as u64))
        .collect();
    SlsParams::new(p.l(), UniPoly::from_coeffs(coeffs)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scaling_gives_equivalent_pairs(p in sls(9), n in 1i64..6, d in 1i64..6, neg in any::<bool>()) {
        let mu = ratio(if neg { -n } else { n }, d);
        let q = scaled(&p, &mu);
        let verdict = equivalent(&p, &q);
        prop_assert!(verdict.is_equivalent());
        prop_assert_eq!(canonical_invariant(&p), canonical_invariant(&q));
        if let Verdict::Equivalent(w) = verdict {
            if let Some(found) = w.mu {
                // s_q(lambda x) = s_p(x) with found = lambda^2.
                prop_assert_eq!(scaled(&q, &found.recip()), p.clone());
            }
        }
    }

    #[test]
    fn invariant_decides_equivalence(p in sls(9), q in sls(9)) {
        prop_assert_eq!(
            equivalent(&p, &q).is_equivalent(),
            canonical_invariant(&p) == canonical_invariant(&q)
        );
    }

    #[test]
    fn equivalence_relation(p in sls(7), q in sls(7), r in sls(7)) {
        prop_assert!(equivalent(&p, &p).is_equivalent());
        prop_assert_eq!(equivalent(&p, &q).is_equivalent(), equivalent(&q, &p).is_equivalent());
        if equivalent(&p, &q).is_equivalent() && equivalent(&q, &r).is_equivalent() {
            prop_assert!(equivalent(&p, &r).is_equivalent());
        }
    }

    #[test]
    fn normalization_round_trips(
        l in 1i64..9,
        coeffs in prop::collection::vec(coefficient(), 9),
        lead in 1i64..5,
        constant in coefficient(),
    ) {
        let parity = l % 2;
        let mut terms: Vec<(i64, Rational)> = coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (-(k as i64) - 1, c))
            .filter(|(e, c)| -*e < l && e.rem_euclid(2) == parity && !c.is_zero())
            .collect();
        terms.push((-l, rat(lead)));
        terms.push((0, constant));
        let f = LaurentPoly::from_terms(terms);
        let eps = if parity == 1 { Epsilon::Plus } else { Epsilon::Minus };
        let n = mu2_normalize(&f, eps).unwrap();
        prop_assert_eq!(n.reconstruct(), f);
        prop_assert_eq!(n.params.l() as i64, l);
    }
}
