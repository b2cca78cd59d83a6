//! Randomized structural invariants: ring axioms, gamma round-trips,
//! palindromic-unimodal closure under products, and schema round-trips.

use num_bigint::BigInt;
use proptest::prelude::*;

use eulerian_core::poly::{self, vars, Monomial, MultiPoly, Var};

fn arb_var() -> impl Strategy<Value = Var> {
    prop_oneof![Just(vars::T), Just(vars::Q), Just(vars::P)]
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((arb_var(), 0u16..4, arb_var(), 0u16..3), -9i64..=9), 0..6).prop_map(
        |terms| {
            let mut out = MultiPoly::zero();
            for ((v1, e1, v2, e2), c) in terms {
                let m = Monomial::var_pow(v1, e1).times(&Monomial::var_pow(v2, e2));
                out.add_term(m, BigInt::from(c));
            }
            out
        },
    )
}

/// Random γ-positive polynomial: non-negative gamma coefficients guarantee
/// palindromicity and unimodality.
fn arb_gamma_positive() -> impl Strategy<Value = (MultiPoly, usize)> {
    (2usize..7, proptest::collection::vec(0i64..5, 4)).prop_map(|(m, gs)| {
        let one_plus_t = MultiPoly::parse("1+t").unwrap();
        let mut poly = one_plus_t.pow(m as u32); // γ_0 = 1 keeps it non-zero
        for (k, g) in gs.iter().enumerate().take(m / 2) {
            let k = k + 1;
            let basis =
                MultiPoly::var_pow(vars::T, k as u16).mul(&one_plus_t.pow((m - 2 * k) as u32));
            poly = poly.add(&MultiPoly::int(*g).mul(&basis));
        }
        (poly, m)
    })
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in (arb_poly(), arb_poly(), arb_poly())) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), MultiPoly::zero());
        prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
    }

    #[test]
    fn gamma_round_trip((poly, m) in arb_gamma_positive()) {
        let gammas = poly.gamma_expand(vars::T, m).unwrap();
        let one_plus_t = MultiPoly::parse("1+t").unwrap();
        let mut back = MultiPoly::zero();
        for (k, g) in gammas.iter().enumerate() {
            let basis = MultiPoly::var_pow(vars::T, k as u16)
                .mul(&one_plus_t.pow((m - 2 * k) as u32));
            back = back.add(&g.mul(&basis));
        }
        prop_assert_eq!(back, poly);
    }

    #[test]
    fn palindromic_unimodal_product_closure(
        (p, mp) in arb_gamma_positive(),
        (q, mq) in arb_gamma_positive(),
    ) {
        // both factors are palindromic and unimodal by construction
        prop_assert!(p.is_palindromic(vars::T, mp));
        prop_assert!(p.is_unimodal().unwrap());
        prop_assert!(
            poly::product_palunimodal_closure_check(&p, &q, mp, mq).unwrap()
        );
    }

    #[test]
    fn json_schema_round_trip(a in arb_poly()) {
        let s = a.to_json_string();
        let back = MultiPoly::from_json_str(&s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn eval_is_ring_morphism((a, b) in (arb_poly(), arb_poly()), v in -3i64..=3) {
        let value = BigInt::from(v);
        let eval = |x: &MultiPoly| x.eval_at(vars::Q, &value);
        prop_assert_eq!(eval(&a.add(&b)), eval(&a).add(&eval(&b)));
        prop_assert_eq!(eval(&a.mul(&b)), eval(&a).mul(&eval(&b)));
    }
}
