use std::sync::OnceLock;

use proptest::prelude::*;
use ply_core::bases::{enumerate_bhat, enumerate_shat, from_t, phi, phi_inv, to_shat, to_t, from_shat};
use ply_core::lincomb::rat;
use ply_core::ply::{check_trace, is_b, nf, normalize, normalize_with, Strategy as Order, DEFAULT_FUEL};
use ply_core::syntax::{eval, parse};
use ply_core::{AElem, Alphabet, LinComb, MagmaTerm, ShatElem};

fn al() -> Alphabet {
    Alphabet::first(2)
}

fn pool() -> &'static [MagmaTerm] {
    static POOL: OnceLock<Vec<MagmaTerm>> = OnceLock::new();
    POOL.get_or_init(|| (1..=4).flat_map(|n| enumerate_bhat(n, &al())).collect())
}

fn shat_pool() -> &'static [ShatElem] {
    static POOL: OnceLock<Vec<ShatElem>> = OnceLock::new();
    POOL.get_or_init(|| (1..=4).flat_map(|n| enumerate_shat(n, &al())).collect())
}

fn term() -> impl Strategy<Value = MagmaTerm> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn elem() -> impl Strategy<Value = AElem> {
    prop::collection::vec((term(), -3i64..=3), 1..4)
        .prop_map(|ts| ts.into_iter().map(|(t, c)| (t, rat(c, 1))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_certified(x in elem()) {
        let out = normalize(&x).unwrap();
        prop_assert!(out.output.keys().all(is_b));
        prop_assert!(check_trace(&x, &out.output, &out.trace).is_ok());
    }

    #[test]
    fn normalization_is_idempotent(x in elem()) {
        let y = nf(&x).unwrap();
        prop_assert_eq!(nf(&from_t(&y)).unwrap(), y);
    }

    #[test]
    fn normalization_is_linear(x in elem(), y in elem(), c in -4i64..=4) {
        let lhs = nf(&(x.clone() + y.scale(&rat(c, 1)))).unwrap();
        let rhs = nf(&x).unwrap() + nf(&y).unwrap().scale(&rat(c, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_agree(x in elem()) {
        let a = normalize_with(&x, Order::LargestFirst, DEFAULT_FUEL).unwrap().output;
        let b = normalize_with(&x, Order::SmallestFirst, DEFAULT_FUEL).unwrap().output;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn basis_changes_invert(x in elem()) {
        prop_assert_eq!(from_shat(&to_shat(&x)), x.clone());
        prop_assert_eq!(from_t(&to_t(&x)), x);
    }

    #[test]
    fn phi_is_a_bijection(i in 0..shat_pool().len()) {
        let s = &shat_pool()[i];
        prop_assert_eq!(&phi_inv(&phi(s)), s);
    }

    #[test]
    fn printed_terms_parse_back(t in term()) {
        let v = eval(&parse(&t.to_string(), &al()).unwrap(), None).unwrap().into_a().unwrap();
        prop_assert_eq!(v, LinComb::basis(t));
    }
}
