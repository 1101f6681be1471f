mod common;

use std::collections::BTreeMap;

use fdsg::algebra::{
    coproduct, coproduct_left_iterated, coproduct_right_iterated, convolve, duality_check, integer, poly_mul,
    Polynomial,
};
use fdsg::analytic::{li_composition, zeta};
use fdsg::ddl::{ddl_mul, fig1_system};
use fdsg::element::{Monomial, parse_composition};
use fdsg::qshuffle::{diamond, ldiag_up, quasi_shuffle, stuffle, LetterAlgebra, Product};
use fdsg::semigroup::{decompose, mul};
use fdsg::{builtin, Element};
use proptest::prelude::*;

use common::*;

fn composition(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..5, 0..=max_len)
}

fn bicomposition(max_len: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..3, 0u32..3).prop_filter("nonzero pair", |&p| p != (0, 0)), 0..=max_len)
}

fn monoword(max_len: usize) -> impl Strategy<Value = Vec<Monomial>> {
    let letter = prop::collection::btree_map(1u32..4, 1i64..3, 1..3).prop_map(Monomial::from_exponents);
    prop::collection::vec(letter, 0..=max_len)
}

fn weight(e: &Element) -> u32 {
    match e {
        Element::Composition(c) => c.iter().sum(),
        _ => unreachable!(),
    }
}

fn small_poly(elems: Vec<Element>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::sample::select(elems), -3i64..4), 0..4)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(e, c)| (e, integer(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stuffle_grading_and_strata(s in composition(4), t in composition(4)) {
        let p = stuffle(&s, &t).unwrap();
        let w: u32 = s.iter().chain(&t).sum();
        let top_len = s.len() + t.len();
        let mut top = BTreeMap::new();
        for (e, c) in p.iter() {
            prop_assert_eq!(weight(e), w);
            let len = e.word_len().unwrap();
            prop_assert!(len >= s.len().max(t.len()) && len <= top_len);
            if len == top_len {
                top.insert(e.clone(), c.clone());
            }
        }
        let free: BTreeMap<Element, _> = quasi_shuffle(&s, &t, &LetterAlgebra::Free)
            .into_iter()
            .map(|(w, c)| (Element::Composition(w), integer(i64::try_from(c).unwrap())))
            .collect();
        prop_assert_eq!(top, free);
    }

    #[test]
    fn stuffle_matches_oracle(s in composition(3), t in composition(3)) {
        let (u, v) = (Element::Composition(s.clone()), Element::Composition(t.clone()));
        prop_assert_eq!(counts(&stuffle(&s, &t).unwrap()), oracle_product(Product::Stuffle, &u, &v));
    }

    #[test]
    fn diamond_projects_to_stuffle(a in bicomposition(3), b in bicomposition(3)) {
        let d = diamond(&a, &b).unwrap();
        let total = a.iter().chain(&b).fold((0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
        let mut projected = Polynomial::zero();
        for (e, c) in d.iter() {
            let Element::Bicomposition(pairs) = e else { unreachable!() };
            prop_assert_eq!(pairs.iter().fold((0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1)), total);
            if pairs.iter().all(|p| p.0 > 0) {
                projected.add_term(Element::Composition(pairs.iter().map(|p| p.0).collect()), c.clone());
            }
        }
        if a.iter().chain(&b).all(|p| p.0 > 0) {
            let firsts = |x: &[(u32, u32)]| x.iter().map(|p| p.0).collect::<Vec<_>>();
            prop_assert_eq!(projected, stuffle(&firsts(&a), &firsts(&b)).unwrap());
        }
    }

    #[test]
    fn ldiag_conserves_multidegree(u in monoword(3), v in monoword(3)) {
        let degree = |w: &[Monomial]| w.iter().fold(Monomial::one(), |acc, m| acc.mul(m));
        let want = degree(&u).mul(&degree(&v));
        for (e, _) in ldiag_up(&u, &v).unwrap().iter() {
            let Element::MonoWord(w) = e else { unreachable!() };
            prop_assert_eq!(degree(w), want.clone());
        }
    }

    #[test]
    fn printed_elements_reparse(s in composition(5), b in bicomposition(4), m in monoword(3)) {
        for (p, e) in [
            (Product::Stuffle, Element::Composition(s)),
            (Product::Diamond, Element::Bicomposition(b)),
            (Product::Ldiag, Element::MonoWord(m)),
        ] {
            if e.word_len() == Some(0) {
                continue;
            }
            prop_assert_eq!(p.parse_word(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn nat_coproduct_is_coassociative(n in 1u64..40) {
        let s = builtin("nat-plus").unwrap();
        let m = Element::Nat(n);
        prop_assert_eq!(coproduct_left_iterated(&*s, &m).unwrap(), coproduct_right_iterated(&*s, &m).unwrap());
        prop_assert_eq!(decompose(&*s, &m).unwrap().len() as u64, n - 1);
    }

    #[test]
    fn monomial_coproduct_counts(a in 0i64..5, b in 0i64..5) {
        let s = builtin("mon").unwrap();
        let m = Element::Monomial(Monomial::from_exponents([(1, a), (2, b)]));
        let delta = coproduct(&*s, &Polynomial::basis(m)).unwrap();
        prop_assert_eq!(delta.len() as i64, (a + 1) * (b + 1));
    }

    #[test]
    fn duality_on_polynomials((n, p, q, r) in (1usize..10).prop_flat_map(|n| {
        let elems = builtin(&format!("zmul-{n}")).unwrap().elements().unwrap();
        (Just(n), small_poly(elems.clone()), small_poly(elems.clone()), small_poly(elems))
    })) {
        let s = builtin(&format!("zmul-{n}")).unwrap();
        prop_assert!(duality_check(&*s, &p, &q, &r).unwrap().holds());
        prop_assert_eq!(convolve(&*s, &p, &q).unwrap(), poly_mul(&*s, &p, &q).unwrap());
    }

    #[test]
    fn fig1_law_is_associative(x in (0u64..6, 0u64..6), y in (0u64..6, 0u64..6), z in (0u64..6, 0u64..6)) {
        let sys = fig1_system();
        let el = |(k, d): (u64, u64)| sys.parse_element(&format!("({k}|{})", k + d)).unwrap();
        let (x, y, z) = (el(x), el(y), el(z));
        let l = ddl_mul(&sys, &ddl_mul(&sys, &x, &y).unwrap(), &z).unwrap();
        let r = ddl_mul(&sys, &x, &ddl_mul(&sys, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn finite_law_matches_oracle(n in 1usize..13, a in 0usize..12, b in 0usize..12) {
        let name = format!("zmul-{n}");
        let s = builtin(&name).unwrap();
        let (a, b) = ((a % n).to_string(), (b % n).to_string());
        let got = mul(&*s, &s.parse_element(&a).unwrap(), &s.parse_element(&b).unwrap()).unwrap();
        prop_assert_eq!(got.to_string(), named_law(&name)(&a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn li_truncation_bound_holds(s in composition(3).prop_filter("nonempty", |s| !s.is_empty()), z in 0.05f64..0.8) {
        let coarse = li_composition(&s, z, 30).unwrap();
        let fine = li_composition(&s, z, 400).unwrap();
        prop_assert!((coarse.value - fine.value).abs() <= coarse.error_bound + fine.error_bound + 1e-13);
    }

    #[test]
    fn zeta_tail_bound_holds(rest in composition(2), first in 2u32..4) {
        let mut s = vec![first];
        s.extend(rest);
        let coarse = zeta(&s, 200).unwrap();
        let fine = zeta(&s, 20_000).unwrap();
        prop_assert!((coarse.value - fine.value).abs() <= coarse.error_bound + 1e-12);
        prop_assert!(fine.error_bound <= coarse.error_bound);
    }
}

#[test]
fn stuffle_small_examples() {
    let parse = |s: &str| parse_composition(s).unwrap();
    assert_eq!(stuffle(&parse("2"), &parse("3")).unwrap().to_string(), "(2,3) + (3,2) + (5)");
    let p = stuffle(&parse("1"), &parse("1,1")).unwrap();
    let oracle = oracle_product(Product::Stuffle, &Element::Composition(vec![1]), &Element::Composition(vec![1, 1]));
    assert_eq!(counts(&p), oracle);
    assert_eq!(p.to_string(), "3*(1,1,1) + (1,2) + (2,1)");
}
