//! Property-based invariants over random integer inputs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use zhat::asymptotic::{compare, least_convex_containing, AsymptoticNat};
use zhat::filters::filter_of_ideal;
use zhat::json::ElementJson;
use zhat::padic::{hensel_lift, PAdicRational, Polynomial, Zp};
use zhat::product::{division_witness, truth_set, Idempotent, Predicate, ProductElement, RingContext};
use zhat::sheaf::OpenSet;
use zhat::spectrum::{is_prime, Exponent, FinGenIdeal, Level, PrimeIdeal};

const PRIMES: [u64; 3] = [2, 3, 5];

fn ctx() -> RingContext {
    RingContext::new(&PRIMES, 16).unwrap()
}

/// Components biased towards multiples of small prime powers.
fn component() -> impl Strategy<Value = i64> {
    prop_oneof![
        Just(0i64),
        -1000i64..1000,
        (1i64..50, 0u32..6).prop_map(|(u, k)| u * 30i64.pow(k)),
        any::<i64>(),
    ]
}

fn element() -> impl Strategy<Value = ProductElement> {
    prop::collection::vec(component(), 3).prop_map(|v| ctx().element(v).unwrap())
}

fn nat() -> impl Strategy<Value = AsymptoticNat> {
    (prop::collection::vec(-10i64..=10, 0..5), 1i64..=10).prop_map(|(mut low, lead)| {
        low.push(lead);
        AsymptoticNat::new(low).unwrap()
    })
}

proptest! {
    #[test]
    fn product_ring_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), ctx().zero());
    }

    #[test]
    fn division_witness_identity(f in element()) {
        let w = division_witness(&f);
        let ex = Idempotent::new(&ctx(), w.locus.iter().copied()).unwrap().to_element();
        prop_assert_eq!(f.mul(&w.multiplier).unwrap(), ctx().one().sub(&ex).unwrap());
        prop_assert_eq!(f.is_unit(), truth_set(&f, Predicate::InMaximal).members.is_empty());
    }

    #[test]
    fn generated_ideals_contain_their_multiples(gens in prop::collection::vec(element(), 1..4), r in element()) {
        let ideal = FinGenIdeal::generated_by(&ctx(), &gens).unwrap();
        for g in &gens {
            prop_assert!(ideal.contains(g).unwrap());
            prop_assert!(ideal.contains(&r.mul(g).unwrap()).unwrap());
        }
        let sum = gens.iter().skip(1).try_fold(gens[0].clone(), |acc, g| acc.add(g)).unwrap();
        prop_assert!(ideal.contains(&sum).unwrap());
    }

    #[test]
    fn filter_sandwich(gens in prop::collection::vec(element(), 1..4)) {
        let ideal = FinGenIdeal::generated_by(&ctx(), &gens).unwrap();
        if let Ok(filter) = filter_of_ideal(&ideal) {
            prop_assert!(filter.lower_ideal(&ctx()).unwrap().is_subset_of(&ideal).unwrap());
            prop_assert!(ideal.is_subset_of(&filter.upper_ideal(&ctx()).unwrap()).unwrap());
        } else {
            prop_assert!(!ideal.is_proper());
        }
    }

    #[test]
    fn primes_have_one_nonzero_exponent(w in prop::collection::vec(prop_oneof![(0u32..4).prop_map(Exponent::Finite), Just(Exponent::Infinite)], 3)) {
        let ideal = FinGenIdeal::from_exponents(&ctx(), w.clone()).unwrap();
        let nonzero: Vec<usize> = (0..3).filter(|&i| w[i] != Exponent::Finite(0)).collect();
        let expected = match nonzero.as_slice() {
            [i] if w[*i] == Exponent::Finite(1) => Some(PrimeIdeal { prime: PRIMES[*i], level: Level::Maximal }),
            [i] if w[*i] == Exponent::Infinite => Some(PrimeIdeal { prime: PRIMES[*i], level: Level::Minimal }),
            _ => None,
        };
        prop_assert_eq!(is_prime(&ideal), expected);
    }

    #[test]
    fn openness_is_generization_closure(mask in 0u32..64) {
        let points: Vec<PrimeIdeal> = PRIMES
            .iter()
            .flat_map(|&p| [PrimeIdeal::minimal(p), PrimeIdeal::maximal(p)])
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x)
            .collect();
        let closed = points.iter().all(|x| points.contains(&PrimeIdeal::minimal(x.prime)));
        prop_assert_eq!(OpenSet::new(&ctx(), points).is_ok(), closed);
    }

    #[test]
    fn square_roots_lift(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), u in 1i64..10_000) {
        prop_assume!(u % p as i64 != 0);
        let zp = Zp::new(p, 12).unwrap();
        let square = zp.element(u * u);
        let poly = Polynomial::new(vec![-BigInt::from(u * u), BigInt::from(0), BigInt::from(1)]);
        let root = hensel_lift(&poly, &zp.element(u % p as i64)).unwrap();
        prop_assert_eq!(&root * &root, square);
    }

    #[test]
    fn fractions_clear_denominators(num in -10_000i64..10_000, den in 1i64..10_000) {
        let zp = Zp::new(3, 12).unwrap();
        let q = PAdicRational::from_fraction(&BigInt::from(num), &BigInt::from(den), &zp).unwrap();
        let back = q.checked_mul(&PAdicRational::from_int(&zp.element(den))).unwrap();
        prop_assert!(back.congruent_mod(&PAdicRational::from_int(&zp.element(num)), 12).unwrap());
    }

    #[test]
    fn asymptotic_order_is_dominance(x in nat(), y in nat(), z in nat()) {
        prop_assert_eq!(compare(&x, &y), x.eval(1000).cmp(&y.eval(1000)));
        prop_assert_eq!(compare(&x.add(&z).unwrap(), &y.add(&z).unwrap()), compare(&x, &y));
        let top = if compare(&x, &y) == Ordering::Less { &y } else { &x };
        prop_assert_eq!(least_convex_containing(&x.add(&y).unwrap()), least_convex_containing(top));
    }

    #[test]
    fn element_json_round_trips(f in element()) {
        let text = serde_json::to_string(&ElementJson::from(&f)).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_element().unwrap(), f);
    }
}
