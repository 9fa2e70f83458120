//! Random elements for the verification suites, biased towards the edge
//! cases that matter: zero, units, and multiples of small powers of `p`.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use crate::padic::{PAdicInt, PAdicRational, Zp};
use crate::product::{ProductElement, RingContext};
use crate::spectrum::{Exponent, FinGenIdeal};

pub fn padic<R: Rng + ?Sized>(rng: &mut R, ring: &Zp) -> PAdicInt {
    let uniform = |rng: &mut R| ring.from_residue(rng.gen_biguint_below(ring.modulus()));
    match rng.gen_range(0..10) {
        0 => ring.zero(),
        1 => ring.one(),
        2 | 3 => unit(rng, ring),
        4 | 5 => {
            let k = rng.gen_range(1..=ring.precision().min(4));
            let u = unit(rng, ring);
            &u * &ring.element(num_bigint::BigInt::from(ring.prime()).pow(k))
        }
        6 => ring.element(rng.gen_range(-20i64..=20)),
        _ => uniform(rng),
    }
}

pub fn unit<R: Rng + ?Sized>(rng: &mut R, ring: &Zp) -> PAdicInt {
    loop {
        let a = ring.from_residue(rng.gen_biguint_below(ring.modulus()));
        if a.is_unit() {
            return a;
        }
    }
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, context: &RingContext) -> ProductElement {
    context.from_fn(|zp| padic(rng, zp))
}

/// Elements whose components are 0, a unit, or `p` times a unit, evenly.
pub fn typed_element<R: Rng + ?Sized>(rng: &mut R, context: &RingContext) -> ProductElement {
    context.from_fn(|zp| match rng.gen_range(0..3) {
        0 => zp.zero(),
        1 => unit(rng, zp),
        _ => &unit(rng, zp) * &zp.element(zp.prime()),
    })
}

pub fn rational<R: Rng + ?Sized>(rng: &mut R, ring: &Zp) -> PAdicRational {
    if rng.gen_range(0..8) == 0 {
        return PAdicRational::zero(ring);
    }
    let e = rng.gen_range(-4i64..=4);
    PAdicRational::from_parts(e, &unit(rng, ring)).expect("units have valuation zero")
}

/// Random generator lists, `1..=max_generators` long.
pub fn generators<R: Rng + ?Sized>(rng: &mut R, context: &RingContext, max_generators: usize) -> Vec<ProductElement> {
    let n = rng.gen_range(1..=max_generators);
    (0..n).map(|_| element(rng, context)).collect()
}

/// A random proper ideal in normal form.
pub fn proper_ideal<R: Rng + ?Sized>(rng: &mut R, context: &RingContext, max_generators: usize) -> FinGenIdeal {
    loop {
        let gens = generators(rng, context, max_generators);
        let ideal = FinGenIdeal::generated_by(context, &gens).expect("sampled in context");
        if ideal.is_proper() {
            return ideal;
        }
    }
}

/// A random member of `ideal`: `p^{w(p)}` times a random element, zero where
/// `w(p)` is infinite.
pub fn ideal_member<R: Rng + ?Sized>(rng: &mut R, ideal: &FinGenIdeal) -> ProductElement {
    let context = ideal.context();
    let comps = context
        .rings()
        .iter()
        .zip(ideal.exponents())
        .map(|(zp, e)| match e {
            Exponent::Finite(k) => {
                let pk = zp.from_residue(BigUint::from(zp.prime()).pow(*k) % zp.modulus());
                &pk * &padic(rng, zp)
            }
            Exponent::Infinite => zp.zero(),
        })
        .collect();
    context
        .from_components(comps)
        .expect("components built from context rings")
}
