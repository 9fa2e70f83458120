//! Suites for the asymptotic fragment and for inputs that must be rejected.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Checks, SuiteInput};
use crate::asymptotic::{
    archimedean_class, archimedean_equivalent, compare, delta_of, least_convex_containing, prime_of, AsymptoticNat,
    ConvexShape, ConvexSubsemigroup, SymbolicPrime, ValuationValue,
};
use crate::error::{Error, Result};
use crate::filters::{filter_of_ideal, ideal_filter};
use crate::padic::{hensel_lift, Polynomial};
use crate::product::RingContext;
use crate::quotient::{localize, quotient, ComponentKind};
use crate::sheaf::{enumerate_opens, OpenSet};
use crate::spectrum::{is_prime, spec_enumerate, Exponent, FinGenIdeal, PrimeIdeal};

/// Where evaluation decides eventual dominance for the sampled coefficient
/// range: leading terms outweigh everything below them.
const FAR: i64 = 1_000;
/// Far enough for comparisons against multiples up to `MAX_MULTIPLE`.
const FARTHER: i64 = 1_000_000;
const MAX_MULTIPLE: i128 = 1_000;

fn sample_nat(rng: &mut ChaCha8Rng) -> AsymptoticNat {
    if rng.gen_ratio(1, 20) {
        return AsymptoticNat::zero();
    }
    let degree = rng.gen_range(0..=4usize);
    let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-10..=10)).collect();
    coeffs.push(rng.gen_range(1..=10));
    if degree == 0 {
        coeffs[0] = coeffs[0].abs().max(1);
    }
    AsymptoticNat::new(coeffs).expect("leading coefficient is positive")
}

fn kinds() -> Vec<ConvexSubsemigroup> {
    let mut out = vec![ConvexSubsemigroup::Zero, ConvexSubsemigroup::Standard];
    out.extend((1..=5).map(ConvexSubsemigroup::DegreeAtMost));
    out.push(ConvexSubsemigroup::All);
    out
}

fn primes() -> Vec<SymbolicPrime> {
    let mut out = vec![SymbolicPrime::Maximal];
    out.extend((1..=6).map(SymbolicPrime::DegreeAtLeast));
    out.push(SymbolicPrime::Zero);
    out
}

/// `y ≤ m·x` for some `m ≤ MAX_MULTIPLE`, decided by evaluation.
fn bounded_by_multiple(y: &AsymptoticNat, x: &AsymptoticNat) -> bool {
    let (a, b) = (y.eval(FARTHER), x.eval(FARTHER));
    (1..=MAX_MULTIPLE).any(|m| a <= m * b)
}

/// `m·n^k` for `m ∈ {1, MAX_MULTIPLE}` and every `k ≤ 5` that lies in `Δ`,
/// plus zero.
fn probes(delta: &ConvexSubsemigroup) -> Vec<AsymptoticNat> {
    let mut out = vec![AsymptoticNat::zero()];
    for k in 0..=5 {
        let mono = AsymptoticNat::monomial(k);
        for m in [1, MAX_MULTIPLE as u32] {
            let probe = mono.scale(m).expect("small multiple");
            if delta.contains(&probe) {
                out.push(probe);
            }
        }
    }
    out
}

pub(crate) fn asymptotic(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let samples: Vec<(AsymptoticNat, AsymptoticNat, AsymptoticNat)> = (0..input.params.asymptotic_pairs)
        .map(|_| (sample_nat(rng), sample_nat(rng), sample_nat(rng)))
        .collect();

    checks.add("comparison agrees with evaluation far out", |c| {
        for (x, y, _) in &samples {
            c.eq(compare(x, y), x.eval(FAR).cmp(&y.eval(FAR)), || {
                format!("compare({x}, {y})")
            });
        }
        Ok(())
    });

    checks.add("the order is total, antisymmetric and transitive", |c| {
        for (x, y, z) in &samples {
            c.eq(compare(y, x), compare(x, y).reverse(), || {
                format!("antisymmetry for {x}, {y}")
            });
            c.eq(compare(x, y) == Ordering::Equal, x == y, || {
                format!("equality for {x}, {y}")
            });
            if x <= y && y <= z {
                c.case(x <= z, || format!("{x} <= {y} <= {z}"));
            }
        }
        Ok(())
    });

    checks.add("addition is translation invariant and cancellative", |c| {
        for (x, y, z) in &samples {
            let (xz, yz) = (x.add(z)?, y.add(z)?);
            c.eq(compare(&xz, &yz), compare(x, y), || format!("{x} + {z} vs {y} + {z}"));
            c.case(&xz >= x, || format!("{x} + {z} below {x}"));
        }
        Ok(())
    });

    checks.add("convex subsemigroups are closed under sums and downward closed", |c| {
        for delta in kinds() {
            for (x, y, _) in &samples {
                if delta.contains(x) && delta.contains(y) {
                    c.case(delta.contains(&x.add(y)?), || format!("{x} + {y} leaves {delta}"));
                }
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                if delta.contains(hi) {
                    c.case(delta.contains(lo), || format!("{lo} <= {hi} but {lo} not in {delta}"));
                }
            }
        }
        Ok(())
    });

    checks.add("archimedean classes match bounded multiples", |c| {
        for (x, y, _) in &samples {
            if x.is_zero() || y.is_zero() {
                c.eq(archimedean_equivalent(x, y).err(), Some(Error::ZeroHasNoClass), || {
                    format!("{x} ~ {y}")
                });
                continue;
            }
            let oracle = bounded_by_multiple(x, y) && bounded_by_multiple(y, x);
            c.eq(archimedean_equivalent(x, y)?, oracle, || format!("{x} ~ {y}"));
        }
        Ok(())
    });

    checks.add("[x] is the least convex subsemigroup containing x", |c| {
        for (x, y, _) in samples.iter().take(2_000) {
            let least = least_convex_containing(x);
            c.case(least.contains(x), || format!("{x} not in {least}"));
            for delta in kinds() {
                if delta.contains(x) {
                    c.case(least.is_subset_of(&delta), || format!("[{x}] = {least} not in {delta}"));
                }
            }
            let oracle = !x.is_zero() && bounded_by_multiple(y, x) || y.is_zero();
            c.eq(least.contains(y), oracle, || format!("{y} in [{x}] = {least}"));
        }
        Ok(())
    });

    checks.add("Delta and prime maps are inverse and order reversing", |c| {
        for delta in kinds() {
            c.eq(delta_of(&prime_of(&delta)), delta, || {
                format!("round trip from {delta}")
            });
            for other in kinds() {
                c.eq(
                    prime_of(&other).is_subset_of(&prime_of(&delta)),
                    delta.is_subset_of(&other),
                    || format!("{delta} vs {other}"),
                );
            }
        }
        for prime in primes() {
            c.eq(prime_of(&delta_of(&prime)), prime, || {
                format!("round trip from {prime}")
            });
        }
        Ok(())
    });

    checks.add("P_Delta holds exactly the valuations above Delta", |c| {
        for delta in kinds() {
            let prime = prime_of(&delta);
            let probe_set = probes(&delta);
            c.case(prime.contains(&ValuationValue::Infinity), || {
                format!("infinity not in {prime}")
            });
            for (x, _, _) in samples.iter().take(2_000) {
                let above = !x.is_zero() && probe_set.iter().all(|p| x.eval(FARTHER) > p.eval(FARTHER));
                c.eq(prime.contains(&ValuationValue::Finite(x.clone())), above, || {
                    format!("v = {x} against {delta}")
                });
            }
        }
        Ok(())
    });

    checks.add("shapes and top classes", |c| {
        c.eq(ConvexSubsemigroup::Zero.shape(), ConvexShape::Trivial, || "zero".into());
        c.eq(ConvexSubsemigroup::Standard.shape(), ConvexShape::Standard, || {
            "standard".into()
        });
        c.eq(ConvexSubsemigroup::All.shape(), ConvexShape::NoTopClass, || {
            "all".into()
        });
        for d in 1..=5 {
            let delta = ConvexSubsemigroup::DegreeAtMost(d);
            c.eq(delta.shape(), ConvexShape::TopClass(d), || format!("{delta}"));
            // n^d is in the top class and nothing of the next class is.
            c.case(delta.contains(&AsymptoticNat::monomial(d)), || {
                format!("n^{d} in {delta}")
            });
            c.case(!delta.contains(&AsymptoticNat::monomial(d + 1)), || {
                format!("n^{} in {delta}", d + 1)
            });
            c.eq(archimedean_class(&AsymptoticNat::monomial(d))?, d, || {
                format!("class of n^{d}")
            });
            // All has a larger class above every element.
            c.case(
                ConvexSubsemigroup::All.contains(&AsymptoticNat::monomial(d + 1)),
                || "all".into(),
            );
        }
        for (x, _, _) in samples.iter().take(2_000) {
            if let Ok(d) = archimedean_class(x) {
                c.eq(least_convex_containing(x).top_class(), Some(d), || {
                    format!("top class of [{x}]")
                });
            }
        }
        Ok(())
    });

    checks
}

/// Every vector of `len` exponents drawn from `0..=n` and `∞`.
fn all_exponents(len: usize, n: u32) -> Vec<Vec<Exponent>> {
    let values: Vec<Exponent> = (0..=n).map(Exponent::Finite).chain([Exponent::Infinite]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                values.iter().map(move |&v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}

pub(crate) fn negative_controls(input: &SuiteInput, _rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let n = input.context.precision();

    checks.add("w = (0,2,0) is not prime, witnessed by x = (1,3,1)", |c| {
        let ctx = RingContext::new(&[2, 3, 5], n)?;
        let ideal = FinGenIdeal::from_exponents(
            &ctx,
            vec![Exponent::Finite(0), Exponent::Finite(2), Exponent::Finite(0)],
        )?;
        c.eq(is_prime(&ideal), None, || "is_prime((0,2,0))".into());
        let x = ctx.element([1, 3, 1])?;
        c.case(ideal.contains(&x.mul(&x)?)?, || "x^2 should lie in the ideal".into());
        c.case(!ideal.contains(&x)?, || "x should not lie in the ideal".into());
        Ok(())
    });

    checks.add("is_prime accepts exactly the multiplicatively prime ideals", |c| {
        // Exponents up to 3 at precision 8, so no product of two probe
        // elements is truncated.
        let ctx = RingContext::new(&[2, 3], 8)?;
        let vectors = all_exponents(2, 3);
        let ideals: Vec<FinGenIdeal> = vectors
            .iter()
            .map(|w| FinGenIdeal::from_exponents(&ctx, w.clone()))
            .collect::<Result<_>>()?;
        // Membership depends only on valuations, so elements p^a with
        // a ∈ {0..N, ∞} in each coordinate are exhaustive.
        let elements = vectors
            .iter()
            .map(|w| {
                ctx.from_fn(|zp| match w[usize::from(zp.prime() == 3)] {
                    Exponent::Finite(k) => zp.element(BigInt::from(zp.prime()).pow(k)),
                    Exponent::Infinite => zp.zero(),
                })
            })
            .collect::<Vec<_>>();
        for ideal in &ideals {
            let mut prime = ideal.is_proper();
            'pairs: for x in &elements {
                for y in &elements {
                    if ideal.contains(&x.mul(y)?)? && !ideal.contains(x)? && !ideal.contains(y)? {
                        prime = false;
                        break 'pairs;
                    }
                }
            }
            c.eq(is_prime(ideal).is_some(), prime, || {
                format!("primality of {:?}", ideal.exponents())
            });
        }
        Ok(())
    });

    checks.add("only generization-closed point sets are open", |c| {
        for k in 1..=input.context.len().min(3) {
            let ctx = RingContext::new(&input.context.primes()[..k], n)?;
            let points = spec_enumerate(&ctx);
            let mut accepted = Vec::new();
            for mask in 0u32..(1 << points.len()) {
                let set: BTreeSet<PrimeIdeal> = points
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| *x)
                    .collect();
                let closed = set.iter().all(|x| set.contains(&PrimeIdeal::minimal(x.prime)));
                let result = OpenSet::new(&ctx, set.iter().copied());
                c.eq(result.is_ok(), closed, || format!("openness of {set:?}"));
                if let Err(e) = &result {
                    c.case(matches!(e, Error::NotOpen(_)), || format!("error for {set:?}: {e}"));
                }
                if closed {
                    accepted.push(set);
                }
            }
            c.eq(accepted.len(), 3usize.pow(k as u32), || {
                format!("open count for {k} primes")
            });
            let mut listed: Vec<BTreeSet<PrimeIdeal>> =
                enumerate_opens(&ctx).iter().map(|u| u.points().clone()).collect();
            listed.sort();
            accepted.sort();
            c.eq(listed, accepted, || format!("enumerated opens for {k} primes"));
        }
        Ok(())
    });

    checks.add("x^2 - 2 has no approximate root over Z_5", |c| {
        let ctx = RingContext::new(&[5], n)?;
        let poly = Polynomial::from_i64s(&[-2, 0, 1]);
        let squares: BTreeSet<u64> = (0..5u64).map(|a| a * a % 5).collect();
        c.case(!squares.contains(&2), || "2 is a square mod 5".into());
        let maximal = PrimeIdeal::maximal(5);
        let (local, residue) = (localize(&ctx, &maximal)?, quotient(&ctx, &maximal)?);
        c.eq(local.kind(), ComponentKind::Integers(5), || "kind of R at m_5".into());
        for a0 in 0..5u64 {
            let start = ctx.ring(5)?.element(a0);
            c.eq(
                hensel_lift(&poly, &start).err(),
                Some(Error::NotApproximateRoot),
                || format!("Z_5 at {a0}"),
            );
            c.eq(
                local.henselian_check(&poly, a0).err(),
                Some(Error::NotApproximateRoot),
                || format!("R at m_5 from {a0}"),
            );
            c.eq(
                residue.henselian_check(&poly, a0).err(),
                Some(Error::NotApproximateRoot),
                || format!("F_5 at {a0}"),
            );
        }
        Ok(())
    });

    checks.add("singular roots are not lifted", |c| {
        for zp in input.context.rings() {
            // x^2 - p has the root 0 mod p with vanishing derivative.
            let poly = Polynomial::new(vec![-BigInt::from(zp.prime()), BigInt::from(0), BigInt::from(1)]);
            c.eq(hensel_lift(&poly, &zp.zero()).err(), Some(Error::SingularRoot), || {
                format!("x^2 - {} at 0", zp.prime())
            });
        }
        Ok(())
    });

    checks.add("the unit ideal has no filter and no prime", |c| {
        let ctx = input.context;
        let unit = FinGenIdeal::unit(ctx);
        c.eq(filter_of_ideal(&unit).err(), Some(Error::ImproperIdeal), || {
            "filter of (1)".into()
        });
        c.eq(
            ideal_filter(ctx, &[ctx.one()]).err(),
            Some(Error::ImproperIdeal),
            || "delta of (1)".into(),
        );
        c.eq(is_prime(&unit), None, || "is_prime((1))".into());
        let x = PrimeIdeal::minimal(ctx.primes()[0]);
        let local = localize(ctx, &x)?;
        let g = x.generator(ctx)?;
        c.eq(
            local.fraction(&ctx.one(), &g).err(),
            Some(Error::DenominatorInPrime),
            || format!("1 / generator of {x}"),
        );
        Ok(())
    });

    checks
}
