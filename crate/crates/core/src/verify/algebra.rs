//! Suites for the p-adic kernel, the product ring, filters and the spectrum.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Checks, SuiteInput};
use crate::error::{Error, Result};
use crate::filters::{delta_lower, delta_upper, enumerate_ultrafilters, filter_of_ideal, filter_witness, ideal_filter};
use crate::padic::{hensel_lift, newton_step, PAdicRational, Polynomial, Valuation, Zp};
use crate::product::{division_witness, truth_set, Idempotent, Predicate, ProductElement, RingContext};
use crate::sampling;
use crate::spectrum::{
    is_prime, maximals_over, prime_le, spec_enumerate, value_and_divisibility, value_of, vanishing_set, Exponent,
    FinGenIdeal, Level, PrimeIdeal, ValueClass,
};

/// The first `k` primes of `context` at precision `n`.
fn prefix(context: &RingContext, k: usize, n: u32) -> Result<RingContext> {
    RingContext::new(&context.primes()[..k.min(context.len())], n)
}

/// A precision small enough that `p^n <= bound` for every prime listed.
fn small_precision(primes: &[u64], bound: u64, cap: u32) -> u32 {
    primes
        .iter()
        .map(|&p| {
            let mut k = 0;
            let mut q = 1u64;
            while q.saturating_mul(p) <= bound {
                q *= p;
                k += 1;
            }
            k.max(1)
        })
        .min()
        .unwrap_or(1)
        .min(cap)
}

fn pow_mod(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

pub(crate) fn padic_ring_laws(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let n = input.params.ring_samples;
    let rings = input.context.rings();

    checks.add("associativity, commutativity, distributivity", |c| {
        for zp in rings {
            for _ in 0..n {
                let (a, b, d) = (
                    sampling::padic(rng, zp),
                    sampling::padic(rng, zp),
                    sampling::padic(rng, zp),
                );
                c.eq(&(&a + &b) + &d, &a + &(&b + &d), || {
                    format!("(a+b)+c in Z_{}", zp.prime())
                });
                c.eq(&(&a * &b) * &d, &a * &(&b * &d), || {
                    format!("(ab)c in Z_{}", zp.prime())
                });
                c.eq(&a * &b, &b * &a, || format!("ab = ba in Z_{}", zp.prime()));
                c.eq(&a * &(&b + &d), &(&a * &b) + &(&a * &d), || {
                    format!("a(b+c) in Z_{}", zp.prime())
                });
                c.eq(&a + &(-&a), zp.zero(), || format!("a + (-a) in Z_{}", zp.prime()));
            }
        }
        Ok(())
    });

    checks.add("valuation is additive below precision", |c| {
        for zp in rings {
            for _ in 0..n {
                let (a, b) = (sampling::padic(rng, zp), sampling::padic(rng, zp));
                if let (Valuation::Exact(x), Valuation::Exact(y)) = (a.valuation(), b.valuation()) {
                    if x + y < zp.precision() {
                        c.eq((&a * &b).valuation(), Valuation::Exact(x + y), || format!("v({a}*{b})"));
                    }
                }
            }
        }
        Ok(())
    });

    checks.add("unit inverse is an involution", |c| {
        for zp in rings {
            for _ in 0..n {
                let u = sampling::unit(rng, zp);
                let inv = u.inv_unit()?;
                c.eq(&u * &inv, zp.one(), || format!("u * u^-1 for u = {u}"));
                c.eq(inv.inv_unit()?, u.clone(), || format!("inverse of inverse of {u}"));
            }
        }
        Ok(())
    });

    checks.add("truncation is reduction mod p^k", |c| {
        for zp in rings {
            for _ in 0..n {
                let a = sampling::padic(rng, zp);
                let k = rng.gen_range(1..=zp.precision());
                let t = a.truncate(k)?;
                c.eq(t.residue().clone(), a.residue() % pow_mod(zp.prime(), k), || {
                    format!("{a} mod {}^{k}", zp.prime())
                });
            }
        }
        Ok(())
    });

    checks.add("Hensel lifts of square roots are fixed roots", |c| {
        for zp in rings.iter().filter(|zp| zp.prime() != 2) {
            for _ in 0..n / 10 + 1 {
                let u = sampling::unit(rng, zp);
                let square = &u * &u;
                let poly = Polynomial::new(vec![
                    -BigInt::from(square.residue().clone()),
                    BigInt::zero(),
                    BigInt::from(1),
                ]);
                let root = hensel_lift(&poly, &zp.from_residue(u.truncate(1)?.residue().clone()))?;
                c.eq(&root * &root, square.clone(), || format!("lift of sqrt({square})"));
                c.eq(newton_step(&poly, &root)?, root.clone(), || {
                    format!("Newton step at {root}")
                });
            }
        }
        Ok(())
    });

    checks.add("Q_p multiplication and division invert each other", |c| {
        for zp in rings {
            for _ in 0..n {
                let (x, y) = (sampling::rational(rng, zp), sampling::rational(rng, zp));
                if y.is_zero() {
                    c.eq(x.checked_div(&y).err(), Some(Error::DivisionByZero), || {
                        "division by zero".into()
                    });
                    continue;
                }
                let back = x.checked_mul(&y)?.checked_div(&y)?;
                c.eq(back, x.clone(), || format!("({x} * {y}) / {y}"));
                // Addition is exact to p^(min exponent + N).
                let level = x
                    .exponent()
                    .unwrap_or(i64::MAX / 4)
                    .min(y.exponent().unwrap_or(i64::MAX / 4))
                    + i64::from(zp.precision());
                let round_trip = x.checked_add(&y)?.checked_sub(&y)?;
                c.case(round_trip.congruent_mod(&x, level)?, || {
                    format!("({x} + {y}) - {y} = {round_trip}")
                });
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn division_witness_suite(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let samples: Vec<ProductElement> = (0..input.params.division_samples)
        .map(|_| sampling::element(rng, ctx))
        .collect();

    checks.add("unit iff the maximal-ideal truth set is empty", |c| {
        for f in &samples {
            let empty = truth_set(f, Predicate::InMaximal).members.is_empty();
            c.eq(f.is_unit(), empty, || format!("unit criterion for {f:?}"));
            if f.is_unit() {
                c.eq(f.mul(&f.inverse()?)?, ctx.one(), || format!("f * f^-1 for {f:?}"));
            }
        }
        Ok(())
    });

    checks.add("f * g = 1 - e_X for the division witness", |c| {
        for f in &samples {
            let w = division_witness(f);
            let mut g = w.multiplier.clone();
            if input.corrupt {
                g = g.add(&ctx.one())?;
            }
            let ex = Idempotent::new(ctx, w.locus.iter().copied())?.to_element();
            c.eq(f.mul(&g)?, ctx.one().sub(&ex)?, || format!("witness product for {f:?}"));
            c.eq(&w.locus, &truth_set(f, Predicate::InMaximal).members, || {
                format!("locus for {f:?}")
            });
        }
        Ok(())
    });

    checks.add("truth sets of products are unions", |c| {
        for pair in samples.chunks(2) {
            if let [f, h] = pair {
                let fh = f.mul(h)?;
                let lhs = truth_set(&fh, Predicate::InMaximal).members;
                let rhs: BTreeSet<u64> = truth_set(f, Predicate::InMaximal)
                    .members
                    .union(&truth_set(h, Predicate::InMaximal).members)
                    .copied()
                    .collect();
                c.eq(lhs, rhs, || format!("[fh in m] for {f:?}, {h:?}"));
                let units = truth_set(f, Predicate::IsUnit).members;
                let complement: BTreeSet<u64> = ctx
                    .prime_set()
                    .difference(&truth_set(f, Predicate::InMaximal).members)
                    .copied()
                    .collect();
                c.eq(units, complement, || format!("[f unit] for {f:?}"));
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn idempotent_algebra(input: &SuiteInput, _rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;

    checks.add("X -> e_X preserves meet, join and complement", |c| {
        let small = prefix(ctx, 4, ctx.precision())?;
        let subsets: Vec<BTreeSet<u64>> = small.subsets().collect();
        let mut seen = BTreeSet::new();
        for x in &subsets {
            let ex = Idempotent::new(&small, x.iter().copied())?;
            let el = ex.to_element();
            c.eq(el.mul(&el)?, el.clone(), || format!("e_X^2 for X = {x:?}"));
            c.eq(Idempotent::from_element(&el).as_ref(), Some(&ex), || {
                format!("support of e_X, X = {x:?}")
            });
            c.case(seen.insert(el.residue_strings()), || {
                format!("e_X repeats for X = {x:?}")
            });
            let comp: BTreeSet<u64> = small.prime_set().difference(x).copied().collect();
            c.eq(ex.complement().support(), &comp, || format!("complement of {x:?}"));
            for y in &subsets {
                let ey = Idempotent::new(&small, y.iter().copied())?;
                let meet: BTreeSet<u64> = x.intersection(y).copied().collect();
                let join: BTreeSet<u64> = x.union(y).copied().collect();
                c.eq(ex.meet(&ey)?.support(), &meet, || format!("meet of {x:?}, {y:?}"));
                c.eq(ex.join(&ey)?.support(), &join, || format!("join of {x:?}, {y:?}"));
            }
        }
        Ok(())
    });

    checks.add("0 and 1 are the only idempotents of each component", |c| {
        for &p in ctx.primes() {
            let k = small_precision(&[p], 20_000, ctx.precision());
            let m = p.pow(k);
            let idempotents: Vec<u64> = (0..m)
                .filter(|&x| (x as u128 * x as u128 % m as u128) as u64 == x)
                .collect();
            c.eq(idempotents, vec![0, 1], || format!("idempotents of Z/{p}^{k}"));
        }
        Ok(())
    });

    checks
}

pub(crate) fn filter_bridge(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let params = input.params;
    let ideals: Vec<FinGenIdeal> = (0..params.ideal_samples)
        .map(|_| sampling::proper_ideal(rng, ctx, 3))
        .collect();

    // A random combination sum h_j g_j of the generators.
    let combination = |rng: &mut ChaCha8Rng, ideal: &FinGenIdeal| -> Result<ProductElement> {
        let mut acc = ctx.zero();
        for g in ideal.generators() {
            acc = acc.add(&sampling::element(rng, ctx).mul(g)?)?;
        }
        Ok(acc)
    };

    checks.add("the filter base is attained by an element of the ideal", |c| {
        for ideal in &ideals {
            let base = ideal_filter(ctx, ideal.generators())?;
            let w = filter_witness(ctx, ideal.generators())?;
            c.case(ideal.contains(&w)?, || format!("witness {w:?} not in {ideal:?}"));
            c.eq(&truth_set(&w, Predicate::InMaximal).members, base.base(), || {
                format!("witness truth set for {ideal:?}")
            });
        }
        Ok(())
    });

    checks.add("lower(delta_a) is contained in a", |c| {
        for ideal in &ideals {
            let base = ideal_filter(ctx, ideal.generators())?;
            for _ in 0..params.ideal_probes {
                // Vanishes on the base, arbitrary elsewhere.
                let f = sampling::element(rng, ctx).map(|a| {
                    if base.base().contains(&a.prime()) {
                        a.ring().zero()
                    } else {
                        a.clone()
                    }
                });
                c.case(base.contains(&truth_set(&f, Predicate::IsZero).members), || {
                    "probe off lower ideal".into()
                });
                c.case(ideal.contains(&f)?, || {
                    format!("{f:?} in lower ideal but not in {ideal:?}")
                });
            }
        }
        Ok(())
    });

    checks.add("a is contained in upper(delta_a)", |c| {
        for ideal in &ideals {
            let base = ideal_filter(ctx, ideal.generators())?;
            for i in 0..params.ideal_probes {
                let f = match i % 3 {
                    0 => combination(rng, ideal)?,
                    1 => sampling::ideal_member(rng, ideal),
                    _ => sampling::element(rng, ctx),
                };
                if ideal.contains(&f)? {
                    let mu = truth_set(&f, Predicate::InMaximal).members;
                    c.case(base.contains(&mu), || {
                        format!("{f:?} in {ideal:?} misses the base {:?}", base.base())
                    });
                } else {
                    c.case(i % 3 == 2, || format!("member {f:?} rejected by {ideal:?}"));
                }
            }
        }
        Ok(())
    });

    checks.add("the filter is monotone in the ideal", |c| {
        for ideal in &ideals {
            let extra = sampling::element(rng, ctx);
            let bigger = ideal.sum(&FinGenIdeal::principal(&extra))?;
            if !bigger.is_proper() {
                continue;
            }
            let (small, large) = (filter_of_ideal(ideal)?, filter_of_ideal(&bigger)?);
            c.case(large.base().is_subset(small.base()), || {
                format!("{bigger:?} over {ideal:?}")
            });
        }
        Ok(())
    });

    checks.add("both bridges return the ultrafilter", |c| {
        for d in enumerate_ultrafilters(ctx) {
            c.eq(filter_of_ideal(&delta_lower(ctx, &d)?)?, d.to_filter(), || {
                format!("lower at {}", d.point())
            });
            c.eq(filter_of_ideal(&delta_upper(ctx, &d)?)?, d.to_filter(), || {
                format!("upper at {}", d.point())
            });
        }
        for x in spec_enumerate(ctx) {
            let f = filter_of_ideal(&x.ideal(ctx)?)?;
            c.case(f.is_ultrafilter(), || format!("filter of {x} is {:?}", f.base()));
        }
        Ok(())
    });

    checks
}

/// The additive subgroup of `Z/m` generated by `gens`, by breadth-first
/// closure.
fn generated_subgroup(gens: &[u64], m: u64) -> Vec<bool> {
    let mut seen = vec![false; m as usize];
    seen[0] = true;
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (x + g) % m;
            if !seen[y as usize] {
                seen[y as usize] = true;
                frontier.push(y);
            }
        }
    }
    seen
}

fn small_residue(a: &crate::padic::PAdicInt) -> u64 {
    a.residue().iter_u64_digits().next().unwrap_or(0)
}

pub(crate) fn ideal_normal_form(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let params = input.params;

    checks.add("membership agrees with the generated subgroup", |c| {
        let primes = &input.context.primes()[..input.context.len().min(3)];
        let n = small_precision(primes, 5_000, 6);
        let ctx = RingContext::new(primes, n)?;
        for _ in 0..params.ideal_samples {
            let gens = sampling::generators(rng, &ctx, 3);
            let ideal = FinGenIdeal::generated_by(&ctx, &gens)?;
            let groups: Vec<Vec<bool>> = ctx
                .rings()
                .iter()
                .enumerate()
                .map(|(i, zp)| {
                    let m = zp.prime().pow(n);
                    let residues: Vec<u64> = gens.iter().map(|g| small_residue(&g.components()[i])).collect();
                    generated_subgroup(&residues, m)
                })
                .collect();
            for _ in 0..params.ideal_probes {
                let f = if rng.gen_bool(0.5) {
                    sampling::ideal_member(rng, &ideal)
                } else {
                    sampling::element(rng, &ctx)
                };
                let oracle = f
                    .components()
                    .iter()
                    .zip(&groups)
                    .all(|(a, group)| group[small_residue(a) as usize]);
                c.eq(ideal.contains(&f)?, oracle, || format!("{f:?} in {ideal:?}"));
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn spec_chains(input: &SuiteInput, _rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let spec = spec_enumerate(ctx);

    checks.add("2|S| points in |S| chains of length two", |c| {
        c.eq(spec.len(), 2 * ctx.len(), || "number of points".into());
        c.eq(enumerate_ultrafilters(ctx).len(), ctx.len(), || {
            "number of ultrafilters".into()
        });
        for &p in ctx.primes() {
            let (lo, hi) = (PrimeIdeal::minimal(p), PrimeIdeal::maximal(p));
            c.case(spec.contains(&lo) && spec.contains(&hi), || {
                format!("chain at {p} incomplete")
            });
            c.case(prime_le(ctx, &lo, &hi)?, || format!("{lo} not below {hi}"));
            c.case(!prime_le(ctx, &hi, &lo)?, || format!("{hi} below {lo}"));
        }
        Ok(())
    });

    checks.add("containment matrix from generator membership", |c| {
        for a in &spec {
            for b in &spec {
                let by_membership = b.contains(ctx, &a.generator(ctx)?)?;
                let expected = a == b || (a.prime == b.prime && a.level == Level::Minimal);
                c.eq(by_membership, expected, || format!("{a} <= {b}"));
            }
        }
        Ok(())
    });

    checks.add("each point classifies as the prime it names", |c| {
        for x in &spec {
            c.eq(is_prime(&x.ideal(ctx)?), Some(*x), || format!("classification of {x}"));
        }
        Ok(())
    });

    checks.add("integers meet chains only through maximal ideals", |c| {
        for &p in ctx.primes() {
            let lo = PrimeIdeal::minimal(p).ideal(ctx)?;
            let hi = PrimeIdeal::maximal(p).ideal(ctx)?;
            for n in 1..=100u64 {
                let x = ctx.integer(n);
                c.case(!lo.contains(&x)?, || format!("{n} in p_{p}"));
                c.eq(hi.contains(&x)?, n % p == 0, || format!("{n} in m_{p}"));
            }
            c.eq(FinGenIdeal::principal(&ctx.integer(p)), hi.clone(), || {
                format!("({p}) = m_{p}")
            });
        }
        Ok(())
    });

    checks
}

pub(crate) fn pm_ring(input: &SuiteInput, _rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;

    checks.add("exactly one maximal ideal over each prime", |c| {
        for x in spec_enumerate(ctx) {
            let over = maximals_over(ctx, &x)?;
            c.eq(over, vec![PrimeIdeal::maximal(x.prime)], || {
                format!("maximals over {x}")
            });
        }
        Ok(())
    });

    checks.add("maximal ideals over a prime by membership", |c| {
        for x in spec_enumerate(ctx) {
            let g = x.generator(ctx)?;
            let count = spec_enumerate(ctx)
                .into_iter()
                .filter(|m| m.level == Level::Maximal)
                .map(|m| m.contains(ctx, &g))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .filter(|&b| b)
                .count();
            c.eq(count, 1, || format!("maximal ideals containing {x}"));
        }
        Ok(())
    });

    checks
}

pub(crate) fn ideal_chain(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let n = ctx.precision();

    checks.add("ideals above a prime form a chain", |c| {
        for x in spec_enumerate(ctx) {
            let chain = crate::spectrum::ideals_above(ctx, &x)?;
            let expected = match x.level {
                Level::Minimal => n as usize + 2,
                Level::Maximal => 2,
            };
            c.eq(chain.len(), expected, || format!("chain length above {x}"));
            let g = x.generator(ctx)?;
            for (i, a) in chain.iter().enumerate() {
                c.case(a.contains(&g)?, || format!("{a:?} does not contain {x}"));
                for b in &chain[i + 1..] {
                    c.case(a.is_subset_of(b)?, || format!("{a:?} not below {b:?}"));
                    for _ in 0..4 {
                        let m = sampling::ideal_member(rng, a);
                        c.case(b.contains(&m)?, || format!("{m:?} in {a:?} but not in {b:?}"));
                    }
                }
            }
        }
        Ok(())
    });

    checks.add("the chain is every ideal above the prime", |c| {
        let small = prefix(ctx, 2, 4)?;
        let values: Vec<Exponent> = (0..=4).map(Exponent::Finite).chain([Exponent::Infinite]).collect();
        let mut all = Vec::new();
        for &a in &values {
            if small.len() == 1 {
                all.push(vec![a]);
            } else {
                for &b in &values {
                    all.push(vec![a, b]);
                }
            }
        }
        for x in spec_enumerate(&small) {
            let g = x.generator(&small)?;
            let mut above = Vec::new();
            for w in &all {
                let ideal = FinGenIdeal::from_exponents(&small, w.clone())?;
                if ideal.contains(&g)? {
                    above.push(ideal.exponents().to_vec());
                }
            }
            let mut listed: Vec<Vec<Exponent>> = crate::spectrum::ideals_above(&small, &x)?
                .iter()
                .map(|i| i.exponents().to_vec())
                .collect();
            above.sort();
            listed.sort();
            c.eq(listed, above, || format!("ideals above {x}"));
        }
        Ok(())
    });

    checks
}

pub(crate) fn spec_bijection(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;

    checks.add("ultrafilters biject onto minimal and maximal primes", |c| {
        let spec = spec_enumerate(ctx);
        for (level, delta) in [
            (
                Level::Minimal,
                delta_lower as fn(&RingContext, &_) -> Result<FinGenIdeal>,
            ),
            (Level::Maximal, delta_upper),
        ] {
            let mut image = Vec::new();
            for d in enumerate_ultrafilters(ctx) {
                let ideal = delta(ctx, &d)?;
                match is_prime(&ideal) {
                    Some(x) => image.push(x),
                    None => c.case(false, || format!("image of {} is not prime", d.point())),
                }
            }
            let distinct: BTreeSet<PrimeIdeal> = image.iter().copied().collect();
            let target: BTreeSet<PrimeIdeal> = spec.iter().filter(|x| x.level == level).copied().collect();
            c.eq(distinct.len(), image.len(), || format!("{level:?} map is injective"));
            c.eq(distinct, target, || format!("{level:?} map is onto"));
        }
        Ok(())
    });

    checks.add("closed sets match truth sets", |c| {
        for _ in 0..input.params.spec_samples {
            let f = sampling::typed_element(rng, ctx);
            let v = vanishing_set(&f)?;
            let min: BTreeSet<PrimeIdeal> = v.iter().filter(|x| x.level == Level::Minimal).copied().collect();
            let max: BTreeSet<PrimeIdeal> = v.iter().filter(|x| x.level == Level::Maximal).copied().collect();
            let zero: BTreeSet<PrimeIdeal> = truth_set(&f, Predicate::IsZero)
                .members
                .into_iter()
                .map(PrimeIdeal::minimal)
                .collect();
            let mu: BTreeSet<PrimeIdeal> = truth_set(&f, Predicate::InMaximal)
                .members
                .into_iter()
                .map(PrimeIdeal::maximal)
                .collect();
            c.eq(min, zero, || format!("V(f) on Min R for {f:?}"));
            c.eq(max, mu, || format!("V(f) on Max R for {f:?}"));
        }
        Ok(())
    });

    checks
}

pub(crate) fn value_semigroup(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let samples = input.params.ring_samples;

    checks.add("(a) <= (b) exactly when a divides b", |c| {
        for &p in input.context.primes() {
            let k = small_precision(&[p], 2_000, input.context.precision());
            let zp = Zp::new(p, k)?;
            let m = p.pow(k);
            for _ in 0..samples {
                let (a, b) = (sampling::padic(rng, &zp), sampling::padic(rng, &zp));
                let (ra, rb) = (small_residue(&a), small_residue(&b));
                let divides = (0..m).any(|x| (ra as u128 * x as u128 % m as u128) as u64 == rb);
                match value_and_divisibility(&a, &b) {
                    Ok(ord) => c.eq(ord != Ordering::Greater, divides, || {
                        format!("({a}) <= ({b}) in Z/{p}^{k}")
                    }),
                    Err(Error::PrecisionExhausted(_)) => {
                        c.case(a.is_zero() && b.is_zero(), || "spurious exhaustion".into())
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    });

    checks.add("oplus is multiplication of principal ideals", |c| {
        for zp in input.context.rings() {
            for _ in 0..samples {
                let (a, b) = (sampling::padic(rng, zp), sampling::padic(rng, zp));
                let sum = value_of(&a).oplus(value_of(&b));
                let below_precision = match sum {
                    ValueClass::Finite(k) => k < zp.precision(),
                    ValueClass::Infinity => true,
                };
                if below_precision {
                    c.eq(value_of(&(&a * &b)), sum, || format!("({a}) + ({b})"));
                }
                c.eq(ValueClass::IDENTITY.oplus(value_of(&a)), value_of(&a), || {
                    "identity".into()
                });
                c.eq(value_of(&a).oplus(ValueClass::Infinity), ValueClass::Infinity, || {
                    "absorbing".into()
                });
            }
        }
        Ok(())
    });

    checks.add("Q_p values compare by exponent", |c| {
        for zp in input.context.rings() {
            for _ in 0..samples / 10 + 1 {
                let x = sampling::rational(rng, zp);
                if let Some(e) = x.exponent() {
                    let back = PAdicRational::from_parts(e, &x.unit().expect("nonzero"))?;
                    c.eq(back, x.clone(), || format!("decomposition of {x}"));
                }
            }
        }
        Ok(())
    });

    checks
}
