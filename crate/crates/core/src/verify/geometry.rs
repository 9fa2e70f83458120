//! Suites for quotients, localizations, the structure sheaf and the adeles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Checks, SuiteInput};
use crate::adeles::{adele_from_fraction, extend, primes_avoiding_integers, spec_adeles, AdeleElement, AdeleIdeal};
use crate::error::{Error, Result};
use crate::filters::{Filter, Ultrafilter};
use crate::padic::{PAdicRational, Polynomial, Zp};
use crate::product::{Idempotent, ProductElement, RingContext};
use crate::quotient::{localize, quotient, ComponentKind, ComponentValue};
use crate::sampling;
use crate::sheaf::boolean::{boolean_localization, boolean_stalk_size, BooleanRing};
use crate::sheaf::limits::{basic_open_representatives, inverse_limit_sections};
use crate::sheaf::{
    basic_open, enumerate_opens, reduced_product, restrict, sections, sheaf_axiom_check_with, stalk, OpenSet,
};
use crate::spectrum::{spec_enumerate, vanishing_set, Level, PrimeIdeal};

fn prefix(context: &RingContext, k: usize) -> Result<RingContext> {
    RingContext::new(&context.primes()[..k.min(context.len())], context.precision())
}

/// An element whose component at `p` is `value` and random elsewhere.
fn with_component<R: Rng>(rng: &mut R, ctx: &RingContext, p: u64, value: &crate::padic::PAdicInt) -> ProductElement {
    ctx.from_fn(|zp| {
        if zp.prime() == p {
            value.clone()
        } else {
            sampling::padic(rng, zp)
        }
    })
}

pub(crate) fn quotients(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let pairs = input.params.homomorphism_pairs;

    checks.add("R/m_p reproduces the F_p tables", |c| {
        for &p in ctx.primes().iter().filter(|&&p| p <= 101) {
            let q = quotient(ctx, &PrimeIdeal::maximal(p))?;
            c.eq(q.kind(), ComponentKind::ResidueField(p), || format!("kind at m_{p}"));
            let zp = ctx.ring(p)?;
            let lift = |rng: &mut ChaCha8Rng, a: u64| {
                let noise = &sampling::padic(rng, zp) * &zp.element(p);
                with_component(rng, ctx, p, &(&zp.element(a) + &noise))
            };
            let mut hit = BTreeSet::new();
            for a in 0..p {
                for b in 0..p {
                    let (x, y) = (lift(rng, a), lift(rng, b));
                    let sum = ComponentValue::Residue {
                        prime: p,
                        value: (a + b) % p,
                    };
                    let prod = ComponentValue::Residue {
                        prime: p,
                        value: a * b % p,
                    };
                    c.eq(q.project(&x.add(&y)?)?, sum, || format!("{a} + {b} in F_{p}"));
                    c.eq(q.project(&x.mul(&y)?)?, prod, || format!("{a} * {b} in F_{p}"));
                }
                if let ComponentValue::Residue { value, .. } = q.project(&lift(rng, a))? {
                    hit.insert(value);
                }
            }
            c.eq(hit.len() as u64, p, || format!("F_{p} is hit"));
        }
        Ok(())
    });

    checks.add("R/p_p -> Z_p is a surjective homomorphism", |c| {
        for &p in ctx.primes() {
            let q = quotient(ctx, &PrimeIdeal::minimal(p))?;
            c.eq(q.kind(), ComponentKind::Integers(p), || format!("kind at p_{p}"));
            c.eq(
                q.project(&ctx.one())?,
                ComponentValue::Integer(ctx.ring(p)?.one()),
                || "1 maps to 1".into(),
            );
            for _ in 0..pairs {
                let (x, y) = (sampling::element(rng, ctx), sampling::element(rng, ctx));
                let (qx, qy) = (q.project(&x)?, q.project(&y)?);
                c.eq(q.project(&x.add(&y)?)?, qx.add(&qy)?, || format!("additivity at p_{p}"));
                c.eq(q.project(&x.mul(&y)?)?, qx.mul(&qy)?, || {
                    format!("multiplicativity at p_{p}")
                });
                let t = sampling::padic(rng, ctx.ring(p)?);
                let pre = with_component(rng, ctx, p, &t);
                c.eq(q.project(&pre)?, ComponentValue::Integer(t), || {
                    format!("preimage at p_{p}")
                });
            }
        }
        Ok(())
    });

    checks.add("kernels are the defining primes", |c| {
        for x in spec_enumerate(ctx) {
            let q = quotient(ctx, &x)?;
            let kernel = q.kernel()?;
            for _ in 0..pairs / 2 {
                let f = sampling::typed_element(rng, ctx);
                c.eq(q.project(&f)?.is_zero(), kernel.contains(&f)?, || {
                    format!("kernel at {x} for {f:?}")
                });
                c.eq(kernel.contains(&f)?, x.contains(ctx, &f)?, || {
                    format!("kernel of {x} is {x}")
                });
            }
        }
        Ok(())
    });

    checks.add("R/m_p factors through R/p_p", |c| {
        for &p in ctx.primes() {
            let (qm, qp) = (
                quotient(ctx, &PrimeIdeal::maximal(p))?,
                quotient(ctx, &PrimeIdeal::minimal(p))?,
            );
            for _ in 0..pairs / 5 {
                let f = sampling::element(rng, ctx);
                c.eq(qm.project(&f)?, qp.project(&f)?.reduce()?, || {
                    format!("triangle at {p} for {f:?}")
                });
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn localizations(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let pairs = input.params.homomorphism_pairs;

    checks.add("localization maps are homomorphisms", |c| {
        for x in spec_enumerate(ctx) {
            let l = localize(ctx, &x)?;
            let expected = match x.level {
                Level::Maximal => ComponentKind::Integers(x.prime),
                Level::Minimal => ComponentKind::Rationals(x.prime),
            };
            c.eq(l.kind(), expected, || format!("kind at {x}"));
            for _ in 0..pairs {
                let (f, g) = (sampling::element(rng, ctx), sampling::element(rng, ctx));
                let (lf, lg) = (l.map(&f)?, l.map(&g)?);
                c.case(l.map(&f.add(&g)?)?.agrees_with(&lf.add(&lg)?)?, || {
                    format!("additivity at {x}")
                });
                c.case(l.map(&f.mul(&g)?)?.agrees_with(&lf.mul(&lg)?)?, || {
                    format!("multiplicativity at {x}")
                });
            }
        }
        Ok(())
    });

    checks.add("kernel is the minimal prime of the chain", |c| {
        for x in spec_enumerate(ctx) {
            let l = localize(ctx, &x)?;
            let kernel = l.kernel()?;
            c.eq(kernel.clone(), PrimeIdeal::minimal(x.prime).ideal(ctx)?, || {
                format!("kernel at {x}")
            });
            for _ in 0..pairs / 2 {
                let f = sampling::typed_element(rng, ctx);
                c.eq(l.map(&f)?.is_zero(), kernel.contains(&f)?, || {
                    format!("kernel at {x} for {f:?}")
                });
            }
        }
        Ok(())
    });

    checks.add("fractions normalize and denominators become units", |c| {
        for x in spec_enumerate(ctx) {
            let l = localize(ctx, &x)?;
            for _ in 0..pairs / 2 {
                let (f, g) = (sampling::element(rng, ctx), sampling::typed_element(rng, ctx));
                if x.contains(ctx, &g)? {
                    c.eq(l.fraction(&f, &g).err(), Some(Error::DenominatorInPrime), || {
                        format!("{g:?} at {x}")
                    });
                    continue;
                }
                c.case(l.map(&g)?.is_unit(), || format!("{g:?} is not a unit at {x}"));
                let v = l.fraction(&f, &g)?;
                c.case(v.mul(&l.map(&g)?)?.agrees_with(&l.map(&f)?)?, || {
                    format!("({f:?}/{g:?}) * {g:?} at {x}")
                });
            }
        }
        Ok(())
    });

    checks.add("small integers in the local rings", |c| {
        for &p in ctx.primes() {
            let (at_max, at_min) = (
                localize(ctx, &PrimeIdeal::maximal(p))?,
                localize(ctx, &PrimeIdeal::minimal(p))?,
            );
            for n in 1..=100u64 {
                let x = ctx.integer(n);
                c.eq(at_max.map(&x)?.is_unit(), n % p != 0, || format!("{n} at m_{p}"));
                c.case(at_min.map(&x)?.is_unit(), || format!("{n} at p_{p}"));
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn henselian(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;

    checks.add("square root of 2 in Z_7 against all residues mod 343", |c| {
        let small = RingContext::new(&[2, 7], 3)?;
        let oracle: Vec<u64> = (0..343u64).filter(|x| (x * x) % 343 == 2).collect();
        c.eq(oracle.clone(), vec![108, 235], || "roots of x^2 - 2 mod 343".into());
        let poly = Polynomial::from_i64s(&[-2, 0, 1]);
        let lifted = localize(&small, &PrimeIdeal::maximal(7))?.henselian_check(&poly, 3)?;
        c.eq(lifted.residue().to_string(), "108".to_string(), || {
            "lift in the local ring at m_7".into()
        });
        let via_quotient = quotient(&small, &PrimeIdeal::minimal(7))?.henselian_check(&poly, 3)?;
        c.eq(via_quotient, lifted.clone(), || "lift in R/p_7".into());
        let in_field = localize(&small, &PrimeIdeal::minimal(7))?.henselian_check(&poly, 108)?;
        c.eq(in_field, lifted, || "root in Q_7".into());
        Ok(())
    });

    checks.add("simple roots lift in every local ring", |c| {
        for &p in ctx.primes().iter().filter(|&&p| p <= 1000) {
            let zp = ctx.ring(p)?;
            for _ in 0..20 {
                // x^3 + a x + b with a simple root mod p found by search.
                let (a, b) = (rng.gen_range(-20i64..=20), rng.gen_range(-20i64..=20));
                let poly = Polynomial::from_i64s(&[b, a, 0, 1]);
                let pm = num_bigint::BigUint::from(p);
                let simple = (0..p).find(|&r| {
                    let r = num_bigint::BigUint::from(r);
                    poly.eval_mod(&r, &pm) == 0u32.into() && poly.derivative().eval_mod(&r, &pm) != 0u32.into()
                });
                let Some(r) = simple else { continue };
                let root = localize(ctx, &PrimeIdeal::maximal(p))?.henselian_check(&poly, r)?;
                c.case(poly.eval(&root).is_zero(), || format!("{poly} at {root} in Z_{p}"));
                c.eq(root.residue_mod_p(), r, || format!("lift of {r} for {poly}"));
                let in_field = localize(ctx, &PrimeIdeal::minimal(p))?
                    .henselian_check(&poly, BigInt::from(root.residue().clone()))?;
                c.eq(in_field, root.clone(), || format!("root of {poly} in Q_{p}"));
                let residue = quotient(ctx, &PrimeIdeal::maximal(p))?.henselian_check(&poly, r)?;
                c.eq(residue, zp.from_residue(r.into()).truncate(1)?, || {
                    format!("root of {poly} in F_{p}")
                });
            }
        }
        Ok(())
    });

    checks
}

pub(crate) fn sheaf_sections(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;

    checks.add("closed-form sections equal the inverse limit", |c| {
        for k in 1..=ctx.len().min(3) {
            let sub = prefix(ctx, k)?;
            let opens = enumerate_opens(&sub);
            c.eq(opens.len(), 3usize.pow(k as u32), || {
                format!("number of opens for |S| = {k}")
            });
            for u in &opens {
                c.eq(inverse_limit_sections(u)?, sections(u).kinds().to_vec(), || {
                    format!("sections over {u:?}")
                });
            }
        }
        Ok(())
    });

    checks.add("every open is a basic open", |c| {
        for k in 1..=ctx.len().min(3) {
            let sub = prefix(ctx, k)?;
            let basics: Vec<OpenSet> = basic_open_representatives(&sub)
                .iter()
                .map(basic_open)
                .collect::<Result<_>>()?;
            for u in enumerate_opens(&sub) {
                c.case(basics.contains(&u), || format!("{u:?} is not basic"));
            }
        }
        Ok(())
    });

    checks.add("stalks are the local rings", |c| {
        for x in spec_enumerate(ctx) {
            let (_, kind) = stalk(ctx, &x)?;
            c.eq(kind, localize(ctx, &x)?.kind(), || format!("stalk at {x}"));
        }
        Ok(())
    });

    checks.add("restriction is a functorial ring map", |c| {
        let sub = prefix(ctx, 3)?;
        let opens = enumerate_opens(&sub);
        for u in &opens {
            let ru = sections(u);
            for v in opens.iter().filter(|v| v.is_subset(u)) {
                let (s, t) = (ru.random_element(rng), ru.random_element(rng));
                let (sv, tv) = (restrict(&s, v)?, restrict(&t, v)?);
                c.case(restrict(&s.add(&t)?, v)?.agrees_with(&sv.add(&tv)?)?, || {
                    format!("sum {u:?} -> {v:?}")
                });
                c.case(restrict(&s.mul(&t)?, v)?.agrees_with(&sv.mul(&tv)?)?, || {
                    format!("product {u:?} -> {v:?}")
                });
                c.eq(restrict(&ru.one(), v)?, sections(v).one(), || {
                    format!("unit {u:?} -> {v:?}")
                });
                for w in opens.iter().filter(|w| w.is_subset(v)) {
                    c.eq(restrict(&sv, w)?, restrict(&s, w)?, || {
                        format!("{u:?} -> {v:?} -> {w:?}")
                    });
                }
            }
        }
        Ok(())
    });

    checks.add("D(f) and D(g) meet in D(fg)", |c| {
        for _ in 0..input.params.sheaf_pairs {
            let (f, g) = (sampling::typed_element(rng, ctx), sampling::typed_element(rng, ctx));
            c.eq(
                basic_open(&f)?.intersection(&basic_open(&g)?),
                basic_open(&f.mul(&g)?)?,
                || format!("D({f:?}) and D({g:?})"),
            );
        }
        Ok(())
    });

    checks.add("Spec is disconnected by idempotents", |c| {
        let all: BTreeSet<PrimeIdeal> = spec_enumerate(ctx).into_iter().collect();
        for x in ctx.subsets() {
            if x.is_empty() || x.len() == ctx.len() {
                continue;
            }
            let e = Idempotent::new(ctx, x.iter().copied())?.to_element();
            let (a, b) = (vanishing_set(&e)?, vanishing_set(&ctx.one().sub(&e)?)?);
            c.eq(a.union(&b).copied().collect::<BTreeSet<_>>(), all.clone(), || {
                format!("cover by e_{x:?}")
            });
            c.case(a.is_disjoint(&b), || format!("V(e_{x:?}) meets its complement"));
        }
        Ok(())
    });

    checks
}

pub(crate) fn sheaf_axiom(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let samples = input.params.gluing_samples;

    checks.add("gluing over every cover by at most three basic opens", |c| {
        for k in 1..=ctx.len().min(3) {
            let sub = prefix(ctx, k)?;
            let opens = enumerate_opens(&sub);
            for u in &opens {
                let inside: Vec<&OpenSet> = opens.iter().filter(|v| v.is_subset(u)).collect();
                let m = inside.len();
                let mut check = |cover: Vec<OpenSet>, rng: &mut ChaCha8Rng| -> Result<()> {
                    let union = cover.iter().fold(OpenSet::empty(&sub), |acc, v| acc.union(v));
                    if union == *u {
                        let ok = sheaf_axiom_check_with(u, &cover, samples, rng)?;
                        c.case(ok, || format!("cover {cover:?} of {u:?}"));
                    }
                    Ok(())
                };
                for i in 0..m {
                    check(vec![inside[i].clone()], rng)?;
                    for j in i + 1..m {
                        check(vec![inside[i].clone(), inside[j].clone()], rng)?;
                        for l in j + 1..m {
                            check(vec![inside[i].clone(), inside[j].clone(), inside[l].clone()], rng)?;
                        }
                    }
                }
            }
        }
        Ok(())
    });

    checks.add("families that miss a point are not covers", |c| {
        let sub = prefix(ctx, 3)?;
        for u in enumerate_opens(&sub).iter().filter(|u| !u.is_empty()) {
            let r = sheaf_axiom_check_with(u, &[OpenSet::empty(&sub)], 1, rng);
            c.case(matches!(r, Err(Error::NotACover(_))), || {
                format!("empty family over {u:?}: {r:?}")
            });
        }
        Ok(())
    });

    checks
}

pub(crate) fn boolean_localization_suite(_input: &SuiteInput, _rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();

    checks.add("R_f = R/(1-f) = F_2^supp(f) for every f", |c| {
        for n in 1..=4 {
            let ring = BooleanRing::new(n);
            for f in ring.elements() {
                let r = boolean_localization(ring, f);
                c.case(r.isomorphic, || format!("f = {f:0w$b} in F_2^{n}", w = n as usize));
                c.eq(r.localization_size, 1usize << f.count_ones(), || {
                    format!("|R_f| for f = {f:b}")
                });
                c.eq(r.quotient_size, 1usize << f.count_ones(), || {
                    format!("|R/(1-f)| for f = {f:b}")
                });
            }
        }
        Ok(())
    });

    checks.add("stalks of Spec F_2^S are F_2", |c| {
        for n in 1..=4 {
            for i in 0..n {
                c.eq(boolean_stalk_size(BooleanRing::new(n), i), 2, || {
                    format!("stalk at {i} in F_2^{n}")
                });
            }
        }
        Ok(())
    });

    checks.add("reduced products over filters are localizations", |c| {
        for n in 1..=4u32 {
            let ring = BooleanRing::new(n);
            let factors: Vec<(u64, ComponentKind)> =
                (0..u64::from(n)).map(|i| (i, ComponentKind::ResidueField(2))).collect();
            for mask in 1..(1u32 << n) {
                let base: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(u64::from).collect();
                let rp = reduced_product(&factors, &Filter::new(base.iter().copied())?)?;
                let size = 1usize << rp.factors().len();
                c.eq(size, boolean_localization(ring, mask).localization_size, || {
                    format!("base {base:?}")
                });
                if let [i] = base.as_slice() {
                    c.eq(rp.factors(), &[(*i, ComponentKind::ResidueField(2))][..], || {
                        "ultrafilter factor".into()
                    });
                    c.eq(Ultrafilter::at(*i).to_filter().base().len(), 1, || "principal".into());
                }
            }
        }
        Ok(())
    });

    checks
}

fn random_adele<R: Rng>(rng: &mut R, ctx: &RingContext) -> Result<AdeleElement> {
    let f = sampling::element(rng, ctx);
    adele_from_fraction(&f, rng.gen_range(1..=100))
}

pub(crate) fn adeles(input: &SuiteInput, rng: &mut ChaCha8Rng) -> Checks {
    let mut checks = Checks::default();
    let ctx = input.context;
    let n = input.params.adele_samples;

    checks.add("Spec of the adeles is one point per prime", |c| {
        let spec = spec_adeles(ctx);
        c.eq(spec.len(), ctx.len(), || "number of adele primes".into());
        let mut primes = BTreeSet::new();
        for z in ctx.subsets() {
            let ideal = AdeleIdeal::new(ctx, z.iter().copied())?;
            if let Some(q) = ideal.as_prime() {
                primes.insert(q);
            }
        }
        c.eq(primes.iter().copied().collect::<Vec<_>>(), spec.clone(), || {
            "primes among all ideals".into()
        });
        for a in &spec {
            for b in &spec {
                let le = a.ideal(ctx)?.is_subset_of(&b.ideal(ctx)?);
                c.eq(le, a == b, || format!("{a} <= {b}"));
            }
        }
        Ok(())
    });

    checks.add("extension and contraction", |c| {
        for x in spec_enumerate(ctx) {
            let e = extend(&x.ideal(ctx)?);
            match x.level {
                Level::Maximal => c.case(e.is_unit_ideal(), || format!("extension of {x} is proper")),
                Level::Minimal => {
                    let q = e.as_prime();
                    c.eq(q.map(|q| q.contraction()), Some(x), || format!("extension of {x}"));
                    c.eq(e.contract(), x.ideal(ctx)?, || {
                        format!("contraction of the extension of {x}")
                    });
                }
            }
        }
        let surviving = primes_avoiding_integers(ctx, 100)?;
        let contracted: Vec<PrimeIdeal> = spec_adeles(ctx).iter().map(|q| q.contraction()).collect();
        c.eq(surviving, contracted, || "primes avoiding the integers".into());
        Ok(())
    });

    checks.add(
        "projection onto Q_p is a surjective homomorphism with exact kernel",
        |c| {
            for q in spec_adeles(ctx) {
                let p = q.prime;
                let ideal = q.ideal(ctx)?;
                c.eq(q.quotient_kind(), ComponentKind::Rationals(p), || {
                    format!("quotient kind at {q}")
                });
                c.eq(
                    q.localization_kind(),
                    localize(ctx, &PrimeIdeal::minimal(p))?.kind(),
                    || format!("local ring at {q}"),
                );
                for _ in 0..n {
                    let (x, y) = (random_adele(rng, ctx)?, random_adele(rng, ctx)?);
                    let (px, py) = (q.project(&x)?, q.project(&y)?);
                    c.eq(q.project(&x.add(&y)?)?, px.add(&py)?, || format!("additivity at {q}"));
                    c.eq(q.project(&x.mul(&y)?)?, px.mul(&py)?, || {
                        format!("multiplicativity at {q}")
                    });
                    let t = sampling::rational(rng, ctx.ring(p)?);
                    let comps: Vec<PAdicRational> = ctx
                        .rings()
                        .iter()
                        .map(|zp| {
                            if zp.prime() == p {
                                t.clone()
                            } else {
                                sampling::rational(rng, zp)
                            }
                        })
                        .collect();
                    let pre = AdeleElement::from_components(ctx, comps)?;
                    c.eq(q.project(&pre)?, ComponentValue::Rational(t.clone()), || {
                        format!("preimage of {t} at {q}")
                    });
                    c.eq(ideal.contains(&pre)?, t.is_zero(), || {
                        format!("kernel at {q} for {pre:?}")
                    });
                }
            }
            Ok(())
        },
    );

    checks.add("integers up to 100 are units", |c| {
        for k in 1..=100u64 {
            let x = adele_from_fraction(&ctx.integer(k), 1)?;
            c.case(x.is_unit(), || format!("{k} is not a unit"));
            let one = adele_from_fraction(&ctx.one(), 1)?;
            c.eq(x.mul(&x.inverse()?)?, one, || format!("{k} * 1/{k}"));
        }
        Ok(())
    });

    checks.add("fractions are well defined", |c| {
        for _ in 0..n {
            let f = sampling::element(rng, ctx);
            let (k, m) = (rng.gen_range(1..=100u64), rng.gen_range(1..=100u64));
            let a = adele_from_fraction(&f, k)?;
            let b = adele_from_fraction(&f.mul(&ctx.integer(m))?, k * m)?;
            let level = |p: u64| i64::from(ctx.precision()) - v_p(k, p) - v_p(m, p);
            c.case(a.congruent_mod(&b, level)?, || {
                format!("{f:?}/{k} vs {f:?}*{m}/{}", k * m)
            });
            let z = |zp: &Zp| zp.zero();
            let _ = z;
        }
        Ok(())
    });

    checks
}

fn v_p(mut n: u64, p: u64) -> i64 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}
