//! Ideals of `prod Z_p` in valuation-vector normal form, and the finite
//! prime spectrum.
//!
//! Every ideal of a finite product of discrete valuation rings is a product
//! of ideals `p^k Z_p` (or zero), so an ideal is pinned down by one exponent
//! per prime. At precision `N` the zero ideal and `p^k` for `k >= N` cannot
//! be told apart by membership; exponents derived from generators that
//! vanish modulo `p^N` are recorded as [`Exponent::Infinite`] and the ideal
//! is flagged as precision-relative.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::Ultrafilter;
use crate::padic::{PAdicInt, Valuation};
use crate::product::{Idempotent, ProductElement, RingContext};

/// Exponent `k` of the component ideal `p^k Z_p`; `Infinite` is `(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn of(v: Valuation) -> Self {
        match v {
            Valuation::Exact(k) => Exponent::Finite(k),
            Valuation::AtLeastPrecision => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// Verdict of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// False when the verdict treats a residue that vanishes modulo `p^N`
    /// as an exact zero.
    pub certain: bool,
}

/// A finitely generated ideal with its valuation-vector normal form.
#[derive(Clone)]
pub struct FinGenIdeal {
    context: RingContext,
    generators: Vec<ProductElement>,
    exponents: Vec<Exponent>,
}

impl FinGenIdeal {
    /// The ideal generated by `generators`; no generators gives `(0)`.
    pub fn generated_by(context: &RingContext, generators: &[ProductElement]) -> Result<Self> {
        for g in generators {
            context.check_same(g.context())?;
        }
        let exponents = (0..context.len())
            .map(|i| {
                generators
                    .iter()
                    .map(|g| Exponent::of(g.components()[i].valuation()))
                    .min()
                    .unwrap_or(Exponent::Infinite)
            })
            .collect();
        Ok(FinGenIdeal {
            context: context.clone(),
            generators: generators.to_vec(),
            exponents,
        })
    }

    pub fn principal(f: &ProductElement) -> Self {
        Self::generated_by(f.context(), std::slice::from_ref(f)).expect("a single generator shares its own context")
    }

    /// The ideal with the given exponent vector. Finite exponents may reach
    /// `N`, which names `p^N Z_p` even though its generator reads as zero.
    pub fn from_exponents(context: &RingContext, exponents: Vec<Exponent>) -> Result<Self> {
        if exponents.len() != context.len() {
            return Err(Error::malformed(
                "exponents",
                format!("expected {} entries, got {}", context.len(), exponents.len()),
            ));
        }
        if let Some(k) = exponents.iter().find_map(|e| match e {
            Exponent::Finite(k) if *k > context.precision() => Some(*k),
            _ => None,
        }) {
            return Err(Error::PrecisionExhausted(k));
        }
        let mut ideal = FinGenIdeal {
            context: context.clone(),
            generators: Vec::new(),
            exponents,
        };
        ideal.generators = vec![ideal.canonical_generator()];
        Ok(ideal)
    }

    pub fn unit(context: &RingContext) -> Self {
        Self::principal(&context.one())
    }

    pub fn zero(context: &RingContext) -> Self {
        Self::principal(&context.zero())
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn generators(&self) -> &[ProductElement] {
        &self.generators
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn exponent_at(&self, p: u64) -> Result<Exponent> {
        Ok(self.exponents[self.context.index_of(p)?])
    }

    /// The single generator `(p^{w(p)})_p`, zero where `w(p)` is infinite.
    pub fn canonical_generator(&self) -> ProductElement {
        let components = self
            .context
            .rings()
            .iter()
            .zip(&self.exponents)
            .map(|(zp, e)| match e {
                Exponent::Finite(k) => zp.element(num_bigint::BigInt::from(zp.prime()).pow(*k)),
                Exponent::Infinite => zp.zero(),
            })
            .collect();
        self.context
            .from_components(components)
            .expect("canonical generator is built from the context's rings")
    }

    pub fn is_proper(&self) -> bool {
        self.exponents.iter().any(|e| *e != Exponent::Finite(0))
    }

    /// True when some exponent came from a residue that vanishes mod `p^N`.
    pub fn precision_relative(&self) -> bool {
        self.exponents.contains(&Exponent::Infinite)
    }

    pub fn membership(&self, f: &ProductElement) -> Result<Membership> {
        self.context.check_same(f.context())?;
        let mut certain = true;
        for (a, w) in f.components().iter().zip(&self.exponents) {
            match (a.valuation(), w) {
                (Valuation::Exact(v), Exponent::Finite(k)) if v < *k => {
                    return Ok(Membership {
                        member: false,
                        certain: true,
                    })
                }
                (Valuation::Exact(_), Exponent::Infinite) => {
                    return Ok(Membership {
                        member: false,
                        certain: true,
                    })
                }
                (Valuation::AtLeastPrecision, Exponent::Infinite) => certain = false,
                _ => {}
            }
        }
        Ok(Membership { member: true, certain })
    }

    /// Membership with the infinite-exponent convention.
    pub fn contains(&self, f: &ProductElement) -> Result<bool> {
        Ok(self.membership(f)?.member)
    }

    /// Membership that refuses to answer when the verdict depends on digits
    /// beyond the precision.
    pub fn decide(&self, f: &ProductElement) -> Result<bool> {
        let m = self.membership(f)?;
        if m.certain {
            Ok(m.member)
        } else {
            Err(Error::PrecisionExhausted(self.context.precision()))
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &FinGenIdeal) -> Result<bool> {
        self.context.check_same(&other.context)?;
        Ok(self.exponents.iter().zip(&other.exponents).all(|(a, b)| a >= b))
    }

    /// Sum of ideals: componentwise minimum exponent.
    pub fn sum(&self, other: &FinGenIdeal) -> Result<FinGenIdeal> {
        self.context.check_same(&other.context)?;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(FinGenIdeal {
            context: self.context.clone(),
            generators,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        })
    }
}

impl PartialEq for FinGenIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.context == other.context && self.exponents == other.exponents
    }
}

impl Eq for FinGenIdeal {}

impl fmt::Debug for FinGenIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(w = [")?;
        for (i, (p, e)) in self.context.primes().iter().zip(&self.exponents).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{e}")?;
        }
        write!(f, "])")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Minimal,
    Maximal,
}

impl Level {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "minimal" | "min" => Ok(Level::Minimal),
            "maximal" | "max" => Ok(Level::Maximal),
            other => Err(Error::malformed(
                "level",
                format!("expected `minimal` or `maximal`, got `{other}`"),
            )),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Minimal => "minimal",
            Level::Maximal => "maximal",
        }
    }
}

/// A point of the finite spectrum: the minimal or maximal prime of the
/// chain indexed by `prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub prime: u64,
    pub level: Level,
}

impl PrimeIdeal {
    pub fn minimal(prime: u64) -> Self {
        PrimeIdeal {
            prime,
            level: Level::Minimal,
        }
    }

    pub fn maximal(prime: u64) -> Self {
        PrimeIdeal {
            prime,
            level: Level::Maximal,
        }
    }

    /// `1 - e_{p}` for the minimal prime, `1 - (1 - p) e_{p}` for the
    /// maximal one.
    pub fn generator(&self, context: &RingContext) -> Result<ProductElement> {
        let e = Idempotent::new(context, [self.prime])?.to_element();
        let one = context.one();
        match self.level {
            Level::Minimal => one.sub(&e),
            Level::Maximal => {
                let one_minus_p = context.integer(1i64 - self.prime as i64);
                one.sub(&one_minus_p.mul(&e)?)
            }
        }
    }

    pub fn ideal(&self, context: &RingContext) -> Result<FinGenIdeal> {
        Ok(FinGenIdeal::principal(&self.generator(context)?))
    }

    pub fn contains(&self, context: &RingContext, f: &ProductElement) -> Result<bool> {
        self.ideal(context)?.contains(f)
    }

    pub fn ultrafilter(&self) -> Ultrafilter {
        Ultrafilter::at(self.prime)
    }

    /// Parses the display form, `p_3` or `m_3`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::malformed("point", format!("expected p_<prime> or m_<prime>, got `{s}`"));
        let (level, rest) = match s.trim().split_once('_') {
            Some(("p", rest)) => (Level::Minimal, rest),
            Some(("m", rest)) => (Level::Maximal, rest),
            _ => return Err(bad()),
        };
        let prime = rest.parse().map_err(|_| bad())?;
        Ok(PrimeIdeal { prime, level })
    }

    /// The other end of this point's chain.
    pub fn partner(&self) -> PrimeIdeal {
        match self.level {
            Level::Minimal => PrimeIdeal::maximal(self.prime),
            Level::Maximal => PrimeIdeal::minimal(self.prime),
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Level::Minimal => write!(f, "p_{}", self.prime),
            Level::Maximal => write!(f, "m_{}", self.prime),
        }
    }
}

/// Classifies an ideal as prime: the exponent vector must vanish away from a
/// single prime `q`, where it is 1 (maximal) or infinite (minimal).
pub fn is_prime(ideal: &FinGenIdeal) -> Option<PrimeIdeal> {
    let support: Vec<(u64, Exponent)> = ideal
        .context
        .primes()
        .iter()
        .zip(&ideal.exponents)
        .filter(|(_, e)| **e != Exponent::Finite(0))
        .map(|(p, e)| (*p, *e))
        .collect();
    match support.as_slice() {
        [(q, Exponent::Infinite)] => Some(PrimeIdeal::minimal(*q)),
        [(q, Exponent::Finite(1))] => Some(PrimeIdeal::maximal(*q)),
        _ => None,
    }
}

/// Every point of `Spec R`: one minimal and one maximal prime per `p in S`.
pub fn spec_enumerate(context: &RingContext) -> Vec<PrimeIdeal> {
    context
        .primes()
        .iter()
        .flat_map(|&p| [PrimeIdeal::minimal(p), PrimeIdeal::maximal(p)])
        .collect()
}

/// Containment of points, decided on normal forms.
pub fn prime_le(context: &RingContext, a: &PrimeIdeal, b: &PrimeIdeal) -> Result<bool> {
    a.ideal(context)?.is_subset_of(&b.ideal(context)?)
}

/// The maximal points containing `p`, by exhaustive containment.
pub fn maximals_over(context: &RingContext, p: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
    let ideal = p.ideal(context)?;
    let mut out = Vec::new();
    for q in spec_enumerate(context) {
        if q.level == Level::Maximal && ideal.is_subset_of(&q.ideal(context)?)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// The minimal points contained in `p`, by exhaustive containment.
pub fn minimals_under(context: &RingContext, p: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
    let ideal = p.ideal(context)?;
    let mut out = Vec::new();
    for q in spec_enumerate(context) {
        if q.level == Level::Minimal && q.ideal(context)?.is_subset_of(&ideal)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// The unique maximal ideal over `p`.
///
/// # Panics
///
/// If the exhaustive search finds zero or several maximal ideals, which
/// would contradict the pm-ring property.
pub fn unique_maximal_over(context: &RingContext, p: &PrimeIdeal) -> Result<PrimeIdeal> {
    let found = maximals_over(context, p)?;
    assert_eq!(found.len(), 1, "{p} lies under {found:?}");
    Ok(found[0])
}

/// All ideals containing `p`, smallest first, exponents capped at `N`.
pub fn ideals_above(context: &RingContext, p: &PrimeIdeal) -> Result<Vec<FinGenIdeal>> {
    let base = p.ideal(context)?;
    let n = context.precision();
    // Per-component candidate exponents, largest (smallest ideal) first.
    let ranges: Vec<Vec<Exponent>> = base
        .exponents
        .iter()
        .map(|e| match e {
            Exponent::Infinite => std::iter::once(Exponent::Infinite)
                .chain((0..=n).rev().map(Exponent::Finite))
                .collect(),
            Exponent::Finite(k) => (0..=*k).rev().map(Exponent::Finite).collect(),
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; ranges.len()];
    loop {
        let exps = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
        out.push(FinGenIdeal::from_exponents(context, exps)?);
        // Odometer over the per-component choices.
        let mut k = ranges.len();
        loop {
            if k == 0 {
                out.sort_by(|a, b| {
                    if a == b {
                        Ordering::Equal
                    } else if a.is_subset_of(b).unwrap_or(false) {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                });
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ranges[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// A principal ideal `(a)` of `Z_p`, ordered by divisibility: `(a) <= (b)`
/// when `a | b`. `Infinity` is `(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueClass {
    Finite(u32),
    Infinity,
}

impl ValueClass {
    pub const IDENTITY: ValueClass = ValueClass::Finite(0);

    /// `(a) ⊕ (b) = (ab)`.
    pub fn oplus(self, other: ValueClass) -> ValueClass {
        match (self, other) {
            (ValueClass::Finite(a), ValueClass::Finite(b)) => ValueClass::Finite(a + b),
            _ => ValueClass::Infinity,
        }
    }
}

/// The value class of `a`; a residue vanishing mod `p^N` reads as `(0)`.
pub fn value_of(a: &PAdicInt) -> ValueClass {
    match a.valuation() {
        Valuation::Exact(k) => ValueClass::Finite(k),
        Valuation::AtLeastPrecision => ValueClass::Infinity,
    }
}

/// Compares `(a)` with `(b)` in the value semigroup.
pub fn value_and_divisibility(a: &PAdicInt, b: &PAdicInt) -> Result<Ordering> {
    if a.ring() != b.ring() {
        return Err(Error::MixedContext(format!("{:?} vs {:?}", a.ring(), b.ring())));
    }
    match (a.valuation(), b.valuation()) {
        (Valuation::AtLeastPrecision, Valuation::AtLeastPrecision) => Err(Error::PrecisionExhausted(a.precision())),
        (va, vb) => Ok(value_of_valuation(va).cmp(&value_of_valuation(vb))),
    }
}

fn value_of_valuation(v: Valuation) -> ValueClass {
    match v {
        Valuation::Exact(k) => ValueClass::Finite(k),
        Valuation::AtLeastPrecision => ValueClass::Infinity,
    }
}

/// `V_R(f)`: the points containing `f`.
pub fn vanishing_set(f: &ProductElement) -> Result<BTreeSet<PrimeIdeal>> {
    let mut out = BTreeSet::new();
    for q in spec_enumerate(f.context()) {
        if q.contains(f.context(), f)? {
            out.insert(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Zp;

    fn s235() -> RingContext {
        RingContext::new(&[2, 3, 5], 24).unwrap()
    }

    fn w(xs: &[Option<u32>]) -> Vec<Exponent> {
        xs.iter()
            .map(|x| x.map_or(Exponent::Infinite, Exponent::Finite))
            .collect()
    }

    #[test]
    fn point_names_round_trip() {
        for x in spec_enumerate(&s235()) {
            assert_eq!(PrimeIdeal::parse(&x.to_string()).unwrap(), x);
        }
        for bad in ["q_3", "m3", "m_x", ""] {
            assert!(PrimeIdeal::parse(bad).is_err());
        }
    }

    #[test]
    fn membership_examples() {
        let ctx = s235();
        let g = FinGenIdeal::principal(&ctx.element([2, 3, 5]).unwrap());
        assert!(g.contains(&ctx.element([4, 9, 5]).unwrap()).unwrap());
        assert!(!g.contains(&ctx.one()).unwrap());
        let p2 = PrimeIdeal::minimal(2).ideal(&ctx).unwrap();
        assert!(!p2.contains(&ctx.element([2, 1, 1]).unwrap()).unwrap());
    }

    #[test]
    fn uncertain_membership_and_strict_mode() {
        let ctx = s235();
        let p3 = PrimeIdeal::minimal(3).ideal(&ctx).unwrap();
        let f = ctx.element([1, 0, 4]).unwrap();
        let m = p3.membership(&f).unwrap();
        assert!(m.member && !m.certain);
        assert_eq!(p3.decide(&f), Err(Error::PrecisionExhausted(24)));
        let m3 = PrimeIdeal::maximal(3).ideal(&ctx).unwrap();
        assert_eq!(m3.decide(&f), Ok(true));
    }

    #[test]
    fn is_prime_examples() {
        let ctx = s235();
        let minimal = FinGenIdeal::from_exponents(&ctx, w(&[Some(0), None, Some(0)])).unwrap();
        assert_eq!(is_prime(&minimal), Some(PrimeIdeal::minimal(3)));
        let maximal = FinGenIdeal::from_exponents(&ctx, w(&[Some(0), Some(1), Some(0)])).unwrap();
        assert_eq!(is_prime(&maximal), Some(PrimeIdeal::maximal(3)));
        let square = FinGenIdeal::from_exponents(&ctx, w(&[Some(0), Some(2), Some(0)])).unwrap();
        assert_eq!(is_prime(&square), None);
        // Brute-force witness that (0,2,0) is not prime: x not in, x^2 in.
        let x = ctx.element([1, 3, 1]).unwrap();
        assert!(!square.contains(&x).unwrap());
        assert!(square.contains(&x.mul(&x).unwrap()).unwrap());
        assert_eq!(is_prime(&FinGenIdeal::unit(&ctx)), None);
    }

    #[test]
    fn generators_match_normal_forms() {
        let ctx = s235();
        let min3 = PrimeIdeal::minimal(3);
        assert_eq!(min3.generator(&ctx).unwrap(), ctx.element([1, 0, 1]).unwrap());
        let max3 = PrimeIdeal::maximal(3);
        assert_eq!(max3.generator(&ctx).unwrap(), ctx.element([1, 3, 1]).unwrap());
        assert_eq!(is_prime(&min3.ideal(&ctx).unwrap()), Some(min3));
        assert_eq!(is_prime(&max3.ideal(&ctx).unwrap()), Some(max3));
        // The diagonal image of p generates the maximal ideal.
        assert_eq!(FinGenIdeal::principal(&ctx.integer(3)), max3.ideal(&ctx).unwrap());
    }

    #[test]
    fn spec_and_containment_matrix() {
        let ctx = s235();
        let spec = spec_enumerate(&ctx);
        assert_eq!(spec.len(), 6);
        for a in &spec {
            for b in &spec {
                let le = prime_le(&ctx, a, b).unwrap();
                let expected = a == b || (a.prime == b.prime && a.level == Level::Minimal && b.level == Level::Maximal);
                assert_eq!(le, expected, "{a} <= {b}");
            }
        }
        let single = RingContext::new(&[2], 8).unwrap();
        assert_eq!(
            spec_enumerate(&single),
            vec![PrimeIdeal::minimal(2), PrimeIdeal::maximal(2)]
        );
    }

    #[test]
    fn pm_ring_over_four_primes() {
        let ctx = RingContext::new(&[2, 3, 5, 7], 24).unwrap();
        for p in spec_enumerate(&ctx) {
            assert_eq!(maximals_over(&ctx, &p).unwrap(), vec![PrimeIdeal::maximal(p.prime)]);
            assert_eq!(unique_maximal_over(&ctx, &p).unwrap(), PrimeIdeal::maximal(p.prime));
        }
    }

    #[test]
    fn ideals_above_examples() {
        let ctx = RingContext::new(&[2, 3], 3).unwrap();
        let chain = ideals_above(&ctx, &PrimeIdeal::minimal(3)).unwrap();
        let exps: Vec<Exponent> = chain.iter().map(|i| i.exponent_at(3).unwrap()).collect();
        assert_eq!(exps, w(&[None, Some(3), Some(2), Some(1), Some(0)]));
        for a in &chain {
            for b in &chain {
                assert!(a.is_subset_of(b).unwrap() || b.is_subset_of(a).unwrap());
            }
        }
        let chain = ideals_above(&ctx, &PrimeIdeal::maximal(3)).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[1], FinGenIdeal::unit(&ctx));
    }

    #[test]
    fn value_semigroup_examples() {
        let z5 = Zp::new(5, 6).unwrap();
        let (a, b) = (z5.element(50), z5.element(5));
        assert_eq!(value_and_divisibility(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(value_and_divisibility(&z5.one(), &a).unwrap(), Ordering::Less);
        assert_eq!(value_and_divisibility(&z5.one(), &z5.one()).unwrap(), Ordering::Equal);
        assert_eq!(
            value_and_divisibility(&z5.zero(), &z5.zero()),
            Err(Error::PrecisionExhausted(6))
        );
        assert_eq!(value_of(&a).oplus(ValueClass::Infinity), ValueClass::Infinity);
        assert_eq!(value_of(&a).oplus(value_of(&b)), value_of(&(&a * &b)));
        assert_eq!(ValueClass::IDENTITY.oplus(value_of(&a)), value_of(&a));
    }
}
