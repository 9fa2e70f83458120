//! The ring `R = prod_{p in S} Z_p` over a finite set of primes.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{PAdicInt, Valuation, Zp, DEFAULT_PRECISION};

#[derive(Debug)]
struct ContextInner {
    primes: Vec<u64>,
    precision: u32,
    rings: Vec<Zp>,
}

/// Finite ordered set of primes `S` plus a shared precision `N`.
#[derive(Clone)]
pub struct RingContext {
    inner: Arc<ContextInner>,
}

impl RingContext {
    /// `primes` must be nonempty, strictly increasing and prime.
    pub fn new(primes: &[u64], precision: u32) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidContext("prime set is empty".into()));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidContext(format!(
                "primes must be strictly increasing, got {primes:?}"
            )));
        }
        let rings = primes
            .iter()
            .map(|&p| Zp::new(p, precision))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingContext {
            inner: Arc::new(ContextInner {
                primes: primes.to_vec(),
                precision,
                rings,
            }),
        })
    }

    pub fn with_default_precision(primes: &[u64]) -> Result<Self> {
        Self::new(primes, DEFAULT_PRECISION)
    }

    pub fn primes(&self) -> &[u64] {
        &self.inner.primes
    }

    pub fn precision(&self) -> u32 {
        self.inner.precision
    }

    pub fn len(&self) -> usize {
        self.inner.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.primes.is_empty()
    }

    pub fn index_of(&self, p: u64) -> Result<usize> {
        self.inner.primes.binary_search(&p).map_err(|_| Error::UnknownPrime(p))
    }

    /// The component ring `Z_p`.
    pub fn ring(&self, p: u64) -> Result<&Zp> {
        Ok(&self.inner.rings[self.index_of(p)?])
    }

    pub fn rings(&self) -> &[Zp] {
        &self.inner.rings
    }

    pub fn prime_set(&self) -> BTreeSet<u64> {
        self.inner.primes.iter().copied().collect()
    }

    pub fn zero(&self) -> ProductElement {
        self.from_fn(|zp| zp.zero())
    }

    pub fn one(&self) -> ProductElement {
        self.from_fn(|zp| zp.one())
    }

    /// Diagonal image of an integer.
    pub fn integer(&self, n: impl Into<BigInt>) -> ProductElement {
        let n = n.into();
        self.from_fn(|zp| zp.element(n.clone()))
    }

    pub fn from_fn(&self, mut f: impl FnMut(&Zp) -> PAdicInt) -> ProductElement {
        ProductElement {
            context: self.clone(),
            components: self.inner.rings.iter().map(&mut f).collect(),
        }
    }

    /// One integer per prime, in the order of `S`.
    pub fn element<I, T>(&self, values: I) -> Result<ProductElement>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let values: Vec<BigInt> = values.into_iter().map(Into::into).collect();
        if values.len() != self.len() {
            return Err(Error::malformed(
                "components",
                format!("expected {} components, got {}", self.len(), values.len()),
            ));
        }
        Ok(ProductElement {
            context: self.clone(),
            components: self
                .inner
                .rings
                .iter()
                .zip(values)
                .map(|(zp, v)| zp.element(v))
                .collect(),
        })
    }

    pub fn from_components(&self, components: Vec<PAdicInt>) -> Result<ProductElement> {
        if components.len() != self.len() {
            return Err(Error::malformed(
                "components",
                format!("expected {} components, got {}", self.len(), components.len()),
            ));
        }
        for (c, zp) in components.iter().zip(self.rings()) {
            if c.ring() != zp {
                return Err(Error::MixedContext(format!("component {c:?} does not live in {zp:?}")));
            }
        }
        Ok(ProductElement {
            context: self.clone(),
            components,
        })
    }

    pub(crate) fn check_same(&self, other: &RingContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedContext(format!("{self:?} vs {other:?}")))
        }
    }

    pub(crate) fn check_subset(&self, set: &BTreeSet<u64>) -> Result<()> {
        match set.iter().find(|p| self.index_of(**p).is_err()) {
            Some(&p) => Err(Error::UnknownPrime(p)),
            None => Ok(()),
        }
    }

    /// All subsets of `S`, by bitmask over the prime order.
    pub fn subsets(&self) -> impl Iterator<Item = BTreeSet<u64>> + '_ {
        let n = self.len();
        (0u64..(1u64 << n)).map(move |mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.inner.primes[i])
                .collect()
        })
    }
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.primes == other.inner.primes && self.inner.precision == other.inner.precision)
    }
}

impl Eq for RingContext {}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={:?}, N={}", self.inner.primes, self.inner.precision)
    }
}

/// An element of `prod_{p in S} Z_p`, stored densely in the order of `S`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProductElement {
    context: RingContext,
    components: Vec<PAdicInt>,
}

impl ProductElement {
    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn components(&self) -> &[PAdicInt] {
        &self.components
    }

    pub fn component(&self, p: u64) -> Result<&PAdicInt> {
        Ok(&self.components[self.context.index_of(p)?])
    }

    /// `(p, f(p))` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &PAdicInt)> {
        self.context.primes().iter().copied().zip(self.components.iter())
    }

    fn zip_with(
        &self,
        other: &ProductElement,
        op: impl Fn(&PAdicInt, &PAdicInt) -> PAdicInt,
    ) -> Result<ProductElement> {
        self.context.check_same(&other.context)?;
        Ok(ProductElement {
            context: self.context.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ProductElement) -> Result<ProductElement> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ProductElement) -> Result<ProductElement> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &ProductElement) -> Result<ProductElement> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> ProductElement {
        self.map(|a| -a)
    }

    pub fn map(&self, f: impl Fn(&PAdicInt) -> PAdicInt) -> ProductElement {
        ProductElement {
            context: self.context.clone(),
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.components.iter().map(PAdicInt::valuation).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PAdicInt::is_zero)
    }

    /// A unit exactly when no component lies in its maximal ideal.
    pub fn is_unit(&self) -> bool {
        self.components.iter().all(PAdicInt::is_unit)
    }

    /// Componentwise inverse of a unit.
    pub fn inverse(&self) -> Result<ProductElement> {
        let components = self
            .components
            .iter()
            .map(PAdicInt::inv_unit)
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductElement {
            context: self.context.clone(),
            components,
        })
    }

    pub fn truth_set(&self, predicate: Predicate) -> TruthSet {
        truth_set(self, predicate)
    }

    /// Residue strings in the order of `S`.
    pub fn residue_strings(&self) -> Vec<String> {
        self.components.iter().map(|c| c.residue().to_string()).collect()
    }
}

impl fmt::Debug for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise predicates whose truth sets are tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    IsZero,
    InMaximal,
    IsUnit,
}

impl Predicate {
    pub const ALL: [Predicate; 3] = [Predicate::IsZero, Predicate::InMaximal, Predicate::IsUnit];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::IsZero => "zero",
            Predicate::InMaximal => "maximal",
            Predicate::IsUnit => "unit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero" | "is_zero" => Ok(Predicate::IsZero),
            "maximal" | "in_maximal" => Ok(Predicate::InMaximal),
            "unit" | "is_unit" => Ok(Predicate::IsUnit),
            other => Err(Error::malformed(
                "predicate",
                format!("unknown predicate `{other}` (expected zero, maximal or unit)"),
            )),
        }
    }
}

/// The set of indices where a componentwise predicate holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthSet {
    pub predicate: Predicate,
    pub members: BTreeSet<u64>,
    /// False when a zero verdict rests on a residue that is only known to
    /// vanish modulo `p^N`.
    pub certain: bool,
}

pub fn truth_set(f: &ProductElement, predicate: Predicate) -> TruthSet {
    let members: BTreeSet<u64> = f
        .iter()
        .filter(|(_, a)| match predicate {
            Predicate::IsZero => a.is_zero(),
            Predicate::InMaximal => !a.is_unit(),
            Predicate::IsUnit => a.is_unit(),
        })
        .map(|(p, _)| p)
        .collect();
    let certain = predicate != Predicate::IsZero || members.is_empty();
    TruthSet {
        predicate,
        members,
        certain,
    }
}

pub fn is_unit(f: &ProductElement) -> bool {
    f.is_unit()
}

/// Witness that `1 - e_X` lies in `fR` for `X` the locus where `f` is not
/// a unit: `g` is `0` on `X` and `1/f(p)` elsewhere, so `f*g = 1 - e_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionWitness {
    pub multiplier: ProductElement,
    pub locus: BTreeSet<u64>,
}

pub fn division_witness(f: &ProductElement) -> DivisionWitness {
    let locus = truth_set(f, Predicate::InMaximal).members;
    let multiplier = ProductElement {
        context: f.context.clone(),
        components: f
            .iter()
            .map(|(p, a)| {
                if locus.contains(&p) {
                    a.ring().zero()
                } else {
                    a.inv_unit().expect("components off the locus are units")
                }
            })
            .collect(),
    };
    DivisionWitness { multiplier, locus }
}

/// The idempotent `e_X`: 1 on `X`, 0 off `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotent {
    context: RingContext,
    support: BTreeSet<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanOp {
    Meet,
    Join,
    Complement,
}

impl Idempotent {
    pub fn new(context: &RingContext, support: impl IntoIterator<Item = u64>) -> Result<Self> {
        let support: BTreeSet<u64> = support.into_iter().collect();
        context.check_subset(&support)?;
        Ok(Idempotent {
            context: context.clone(),
            support,
        })
    }

    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn to_element(&self) -> ProductElement {
        self.context.from_fn(|zp| {
            if self.support.contains(&zp.prime()) {
                zp.one()
            } else {
                zp.zero()
            }
        })
    }

    /// Recovers `X` from an element that is an idempotent 0/1 vector.
    pub fn from_element(f: &ProductElement) -> Option<Self> {
        let mut support = BTreeSet::new();
        for (p, a) in f.iter() {
            if a == &a.ring().one() {
                support.insert(p);
            } else if !a.is_zero() {
                return None;
            }
        }
        Some(Idempotent {
            context: f.context.clone(),
            support,
        })
    }

    pub fn meet(&self, other: &Idempotent) -> Result<Idempotent> {
        idempotent_algebra(self, Some(other), BooleanOp::Meet)
    }

    pub fn join(&self, other: &Idempotent) -> Result<Idempotent> {
        idempotent_algebra(self, Some(other), BooleanOp::Join)
    }

    pub fn complement(&self) -> Idempotent {
        idempotent_algebra(self, None, BooleanOp::Complement).expect("complement needs no second operand")
    }
}

/// Boolean operations evaluated through ring arithmetic: meet is `e_X e_Y`,
/// join is `e_X + e_Y - e_X e_Y`, complement is `1 - e_X`.
pub fn idempotent_algebra(x: &Idempotent, y: Option<&Idempotent>, op: BooleanOp) -> Result<Idempotent> {
    let ex = x.to_element();
    let result = match (op, y) {
        (BooleanOp::Complement, _) => x.context.one().sub(&ex)?,
        (_, None) => {
            return Err(Error::malformed("operand", "meet and join need two idempotents"));
        }
        (BooleanOp::Meet, Some(y)) => {
            x.context.check_same(&y.context)?;
            ex.mul(&y.to_element())?
        }
        (BooleanOp::Join, Some(y)) => {
            x.context.check_same(&y.context)?;
            let ey = y.to_element();
            ex.add(&ey)?.sub(&ex.mul(&ey)?)?
        }
    };
    Ok(Idempotent::from_element(&result).expect("Boolean combinations of idempotents are idempotent"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s235() -> RingContext {
        RingContext::new(&[2, 3, 5], 24).unwrap()
    }

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn context_validation() {
        assert!(RingContext::new(&[], 4).is_err());
        assert!(RingContext::new(&[3, 2], 4).is_err());
        assert!(RingContext::new(&[2, 2], 4).is_err());
        assert_eq!(RingContext::new(&[2, 4], 4).unwrap_err(), Error::NonPrimeModulus(4));
    }

    #[test]
    fn truth_set_examples() {
        let ctx = s235();
        let f = ctx.element([0, 3, 1]).unwrap();
        let z = f.truth_set(Predicate::IsZero);
        assert_eq!(z.members, set(&[2]));
        assert!(!z.certain);
        assert_eq!(f.truth_set(Predicate::InMaximal).members, set(&[2, 3]));
        assert_eq!(f.truth_set(Predicate::IsUnit).members, set(&[5]));

        let e = Idempotent::new(&ctx, [3]).unwrap().to_element();
        assert_eq!(e.truth_set(Predicate::IsZero).members, set(&[2, 5]));
        assert_eq!(e.truth_set(Predicate::IsUnit).members, set(&[3]));

        let one = ctx.one();
        let m = one.truth_set(Predicate::InMaximal);
        assert!(m.members.is_empty() && m.certain);
    }

    #[test]
    fn unit_examples() {
        let ctx = s235();
        assert!(ctx.element([1, 1, 1]).unwrap().is_unit());
        assert!(!ctx.element([2, 1, 1]).unwrap().is_unit());
        assert!(!Idempotent::new(&ctx, [2, 3]).unwrap().to_element().is_unit());
    }

    #[test]
    fn division_witness_examples() {
        let ctx = s235();
        let f = ctx.element([4, 1, 1]).unwrap();
        let w = division_witness(&f);
        assert_eq!(w.locus, set(&[2]));
        assert_eq!(w.multiplier, ctx.element([0, 1, 1]).unwrap());
        assert_eq!(f.mul(&w.multiplier).unwrap(), ctx.element([0, 1, 1]).unwrap());

        let u = ctx.element([3, 2, 7]).unwrap();
        let w = division_witness(&u);
        assert!(w.locus.is_empty());
        assert_eq!(u.mul(&w.multiplier).unwrap(), ctx.one());

        let w = division_witness(&ctx.zero());
        assert_eq!(w.locus, ctx.prime_set());
        assert!(w.multiplier.is_zero());
    }

    #[test]
    fn boolean_algebra_examples() {
        let ctx = s235();
        let e23 = Idempotent::new(&ctx, [2, 3]).unwrap();
        let e35 = Idempotent::new(&ctx, [3, 5]).unwrap();
        assert_eq!(e23.meet(&e35).unwrap().support(), &set(&[3]));
        let all = Idempotent::new(&ctx, [2, 3, 5]).unwrap();
        assert!(all.complement().support().is_empty());
        assert!(all.complement().to_element().is_zero());
        let e2 = Idempotent::new(&ctx, [2]).unwrap();
        let e3 = Idempotent::new(&ctx, [3]).unwrap();
        assert_eq!(e2.join(&e3).unwrap().support(), &set(&[2, 3]));
        assert_eq!(Idempotent::new(&ctx, [7]).unwrap_err(), Error::UnknownPrime(7));
        let other = RingContext::new(&[2, 3], 24).unwrap();
        let f = Idempotent::new(&other, [2]).unwrap();
        assert!(matches!(e2.meet(&f), Err(Error::MixedContext(_))));
    }

    #[test]
    fn idempotents_are_boolean_algebra_exhaustively() {
        for primes in [&[2u64][..], &[2, 3], &[2, 3, 5], &[2, 3, 5, 7]] {
            let ctx = RingContext::new(primes, 6).unwrap();
            let subsets: Vec<_> = ctx.subsets().collect();
            for x in &subsets {
                let ex = Idempotent::new(&ctx, x.iter().copied()).unwrap();
                let e = ex.to_element();
                assert_eq!(e.mul(&e).unwrap(), e);
                let comp: BTreeSet<u64> = ctx.prime_set().difference(x).copied().collect();
                assert_eq!(ex.complement().support(), &comp);
                for y in &subsets {
                    let ey = Idempotent::new(&ctx, y.iter().copied()).unwrap();
                    let meet: BTreeSet<u64> = x.intersection(y).copied().collect();
                    let join: BTreeSet<u64> = x.union(y).copied().collect();
                    assert_eq!(ex.meet(&ey).unwrap().support(), &meet);
                    assert_eq!(ex.join(&ey).unwrap().support(), &join);
                    // Injectivity of X -> e_X.
                    assert_eq!(x == y, ex.to_element() == ey.to_element());
                }
            }
        }
    }
}
