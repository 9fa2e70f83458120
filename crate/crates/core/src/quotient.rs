//! Quotients `R/𝔭` and localizations `R_𝔭` at the points of the finite
//! spectrum, realized as the component ring they are isomorphic to.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{hensel_lift, PAdicInt, PAdicRational, Polynomial, Zp};
use crate::product::{ProductElement, RingContext};
use crate::spectrum::{FinGenIdeal, Level, PrimeIdeal};

/// The concrete ring a quotient, localization or section component is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// `F_p`.
    ResidueField(u64),
    /// `Z_p`.
    Integers(u64),
    /// `Q_p`.
    Rationals(u64),
}

impl ComponentKind {
    pub fn prime(self) -> u64 {
        match self {
            ComponentKind::ResidueField(p) | ComponentKind::Integers(p) | ComponentKind::Rationals(p) => p,
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, ComponentKind::Integers(_))
    }

    pub fn name(self) -> String {
        match self {
            ComponentKind::ResidueField(p) => format!("F_{p}"),
            ComponentKind::Integers(p) => format!("Z_{p}"),
            ComponentKind::Rationals(p) => format!("Q_{p}"),
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element of one of the [`ComponentKind`] rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentValue {
    Residue { prime: u64, value: u64 },
    Integer(PAdicInt),
    Rational(PAdicRational),
}

impl ComponentValue {
    pub fn kind(&self) -> ComponentKind {
        match self {
            ComponentValue::Residue { prime, .. } => ComponentKind::ResidueField(*prime),
            ComponentValue::Integer(a) => ComponentKind::Integers(a.prime()),
            ComponentValue::Rational(a) => ComponentKind::Rationals(a.prime()),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::MixedContext(format!("{} vs {}", self.kind(), other.kind()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ComponentValue::Residue { prime: p, value: a }, ComponentValue::Residue { prime: q, value: b })
                if p == q =>
            {
                Ok(ComponentValue::Residue {
                    prime: *p,
                    value: (a + b) % p,
                })
            }
            (ComponentValue::Integer(a), ComponentValue::Integer(b)) => Ok(ComponentValue::Integer(a.checked_add(b)?)),
            (ComponentValue::Rational(a), ComponentValue::Rational(b)) => {
                Ok(ComponentValue::Rational(a.checked_add(b)?))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (ComponentValue::Residue { prime: p, value: a }, ComponentValue::Residue { prime: q, value: b })
                if p == q =>
            {
                Ok(ComponentValue::Residue {
                    prime: *p,
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                })
            }
            (ComponentValue::Integer(a), ComponentValue::Integer(b)) => Ok(ComponentValue::Integer(a.checked_mul(b)?)),
            (ComponentValue::Rational(a), ComponentValue::Rational(b)) => {
                Ok(ComponentValue::Rational(a.checked_mul(b)?))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ComponentValue::Residue { prime, value } => ComponentValue::Residue {
                prime: *prime,
                value: (prime - value) % prime,
            },
            ComponentValue::Integer(a) => ComponentValue::Integer(-a),
            ComponentValue::Rational(a) => ComponentValue::Rational(-a),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ComponentValue::Residue { value, .. } => *value == 0,
            ComponentValue::Integer(a) => a.is_zero(),
            ComponentValue::Rational(a) => a.is_zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            ComponentValue::Residue { value, .. } => *value != 0,
            ComponentValue::Integer(a) => a.is_unit(),
            ComponentValue::Rational(a) => !a.is_zero(),
        }
    }

    /// Equality up to the known digits: `Q_p` values are compared modulo
    /// `p^N` absolutely, where `N` is the working precision.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (ComponentValue::Rational(a), ComponentValue::Rational(b)) => {
                a.congruent_mod(b, i64::from(a.ring().precision()))
            }
            _ if self.kind() == other.kind() => Ok(self == other),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Reduction `Z_p -> F_p`.
    pub fn reduce(&self) -> Result<Self> {
        match self {
            ComponentValue::Integer(a) => Ok(ComponentValue::Residue {
                prime: a.prime(),
                value: a.residue_mod_p(),
            }),
            ComponentValue::Residue { .. } => Ok(self.clone()),
            ComponentValue::Rational(_) => Err(Error::NotIntegral),
        }
    }
}

impl fmt::Display for ComponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentValue::Residue { value, .. } => write!(f, "{value}"),
            ComponentValue::Integer(a) => write!(f, "{a}"),
            ComponentValue::Rational(a) => write!(f, "{a}"),
        }
    }
}

/// `R/𝔭` with its projection.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    context: RingContext,
    prime_ideal: PrimeIdeal,
    kind: ComponentKind,
}

/// `F_p` at `𝔪_p`, `Z_p` at `𝔭_p`.
pub fn quotient(context: &RingContext, prime_ideal: &PrimeIdeal) -> Result<QuotientRing> {
    context.index_of(prime_ideal.prime)?;
    let p = prime_ideal.prime;
    let kind = match prime_ideal.level {
        Level::Maximal => ComponentKind::ResidueField(p),
        Level::Minimal => ComponentKind::Integers(p),
    };
    Ok(QuotientRing {
        context: context.clone(),
        prime_ideal: *prime_ideal,
        kind,
    })
}

impl QuotientRing {
    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn prime_ideal(&self) -> PrimeIdeal {
        self.prime_ideal
    }

    pub fn project(&self, f: &ProductElement) -> Result<ComponentValue> {
        self.context.check_same(f.context())?;
        let a = f.component(self.prime_ideal.prime)?.clone();
        let value = ComponentValue::Integer(a);
        match self.kind {
            ComponentKind::ResidueField(_) => value.reduce(),
            _ => Ok(value),
        }
    }

    pub fn kernel(&self) -> Result<FinGenIdeal> {
        self.prime_ideal.ideal(&self.context)
    }

    pub fn henselian_check(&self, poly: &Polynomial, a0: impl Into<BigInt>) -> Result<PAdicInt> {
        henselian_check(self.kind, self.context.ring(self.kind.prime())?, poly, a0)
    }
}

/// `R_𝔭` with its localization map and fraction normalization.
#[derive(Debug, Clone)]
pub struct LocalizedRing {
    context: RingContext,
    prime_ideal: PrimeIdeal,
    kind: ComponentKind,
}

/// `Z_p` at `𝔪_p`, `Q_p` at `𝔭_p`.
pub fn localize(context: &RingContext, prime_ideal: &PrimeIdeal) -> Result<LocalizedRing> {
    context.index_of(prime_ideal.prime)?;
    let p = prime_ideal.prime;
    let kind = match prime_ideal.level {
        Level::Maximal => ComponentKind::Integers(p),
        Level::Minimal => ComponentKind::Rationals(p),
    };
    Ok(LocalizedRing {
        context: context.clone(),
        prime_ideal: *prime_ideal,
        kind,
    })
}

impl LocalizedRing {
    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn prime_ideal(&self) -> PrimeIdeal {
        self.prime_ideal
    }

    /// `f ↦ f/1`.
    pub fn map(&self, f: &ProductElement) -> Result<ComponentValue> {
        self.context.check_same(f.context())?;
        let a = f.component(self.prime_ideal.prime)?;
        Ok(match self.kind {
            ComponentKind::Rationals(_) => ComponentValue::Rational(PAdicRational::from_int(a)),
            _ => ComponentValue::Integer(a.clone()),
        })
    }

    /// Normalizes `f/g`; `g` must avoid the prime.
    pub fn fraction(&self, f: &ProductElement, g: &ProductElement) -> Result<ComponentValue> {
        self.context.check_same(f.context())?;
        if self.prime_ideal.contains(&self.context, g)? {
            return Err(Error::DenominatorInPrime);
        }
        let p = self.prime_ideal.prime;
        let (a, b) = (f.component(p)?, g.component(p)?);
        Ok(match self.kind {
            ComponentKind::Rationals(_) => {
                ComponentValue::Rational(PAdicRational::from_int(a).checked_div(&PAdicRational::from_int(b))?)
            }
            _ => ComponentValue::Integer(a.checked_mul(&b.inv_unit()?)?),
        })
    }

    /// The kernel of the localization map: `δ_*` of the chain.
    pub fn kernel(&self) -> Result<FinGenIdeal> {
        PrimeIdeal::minimal(self.prime_ideal.prime).ideal(&self.context)
    }

    pub fn henselian_check(&self, poly: &Polynomial, a0: impl Into<BigInt>) -> Result<PAdicInt> {
        henselian_check(self.kind, self.context.ring(self.kind.prime())?, poly, a0)
    }
}

/// Lifts a simple root from the residue field of `kind`.
///
/// In `Z_p` this is Hensel lifting. In a field the maximal ideal is zero,
/// so an approximate root is already a root and is returned unchanged.
pub fn henselian_check(kind: ComponentKind, ring: &Zp, poly: &Polynomial, a0: impl Into<BigInt>) -> Result<PAdicInt> {
    if ring.prime() != kind.prime() {
        return Err(Error::MixedContext(format!("{} vs {:?}", kind, ring)));
    }
    let a0 = ring.element(a0);
    match kind {
        ComponentKind::Integers(_) => hensel_lift(poly, &a0),
        ComponentKind::ResidueField(p) => {
            let a = a0.truncate(1)?;
            let pm = num_bigint::BigUint::from(p);
            if poly.eval_mod(a.residue(), &pm) != num_bigint::BigUint::default() {
                return Err(Error::NotApproximateRoot);
            }
            if poly.derivative().eval_mod(a.residue(), &pm) == num_bigint::BigUint::default() {
                return Err(Error::SingularRoot);
            }
            Ok(a)
        }
        ComponentKind::Rationals(_) => {
            if !poly.eval(&a0).is_zero() {
                return Err(Error::NotApproximateRoot);
            }
            if poly.derivative().eval(&a0).is_zero() {
                return Err(Error::SingularRoot);
            }
            Ok(a0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::rational_embed;

    fn s235() -> RingContext {
        RingContext::new(&[2, 3, 5], 24).unwrap()
    }

    fn residue(prime: u64, value: u64) -> ComponentValue {
        ComponentValue::Residue { prime, value }
    }

    #[test]
    fn quotient_examples() {
        let ctx = s235();
        let q = quotient(&ctx, &PrimeIdeal::maximal(3)).unwrap();
        assert_eq!(q.kind(), ComponentKind::ResidueField(3));
        assert_eq!(q.project(&ctx.element([0, 1, 0]).unwrap()).unwrap(), residue(3, 1));
        assert_eq!(q.project(&ctx.element([0, 3, 0]).unwrap()).unwrap(), residue(3, 0));
        let q = quotient(&ctx, &PrimeIdeal::minimal(3)).unwrap();
        assert_eq!(
            q.project(&ctx.element([0, 7, 0]).unwrap()).unwrap(),
            ComponentValue::Integer(ctx.ring(3).unwrap().element(7))
        );
    }

    #[test]
    fn localize_examples() {
        let ctx = RingContext::new(&[2, 3], 24).unwrap();
        let l = localize(&ctx, &PrimeIdeal::minimal(2)).unwrap();
        let v = l
            .fraction(&ctx.element([2, 1]).unwrap(), &ctx.element([4, 1]).unwrap())
            .unwrap();
        assert_eq!(v, ComponentValue::Rational(rational_embed(1, 2, 2, 24).unwrap()));
        assert_eq!(
            l.fraction(&ctx.one(), &ctx.element([0, 1]).unwrap()),
            Err(Error::DenominatorInPrime)
        );

        let ctx = s235();
        let l = localize(&ctx, &PrimeIdeal::maximal(3)).unwrap();
        let v = l
            .fraction(&ctx.element([1, 2, 1]).unwrap(), &ctx.element([1, 5, 1]).unwrap())
            .unwrap();
        let z3 = ctx.ring(3).unwrap();
        assert_eq!(
            v,
            ComponentValue::Integer(&z3.element(2) * &z3.element(5).inv_unit().unwrap())
        );
        assert_eq!(
            l.fraction(&ctx.one(), &ctx.element([1, 3, 1]).unwrap()),
            Err(Error::DenominatorInPrime)
        );
    }

    #[test]
    fn localization_kernels() {
        let ctx = s235();
        let expected = FinGenIdeal::principal(&ctx.element([1, 0, 1]).unwrap());
        for pi in [PrimeIdeal::maximal(3), PrimeIdeal::minimal(3)] {
            let l = localize(&ctx, &pi).unwrap();
            assert_eq!(l.kernel().unwrap(), expected);
            let e3 = ctx.element([0, 1, 0]).unwrap();
            assert!(!l.kernel().unwrap().contains(&e3).unwrap());
            assert!(!l.map(&e3).unwrap().is_zero());
        }
    }

    #[test]
    fn henselian_examples() {
        let ctx = RingContext::new(&[2, 7], 3).unwrap();
        let poly = Polynomial::from_i64s(&[-2, 0, 1]);
        let l = localize(&ctx, &PrimeIdeal::maximal(7)).unwrap();
        assert_eq!(l.henselian_check(&poly, 3).unwrap().residue().to_string(), "108");
        let q = quotient(&ctx, &PrimeIdeal::minimal(7)).unwrap();
        assert_eq!(q.henselian_check(&poly, 3).unwrap().residue().to_string(), "108");
        // In the field Q_7 a root lifts to itself.
        let field = localize(&ctx, &PrimeIdeal::minimal(7)).unwrap();
        assert_eq!(field.henselian_check(&poly, 108).unwrap().residue().to_string(), "108");
        assert_eq!(field.henselian_check(&poly, 3), Err(Error::NotApproximateRoot));
        let f7 = quotient(&ctx, &PrimeIdeal::maximal(7)).unwrap();
        assert_eq!(f7.henselian_check(&poly, 3).unwrap().residue().to_string(), "3");
    }

    #[test]
    fn quotient_at_maximal_factors_through_minimal() {
        let ctx = s235();
        let f = ctx.element([5, 22, 9]).unwrap();
        let direct = quotient(&ctx, &PrimeIdeal::maximal(3)).unwrap().project(&f).unwrap();
        let via = quotient(&ctx, &PrimeIdeal::minimal(3)).unwrap().project(&f).unwrap();
        assert_eq!(direct, via.reduce().unwrap());
    }

    #[test]
    fn small_integers_in_localizations() {
        let ctx = RingContext::new(&[2, 3, 5, 7], 24).unwrap();
        for &p in ctx.primes() {
            let at_max = localize(&ctx, &PrimeIdeal::maximal(p)).unwrap();
            let at_min = localize(&ctx, &PrimeIdeal::minimal(p)).unwrap();
            for n in 1..=100i64 {
                let x = ctx.integer(n);
                assert_eq!(at_max.map(&x).unwrap().is_unit(), n % p as i64 != 0);
                assert!(at_min.map(&x).unwrap().is_unit());
            }
        }
    }
}
