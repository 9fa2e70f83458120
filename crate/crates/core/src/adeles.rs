//! The finite-adele variant `𝔸_S`: `prod_{p in S} Z_p` with the positive
//! integers inverted, which for finite `S` is `prod_{p in S} Q_p`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::PAdicRational;
use crate::product::{ProductElement, RingContext};
use crate::quotient::{ComponentKind, ComponentValue};
use crate::spectrum::{spec_enumerate, Exponent, FinGenIdeal, PrimeIdeal};

#[derive(Clone, PartialEq, Eq)]
pub struct AdeleElement {
    context: RingContext,
    components: Vec<PAdicRational>,
}

impl AdeleElement {
    pub fn from_components(context: &RingContext, components: Vec<PAdicRational>) -> Result<Self> {
        if components.len() != context.len() || components.iter().zip(context.rings()).any(|(c, zp)| c.ring() != zp) {
            return Err(Error::MixedContext("adele components do not match the context".into()));
        }
        Ok(AdeleElement {
            context: context.clone(),
            components,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn components(&self) -> &[PAdicRational] {
        &self.components
    }

    pub fn component(&self, p: u64) -> Result<&PAdicRational> {
        Ok(&self.components[self.context.index_of(p)?])
    }

    /// The primes at which the element is a `p`-adic integer.
    pub fn integrality_locus(&self) -> BTreeSet<u64> {
        self.context
            .primes()
            .iter()
            .zip(&self.components)
            .filter(|(_, c)| c.is_integral())
            .map(|(p, _)| *p)
            .collect()
    }

    /// True when the element lies in `prod Z_p`.
    pub fn is_integral(&self) -> bool {
        self.components.iter().all(PAdicRational::is_integral)
    }

    pub fn is_unit(&self) -> bool {
        self.components.iter().all(|c| !c.is_zero())
    }

    fn zip_with(
        &self,
        other: &AdeleElement,
        op: impl Fn(&PAdicRational, &PAdicRational) -> Result<PAdicRational>,
    ) -> Result<AdeleElement> {
        self.context.check_same(&other.context)?;
        Ok(AdeleElement {
            context: self.context.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| op(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &AdeleElement) -> Result<AdeleElement> {
        self.zip_with(other, PAdicRational::checked_add)
    }

    pub fn mul(&self, other: &AdeleElement) -> Result<AdeleElement> {
        self.zip_with(other, PAdicRational::checked_mul)
    }

    pub fn inverse(&self) -> Result<AdeleElement> {
        Ok(AdeleElement {
            context: self.context.clone(),
            components: self.components.iter().map(PAdicRational::inv).collect::<Result<_>>()?,
        })
    }

    /// Componentwise congruence; `level(p)` is the `p`-adic level compared.
    pub fn congruent_mod(&self, other: &AdeleElement, level: impl Fn(u64) -> i64) -> Result<bool> {
        self.context.check_same(&other.context)?;
        for ((a, b), &p) in self.components.iter().zip(&other.components).zip(self.context.primes()) {
            if !a.congruent_mod(b, level(p))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for AdeleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `f/n` in `𝔸_S`.
pub fn adele_from_fraction(f: &ProductElement, n: u64) -> Result<AdeleElement> {
    if n == 0 {
        return Err(Error::DivisionByZero);
    }
    let components = f
        .components()
        .iter()
        .map(|a| {
            let den = PAdicRational::from_fraction(&BigInt::from(n), &BigInt::from(1), a.ring())?;
            PAdicRational::from_int(a).checked_div(&den)
        })
        .collect::<Result<_>>()?;
    Ok(AdeleElement {
        context: f.context().clone(),
        components,
    })
}

/// An ideal of `𝔸_S`: the components on `zero_set` vanish, the rest are
/// unrestricted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeleIdeal {
    context: RingContext,
    zero_set: BTreeSet<u64>,
}

impl AdeleIdeal {
    pub fn new(context: &RingContext, zero_set: impl IntoIterator<Item = u64>) -> Result<Self> {
        let zero_set: BTreeSet<u64> = zero_set.into_iter().collect();
        context.check_subset(&zero_set)?;
        Ok(AdeleIdeal {
            context: context.clone(),
            zero_set,
        })
    }

    pub fn zero_set(&self) -> &BTreeSet<u64> {
        &self.zero_set
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.zero_set.is_empty()
    }

    /// A proper ideal is prime exactly when one component is killed, since
    /// `prod_{p in Z} Q_p` is a domain only for `|Z| = 1`.
    pub fn as_prime(&self) -> Option<AdelePrime> {
        match self.zero_set.iter().collect::<Vec<_>>().as_slice() {
            [p] => Some(AdelePrime { prime: **p }),
            _ => None,
        }
    }

    pub fn contains(&self, x: &AdeleElement) -> Result<bool> {
        self.context.check_same(&x.context)?;
        Ok(self
            .zero_set
            .iter()
            .all(|p| x.components[self.context.index_of(*p).unwrap()].is_zero()))
    }

    pub fn is_subset_of(&self, other: &AdeleIdeal) -> bool {
        other.zero_set.is_subset(&self.zero_set)
    }

    /// `𝔞 ∩ prod Z_p`.
    pub fn contract(&self) -> FinGenIdeal {
        let exps = self
            .context
            .primes()
            .iter()
            .map(|p| {
                if self.zero_set.contains(p) {
                    Exponent::Infinite
                } else {
                    Exponent::Finite(0)
                }
            })
            .collect();
        FinGenIdeal::from_exponents(&self.context, exps).expect("exponents within precision")
    }
}

/// `𝔞 𝔸_S`: every prime of `S` is inverted, so only vanishing components
/// survive.
pub fn extend(ideal: &FinGenIdeal) -> AdeleIdeal {
    let zero_set = ideal
        .context()
        .primes()
        .iter()
        .zip(ideal.exponents())
        .filter(|(_, e)| **e == Exponent::Infinite)
        .map(|(p, _)| *p)
        .collect();
    AdeleIdeal {
        context: ideal.context().clone(),
        zero_set,
    }
}

/// A point of `Spec 𝔸_S`: the extension of the minimal prime at `prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdelePrime {
    pub prime: u64,
}

impl AdelePrime {
    pub fn ideal(&self, context: &RingContext) -> Result<AdeleIdeal> {
        AdeleIdeal::new(context, [self.prime])
    }

    /// The prime of `prod Z_p` it contracts to.
    pub fn contraction(&self) -> PrimeIdeal {
        PrimeIdeal::minimal(self.prime)
    }

    /// `𝔸/𝔮 ≅ Q_p`.
    pub fn quotient_kind(&self) -> ComponentKind {
        ComponentKind::Rationals(self.prime)
    }

    /// `𝔸_𝔮 ≅ Q_p`.
    pub fn localization_kind(&self) -> ComponentKind {
        ComponentKind::Rationals(self.prime)
    }

    /// The projection realizing both the quotient and the localization.
    pub fn project(&self, x: &AdeleElement) -> Result<ComponentValue> {
        Ok(ComponentValue::Rational(x.component(self.prime)?.clone()))
    }
}

impl fmt::Display for AdelePrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q_{}", self.prime)
    }
}

pub fn spec_adeles(context: &RingContext) -> Vec<AdelePrime> {
    context.primes().iter().map(|&prime| AdelePrime { prime }).collect()
}

/// The primes of `prod Z_p` meeting none of the integers `1..=bound`.
pub fn primes_avoiding_integers(context: &RingContext, bound: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for x in spec_enumerate(context) {
        let ideal = x.ideal(context)?;
        let mut meets = false;
        for n in 1..=bound {
            if ideal.contains(&context.integer(n))? {
                meets = true;
                break;
            }
        }
        if !meets {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::rational_embed;

    #[test]
    fn from_fraction_examples() {
        let ctx = RingContext::new(&[2, 3], 24).unwrap();
        let a = adele_from_fraction(&ctx.one(), 6).unwrap();
        assert_eq!(a.components()[0], rational_embed(1, 6, 2, 24).unwrap());
        assert_eq!(a.components()[0].exponent(), Some(-1));
        assert_eq!(a.components()[1], rational_embed(1, 6, 3, 24).unwrap());
        assert_eq!(a.integrality_locus(), BTreeSet::new());

        let f = ctx.element([4, 9]).unwrap();
        let b = adele_from_fraction(&f, 6).unwrap();
        assert_eq!(b.components()[0].exponent(), Some(1));
        assert_eq!(b.components()[1].exponent(), Some(1));
        assert!(b.is_integral());

        let c = adele_from_fraction(&f, 1).unwrap();
        assert_eq!(c.components()[1], PAdicRational::from_int(f.component(3).unwrap()));
        assert_eq!(adele_from_fraction(&f, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn spec_and_extensions() {
        let ctx = RingContext::new(&[2, 3, 5], 24).unwrap();
        assert_eq!(spec_adeles(&ctx).len(), 3);
        let m3 = PrimeIdeal::maximal(3).ideal(&ctx).unwrap();
        assert!(extend(&m3).is_unit_ideal());
        let p3 = PrimeIdeal::minimal(3).ideal(&ctx).unwrap();
        let q = extend(&p3);
        assert_eq!(q.as_prime(), Some(AdelePrime { prime: 3 }));
        assert_eq!(q.contract(), p3);
        assert_eq!(
            primes_avoiding_integers(&ctx, 100).unwrap(),
            spec_adeles(&ctx)
                .iter()
                .map(AdelePrime::contraction)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn projection_and_kernel() {
        let ctx = RingContext::new(&[2, 3, 5], 24).unwrap();
        let q = AdelePrime { prime: 3 };
        let x = adele_from_fraction(&ctx.element([1, 7, 2]).unwrap(), 1).unwrap();
        assert_eq!(
            q.project(&x).unwrap(),
            ComponentValue::Rational(rational_embed(7, 1, 3, 24).unwrap())
        );
        let k = adele_from_fraction(&ctx.element([5, 0, 2]).unwrap(), 10).unwrap();
        assert!(q.ideal(&ctx).unwrap().contains(&k).unwrap());
        assert!(q.project(&k).unwrap().is_zero());
        assert!(!q.ideal(&ctx).unwrap().contains(&x).unwrap());
    }

    #[test]
    fn small_integers_are_units() {
        let ctx = RingContext::new(&[2, 3, 5, 7], 24).unwrap();
        for n in 1..=100 {
            assert!(adele_from_fraction(&ctx.integer(n), 1).unwrap().is_unit());
        }
    }
}
