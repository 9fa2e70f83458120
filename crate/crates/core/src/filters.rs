//! Filters on the finite index set and the bridges between ideals and
//! filters.
//!
//! On a finite set every filter is principal, so a filter is stored as the
//! base `B` of `{X : B ⊆ X ⊆ S}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::Valuation;
use crate::product::{Idempotent, ProductElement, RingContext};
use crate::spectrum::{Exponent, FinGenIdeal, PrimeIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filter {
    base: BTreeSet<u64>,
}

impl Filter {
    pub fn new(base: impl IntoIterator<Item = u64>) -> Result<Self> {
        let base: BTreeSet<u64> = base.into_iter().collect();
        if base.is_empty() {
            return Err(Error::EmptyFilterBase);
        }
        Ok(Filter { base })
    }

    pub fn base(&self) -> &BTreeSet<u64> {
        &self.base
    }

    pub fn contains(&self, set: &BTreeSet<u64>) -> bool {
        self.base.is_subset(set)
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.base.len() == 1
    }

    /// `ℱ_* = {f : ⟦f = 0⟧ ∈ ℱ}`, the ideal of elements vanishing on the base.
    pub fn lower_ideal(&self, context: &RingContext) -> Result<FinGenIdeal> {
        context.check_subset(&self.base)?;
        let exps = context
            .primes()
            .iter()
            .map(|p| {
                if self.base.contains(p) {
                    Exponent::Infinite
                } else {
                    Exponent::Finite(0)
                }
            })
            .collect();
        FinGenIdeal::from_exponents(context, exps)
    }

    /// `ℱ^* = {f : ⟦f ∈ μ⟧ ∈ ℱ}`, the ideal of elements in `pZ_p` on the base.
    pub fn upper_ideal(&self, context: &RingContext) -> Result<FinGenIdeal> {
        context.check_subset(&self.base)?;
        let exps = context
            .primes()
            .iter()
            .map(|p| Exponent::Finite(u32::from(self.base.contains(p))))
            .collect();
        FinGenIdeal::from_exponents(context, exps)
    }

    /// The ultrafilter this filter is, if its base is a singleton.
    pub fn as_ultrafilter(&self) -> Option<Ultrafilter> {
        match self.base.iter().collect::<Vec<_>>().as_slice() {
            [p] => Some(Ultrafilter::at(**p)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ultrafilter {
    point: u64,
}

impl Ultrafilter {
    pub fn at(point: u64) -> Self {
        Ultrafilter { point }
    }

    pub fn point(&self) -> u64 {
        self.point
    }

    pub fn to_filter(&self) -> Filter {
        Filter {
            base: BTreeSet::from([self.point]),
        }
    }
}

pub fn enumerate_ultrafilters(context: &RingContext) -> Vec<Ultrafilter> {
    context.primes().iter().map(|&p| Ultrafilter::at(p)).collect()
}

/// `δ_𝔞`: the filter of truth sets `⟦f ∈ μ⟧` over `f ∈ 𝔞`, computed as the
/// intersection of the generators' truth sets.
pub fn ideal_filter(context: &RingContext, generators: &[ProductElement]) -> Result<Filter> {
    filter_of_ideal(&FinGenIdeal::generated_by(context, generators)?)
}

pub fn filter_of_ideal(ideal: &FinGenIdeal) -> Result<Filter> {
    let base = ideal
        .context()
        .primes()
        .iter()
        .zip(ideal.exponents())
        .filter(|(_, e)| **e != Exponent::Finite(0))
        .map(|(p, _)| *p);
    Filter::new(base).map_err(|_| Error::ImproperIdeal)
}

/// An element of `𝔞` whose truth set `⟦f ∈ μ⟧` is exactly the base of
/// `δ_𝔞`: on each prime it takes the generator of least valuation.
pub fn filter_witness(context: &RingContext, generators: &[ProductElement]) -> Result<ProductElement> {
    for g in generators {
        context.check_same(g.context())?;
    }
    if generators.is_empty() {
        return Ok(context.zero());
    }
    let mut acc = context.zero();
    for (i, &p) in context.primes().iter().enumerate() {
        let best = generators
            .iter()
            .min_by_key(|g| match g.components()[i].valuation() {
                Valuation::Exact(k) => (0, k),
                Valuation::AtLeastPrecision => (1, 0),
            })
            .expect("generators are nonempty");
        let e = Idempotent::new(context, [p])?.to_element();
        acc = acc.add(&e.mul(best)?)?;
    }
    Ok(acc)
}

/// `δ_*`: the minimal prime `{f : ⟦f = 0⟧ ∈ δ}`, generated by `1 - e_{p}`.
pub fn delta_lower(context: &RingContext, delta: &Ultrafilter) -> Result<FinGenIdeal> {
    context.index_of(delta.point)?;
    PrimeIdeal::minimal(delta.point).ideal(context)
}

/// `δ^*`: the maximal ideal `{f : ⟦f ∈ μ⟧ ∈ δ}`, generated by
/// `1 - (1 - p) e_{p}`.
pub fn delta_upper(context: &RingContext, delta: &Ultrafilter) -> Result<FinGenIdeal> {
    context.index_of(delta.point)?;
    PrimeIdeal::maximal(delta.point).ideal(context)
}
