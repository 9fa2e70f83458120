//! The Zariski topology on the finite spectrum and the structure sheaf.
//!
//! An open set is a generization-closed set of points: whenever it holds
//! `𝔪_p` it also holds `𝔭_p`. Over an open `U` the sections are the product
//! of one ring per prime: `Z_p` when `𝔪_p ∈ U`, `Q_p` when only `𝔭_p ∈ U`,
//! nothing otherwise.

pub mod boolean;
pub mod limits;

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filters::Filter;
use crate::padic::PAdicRational;
use crate::product::{ProductElement, RingContext};
use crate::quotient::{localize, ComponentKind, ComponentValue};
use crate::sampling;
use crate::spectrum::{spec_enumerate, Level, PrimeIdeal};

#[derive(Clone, PartialEq, Eq)]
pub struct OpenSet {
    context: RingContext,
    points: BTreeSet<PrimeIdeal>,
}

impl OpenSet {
    pub fn new(context: &RingContext, points: impl IntoIterator<Item = PrimeIdeal>) -> Result<Self> {
        let points: BTreeSet<PrimeIdeal> = points.into_iter().collect();
        for x in &points {
            context.index_of(x.prime)?;
            if x.level == Level::Maximal && !points.contains(&PrimeIdeal::minimal(x.prime)) {
                return Err(Error::NotOpen(format!("contains m_{0} but not p_{0}", x.prime)));
            }
        }
        Ok(OpenSet {
            context: context.clone(),
            points,
        })
    }

    pub fn all(context: &RingContext) -> Self {
        OpenSet {
            context: context.clone(),
            points: spec_enumerate(context).into_iter().collect(),
        }
    }

    pub fn empty(context: &RingContext) -> Self {
        OpenSet {
            context: context.clone(),
            points: BTreeSet::new(),
        }
    }

    /// The smallest open containing `x`: `x` and its generizations.
    pub fn generization_closure(context: &RingContext, x: &PrimeIdeal) -> Result<Self> {
        Self::new(context, [*x, PrimeIdeal::minimal(x.prime)])
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn points(&self) -> &BTreeSet<PrimeIdeal> {
        &self.points
    }

    pub fn contains(&self, x: &PrimeIdeal) -> bool {
        self.points.contains(x)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_subset(&self, other: &OpenSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            context: self.context.clone(),
            points: self.points.union(&other.points).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet {
            context: self.context.clone(),
            points: self.points.intersection(&other.points).copied().collect(),
        }
    }
}

impl fmt::Debug for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.points.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// `D(f)`: the points not containing `f`.
pub fn basic_open(f: &ProductElement) -> Result<OpenSet> {
    let ctx = f.context();
    let mut points = BTreeSet::new();
    for x in spec_enumerate(ctx) {
        if !x.contains(ctx, f)? {
            points.insert(x);
        }
    }
    OpenSet::new(ctx, points)
}

/// Every open set, `3^|S|` of them, in a fixed order.
pub fn enumerate_opens(context: &RingContext) -> Vec<OpenSet> {
    let n = context.len();
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let mut points = BTreeSet::new();
        for &p in context.primes() {
            match c % 3 {
                1 => {
                    points.insert(PrimeIdeal::minimal(p));
                }
                2 => {
                    points.insert(PrimeIdeal::minimal(p));
                    points.insert(PrimeIdeal::maximal(p));
                }
                _ => {}
            }
            c /= 3;
        }
        out.push(OpenSet {
            context: context.clone(),
            points,
        });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionKind {
    Absent,
    Integral,
    Field,
}

/// A ring `prod_p K_p` with one classified factor per prime.
#[derive(Clone, PartialEq, Eq)]
pub struct SectionRing {
    context: RingContext,
    kinds: Vec<SectionKind>,
}

impl SectionRing {
    pub fn new(context: &RingContext, kinds: Vec<SectionKind>) -> Result<Self> {
        if kinds.len() != context.len() {
            return Err(Error::malformed("kinds", "one entry per prime is required"));
        }
        Ok(SectionRing {
            context: context.clone(),
            kinds,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.context
    }

    pub fn kinds(&self) -> &[SectionKind] {
        &self.kinds
    }

    pub fn kind_at(&self, p: u64) -> Result<SectionKind> {
        Ok(self.kinds[self.context.index_of(p)?])
    }

    /// The nonzero factors as component rings.
    pub fn factors(&self) -> Vec<ComponentKind> {
        self.context
            .primes()
            .iter()
            .zip(&self.kinds)
            .filter_map(|(&p, k)| match k {
                SectionKind::Absent => None,
                SectionKind::Integral => Some(ComponentKind::Integers(p)),
                SectionKind::Field => Some(ComponentKind::Rationals(p)),
            })
            .collect()
    }

    pub fn zero(&self) -> SectionElement {
        self.image(&self.context.zero())
    }

    pub fn one(&self) -> SectionElement {
        self.image(&self.context.one())
    }

    /// The image of a global section.
    pub fn image(&self, f: &ProductElement) -> SectionElement {
        let values = self
            .kinds
            .iter()
            .zip(f.components())
            .map(|(k, a)| match k {
                SectionKind::Absent => None,
                SectionKind::Integral => Some(ComponentValue::Integer(a.clone())),
                SectionKind::Field => Some(ComponentValue::Rational(PAdicRational::from_int(a))),
            })
            .collect();
        SectionElement {
            ring: self.clone(),
            values,
        }
    }

    pub fn from_values(&self, values: Vec<Option<ComponentValue>>) -> Result<SectionElement> {
        if values.len() != self.kinds.len() {
            return Err(Error::malformed("values", "one entry per prime is required"));
        }
        for ((k, v), &p) in self.kinds.iter().zip(&values).zip(self.context.primes()) {
            let ok = match (k, v) {
                (SectionKind::Absent, None) => true,
                (SectionKind::Integral, Some(ComponentValue::Integer(a))) => a.prime() == p,
                (SectionKind::Field, Some(ComponentValue::Rational(a))) => a.prime() == p,
                _ => false,
            };
            if !ok {
                return Err(Error::malformed("values", format!("entry at {p} does not fit {k:?}")));
            }
        }
        Ok(SectionElement {
            ring: self.clone(),
            values,
        })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SectionElement {
        let values = self
            .kinds
            .iter()
            .zip(self.context.rings())
            .map(|(k, zp)| match k {
                SectionKind::Absent => None,
                SectionKind::Integral => Some(ComponentValue::Integer(sampling::padic(rng, zp))),
                SectionKind::Field => Some(ComponentValue::Rational(sampling::rational(rng, zp))),
            })
            .collect();
        SectionElement {
            ring: self.clone(),
            values,
        }
    }
}

impl fmt::Display for SectionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors().iter().map(|k| k.name()).collect();
        if names.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", names.join(" x "))
        }
    }
}

impl fmt::Debug for SectionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SectionRing({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionElement {
    ring: SectionRing,
    values: Vec<Option<ComponentValue>>,
}

impl SectionElement {
    pub fn ring(&self) -> &SectionRing {
        &self.ring
    }

    pub fn values(&self) -> &[Option<ComponentValue>] {
        &self.values
    }

    fn zip_with(
        &self,
        other: &SectionElement,
        op: impl Fn(&ComponentValue, &ComponentValue) -> Result<ComponentValue>,
    ) -> Result<SectionElement> {
        if self.ring != other.ring {
            return Err(Error::MixedContext(format!("{} vs {}", self.ring, other.ring)));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => op(a, b).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(SectionElement {
            ring: self.ring.clone(),
            values,
        })
    }

    pub fn add(&self, other: &SectionElement) -> Result<SectionElement> {
        self.zip_with(other, ComponentValue::add)
    }

    pub fn mul(&self, other: &SectionElement) -> Result<SectionElement> {
        self.zip_with(other, ComponentValue::mul)
    }

    /// Equality up to the known digits of each component.
    pub fn agrees_with(&self, other: &SectionElement) -> Result<bool> {
        if self.ring != other.ring {
            return Ok(false);
        }
        for (a, b) in self.values.iter().zip(&other.values) {
            if let (Some(a), Some(b)) = (a, b) {
                if !a.agrees_with(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `𝒪(U)` in closed form.
pub fn sections(u: &OpenSet) -> SectionRing {
    let kinds = u
        .context
        .primes()
        .iter()
        .map(|&p| {
            if u.contains(&PrimeIdeal::maximal(p)) {
                SectionKind::Integral
            } else if u.contains(&PrimeIdeal::minimal(p)) {
                SectionKind::Field
            } else {
                SectionKind::Absent
            }
        })
        .collect();
    SectionRing {
        context: u.context.clone(),
        kinds,
    }
}

/// The restriction `𝒪(U) -> 𝒪(V)` applied to `s`, where `V ⊆ U`.
pub fn restrict(s: &SectionElement, target: &OpenSet) -> Result<SectionElement> {
    let ring = sections(target);
    let values = s
        .ring
        .kinds
        .iter()
        .zip(&ring.kinds)
        .zip(&s.values)
        .map(|((from, to), v)| match (from, to, v) {
            (_, SectionKind::Absent, _) => Ok(None),
            (SectionKind::Integral, SectionKind::Integral, v) | (SectionKind::Field, SectionKind::Field, v) => {
                Ok(v.clone())
            }
            (SectionKind::Integral, SectionKind::Field, Some(ComponentValue::Integer(a))) => {
                Ok(Some(ComponentValue::Rational(PAdicRational::from_int(a))))
            }
            _ => Err(Error::NotContained(format!(
                "{target:?} is not inside the section's open"
            ))),
        })
        .collect::<Result<_>>()?;
    Ok(SectionElement { ring, values })
}

/// Checks the gluing condition for `cover` of `u`.
///
/// The component classification of `𝒪(U)` is compared with the equalizer of
/// `prod 𝒪(U_i) ⇉ prod 𝒪(U_i ∩ U_j)`, and `samples` random sections of `U`
/// are restricted to the cover and glued back.
pub fn sheaf_axiom_check_with<R: Rng + ?Sized>(
    u: &OpenSet,
    cover: &[OpenSet],
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    let union = cover.iter().fold(OpenSet::empty(&u.context), |acc, v| acc.union(v));
    if union != *u || cover.iter().any(|v| v.context != u.context) {
        return Err(Error::NotACover(format!("{union:?} vs {u:?}")));
    }

    // Equalizer on classifications: nodes are the U_i and U_i ∩ U_j, edges
    // the two restriction maps into each overlap.
    let mut nodes: Vec<SectionRing> = cover.iter().map(sections).collect();
    let mut edges = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let k = nodes.len();
            nodes.push(sections(&cover[i].intersection(&cover[j])));
            edges.push((i, k));
            edges.push((j, k));
        }
    }
    let kinds: Vec<Vec<SectionKind>> = nodes.iter().map(|r| r.kinds.clone()).collect();
    let equalizer = limits::limit_kinds(&kinds, &edges)?;
    if equalizer != sections(u).kinds {
        return Ok(false);
    }

    let ring = sections(u);
    for _ in 0..samples {
        let s = ring.random_element(rng);
        let pieces: Vec<SectionElement> = cover.iter().map(|v| restrict(&s, v)).collect::<Result<_>>()?;
        for i in 0..cover.len() {
            for j in i + 1..cover.len() {
                let w = cover[i].intersection(&cover[j]);
                if !restrict(&pieces[i], &w)?.agrees_with(&restrict(&pieces[j], &w)?)? {
                    return Ok(false);
                }
            }
        }
        if !glue(&ring, &pieces)?.agrees_with(&s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`sheaf_axiom_check_with`] with 16 samples from a fixed seed.
pub fn sheaf_axiom_check(u: &OpenSet, cover: &[OpenSet]) -> Result<bool> {
    sheaf_axiom_check_with(u, cover, 16, &mut ChaCha8Rng::seed_from_u64(0))
}

/// Glues compatible local sections into a section over the union.
pub fn glue(ring: &SectionRing, pieces: &[SectionElement]) -> Result<SectionElement> {
    let values = ring
        .kinds
        .iter()
        .enumerate()
        .map(|(idx, kind)| {
            if *kind == SectionKind::Absent {
                return Ok(None);
            }
            // Prefer a piece that carries the component at full strength.
            let best = pieces
                .iter()
                .filter(|s| s.ring.kinds[idx] != SectionKind::Absent)
                .max_by_key(|s| s.ring.kinds[idx] == *kind)
                .ok_or_else(|| Error::NotACover(format!("no piece covers component {idx}")))?;
            Ok(best.values[idx].clone())
        })
        .collect::<Result<_>>()?;
    ring.from_values(values)
}

/// The stalk at `x`: the direct limit of `𝒪(U)` over opens `U ∋ x`,
/// realized at the smallest such open.
pub fn stalk(context: &RingContext, x: &PrimeIdeal) -> Result<(SectionRing, ComponentKind)> {
    context.index_of(x.prime)?;
    let containing: Vec<OpenSet> = enumerate_opens(context).into_iter().filter(|u| u.contains(x)).collect();
    let smallest = containing
        .iter()
        .find(|u| containing.iter().all(|v| u.is_subset(v)))
        .expect("the generization closure is the least open around a point");
    let ring = sections(smallest);
    let factors = ring.factors();
    let kind = localize(context, x)?.kind();
    if factors != [kind] {
        return Err(Error::Unrepresentable(format!(
            "stalk {ring} differs from localization {kind}"
        )));
    }
    Ok((ring, kind))
}

/// A finite reduced product `prod_ℱ K_i`: the factors indexed by the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedProduct {
    factors: Vec<(u64, ComponentKind)>,
}

impl ReducedProduct {
    pub fn factors(&self) -> &[(u64, ComponentKind)] {
        &self.factors
    }

    /// The quotient map from the full product, given as labelled values.
    pub fn project(&self, values: &[(u64, ComponentValue)]) -> Vec<(u64, ComponentValue)> {
        values
            .iter()
            .filter(|(i, _)| self.factors.iter().any(|(j, _)| j == i))
            .cloned()
            .collect()
    }
}

pub fn reduced_product(factors: &[(u64, ComponentKind)], filter: &Filter) -> Result<ReducedProduct> {
    for i in filter.base() {
        if !factors.iter().any(|(j, _)| j == i) {
            return Err(Error::UnknownPrime(*i));
        }
    }
    Ok(ReducedProduct {
        factors: factors
            .iter()
            .filter(|(i, _)| filter.base().contains(i))
            .cloned()
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::Idempotent;

    fn s23() -> RingContext {
        RingContext::new(&[2, 3], 24).unwrap()
    }

    fn pts(xs: &[(u64, Level)]) -> Vec<PrimeIdeal> {
        xs.iter().map(|&(prime, level)| PrimeIdeal { prime, level }).collect()
    }

    #[test]
    fn basic_open_examples() {
        let ctx = s23();
        let d = basic_open(&ctx.element([2, 1]).unwrap()).unwrap();
        let expected = OpenSet::new(
            &ctx,
            pts(&[(2, Level::Minimal), (3, Level::Minimal), (3, Level::Maximal)]),
        )
        .unwrap();
        assert_eq!(d, expected);
        assert_eq!(basic_open(&ctx.one()).unwrap(), OpenSet::all(&ctx));
        assert_eq!(basic_open(&ctx.zero()).unwrap(), OpenSet::empty(&ctx));
    }

    #[test]
    fn openness_is_enforced() {
        let ctx = s23();
        assert!(matches!(
            OpenSet::new(&ctx, [PrimeIdeal::maximal(2)]),
            Err(Error::NotOpen(_))
        ));
        assert_eq!(enumerate_opens(&ctx).len(), 9);
    }

    #[test]
    fn sections_examples() {
        let ctx = s23();
        let u = OpenSet::new(
            &ctx,
            pts(&[(2, Level::Minimal), (3, Level::Minimal), (3, Level::Maximal)]),
        )
        .unwrap();
        assert_eq!(sections(&u).to_string(), "Q_2 x Z_3");
        assert_eq!(sections(&OpenSet::all(&ctx)).to_string(), "Z_2 x Z_3");
        let u = OpenSet::new(&ctx, [PrimeIdeal::minimal(2)]).unwrap();
        assert_eq!(sections(&u).to_string(), "Q_2");
        assert_eq!(sections(&OpenSet::empty(&ctx)).to_string(), "0");
    }

    #[test]
    fn restriction_composes() {
        let ctx = s23();
        let f = ctx.element([12, 5]).unwrap();
        let all = OpenSet::all(&ctx);
        let mid = OpenSet::new(
            &ctx,
            pts(&[(2, Level::Minimal), (3, Level::Minimal), (3, Level::Maximal)]),
        )
        .unwrap();
        let small = OpenSet::new(&ctx, [PrimeIdeal::minimal(2)]).unwrap();
        let s = sections(&all).image(&f);
        let direct = restrict(&s, &small).unwrap();
        let stepwise = restrict(&restrict(&s, &mid).unwrap(), &small).unwrap();
        assert_eq!(direct, stepwise);
        assert!(matches!(restrict(&direct, &all), Err(Error::NotContained(_))));
    }

    #[test]
    fn sheaf_axiom_examples() {
        let ctx = s23();
        let e2 = Idempotent::new(&ctx, [2]).unwrap().to_element();
        let cover = [
            basic_open(&e2).unwrap(),
            basic_open(&ctx.one().sub(&e2).unwrap()).unwrap(),
        ];
        assert!(sheaf_axiom_check(&OpenSet::all(&ctx), &cover).unwrap());

        let u = OpenSet::new(&ctx, [PrimeIdeal::minimal(2), PrimeIdeal::minimal(3)]).unwrap();
        let cover = [
            OpenSet::new(&ctx, [PrimeIdeal::minimal(2)]).unwrap(),
            OpenSet::new(&ctx, [PrimeIdeal::minimal(3)]).unwrap(),
        ];
        assert!(sheaf_axiom_check(&u, &cover).unwrap());
        assert_eq!(sections(&u).to_string(), "Q_2 x Q_3");

        let cover = [
            basic_open(&ctx.element([2, 1]).unwrap()).unwrap(),
            basic_open(&ctx.element([1, 3]).unwrap()).unwrap(),
        ];
        assert!(sheaf_axiom_check(&OpenSet::all(&ctx), &cover).unwrap());

        assert!(matches!(
            sheaf_axiom_check(&OpenSet::all(&ctx), &cover[..1]),
            Err(Error::NotACover(_))
        ));
    }

    #[test]
    fn stalk_examples() {
        let ctx = RingContext::new(&[2, 3, 5], 24).unwrap();
        assert_eq!(
            stalk(&ctx, &PrimeIdeal::maximal(3)).unwrap().1,
            ComponentKind::Integers(3)
        );
        assert_eq!(
            stalk(&ctx, &PrimeIdeal::minimal(3)).unwrap().1,
            ComponentKind::Rationals(3)
        );
    }

    #[test]
    fn reduced_product_examples() {
        let f2 = |i| (i, ComponentKind::ResidueField(2));
        let factors = [f2(1), f2(2), f2(3)];
        let rp = reduced_product(&factors, &Filter::new([1, 2]).unwrap()).unwrap();
        assert_eq!(rp.factors(), &[f2(1), f2(2)]);
        let full = reduced_product(&factors, &Filter::new([1, 2, 3]).unwrap()).unwrap();
        assert_eq!(full.factors(), &factors);
        let single = reduced_product(&factors, &Filter::new([2]).unwrap()).unwrap();
        assert_eq!(single.factors(), &[f2(2)]);
        let one = ComponentValue::Residue { prime: 2, value: 1 };
        let vals: Vec<_> = [1, 2, 3].iter().map(|&i| (i, one.clone())).collect();
        assert_eq!(single.project(&vals), vec![(2, one)]);
    }
}
