//! A decidable fragment of the ultrapower `prod_δ ω` for a nonprincipal
//! ultrafilter: sequences that are eventually a polynomial in `n` with
//! integer coefficients and positive leading term.
//!
//! Eventual dominance orders this family totally, and every nonprincipal
//! ultrafilter contains all cofinite sets, so comparisons do not depend on
//! the choice of ultrafilter.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a_0 + a_1 n + ... + a_d n^d` with `a_d > 0`, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AsymptoticNat {
    coeffs: Vec<i64>,
}

impl AsymptoticNat {
    /// Coefficients from the constant term up.
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.last().is_some_and(|&a| a < 0) {
            return Err(Error::malformed(
                "coefficients",
                "leading coefficient must be positive (values are eventually nonnegative)",
            ));
        }
        Ok(AsymptoticNat { coeffs })
    }

    pub fn zero() -> Self {
        AsymptoticNat { coeffs: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        AsymptoticNat::new(vec![i64::from(c)]).expect("nonnegative constant")
    }

    /// `n^d`.
    pub fn monomial(d: u32) -> Self {
        let mut coeffs = vec![0; d as usize + 1];
        coeffs[d as usize] = 1;
        AsymptoticNat { coeffs }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn eval(&self, n: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &a| acc * i128::from(n) + i128::from(a))
    }

    pub fn add(&self, other: &AsymptoticNat) -> Result<AsymptoticNat> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                a.checked_add(b)
                    .ok_or_else(|| Error::malformed("coefficients", "overflow in addition"))
            })
            .collect::<Result<_>>()?;
        AsymptoticNat::new(coeffs)
    }

    /// `m · x` for a standard natural `m`.
    pub fn scale(&self, m: u32) -> Result<AsymptoticNat> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                a.checked_mul(i64::from(m))
                    .ok_or_else(|| Error::malformed("coefficients", "overflow in scaling"))
            })
            .collect::<Result<_>>()?;
        AsymptoticNat::new(coeffs)
    }
}

impl TryFrom<Vec<i64>> for AsymptoticNat {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        AsymptoticNat::new(coeffs)
    }
}

impl From<AsymptoticNat> for Vec<i64> {
    fn from(x: AsymptoticNat) -> Self {
        x.coeffs
    }
}

/// Eventual dominance: the sign of the leading coefficient of `x - y`.
pub fn compare(x: &AsymptoticNat, y: &AsymptoticNat) -> Ordering {
    let len = x.coeffs.len().max(y.coeffs.len());
    for i in (0..len).rev() {
        let a = i128::from(x.coeffs.get(i).copied().unwrap_or(0));
        let b = i128::from(y.coeffs.get(i).copied().unwrap_or(0));
        match a.cmp(&b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl PartialOrd for AsymptoticNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AsymptoticNat {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl fmt::Display for AsymptoticNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.coeffs.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            if first {
                if a < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "n")?,
                (1, _) => write!(f, "{mag}n")?,
                (_, 1) => write!(f, "n^{i}")?,
                _ => write!(f, "{mag}n^{i}")?,
            }
        }
        Ok(())
    }
}

/// The archimedean class of a nonzero value: its degree.
pub fn archimedean_class(x: &AsymptoticNat) -> Result<u32> {
    x.degree().ok_or(Error::ZeroHasNoClass)
}

/// `x ≤ m·y` and `y ≤ m·x` for some standard `m`.
pub fn archimedean_equivalent(x: &AsymptoticNat, y: &AsymptoticNat) -> Result<bool> {
    Ok(archimedean_class(x)? == archimedean_class(y)?)
}

/// A convex subsemigroup `Δ` of the fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvexSubsemigroup {
    Zero,
    /// The constants, a copy of `ω`.
    Standard,
    /// Values of degree at most `d`, for `d >= 1`.
    DegreeAtMost(u32),
    All,
}

impl ConvexSubsemigroup {
    pub fn contains(&self, x: &AsymptoticNat) -> bool {
        match (self, x.degree()) {
            (_, None) => true,
            (ConvexSubsemigroup::Zero, Some(_)) => false,
            (ConvexSubsemigroup::Standard, Some(d)) => d == 0,
            (ConvexSubsemigroup::DegreeAtMost(k), Some(d)) => d <= *k,
            (ConvexSubsemigroup::All, Some(_)) => true,
        }
    }

    /// Position in the inclusion chain `0 ⊂ ω ⊂ deg≤1 ⊂ deg≤2 ⊂ ... ⊂ All`.
    fn rank(&self) -> u64 {
        match self {
            ConvexSubsemigroup::Zero => 0,
            ConvexSubsemigroup::Standard => 1,
            ConvexSubsemigroup::DegreeAtMost(d) => 1 + u64::from(*d),
            ConvexSubsemigroup::All => u64::MAX,
        }
    }

    pub fn is_subset_of(&self, other: &ConvexSubsemigroup) -> bool {
        self.rank() <= other.rank()
    }

    /// The degree of the top archimedean class, if `Δ` has one.
    pub fn top_class(&self) -> Option<u32> {
        match self {
            ConvexSubsemigroup::Zero | ConvexSubsemigroup::All => None,
            ConvexSubsemigroup::Standard => Some(0),
            ConvexSubsemigroup::DegreeAtMost(d) => Some(*d),
        }
    }

    pub fn shape(&self) -> ConvexShape {
        match self {
            ConvexSubsemigroup::Zero => ConvexShape::Trivial,
            ConvexSubsemigroup::Standard => ConvexShape::Standard,
            ConvexSubsemigroup::DegreeAtMost(d) => ConvexShape::TopClass(*d),
            ConvexSubsemigroup::All => ConvexShape::NoTopClass,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(ConvexSubsemigroup::Zero),
            "standard" => Ok(ConvexSubsemigroup::Standard),
            "all" => Ok(ConvexSubsemigroup::All),
            _ => match s.strip_prefix("deg<=").map(str::parse::<u32>) {
                Some(Ok(d)) if d >= 1 => Ok(ConvexSubsemigroup::DegreeAtMost(d)),
                _ => Err(Error::malformed(
                    "delta",
                    format!("expected zero, standard, all or deg<=d with d >= 1, got `{s}`"),
                )),
            },
        }
    }
}

impl fmt::Display for ConvexSubsemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexSubsemigroup::Zero => write!(f, "zero"),
            ConvexSubsemigroup::Standard => write!(f, "standard"),
            ConvexSubsemigroup::DegreeAtMost(d) => write!(f, "deg<={d}"),
            ConvexSubsemigroup::All => write!(f, "all"),
        }
    }
}

/// Which shape of convex subsemigroup a fragment `Δ` realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexShape {
    /// `Δ = 0`.
    Trivial,
    /// `Δ = ω`.
    Standard,
    /// Nonstandard with no largest archimedean class.
    NoTopClass,
    /// Nonstandard with top archimedean class of the given degree.
    TopClass(u32),
}

/// `[x] = {y : y ≤ m·x for some standard m}`.
pub fn least_convex_containing(x: &AsymptoticNat) -> ConvexSubsemigroup {
    match x.degree() {
        None => ConvexSubsemigroup::Zero,
        Some(0) => ConvexSubsemigroup::Standard,
        Some(d) => ConvexSubsemigroup::DegreeAtMost(d),
    }
}

/// A valuation in the fragment: a value or `∞` (the valuation of zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationValue {
    Finite(AsymptoticNat),
    Infinity,
}

/// `𝒫_Δ = {f : v(f) > Δ}`, described by the values it admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolicPrime {
    /// Every positive valuation: the maximal ideal.
    Maximal,
    /// Valuations of degree at least `k`, for `k >= 1`.
    DegreeAtLeast(u32),
    /// Only valuation `∞`: the zero ideal.
    Zero,
}

impl SymbolicPrime {
    pub fn contains(&self, v: &ValuationValue) -> bool {
        let x = match v {
            ValuationValue::Infinity => return true,
            ValuationValue::Finite(x) => x,
        };
        match (self, x.degree()) {
            (_, None) => false,
            (SymbolicPrime::Maximal, Some(_)) => true,
            (SymbolicPrime::DegreeAtLeast(k), Some(d)) => d >= *k,
            (SymbolicPrime::Zero, Some(_)) => false,
        }
    }

    /// Position in the chain `Zero ⊂ ... ⊂ deg≥2 ⊂ deg≥1 ⊂ Maximal`.
    fn rank(&self) -> u64 {
        match self {
            SymbolicPrime::Zero => 0,
            SymbolicPrime::DegreeAtLeast(k) => u64::MAX - 1 - u64::from(*k),
            SymbolicPrime::Maximal => u64::MAX,
        }
    }

    pub fn is_subset_of(&self, other: &SymbolicPrime) -> bool {
        self.rank() <= other.rank()
    }
}

impl fmt::Display for SymbolicPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicPrime::Maximal => write!(f, "maximal"),
            SymbolicPrime::DegreeAtLeast(k) => write!(f, "deg>={k}"),
            SymbolicPrime::Zero => write!(f, "zero"),
        }
    }
}

/// `Δ ↦ 𝒫_Δ`.
pub fn prime_of(delta: &ConvexSubsemigroup) -> SymbolicPrime {
    match delta {
        ConvexSubsemigroup::Zero => SymbolicPrime::Maximal,
        ConvexSubsemigroup::Standard => SymbolicPrime::DegreeAtLeast(1),
        ConvexSubsemigroup::DegreeAtMost(d) => SymbolicPrime::DegreeAtLeast(d + 1),
        ConvexSubsemigroup::All => SymbolicPrime::Zero,
    }
}

/// `𝒫 ↦ Δ_𝒫 = {γ : γ < v(f) for all f ∈ 𝒫}`.
pub fn delta_of(prime: &SymbolicPrime) -> ConvexSubsemigroup {
    match prime {
        SymbolicPrime::Maximal => ConvexSubsemigroup::Zero,
        SymbolicPrime::DegreeAtLeast(1) => ConvexSubsemigroup::Standard,
        SymbolicPrime::DegreeAtLeast(k) => ConvexSubsemigroup::DegreeAtMost(k - 1),
        SymbolicPrime::Zero => ConvexSubsemigroup::All,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> AsymptoticNat {
        AsymptoticNat::new(c.to_vec()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let (sq, five_n) = (poly(&[0, 0, 1]), poly(&[0, 5]));
        assert_eq!(compare(&sq, &five_n), Ordering::Greater);
        // Dominance oracle: n^2 > 5n from n = 6 on.
        assert!((6..200).all(|n| sq.eval(n) > five_n.eval(n)));
        assert_eq!(compare(&sq, &sq), Ordering::Equal);
        assert_eq!(compare(&poly(&[3, 1]), &poly(&[1, 1])), Ordering::Greater);
        assert!(AsymptoticNat::new(vec![1, -1]).is_err());
    }

    #[test]
    fn class_examples() {
        let (a, b) = (poly(&[0, 0, 3]), poly(&[0, 0, 1]));
        assert!(archimedean_equivalent(&a, &b).unwrap());
        assert!(!archimedean_equivalent(&poly(&[0, 1]), &b).unwrap());
        assert_eq!(archimedean_class(&poly(&[7])).unwrap(), 0);
        assert_eq!(archimedean_class(&AsymptoticNat::zero()), Err(Error::ZeroHasNoClass));
    }

    #[test]
    fn least_convex_examples() {
        assert_eq!(
            least_convex_containing(&AsymptoticNat::zero()),
            ConvexSubsemigroup::Zero
        );
        assert_eq!(least_convex_containing(&poly(&[5])), ConvexSubsemigroup::Standard);
        assert_eq!(
            least_convex_containing(&poly(&[0, 1, 0, 1])),
            ConvexSubsemigroup::DegreeAtMost(3)
        );
    }

    #[test]
    fn galois_examples() {
        let p = prime_of(&ConvexSubsemigroup::Standard);
        assert_eq!(p, SymbolicPrime::DegreeAtLeast(1));
        assert_eq!(delta_of(&p), ConvexSubsemigroup::Standard);
        assert_eq!(prime_of(&ConvexSubsemigroup::All), SymbolicPrime::Zero);
        assert!(prime_of(&ConvexSubsemigroup::All).contains(&ValuationValue::Infinity));
        assert!(!prime_of(&ConvexSubsemigroup::All).contains(&ValuationValue::Finite(poly(&[0, 0, 0, 9]))));
        let kinds = [
            ConvexSubsemigroup::Zero,
            ConvexSubsemigroup::Standard,
            ConvexSubsemigroup::DegreeAtMost(1),
            ConvexSubsemigroup::DegreeAtMost(4),
            ConvexSubsemigroup::All,
        ];
        for a in &kinds {
            assert_eq!(delta_of(&prime_of(a)), *a);
            for b in &kinds {
                if a.is_subset_of(b) {
                    assert!(prime_of(b).is_subset_of(&prime_of(a)));
                }
            }
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(ConvexSubsemigroup::Zero.shape(), ConvexShape::Trivial);
        assert_eq!(ConvexSubsemigroup::Standard.shape(), ConvexShape::Standard);
        assert_eq!(ConvexSubsemigroup::DegreeAtMost(2).shape(), ConvexShape::TopClass(2));
        assert_eq!(ConvexSubsemigroup::All.shape(), ConvexShape::NoTopClass);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(poly(&[-1, 3, 1]).to_string(), "n^2 + 3n - 1");
        assert_eq!(poly(&[0, 1]).to_string(), "n");
        assert_eq!(
            ConvexSubsemigroup::parse("deg<=3").unwrap(),
            ConvexSubsemigroup::DegreeAtMost(3)
        );
        assert!(ConvexSubsemigroup::parse("deg<=0").is_err());
    }
}
