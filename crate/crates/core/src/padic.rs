//! Fixed-precision arithmetic in `Z_p` and `Q_p`.
//!
//! Every `Z_p` element carries an absolute precision `N`: it is a residue
//! class modulo `p^N`. A residue of zero therefore only says that the true
//! valuation is at least `N`, which is reported as
//! [`Valuation::AtLeastPrecision`] rather than as an exact value.
//!
//! `Q_p` elements are stored as `unit * p^exponent` with the unit known to
//! `N` digits. Dividing by `p^k` moves the exponent and never touches the
//! unit digits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of p-adic digits carried by a ring context.
pub const DEFAULT_PRECISION: u32 = 24;

/// Deterministic primality test by trial division; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Largest `k` with `p^k | x`, or `None` for `x = 0`.
pub(crate) fn p_valuation(x: &BigUint, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    if p == 2 {
        return x.trailing_zeros().map(|t| t as u32);
    }
    let mut k = 0;
    let mut m = x.clone();
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return Some(k);
        }
        m = q;
        k += 1;
    }
}

fn reduce_signed(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    n.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor by a positive modulus is nonnegative")
}

/// The ring `Z/p^N`, i.e. `Z_p` at absolute precision `N`.
#[derive(Clone)]
pub struct Zp {
    prime: u64,
    precision: u32,
    modulus: Arc<BigUint>,
}

impl Zp {
    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NonPrimeModulus(prime));
        }
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = BigUint::from(prime).pow(precision);
        Ok(Zp {
            prime,
            precision,
            modulus: Arc::new(modulus),
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn element(&self, n: impl Into<BigInt>) -> PAdicInt {
        PAdicInt {
            ring: self.clone(),
            residue: reduce_signed(&n.into(), &self.modulus),
        }
    }

    pub fn from_residue(&self, residue: BigUint) -> PAdicInt {
        let residue = if residue < *self.modulus {
            residue
        } else {
            residue % &*self.modulus
        };
        PAdicInt {
            ring: self.clone(),
            residue,
        }
    }

    pub fn zero(&self) -> PAdicInt {
        self.from_residue(BigUint::zero())
    }

    pub fn one(&self) -> PAdicInt {
        self.from_residue(BigUint::one())
    }

    fn check_same(&self, other: &Zp) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedContext(format!(
                "Z_{} at precision {} vs Z_{} at precision {}",
                self.prime, self.precision, other.prime, other.precision
            )))
        }
    }
}

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.precision == other.precision
    }
}

impl Eq for Zp {}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}/p^{}", self.prime, self.precision)
    }
}

/// p-adic valuation of an element known modulo `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    /// The exact valuation, always below the ambient precision.
    Exact(u32),
    /// The residue is zero: the valuation is at least the precision.
    AtLeastPrecision,
}

impl Valuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(k) => Some(k),
            Valuation::AtLeastPrecision => None,
        }
    }

    pub fn is_unit(self) -> bool {
        self == Valuation::Exact(0)
    }
}

/// An element of `Z_p` known modulo `p^N`.
#[derive(Clone)]
pub struct PAdicInt {
    ring: Zp,
    residue: BigUint,
}

impl PAdicInt {
    /// Embeds an integer: the residue is `n mod p^N`.
    pub fn from_integer(n: impl Into<BigInt>, prime: u64, precision: u32) -> Result<Self> {
        Ok(Zp::new(prime, precision)?.element(n))
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        match p_valuation(&self.residue, self.ring.prime) {
            Some(k) => Valuation::Exact(k),
            None => Valuation::AtLeastPrecision,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation().is_unit()
    }

    /// Residue modulo `p`.
    pub fn residue_mod_p(&self) -> u64 {
        let r = &self.residue % self.ring.prime;
        r.iter_u64_digits().next().unwrap_or(0)
    }

    /// The same element read at the lower precision `k <= N`.
    pub fn truncate(&self, k: u32) -> Result<PAdicInt> {
        if k > self.ring.precision {
            return Err(Error::PrecisionExhausted(self.ring.precision));
        }
        let zp = Zp::new(self.ring.prime, k)?;
        Ok(zp.from_residue(self.residue.clone()))
    }

    pub fn checked_add(&self, other: &PAdicInt) -> Result<PAdicInt> {
        self.ring.check_same(&other.ring)?;
        Ok(self.ring.from_residue(&self.residue + &other.residue))
    }

    pub fn checked_sub(&self, other: &PAdicInt) -> Result<PAdicInt> {
        self.ring.check_same(&other.ring)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &PAdicInt) -> Result<PAdicInt> {
        self.ring.check_same(&other.ring)?;
        Ok(self.ring.from_residue(&self.residue * &other.residue))
    }

    pub fn pow(&self, e: u32) -> PAdicInt {
        self.ring
            .from_residue(self.residue.modpow(&BigUint::from(e), &self.ring.modulus))
    }

    /// Inverse of a unit modulo `p^N`.
    pub fn inv_unit(&self) -> Result<PAdicInt> {
        match self.valuation() {
            Valuation::Exact(0) => {}
            Valuation::Exact(k) => {
                return Err(Error::NotAUnit(k.to_string(), self.ring.prime));
            }
            Valuation::AtLeastPrecision => {
                return Err(Error::NotAUnit(format!(">= {}", self.ring.precision), self.ring.prime));
            }
        }
        let inv = self
            .residue
            .modinv(&self.ring.modulus)
            .expect("units are invertible modulo p^N");
        Ok(self.ring.from_residue(inv))
    }

    /// Splits a nonzero residue into `(k, u)` with `residue = p^k * u`,
    /// `u` read as an integer below `p^(N-k)`.
    pub(crate) fn split_unit(&self) -> Option<(u32, BigUint)> {
        let k = p_valuation(&self.residue, self.ring.prime)?;
        let u = &self.residue / BigUint::from(self.ring.prime).pow(k);
        Some((k, u))
    }
}

impl PartialEq for PAdicInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.residue == other.residue
    }
}

impl Eq for PAdicInt {}

impl fmt::Debug for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.ring.prime, self.ring.precision)
    }
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

// The operator impls panic on mixed contexts; use the `checked_*` methods
// when the operands come from different places.
impl Add for &PAdicInt {
    type Output = PAdicInt;
    fn add(self, rhs: &PAdicInt) -> PAdicInt {
        self.checked_add(rhs).expect("mixed p-adic contexts")
    }
}

impl Sub for &PAdicInt {
    type Output = PAdicInt;
    fn sub(self, rhs: &PAdicInt) -> PAdicInt {
        self.checked_sub(rhs).expect("mixed p-adic contexts")
    }
}

impl Mul for &PAdicInt {
    type Output = PAdicInt;
    fn mul(self, rhs: &PAdicInt) -> PAdicInt {
        self.checked_mul(rhs).expect("mixed p-adic contexts")
    }
}

impl Neg for &PAdicInt {
    type Output = PAdicInt;
    fn neg(self) -> PAdicInt {
        if self.residue.is_zero() {
            self.clone()
        } else {
            self.ring.from_residue(&*self.ring.modulus - &self.residue)
        }
    }
}

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Horner evaluation modulo `m`.
    pub fn eval_mod(&self, x: &BigUint, m: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + reduce_signed(c, m)) % m;
        }
        acc
    }

    pub fn eval(&self, x: &PAdicInt) -> PAdicInt {
        x.ring.from_residue(self.eval_mod(&x.residue, &x.ring.modulus))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Lifts a simple root of `poly` modulo `p` to a root modulo `p^N`.
///
/// Newton iteration doubles the number of correct digits per step:
/// `a <- a - f(a)/f'(a)` modulo `p^min(2k, N)`.
pub fn hensel_lift(poly: &Polynomial, a0: &PAdicInt) -> Result<PAdicInt> {
    let zp = a0.ring();
    let p = BigUint::from(zp.prime);
    if !poly.eval_mod(&a0.residue, &p).is_zero() {
        return Err(Error::NotApproximateRoot);
    }
    let dpoly = poly.derivative();
    if dpoly.eval_mod(&a0.residue, &p).is_zero() {
        return Err(Error::SingularRoot);
    }
    let mut a = &a0.residue % &p;
    let mut digits = 1u32;
    while digits < zp.precision {
        digits = (2 * digits).min(zp.precision);
        let m = p.pow(digits);
        let fa = poly.eval_mod(&a, &m);
        let dfa = dpoly.eval_mod(&a, &m);
        let inv = dfa
            .modinv(&m)
            .expect("derivative stays a unit along the Newton iteration");
        let step = (fa * inv) % &m;
        a = (a + &m - step) % &m;
    }
    Ok(zp.from_residue(a))
}

/// One Newton step at full precision; a lifted root is a fixed point.
pub fn newton_step(poly: &Polynomial, a: &PAdicInt) -> Result<PAdicInt> {
    let fa = poly.eval(a);
    let dfa = poly.derivative().eval(a);
    let inv = dfa.inv_unit().map_err(|_| Error::SingularRoot)?;
    a.checked_sub(&(&fa * &inv))
}

/// An element of `Q_p`: `unit * p^exponent`, or zero.
#[derive(Clone)]
pub struct PAdicRational {
    ring: Zp,
    // `(exponent, unit residue)`; `None` is the zero marker.
    repr: Option<(i64, BigUint)>,
}

impl PAdicRational {
    pub fn zero(ring: &Zp) -> Self {
        PAdicRational {
            ring: ring.clone(),
            repr: None,
        }
    }

    /// `unit * p^exponent`; `unit` must have valuation 0.
    pub fn from_parts(exponent: i64, unit: &PAdicInt) -> Result<Self> {
        if !unit.is_unit() {
            return Err(Error::NotAUnit(format!("{:?}", unit.valuation()), unit.prime()));
        }
        Ok(PAdicRational {
            ring: unit.ring.clone(),
            repr: Some((exponent, unit.residue.clone())),
        })
    }

    /// Image of a `Z_p` element. A zero residue maps to the zero marker.
    pub fn from_int(a: &PAdicInt) -> Self {
        PAdicRational {
            ring: a.ring.clone(),
            repr: a.split_unit().map(|(k, u)| (i64::from(k), u)),
        }
    }

    /// Embeds the rational number `num/den`.
    pub fn from_fraction(num: &BigInt, den: &BigInt, ring: &Zp) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(ring));
        }
        let g = num.gcd(den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let p = BigInt::from(ring.prime);
        let mut exponent = 0i64;
        while num.is_multiple_of(&p) {
            num /= &p;
            exponent += 1;
        }
        while den.is_multiple_of(&p) {
            den /= &p;
            exponent -= 1;
        }
        let unit = ring.element(num).checked_mul(&ring.element(den).inv_unit()?)?;
        Ok(PAdicRational {
            ring: ring.clone(),
            repr: Some((exponent, unit.residue)),
        })
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_none()
    }

    pub fn exponent(&self) -> Option<i64> {
        self.repr.as_ref().map(|(e, _)| *e)
    }

    /// The unit part; `None` for zero.
    pub fn unit(&self) -> Option<PAdicInt> {
        self.repr.as_ref().map(|(_, u)| self.ring.from_residue(u.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.exponent().is_none_or(|e| e >= 0)
    }

    /// Back to `Z_p` when the exponent is nonnegative.
    pub fn to_padic_int(&self) -> Result<PAdicInt> {
        match &self.repr {
            None => Ok(self.ring.zero()),
            Some((e, _)) if *e < 0 => Err(Error::NotIntegral),
            Some((e, u)) => {
                if *e >= i64::from(self.ring.precision) {
                    return Ok(self.ring.zero());
                }
                let shift = BigUint::from(self.ring.prime).pow(*e as u32);
                Ok(self.ring.from_residue(u * shift))
            }
        }
    }

    /// Multiplies by `p^k`; only the exponent moves.
    pub fn shift(&self, k: i64) -> Self {
        PAdicRational {
            ring: self.ring.clone(),
            repr: self.repr.as_ref().map(|(e, u)| (e + k, u.clone())),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let repr = match (&self.repr, &other.repr) {
            (Some((e, u)), Some((f, w))) => Some((e + f, (u * w) % &*self.ring.modulus)),
            _ => None,
        };
        Ok(PAdicRational {
            ring: self.ring.clone(),
            repr,
        })
    }

    /// Sum with the smaller exponent as reference. Cancellation of `j`
    /// leading digits leaves `N - j` significant unit digits; the top `j`
    /// are filled with zeros.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let (x, y) = match (&self.repr, &other.repr) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(x), Some(y)) => {
                if x.0 <= y.0 {
                    (x, y)
                } else {
                    (y, x)
                }
            }
        };
        let m = &*self.ring.modulus;
        let gap = y.0 - x.0;
        let s = if gap >= i64::from(self.ring.precision) {
            x.1.clone()
        } else {
            let shifted = &y.1 * BigUint::from(self.ring.prime).pow(gap as u32);
            (&x.1 + shifted) % m
        };
        let repr = p_valuation(&s, self.ring.prime).map(|j| {
            let u = s / BigUint::from(self.ring.prime).pow(j);
            (x.0 + i64::from(j), u)
        });
        Ok(PAdicRational {
            ring: self.ring.clone(),
            repr,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn inv(&self) -> Result<Self> {
        let (e, u) = self.repr.as_ref().ok_or(Error::DivisionByZero)?;
        let inv = u.modinv(&self.ring.modulus).expect("unit part is invertible");
        Ok(PAdicRational {
            ring: self.ring.clone(),
            repr: Some((-e, inv)),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// True when `self - other` lies in `p^level Z_p`, as far as the
    /// stored digits can tell.
    pub fn congruent_mod(&self, other: &Self, level: i64) -> Result<bool> {
        let d = self.checked_sub(other)?;
        Ok(d.exponent().is_none_or(|e| e >= level))
    }
}

impl PartialEq for PAdicRational {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.repr == other.repr
    }
}

impl Eq for PAdicRational {}

impl Neg for &PAdicRational {
    type Output = PAdicRational;
    fn neg(self) -> PAdicRational {
        PAdicRational {
            ring: self.ring.clone(),
            repr: self.repr.as_ref().map(|(e, u)| (*e, &*self.ring.modulus - u)),
        }
    }
}

impl fmt::Debug for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            None => write!(f, "0 in Q_{}", self.ring.prime),
            Some((e, u)) => write!(f, "{} * {}^{} in Q_{}", u, self.ring.prime, e, self.ring.prime),
        }
    }
}

impl fmt::Display for PAdicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            None => write!(f, "0"),
            Some((0, u)) => write!(f, "{u}"),
            Some((e, u)) => write!(f, "{u}*{}^{e}", self.ring.prime),
        }
    }
}

/// Embeds `num/den` into `Q_p` at precision `N`.
pub fn rational_embed(num: i64, den: i64, prime: u64, precision: u32) -> Result<PAdicRational> {
    let zp = Zp::new(prime, precision)?;
    PAdicRational::from_fraction(&BigInt::from(num), &BigInt::from(den), &zp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(p: u64, n: u32) -> Zp {
        Zp::new(p, n).unwrap()
    }

    #[test]
    fn from_integer_examples() {
        assert_eq!(PAdicInt::from_integer(7, 5, 4).unwrap().residue(), &BigUint::from(7u32));
        assert_eq!(
            PAdicInt::from_integer(-1, 3, 2).unwrap().residue(),
            &BigUint::from(8u32)
        );
        assert!(PAdicInt::from_integer(0, 2, 8).unwrap().is_zero());
        assert_eq!(PAdicInt::from_integer(1, 4, 3).unwrap_err(), Error::NonPrimeModulus(4));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(zp(3, 6).element(18).valuation(), Valuation::Exact(2));
        assert_eq!(zp(7, 4).element(1).valuation(), Valuation::Exact(0));
        assert_eq!(zp(5, 3).element(0).valuation(), Valuation::AtLeastPrecision);
        // 5^3 = 125 is zero at precision 3.
        assert_eq!(zp(5, 3).element(125).valuation(), Valuation::AtLeastPrecision);
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = zp(3, 3);
        assert!((&z3.element(13) + &z3.element(14)).is_zero());
        let z5 = zp(5, 3);
        assert_eq!(&z5.element(2) * &z5.element(63), z5.one());
        let a = z5.element(77);
        assert_eq!(&a + &z5.zero(), a);
        assert_eq!(&(-&a) + &a, z5.zero());
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = zp(3, 3).element(1);
        let b = zp(5, 3).element(1);
        let c = zp(3, 4).element(1);
        assert!(matches!(a.checked_add(&b), Err(Error::MixedContext(_))));
        assert!(matches!(a.checked_mul(&c), Err(Error::MixedContext(_))));
    }

    #[test]
    fn inv_unit_examples() {
        let z5 = zp(5, 3);
        assert_eq!(z5.element(2).inv_unit().unwrap(), z5.element(63));
        assert_eq!(z5.one().inv_unit().unwrap(), z5.one());
        assert!(matches!(z5.element(10).inv_unit(), Err(Error::NotAUnit(_, 5))));
        assert!(matches!(z5.zero().inv_unit(), Err(Error::NotAUnit(_, 5))));
    }

    // Independent oracle: every residue mod 343 whose square is 2.
    fn brute_force_sqrt2_mod_343() -> Vec<u32> {
        (0..343u32).filter(|x| (x * x) % 343 == 2).collect()
    }

    #[test]
    fn hensel_sqrt2_in_z7() {
        assert_eq!(brute_force_sqrt2_mod_343(), vec![108, 235]);
        let z7 = zp(7, 3);
        let f = Polynomial::from_i64s(&[-2, 0, 1]);
        assert_eq!(hensel_lift(&f, &z7.element(3)).unwrap(), z7.element(108));
        assert_eq!(hensel_lift(&f, &z7.element(4)).unwrap(), z7.element(235));
    }

    #[test]
    fn hensel_rejects_non_roots_and_singular_roots() {
        // 2 is not a square mod 5.
        assert!((0..5u32).all(|x| (x * x) % 5 != 2));
        let z5 = zp(5, 4);
        let f = Polynomial::from_i64s(&[-2, 0, 1]);
        for a in 0..5 {
            assert_eq!(hensel_lift(&f, &z5.element(a)), Err(Error::NotApproximateRoot));
        }
        // x^2 has a double root at 0.
        let g = Polynomial::from_i64s(&[0, 0, 1]);
        assert_eq!(hensel_lift(&g, &z5.zero()), Err(Error::SingularRoot));
    }

    #[test]
    fn hensel_large_precision_is_fixed_point() {
        let z = zp(7, 24);
        let f = Polynomial::from_i64s(&[-2, 0, 1]);
        let r = hensel_lift(&f, &z.element(3)).unwrap();
        assert!(f.eval(&r).is_zero());
        assert_eq!(newton_step(&f, &r).unwrap(), r);
        assert_eq!(r.truncate(3).unwrap().residue(), &BigUint::from(108u32));
    }

    #[test]
    fn rational_embed_examples() {
        let q = rational_embed(1, 3, 2, 4).unwrap();
        assert_eq!(q.exponent(), Some(0));
        assert_eq!(q.unit().unwrap().residue(), &BigUint::from(11u32));

        let q = rational_embed(4, 5, 2, 4).unwrap();
        assert_eq!(q.exponent(), Some(2));
        let inv5 = zp(2, 4).element(5).inv_unit().unwrap();
        assert_eq!(q.unit().unwrap(), inv5);

        assert!(rational_embed(0, 7, 2, 4).unwrap().is_zero());
        assert_eq!(rational_embed(1, 12, 2, 4).unwrap().exponent(), Some(-2));
    }

    #[test]
    fn rational_arithmetic() {
        let z = zp(3, 6);
        let half = PAdicRational::from_fraction(&2.into(), &6.into(), &z).unwrap();
        let third = PAdicRational::from_fraction(&1.into(), &3.into(), &z).unwrap();
        assert_eq!(half, third);
        let sum = third.checked_add(&third).unwrap();
        let two_thirds = PAdicRational::from_fraction(&2.into(), &3.into(), &z).unwrap();
        assert_eq!(sum, two_thirds);
        let one = third.checked_mul(&PAdicRational::from_int(&z.element(3))).unwrap();
        assert_eq!(one.to_padic_int().unwrap(), z.one());
        assert_eq!(third.to_padic_int(), Err(Error::NotIntegral));
        assert!(third.checked_sub(&third).unwrap().is_zero());
        assert_eq!(third.inv().unwrap().to_padic_int().unwrap(), z.element(3));
        assert_eq!(PAdicRational::zero(&z).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(Polynomial::from_i64s(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Polynomial::from_i64s(&[1, -3, 0, 2]).to_string(), "2x^3 - 3x + 1");
    }
}
