//! Stable JSON shapes for values crossing the CLI and FFI boundaries.
//!
//! Residues are decimal strings so that values beyond `u64` survive
//! round trips through JSON parsers that use doubles.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{PAdicInt, PAdicRational};
use crate::product::{ProductElement, RingContext};
use crate::quotient::ComponentValue;
use crate::spectrum::{Level, PrimeIdeal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicIntJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub residue: String,
}

impl From<&PAdicInt> for PAdicIntJson {
    fn from(a: &PAdicInt) -> Self {
        PAdicIntJson {
            p: a.prime(),
            precision: a.precision(),
            residue: a.residue().to_string(),
        }
    }
}

/// `p^exp * unit`; zero has `exp` and `unit` both null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub exp: Option<i64>,
    pub unit: Option<String>,
}

impl From<&PAdicRational> for RationalJson {
    fn from(a: &PAdicRational) -> Self {
        RationalJson {
            p: a.prime(),
            precision: a.ring().precision(),
            exp: a.exponent(),
            unit: a.unit().map(|u| u.residue().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub primes: Vec<u64>,
    #[serde(rename = "N")]
    pub precision: u32,
}

impl From<&RingContext> for ContextJson {
    fn from(ctx: &RingContext) -> Self {
        ContextJson {
            primes: ctx.primes().to_vec(),
            precision: ctx.precision(),
        }
    }
}

impl ContextJson {
    pub fn to_context(&self) -> Result<RingContext> {
        RingContext::new(&self.primes, self.precision)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub context: ContextJson,
    pub components: Vec<String>,
}

impl From<&ProductElement> for ElementJson {
    fn from(f: &ProductElement) -> Self {
        ElementJson {
            context: f.context().into(),
            components: f.residue_strings(),
        }
    }
}

impl ElementJson {
    pub fn to_element(&self) -> Result<ProductElement> {
        let ctx = self.context.to_context()?;
        let values = self
            .components
            .iter()
            .map(|s| {
                BigInt::from_str(s).map_err(|_| Error::malformed("components", format!("`{s}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        ctx.element(values)
    }
}

/// A point of the spectrum named by its prime and level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDescriptor {
    pub prime: u64,
    pub level: Level,
}

impl From<&PrimeIdeal> for PrimeDescriptor {
    fn from(x: &PrimeIdeal) -> Self {
        PrimeDescriptor {
            prime: x.prime,
            level: x.level,
        }
    }
}

impl From<PrimeDescriptor> for PrimeIdeal {
    fn from(d: PrimeDescriptor) -> Self {
        PrimeIdeal {
            prime: d.prime,
            level: d.level,
        }
    }
}

/// One entry of a spectrum listing, with its canonical generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecPointJson {
    pub prime: u64,
    pub level: Level,
    pub generator: Vec<String>,
}

impl SpecPointJson {
    pub fn new(context: &RingContext, x: &PrimeIdeal) -> Result<Self> {
        Ok(SpecPointJson {
            prime: x.prime,
            level: x.level,
            generator: x.generator(context)?.residue_strings(),
        })
    }
}

/// A value in `F_p`, `Z_p` or `Q_p`, tagged with its ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "ring")]
pub enum ComponentValueJson {
    #[serde(rename = "F_p")]
    Residue { p: u64, value: u64 },
    #[serde(rename = "Z_p")]
    Integer(PAdicIntJson),
    #[serde(rename = "Q_p")]
    Rational(RationalJson),
}

impl From<&ComponentValue> for ComponentValueJson {
    fn from(v: &ComponentValue) -> Self {
        match v {
            ComponentValue::Residue { prime, value } => ComponentValueJson::Residue {
                p: *prime,
                value: *value,
            },
            ComponentValue::Integer(a) => ComponentValueJson::Integer(a.into()),
            ComponentValue::Rational(a) => ComponentValueJson::Rational(a.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let ctx = RingContext::new(&[2, 3, 5], 24).unwrap();
        let f = ctx.element([-1, 3, 10]).unwrap();
        let text = serde_json::to_string(&ElementJson::from(&f)).unwrap();
        assert!(text.starts_with(r#"{"context":{"primes":[2,3,5],"N":24},"components":["16777215""#));
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element().unwrap(), f);
    }

    #[test]
    fn padic_and_rational_shapes() {
        let ctx = RingContext::new(&[3], 6).unwrap();
        let a = ctx.ring(3).unwrap().element(-1);
        assert_eq!(
            serde_json::to_value(PAdicIntJson::from(&a)).unwrap(),
            serde_json::json!({"p": 3, "N": 6, "residue": "728"})
        );
        let r = crate::padic::rational_embed(5, 9, 3, 6).unwrap();
        assert_eq!(
            serde_json::to_value(RationalJson::from(&r)).unwrap(),
            serde_json::json!({"p": 3, "N": 6, "exp": -2, "unit": "5"})
        );
    }

    #[test]
    fn prime_descriptor_round_trip() {
        let d: PrimeDescriptor = serde_json::from_str(r#"{"prime":3,"level":"maximal"}"#).unwrap();
        assert_eq!(PrimeIdeal::from(d), PrimeIdeal::maximal(3));
        assert!(serde_json::from_str::<PrimeDescriptor>(r#"{"prime":3,"level":"top"}"#).is_err());
    }
}
