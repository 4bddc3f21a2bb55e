//! Serde adapters: big integers as decimal strings, rationals as
//! `{"num": "...", "den": "..."}` in lowest terms with positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn parse_int<E: serde::de::Error>(s: &str) -> Result<BigInt, E> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(E::custom(format!("expected a decimal integer string, got {s:?}")));
    }
    s.parse().map_err(E::custom)
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse_int(&String::deserialize(d)?)
    }
}

pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_int(&s))
            .transpose()
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_int(s))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalRepr {
    num: String,
    den: String,
}

fn to_repr(v: &BigRational) -> RationalRepr {
    // BigRational is kept reduced with a positive denominator
    RationalRepr {
        num: v.numer().to_string(),
        den: v.denom().to_string(),
    }
}

fn from_repr<E: serde::de::Error>(r: RationalRepr) -> Result<BigRational, E> {
    let num = parse_int::<E>(&r.num)?;
    let den = parse_int::<E>(&r.den)?;
    if den <= BigInt::zero() {
        return Err(E::custom("rational denominator must be positive"));
    }
    let v = BigRational::new(num.clone(), den.clone());
    if *v.numer() != num || *v.denom() != den {
        return Err(E::custom("rational is not in lowest terms"));
    }
    Ok(v)
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        from_repr(RationalRepr::deserialize(d)?)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<RationalRepr>::deserialize(d)?
            .map(from_repr)
            .transpose()
    }
}

/// Checks a string holds a decimal integer; used by callers that keep the
/// raw string form.
pub fn is_decimal_integer(s: &str) -> bool {
    parse_int::<serde::de::value::Error>(s).is_ok()
}
