//! Fixed-point natural logarithms of big integers, for ratios of logs of
//! numbers far outside `f64` range.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Working precision in bits for [`ln_fixed`] callers in this crate.
pub const WORKING_BITS: u64 = 256;

/// `2 atanh(num / den) * 2^bits` for `0 <= num / den < 1`, by the odd power series.
fn atanh2_fixed(num: &BigInt, den: &BigInt, bits: u64) -> BigInt {
    let u = (num << bits) / den;
    let u2 = (&u * &u) >> bits;
    let mut power = u.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = (&power * &u2) >> bits;
        k += 2;
    }
    sum << 1
}

/// `ln(2) * 2^bits`.
pub fn ln2_fixed(bits: u64) -> BigInt {
    atanh2_fixed(&BigInt::one(), &BigInt::from(3), bits)
}

/// `ln(n) * 2^bits`, truncated. Absolute error is a few units in the last
/// place times the bit length of `n`.
pub fn ln_fixed(n: &BigUint, bits: u64) -> BigInt {
    assert!(!n.is_zero(), "ln(0)");
    let guard = 32;
    let wb = bits + guard;
    let k = n.bits() - 1;
    let n = BigInt::from_biguint(Sign::Plus, n.clone());
    // mantissa m = n / 2^k in [1, 2), as a fixed-point value
    let m = if k <= wb { n << (wb - k) } else { n >> (k - wb) };
    let one = BigInt::one() << wb;
    let ln_m = atanh2_fixed(&(&m - &one), &(&m + &one), wb);
    let total = ln2_fixed(wb) * BigInt::from(k) + ln_m;
    total >> guard
}

/// A decimal value `scaled / 10^digits`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedDecimal {
    #[serde(with = "crate::serde_big::int")]
    pub scaled: BigInt,
    pub digits: u32,
}

impl FixedDecimal {
    /// Rounds `fixed / 2^bits` to `digits` decimal places.
    pub fn from_binary_fixed(fixed: &BigInt, bits: u64, digits: u32) -> Self {
        let ten = num_traits::pow(BigInt::from(10), digits as usize);
        let num = fixed * ten * 2 + (BigInt::one() << bits);
        let scaled = num >> (bits + 1);
        Self { scaled, digits }
    }

    /// Rounds an exact rational to `digits` decimal places, half away from zero.
    pub fn from_rational(v: &BigRational, digits: u32) -> Self {
        let ten = num_traits::pow(BigInt::from(10), digits as usize);
        let num: BigInt = v.numer() * ten * 2;
        let den: BigInt = v.denom() * 2;
        let half = v.denom().clone();
        let scaled = if num.is_negative() {
            -((-num + half) / den)
        } else {
            (num + half) / den
        };
        Self { scaled, digits }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits as usize;
        let s = self.scaled.abs().to_string();
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        if self.scaled.is_negative() {
            f.write_str("-")?;
        }
        if digits == 0 {
            f.write_str(int)
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

/// `(ln a) / (ln b)` from fixed-point logs that share `bits`.
pub fn ratio_of_logs(ln_a: &BigInt, ln_b: &BigInt, bits: u64, digits: u32) -> FixedDecimal {
    let q = (ln_a << bits) / ln_b;
    FixedDecimal::from_binary_fixed(&q, bits, digits)
}

pub fn fixed_to_f64(fixed: &BigInt, bits: u64) -> f64 {
    let shift = bits.saturating_sub(60);
    (fixed >> shift).to_f64().unwrap_or(f64::NAN) / 2f64.powi((bits - shift) as i32)
}
