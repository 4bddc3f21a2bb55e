//! Section counts `h^0(X, O_X(m))` from the Hilbert series
//! `(1 - t^d) / prod (1 - t^{a_i})`, and exact volumes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::weights::{Hypersurface, WeightSystem};
use super::WpsError;

/// Upper bound on `m * (number of weights)` for the dense table.
pub const SECTION_COUNT_BUDGET: u64 = 100_000_000;

fn budget_for(len: usize) -> u64 {
    SECTION_COUNT_BUDGET / len as u64
}

/// Number of monomials of weighted degree `j` for every `j` in `0..=max_m`.
pub fn monomial_counts(weights: &[BigInt], max_m: u64) -> Vec<BigUint> {
    let small: Vec<usize> = weights
        .iter()
        .filter_map(|w| w.to_u64())
        .filter(|&w| w >= 1 && w <= max_m)
        .map(|w| w as usize)
        .collect();
    let len = max_m as usize + 1;
    if let Some(table) = counts_u128(&small, len) {
        return table.into_iter().map(BigUint::from).collect();
    }
    let mut table = vec![BigUint::zero(); len];
    table[0] = BigUint::one();
    for &a in &small {
        for j in a..len {
            let prev = table[j - a].clone();
            table[j] += prev;
        }
    }
    table
}

/// Coin-change table in `u128`; `None` on overflow.
fn counts_u128(weights: &[usize], len: usize) -> Option<Vec<u128>> {
    let mut table = vec![0u128; len];
    table[0] = 1;
    for &a in weights {
        for j in a..len {
            table[j] = table[j].checked_add(table[j - a])?;
        }
    }
    Some(table)
}

/// `h^0(O_X(m))` for `m = 0..=max_m`.
pub fn section_counts(h: &Hypersurface, max_m: u64) -> Result<Vec<BigInt>, WpsError> {
    let limit = budget_for(h.weights().len());
    if max_m > limit {
        return Err(WpsError::BudgetExceeded { m: max_m, limit });
    }
    let counts = monomial_counts(h.weights(), max_m);
    let d = h.degree().to_u64().filter(|&d| d <= max_m);
    Ok((0..=max_m as usize)
        .map(|m| {
            let here = BigInt::from(counts[m].clone());
            match d {
                Some(d) if m as u64 >= d => here - BigInt::from(counts[m - d as usize].clone()),
                _ => here,
            }
        })
        .collect())
}

/// `h^0(O_X(m))`. Degrees strictly between 0 and the bottom weight have no
/// monomials, so they return 0 without touching the table budget.
pub fn section_count(h: &Hypersurface, m: &BigInt) -> Result<BigInt, WpsError> {
    if m.is_zero() {
        return Ok(BigInt::one());
    }
    if m < &BigInt::zero() {
        return Ok(BigInt::zero());
    }
    if m < h.ambient().bottom_weight() {
        return Ok(BigInt::zero());
    }
    let limit = budget_for(h.weights().len());
    let mm = m
        .to_u64()
        .filter(|&v| v <= limit)
        .ok_or_else(|| WpsError::BudgetExceeded {
            m: m.to_u64().unwrap_or(u64::MAX),
            limit,
        })?;
    Ok(section_counts(h, mm)?.pop().expect("table has m + 1 entries"))
}

#[derive(Clone, Copy, Debug)]
pub enum VolumeTarget<'a> {
    /// `O_X(k)` on a hypersurface: `k^dim d / prod a_i`, `dim = len - 2`.
    Hypersurface(&'a Hypersurface),
    /// `O(k)` on the ambient space: `k^dim / prod a_i`, `dim = len - 1`.
    Ambient(&'a WeightSystem),
}

/// Exact volume of the twist `O(k)`.
pub fn volume_of_twist(target: VolumeTarget<'_>, k: &BigInt) -> BigRational {
    let (weights, dim, numer) = match target {
        VolumeTarget::Hypersurface(h) => (h.ambient(), h.dimension(), h.degree().clone()),
        VolumeTarget::Ambient(w) => (w, w.len() - 1, BigInt::one()),
    };
    let kpow = num_traits::pow(k.clone(), dim);
    BigRational::new(numer * kpow, weights.product())
}

/// `h^0(m K_X) n! / m^n`, which tends to the volume of `K_X = O_X(1)`.
pub fn volume_limit_estimate(h: &Hypersurface, m: u64) -> Result<BigRational, WpsError> {
    let kd = h.canonical_degree();
    if !kd.is_one() {
        return Err(WpsError::CanonicalDegreeNotOne(kd));
    }
    if m == 0 {
        return Err(WpsError::ZeroTwist);
    }
    let n = h.dimension();
    let count = section_count(h, &BigInt::from(m))?;
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let denom = num_traits::pow(BigInt::from(m), n);
    Ok(BigRational::new(count * factorial, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(w: &[u64], d: u64) -> Hypersurface {
        Hypersurface::from_u64s(w, d).unwrap()
    }

    /// Direct enumeration of exponent vectors.
    fn brute_monomials(weights: &[u64], m: u64) -> u64 {
        fn go(w: &[u64], left: u64) -> u64 {
            match w.split_first() {
                None => u64::from(left == 0),
                Some((&a, rest)) => (0..=left / a).map(|e| go(rest, left - e * a)).sum(),
            }
        }
        go(weights, m)
    }

    #[test]
    fn examples() {
        let x = hs(&[158, 85, 61, 11], 316);
        assert_eq!(section_count(&x, &BigInt::from(11)).unwrap(), BigInt::from(1));
        assert_eq!(section_count(&x, &BigInt::from(0)).unwrap(), BigInt::from(1));
        assert_eq!(section_count(&x, &BigInt::from(1)).unwrap(), BigInt::from(0));
        let counts = section_counts(&x, 11).unwrap();
        let mut expect = vec![BigInt::zero(); 12];
        expect[0] = BigInt::one();
        expect[11] = BigInt::one();
        assert_eq!(counts, expect);
    }

    #[test]
    fn dp_matches_enumeration() {
        let w = [158u64, 85, 61, 11];
        let x = hs(&w, 316);
        let counts = section_counts(&x, 2000).unwrap();
        for m in 0..=2000u64 {
            let mut expect = brute_monomials(&w, m) as i64;
            if m >= 316 {
                expect -= brute_monomials(&w, m - 316) as i64;
            }
            assert_eq!(counts[m as usize], BigInt::from(expect), "m = {m}");
        }
    }

    #[test]
    fn bottom_weight_rule_skips_budget() {
        let huge = BigInt::from(10u64).pow(40);
        let h = Hypersurface::new(
            WeightSystem::new(vec![huge.clone(), huge.clone() + 1u32, huge.clone() + 2u32]).unwrap(),
            huge.clone() * 3u32 + 4u32,
        )
        .unwrap();
        assert_eq!(section_count(&h, &(huge.clone() - 1u32)).unwrap(), BigInt::zero());
        assert!(matches!(
            section_count(&h, &(huge + 5u32)),
            Err(WpsError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn budget_guard() {
        let x = hs(&[1, 1, 1, 1], 5);
        assert!(matches!(
            section_counts(&x, 25_000_001),
            Err(WpsError::BudgetExceeded { limit: 25_000_000, .. })
        ));
    }

    #[test]
    fn bigint_fallback_agrees() {
        // all-ones weights overflow u128 quickly
        let w: Vec<BigInt> = vec![BigInt::one(); 40];
        let counts = monomial_counts(&w, 400);
        // C(m + 39, 39)
        let binom = |n: u64, k: u64| -> BigUint {
            (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
        };
        assert_eq!(counts[400], binom(439, 39));
        assert!(counts[400].bits() > 128);
    }

    #[test]
    fn volumes() {
        let x = hs(&[158, 85, 61, 11], 316);
        let v = volume_of_twist(VolumeTarget::Hypersurface(&x), &BigInt::one());
        assert_eq!(v, BigRational::new(2.into(), 57035.into()));
        let p = WeightSystem::from_u64s(&[3, 2, 1]).unwrap();
        assert_eq!(volume_of_twist(VolumeTarget::Ambient(&p), &6.into()), BigRational::from_integer(6.into()));
        let x3 = hs(&[170034, 113356, 47269, 9185, 223], 340068);
        assert_eq!(
            volume_of_twist(VolumeTarget::Hypersurface(&x3), &BigInt::one()),
            BigRational::new(1.into(), 5487505331993410u64.into())
        );
    }

    #[test]
    fn estimate_preconditions() {
        let x = hs(&[158, 85, 61, 11], 316);
        assert_eq!(volume_limit_estimate(&x, 1).unwrap(), BigRational::zero());
        assert!(matches!(
            volume_limit_estimate(&hs(&[128, 69, 49, 11], 256), 10),
            Err(WpsError::CanonicalDegreeNotOne(_))
        ));
        assert_eq!(volume_limit_estimate(&x, 0), Err(WpsError::ZeroTwist));
    }

    #[test]
    fn quintic_surface_estimate() {
        let q = hs(&[1, 1, 1, 1], 5);
        let est = volume_limit_estimate(&q, 300).unwrap();
        let five = BigRational::from_integer(5.into());
        let rel = ((est - &five) / &five).to_f64().unwrap().abs();
        assert!(rel < 0.05, "{rel}");
    }
}
