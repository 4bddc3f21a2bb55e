//! Weighted projective spaces and hypersurfaces in them.

mod hilbert;
mod quasi;
mod semigroup;
mod weights;

pub use hilbert::{
    monomial_counts, section_count, section_counts, volume_limit_estimate, volume_of_twist,
    VolumeTarget, SECTION_COUNT_BUDGET,
};
pub use quasi::{
    general_criterion, quasi_smooth_cycle, quasi_smooth_general, Branch, CongruenceWitness,
    CycleEvidence, DivisibilityWitness, Evidence, Method, QuasiSmoothCertificate, SubsetWitness,
    Verdict, MAX_GENERAL_WEIGHTS,
};
pub use semigroup::{semigroup_contains, Membership, MembershipGuard, Semigroup};
pub use weights::{
    canonical_degree, hypersurface_well_formed, sorted_descending, space_well_formed,
    well_formed_pairs, wps_well_formed, Hypersurface, WeightSystem,
};

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WpsError {
    #[error("a weight system needs at least 2 weights, got {0}")]
    TooFewWeights(usize),
    #[error("weight {index} is {value}; weights must be positive")]
    NonPositiveWeight { index: usize, value: BigInt },
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(BigInt),
    #[error("the ambient weighted projective space is not well-formed")]
    AmbientNotWellFormed,
    #[error("the general criterion enumerates subsets of at most {max} weights, got {got}")]
    TooManyWeights { got: usize, max: usize },
    #[error("cycle length {r} is outside 1..={len}")]
    CycleLengthOutOfRange { r: usize, len: usize },
    #[error("semigroup needs at least one generator")]
    EmptyGenerators,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("section count at m = {m} exceeds the table budget (m <= {limit})")]
    BudgetExceeded { m: u64, limit: u64 },
    #[error("volume estimate needs canonical degree 1, got {0}")]
    CanonicalDegreeNotOne(BigInt),
    #[error("volume estimate needs m >= 1")]
    ZeroTwist,
}

/// Integer types the membership and quasi-smoothness code runs on: `u64`
/// for small inputs, [`BigInt`] otherwise.
pub trait Weight: Integer + Clone + Debug + Hash + Send + Sync + ToPrimitive {
    /// Inverse of `a` modulo `m` for coprime `a`, `m` with `m > 1`.
    fn mod_inverse(a: &Self, m: &Self) -> Option<Self>;
    fn from_u64(v: u64) -> Self;
}

impl Weight for u64 {
    fn mod_inverse(a: &Self, m: &Self) -> Option<Self> {
        let (mut old_r, mut r) = ((*a % *m) as i128, *m as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(*m as i128) as u64)
    }

    fn from_u64(v: u64) -> Self {
        v
    }
}

impl Weight for BigInt {
    fn mod_inverse(a: &Self, m: &Self) -> Option<Self> {
        let eg = a.mod_floor(m).extended_gcd(m);
        if eg.gcd != BigInt::from(1) {
            return None;
        }
        Some(eg.x.mod_floor(m))
    }

    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
}

/// Values that fit this bound are handled on the `u64` path; products of two
/// such values with a residue-graph length stay below `u64::MAX`.
pub(crate) const SMALL_LIMIT: u64 = 1 << 32;

pub(crate) fn to_small(values: &[BigInt]) -> Option<Vec<u64>> {
    values
        .iter()
        .map(|v| {
            if v.is_negative() {
                None
            } else {
                v.to_u64().filter(|&x| x < SMALL_LIMIT)
            }
        })
        .collect()
}
