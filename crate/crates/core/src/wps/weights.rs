use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::WpsError;
use crate::serde_big;

/// Weights `a_0, ..., a_n` of `P(a_0, ..., a_n)`, kept in the order given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightSystemRepr", into = "WeightSystemRepr")]
pub struct WeightSystem {
    weights: Vec<BigInt>,
}

impl WeightSystem {
    pub fn new(weights: Vec<BigInt>) -> Result<Self, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::TooFewWeights(weights.len()));
        }
        if let Some((index, value)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(WpsError::NonPositiveWeight {
                index,
                value: value.clone(),
            });
        }
        Ok(Self { weights })
    }

    pub fn from_u64s(weights: &[u64]) -> Result<Self, WpsError> {
        Self::new(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> BigInt {
        self.weights.iter().sum()
    }

    pub fn product(&self) -> BigInt {
        self.weights.iter().product()
    }

    /// The smallest weight.
    pub fn bottom_weight(&self) -> &BigInt {
        self.weights.iter().min().expect("at least two weights")
    }

    pub fn sorted_descending(&self) -> Vec<BigInt> {
        sorted_descending(&self.weights)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{}(", self.len() - 1)?;
        for (i, w) in self.sorted_descending().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

pub fn sorted_descending(weights: &[BigInt]) -> Vec<BigInt> {
    let mut v = weights.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HypersurfaceRepr", into = "HypersurfaceRepr")]
pub struct Hypersurface {
    ambient: WeightSystem,
    degree: BigInt,
}

impl Hypersurface {
    pub fn new(ambient: WeightSystem, degree: BigInt) -> Result<Self, WpsError> {
        if !degree.is_positive() {
            return Err(WpsError::NonPositiveDegree(degree));
        }
        Ok(Self { ambient, degree })
    }

    pub fn from_u64s(weights: &[u64], degree: u64) -> Result<Self, WpsError> {
        Self::new(WeightSystem::from_u64s(weights)?, BigInt::from(degree))
    }

    pub fn ambient(&self) -> &WeightSystem {
        &self.ambient
    }

    pub fn weights(&self) -> &[BigInt] {
        self.ambient.weights()
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn dimension(&self) -> usize {
        self.ambient.len() - 2
    }

    /// `d - sum(a_i)`: `K_X = O_X(canonical_degree)` by adjunction.
    pub fn canonical_degree(&self) -> BigInt {
        &self.degree - self.ambient.sum()
    }
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{} ⊂ {}", self.degree, self.ambient)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightSystemRepr {
    #[serde(with = "serde_big::int_vec")]
    weights: Vec<BigInt>,
}

impl From<WeightSystem> for WeightSystemRepr {
    fn from(w: WeightSystem) -> Self {
        Self { weights: w.weights }
    }
}

impl TryFrom<WeightSystemRepr> for WeightSystem {
    type Error = WpsError;

    fn try_from(r: WeightSystemRepr) -> Result<Self, WpsError> {
        WeightSystem::new(r.weights)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypersurfaceRepr {
    #[serde(with = "serde_big::int")]
    degree: BigInt,
    #[serde(with = "serde_big::int_vec")]
    weights: Vec<BigInt>,
}

impl From<Hypersurface> for HypersurfaceRepr {
    fn from(h: Hypersurface) -> Self {
        Self {
            degree: h.degree,
            weights: h.ambient.weights,
        }
    }
}

impl TryFrom<HypersurfaceRepr> for Hypersurface {
    type Error = WpsError;

    fn try_from(r: HypersurfaceRepr) -> Result<Self, WpsError> {
        Hypersurface::new(WeightSystem::new(r.weights)?, r.degree)
    }
}

pub fn canonical_degree(h: &Hypersurface) -> BigInt {
    h.canonical_degree()
}

fn gcd_skipping<T: Integer + Clone>(weights: &[T], skip: &[usize]) -> T {
    weights
        .iter()
        .enumerate()
        .filter(|(k, _)| !skip.contains(k))
        .fold(T::zero(), |g, (_, w)| g.gcd(w))
}

/// gcd of all weights but one is 1, for every choice of the omitted weight.
pub fn space_well_formed<T: Integer + Clone>(weights: &[T]) -> bool {
    (0..weights.len()).all(|j| gcd_skipping(weights, &[j]).is_one())
}

/// For each pair `i < j`, gcd of the weights other than `a_i, a_j` divides
/// `degree`. An empty remainder imposes no condition.
pub fn well_formed_pairs<T: Integer + Clone>(weights: &[T], degree: &T) -> bool {
    let n = weights.len();
    for i in 0..n {
        for j in i + 1..n {
            if n == 2 {
                continue;
            }
            let g = gcd_skipping(weights, &[i, j]);
            if g.is_zero() || !degree.is_multiple_of(&g) {
                return false;
            }
        }
    }
    true
}

pub fn wps_well_formed(w: &WeightSystem) -> bool {
    space_well_formed(w.weights())
}

/// Well-formedness of a general hypersurface; errors if the ambient space is
/// not well-formed, since the pair condition is meaningless then.
pub fn hypersurface_well_formed(h: &Hypersurface) -> Result<bool, WpsError> {
    if !wps_well_formed(h.ambient()) {
        return Err(WpsError::AmbientNotWellFormed);
    }
    Ok(well_formed_pairs(h.weights(), h.degree()))
}
