//! Exhaustive search over small weight systems for well-formed quasi-smooth
//! hypersurfaces with `K_X = O_X(+1)` or `O_X(-1)`, ranked by volume or by
//! bottom weight.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::serde_big;
use crate::wps::{
    general_criterion, hypersurface_well_formed, quasi_smooth_general, space_well_formed,
    well_formed_pairs, wps_well_formed, Hypersurface, MembershipGuard, QuasiSmoothCertificate,
    Verdict, WeightSystem,
};

/// Largest `max_weight` accepted for each supported dimension.
pub const MAX_WEIGHT_DIM2: u64 = 200;
pub const MAX_WEIGHT_DIM3: u64 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MinVolume,
    MaxBottomWeight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub dimension: usize,
    pub max_weight: u64,
    pub canonical_degree_target: i32,
    pub objective: Objective,
    pub membership_guard: MembershipGuard,
    pub shard_index: u32,
    pub shard_count: u32,
    pub top_k: usize,
}

impl SearchConfig {
    pub fn new(dimension: usize, max_weight: u64, canonical_degree_target: i32, objective: Objective) -> Self {
        Self {
            dimension,
            max_weight,
            canonical_degree_target,
            objective,
            membership_guard: MembershipGuard::default(),
            shard_index: 0,
            shard_count: 1,
            top_k: 10,
        }
    }

    pub fn with_shard(mut self, shard_index: u32, shard_count: u32) -> Self {
        self.shard_index = shard_index;
        self.shard_count = shard_count;
        self
    }

    pub fn with_top_k(mut self, top_k: usize) -> Self {
        self.top_k = top_k;
        self
    }

    fn len(&self) -> usize {
        self.dimension + 2
    }

    /// Checks the structural invariants that enumeration itself relies on.
    pub fn validate_shape(&self) -> Result<(), SearchError> {
        if !(2..=3).contains(&self.dimension) {
            return Err(SearchError::UnsupportedDimension(self.dimension));
        }
        if self.max_weight == 0 {
            return Err(SearchError::ZeroMaxWeight);
        }
        if self.canonical_degree_target.abs() != 1 {
            return Err(SearchError::BadTarget(self.canonical_degree_target));
        }
        if self.shard_count == 0 || self.shard_index >= self.shard_count {
            return Err(SearchError::BadShard {
                index: self.shard_index,
                count: self.shard_count,
            });
        }
        if self.top_k == 0 {
            return Err(SearchError::ZeroTopK);
        }
        Ok(())
    }

    /// Shape checks plus the per-dimension weight budget.
    pub fn validate(&self) -> Result<(), SearchError> {
        self.validate_shape()?;
        let limit = if self.dimension == 2 {
            MAX_WEIGHT_DIM2
        } else {
            MAX_WEIGHT_DIM3
        };
        if self.max_weight > limit {
            return Err(SearchError::BudgetExceeded {
                dimension: self.dimension,
                max_weight: self.max_weight,
                limit,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("dimension {0} is not supported; use 2 or 3")]
    UnsupportedDimension(usize),
    #[error("max weight must be at least 1")]
    ZeroMaxWeight,
    #[error("canonical degree target must be +1 or -1, got {0}")]
    BadTarget(i32),
    #[error("shard index {index} is outside 0..{count}")]
    BadShard { index: u32, count: u32 },
    #[error("top_k must be at least 1")]
    ZeroTopK,
    #[error("max weight {max_weight} exceeds the dimension {dimension} budget of {limit}")]
    BudgetExceeded { dimension: usize, max_weight: u64, limit: u64 },
}

/// FNV-1a over the little-endian weights; picks the shard of a tuple.
fn tuple_hash(weights: &[u64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in weights {
        for byte in w.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

pub fn shard_of(weights: &[u64], shard_count: u32) -> u32 {
    (tuple_hash(weights) % u64::from(shard_count)) as u32
}

/// Non-increasing tuples of a fixed length with a fixed first entry, in
/// ascending lexicographic order.
struct Tuples {
    current: Vec<u64>,
    done: bool,
}

impl Tuples {
    fn with_top(top: u64, len: usize) -> Self {
        let mut current = vec![1; len];
        current[0] = top;
        Self { current, done: false }
    }

    fn advance(&mut self) {
        let t = &mut self.current;
        match (1..t.len()).rev().find(|&i| t[i] < t[i - 1]) {
            Some(i) => {
                t[i] += 1;
                t[i + 1..].iter_mut().for_each(|v| *v = 1);
            }
            None => self.done = true,
        }
    }
}

impl Iterator for Tuples {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

fn candidate_degree(weights: &[u64], target: i32) -> Option<u64> {
    let sum: u64 = weights.iter().sum();
    let d = sum as i64 + i64::from(target);
    (d >= 1).then_some(d as u64)
}

/// Every candidate of the configured shard: weight multisets as descending
/// tuples with max at most `max_weight`, degree `sum + target`.
pub fn enumerate_candidates(config: &SearchConfig) -> Result<impl Iterator<Item = Hypersurface> + '_, SearchError> {
    config.validate_shape()?;
    let len = config.len();
    Ok((1..=config.max_weight)
        .flat_map(move |top| Tuples::with_top(top, len))
        .filter(|w| shard_of(w, config.shard_count) == config.shard_index)
        .filter_map(|w| {
            let d = candidate_degree(&w, config.canonical_degree_target)?;
            Some(Hypersurface::from_u64s(&w, d).expect("positive weights and degree"))
        }))
}

/// A fraction compared by cross multiplication; smaller ranks better.
#[derive(Clone, Copy, Debug)]
struct Score {
    num: u128,
    den: u128,
}

impl PartialEq for Score {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Score {}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

fn score(objective: Objective, weights: &[u64], degree: u64) -> Score {
    match objective {
        Objective::MinVolume => Score {
            num: u128::from(degree),
            den: weights.iter().map(|&w| u128::from(w)).product(),
        },
        Objective::MaxBottomWeight => Score {
            num: 1,
            den: u128::from(*weights.last().expect("non-empty tuple")),
        },
    }
}

/// All tuples achieving the best `k` distinct scores.
#[derive(Clone, Debug)]
struct TopK {
    k: usize,
    groups: BTreeMap<Score, Vec<Vec<u64>>>,
}

impl TopK {
    fn new(k: usize) -> Self {
        Self {
            k,
            groups: BTreeMap::new(),
        }
    }

    fn admits(&self, s: &Score) -> bool {
        self.groups.len() < self.k || self.groups.keys().next_back().is_some_and(|worst| s <= worst)
    }

    fn insert(&mut self, s: Score, tuple: Vec<u64>) {
        if !self.admits(&s) {
            return;
        }
        self.groups.entry(s).or_default().push(tuple);
        if self.groups.len() > self.k {
            self.groups.pop_last();
        }
    }

    fn merge(mut self, other: TopK) -> TopK {
        for (s, tuples) in other.groups {
            for t in tuples {
                self.insert(s, t);
            }
        }
        self
    }
}

/// Rejection counts by reason.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStats {
    pub enumerated: u64,
    pub in_shard: u64,
    pub pruned_by_objective: u64,
    pub ambient_not_well_formed: u64,
    pub hypersurface_not_well_formed: u64,
    pub not_quasi_smooth: u64,
    pub undecided: u64,
    pub accepted: u64,
}

impl SearchStats {
    pub fn merge(mut self, o: SearchStats) -> SearchStats {
        self.enumerated += o.enumerated;
        self.in_shard += o.in_shard;
        self.pruned_by_objective += o.pruned_by_objective;
        self.ambient_not_well_formed += o.ambient_not_well_formed;
        self.hypersurface_not_well_formed += o.hypersurface_not_well_formed;
        self.not_quasi_smooth += o.not_quasi_smooth;
        self.undecided += o.undecided;
        self.accepted += o.accepted;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveValue {
    /// `d / prod a_i`, the volume of `O_X(1)`, which is `K_X` or `-K_X`.
    Volume(#[serde(with = "serde_big::rational")] BigRational),
    BottomWeight(#[serde(with = "serde_big::int")] BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchHit {
    /// Weights in descending order.
    pub hypersurface: Hypersurface,
    pub objective: ObjectiveValue,
    /// 0 for the best objective value, 1 for the next distinct value, ...
    pub rank: usize,
    pub certificate: QuasiSmoothCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchResult {
    pub config: SearchConfig,
    pub hits: Vec<SearchHit>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn top_value(&self) -> Option<&ObjectiveValue> {
        self.hits.first().map(|h| &h.objective)
    }
}

fn search_top(config: &SearchConfig, top: u64) -> (TopK, SearchStats) {
    let mut best = TopK::new(config.top_k);
    let mut stats = SearchStats::default();
    for w in Tuples::with_top(top, config.len()) {
        stats.enumerated += 1;
        if shard_of(&w, config.shard_count) != config.shard_index {
            continue;
        }
        stats.in_shard += 1;
        let Some(d) = candidate_degree(&w, config.canonical_degree_target) else {
            continue;
        };
        let s = score(config.objective, &w, d);
        if !best.admits(&s) {
            stats.pruned_by_objective += 1;
            continue;
        }
        if !space_well_formed(&w) {
            stats.ambient_not_well_formed += 1;
            continue;
        }
        if !well_formed_pairs(&w, &d) {
            stats.hypersurface_not_well_formed += 1;
            continue;
        }
        match general_criterion(&w, &d, config.membership_guard, false).verdict {
            Verdict::QuasiSmooth => {
                stats.accepted += 1;
                best.insert(s, w);
            }
            Verdict::NotQuasiSmooth => stats.not_quasi_smooth += 1,
            Verdict::Undecided => stats.undecided += 1,
        }
    }
    (best, stats)
}

fn objective_value(objective: Objective, h: &Hypersurface) -> ObjectiveValue {
    match objective {
        Objective::MinVolume => ObjectiveValue::Volume(BigRational::new(h.degree().clone(), h.ambient().product())),
        Objective::MaxBottomWeight => ObjectiveValue::BottomWeight(h.ambient().bottom_weight().clone()),
    }
}

/// Turns ranked tuple groups into hits, with full certificates.
fn materialize(config: &SearchConfig, best: TopK) -> Vec<SearchHit> {
    let mut hits = Vec::new();
    for (rank, (_, mut tuples)) in best.groups.into_iter().enumerate() {
        tuples.sort();
        for w in tuples {
            let d = candidate_degree(&w, config.canonical_degree_target).expect("accepted candidate");
            let h = Hypersurface::from_u64s(&w, d).expect("accepted candidate");
            let certificate = quasi_smooth_general(&h, config.membership_guard).expect("at most five weights");
            hits.push(SearchHit {
                objective: objective_value(config.objective, &h),
                hypersurface: h,
                rank,
                certificate,
            });
        }
    }
    hits
}

pub fn run_search(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    run_search_with(config, Execution::default())
}

pub fn run_search_with(config: &SearchConfig, exec: Execution) -> Result<SearchResult, SearchError> {
    config.validate()?;
    // largest tops first: they hold the most candidates
    let tops: Vec<u64> = (1..=config.max_weight).rev().collect();
    let (best, stats) = exec::map_reduce(
        exec,
        &tops,
        || (TopK::new(config.top_k), SearchStats::default()),
        |&top| search_top(config, top),
        |(a, sa), (b, sb)| (a.merge(b), sa.merge(sb)),
    );
    Ok(SearchResult {
        config: config.clone(),
        hits: materialize(config, best),
        stats,
    })
}

/// Combines shard results into the ranking a single unsharded run produces.
pub fn merge_results(config: &SearchConfig, parts: &[SearchResult]) -> Vec<SearchHit> {
    let mut best = TopK::new(config.top_k);
    for hit in parts.iter().flat_map(|p| &p.hits) {
        let w: Vec<u64> = hit
            .hypersurface
            .weights()
            .iter()
            .map(|v| u64::try_from(v).expect("search weights are small"))
            .collect();
        let d = u64::try_from(hit.hypersurface.degree()).expect("search degrees are small");
        best.insert(score(config.objective, &w, d), w);
    }
    materialize(config, best)
}

/// Reruns both well-formedness checks and the subset criterion on a hit.
pub fn revalidate(hit: &SearchHit, guard: MembershipGuard) -> bool {
    let h = &hit.hypersurface;
    wps_well_formed(h.ambient())
        && hypersurface_well_formed(h).unwrap_or(false)
        && quasi_smooth_general(h, guard).is_ok_and(|c| c.verdict == hit.certificate.verdict && c.is_quasi_smooth())
}

/// Descending weights as a [`WeightSystem`], for callers that only hold a tuple.
pub fn weight_system(weights: &[u64]) -> WeightSystem {
    let mut w = weights.to_vec();
    w.sort_unstable_by(|a, b| b.cmp(a));
    WeightSystem::from_u64s(&w).expect("positive weights")
}
