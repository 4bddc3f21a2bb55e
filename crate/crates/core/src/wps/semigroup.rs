//! Membership in numerical semigroups `N a_1 + ... + N a_k`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Weight, WpsError};

/// Bounds the residue-graph computation: a semigroup whose smallest
/// (gcd-reduced) generator exceeds `max_min_generator` is not materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipGuard {
    pub max_min_generator: u64,
}

impl MembershipGuard {
    pub const DEFAULT_THRESHOLD: u64 = 10_000_000;

    pub fn new(max_min_generator: u64) -> Option<Self> {
        (max_min_generator >= 1).then_some(Self { max_min_generator })
    }
}

impl Default for MembershipGuard {
    fn default() -> Self {
        Self {
            max_min_generator: Self::DEFAULT_THRESHOLD,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    Infeasible,
}

impl Membership {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }
}

#[derive(Clone, Debug)]
enum Shape<T> {
    /// Some reduced generator is 1.
    Everything,
    /// Two coprime generators `p < q`; `q_inv` is `q^{-1} mod p`.
    TwoCoprime { p: T, q: T, q_inv: T },
    /// `apery[r]` is the least element congruent to `r` mod `modulus`.
    Apery { modulus: T, apery: Vec<T> },
    Infeasible,
}

/// A semigroup prepared for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Semigroup<T> {
    gcd: T,
    shape: Shape<T>,
}

impl<T: Weight> Semigroup<T> {
    pub fn new(generators: &[T], guard: MembershipGuard) -> Result<Self, WpsError> {
        if generators.is_empty() {
            return Err(WpsError::EmptyGenerators);
        }
        if generators.iter().any(|g| *g <= T::zero()) {
            return Err(WpsError::NonPositiveGenerator);
        }
        let gcd = generators.iter().fold(T::zero(), |acc, g| acc.gcd(g));
        let mut reduced: Vec<T> = generators.iter().map(|g| g.clone() / gcd.clone()).collect();
        reduced.sort();
        reduced.dedup();

        let shape = if reduced[0].is_one() {
            Shape::Everything
        } else if reduced.len() == 2 {
            let (p, q) = (reduced[0].clone(), reduced[1].clone());
            let q_inv = T::mod_inverse(&q, &p).expect("reduced generators are coprime");
            Shape::TwoCoprime { p, q, q_inv }
        } else {
            match reduced[0].to_u64() {
                Some(m) if m <= guard.max_min_generator => Shape::Apery {
                    modulus: reduced[0].clone(),
                    apery: apery_set(&reduced, m as usize),
                },
                _ => Shape::Infeasible,
            }
        };
        Ok(Self { gcd, shape })
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self.shape, Shape::Infeasible)
    }

    pub fn contains(&self, target: &T) -> Membership {
        if *target < T::zero() {
            return Membership::No;
        }
        if target.is_zero() {
            return Membership::Yes;
        }
        let (t, rem) = target.div_rem(&self.gcd);
        if !rem.is_zero() {
            return Membership::No;
        }
        match &self.shape {
            Shape::Everything => Membership::Yes,
            Shape::TwoCoprime { p, q, q_inv } => {
                // t = u p + v q with v = t q^{-1} mod p minimal
                let v = (t.mod_floor(p) * q_inv.clone()).mod_floor(p);
                Membership::from_bool(t >= v * q.clone())
            }
            Shape::Apery { modulus, apery } => {
                let r = t
                    .mod_floor(modulus)
                    .to_usize()
                    .expect("residue below the guarded modulus");
                Membership::from_bool(t >= apery[r])
            }
            Shape::Infeasible => Membership::Infeasible,
        }
    }
}

/// Shortest paths over residues mod `gens[0]`; `gens` is sorted ascending
/// with gcd 1.
fn apery_set<T: Weight>(gens: &[T], m: usize) -> Vec<T> {
    let modulus = gens[0].clone();
    let steps: Vec<(usize, &T)> = gens[1..]
        .iter()
        .map(|g| (g.mod_floor(&modulus).to_usize().unwrap(), g))
        .collect();
    let mut dist: Vec<Option<T>> = vec![None; m];
    dist[0] = Some(T::zero());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((T::zero(), 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r].as_ref().is_some_and(|best| *best < d) {
            continue;
        }
        for &(step, g) in &steps {
            let next = (r + step) % m;
            let cand = d.clone() + g.clone();
            if dist[next].as_ref().is_none_or(|best| cand < *best) {
                dist[next] = Some(cand.clone());
                heap.push(Reverse((cand, next)));
            }
        }
    }
    dist.into_iter()
        .map(|d| d.expect("gcd 1 makes every residue reachable"))
        .collect()
}

/// One-shot membership test: is `target` a nonnegative integer combination
/// of `generators`?
pub fn semigroup_contains(
    generators: &[BigInt],
    target: &BigInt,
    guard: MembershipGuard,
) -> Result<Membership, WpsError> {
    if let (Some(g), Some(t)) = (super::to_small(generators), super::to_small(std::slice::from_ref(target))) {
        return Ok(Semigroup::new(&g, guard)?.contains(&t[0]));
    }
    Ok(Semigroup::new(generators, guard)?.contains(target))
}
