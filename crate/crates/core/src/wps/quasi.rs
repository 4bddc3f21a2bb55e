//! Quasi-smoothness of a general hypersurface: the full subset criterion and
//! the sufficient cycle-of-congruences criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::semigroup::{Membership, MembershipGuard, Semigroup};
use super::weights::Hypersurface;
use super::{to_small, Weight, WpsError};
use crate::serde_big;

/// Subset enumeration bound for the general criterion.
pub const MAX_GENERAL_WEIGHTS: usize = 24;

/// Above this many weights only failing or infeasible subsets are recorded.
const FULL_RECORD_WEIGHTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    QuasiSmooth,
    NotQuasiSmooth,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    General,
    Cycle,
}

/// How one subset `I` of weight indices was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Branch {
    /// `d` is a nonnegative combination of the weights in `I`.
    DegreeRepresentable,
    /// At least `|I|` indices `j` outside `I` with `d - a_j` representable over `I`.
    ShiftedDegrees { indices: Vec<usize> },
    /// Neither branch holds; `witnesses_found` lists the (too few) `j` that work.
    Failed { witnesses_found: Vec<usize> },
    /// A needed membership query was beyond the guard.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetWitness {
    pub subset: Vec<usize>,
    pub branch: Branch,
}

/// `a_index | d` with the quotient when it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisibilityWitness {
    pub index: usize,
    #[serde(with = "serde_big::opt_int")]
    pub quotient: Option<BigInt>,
}

/// `d - a_index = quotient * a_modulus_index` when it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceWitness {
    pub index: usize,
    pub modulus_index: usize,
    #[serde(with = "serde_big::opt_int")]
    pub quotient: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleEvidence {
    pub r: usize,
    pub degree_bound_holds: bool,
    pub divisibility: Vec<DivisibilityWitness>,
    pub congruences: Vec<CongruenceWitness>,
}

impl CycleEvidence {
    pub fn quotients(&self) -> Vec<Option<BigInt>> {
        self.congruences.iter().map(|c| c.quotient.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Evidence {
    General {
        /// Index `i` with `a_i = d`, which settles quasi-smoothness outright.
        degree_equals_weight: Option<usize>,
        subsets_checked: u64,
        subsets: Vec<SubsetWitness>,
    },
    Cycle(CycleEvidence),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiSmoothCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub evidence: Evidence,
}

impl QuasiSmoothCertificate {
    pub fn is_quasi_smooth(&self) -> bool {
        self.verdict == Verdict::QuasiSmooth
    }

    /// The subset that decided a negative or undecided general verdict.
    pub fn failing_subset(&self) -> Option<&SubsetWitness> {
        match &self.evidence {
            Evidence::General { subsets, .. } if self.verdict != Verdict::QuasiSmooth => subsets
                .iter()
                .find(|s| matches!(s.branch, Branch::Failed { .. }))
                .or_else(|| subsets.iter().find(|s| s.branch == Branch::Infeasible)),
            _ => None,
        }
    }
}

/// Next integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// The general criterion on any [`Weight`] type. Subsets are visited by
/// increasing size; the first definite failure ends the search. When
/// `record` is false only the deciding subset is kept.
pub fn general_criterion<T: Weight>(
    weights: &[T],
    degree: &T,
    guard: MembershipGuard,
    record: bool,
) -> QuasiSmoothCertificate {
    let n = weights.len();
    assert!(n <= MAX_GENERAL_WEIGHTS, "caller checks the subset bound");
    let record_all = record && n <= FULL_RECORD_WEIGHTS;

    if let Some(i) = weights.iter().position(|a| a == degree) {
        return QuasiSmoothCertificate {
            verdict: Verdict::QuasiSmooth,
            method: Method::General,
            evidence: Evidence::General {
                degree_equals_weight: Some(i),
                subsets_checked: 0,
                subsets: Vec::new(),
            },
        };
    }

    let mut subsets = Vec::new();
    let mut checked = 0u64;
    let mut saw_infeasible = false;
    let mut gens: Vec<T> = Vec::with_capacity(n);
    let mut found: Vec<usize> = Vec::with_capacity(n);

    for k in 1..=n {
        let mut mask: u32 = (1u32 << k) - 1;
        while mask < (1u32 << n) {
            checked += 1;
            gens.clear();
            gens.extend((0..n).filter(|i| mask & (1 << i) != 0).map(|i| weights[i].clone()));
            let members = || (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>();
            let semigroup = Semigroup::new(&gens, guard).expect("weights are positive");

            let mut infeasible = false;
            let branch = match semigroup.contains(degree) {
                Membership::Yes => Branch::DegreeRepresentable,
                m => {
                    infeasible |= m == Membership::Infeasible;
                    found.clear();
                    for j in (0..n).filter(|j| mask & (1 << j) == 0) {
                        if weights[j] > *degree {
                            continue;
                        }
                        let target = degree.clone() - weights[j].clone();
                        match semigroup.contains(&target) {
                            Membership::Yes => {
                                found.push(j);
                                if found.len() >= k {
                                    break;
                                }
                            }
                            Membership::No => {}
                            Membership::Infeasible => infeasible = true,
                        }
                    }
                    if found.len() >= k {
                        Branch::ShiftedDegrees {
                            indices: found.clone(),
                        }
                    } else if infeasible {
                        Branch::Infeasible
                    } else {
                        Branch::Failed {
                            witnesses_found: found.clone(),
                        }
                    }
                }
            };

            match branch {
                Branch::Failed { .. } => {
                    subsets.push(SubsetWitness {
                        subset: members(),
                        branch,
                    });
                    return QuasiSmoothCertificate {
                        verdict: Verdict::NotQuasiSmooth,
                        method: Method::General,
                        evidence: Evidence::General {
                            degree_equals_weight: None,
                            subsets_checked: checked,
                            subsets,
                        },
                    };
                }
                Branch::Infeasible => {
                    // keep looking for a definite failure elsewhere
                    if record || !saw_infeasible {
                        subsets.push(SubsetWitness {
                            subset: members(),
                            branch,
                        });
                    }
                    saw_infeasible = true;
                }
                _ if record_all => subsets.push(SubsetWitness {
                    subset: members(),
                    branch,
                }),
                _ => {}
            }

            if k == n {
                break;
            }
            mask = next_same_popcount(mask);
        }
    }

    QuasiSmoothCertificate {
        verdict: if saw_infeasible {
            Verdict::Undecided
        } else {
            Verdict::QuasiSmooth
        },
        method: Method::General,
        evidence: Evidence::General {
            degree_equals_weight: None,
            subsets_checked: checked,
            subsets,
        },
    }
}

/// Full criterion with per-subset witnesses. Runs on `u64` when every input
/// is small.
pub fn quasi_smooth_general(
    h: &Hypersurface,
    guard: MembershipGuard,
) -> Result<QuasiSmoothCertificate, WpsError> {
    let n = h.weights().len();
    if n > MAX_GENERAL_WEIGHTS {
        return Err(WpsError::TooManyWeights {
            got: n,
            max: MAX_GENERAL_WEIGHTS,
        });
    }
    if let (Some(w), Some(d)) = (to_small(h.weights()), to_small(std::slice::from_ref(h.degree()))) {
        return Ok(general_criterion(&w, &d[0], guard, true));
    }
    Ok(general_criterion(h.weights(), h.degree(), guard, true))
}

/// The cycle criterion with cycle length `r`, reading the first `r` weights
/// in the stored order. Only sufficient: failure gives `Undecided`.
pub fn quasi_smooth_cycle(h: &Hypersurface, r: usize) -> Result<QuasiSmoothCertificate, WpsError> {
    let w = h.weights();
    let d = h.degree();
    if r == 0 || r > w.len() {
        return Err(WpsError::CycleLengthOutOfRange { r, len: w.len() });
    }
    let degree_bound_holds = w.iter().all(|a| d >= a);
    let divisibility: Vec<DivisibilityWitness> = (r..w.len())
        .map(|index| {
            let (q, rem) = d.div_rem(&w[index]);
            DivisibilityWitness {
                index,
                quotient: rem.is_zero().then_some(q),
            }
        })
        .collect();
    // d - a_{r-1} mod a_{r-2}, ..., d - a_1 mod a_0, then d - a_0 mod a_{r-1}
    let mut pairs: Vec<(usize, usize)> = (1..r).rev().map(|k| (k, k - 1)).collect();
    pairs.push((0, r - 1));
    let congruences: Vec<CongruenceWitness> = pairs
        .into_iter()
        .map(|(index, modulus_index)| {
            let diff = d - &w[index];
            let (q, rem) = diff.div_rem(&w[modulus_index]);
            CongruenceWitness {
                index,
                modulus_index,
                quotient: (rem.is_zero() && diff >= BigInt::zero()).then_some(q),
            }
        })
        .collect();
    let holds = degree_bound_holds
        && divisibility.iter().all(|x| x.quotient.is_some())
        && congruences.iter().all(|x| x.quotient.is_some());
    Ok(QuasiSmoothCertificate {
        verdict: if holds {
            Verdict::QuasiSmooth
        } else {
            Verdict::Undecided
        },
        method: Method::Cycle,
        evidence: Evidence::Cycle(CycleEvidence {
            r,
            degree_bound_holds,
            divisibility,
            congruences,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(w: &[u64], d: u64) -> Hypersurface {
        Hypersurface::from_u64s(w, d).unwrap()
    }

    fn general(w: &[u64], d: u64) -> QuasiSmoothCertificate {
        quasi_smooth_general(&hs(w, d), MembershipGuard::default()).unwrap()
    }

    #[test]
    fn gosper_walks_fixed_popcount() {
        let mut x = 0b0111u32;
        let mut seen = vec![x];
        while x < 0b11100 {
            x = next_same_popcount(x);
            seen.push(x);
        }
        assert!(seen.iter().all(|m| m.count_ones() == 3));
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn general_examples() {
        let c = general(&[158, 85, 61, 11], 316);
        assert_eq!(c.verdict, Verdict::QuasiSmooth);
        if let Evidence::General { subsets, subsets_checked, .. } = &c.evidence {
            assert_eq!(*subsets_checked, 15);
            assert_eq!(subsets.len(), 15);
        } else {
            panic!("wrong evidence");
        }
        assert_eq!(general(&[1, 1, 1, 1], 4).verdict, Verdict::QuasiSmooth);

        let c = general(&[1, 1, 3], 5);
        assert_eq!(c.verdict, Verdict::NotQuasiSmooth);
        let fail = c.failing_subset().unwrap();
        assert_eq!(fail.subset, vec![2]);
        assert_eq!(
            fail.branch,
            Branch::Failed {
                witnesses_found: vec![]
            }
        );
    }

    #[test]
    fn degree_equal_to_a_weight_short_circuits() {
        let c = general(&[7, 2, 2], 7);
        assert_eq!(c.verdict, Verdict::QuasiSmooth);
        assert!(matches!(
            c.evidence,
            Evidence::General {
                degree_equals_weight: Some(0),
                ..
            }
        ));
    }

    #[test]
    fn general_type_threefold_is_general_quasi_smooth() {
        let c = general(&[170034, 113356, 47269, 9185, 223], 340068);
        assert_eq!(c.verdict, Verdict::QuasiSmooth);
    }

    #[test]
    fn too_many_weights() {
        let h = hs(&[1; 25], 25);
        assert!(matches!(
            quasi_smooth_general(&h, MembershipGuard::default()),
            Err(WpsError::TooManyWeights { got: 25, .. })
        ));
    }

    #[test]
    fn undecided_when_guard_is_tiny() {
        // three-generator subsets need a residue graph mod at least 11
        let c = quasi_smooth_general(
            &hs(&[158, 85, 61, 11], 316),
            MembershipGuard::new(2).unwrap(),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Undecided);
        assert_eq!(c.failing_subset().unwrap().branch, Branch::Infeasible);
    }

    #[test]
    fn cycle_examples() {
        let c = quasi_smooth_cycle(&hs(&[85, 61, 11, 158], 316), 3).unwrap();
        assert_eq!(c.verdict, Verdict::QuasiSmooth);
        let Evidence::Cycle(ev) = &c.evidence else { panic!() };
        assert_eq!(ev.quotients(), vec![Some(5.into()), Some(3.into()), Some(21.into())]);
        assert_eq!(ev.divisibility[0].quotient, Some(2.into()));

        let c = quasi_smooth_cycle(&hs(&[1, 2, 3], 6), 1).unwrap();
        assert_eq!(c.verdict, Verdict::QuasiSmooth);

        let h = hs(&[2, 5], 7);
        assert_eq!(quasi_smooth_cycle(&h, 2).unwrap().verdict, Verdict::QuasiSmooth);
        assert_eq!(general(&[2, 5], 7).verdict, Verdict::QuasiSmooth);
    }

    #[test]
    fn cycle_never_says_no() {
        let c = quasi_smooth_cycle(&hs(&[1, 1, 3], 5), 3).unwrap();
        assert_eq!(c.verdict, Verdict::Undecided);
        assert!(matches!(
            quasi_smooth_cycle(&hs(&[1, 1, 3], 5), 4),
            Err(WpsError::CycleLengthOutOfRange { r: 4, len: 3 })
        ));
        assert!(quasi_smooth_cycle(&hs(&[1, 1, 3], 5), 0).is_err());
    }
}
