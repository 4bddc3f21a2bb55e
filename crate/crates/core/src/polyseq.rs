//! Sylvester's sequence and the recurrence-defined polynomial families
//! `f`, `e`, `b`, `z`, `d` and `dtilde` in `Z[y]`.
//!
//! Every value is computed once and memoized in a process-wide cache. The
//! cache only ever grows and a given key always maps to the same value, so
//! concurrent readers are safe.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::poly::IntPoly;

/// c_i of Sylvester's sequence: c_0 = 2, c_{i+1} = c_i (c_i - 1) + 1.
pub fn sylvester(i: usize) -> BigInt {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let mut terms = CACHE
        .get_or_init(|| Mutex::new(vec![BigInt::from(2)]))
        .lock()
        .expect("sylvester cache poisoned");
    while terms.len() <= i {
        let c = terms.last().unwrap();
        let next = c * (c - 1u32) + 1u32;
        terms.push(next);
    }
    terms[i].clone()
}

/// c_0 c_1 ... c_{k-1}; equals c_k - 1.
pub fn sylvester_product(k: usize) -> BigInt {
    (0..k).map(sylvester).product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolySequenceKind {
    F,
    E,
    B,
    Z,
    D,
    Dtilde,
}

impl PolySequenceKind {
    pub const ALL: [PolySequenceKind; 6] = [
        PolySequenceKind::F,
        PolySequenceKind::E,
        PolySequenceKind::B,
        PolySequenceKind::Z,
        PolySequenceKind::D,
        PolySequenceKind::Dtilde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolySequenceKind::F => "f",
            PolySequenceKind::E => "e",
            PolySequenceKind::B => "b",
            PolySequenceKind::Z => "z",
            PolySequenceKind::D => "d",
            PolySequenceKind::Dtilde => "dtilde",
        }
    }
}

impl fmt::Display for PolySequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown polynomial sequence `{0}` (expected one of f, e, b, z, d, dtilde)")]
pub struct UnknownKind(pub String);

impl FromStr for PolySequenceKind {
    type Err = UnknownKind;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

#[derive(Default)]
struct Tables {
    f: Vec<Arc<IntPoly>>,
    // prefix[i] = f_0 ... f_{i-1}
    prefix: Vec<Arc<IntPoly>>,
    e: Vec<Arc<IntPoly>>,
    b: Vec<Arc<IntPoly>>,
    z: Vec<Arc<IntPoly>>,
    d: Vec<Arc<IntPoly>>,
    dtilde: Vec<Arc<IntPoly>>,
}

impl Tables {
    fn extend_to(&mut self, i: usize) {
        let y = IntPoly::var();
        let one = IntPoly::constant(1);
        let two = IntPoly::constant(2);
        while self.f.len() <= i {
            let k = self.f.len();
            let f = match k {
                0 => IntPoly::from_i64s(&[1, 1]),
                1 => IntPoly::from_i64s(&[1, 0, 1]),
                _ => {
                    let (f1, f2) = (&self.f[k - 1], &self.f[k - 2]);
                    &**f1 * &**f2 + (&**f1 - &one) * (&**f1 - &two)
                }
            };
            let prefix = match k {
                0 => IntPoly::constant(1),
                _ => &*self.prefix[k - 1] * &*self.f[k - 1],
            };
            let e = &y * &prefix;
            let b = match k {
                0 => IntPoly::constant(1),
                _ => &IntPoly::constant(sign(k)) + &(&*self.f[k - 1] * &*self.b[k - 1]),
            };
            let z = match k {
                0 => IntPoly::from_i64s(&[-1, 1]),
                1 => IntPoly::from_i64s(&[1, -1, 1]),
                _ => &*self.e[k - 1] * &*self.z[k - 1] + &*self.z[k - 2],
            };
            let b_fm1 = &b * &(&f - &one);
            let d = &e + &b_fm1;
            let dtilde = &b_fm1 - &e;
            self.f.push(Arc::new(f));
            self.prefix.push(Arc::new(prefix));
            self.e.push(Arc::new(e));
            self.b.push(Arc::new(b));
            self.z.push(Arc::new(z));
            self.d.push(Arc::new(d));
            self.dtilde.push(Arc::new(dtilde));
        }
    }
}

fn tables() -> &'static Mutex<Tables> {
    static TABLES: OnceLock<Mutex<Tables>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(Tables::default()))
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The `i`-th polynomial of the requested family.
pub fn poly_sequence(kind: PolySequenceKind, i: usize) -> Arc<IntPoly> {
    let mut t = tables().lock().expect("sequence cache poisoned");
    t.extend_to(i);
    let v = match kind {
        PolySequenceKind::F => &t.f,
        PolySequenceKind::E => &t.e,
        PolySequenceKind::B => &t.b,
        PolySequenceKind::Z => &t.z,
        PolySequenceKind::D => &t.d,
        PolySequenceKind::Dtilde => &t.dtilde,
    };
    Arc::clone(&v[i])
}

/// f_0 f_1 ... f_{i-1} (1 for i = 0).
pub fn f_prefix_product(i: usize) -> Arc<IntPoly> {
    let mut t = tables().lock().expect("sequence cache poisoned");
    t.extend_to(i);
    Arc::clone(&t.prefix[i])
}

/// Shorthand for evaluating a sequence member at an integer.
pub fn eval_sequence(kind: PolySequenceKind, i: usize, y: &BigInt) -> BigInt {
    poly_sequence(kind, i).eval(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// f_i = 1 + y (f_0..f_{i-1} - f_0..f_{i-2} + ... + (-1)^i)
    FAlternatingSum,
    /// e_i = f_i + f_{i-1} - 2
    EFromF,
    /// e_i = f_{i-1} e_{i-1}
    ERecurrence,
    /// b_i = f_0..f_{i-1} - f_1..f_{i-1} + ... + (-1)^i
    BAlternatingSum,
    /// f_0..f_{i-1} z_i = (-1)^{i+1} + b_i (f_i - 1)
    ZRelation,
    /// d_i = (-1)^i + f_0..f_{i-1} (z_i + y)
    DClosedForm,
    /// dtilde_i = (-1)^i + f_0..f_{i-1} (z_i - y)
    DtildeClosedForm,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::FAlternatingSum,
        Identity::EFromF,
        Identity::ERecurrence,
        Identity::BAlternatingSum,
        Identity::ZRelation,
        Identity::DClosedForm,
        Identity::DtildeClosedForm,
    ];

    pub fn min_index(self) -> usize {
        match self {
            Identity::EFromF | Identity::ERecurrence => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Identity::FAlternatingSum => "f_alternating_sum",
            Identity::EFromF => "e_from_f",
            Identity::ERecurrence => "e_recurrence",
            Identity::BAlternatingSum => "b_alternating_sum",
            Identity::ZRelation => "z_relation",
            Identity::DClosedForm => "d_closed_form",
            Identity::DtildeClosedForm => "dtilde_closed_form",
        }
    }

    /// Expands both sides and returns `(lhs, rhs)`.
    pub fn sides(self, i: usize) -> (IntPoly, IntPoly) {
        use PolySequenceKind::*;
        assert!(i >= self.min_index(), "{} needs i >= {}", self.name(), self.min_index());
        let y = IntPoly::var();
        let one = IntPoly::constant(1);
        let f = |k: usize| poly_sequence(F, k);
        match self {
            Identity::FAlternatingSum => {
                let mut sum = IntPoly::zero();
                for k in 0..=i {
                    let term = f_prefix_product(k);
                    sum = if (i - k).is_multiple_of(2) { &sum + &*term } else { &sum - &*term };
                }
                ((*f(i)).clone(), &one + &(&y * &sum))
            }
            Identity::EFromF => {
                let rhs = &(&*f(i) + &*f(i - 1)) - &IntPoly::constant(2);
                ((*poly_sequence(E, i)).clone(), rhs)
            }
            Identity::ERecurrence => {
                let rhs = &*f(i - 1) * &*poly_sequence(E, i - 1);
                ((*poly_sequence(E, i)).clone(), rhs)
            }
            Identity::BAlternatingSum => {
                // suffix products f_k .. f_{i-1}, built from the top down
                let mut suffix = IntPoly::constant(1);
                let mut sum = IntPoly::constant(sign(i));
                for k in (0..i).rev() {
                    suffix = &*f(k) * &suffix;
                    sum = if k % 2 == 0 { &sum + &suffix } else { &sum - &suffix };
                }
                ((*poly_sequence(B, i)).clone(), sum)
            }
            Identity::ZRelation => {
                let lhs = &*f_prefix_product(i) * &*poly_sequence(Z, i);
                let rhs = &IntPoly::constant(-sign(i))
                    + &(&*poly_sequence(B, i) * &(&*f(i) - &one));
                (lhs, rhs)
            }
            Identity::DClosedForm | Identity::DtildeClosedForm => {
                let (kind, shift) = if self == Identity::DClosedForm {
                    (D, y.clone())
                } else {
                    (Dtilde, -&y)
                };
                let rhs = &IntPoly::constant(sign(i))
                    + &(&*f_prefix_product(i) * &(&*poly_sequence(Z, i) + &shift));
                ((*poly_sequence(kind, i)).clone(), rhs)
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub identity: Identity,
    pub index: usize,
    pub holds: bool,
}

/// Checks every identity at every admissible index `<= i_max` by full
/// coefficient-wise expansion.
pub fn verify_identities(i_max: usize) -> Vec<IdentityRecord> {
    verify_identities_with(i_max, Execution::default())
}

pub fn verify_identities_with(i_max: usize, exec: Execution) -> Vec<IdentityRecord> {
    // warm the cache once so workers only read
    poly_sequence(PolySequenceKind::F, i_max);
    let jobs: Vec<(Identity, usize)> = Identity::ALL
        .into_iter()
        .flat_map(|id| (id.min_index()..=i_max).map(move |i| (id, i)))
        .collect();
    exec::map(exec, &jobs, |&(identity, index)| {
        let (lhs, rhs) = identity.sides(index);
        IdentityRecord {
            identity,
            index,
            holds: lhs == rhs,
        }
    })
}

/// Whether `p` is congruent to the constant `c` modulo the monic `modulus`.
pub fn congruent_to_constant(p: &IntPoly, modulus: &IntPoly, c: i64) -> bool {
    match p.div_rem_monic(modulus) {
        Some((_, r)) => r == IntPoly::constant(c) || (c == 0 && r.is_zero()),
        None => false,
    }
}
