//! The three extremal families: general-type hypersurfaces with
//! `K_X = O_X(1)` (a direct r = 3 form and the general odd-r form) and Fano
//! hypersurfaces with `K_X = O_X(-1)`, with full certificates.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exec::{self, Execution};
use crate::polyseq::{eval_sequence, poly_sequence, sylvester, sylvester_product, PolySequenceKind};
use crate::precision::{self, FixedDecimal};
use crate::serde_big;
use crate::wps::{
    hypersurface_well_formed, quasi_smooth_cycle, quasi_smooth_general, section_count,
    volume_of_twist, wps_well_formed, Hypersurface, MembershipGuard, QuasiSmoothCertificate,
    Verdict, VolumeTarget, WeightSystem, WpsError, MAX_GENERAL_WEIGHTS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    GeneralTypeR3,
    GeneralType,
    Fano,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::GeneralTypeR3, FamilyKind::GeneralType, FamilyKind::Fano];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyKind::GeneralTypeR3 => "general_type_r3",
            FamilyKind::GeneralType => "general_type",
            FamilyKind::Fano => "fano",
        }
    }

    /// `+1` for general type, `-1` for Fano: the canonical degree, and the
    /// sign in `x = sign + sum(head)`.
    pub fn sign(self) -> i32 {
        match self {
            FamilyKind::Fano => -1,
            _ => 1,
        }
    }

    pub fn is_general_type(self) -> bool {
        self != FamilyKind::Fano
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family {0:?}; expected general, general_r3 or fano")]
pub struct UnknownFamily(pub String);

impl FromStr for FamilyKind {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "general_type_r3" | "general_r3" | "r3" => Ok(FamilyKind::GeneralTypeR3),
            "general_type" | "general" => Ok(FamilyKind::GeneralType),
            "fano" => Ok(FamilyKind::Fano),
            _ => Err(UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("cycle length r = {0} must be odd")]
    EvenCycleLength(usize),
    #[error("cycle length r = {0} must be at least 3")]
    CycleLengthTooSmall(usize),
    #[error("the r = 3 family takes r = 3, got {0}")]
    NotThree(usize),
    #[error("dimension n = {n} must be at least r - 1 = {}", r - 1)]
    DimensionTooSmall { r: usize, n: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Wps(#[from] WpsError),
}

fn check_parameters(kind: FamilyKind, r: usize, n: usize) -> Result<(), FamilyError> {
    if kind == FamilyKind::GeneralTypeR3 && r != 3 {
        return Err(FamilyError::NotThree(r));
    }
    if r < 3 {
        return Err(FamilyError::CycleLengthTooSmall(r));
    }
    if r.is_multiple_of(2) {
        return Err(FamilyError::EvenCycleLength(r));
    }
    if n + 1 < r {
        return Err(FamilyError::DimensionTooSmall { r, n });
    }
    Ok(())
}

/// A member of one of the families, in the head-then-tail weight order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MemberRepr", into = "MemberRepr")]
pub struct FamilyMember {
    pub kind: FamilyKind,
    pub r: usize,
    pub n: usize,
    pub y: BigInt,
    pub head_weights: Vec<BigInt>,
    pub x: BigInt,
    pub tail_weights: Vec<BigInt>,
    pub degree: BigInt,
    pub hypersurface: Hypersurface,
}

impl FamilyMember {
    pub fn weights(&self) -> &[BigInt] {
        self.hypersurface.weights()
    }

    pub fn weights_descending(&self) -> Vec<BigInt> {
        self.hypersurface.ambient().sorted_descending()
    }

    pub fn bottom_weight(&self) -> &BigInt {
        self.hypersurface.ambient().bottom_weight()
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.hypersurface.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberRepr {
    kind: FamilyKind,
    r: usize,
    n: usize,
    #[serde(with = "serde_big::int")]
    y: BigInt,
    #[serde(with = "serde_big::int_vec")]
    head_weights: Vec<BigInt>,
    #[serde(with = "serde_big::int")]
    x: BigInt,
    #[serde(with = "serde_big::int_vec")]
    tail_weights: Vec<BigInt>,
    #[serde(with = "serde_big::int")]
    degree: BigInt,
    #[serde(with = "serde_big::int_vec")]
    weights_descending: Vec<BigInt>,
}

impl From<FamilyMember> for MemberRepr {
    fn from(m: FamilyMember) -> Self {
        let weights_descending = m.weights_descending();
        Self {
            kind: m.kind,
            r: m.r,
            n: m.n,
            y: m.y,
            head_weights: m.head_weights,
            x: m.x,
            tail_weights: m.tail_weights,
            degree: m.degree,
            weights_descending,
        }
    }
}

impl TryFrom<MemberRepr> for FamilyMember {
    type Error = FamilyError;

    fn try_from(m: MemberRepr) -> Result<Self, FamilyError> {
        let all: Vec<BigInt> = m.head_weights.iter().chain(&m.tail_weights).cloned().collect();
        let hypersurface = Hypersurface::new(WeightSystem::new(all)?, m.degree.clone())?;
        if hypersurface.ambient().sorted_descending() != m.weights_descending {
            return Err(FamilyError::Invariant(
                "weights_descending does not match head and tail weights".into(),
            ));
        }
        Ok(Self {
            kind: m.kind,
            r: m.r,
            n: m.n,
            y: m.y,
            head_weights: m.head_weights,
            x: m.x,
            tail_weights: m.tail_weights,
            degree: m.degree,
            hypersurface,
        })
    }
}

/// Head weights `a_0..a_{r-1}` of the odd-r families at `y`, from the
/// closed forms in the sequences `b`, `z`, `f`, `d`, `dtilde`.
fn head_weights_closed_form(sign: i32, r: usize, y: &BigInt) -> (BigInt, Vec<BigInt>) {
    use PolySequenceKind::*;
    let top = if sign > 0 { D } else { Dtilde };
    let degree = eval_sequence(top, r - 1, y);
    let mut a = vec![BigInt::zero(); r];
    a[r - 1] = eval_sequence(B, r - 1, y);
    let shift = if sign > 0 { y.clone() } else { -y };
    a[0] = &degree - (eval_sequence(Z, r - 1, y) + shift) * &a[r - 1];
    for k in 1..r - 1 {
        a[k] = &degree - eval_sequence(F, k - 1, y) * &a[k - 1];
    }
    (degree, a)
}

/// The r = 3 weights by their direct cubic formulas.
fn head_weights_r3(y: &BigInt) -> Vec<BigInt> {
    let a2: BigInt = y * y * y + y + 1u32;
    let a1: BigInt = y * (y + 1u32) * (&a2 + 1u32) - &a2;
    let a0: BigInt = y * (&a2 + &a1 + 1u32) - &a1;
    vec![a0, a1, a2]
}

/// Head weights regenerated from the triangular equation system
/// `a_{r-1} = b_{r-1}`, `a_i = e_i (sign + a_{r-1} + ... + a_{i+1}) - a_{i+1}`.
pub fn head_weights_from_equations(sign: i32, r: usize, y: &BigInt) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); r];
    a[r - 1] = eval_sequence(PolySequenceKind::B, r - 1, y);
    let mut tail_sum = BigInt::from(sign) + &a[r - 1];
    for i in (0..r - 1).rev() {
        a[i] = eval_sequence(PolySequenceKind::E, i, y) * &tail_sum - &a[i + 1];
        tail_sum += &a[i];
    }
    a
}

/// `y / c_i * x` for `i = 0..=n-r+1`.
fn tail_weights(r: usize, n: usize, y: &BigInt, x: &BigInt) -> Vec<BigInt> {
    (0..n + 2 - r).map(|i| y / sylvester(i) * x).collect()
}

pub fn construct(kind: FamilyKind, r: usize, n: usize) -> Result<FamilyMember, FamilyError> {
    check_parameters(kind, r, n)?;
    let sign = kind.sign();
    let y = sylvester(n + 2 - r) - 1u32;
    let (degree, head) = match kind {
        FamilyKind::GeneralTypeR3 => {
            let head = head_weights_r3(&y);
            let degree = &y * (head.iter().sum::<BigInt>() + 1u32);
            (degree, head)
        }
        _ => head_weights_closed_form(sign, r, &y),
    };
    let x = BigInt::from(sign) + head.iter().sum::<BigInt>();
    let tail = tail_weights(r, n, &y, &x);

    let invariant = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(FamilyError::Invariant(format!("{what} for {kind} r = {r}, n = {n}")))
        }
    };
    invariant(degree == &y * &x, "degree != y x")?;
    invariant(head.iter().chain(&tail).all(|a| a.is_positive()), "non-positive weight")?;
    invariant(
        tail.iter().enumerate().all(|(i, t)| t * sylvester(i) == &y * &x),
        "tail weight mismatch",
    )?;

    let all: Vec<BigInt> = head.iter().chain(&tail).cloned().collect();
    let hypersurface = Hypersurface::new(WeightSystem::new(all)?, degree.clone())?;
    Ok(FamilyMember {
        kind,
        r,
        n,
        y,
        head_weights: head,
        x,
        tail_weights: tail,
        degree,
        hypersurface,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
}

impl NamedCheck {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyCertificate {
    pub member: FamilyMember,
    pub identity_checks: Vec<NamedCheck>,
    pub well_formedness: bool,
    pub quasi_smooth: QuasiSmoothCertificate,
    /// The subset criterion, run only when every weight is within the
    /// membership guard.
    pub general_cross_check: Option<QuasiSmoothCertificate>,
    #[serde(with = "serde_big::int")]
    pub canonical_degree: BigInt,
    #[serde(with = "serde_big::opt_rational")]
    pub volume: Option<BigRational>,
    #[serde(with = "serde_big::int")]
    pub bottom_weight: BigInt,
    pub bound_checks: Vec<NamedCheck>,
    pub valid: bool,
}

impl FamilyCertificate {
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.identity_checks
            .iter()
            .chain(&self.bound_checks)
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn compute_valid(&self) -> bool {
        let expected_kd = BigInt::from(self.member.kind.sign());
        self.identity_checks.iter().all(|c| c.holds)
            && self.bound_checks.iter().all(|c| c.holds)
            && self.well_formedness
            && self.quasi_smooth.is_quasi_smooth()
            && self
                .general_cross_check
                .as_ref()
                .is_none_or(|c| c.verdict != Verdict::NotQuasiSmooth)
            && self.canonical_degree == expected_kd
    }
}

/// Exact volume from the factored closed form
/// `1 / (y^(n-r) x^(n-r+1) a_0 ... a_{r-1})`; the `y` exponent is `-1` when `n = r - 1`.
pub fn volume_closed_form(m: &FamilyMember) -> BigRational {
    let head: BigInt = m.head_weights.iter().product();
    let xpow = num_traits::pow(m.x.clone(), m.n + 1 - m.r);
    let (num, den) = if m.n + 1 == m.r {
        (m.y.clone(), xpow * head)
    } else {
        (BigInt::one(), num_traits::pow(m.y.clone(), m.n - m.r) * xpow * head)
    };
    BigRational::new(num, den)
}

fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, a| g.gcd(a))
}

fn identity_checks(m: &FamilyMember) -> Vec<NamedCheck> {
    let sign = m.kind.sign();
    let r = m.r;
    let a = &m.head_weights;
    let y = &m.y;
    let mut checks = Vec::new();

    let eq = head_weights_from_equations(sign, r, y);
    checks.push(NamedCheck::new("equation_system", &eq == a));
    let f = eval_sequence(PolySequenceKind::F, r - 2, y);
    checks.push(NamedCheck::new("last_head_relation", a[r - 1] == &m.degree - f * &a[r - 2]));
    checks.push(NamedCheck::new("degree_is_y_times_x", m.degree == y * &m.x));
    checks.push(NamedCheck::new(
        "x_definition",
        m.x == BigInt::from(sign) + a.iter().sum::<BigInt>(),
    ));
    let top = if sign > 0 {
        PolySequenceKind::D
    } else {
        PolySequenceKind::Dtilde
    };
    checks.push(NamedCheck::new("degree_closed_form", m.degree == eval_sequence(top, r - 1, y)));
    checks.push(NamedCheck::new("y_is_sylvester_product", *y == sylvester_product(m.n + 2 - r)));
    if m.kind.is_general_type() && r == 3 {
        checks.push(NamedCheck::new("r3_agrees_with_general", head_weights_r3(y) == *a));
    }
    checks.push(NamedCheck::new("head_gcd", gcd_all(a).is_one()));
    let omit_each = (0..r).all(|skip| {
        gcd_all(a.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, w)| w)).is_one()
    });
    checks.push(NamedCheck::new("head_gcd_omitting_each", omit_each));
    checks
}

/// Recomputes every claim about `member` with exact arithmetic. Failures are
/// recorded, never raised.
pub fn verify_member(member: &FamilyMember, guard: MembershipGuard) -> FamilyCertificate {
    let h = &member.hypersurface;
    let identity_checks = identity_checks(member);
    let well_formedness = wps_well_formed(h.ambient()) && hypersurface_well_formed(h).unwrap_or(false);
    let quasi_smooth = quasi_smooth_cycle(h, member.r).expect("r is at most the number of weights");
    let small_enough = h.weights().len() <= MAX_GENERAL_WEIGHTS
        && h.weights().iter().all(|w| *w <= BigInt::from(guard.max_min_generator));
    let general_cross_check = small_enough
        .then(|| quasi_smooth_general(h, guard).ok())
        .flatten();
    let canonical_degree = h.canonical_degree();
    let bottom = h.ambient().bottom_weight().clone();
    let y = &member.y;
    let r = member.r;
    let n = member.n;
    let mut bound_checks = Vec::new();

    let volume = if member.kind.is_general_type() {
        let vol = volume_of_twist(VolumeTarget::Hypersurface(h), &BigInt::one());
        bound_checks.push(NamedCheck::new("volume_closed_form", vol == volume_closed_form(member)));
        let exp = ((1usize << r) - 1) * n - 1;
        let sharp = num_traits::pow(y.clone(), exp);
        bound_checks.push(NamedCheck::new(
            "volume_below_sylvester_bound",
            vol.clone() * BigRational::from_integer(sharp) < BigRational::one(),
        ));
        let crude = BigInt::one() << (1usize << n);
        bound_checks.push(NamedCheck::new(
            "volume_below_two_power_bound",
            vol.clone() * BigRational::from_integer(crude) < BigRational::one(),
        ));
        if (r == n + 1 && n.is_multiple_of(2)) || (r == n && n % 2 == 1) {
            let floor = if n.is_multiple_of(2) {
                BigInt::one() << ((1usize << n) - 1)
            } else {
                num_traits::pow(BigInt::from(6), (1usize << (n - 1)) - 1)
            };
            bound_checks.push(NamedCheck::new("bottom_weight_growth_floor", bottom >= floor));
        }
        Some(vol)
    } else {
        let floor = num_traits::pow(y.clone(), (1usize << (r - 1)) - 1);
        bound_checks.push(NamedCheck::new(
            "bottom_weight_power_bound",
            eval_sequence(PolySequenceKind::B, r - 1, y) >= floor,
        ));
        None
    };

    let b = eval_sequence(PolySequenceKind::B, r - 1, y);
    bound_checks.push(NamedCheck::new("bottom_weight_is_last_head", bottom == b));
    let probes = [BigInt::one(), BigInt::from(2), &bottom - 1u32];
    let vanishing = probes
        .iter()
        .filter(|m| m.is_positive() && **m < bottom)
        .all(|m| section_count(h, m).is_ok_and(|c| c.is_zero()));
    bound_checks.push(NamedCheck::new("sections_vanish_below_bottom_weight", vanishing));

    let mut cert = FamilyCertificate {
        member: member.clone(),
        identity_checks,
        well_formedness,
        quasi_smooth,
        general_cross_check,
        canonical_degree,
        volume,
        bottom_weight: bottom,
        bound_checks,
        valid: false,
    };
    cert.valid = cert.compute_valid();
    cert
}

/// Constructs and verifies every `(r, n)` in `pairs`.
pub fn verify_sweep(
    kind: FamilyKind,
    pairs: &[(usize, usize)],
    guard: MembershipGuard,
    exec: Execution,
) -> Vec<Result<FamilyCertificate, FamilyError>> {
    if let Some(max_r) = pairs.iter().map(|p| p.0).max() {
        // warm the shared sequence cache before fanning out
        poly_sequence(PolySequenceKind::F, max_r);
    }
    exec::map(exec, pairs, |&(r, n)| {
        construct(kind, r, n).map(|m| verify_member(&m, guard))
    })
}

/// Every admissible `(r, n)` with `r <= max_r` and `n <= max_n`.
pub fn admissible_pairs(max_r: usize, max_n: usize) -> Vec<(usize, usize)> {
    (3..=max_r)
        .step_by(2)
        .flat_map(|r| (r - 1..=max_n).map(move |n| (r, n)))
        .collect()
}

/// Volume `1 / (c_{n+2} - 1)^n` of the conjecturally smallest klt pair.
pub fn kollar_pair_volume(n: usize) -> Result<BigRational, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroDimension);
    }
    let base = sylvester(n + 2) - 1u32;
    Ok(BigRational::new(BigInt::one(), num_traits::pow(base, n)))
}

/// Significant decimal digits carried by [`log_volume_ratio`].
pub const RATIO_DIGITS: u32 = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogVolumeRatio {
    pub r: usize,
    pub n: usize,
    pub value: FixedDecimal,
}

fn ln_of(v: &BigInt) -> BigInt {
    let u: BigUint = v.magnitude().clone();
    precision::ln_fixed(&u, precision::WORKING_BITS)
}

/// `log vol(K_X) / log vol(K_Y + Delta)` for the general-type member, from
/// logs of the individual weights so the tiny volumes are never formed.
pub fn log_volume_ratio(r: usize, n: usize) -> Result<LogVolumeRatio, FamilyError> {
    let m = construct(FamilyKind::GeneralType, r, n)?;
    // ln vol(K_X) = ln d - sum ln a_i, negated so both sides are positive
    let neg_ln_vol: BigInt = m.weights().iter().map(ln_of).sum::<BigInt>() - ln_of(&m.degree);
    let neg_ln_pair = ln_of(&(sylvester(n + 2) - 1u32)) * BigInt::from(n);
    let value = precision::ratio_of_logs(&neg_ln_vol, &neg_ln_pair, precision::WORKING_BITS, RATIO_DIGITS);
    Ok(LogVolumeRatio { r, n, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: u64, d: &str) -> BigRational {
        BigRational::new(BigInt::from(n), d.parse().unwrap())
    }

    #[test]
    fn parameter_errors() {
        use FamilyKind::*;
        assert_eq!(construct(GeneralType, 4, 5), Err(FamilyError::EvenCycleLength(4)));
        assert_eq!(construct(GeneralType, 1, 5), Err(FamilyError::CycleLengthTooSmall(1)));
        assert_eq!(construct(Fano, 5, 3), Err(FamilyError::DimensionTooSmall { r: 5, n: 3 }));
        assert_eq!(construct(GeneralTypeR3, 5, 6), Err(FamilyError::NotThree(5)));
        assert_eq!(construct(GeneralTypeR3, 3, 1), Err(FamilyError::DimensionTooSmall { r: 3, n: 1 }));
    }

    #[test]
    fn named_members() {
        let g = construct(FamilyKind::GeneralType, 3, 2).unwrap();
        assert_eq!(g.head_weights, ints(&[85, 61, 11]));
        assert_eq!(g.x, BigInt::from(158));
        assert_eq!(g.tail_weights, ints(&[158]));
        assert_eq!(g.degree, BigInt::from(316));

        let g5 = construct(FamilyKind::GeneralType, 5, 4).unwrap();
        assert_eq!(g5.degree, BigInt::from(147565206676u64));
        assert_eq!(
            g5.weights_descending(),
            ints(&[73782603338, 39714616165, 28421358181, 5458415771, 187980859, 232361])
        );

        let f2 = construct(FamilyKind::Fano, 3, 2).unwrap();
        assert_eq!(f2.head_weights, ints(&[69, 49, 11]));
        assert_eq!(f2.x, BigInt::from(128));
        assert_eq!(f2.tail_weights, ints(&[128]));
        assert_eq!(f2.degree, BigInt::from(256));

        let f3 = construct(FamilyKind::Fano, 3, 3).unwrap();
        assert_eq!(f3.degree, BigInt::from(336960));
        assert_eq!(f3.weights_descending(), ints(&[168480, 112320, 46837, 9101, 223]));
    }

    #[test]
    fn named_certificates() {
        let guard = MembershipGuard::default();
        let c = verify_member(&construct(FamilyKind::GeneralType, 3, 2).unwrap(), guard);
        assert!(c.is_valid(), "{:?}", c.failed_checks());
        assert_eq!(c.volume, Some(rat(2, "57035")));
        assert_eq!(c.canonical_degree, BigInt::one());
        assert!(c.general_cross_check.as_ref().unwrap().is_quasi_smooth());

        let c = verify_member(&construct(FamilyKind::Fano, 3, 2).unwrap(), guard);
        assert!(c.is_valid(), "{:?}", c.failed_checks());
        assert_eq!(c.bottom_weight, BigInt::from(11));
        assert_eq!(c.canonical_degree, BigInt::from(-1));
        assert_eq!(c.volume, None);

        let c = verify_member(&construct(FamilyKind::GeneralType, 3, 3).unwrap(), guard);
        assert!(c.is_valid(), "{:?}", c.failed_checks());
        assert_eq!(c.volume, Some(rat(1, "5487505331993410")));
    }

    #[test]
    fn r3_form_agrees_with_general_form() {
        for n in 2..=10 {
            let a = construct(FamilyKind::GeneralTypeR3, 3, n).unwrap();
            let b = construct(FamilyKind::GeneralType, 3, n).unwrap();
            assert_eq!(a.head_weights, b.head_weights);
            assert_eq!(a.tail_weights, b.tail_weights);
            assert_eq!((a.x, a.y, a.degree), (b.x, b.y, b.degree));
        }
    }

    #[test]
    fn equation_system_regenerates_weights() {
        for (r, n) in admissible_pairs(9, 12) {
            for kind in [FamilyKind::GeneralType, FamilyKind::Fano] {
                let m = construct(kind, r, n).unwrap();
                assert_eq!(head_weights_from_equations(kind.sign(), r, &m.y), m.head_weights);
            }
        }
    }

    #[test]
    fn closed_form_volume_with_negative_y_exponent() {
        // n = r - 1 puts y in the numerator
        let m = construct(FamilyKind::GeneralType, 5, 4).unwrap();
        let direct = volume_of_twist(VolumeTarget::Hypersurface(&m.hypersurface), &BigInt::one());
        assert_eq!(volume_closed_form(&m), direct);
        assert_eq!(direct, rat(2, "269115478316590871290499527208921529592174585"));
    }

    #[test]
    fn tampered_member_fails_verification() {
        let mut m = construct(FamilyKind::GeneralType, 3, 2).unwrap();
        m.head_weights[1] += 1;
        let c = verify_member(&m, MembershipGuard::default());
        assert!(!c.is_valid());
        assert!(c.failed_checks().contains(&"equation_system"));
    }

    #[test]
    fn kollar_values() {
        assert_eq!(kollar_pair_volume(1).unwrap(), rat(1, "42"));
        assert_eq!(kollar_pair_volume(2).unwrap(), rat(1, "3261636"));
        assert_eq!(kollar_pair_volume(3).unwrap(), rat(1, "34755832505598546888"));
        assert_eq!(kollar_pair_volume(0), Err(FamilyError::ZeroDimension));
    }

    #[test]
    fn ratio_first_value() {
        let v = log_volume_ratio(3, 2).unwrap();
        assert!(v.value.to_string().starts_with("0.683987959306882603"), "{}", v.value);
        assert_eq!(v.value.digits, RATIO_DIGITS);
        let v = log_volume_ratio(5, 4).unwrap().value.to_f64();
        assert!(v > 0.0 && v < 1.0);
    }

    #[test]
    fn member_serde_round_trip() {
        let m = construct(FamilyKind::Fano, 3, 3).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains(r#""weights_descending":["168480","112320","46837","9101","223"]"#));
        assert_eq!(serde_json::from_str::<FamilyMember>(&json).unwrap(), m);
        let tampered = json.replace(r#""168480","112320""#, r#""112320","168480""#);
        assert!(serde_json::from_str::<FamilyMember>(&tampered).is_err());

        let c = verify_member(&m, MembershipGuard::default());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<FamilyCertificate>(&json).unwrap(), c);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("general".parse(), Ok(FamilyKind::GeneralType));
        assert_eq!("general-r3".parse(), Ok(FamilyKind::GeneralTypeR3));
        assert_eq!("FANO".parse(), Ok(FamilyKind::Fano));
        assert!("kawamata".parse::<FamilyKind>().is_err());
    }
}
