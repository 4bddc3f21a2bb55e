use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use wpslab_core::exec::Execution;
use wpslab_core::families::{admissible_pairs, verify_sweep, volume_closed_form};
use wpslab_core::polyseq::sylvester;
use wpslab_core::wps::{section_count, volume_of_twist, VolumeTarget};
use wpslab_core::{construct, log_volume_ratio, FamilyKind, MembershipGuard};

#[test]
fn fano_sweep_is_valid() {
    let pairs = admissible_pairs(9, 12);
    for (res, (r, n)) in verify_sweep(FamilyKind::Fano, &pairs, MembershipGuard::default(), Execution::default())
        .into_iter()
        .zip(&pairs)
    {
        let c = res.unwrap();
        assert!(c.is_valid(), "fano r={r} n={n}: {:?}", c.failed_checks());
        assert_eq!(c.canonical_degree, BigInt::from(-1));
    }
}

#[test]
fn sweep_modes_agree() {
    let pairs = admissible_pairs(7, 8);
    let g = MembershipGuard::default();
    let a = verify_sweep(FamilyKind::GeneralType, &pairs, g, Execution::Sequential);
    let b = verify_sweep(FamilyKind::GeneralType, &pairs, g, Execution::Parallel);
    assert_eq!(a, b);
}

#[test]
fn volume_is_degree_over_weight_product() {
    // independent of the closed form: d / prod(a_i) straight from the weights
    for (r, n) in admissible_pairs(9, 12) {
        let m = construct(FamilyKind::GeneralType, r, n).unwrap();
        let product: BigInt = m.head_weights.iter().chain(&m.tail_weights).product();
        let direct = BigRational::new(m.degree.clone(), product);
        assert_eq!(direct, volume_closed_form(&m), "r={r} n={n}");
        assert_eq!(direct, volume_of_twist(VolumeTarget::Hypersurface(&m.hypersurface), &BigInt::one()));
    }
}

#[test]
fn tail_weights_times_sylvester_terms_are_constant() {
    for (r, n) in admissible_pairs(9, 12) {
        let m = construct(FamilyKind::GeneralType, r, n).unwrap();
        assert_eq!(m.tail_weights.len(), n + 2 - r);
        for (i, t) in m.tail_weights.iter().enumerate() {
            assert_eq!(t * sylvester(i), m.degree, "r={r} n={n} i={i}");
        }
        assert_eq!(m.hypersurface.dimension(), n);
    }
}

#[test]
fn low_degrees_have_no_sections() {
    for (r, n) in admissible_pairs(7, 8) {
        let m = construct(FamilyKind::GeneralType, r, n).unwrap();
        let bottom = m.bottom_weight().clone();
        for probe in [BigInt::one(), &bottom - 1u32] {
            if probe > BigInt::zero() {
                assert!(section_count(&m.hypersurface, &probe).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn ratio_values_are_below_the_limit() {
    for n in 2..=8 {
        let v = log_volume_ratio(3, n).unwrap().value.to_f64();
        assert!(v < 7.0 / 8.0, "n={n}: {v}");
    }
    for (r, n) in [(5, 4), (5, 6), (7, 6)] {
        let v = log_volume_ratio(r, n).unwrap().value.to_f64();
        assert!(v > 0.0 && v < 1.0);
    }
}
