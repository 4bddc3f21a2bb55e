use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use wpslab_core::exec::Execution;
use wpslab_core::search::{enumerate_candidates, merge_results, revalidate, run_search_with, ObjectiveValue};
use wpslab_core::{run_search, Hypersurface, Objective, SearchConfig};

fn hs(w: &[u64], d: u64) -> Hypersurface {
    Hypersurface::from_u64s(w, d).unwrap()
}

#[test]
fn general_type_example_has_the_smallest_volume_up_to_160() {
    let c = SearchConfig::new(2, 160, 1, Objective::MinVolume);
    let r = run_search(&c).unwrap();
    let hit = r
        .hits
        .iter()
        .find(|h| h.hypersurface == hs(&[158, 85, 61, 11], 316))
        .expect("known surface among hits");
    assert_eq!(
        hit.objective,
        ObjectiveValue::Volume(BigRational::new(2.into(), 57035.into()))
    );
    assert_eq!(hit.rank, 0);
    assert!(r.hits.iter().all(|h| revalidate(h, c.membership_guard)));
}

#[test]
fn fano_bottom_weight_examples_recalled() {
    let c = SearchConfig::new(2, 130, -1, Objective::MaxBottomWeight).with_top_k(1);
    let r = run_search(&c).unwrap();
    assert_eq!(r.top_value(), Some(&ObjectiveValue::BottomWeight(BigInt::from(13))));
    let found: HashSet<_> = r.hits.iter().map(|h| h.hypersurface.clone()).collect();
    assert!(found.contains(&hs(&[57, 35, 23, 13], 127)));
    assert!(found.contains(&hs(&[128, 81, 35, 13], 256)));
}

#[test]
fn dimension_three_runs_and_agrees_across_modes() {
    let c = SearchConfig::new(3, 14, 1, Objective::MinVolume).with_top_k(3);
    let seq = run_search_with(&c, Execution::Sequential).unwrap();
    let par = run_search_with(&c, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert!(!seq.hits.is_empty());
    for h in &seq.hits {
        assert_eq!(h.hypersurface.weights().len(), 5);
        assert_eq!(h.hypersurface.canonical_degree(), BigInt::from(1));
    }
}

#[test]
fn shard_union_equals_single_run() {
    // top_k large enough that every hit is kept: shards then partition hits
    let c = SearchConfig::new(2, 24, 1, Objective::MinVolume).with_top_k(100_000);
    let single = run_search(&c).unwrap();
    let parts: Vec<_> = (0..4).map(|i| run_search(&c.clone().with_shard(i, 4)).unwrap()).collect();
    let mut union: Vec<_> = parts.iter().flat_map(|p| p.hits.iter().map(|h| h.hypersurface.clone())).collect();
    let mut expect: Vec<_> = single.hits.iter().map(|h| h.hypersurface.clone()).collect();
    union.sort_by(|a, b| a.weights().cmp(b.weights()));
    expect.sort_by(|a, b| a.weights().cmp(b.weights()));
    assert_eq!(union, expect);
    assert_eq!(merge_results(&c, &parts), single.hits);
    let accepted: u64 = parts.iter().map(|p| p.stats.accepted).sum();
    assert_eq!(accepted, single.stats.accepted);
}

#[test]
fn enumeration_respects_target_and_order() {
    let c = SearchConfig::new(2, 6, -1, Objective::MinVolume);
    let all: Vec<_> = enumerate_candidates(&c).unwrap().collect();
    assert_eq!(all.len(), 126);
    for h in &all {
        assert_eq!(h.canonical_degree(), BigInt::from(-1));
    }
    let tuples: Vec<_> = all.iter().map(|h| h.weights().to_vec()).collect();
    let mut sorted = tuples.clone();
    sorted.sort();
    assert_eq!(tuples, sorted);
}
