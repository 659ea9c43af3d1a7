mod common;

use std::collections::BTreeSet;

use common::*;
use distinguish_core::construct::{
    complement_reduce, construct_determining_arc_labeling, construct_hk_arc_labeling,
    uncovered_module_rotation, LeftoverCase,
};
use distinguish_core::labeling::{
    black_labeling, class_to_labeling, is_distinguishing_vertex, white_labeling,
};
use distinguish_core::search::{
    covers_basic_modules, det_exact, is_determining_set, is_distinguishing_class, rho_exact,
    rho_prime_exact,
};
use distinguish_core::tournament::{basic_modules, random_corpus};
use distinguish_core::{det_bound, rho_bound, rho_prime_bound};
use distinguish_core::{ArcLabeling, HkIndex, SearchBudget, Tournament, VertexLabeling};
use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn constructors_satisfy_tournament_invariants() {
    for k in 0..=5 {
        Tournament::hk(k).unwrap().check_invariants().unwrap();
    }
    for e in random_corpus(100, 1, 60, 31) {
        e.tournament.check_invariants().unwrap();
    }
    Tournament::transitive(30).check_invariants().unwrap();
}

#[test]
fn relationship_difference_splits_hk_pairs() {
    for k in 1..=4u32 {
        let t = Tournament::hk(k).unwrap();
        let idx = HkIndex::new(k).unwrap();
        let threshold = 3usize.pow(k - 1);
        for u in 0..t.order() {
            for v in u + 1..t.order() {
                let d = t.relationship_difference(u, v).unwrap();
                let brute = (0..t.order())
                    .filter(|&x| x != u && x != v && separates(&t, x, u, v))
                    .count();
                assert_eq!(d, brute);
                if k >= 2 && idx.basic_module(u) == idx.basic_module(v) {
                    assert!(d < threshold, "k = {k}, ({u}, {v})");
                }
                if idx.tertian(u) != idx.tertian(v) {
                    assert!(d >= threshold, "k = {k}, ({u}, {v})");
                }
            }
        }
    }
}

#[test]
fn basic_modules_are_triangles() {
    for k in 1..=4 {
        let t = Tournament::hk(k).unwrap();
        for m in basic_modules(k).unwrap() {
            assert!(t.is_module(&m));
            let sub = t.induced(&m).unwrap().tournament;
            assert_eq!(brute_automorphisms(&sub).len(), 3);
        }
    }
}

#[test]
fn hamiltonian_paths_on_random_tournaments() {
    for e in random_corpus(1000, 1, 50, 4242) {
        let path = e.tournament.hamiltonian_path();
        let distinct: BTreeSet<usize> = path.iter().copied().collect();
        assert_eq!(distinct.len(), e.n);
        assert!(path.windows(2).all(|w| e.tournament.has_arc(w[0], w[1])));
    }
}

#[test]
fn complementation_of_distinguishing_classes() {
    let mut corpus: Vec<Tournament> = random_corpus(24, 2, 12, 808)
        .into_iter()
        .map(|e| e.tournament)
        .collect();
    corpus.push(Tournament::hk(1).unwrap());
    corpus.push(Tournament::hk(2).unwrap());
    corpus.push(circulant_from_mask(11, 0b10110));
    corpus.push(circulant_from_mask(9, 0));
    for t in corpus {
        let n = t.order();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let rest: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
            let a = is_distinguishing_class(&t, &s).unwrap();
            let b = is_distinguishing_class(&t, &rest).unwrap();
            assert_eq!(a, b, "n = {n}, mask = {mask:b}");
            if a {
                let l = class_to_labeling(&t, &s).unwrap();
                assert_eq!(l.complement(), class_to_labeling(&t, &rest).unwrap());
                assert!(complement_reduce(&t, &s).unwrap().len() <= n / 2);
            }
        }
    }
}

#[test]
fn distinguishing_sets_are_determining() {
    let mut corpus: Vec<Tournament> = random_corpus(60, 3, 9, 99)
        .into_iter()
        .map(|e| e.tournament)
        .collect();
    corpus.push(Tournament::hk(2).unwrap());
    for n in [5, 7, 9] {
        corpus.push(circulant_from_mask(n, 1));
    }
    for t in corpus {
        let n = t.order();
        for mask in 0u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if is_distinguishing_class(&t, &s).unwrap() {
                assert!(is_determining_set(&t, &s).unwrap());
            }
        }
    }
}

#[test]
fn labeling_counts() {
    for k in 0..=6u32 {
        let n = 3usize.pow(k);
        assert_eq!(white_labeling(k).black_count(), (n - 1) / 2);
        assert_eq!(black_labeling(k).black_count(), n.div_ceil(2));
        assert_eq!(white_labeling(k).len(), n);
    }
}

#[test]
fn white_and_black_labelings_distinguish() {
    for k in 0..=4u32 {
        let t = Tournament::hk(k).unwrap();
        assert!(is_distinguishing_vertex(&t, &white_labeling(k))
            .unwrap()
            .is_distinguishing());
        assert!(is_distinguishing_vertex(&t, &black_labeling(k))
            .unwrap()
            .is_distinguishing());
    }
}

#[test]
fn restriction_to_tertians_stays_distinguishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    for k in 1..=3u32 {
        let t = Tournament::hk(k).unwrap();
        let sub = Tournament::hk(k - 1).unwrap();
        let idx = HkIndex::new(k).unwrap();
        let n = t.order();
        let mut found = 0;
        while found < 500 {
            let black: Vec<usize> = (0..n).filter(|_| rng.next_u32() & 1 == 1).collect();
            let l = VertexLabeling::from_black_set(n, &black);
            if !is_distinguishing_vertex(&t, &l)
                .unwrap()
                .is_distinguishing()
            {
                continue;
            }
            found += 1;
            for block in 0..3 {
                let part = l.slice(idx.tertian_range(block));
                assert!(is_distinguishing_vertex(&sub, &part)
                    .unwrap()
                    .is_distinguishing());
            }
        }
    }
}

#[test]
fn exact_searches_match_oracles_and_bounds() {
    let b = SearchBudget::unlimited();
    for e in random_corpus(200, 1, 7, 2024) {
        let t = &e.tournament;
        let auts = brute_automorphisms(t);
        let rho = rho_exact(t, &b).unwrap();
        let det = det_exact(t, &b).unwrap();
        assert_eq!(rho.value, brute_rho(t, &auts), "seed {}", e.seed);
        assert_eq!(det.value, brute_det(t, &auts), "seed {}", e.seed);
        assert!(is_distinguishing_class(t, &rho.witness).unwrap());
        assert!(is_determining_set(t, &det.witness).unwrap());
        assert!(rho.value <= rho_bound(e.n));
        assert!(det.value <= det_bound(e.n));
        if e.n <= 6 {
            let rp = rho_prime_exact(t, &b, false).unwrap();
            assert_eq!(rp.value, brute_rho_prime(t, &auts), "seed {}", e.seed);
            assert!(rp.value <= rho_prime_bound(e.n));
        }
    }
}

#[test]
fn failed_levels_are_logged() {
    let h2 = Tournament::hk(2).unwrap();
    let m = rho_exact(&h2, &SearchBudget::unlimited()).unwrap();
    // one entry per size tried: 0, 1, 2, 3 fail and 4 succeeds
    let sizes: Vec<usize> = m.stats.levels.iter().map(|l| l.size).collect();
    assert_eq!(sizes, vec![0, 1, 2, 3, 4]);
    let m = det_exact(&h2, &SearchBudget::unlimited()).unwrap();
    let explored: u64 = m.stats.levels[..3]
        .iter()
        .map(|l| l.examined + l.pruned)
        .sum();
    // C(9,0) + C(9,1) + C(9,2)
    assert_eq!(explored, 1 + 9 + 36);
}

#[test]
fn hk_arc_labeling_counts_and_verification() {
    for k in 1..=4u32 {
        let l = construct_hk_arc_labeling(k).unwrap();
        assert_eq!(l.black_count(), 3usize.pow(k - 1).div_ceil(2));
        let arcs: Vec<(usize, usize)> = l.black_arcs().iter().copied().collect();
        assert!(covers_basic_modules(k, &arcs));
    }
}

#[test]
fn small_arc_sets_leave_a_module_free_on_h2() {
    let t = Tournament::hk(2).unwrap();
    let arcs: Vec<(usize, usize)> = t.arcs().collect();
    let mut sets = vec![ArcLabeling::new()];
    sets.extend(arcs.iter().map(|&a| ArcLabeling::from_arcs([a])));
    for l in sets {
        let p = uncovered_module_rotation(2, &l).expect("some module is uncovered");
        assert!(!p.is_identity());
        assert!(preserves_arcs_of(&t, p.images()));
        assert!(preserves_arc_set(p.images(), l.black_arcs()));
    }
}

fn structured_pipeline_corpus() -> Vec<Tournament> {
    let h1 = Tournament::hk(1).unwrap();
    let h2 = Tournament::hk(2).unwrap();
    let t1 = Tournament::transitive(1);
    let t2 = Tournament::transitive(2);
    let mut out = vec![
        c3_substitution([&h1, &h1, &t1]),
        c3_substitution([&h2, &h1, &h1]),
        c3_substitution([&h2, &h2, &t2]),
        c3_substitution([&h1, &t2, &h2]),
        c3_substitution([&t2, &t2, &t2]),
    ];
    for n in [5, 7, 9, 11, 13, 15, 21, 25] {
        for mask in [0u64, 1, 0b101, 0b110] {
            out.push(circulant_from_mask(n, mask));
        }
    }
    out
}

#[test]
fn pipeline_on_structured_tournaments() {
    let b = SearchBudget::unlimited();
    let mut cases = BTreeSet::new();
    for t in structured_pipeline_corpus() {
        let n = t.order();
        let (l, trace) = construct_determining_arc_labeling(&t, &b).unwrap();
        assert!(trace.check_partition());
        assert!(l.black_count() <= rho_prime_bound(n));
        if trace.case == LeftoverCase::U0 {
            assert!(l.black_count() <= 7 * n / 36);
        }
        assert!(verify_with_oracle(&t, &l), "n = {n}");
        cases.insert(trace.case.to_string());
    }
    assert!(cases.len() >= 3, "{cases:?}");
}

// n <= 9 goes through the brute-force oracle as well
fn verify_with_oracle(t: &Tournament, l: &ArcLabeling) -> bool {
    let verdict = distinguish_core::labeling::is_distinguishing_arc(t, l)
        .unwrap()
        .is_distinguishing();
    if t.order() <= 9 {
        let brute = brute_automorphisms(t);
        assert_eq!(
            verdict,
            nontrivial(&brute).all(|p| !preserves_arc_set(p, l.black_arcs()))
        );
    }
    verdict
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_labelings_complement(n in 3usize..10, seed in any::<u64>(), mask in any::<u32>()) {
        let t = Tournament::random(n, seed).unwrap();
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        prop_assert_eq!(
            is_distinguishing_class(&t, &s).unwrap(),
            is_distinguishing_class(&t, &rest).unwrap()
        );
    }

    #[test]
    fn pipeline_on_random_tournaments(n in 1usize..30, seed in any::<u64>()) {
        let t = Tournament::random(n, seed).unwrap();
        let (l, trace) = construct_determining_arc_labeling(&t, &SearchBudget::unlimited()).unwrap();
        prop_assert!(trace.check_partition());
        prop_assert!(l.black_count() <= rho_prime_bound(n));
    }
}
