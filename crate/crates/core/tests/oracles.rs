mod common;

use std::collections::{BTreeSet, HashSet};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tree_amity::amity::numbering_to_path_bijection;
use tree_amity::enumerate::enumerate_free_trees;
use tree_amity::search::{search_numbering, SearchBudget, SearchOutcome};
use tree_amity::trunk::find_trunk;
use tree_amity::{check_friendly_bijection, check_friendly_numbering, EdgeBijection, EdgeId, Numbering, Tree};

use common::*;

#[test]
fn prufer_oracle_matches_enumeration() {
    for m in 0..=7 {
        let expected = prufer_classes(m);
        let got: HashSet<String> = enumerate_free_trees(m).map(|t| t.canonical_code()).collect();
        assert_eq!(got, expected, "m = {m}");
    }
}

#[test]
fn labeled_tree_counts_follow_cayley() {
    for m in 1..=5 {
        let n = m + 1;
        assert_eq!(all_labeled_trees(m).len(), n.pow((n - 2) as u32));
    }
}

#[test]
fn canonical_code_matches_brute_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for m in 1..=6 {
        let trees = all_labeled_trees(m);
        for _ in 0..60 {
            let a = trees.choose(&mut rng).unwrap();
            let b = trees.choose(&mut rng).unwrap();
            assert_eq!(a.is_isomorphic(b), brute_isomorphic(a, b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn edge_paths_match_bfs() {
    for m in 2..=7 {
        for t in enumerate_free_trees(m) {
            for a in 0..m {
                for b in 0..m {
                    if a == b {
                        continue;
                    }
                    let got: BTreeSet<usize> =
                        t.path_between_edges(EdgeId(a), EdgeId(b)).unwrap().iter().map(|e| e.0).collect();
                    assert_eq!(got, bfs_edge_path(&t, a, b));
                }
            }
        }
    }
}

#[test]
fn numbering_checker_matches_definition() {
    for m in 1..=6 {
        for t in enumerate_free_trees(m) {
            for numbers in all_numberings(m) {
                let nu = Numbering::new(&t, numbers.clone()).unwrap();
                assert_eq!(check_friendly_numbering(&nu).is_ok(), naive_friendly_numbering(&t, &numbers));
            }
        }
    }
}

#[test]
fn bijection_checker_matches_definition() {
    for m in 1..=5 {
        let trees: Vec<Tree> = enumerate_free_trees(m).collect();
        for g1 in &trees {
            for g2 in &trees {
                for numbers in all_numberings(m) {
                    let map: Vec<usize> = numbers.iter().map(|k| k - 1).collect();
                    let b = EdgeBijection::new(g1, g2, map.iter().map(|&i| EdgeId(i)).collect()).unwrap();
                    assert_eq!(check_friendly_bijection(&b).is_ok(), naive_friendly_bijection(g1, g2, &map));
                }
            }
        }
    }
}

#[test]
fn path_bijection_view_matches_definition() {
    for m in 1..=5 {
        for t in enumerate_free_trees(m) {
            for numbers in all_numberings(m) {
                let nu = Numbering::new(&t, numbers.clone()).unwrap();
                let b = numbering_to_path_bijection(&nu);
                let map: Vec<usize> = b.map().iter().map(|e| e.0).collect();
                assert_eq!(naive_friendly_bijection(&Tree::path(m), &t, &map), naive_friendly_numbering(&t, &numbers));
            }
        }
    }
}

#[test]
fn numbering_search_matches_all_permutations() {
    for m in 1..=6 {
        for t in enumerate_free_trees(m) {
            let exists = all_numberings(m).iter().any(|n| naive_friendly_numbering(&t, n));
            let outcome = search_numbering(&t, SearchBudget::exhaustive());
            match outcome {
                SearchOutcome::Found(ref nu) => assert!(naive_friendly_numbering(&t, nu.numbers())),
                SearchOutcome::ProvedNone => assert!(!exists),
                SearchOutcome::BudgetExceeded => panic!("exhaustive search ran out of budget"),
            }
            assert_eq!(outcome.is_found(), exists);
        }
    }
}

#[test]
fn trunk_existence_matches_path_predicate() {
    for m in 1..=10 {
        for t in enumerate_free_trees(m) {
            assert_eq!(find_trunk(&t).unwrap().is_some(), branch_vertices_on_a_path(&t), "{t:?}");
        }
    }
}
