mod common;

use common::{brute_force_graphs, count_isos, isomorphic, p1, point};
use tautring::graph::{enumerate_graphs, Ambient};

fn ambients() -> Vec<(Ambient, usize)> {
    vec![
        (point(0, 4), 1),
        (point(0, 5), 2),
        (point(1, 1), 1),
        (point(1, 2), 2),
        (point(2, 0), 3),
        (p1(0, 2, 1), 2),
        (p1(0, 2, 2), 2),
        (p1(0, 3, 1), 2),
        (p1(1, 1, 1), 2),
        (p1(1, 0, 2), 2),
    ]
}

#[test]
fn enumeration_matches_brute_force() {
    for (amb, e) in ambients() {
        let ours = enumerate_graphs(&amb, e, false);
        let brute = brute_force_graphs(&amb, e);
        assert_eq!(ours.len(), brute.len(), "{amb} up to {e} edges");
        for g in brute.iter() {
            assert!(ours.iter().any(|h| isomorphic(g, h)), "{amb}: missing {g:?}");
        }
        for (i, a) in ours.iter().enumerate() {
            assert!(a.validate(&amb).is_ok());
            for b in &ours[i + 1..] {
                assert!(!isomorphic(a, b), "{amb}: duplicate");
            }
        }
    }
}

#[test]
fn known_stratum_counts() {
    // strata of M_{0,5} and M_2
    assert_eq!(enumerate_graphs(&point(0, 5), 2, false).len(), 26);
    assert_eq!(enumerate_graphs(&point(2, 0), 3, false).len(), 7);
    assert_eq!(enumerate_graphs(&point(1, 1), 1, false).len(), 2);
    assert_eq!(enumerate_graphs(&point(0, 4), 1, false).len(), 4);
}

#[test]
fn automorphisms_match_brute_force() {
    for (amb, e) in ambients() {
        for g in enumerate_graphs(&amb, e, false).iter() {
            assert_eq!(g.automorphism_order(), count_isos(g, g), "{amb}: {g:?}");
            assert_eq!(g.isomorphisms(g).len() as u64, count_isos(g, g), "{amb}: {g:?}");
        }
    }
}

#[test]
fn canonical_form_is_an_isomorphism_invariant() {
    for (amb, e) in ambients() {
        for g in enumerate_graphs(&amb, e, false).iter() {
            let n = g.num_vertices();
            for sigma in common::permutations(n) {
                let mut h = g.clone();
                for (old, &new) in sigma.iter().enumerate() {
                    h.vertices[new] = g.vertices[old].clone();
                }
                h.legs = g.legs.iter().map(|&v| sigma[v]).collect();
                h.edges = g.edges.iter().rev().map(|&(a, b)| (sigma[b], sigma[a])).collect();
                assert_eq!(h.canonical(), g.canonical());
                assert!(count_isos(&h, g) > 0);
            }
        }
    }
}

#[test]
fn shapes_only_counts_unlabelled_prestable_graphs() {
    let amb = p1(1, 2, 1);
    assert_eq!(enumerate_graphs(&amb, 2, true).len(), 26);
}
