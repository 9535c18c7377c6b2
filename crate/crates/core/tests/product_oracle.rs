//! Transverse part of products of boundary divisors against a brute-force count
//! of generic (A, B)-structures.

mod common;

use common::{contract, count_isos, p1, point};
use num_rational::BigRational;
use tautring::graph::{enumerate_graphs, Ambient, StableGraph};
use tautring::product::multiply;
use tautring::strata::{DecoratedTerm, StrataElement};

fn q(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Coefficient of `[Γ]` in `[A]·[B]` for a two-edge `Γ`.
fn expected(a: &StableGraph, b: &StableGraph, gamma: &StableGraph) -> BigRational {
    let mut structures = 0;
    for ea in 0..2 {
        let eb = 1 - ea;
        structures += count_isos(&contract(gamma, eb), a) * count_isos(&contract(gamma, ea), b);
    }
    q(structures) / q(count_isos(gamma, gamma))
}

fn check(amb: &Ambient) {
    let all = enumerate_graphs(amb, 2, false);
    let one: Vec<&StableGraph> = all.iter().filter(|g| g.num_edges() == 1).collect();
    let two: Vec<&StableGraph> = all.iter().filter(|g| g.num_edges() == 2).collect();
    let mut nontrivial = 0;
    for a in &one {
        for b in &one {
            let prod = multiply(&StrataElement::graph_class(amb, a), &StrataElement::graph_class(amb, b)).unwrap();
            for (t, _) in prod.terms() {
                if t.graph.num_edges() == 2 {
                    assert_eq!(t, &DecoratedTerm::bare(t.graph.clone()), "{amb}: decorated two-edge term");
                }
            }
            for gamma in &two {
                let want = expected(a, b, gamma);
                let got = prod.coefficient(&DecoratedTerm::bare((*gamma).clone())).as_constant().unwrap();
                assert_eq!(got, want, "{amb}: {a:?} * {b:?} at {gamma:?}");
                if want != q(0) {
                    nontrivial += 1;
                }
            }
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn genus_zero_point_target() {
    check(&point(0, 5));
    check(&point(0, 6));
}

#[test]
fn genus_one_point_target() {
    check(&point(1, 2));
    check(&point(1, 3));
}

#[test]
fn projective_line() {
    check(&p1(0, 3, 1));
    check(&p1(0, 2, 2));
    check(&p1(1, 1, 1));
}
