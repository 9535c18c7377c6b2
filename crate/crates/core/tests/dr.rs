mod common;

use std::collections::BTreeSet;

use common::{p1, point};
use num_rational::BigRational;
use num_traits::{One, Zero};
use tautring::dr::{
    check_dr_data, compute_p_d_r, compute_p_d_symbolic, enumerate_weightings, expected_weighting_count,
    interpolate_in_r, is_weighting,
};
use tautring::graph::{enumerate_graphs, Ambient, StableGraph};
use tautring::oracle::{evaluate_m04_point, paper_fixture, CATALOG};
use tautring::strata::{DecoratedTerm, RawTerm, StrataElement};
use tautring::target::ChowElement;

type Q = BigRational;

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn valence(g: &StableGraph, v: usize) -> i64 {
    (g.legs.iter().filter(|&&l| l == v).count()
        + g.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum::<usize>()) as i64
}

/// Counts residue assignments directly: one free value per edge, the other
/// side determined, then every vertex congruence checked.
fn brute_force_count(amb: &Ambient, g: &StableGraph, r: u64, a: &[i64], k: i64) -> u64 {
    let r_i = r as i64;
    let ne = g.edges.len();
    let mut count = 0;
    for code in 0..r.pow(ne as u32) {
        let mut x = vec![0i64; ne];
        let mut c = code;
        for xe in x.iter_mut() {
            *xe = (c % r) as i64;
            c /= r;
        }
        let ok = (0..g.vertices.len()).all(|v| {
            let vx = &g.vertices[v];
            let s = i64::from(vx.beta.0.iter().sum::<u32>()) * amb.b() / i64::from(amb.beta.0.iter().sum::<u32>().max(1));
            let rhs = s + k * (2 * i64::from(vx.genus) - 2 + valence(g, v));
            let mut total = 0;
            for (i, &l) in g.legs.iter().enumerate() {
                if l == v {
                    total += a[i];
                }
            }
            for (e, &(p, q)) in g.edges.iter().enumerate() {
                if p == v {
                    total += x[e];
                }
                if q == v {
                    total += r_i - x[e];
                }
            }
            (total - rhs).rem_euclid(r_i) == 0
        });
        if ok {
            count += 1;
        }
    }
    count
}

fn sample_a(amb: &Ambient, k: i64) -> Vec<Vec<i64>> {
    let total = amb.b() + k * (2 * i64::from(amb.g) - 2 + amb.n as i64);
    let mut out = vec![];
    let mut a = vec![0; amb.n];
    a[0] = total;
    out.push(a.clone());
    if amb.n >= 2 {
        a[0] = total + 3;
        a[1] = -3;
        out.push(a);
    }
    out
}

/// Graphs occurring in fixtures, plus all graphs with at most two edges on the
/// same ambients.
fn fixture_graphs() -> Vec<(Ambient, StableGraph)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in CATALOG {
        for d in 1..=2 {
            let n = f.markings.max(2);
            let g = if f.id == "4.3" { 1 } else { f.genus };
            let amb = p1(g, n, d);
            let id = if f.id == "2.6/psi" { "2.6/psi1".to_string() } else { f.id.to_string() };
            let mut graphs: Vec<StableGraph> = enumerate_graphs(&amb, 2, false).to_vec();
            if let Ok(el) = paper_fixture(&id, &amb) {
                graphs.extend(el.terms().map(|(t, _)| t.graph.clone()));
            }
            for gr in graphs {
                if gr.first_betti() <= 2 && seen.insert((g, n, d, gr.clone())) {
                    out.push((amb.clone(), gr));
                }
            }
        }
    }
    out
}

#[test]
fn weighting_counts() {
    let all = fixture_graphs();
    assert!(all.len() > 50);
    for r in [5u64, 7, 11] {
        for (amb, g) in &all {
            for k in [0, 1] {
                for a in sample_a(amb, k) {
                    let ws = enumerate_weightings(&amb.target, g, r, &a, k);
                    let n = ws.len() as u64;
                    assert_eq!(n, brute_force_count(amb, g, r, &a, k), "{amb} {g:?} r={r}");
                    let full = expected_weighting_count(g, r);
                    assert!(n == 0 || num_bigint::BigInt::from(n) == full, "{amb} {g:?} r={r}: {n}");
                    assert!(ws.iter().all(|w| is_weighting(&amb.target, g, w, &a, k)));
                }
            }
        }
    }
}

fn lagrange(xs: &[Q], ys: &[Q], x: &Q) -> Q {
    let mut total = Q::zero();
    for i in 0..xs.len() {
        let mut term = ys[i].clone();
        for j in 0..xs.len() {
            if i != j {
                term = term * (x - &xs[j]) / (&xs[i] - &xs[j]);
            }
        }
        total += term;
    }
    total
}

#[test]
fn r_polynomiality_with_held_out_moduli() {
    let cases: Vec<(Ambient, u32, Vec<(i64, Vec<i64>)>)> = vec![
        (p1(0, 2, 1), 1, vec![(0, vec![1, 0]), (0, vec![3, -2]), (0, vec![-1, 2])]),
        (p1(1, 1, 1), 1, vec![(0, vec![1]), (1, vec![2]), (-1, vec![0])]),
        (p1(1, 1, 1), 2, vec![(0, vec![1]), (1, vec![2]), (-1, vec![0])]),
    ];
    for (amb, d, data) in cases {
        for (k, a) in data {
            check_dr_data(&amb, k, &a).unwrap();
            let (constant, prov) = interpolate_in_r(&amb, k, d, &a).unwrap();
            let xs: Vec<Q> = prov.moduli.iter().map(|&r| qi(r as i64)).collect();
            let samples: Vec<StrataElement> =
                prov.moduli.iter().map(|&r| compute_p_d_r(&amb, k, d, &a, r).unwrap()).collect();
            let last = *prov.moduli.last().unwrap();
            let fresh = [last + 7, last + 19, last + 101];
            let checks: Vec<StrataElement> = fresh.iter().map(|&r| compute_p_d_r(&amb, k, d, &a, r).unwrap()).collect();
            let mut keys: BTreeSet<DecoratedTerm> = BTreeSet::new();
            for s in samples.iter().chain(&checks).chain(std::iter::once(&constant)) {
                keys.extend(s.terms().map(|(t, _)| t.clone()));
            }
            assert!(!keys.is_empty());
            for t in keys {
                let ys: Vec<Q> = samples.iter().map(|s| s.coefficient(&t).as_constant().unwrap()).collect();
                for (r, s) in fresh.iter().zip(&checks) {
                    let want = s.coefficient(&t).as_constant().unwrap();
                    assert_eq!(lagrange(&xs, &ys, &qi(*r as i64)), want, "{amb} d={d} A={a:?} r={r}");
                }
                assert_eq!(lagrange(&xs, &ys, &Q::zero()), constant.coefficient(&t).as_constant().unwrap());
            }
        }
    }
}

#[test]
fn genus_zero_four_point_evaluation() {
    let amb = point(0, 4);
    let one = Q::one();
    let mut psi = RawTerm::bare(StableGraph::trivial(0, 4, amb.beta.clone()));
    psi.leg_psi[2] = 1;
    assert_eq!(evaluate_m04_point(&StrataElement::from_raw(&amb, &psi, &one)).unwrap(), one);
    let mut kappa = RawTerm::bare(StableGraph::trivial(0, 4, amb.beta.clone()));
    kappa.kappa[0].push((1, ChowElement::basis(0)));
    assert_eq!(evaluate_m04_point(&StrataElement::from_raw(&amb, &kappa, &one)).unwrap(), one);
    for g in enumerate_graphs(&amb, 1, false).iter().filter(|g| g.num_edges() == 1) {
        assert_eq!(evaluate_m04_point(&StrataElement::graph_class(&amb, g)).unwrap(), one);
    }

    let (p, _) = compute_p_d_symbolic(&amb, 0, 1).unwrap();
    assert!(!p.is_zero());
    let monomials = p.monomials();
    assert!(monomials.len() > 1);
    for m in monomials {
        let part = p.extract_coefficient(&m);
        assert!(!part.is_zero());
        assert_eq!(evaluate_m04_point(&part).unwrap(), Q::zero(), "monomial {m:?}");
    }
}
