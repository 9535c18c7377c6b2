//! Brute-force graph routines shared by the integration tests. Nothing here
//! calls into the engine's canonical labelling or isomorphism search.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use tautring::graph::{Ambient, StableGraph, Vertex};
use tautring::target::{CurveClass, Target};

pub fn p1(g: u32, n: usize, d: u32) -> Ambient {
    Ambient::new(g, n, CurveClass(vec![d]), Arc::new(Target::projective_space(1, 1).unwrap()))
}

pub fn point(g: u32, n: usize) -> Ambient {
    Ambient::new(g, n, CurveClass(vec![0]), Arc::new(Target::point()))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of leg-fixing isomorphisms `a -> b`, counting half-edge level maps
/// (so a self-loop contributes its flip).
pub fn count_isos(a: &StableGraph, b: &StableGraph) -> u64 {
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() || a.legs.len() != b.legs.len() {
        return 0;
    }
    let ne = a.edges.len();
    let mut total = 0;
    for sigma in permutations(a.vertices.len()) {
        if (0..a.vertices.len()).any(|v| a.vertices[v] != b.vertices[sigma[v]]) {
            continue;
        }
        if a.legs.iter().zip(&b.legs).any(|(&x, &y)| sigma[x] != y) {
            continue;
        }
        for pi in permutations(ne) {
            for flips in 0u32..(1 << ne) {
                let ok = (0..ne).all(|e| {
                    let (x, y) = a.edges[e];
                    let (u, w) = b.edges[pi[e]];
                    if flips >> e & 1 == 1 {
                        (sigma[x], sigma[y]) == (w, u)
                    } else {
                        (sigma[x], sigma[y]) == (u, w)
                    }
                });
                if ok {
                    total += 1;
                }
            }
        }
    }
    total
}

pub fn isomorphic(a: &StableGraph, b: &StableGraph) -> bool {
    count_isos(a, b) > 0
}

/// Contracts edge `e`, merging its endpoints (or adding a genus for a loop).
pub fn contract(g: &StableGraph, e: usize) -> StableGraph {
    let (x, y) = g.edges[e];
    let mut vertices = g.vertices.clone();
    let mut edges: Vec<(usize, usize)> = g.edges.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
    let mut legs = g.legs.clone();
    if x == y {
        vertices[x].genus += 1;
        return StableGraph { vertices, legs, edges };
    }
    let (keep, gone) = (x.min(y), x.max(y));
    vertices[keep].genus += g.vertices[gone].genus;
    vertices[keep].beta = vertices[keep].beta.add(&g.vertices[gone].beta);
    vertices.remove(gone);
    let m = |v: usize| {
        let v = if v == gone { keep } else { v };
        if v > gone { v - 1 } else { v }
    };
    for l in &mut legs {
        *l = m(*l);
    }
    for p in &mut edges {
        *p = (m(p.0), m(p.1));
    }
    StableGraph { vertices, legs, edges }
}

fn valence(g: &StableGraph, v: usize) -> usize {
    g.legs.iter().filter(|&&l| l == v).count()
        + g.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum::<usize>()
}

fn connected(g: &StableGraph) -> bool {
    let n = g.vertices.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in &g.edges {
            for (s, t) in [(a, b), (b, a)] {
                if s == v && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Stable graphs of the ambient with at most `max_edges` edges, one per
/// isomorphism class, found by listing every labelled graph and merging
/// isomorphic ones.
pub fn brute_force_graphs(amb: &Ambient, max_edges: usize) -> Vec<StableGraph> {
    let degree = amb.beta.0.iter().sum::<u32>();
    let positive = amb.target.dim() > 0;
    let mut found: Vec<StableGraph> = Vec::new();
    for ne in 0..=max_edges {
        for nv in 1..=ne + 1 {
            let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
            let mut edge_sets: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
            multisets(&pairs, ne, 0, &mut Vec::new(), &mut edge_sets);
            let mut seen_here: Vec<StableGraph> = Vec::new();
            for edges in edge_sets {
                let h1 = ne as i64 - nv as i64 + 1;
                if h1 < 0 || h1 > i64::from(amb.g) {
                    continue;
                }
                let spare = amb.g - h1 as u32;
                for genera in compositions(spare, nv) {
                    for degs in compositions(degree, nv) {
                        if !positive && degs.iter().any(|&d| d > 0) {
                            continue;
                        }
                        for legs in tuples(nv, amb.n) {
                            let g = StableGraph {
                                vertices: (0..nv)
                                    .map(|v| Vertex { genus: genera[v], beta: CurveClass(vec![degs[v]]) })
                                    .collect(),
                                legs,
                                edges: edges.clone(),
                            };
                            if !connected(&g) {
                                continue;
                            }
                            let stable = (0..nv).all(|v| {
                                degs[v] > 0 || 2 * g.vertices[v].genus as usize + valence(&g, v) >= 3
                            });
                            if !stable {
                                continue;
                            }
                            if !seen_here.iter().any(|h| isomorphic(h, &g)) {
                                seen_here.push(g);
                            }
                        }
                    }
                }
            }
            found.extend(seen_here);
        }
    }
    found
}

fn multisets(
    items: &[(usize, usize)],
    k: usize,
    start: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut BTreeSet<Vec<(usize, usize)>>,
) {
    if cur.len() == k {
        out.insert(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        multisets(items, k, i, cur, out);
        cur.pop();
    }
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..base).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}
