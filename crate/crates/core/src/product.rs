//! Product of decorated strata classes.
//!
//! A common degeneration of `Γ_A` and `Γ_B` is built by substituting a graph for
//! every vertex of `Γ_A` (the edges so added must all be `B`-edges), and the
//! `B`-structures on the result are found by contracting edge subsets and
//! matching against `Γ_B`. The substituted graphs are weighted by their
//! automorphisms with legs fixed, which reproduces the sum over isomorphism
//! classes of generic `(A, B)`-structures.

use num_traits::One;

use crate::coeff::{Poly, Q};
use crate::error::Result;
use crate::graph::{enumerate_graphs, Ambient, StableGraph};
use crate::par;
use crate::strata::{DecoratedTerm, RawTerm, StrataElement};
use crate::target::{ChowElement, Target};

/// A degeneration together with its structure maps to both factors.
struct Structure<'a> {
    graph: &'a StableGraph,
    /// vertex of `Γ` -> vertex of `Γ_A`
    a_vertex: &'a [usize],
    /// edge of `Γ` -> edge of `Γ_A` with side swap flag
    a_edge: &'a [Option<(usize, bool)>],
    b_vertex: Vec<usize>,
    b_edge: Vec<Option<(usize, bool)>>,
}

pub fn multiply(x: &StrataElement, y: &StrataElement) -> Result<StrataElement> {
    x.check_compatible(y)?;
    let target = x.target();
    let vdim = x.vdim();
    let pairs: Vec<(&DecoratedTerm, &Poly, &DecoratedTerm, &Poly)> = x
        .terms()
        .flat_map(|(ta, ca)| y.terms().map(move |(tb, cb)| (ta, ca, tb, cb)))
        .filter(|(ta, _, tb, _)| ta.degree(target) + tb.degree(target) <= vdim)
        .collect();
    let pieces = par::map(&pairs, |(ta, ca, tb, cb)| {
        let coeff = *ca * *cb;
        let mut part = StrataElement::zero(&x.ambient);
        for (raw, w) in term_product(&x.ambient, ta, tb) {
            part.add_raw(&raw, &coeff.scale(&w));
        }
        part
    });
    let symbols = if x.symbols.len() >= y.symbols.len() { x.symbols.clone() } else { y.symbols.clone() };
    let mut out = StrataElement::with_symbols(&x.ambient, symbols);
    for p in &pieces {
        out.add_assign(p);
    }
    Ok(out)
}

/// Raw product terms of two decorated graphs with their rational weights.
pub fn term_product(amb: &Ambient, a: &DecoratedTerm, b: &DecoratedTerm) -> Vec<(RawTerm, Q)> {
    let target = &amb.target;
    let ga = &a.graph;
    let gb = &b.graph;
    let kb = gb.num_edges();
    let options: Vec<Vec<(StableGraph, Q)>> = (0..ga.num_vertices())
        .map(|v| {
            let vx = &ga.vertices[v];
            let local = Ambient::new(vx.genus, ga.valence(v), vx.beta.clone(), target.clone());
            enumerate_graphs(&local, kb, false)
                .iter()
                .map(|g| (g.clone(), Q::new(1.into(), g.automorphism_order().into())))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut choice = vec![0usize; options.len()];
    'outer: loop {
        let inner: usize = choice.iter().enumerate().map(|(v, &c)| options[v][c].0.num_edges()).sum();
        if inner <= kb {
            let parts: Vec<StableGraph> = choice.iter().enumerate().map(|(v, &c)| options[v][c].0.clone()).collect();
            let weight: Q = choice.iter().enumerate().map(|(v, &c)| options[v][c].1.clone()).product();
            let sub = ga.substitute(&parts);
            let gamma = &sub.graph;
            let mut a_vertex = vec![0; gamma.num_vertices()];
            for (v, ws) in sub.vertex.iter().enumerate() {
                for &w in ws {
                    a_vertex[w] = v;
                }
            }
            let ne = gamma.num_edges();
            let ea = ga.num_edges();
            let a_edge: Vec<Option<(usize, bool)>> =
                (0..ne).map(|e| if e < ea { Some((e, false)) } else { None }).collect();
            // B-edges: all inner edges plus kb - inner of the outer ones
            for subset in subsets(ea, kb - inner) {
                let mut keep = vec![false; ne];
                for &e in &subset {
                    keep[e] = true;
                }
                for k in keep.iter_mut().skip(ea) {
                    *k = true;
                }
                let c = gamma.contract_edges(&keep);
                for iso in c.graph.isomorphisms(gb) {
                    let b_vertex: Vec<usize> = c.vertex.iter().map(|&w| iso.vertex[w]).collect();
                    let b_edge: Vec<Option<(usize, bool)>> =
                        c.edge.iter().map(|m| m.map(|ce| iso.edge[ce])).collect();
                    let s = Structure { graph: gamma, a_vertex: &a_vertex, a_edge: &a_edge, b_vertex, b_edge };
                    for (raw, w) in decorate(target, &s, a, b) {
                        out.push((raw, w * &weight));
                    }
                }
            }
        }
        // advance the mixed-radix counter
        for v in 0..choice.len() {
            choice[v] += 1;
            if choice[v] < options[v].len() {
                continue 'outer;
            }
            choice[v] = 0;
        }
        break;
    }
    out
}

/// `k`-element subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn decorate(target: &Target, s: &Structure<'_>, a: &DecoratedTerm, b: &DecoratedTerm) -> Vec<(RawTerm, Q)> {
    let gamma = s.graph;
    let mut raw = RawTerm::bare(gamma.clone());
    for i in 0..gamma.num_legs() {
        raw.leg_psi[i] = a.dec.leg_psi[i] + b.dec.leg_psi[i];
        raw.leg_class[i] =
            target.mul(&ChowElement::basis(a.dec.leg_class[i]), &ChowElement::basis(b.dec.leg_class[i]));
    }
    let mut both = Vec::new();
    for e in 0..gamma.num_edges() {
        let mut class = ChowElement::basis(0);
        for (map, t) in [(&s.a_edge[e], a), (&s.b_edge[e], b)] {
            if let Some((f, flip)) = *map {
                let (p0, p1) = t.dec.edge_psi[f];
                let (p0, p1) = if flip { (p1, p0) } else { (p0, p1) };
                raw.edge_psi[e].0 += p0;
                raw.edge_psi[e].1 += p1;
                class = target.mul(&class, &ChowElement::basis(t.dec.edge_class[f]));
            }
        }
        raw.edge_class[e] = class;
        if s.a_edge[e].is_some() && s.b_edge[e].is_some() {
            both.push(e);
        }
    }

    // κ factors: every entry picks a vertex in the preimage of its vertex
    let mut kappa_sets: Vec<Vec<Vec<(i32, ChowElement)>>> = vec![vec![Vec::new(); gamma.num_vertices()]];
    for (t, map) in [(a, s.a_vertex), (b, &s.b_vertex[..])] {
        for (u, entries) in t.dec.kappa.iter().enumerate() {
            let pre: Vec<usize> = (0..gamma.num_vertices()).filter(|&w| map[w] == u).collect();
            for &(k, c) in entries {
                let mut next = Vec::with_capacity(kappa_sets.len() * pre.len());
                for ks in &kappa_sets {
                    for &w in &pre {
                        let mut ks2 = ks.clone();
                        ks2[w].push((k, ChowElement::basis(c)));
                        next.push(ks2);
                    }
                }
                kappa_sets = next;
            }
        }
    }

    // excess factor ∏ -(ψ_h + ψ_h') over doubly coloured edges
    let mut excess: Vec<(Vec<(u32, u32)>, Q)> = vec![(raw.edge_psi.clone(), Q::one())];
    for &e in &both {
        let mut next = Vec::with_capacity(excess.len() * 2);
        for (psi, c) in &excess {
            for side in 0..2 {
                let mut p = psi.clone();
                if side == 0 {
                    p[e].0 += 1;
                } else {
                    p[e].1 += 1;
                }
                next.push((p, -c.clone()));
            }
        }
        excess = next;
    }

    let mut out = Vec::with_capacity(kappa_sets.len() * excess.len());
    for ks in &kappa_sets {
        for (psi, c) in &excess {
            let mut r = raw.clone();
            r.kappa = ks.clone();
            r.edge_psi = psi.clone();
            out.push((r, c.clone()));
        }
    }
    out
}

/// `x^e` under the strata product.
pub fn power(x: &StrataElement, e: u32) -> Result<StrataElement> {
    let mut out = StrataElement::fundamental(&x.ambient);
    for _ in 0..e {
        out = multiply(&out, x)?;
    }
    Ok(out)
}
