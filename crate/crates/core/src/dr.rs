//! Twisted double-ramification graph sums.
//!
//! For numeric ramification data the class at modulus `r` is assembled from a
//! per-graph decoration expansion, which does not depend on `r`, and the
//! weighting moments `Σ_w Π_e (w(h) w(h'))^{s_e}`, which do. The constant term
//! in `r` is recovered by exact interpolation with held-out moduli.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coeff::{Poly, Q};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, Ambient, Half, StableGraph};
use crate::interp::{binomial, factorial, fit, fit_grid, grid_points};
use crate::par;
use crate::strata::{RawTerm, StrataElement};
use crate::target::{ChowElement, Target};

/// Number of held-out samples used to validate every fit.
pub const HELD_OUT: usize = 3;

/// Residues mod `r` on legs and on both halves of every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting {
    pub r: u64,
    pub legs: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RProvenance {
    pub moduli: Vec<u64>,
    pub held_out: Vec<u64>,
    pub degree_bound: usize,
    pub fitted_degree: usize,
    pub retried: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymbolicProvenance {
    pub eliminated: String,
    pub grid: Vec<i64>,
    pub off_grid: Vec<Vec<i64>>,
    pub samples: Vec<RProvenance>,
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `2g(v) - 2 + n` for the whole curve.
fn euler(amb: &Ambient) -> i64 {
    2 * i64::from(amb.g) - 2 + amb.n as i64
}

pub fn check_dr_data(amb: &Ambient, k: i64, a: &[i64]) -> Result<()> {
    if amb.n == 0 {
        return Err(Error::DrData("at least one marking is required".into()));
    }
    if a.len() != amb.n {
        return Err(Error::DrData(format!("expected {} ramification entries, got {}", amb.n, a.len())));
    }
    let want = amb.b() + k * euler(amb);
    let sum: i64 = a.iter().sum();
    if sum != want {
        return Err(Error::DrData(format!("sum of A is {sum}, the line bundle degree condition needs {want}")));
    }
    Ok(())
}

fn check_degree(amb: &Ambient, d: u32) -> Result<()> {
    if i64::from(d) > amb.vdim() {
        return Err(Error::DrData(format!("degree {d} exceeds the virtual dimension {}", amb.vdim())));
    }
    Ok(())
}

/// Vertex congruence right-hand sides `∫_{β(v)} c₁(S) + k(2g(v)-2+n(v))`.
fn vertex_rhs(target: &Target, graph: &StableGraph, k: i64) -> Vec<i64> {
    (0..graph.num_vertices())
        .map(|v| {
            let vx = &graph.vertices[v];
            let s = target.s_degree(&vx.beta).to_i64().expect("line bundle degree fits in i64");
            s + k * (2 * i64::from(vx.genus) - 2 + graph.valence(v) as i64)
        })
        .collect()
}

fn residue(x: i64, r: u64) -> u64 {
    x.rem_euclid(r as i64) as u64
}

/// Calls `f` on every `k`-weighting mod `r`.
pub fn for_each_weighting(
    target: &Target,
    graph: &StableGraph,
    r: u64,
    a: &[i64],
    k: i64,
    mut f: impl FnMut(&Weighting),
) {
    assert!(r >= 2, "modulus must be at least 2");
    let nv = graph.num_vertices();
    let rhs: Vec<u64> = vertex_rhs(target, graph, k).into_iter().map(|x| residue(x, r)).collect();

    // BFS spanning tree from vertex 0
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut order = vec![0];
    let mut tree = vec![false; graph.num_edges()];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for (e, &(x, y)) in graph.edges.iter().enumerate() {
            let (side, w) = if x == v && !seen[y] {
                (1, y)
            } else if y == v && !seen[x] {
                (0, x)
            } else {
                continue;
            };
            seen[w] = true;
            tree[e] = true;
            parent[w] = Some((e, side));
            order.push(w);
        }
    }
    let free: Vec<usize> = (0..graph.num_edges()).filter(|&e| !tree[e]).collect();

    let legs: Vec<u64> = a.iter().map(|&x| residue(x, r)).collect();
    let mut base = vec![0u64; nv];
    for (i, &v) in graph.legs.iter().enumerate() {
        base[v] = (base[v] + legs[i]) % r;
    }
    let mut values = vec![0u64; free.len()];
    loop {
        let mut w = Weighting { r, legs: legs.clone(), edges: vec![(0, 0); graph.num_edges()] };
        let mut sum = base.clone();
        for (j, &e) in free.iter().enumerate() {
            let x = values[j];
            let y = (r - x) % r;
            w.edges[e] = (x, y);
            let (u, v) = graph.edges[e];
            sum[u] = (sum[u] + x) % r;
            sum[v] = (sum[v] + y) % r;
        }
        for &v in order.iter().skip(1).rev() {
            let (e, side) = parent[v].unwrap();
            let here = (rhs[v] + r - sum[v]) % r;
            let there = (r - here) % r;
            let (u0, u1) = graph.edges[e];
            let other = if side == 1 { u0 } else { u1 };
            w.edges[e] = if side == 1 { (there, here) } else { (here, there) };
            sum[v] = rhs[v];
            sum[other] = (sum[other] + there) % r;
        }
        if sum[0] == rhs[0] {
            f(&w);
        }
        // odometer over the free half-edges
        let mut j = 0;
        loop {
            if j == free.len() {
                return;
            }
            values[j] += 1;
            if values[j] < r {
                break;
            }
            values[j] = 0;
            j += 1;
        }
    }
}

pub fn enumerate_weightings(target: &Target, graph: &StableGraph, r: u64, a: &[i64], k: i64) -> Vec<Weighting> {
    let mut out = Vec::new();
    for_each_weighting(target, graph, r, a, k, |w| out.push(w.clone()));
    out
}

/// One slot of the exponential expansion: degree, coefficient, how it decorates.
#[derive(Clone)]
enum Piece {
    Leg { i: usize, psi: u32, xi: u32 },
    Vertex { v: usize, eta: u32, eta11: u32, kappa1: u32 },
    Edge { e: usize, s: u32, left: u32, right: u32 },
}

/// Expansion of one graph: edge exponent vector `s` -> decorated class.
struct GraphExpansion {
    graph: StableGraph,
    h1: i64,
    aut: u64,
    parts: Vec<(Vec<u32>, StrataElement)>,
}

fn expand_graph(amb: &Ambient, graph: &StableGraph, k: i64, d: u32, a: &[i64]) -> GraphExpansion {
    let target = amb.target.as_ref();
    let ne = graph.num_edges();
    let budget = d as usize - ne;
    let c1 = target.c1_s().clone();
    let s2 = target.mul(&c1, &c1);
    let half = Q::new(1.into(), 2.into());

    let mut slots: Vec<Vec<(usize, Q, Piece)>> = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        let ai = qi(ai);
        let mut opts = Vec::new();
        for p in 0..=budget as u32 {
            for x in 0..=(budget as u32 - p) {
                if (p > 0 || x > 0) && ai.is_zero() {
                    continue;
                }
                if x > 0 && target.power(&c1, x).is_zero() {
                    continue;
                }
                let c = pow(&(&ai * &ai * &half), p) / factorial(p) * pow(&ai, x) / factorial(x);
                opts.push(((p + x) as usize, c, Piece::Leg { i, psi: p, xi: x }));
            }
        }
        slots.push(opts);
    }
    for v in 0..graph.num_vertices() {
        let mut opts = Vec::new();
        for i in 0..=budget as u32 {
            if i > 0 && s2.is_zero() {
                continue;
            }
            for j in 0..=(budget as u32 - i) {
                if j > 0 && (k == 0 || c1.is_zero()) {
                    continue;
                }
                for l in 0..=(budget as u32 - i - j) {
                    if l > 0 && k == 0 {
                        continue;
                    }
                    let c = pow(&-half.clone(), i) / factorial(i) * pow(&qi(-k), j) / factorial(j)
                        * pow(&(qi(-k * k) * &half), l)
                        / factorial(l);
                    opts.push(((i + j + l) as usize, c, Piece::Vertex { v, eta: i, eta11: j, kappa1: l }));
                }
            }
        }
        slots.push(opts);
    }
    for e in 0..ne {
        let mut opts = Vec::new();
        for s in 1..=(budget as u32 + 1) {
            let sign = if s % 2 == 1 { Q::one() } else { -Q::one() };
            let head = sign / (pow(&qi(2), s) * factorial(s));
            for left in 0..s {
                let c = &head * binomial(s - 1, left);
                opts.push(((s - 1) as usize, c, Piece::Edge { e, s, left, right: s - 1 - left }));
            }
        }
        slots.push(opts);
    }

    let mut by_s: BTreeMap<Vec<u32>, StrataElement> = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(slots.len());
    collect(amb, graph, &slots, budget, &mut chosen, &mut by_s, &c1, &s2);
    GraphExpansion {
        graph: graph.clone(),
        h1: graph.first_betti(),
        aut: graph.automorphism_order(),
        parts: by_s.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
    }
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

#[allow(clippy::too_many_arguments)]
fn collect(
    amb: &Ambient,
    graph: &StableGraph,
    slots: &[Vec<(usize, Q, Piece)>],
    budget: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<u32>, StrataElement>,
    c1: &ChowElement,
    s2: &ChowElement,
) {
    let depth = chosen.len();
    if depth == slots.len() {
        if budget != 0 {
            return;
        }
        let target = amb.target.as_ref();
        let mut raw = RawTerm::bare(graph.clone());
        let mut coeff = Q::one();
        let mut svec = vec![0u32; graph.num_edges()];
        for (slot, &j) in slots.iter().zip(chosen.iter()) {
            let (_, c, piece) = &slot[j];
            coeff *= c;
            match *piece {
                Piece::Leg { i, psi, xi } => {
                    raw.leg_psi[i] += psi;
                    if xi > 0 {
                        raw.leg_class[i] = target.power(c1, xi);
                    }
                }
                Piece::Vertex { v, eta, eta11, kappa1 } => {
                    for _ in 0..eta {
                        raw.kappa[v].push((-1, s2.clone()));
                    }
                    for _ in 0..eta11 {
                        raw.kappa[v].push((0, c1.clone()));
                    }
                    for _ in 0..kappa1 {
                        raw.kappa[v].push((1, ChowElement::basis(0)));
                    }
                }
                Piece::Edge { e, s, left, right } => {
                    svec[e] = s;
                    raw.edge_psi[e] = (left, right);
                }
            }
        }
        if coeff.is_zero() {
            return;
        }
        out.entry(svec)
            .or_insert_with(|| StrataElement::zero(amb))
            .add_raw(&raw, &Poly::constant(coeff));
        return;
    }
    for (j, (deg, _, _)) in slots[depth].iter().enumerate() {
        if *deg > budget {
            continue;
        }
        chosen.push(j);
        collect(amb, graph, slots, budget - deg, chosen, out, c1, s2);
        chosen.pop();
    }
}

/// `Σ_w Π_e (w(h) w(h'))^{s_e}` for every requested exponent vector.
fn moments(target: &Target, graph: &StableGraph, r: u64, a: &[i64], k: i64, svecs: &[&Vec<u32>]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); svecs.len()];
    let smax = svecs.iter().flat_map(|s| s.iter().copied()).max().unwrap_or(0) as usize;
    for_each_weighting(target, graph, r, a, k, |w| {
        let powers: Vec<Vec<BigInt>> = w
            .edges
            .iter()
            .map(|&(x, y)| {
                let p = BigInt::from(x) * BigInt::from(y);
                let mut v = vec![BigInt::one()];
                for j in 1..=smax {
                    let next = &v[j - 1] * &p;
                    v.push(next);
                }
                v
            })
            .collect();
        for (slot, s) in acc.iter_mut().zip(svecs) {
            let mut prod = BigInt::one();
            for (e, &se) in s.iter().enumerate() {
                prod *= &powers[e][se as usize];
            }
            *slot += prod;
        }
    });
    acc
}

/// Numeric request: everything needed to evaluate the graph sum at any `r`.
struct Prepared {
    ambient: Ambient,
    k: i64,
    a: Vec<i64>,
    expansions: Vec<GraphExpansion>,
}

fn prepare(amb: &Ambient, k: i64, d: u32, a: &[i64]) -> Result<Prepared> {
    check_dr_data(amb, k, a)?;
    check_degree(amb, d)?;
    let graphs = enumerate_graphs(amb, d as usize, false);
    let expansions: Vec<GraphExpansion> = par::map(&graphs, |g| expand_graph(amb, g, k, d, a))
        .into_iter()
        .filter(|x| !x.parts.is_empty())
        .collect();
    Ok(Prepared { ambient: amb.clone(), k, a: a.to_vec(), expansions })
}

impl Prepared {
    fn at(&self, r: u64) -> StrataElement {
        let target = self.ambient.target.as_ref();
        let pieces = par::map(&self.expansions, |x| {
            let svecs: Vec<&Vec<u32>> = x.parts.iter().map(|(s, _)| s).collect();
            let m = moments(target, &x.graph, r, &self.a, self.k, &svecs);
            let scale = Q::new(1.into(), BigInt::from(r).pow(x.h1 as u32) * BigInt::from(x.aut));
            let mut out = StrataElement::zero(&self.ambient);
            for ((_, el), mv) in x.parts.iter().zip(m) {
                if mv.is_zero() {
                    continue;
                }
                out.add_assign(&el.scale(&(Q::from_integer(mv) * &scale)));
            }
            out
        });
        let mut out = StrataElement::zero(&self.ambient);
        for p in &pieces {
            out.add_assign(p);
        }
        out
    }

    fn degree_bound(&self, d: u32) -> usize {
        self.expansions
            .iter()
            .map(|x| 2 * d as usize * x.graph.num_edges() + x.h1 as usize)
            .max()
            .unwrap_or(0)
    }
}

/// The degree-`d` graph sum at modulus `r`.
pub fn compute_p_d_r(amb: &Ambient, k: i64, d: u32, a: &[i64], r: u64) -> Result<StrataElement> {
    if r < 2 {
        return Err(Error::DrData("modulus must be at least 2".into()));
    }
    Ok(prepare(amb, k, d, a)?.at(r))
}

/// First sampled modulus.
pub fn first_modulus(amb: &Ambient, k: i64, d: u32, a: &[i64]) -> u64 {
    let s: i64 = a.iter().map(|x| x.abs()).sum::<i64>() + amb.b().abs() + k.abs() * euler(amb).abs() + i64::from(d);
    (2 * s + 3) as u64
}

/// Fits every coefficient through `samples`, checks the held-out ones, and
/// returns the constant terms together with the largest fitted degree.
fn fit_constant_terms(samples: &[(u64, StrataElement)], n_fit: usize) -> Option<(StrataElement, usize)> {
    let amb = &samples[0].1.ambient;
    let mut keys = std::collections::BTreeSet::new();
    for (_, el) in samples {
        keys.extend(el.terms().map(|(t, _)| t.clone()));
    }
    let xs: Vec<Q> = samples.iter().map(|(r, _)| Q::from_integer((*r).into())).collect();
    let mut out = StrataElement::zero(amb);
    let mut max_deg = 0;
    for t in keys {
        let ys: Vec<Q> = samples
            .iter()
            .map(|(_, el)| el.coefficient(&t).as_constant().unwrap_or_else(Q::zero))
            .collect();
        let c = fit(&xs[..n_fit], &ys[..n_fit]);
        for i in n_fit..xs.len() {
            if crate::interp::eval(&c, &xs[i]) != ys[i] {
                return None;
            }
        }
        max_deg = max_deg.max(crate::interp::degree(&c));
        out.add_term(t, Poly::constant(c[0].clone()));
    }
    Some((out, max_deg))
}

/// Constant term in `r` of the degree-`d` graph sum.
pub fn interpolate_in_r(amb: &Ambient, k: i64, d: u32, a: &[i64]) -> Result<(StrataElement, RProvenance)> {
    let prep = prepare(amb, k, d, a)?;
    let r0 = first_modulus(amb, k, d, a);
    let bound = prep.degree_bound(d);
    let mut samples: Vec<(u64, StrataElement)> = Vec::new();
    for (attempt, deg) in [bound, 2 * bound.max(1)].into_iter().enumerate() {
        let needed = deg + 1 + HELD_OUT;
        while samples.len() < needed {
            let r = r0 + samples.len() as u64;
            samples.push((r, prep.at(r)));
        }
        if let Some((el, fitted)) = fit_constant_terms(&samples[..needed], deg + 1) {
            let moduli: Vec<u64> = samples[..needed].iter().map(|(r, _)| *r).collect();
            return Ok((
                el,
                RProvenance {
                    moduli: moduli[..deg + 1].to_vec(),
                    held_out: moduli[deg + 1..].to_vec(),
                    degree_bound: deg,
                    fitted_degree: fitted,
                    retried: attempt > 0,
                },
            ));
        }
    }
    Err(Error::Interpolation(format!(
        "graph sum is not polynomial in r of degree <= {} on moduli from {r0}",
        2 * bound.max(1)
    )))
}

/// Symbol names for the free ramification variables.
pub fn free_symbols(n: usize, eliminate: usize) -> Vec<String> {
    (0..n).filter(|&i| i != eliminate).map(|i| format!("a{}", i + 1)).collect()
}

/// The class with coefficients polynomial in the free `a_i`; the last marking is
/// eliminated through the degree condition.
pub fn compute_p_d_symbolic(amb: &Ambient, k: i64, d: u32) -> Result<(StrataElement, SymbolicProvenance)> {
    compute_p_d_symbolic_eliminating(amb, k, d, amb.n.saturating_sub(1))
}

pub fn compute_p_d_symbolic_eliminating(
    amb: &Ambient,
    k: i64,
    d: u32,
    eliminate: usize,
) -> Result<(StrataElement, SymbolicProvenance)> {
    if amb.n == 0 || eliminate >= amb.n {
        return Err(Error::DrData("symbolic data needs a marking to eliminate".into()));
    }
    check_degree(amb, d)?;
    let free = amb.n - 1;
    let total = amb.b() + k * euler(amb);
    let full = |vals: &[i64]| -> Vec<i64> {
        let mut a = Vec::with_capacity(amb.n);
        let mut it = vals.iter();
        for i in 0..amb.n {
            if i == eliminate {
                a.push(total - vals.iter().sum::<i64>());
            } else {
                a.push(*it.next().unwrap());
            }
        }
        a
    };
    let grid: Vec<i64> = (0..=2 * i64::from(d)).collect();
    let nodes: Vec<Q> = grid.iter().map(|&x| qi(x)).collect();
    let points: Vec<Vec<i64>> = grid_points(&nodes, free)
        .iter()
        .map(|p| p.iter().map(|x| x.to_integer().to_i64().unwrap()).collect())
        .collect();
    let off_grid: Vec<Vec<i64>> = (0..HELD_OUT as i64)
        .map(|j| (0..free as i64).map(|i| 2 * i64::from(d) + 1 + j + 2 * i).collect())
        .collect();
    let all: Vec<Vec<i64>> = points.iter().chain(off_grid.iter()).cloned().collect();
    let results: Vec<Result<(StrataElement, RProvenance)>> = par::map(&all, |p| interpolate_in_r(amb, k, d, &full(p)));
    let mut values = Vec::with_capacity(results.len());
    let mut samples = Vec::with_capacity(results.len());
    for r in results {
        let (el, prov) = r?;
        values.push(el);
        samples.push(prov);
    }
    let (on, off) = values.split_at(points.len());

    let symbols = free_symbols(amb.n, eliminate);
    let mut keys = std::collections::BTreeSet::new();
    for el in &values {
        keys.extend(el.terms().map(|(t, _)| t.clone()));
    }
    let mut out = StrataElement::with_symbols(amb, symbols.clone());
    for t in keys {
        let ys: Vec<Q> = on.iter().map(|el| el.coefficient(&t).as_constant().unwrap_or_else(Q::zero)).collect();
        let p = fit_grid(&nodes, free, &ys);
        for (pt, el) in off_grid.iter().zip(off) {
            let at: Vec<Q> = pt.iter().map(|&x| qi(x)).collect();
            let want = el.coefficient(&t).as_constant().unwrap_or_else(Q::zero);
            if p.eval(&at) != want {
                return Err(Error::Interpolation(format!(
                    "symbolic fit disagrees off the grid at {pt:?} for {}",
                    crate::latex::term_plain(amb.target.as_ref(), &t)
                )));
            }
        }
        out.add_term(t, p);
    }
    let eliminated = format!("a{}", eliminate + 1);
    Ok((out, SymbolicProvenance { eliminated, grid, off_grid, samples }))
}

/// Parts of the symbolic class graded by the scaling `a_i -> m a_i`, `S -> S^m`.
/// Computed by sampling the scaled bundles and interpolating in `m`.
pub fn m_graded_parts(amb: &Ambient, k: i64, d: u32) -> Result<BTreeMap<u32, StrataElement>> {
    if k != 0 {
        return Err(Error::Unsupported("the scaling grading needs k = 0".into()));
    }
    let bound = 2 * d as usize;
    let ms: Vec<i64> = (1..=(bound + 1 + HELD_OUT) as i64).collect();
    let results = par::map(&ms, |&m| {
        let scaled = Ambient::new(amb.g, amb.n, amb.beta.clone(), Arc::new(amb.target.with_scaled_bundle(m)));
        compute_p_d_symbolic(&scaled, k, d).map(|(el, _)| el)
    });
    let mut sampled = Vec::with_capacity(ms.len());
    for r in results {
        sampled.push(r?);
    }
    let symbols = sampled[0].symbols.clone();
    // substitute a -> m a
    let scaled: Vec<BTreeMap<(crate::strata::DecoratedTerm, Vec<u32>), Q>> = sampled
        .iter()
        .zip(&ms)
        .map(|(el, &m)| {
            let mut map = BTreeMap::new();
            for (t, c) in el.terms() {
                for (mono, v) in c.terms() {
                    let deg: u32 = mono.iter().sum();
                    map.insert((t.clone(), mono.clone()), v * pow(&qi(m), deg));
                }
            }
            map
        })
        .collect();
    let mut keys = std::collections::BTreeSet::new();
    for s in &scaled {
        keys.extend(s.keys().cloned());
    }
    let xs: Vec<Q> = ms.iter().map(|&m| qi(m)).collect();
    let mut parts: BTreeMap<u32, StrataElement> = BTreeMap::new();
    for key in keys {
        let ys: Vec<Q> = scaled.iter().map(|s| s.get(&key).cloned().unwrap_or_else(Q::zero)).collect();
        let c = fit(&xs[..bound + 1], &ys[..bound + 1]);
        for i in bound + 1..xs.len() {
            if crate::interp::eval(&c, &xs[i]) != ys[i] {
                return Err(Error::Interpolation("scaling samples are not polynomial in m".into()));
            }
        }
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            parts
                .entry(j as u32)
                .or_insert_with(|| StrataElement::with_symbols(amb, symbols.clone()))
                .add_term(key.0.clone(), Poly::monomial(key.1.clone(), cj.clone()));
        }
    }
    Ok(parts)
}

/// Term-wise half-edge check used by tests: the number of weightings predicted
/// by the first Betti number.
pub fn expected_weighting_count(graph: &StableGraph, r: u64) -> BigInt {
    BigInt::from(r).pow(graph.first_betti() as u32)
}

#[allow(dead_code)]
fn half_value(w: &Weighting, h: Half) -> u64 {
    match h {
        Half::Leg(i) => w.legs[i],
        Half::Edge(e, 0) => w.edges[e].0,
        Half::Edge(e, _) => w.edges[e].1,
    }
}

/// Checks every congruence of a weighting.
pub fn is_weighting(target: &Target, graph: &StableGraph, w: &Weighting, a: &[i64], k: i64) -> bool {
    let r = w.r;
    let legs_ok = a.iter().zip(&w.legs).all(|(&ai, &wi)| residue(ai, r) == wi && wi < r);
    let edges_ok = w.edges.iter().all(|&(x, y)| x < r && y < r && (x + y) % r == 0);
    let rhs = vertex_rhs(target, graph, k);
    let vertices_ok = (0..graph.num_vertices()).all(|v| {
        let s: u64 = graph.half_edges_at(v).into_iter().map(|h| half_value(w, h)).sum();
        s % r == residue(rhs[v], r)
    });
    legs_ok && edges_ok && vertices_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::loop_graph;
    use crate::target::CurveClass;

    fn point(g: u32, n: usize) -> Ambient {
        Ambient::new(g, n, CurveClass(vec![0]), Arc::new(Target::point()))
    }

    #[test]
    fn data_check() {
        let p1 = Arc::new(Target::projective_space(1, 1).unwrap());
        let amb = Ambient::new(0, 2, CurveClass(vec![1]), p1);
        assert!(check_dr_data(&amb, 0, &[3, -2]).is_ok());
        assert!(check_dr_data(&amb, 0, &[1, 1]).is_err());
        assert!(check_dr_data(&point(0, 4), 0, &[5, -5, 0, 0]).is_ok());
    }

    #[test]
    fn loop_weightings_and_constant_term() {
        let amb = point(1, 1);
        let lp = loop_graph(&amb);
        let ws = enumerate_weightings(&amb.target, &lp, 7, &[0], 0);
        assert_eq!(ws.len(), 7);
        assert!(ws.iter().all(|w| is_weighting(&amb.target, &lp, w, &[0], 0)));
        let (p, prov) = interpolate_in_r(&amb, 0, 1, &[0]).unwrap();
        assert_eq!(prov.held_out.len(), HELD_OUT);
        let want = StrataElement::graph_class(&amb, &lp).scale(&Q::new((-1).into(), 24.into()));
        assert_eq!(p, want);
    }

    #[test]
    fn degree_zero_is_fundamental() {
        let amb = point(0, 3);
        let (p, _) = interpolate_in_r(&amb, 0, 0, &[1, -1, 0]).unwrap();
        assert_eq!(p, StrataElement::fundamental(&amb));
    }
}
