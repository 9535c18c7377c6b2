//! X-valued stable graphs: validation, canonical labelling, automorphisms,
//! enumeration, contraction and isomorphism search.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::target::{enumerate_splittings, CurveClass, TargetRef};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub genus: u32,
    pub beta: CurveClass,
}

/// A half-edge: either leg `i` (zero-based) or side `s` of edge `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    Leg(usize),
    Edge(usize, u8),
}

/// Connected multigraph with genus/class labelled vertices. Leg `i` sits at
/// `legs[i]`; edge `e` joins `edges[e].0` (side 0) to `edges[e].1` (side 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableGraph {
    pub vertices: Vec<Vertex>,
    pub legs: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// The moduli problem a graph or class lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub g: u32,
    pub n: usize,
    pub beta: CurveClass,
    pub target: TargetRef,
}

impl Ambient {
    pub fn new(g: u32, n: usize, beta: CurveClass, target: TargetRef) -> Self {
        Self { g, n, beta, target }
    }

    /// `(1-g)(dim X - 3) + ∫_β c1(TX) + n`
    pub fn vdim(&self) -> i64 {
        let tx: i64 = self.target.tx_degree(&self.beta).try_into().expect("small curve degree");
        (1 - i64::from(self.g)) * (i64::from(self.target.dim()) - 3) + tx + self.n as i64
    }

    /// `∫_β c1(S)`
    pub fn b(&self) -> i64 {
        self.target.s_degree(&self.beta).try_into().expect("small curve degree")
    }

    pub fn is_stable_range(&self) -> bool {
        2 * self.g as i64 - 2 + self.n as i64 > 0
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, n={}, beta={}, {})", self.g, self.n, self.beta, self.target.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexData(String),
    Legs(String),
    Connectivity,
    Genus { expected: u32, found: i64 },
    Stability { vertex: usize },
    Degree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexData(s) => write!(f, "vertex data: {s}"),
            Violation::Legs(s) => write!(f, "leg assignment: {s}"),
            Violation::Connectivity => write!(f, "connectivity: graph is disconnected"),
            Violation::Genus { expected, found } => {
                write!(f, "genus condition: expected {expected}, found {found}")
            }
            Violation::Stability { vertex } => write!(f, "stability condition fails at vertex {vertex}"),
            Violation::Degree => write!(f, "degree condition: vertex classes do not sum to beta"),
        }
    }
}

/// Old-to-new index maps produced by canonicalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub vertex: Vec<usize>,
    /// old edge -> (new edge, whether its sides were swapped)
    pub edge: Vec<(usize, bool)>,
}

/// A graph isomorphism `self -> other` fixing legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub vertex: Vec<usize>,
    pub edge: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: StableGraph,
    pub vertex: Vec<usize>,
    /// old edge -> new edge index (same orientation) if kept
    pub edge: Vec<Option<usize>>,
}

#[derive(Clone, Debug)]
pub struct Substitution {
    pub graph: StableGraph,
    /// `vertex[v][w]` is the new index of local vertex `w` of the part at `v`
    pub vertex: Vec<Vec<usize>>,
    /// `inner_edge[v][e]` is the new index of local edge `e` of the part at `v`
    pub inner_edge: Vec<Vec<usize>>,
}

impl StableGraph {
    pub fn trivial(g: u32, n: usize, beta: CurveClass) -> Self {
        Self { vertices: vec![Vertex { genus: g, beta }], legs: vec![0; n], edges: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn first_betti(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn total_beta(&self) -> CurveClass {
        let rank = self.vertices.first().map_or(0, |v| v.beta.rank());
        self.vertices.iter().fold(CurveClass::zero(rank), |acc, v| acc.add(&v.beta))
    }

    pub fn total_genus(&self) -> i64 {
        self.vertices.iter().map(|v| i64::from(v.genus)).sum::<i64>() + self.first_betti()
    }

    pub fn vertex_of(&self, h: Half) -> usize {
        match h {
            Half::Leg(i) => self.legs[i],
            Half::Edge(e, 0) => self.edges[e].0,
            Half::Edge(e, _) => self.edges[e].1,
        }
    }

    /// Half-edges at `v`: legs by label, then edge sides by (edge, side).
    pub fn half_edges_at(&self, v: usize) -> Vec<Half> {
        let mut out: Vec<Half> = (0..self.legs.len()).filter(|&i| self.legs[i] == v).map(Half::Leg).collect();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(Half::Edge(e, 0));
            }
            if b == v {
                out.push(Half::Edge(e, 1));
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&w| w == v).count()
            + self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum::<usize>()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Stability at one vertex: a vertex with zero class must be a stable curve.
    pub fn vertex_is_stable(&self, v: usize) -> bool {
        !self.vertices[v].beta.is_zero() || 2 * self.vertices[v].genus as i64 - 2 + self.valence(v) as i64 > 0
    }

    pub fn validate(&self, amb: &Ambient) -> Result<(), Violation> {
        if self.vertices.is_empty() {
            return Err(Violation::VertexData("no vertices".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if !amb.target.admits(&v.beta) {
                return Err(Violation::VertexData(format!("inadmissible class at vertex {i}")));
            }
        }
        if self.legs.len() != amb.n {
            return Err(Violation::Legs(format!("expected {} legs, found {}", amb.n, self.legs.len())));
        }
        let nv = self.vertices.len();
        if self.legs.iter().any(|&v| v >= nv) || self.edges.iter().any(|&(a, b)| a >= nv || b >= nv) {
            return Err(Violation::Legs("half-edge attached to a missing vertex".into()));
        }
        if !self.is_connected() {
            return Err(Violation::Connectivity);
        }
        let found = self.total_genus();
        if found != i64::from(amb.g) {
            return Err(Violation::Genus { expected: amb.g, found });
        }
        if let Some(v) = (0..nv).find(|&v| !self.vertex_is_stable(v)) {
            return Err(Violation::Stability { vertex: v });
        }
        if self.total_beta() != amb.beta {
            return Err(Violation::Degree);
        }
        Ok(())
    }

    pub fn canonicalize(&self) -> (StableGraph, Relabeling) {
        let unit_v = vec![(); self.num_vertices()];
        let unit_h = vec![((), ()); self.num_edges()];
        let unit_e = vec![(); self.num_edges()];
        let c = canonical_form(self, &unit_v, &unit_h, &unit_e);
        (c.graph, c.relabel)
    }

    pub fn canonical(&self) -> StableGraph {
        self.canonicalize().0
    }

    pub fn automorphism_order(&self) -> u64 {
        let unit_v = vec![(); self.num_vertices()];
        let unit_h = vec![((), ()); self.num_edges()];
        let unit_e = vec![(); self.num_edges()];
        automorphism_count(self, &unit_v, &unit_h, &unit_e)
    }

    /// Contracts every edge whose `keep` flag is false.
    pub fn contract_edges(&self, keep: &[bool]) -> Contraction {
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        let mut extra_genus = vec![0u32; nv];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if keep[e] {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                extra_genus[ra] += 1;
            } else {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi] = lo;
                extra_genus[lo] += extra_genus[hi];
                extra_genus[hi] = 0;
            }
        }
        let mut new_index = vec![usize::MAX; nv];
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut map = vec![0; nv];
        for v in 0..nv {
            let r = find(&mut parent, v);
            if new_index[r] == usize::MAX {
                new_index[r] = vertices.len();
                vertices.push(Vertex { genus: extra_genus[r], beta: CurveClass::zero(self.vertices[v].beta.rank()) });
            }
            let nvx = &mut vertices[new_index[r]];
            nvx.genus += self.vertices[v].genus;
            nvx.beta = nvx.beta.add(&self.vertices[v].beta);
            map[v] = new_index[r];
        }
        let mut edges = Vec::new();
        let mut edge_map = vec![None; self.edges.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if keep[e] {
                edge_map[e] = Some(edges.len());
                edges.push((map[a], map[b]));
            }
        }
        Contraction {
            graph: StableGraph { vertices, legs: self.legs.iter().map(|&v| map[v]).collect(), edges },
            vertex: map,
            edge: edge_map,
        }
    }

    /// Replaces each vertex `v` by `parts[v]`, whose legs are the half-edges at `v`
    /// in `half_edges_at` order. Outer edges keep their indices; inner edges follow.
    pub fn substitute(&self, parts: &[StableGraph]) -> Substitution {
        assert_eq!(parts.len(), self.vertices.len());
        let mut vertices = Vec::new();
        let mut vmap = Vec::with_capacity(parts.len());
        for part in parts {
            let base = vertices.len();
            vertices.extend(part.vertices.iter().cloned());
            vmap.push((0..part.vertices.len()).map(|w| base + w).collect::<Vec<_>>());
        }
        let mut attach: HashMap<Half, usize> = HashMap::new();
        for (v, part) in parts.iter().enumerate() {
            let halves = self.half_edges_at(v);
            assert_eq!(halves.len(), part.legs.len(), "part leg count must match valence");
            for (p, h) in halves.into_iter().enumerate() {
                attach.insert(h, vmap[v][part.legs[p]]);
            }
        }
        let legs = (0..self.legs.len()).map(|i| attach[&Half::Leg(i)]).collect();
        let mut edges: Vec<(usize, usize)> =
            (0..self.edges.len()).map(|e| (attach[&Half::Edge(e, 0)], attach[&Half::Edge(e, 1)])).collect();
        let mut inner = Vec::with_capacity(parts.len());
        for (v, part) in parts.iter().enumerate() {
            let mut ids = Vec::new();
            for &(a, b) in &part.edges {
                ids.push(edges.len());
                edges.push((vmap[v][a], vmap[v][b]));
            }
            inner.push(ids);
        }
        Substitution { graph: StableGraph { vertices, legs, edges }, vertex: vmap, inner_edge: inner }
    }

    /// All leg-fixing isomorphisms `self -> other`.
    pub fn isomorphisms(&self, other: &StableGraph) -> Vec<Iso> {
        if self.vertices.len() != other.vertices.len()
            || self.edges.len() != other.edges.len()
            || self.legs.len() != other.legs.len()
        {
            return Vec::new();
        }
        let nv = self.vertices.len();
        let mut forced = vec![None; nv];
        for (i, &v) in self.legs.iter().enumerate() {
            match forced[v] {
                None => forced[v] = Some(other.legs[i]),
                Some(w) if w != other.legs[i] => return Vec::new(),
                _ => {}
            }
        }
        let pair_count = |g: &StableGraph, a: usize, b: usize| {
            g.edges.iter().filter(|&&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)).count()
        };
        let mut out = Vec::new();
        let mut sigma = vec![usize::MAX; nv];
        let mut used = vec![false; nv];
        fn rec(
            v: usize,
            g1: &StableGraph,
            g2: &StableGraph,
            forced: &[Option<usize>],
            sigma: &mut Vec<usize>,
            used: &mut Vec<bool>,
            pair_count: &dyn Fn(&StableGraph, usize, usize) -> usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if v == g1.vertices.len() {
                out.push(sigma.clone());
                return;
            }
            let cands: Vec<usize> = match forced[v] {
                Some(w) => vec![w],
                None => (0..g2.vertices.len()).collect(),
            };
            for w in cands {
                if used[w]
                    || g1.vertices[v] != g2.vertices[w]
                    || g1.valence(v) != g2.valence(w)
                    || g1.legs.iter().zip(&g2.legs).any(|(&a, &b)| (a == v) != (b == w))
                {
                    continue;
                }
                sigma[v] = w;
                let consistent = (0..=v).all(|u| pair_count(g1, u, v) == pair_count(g2, sigma[u], w));
                if consistent {
                    used[w] = true;
                    rec(v + 1, g1, g2, forced, sigma, used, pair_count, out);
                    used[w] = false;
                }
                sigma[v] = usize::MAX;
            }
        }
        let mut vertex_maps = Vec::new();
        rec(0, self, other, &forced, &mut sigma, &mut used, &pair_count, &mut vertex_maps);

        for sigma in vertex_maps {
            // group own edges by unordered endpoint pair, match against image edges
            let mut groups: Vec<((usize, usize), Vec<usize>)> = Vec::new();
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                let key = (a.min(b), a.max(b));
                match groups.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, v)) => v.push(e),
                    None => groups.push((key, vec![e])),
                }
            }
            let mut partial: Vec<Vec<(usize, bool)>> = vec![vec![(usize::MAX, false); self.edges.len()]];
            for ((a, b), own) in &groups {
                let (sa, sb) = (sigma[*a], sigma[*b]);
                let targets: Vec<usize> = (0..other.edges.len())
                    .filter(|&f| {
                        let (x, y) = other.edges[f];
                        (x, y) == (sa, sb) || (y, x) == (sa, sb)
                    })
                    .collect();
                let mut next = Vec::new();
                for perm in permutations(targets.len()) {
                    let choices: Vec<Vec<(usize, bool)>> = own
                        .iter()
                        .zip(&perm)
                        .map(|(&e, &p)| {
                            let f = targets[p];
                            let (x, y) = self.edges[e];
                            if x == y {
                                vec![(f, false), (f, true)]
                            } else {
                                vec![(f, other.edges[f].0 != sigma[x])]
                            }
                        })
                        .collect();
                    for base in &partial {
                        let mut acc = vec![base.clone()];
                        for (slot, opts) in own.iter().zip(&choices) {
                            let mut grown = Vec::new();
                            for m in &acc {
                                for &o in opts {
                                    let mut m2 = m.clone();
                                    m2[*slot] = o;
                                    grown.push(m2);
                                }
                            }
                            acc = grown;
                        }
                        next.extend(acc);
                    }
                }
                partial = next;
            }
            for edge in partial {
                out.push(Iso { vertex: sigma.clone(), edge });
            }
        }
        out
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub struct Canonical<V, H, E> {
    pub graph: StableGraph,
    pub vertex_data: Vec<V>,
    pub half_data: Vec<(H, H)>,
    pub edge_data: Vec<E>,
    pub relabel: Relabeling,
}

type EdgeKey<H, E> = (usize, H, usize, H, E);

/// Colour refinement: returns an isomorphism-invariant rank for each vertex.
fn refine<V: Ord, H: Ord + Clone, E: Ord + Clone>(
    graph: &StableGraph,
    vd: &[V],
    hd: &[(H, H)],
    ed: &[E],
) -> Vec<usize> {
    fn ranks<K: Ord>(keys: &[K]) -> Vec<usize> {
        let mut sorted: Vec<&K> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        keys.iter().map(|k| sorted.binary_search(&k).unwrap()).collect()
    }
    let nv = graph.vertices.len();
    let keys0: Vec<_> = (0..nv)
        .map(|v| {
            let legs: Vec<usize> = (0..graph.legs.len()).filter(|&i| graph.legs[i] == v).collect();
            (&graph.vertices[v], &vd[v], legs, graph.valence(v))
        })
        .collect();
    let mut rank = ranks(&keys0);
    let mut classes = rank.iter().collect::<BTreeSet<_>>().len();
    loop {
        let keys: Vec<_> = (0..nv)
            .map(|v| {
                let mut nbrs: Vec<(usize, H, H, E)> = Vec::new();
                for (e, &(a, b)) in graph.edges.iter().enumerate() {
                    if a == v {
                        nbrs.push((rank[b], hd[e].0.clone(), hd[e].1.clone(), ed[e].clone()));
                    }
                    if b == v {
                        nbrs.push((rank[a], hd[e].1.clone(), hd[e].0.clone(), ed[e].clone()));
                    }
                }
                nbrs.sort();
                (rank[v], nbrs)
            })
            .collect();
        let next = ranks(&keys);
        let c = next.iter().collect::<BTreeSet<_>>().len();
        rank = next;
        if c == classes {
            return rank;
        }
        classes = c;
    }
}

fn encode<H: Ord + Clone, E: Ord + Clone>(
    graph: &StableGraph,
    hd: &[(H, H)],
    ed: &[E],
    sigma: &[usize],
) -> Vec<(EdgeKey<H, E>, usize, bool)> {
    let mut out: Vec<(EdgeKey<H, E>, usize, bool)> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let fwd = (sigma[a], hd[e].0.clone(), sigma[b], hd[e].1.clone(), ed[e].clone());
            let rev = (sigma[b], hd[e].1.clone(), sigma[a], hd[e].0.clone(), ed[e].clone());
            if rev < fwd {
                (rev, e, true)
            } else {
                (fwd, e, false)
            }
        })
        .collect();
    out.sort();
    out
}

/// All vertex relabellings `old -> new` compatible with the refined ranks.
fn block_permutations(rank: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..rank.len()).collect();
    order.sort_by_key(|&v| (rank[v], v));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if rank[b[0]] == rank[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut out = vec![vec![usize::MAX; rank.len()]];
    let mut offset = 0;
    for block in &blocks {
        let mut next = Vec::new();
        for perm in permutations(block.len()) {
            for base in &out {
                let mut s = base.clone();
                for (i, &p) in perm.iter().enumerate() {
                    s[block[p]] = offset + i;
                }
                next.push(s);
            }
        }
        out = next;
        offset += block.len();
    }
    out
}

/// Minimum encoding over all relabellings preserving the refined ranks.
pub fn canonical_form<V: Ord + Clone, H: Ord + Clone, E: Ord + Clone>(
    graph: &StableGraph,
    vd: &[V],
    hd: &[(H, H)],
    ed: &[E],
) -> Canonical<V, H, E> {
    let rank = refine(graph, vd, hd, ed);
    let mut best: Option<(Vec<(EdgeKey<H, E>, usize, bool)>, Vec<usize>)> = None;
    for sigma in block_permutations(&rank) {
        let enc = encode(graph, hd, ed, &sigma);
        let better = match &best {
            None => true,
            Some((b, _)) => enc.iter().map(|x| &x.0).lt(b.iter().map(|x| &x.0)),
        };
        if better {
            best = Some((enc, sigma));
        }
    }
    let (enc, sigma) = best.expect("at least one relabelling");
    let nv = graph.vertices.len();
    let mut vertices = vec![graph.vertices[0].clone(); nv];
    let mut vdata = vec![vd[0].clone(); nv];
    for v in 0..nv {
        vertices[sigma[v]] = graph.vertices[v].clone();
        vdata[sigma[v]] = vd[v].clone();
    }
    let mut edge_relabel = vec![(0, false); graph.edges.len()];
    let mut edges = Vec::with_capacity(enc.len());
    let mut hdata = Vec::with_capacity(enc.len());
    let mut edata = Vec::with_capacity(enc.len());
    for (new, ((a, ha, b, hb, x), old, flipped)) in enc.into_iter().enumerate() {
        edges.push((a, b));
        hdata.push((ha, hb));
        edata.push(x);
        edge_relabel[old] = (new, flipped);
    }
    Canonical {
        graph: StableGraph { vertices, legs: graph.legs.iter().map(|&v| sigma[v]).collect(), edges },
        vertex_data: vdata,
        half_data: hdata,
        edge_data: edata,
        relabel: Relabeling { vertex: sigma, edge: edge_relabel },
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Order of the automorphism group of a decorated graph (legs fixed pointwise).
pub fn automorphism_count<V: Ord + Clone, H: Ord + Clone, E: Ord + Clone>(
    graph: &StableGraph,
    vd: &[V],
    hd: &[(H, H)],
    ed: &[E],
) -> u64 {
    let rank = refine(graph, vd, hd, ed);
    let identity: Vec<usize> = (0..graph.vertices.len()).collect();
    let reference: Vec<EdgeKey<H, E>> = encode(graph, hd, ed, &identity).into_iter().map(|x| x.0).collect();
    let vertex_auts = block_permutations(&rank)
        .into_iter()
        .filter(|s| encode(graph, hd, ed, s).iter().map(|x| &x.0).eq(reference.iter()))
        .count() as u64;
    let mut lifts = 1u64;
    let mut i = 0;
    while i < reference.len() {
        let mut j = i;
        while j < reference.len() && reference[j] == reference[i] {
            j += 1;
        }
        lifts *= factorial(j - i);
        let (a, ha, b, hb, _) = &reference[i];
        if a == b && ha == hb {
            lifts *= 1u64 << (j - i);
        }
        i = j;
    }
    vertex_auts * lifts
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct EnumKey {
    g: u32,
    n: usize,
    beta: CurveClass,
    positive_dim: bool,
    max_edges: usize,
    shapes_only: bool,
}

static GRAPH_CACHE: Lazy<Mutex<HashMap<EnumKey, Arc<Vec<StableGraph>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// All isomorphism classes with at most `max_edges` edges, ordered by edge count
/// and then canonical encoding. With `shapes_only`, classes are dropped and
/// stability is not imposed.
pub fn enumerate_graphs(amb: &Ambient, max_edges: usize, shapes_only: bool) -> Arc<Vec<StableGraph>> {
    let key = EnumKey {
        g: amb.g,
        n: amb.n,
        beta: amb.beta.clone(),
        positive_dim: amb.target.dim() > 0,
        max_edges,
        shapes_only,
    };
    if let Some(hit) = GRAPH_CACHE.lock().get(&key) {
        return hit.clone();
    }
    let result = Arc::new(enumerate_uncached(&key));
    GRAPH_CACHE.lock().insert(key, result.clone());
    result
}

fn enumerate_uncached(key: &EnumKey) -> Vec<StableGraph> {
    let beta = if key.shapes_only { CurveClass(Vec::new()) } else { key.beta.clone() };
    if !key.positive_dim && !beta.is_zero() {
        return Vec::new();
    }
    let root = StableGraph::trivial(key.g, key.n, beta);
    let ok = |gr: &StableGraph| key.shapes_only || (0..gr.num_vertices()).all(|v| gr.vertex_is_stable(v));
    let mut layers: Vec<BTreeSet<StableGraph>> = Vec::new();
    layers.push(if ok(&root) { BTreeSet::from([root]) } else { BTreeSet::new() });
    for _ in 0..key.max_edges {
        let mut next = BTreeSet::new();
        for gr in layers.last().unwrap() {
            for child in one_edge_degenerations(gr) {
                if ok(&child) {
                    next.insert(child.canonical());
                }
            }
        }
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

/// Every graph that contracts to `gr` along exactly one new edge, un-canonicalised.
/// Stability is left to the caller.
pub fn one_edge_degenerations(gr: &StableGraph) -> Vec<StableGraph> {
    let mut out = Vec::new();
    for v in 0..gr.num_vertices() {
        let vx = &gr.vertices[v];
        if vx.genus >= 1 {
            let mut child = gr.clone();
            child.vertices[v].genus -= 1;
            child.edges.push((v, v));
            out.push(child);
        }
        let halves = gr.half_edges_at(v);
        let splits: Vec<Vec<CurveClass>> = if vx.beta.rank() == 0 {
            vec![vec![vx.beta.clone(), vx.beta.clone()]]
        } else {
            enumerate_splittings(&vx.beta, 2)
        };
        let w = gr.num_vertices();
        for g1 in 0..=vx.genus {
            for split in &splits {
                for mask in 0u64..(1u64 << halves.len()) {
                    let mut child = gr.clone();
                    child.vertices[v] = Vertex { genus: g1, beta: split[0].clone() };
                    child.vertices.push(Vertex { genus: vx.genus - g1, beta: split[1].clone() });
                    for (bit, h) in halves.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            match *h {
                                Half::Leg(i) => child.legs[i] = w,
                                Half::Edge(e, 0) => child.edges[e].0 = w,
                                Half::Edge(e, _) => child.edges[e].1 = w,
                            }
                        }
                    }
                    child.edges.push((v, w));
                    out.push(child);
                }
            }
        }
    }
    out
}

/// Two vertices joined by one edge, legs (1-based labels) split as given.
pub fn separating_graph(
    n: usize,
    left: (u32, CurveClass, &[usize]),
    right: (u32, CurveClass, &[usize]),
) -> StableGraph {
    let mut legs = vec![0; n];
    for &i in right.2 {
        legs[i - 1] = 1;
    }
    debug_assert!(left.2.iter().all(|&i| legs[i - 1] == 0));
    StableGraph {
        vertices: vec![Vertex { genus: left.0, beta: left.1 }, Vertex { genus: right.0, beta: right.1 }],
        legs,
        edges: vec![(0, 1)],
    }
    .canonical()
}

/// One vertex of genus `g - 1` with a single loop and all legs.
pub fn loop_graph(amb: &Ambient) -> StableGraph {
    assert!(amb.g >= 1, "a loop needs positive genus");
    StableGraph {
        vertices: vec![Vertex { genus: amb.g - 1, beta: amb.beta.clone() }],
        legs: vec![0; amb.n],
        edges: vec![(0, 0)],
    }
}

/// Graphs with a genus-g vertex carrying every leg but `i` and a genus-0 vertex
/// carrying only leg `i`, over all class splittings that keep both ends stable.
pub fn d_i_graphs(amb: &Ambient, i: usize) -> Vec<StableGraph> {
    bubble_graphs(amb, &[i])
}

/// Legless genus-0 bubble attached to the genus-g vertex with all legs.
pub fn d_kappa_graphs(amb: &Ambient) -> Vec<StableGraph> {
    bubble_graphs(amb, &[])
}

fn bubble_graphs(amb: &Ambient, bubble_legs: &[usize]) -> Vec<StableGraph> {
    let rest: Vec<usize> = (1..=amb.n).filter(|i| !bubble_legs.contains(i)).collect();
    let mut out = Vec::new();
    for split in enumerate_splittings(&amb.beta, 2) {
        let gr = separating_graph(
            amb.n,
            (amb.g, split[0].clone(), &rest),
            (0, split[1].clone(), bubble_legs),
        );
        if gr.validate(amb).is_ok() {
            out.push(gr);
        }
    }
    out.sort();
    out.dedup();
    out
}
