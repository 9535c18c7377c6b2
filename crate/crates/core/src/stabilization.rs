//! Pullbacks along the stabilization morphism and the forgetful maps, and
//! pushforward along the map forgetting the last marking.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::coeff::{Poly, Q};
use crate::error::{Error, Result};
use crate::graph::{d_i_graphs, d_kappa_graphs, Ambient, Half, StableGraph, Vertex};
use crate::par;
use crate::strata::{DecoratedTerm, RawTerm, StrataElement};
use crate::target::{enumerate_splittings, ChowElement, CurveClass};

fn require_stable(amb: &Ambient) -> Result<()> {
    if amb.is_stable_range() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "stabilization needs 2g-2+n > 0, got g={} n={}",
            amb.g, amb.n
        )))
    }
}

fn inv(n: u64) -> Q {
    Q::new(1.into(), n.into())
}

/// Pullback of `[Γ̄] / |Aut Γ̄|` for a curve graph `Γ̄` (vertex classes ignored).
pub fn pullback_boundary(curve_graph: &StableGraph, amb: &Ambient) -> Result<StrataElement> {
    require_stable(amb)?;
    let nv = curve_graph.num_vertices();
    let bare = StableGraph {
        vertices: curve_graph.vertices.iter().map(|v| Vertex { genus: v.genus, beta: CurveClass(Vec::new()) }).collect(),
        ..curve_graph.clone()
    };
    for v in 0..nv {
        if 2 * i64::from(bare.vertices[v].genus) - 2 + bare.valence(v) as i64 <= 0 {
            return Err(Error::InvalidGraph(format!("curve graph is unstable at vertex {v}")));
        }
    }
    if bare.num_legs() != amb.n || bare.total_genus() != i64::from(amb.g) || !bare.is_connected() {
        return Err(Error::InvalidGraph("curve graph does not match the ambient".into()));
    }
    let mut seen = BTreeSet::new();
    for split in enumerate_splittings(&amb.beta, nv) {
        let mut g = bare.clone();
        for (v, b) in split.into_iter().enumerate() {
            g.vertices[v].beta = b;
        }
        if g.validate(amb).is_ok() {
            seen.insert(g.canonical());
        }
    }
    let mut out = StrataElement::zero(amb);
    for g in seen {
        let w = inv(g.automorphism_order());
        out.add_assign(&StrataElement::graph_class(amb, &g).scale(&w));
    }
    Ok(out)
}

/// `st^* ψ_i = ψ_i - Σ [D_i]` (legs are 1-based).
pub fn pullback_psi(i: usize, amb: &Ambient) -> Result<StrataElement> {
    require_stable(amb)?;
    if i == 0 || i > amb.n {
        return Err(Error::Unsupported(format!("leg {i} out of range")));
    }
    let mut raw = RawTerm::bare(StableGraph::trivial(amb.g, amb.n, amb.beta.clone()));
    raw.leg_psi[i - 1] = 1;
    let mut out = StrataElement::from_raw(amb, &raw, &Q::one());
    for d in d_i_graphs(amb, i) {
        out.add_assign(&StrataElement::graph_class(amb, &d).scale(&-Q::one()));
    }
    Ok(out)
}

/// `st^* κ_1 = κ_1 + Σ [D]` with a legless genus-0 bubble.
pub fn pullback_kappa1(amb: &Ambient) -> Result<StrataElement> {
    require_stable(amb)?;
    let mut raw = RawTerm::bare(StableGraph::trivial(amb.g, amb.n, amb.beta.clone()));
    raw.kappa[0].push((1, ChowElement::basis(0)));
    let mut out = StrataElement::from_raw(amb, &raw, &Q::one());
    for d in d_kappa_graphs(amb) {
        out.add_assign(&StrataElement::graph_class(amb, &d));
    }
    Ok(out)
}

/// Graph and decoration surgery helper: drops vertex `v` and leg `p`, re-indexes.
struct Rebuild {
    vertex_map: Vec<Option<usize>>,
}

impl Rebuild {
    fn without_vertex(nv: usize, v: usize) -> Self {
        let mut k = 0;
        let vertex_map = (0..nv)
            .map(|w| {
                if w == v {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect();
        Self { vertex_map }
    }
}

fn classes_of(t: &DecoratedTerm) -> (Vec<ChowElement>, Vec<ChowElement>) {
    (
        t.dec.leg_class.iter().map(|&c| ChowElement::basis(c)).collect(),
        t.dec.edge_class.iter().map(|&c| ChowElement::basis(c)).collect(),
    )
}

/// Pushforward along the map forgetting the last marking.
pub fn forgetful_pushforward(s: &StrataElement) -> Result<StrataElement> {
    let amb = &s.ambient;
    if amb.n == 0 {
        return Err(Error::Unsupported("no marking to forget".into()));
    }
    let down = amb.with_n(amb.n - 1);
    let terms: Vec<(&DecoratedTerm, &Poly)> = s.terms().collect();
    let pieces = par::map(&terms, |(t, c)| {
        let mut part = StrataElement::with_symbols(&down, s.symbols.clone());
        for (raw, w) in push_term(&down, t) {
            part.add_raw(&raw, &c.scale(&w));
        }
        part
    });
    let mut out = StrataElement::with_symbols(&down, s.symbols.clone());
    for p in &pieces {
        out.add_assign(p);
    }
    Ok(out)
}

fn push_term(down: &Ambient, t: &DecoratedTerm) -> Vec<(RawTerm, Q)> {
    let target = &down.target;
    let g = &t.graph;
    let p = g.num_legs() - 1;
    let v = g.legs[p];
    let vx = &g.vertices[v];
    let e = t.dec.leg_psi[p];
    let alpha_p = ChowElement::basis(t.dec.leg_class[p]);
    let (mut leg_class, edge_class) = classes_of(t);
    leg_class.pop();
    let mut leg_psi = t.dec.leg_psi.clone();
    leg_psi.pop();
    let mut out = Vec::new();

    if vx.genus == 0 && vx.beta.is_zero() && g.valence(v) == 3 {
        // the vertex is contracted; only κ_0 survives there, as an evaluation class
        let halves: Vec<Half> = g.half_edges_at(v).into_iter().filter(|&h| h != Half::Leg(p)).collect();
        if e > 0 || halves.iter().any(|&h| t.dec.psi(h) > 0) || t.dec.kappa[v].iter().any(|&(a, _)| a != 0) {
            return out;
        }
        let mut alpha = alpha_p;
        for &(_, c) in &t.dec.kappa[v] {
            alpha = target.mul(&alpha, &ChowElement::basis(c));
        }
        let rb = Rebuild::without_vertex(g.num_vertices(), v);
        let far = |h: Half| -> (usize, u32) {
            match h {
                Half::Edge(ed, s) => {
                    let (a, b) = g.edges[ed];
                    let (pa, pb) = t.dec.edge_psi[ed];
                    if s == 0 {
                        (b, pb)
                    } else {
                        (a, pa)
                    }
                }
                Half::Leg(_) => unreachable!(),
            }
        };
        let vertices: Vec<Vertex> =
            (0..g.num_vertices()).filter(|&w| w != v).map(|w| g.vertices[w].clone()).collect();
        let mut legs: Vec<usize> = g.legs[..p].iter().map(|&w| rb.vertex_map[w].unwrap_or(usize::MAX)).collect();
        let mut edges = Vec::new();
        let mut new_edge_psi = Vec::new();
        let mut new_edge_class = Vec::new();
        let touched: Vec<usize> = halves
            .iter()
            .filter_map(|h| if let Half::Edge(ed, _) = h { Some(*ed) } else { None })
            .collect();
        for (ed, &(a, b)) in g.edges.iter().enumerate() {
            if touched.contains(&ed) {
                continue;
            }
            edges.push((rb.vertex_map[a].unwrap(), rb.vertex_map[b].unwrap()));
            new_edge_psi.push(t.dec.edge_psi[ed]);
            new_edge_class.push(edge_class[ed].clone());
        }
        match (halves[0], halves[1]) {
            (Half::Edge(e1, _), Half::Edge(e2, _)) if e1 == e2 => return out,
            (h1 @ Half::Edge(e1, _), h2 @ Half::Edge(e2, _)) => {
                let (x, px) = far(h1);
                let (y, py) = far(h2);
                edges.push((rb.vertex_map[x].unwrap(), rb.vertex_map[y].unwrap()));
                new_edge_psi.push((px, py));
                let c = target.mul(&target.mul(&edge_class[e1], &edge_class[e2]), &alpha);
                new_edge_class.push(c);
            }
            (Half::Leg(i), h @ Half::Edge(ed, _)) | (h @ Half::Edge(ed, _), Half::Leg(i)) => {
                let (x, px) = far(h);
                legs[i] = rb.vertex_map[x].unwrap();
                leg_psi[i] = px;
                leg_class[i] = target.mul(&target.mul(&leg_class[i], &edge_class[ed]), &alpha);
            }
            _ => return out,
        }
        let kappa = (0..g.num_vertices())
            .filter(|&w| w != v)
            .map(|w| t.dec.kappa[w].iter().map(|&(a, c)| (a, ChowElement::basis(c))).collect())
            .collect();
        out.push((
            RawTerm {
                graph: StableGraph { vertices, legs, edges },
                leg_class,
                leg_psi,
                edge_psi: new_edge_psi,
                edge_class: new_edge_class,
                kappa,
            },
            Q::one(),
        ));
        return out;
    }

    let base_graph = StableGraph { vertices: g.vertices.clone(), legs: g.legs[..p].to_vec(), edges: g.edges.clone() };
    let base_kappa: Vec<Vec<(i32, ChowElement)>> = t
        .dec
        .kappa
        .iter()
        .map(|ks| ks.iter().map(|&(a, c)| (a, ChowElement::basis(c))).collect())
        .collect();
    let at_v = &t.dec.kappa[v];
    let correctable: Vec<usize> = (0..at_v.len()).filter(|&j| at_v[j].0 >= 0).collect();
    for mask in 0u64..(1u64 << correctable.len()) {
        let chosen: Vec<usize> =
            (0..correctable.len()).filter(|&b| mask >> b & 1 == 1).map(|b| correctable[b]).collect();
        let mut exp = i64::from(e);
        let mut alpha = alpha_p.clone();
        for &j in &chosen {
            exp += i64::from(at_v[j].0);
            alpha = target.mul(&alpha, &ChowElement::basis(at_v[j].1));
        }
        if alpha.is_zero() {
            continue;
        }
        let mut kappa = base_kappa.clone();
        kappa[v] = (0..at_v.len())
            .filter(|j| !chosen.contains(j))
            .map(|j| (at_v[j].0, ChowElement::basis(at_v[j].1)))
            .collect();
        let base = RawTerm {
            graph: base_graph.clone(),
            leg_class: leg_class.clone(),
            leg_psi: leg_psi.clone(),
            edge_psi: t.dec.edge_psi.clone(),
            edge_class: edge_class.clone(),
            kappa,
        };
        if exp >= 1 {
            let mut r = base;
            r.kappa[v].push(((exp - 1) as i32, alpha));
            out.push((r, Q::one()));
            continue;
        }
        // no ψ on the forgotten point: κ_{-1} term plus the diagonal corrections
        match target.homogeneous_codim(&alpha) {
            Some(0) => {}
            Some(1) => {
                let w = target.degree_pairing(&vx.beta, &alpha).expect("divisor class");
                if !w.is_zero() {
                    out.push((base.clone(), w));
                }
            }
            _ => {
                let mut r = base.clone();
                r.kappa[v].push((-1, alpha.clone()));
                out.push((r, Q::one()));
            }
        }
        for h in base_graph.half_edges_at(v) {
            let k = t.dec.psi(h);
            if k == 0 {
                continue;
            }
            let mut r = base.clone();
            *r.psi_mut(h) -= 1;
            r.mul_class_at(target, h, &alpha);
            out.push((r, Q::one()));
        }
    }
    out
}

/// Pullback along the map forgetting a new last marking.
pub fn forgetful_pullback(s: &StrataElement) -> StrataElement {
    let up = s.ambient.with_n(s.ambient.n + 1);
    let terms: Vec<(&DecoratedTerm, &Poly)> = s.terms().collect();
    let pieces = par::map(&terms, |(t, c)| {
        let mut part = StrataElement::with_symbols(&up, s.symbols.clone());
        for (raw, w) in pull_term(&up, t) {
            part.add_raw(&raw, &c.scale(&w));
        }
        part
    });
    let mut out = StrataElement::with_symbols(&up, s.symbols.clone());
    for p in &pieces {
        out.add_assign(p);
    }
    out
}

fn pull_term(up: &Ambient, t: &DecoratedTerm) -> Vec<(RawTerm, Q)> {
    let target = &up.target;
    let g = &t.graph;
    let mut out = Vec::new();
    let base = RawTerm::from_term(t);
    for v in 0..g.num_vertices() {
        let mut with_p = base.clone();
        with_p.graph.legs.push(v);
        with_p.leg_class.push(ChowElement::basis(0));
        with_p.leg_psi.push(0);
        let p = with_p.graph.num_legs() - 1;

        let at_v = &t.dec.kappa[v];
        let correctable: Vec<usize> = (0..at_v.len()).filter(|&j| at_v[j].0 >= 0).collect();
        for mask in 0u64..(1u64 << correctable.len()) {
            let chosen: Vec<usize> =
                (0..correctable.len()).filter(|&b| mask >> b & 1 == 1).map(|b| correctable[b]).collect();
            let mut r = with_p.clone();
            let mut alpha = ChowElement::basis(0);
            for &j in &chosen {
                r.leg_psi[p] += at_v[j].0 as u32;
                alpha = target.mul(&alpha, &ChowElement::basis(at_v[j].1));
            }
            r.leg_class[p] = alpha;
            r.kappa[v] = (0..at_v.len())
                .filter(|j| !chosen.contains(j))
                .map(|j| (at_v[j].0, ChowElement::basis(at_v[j].1)))
                .collect();
            let sign = if chosen.len() % 2 == 0 { Q::one() } else { -Q::one() };
            out.push((r, sign));
        }

        // ψ_h^k pulls back to ψ_h^k minus a bubble carrying h and the new point
        for h in g.half_edges_at(v) {
            let k = t.dec.psi(h);
            if k == 0 {
                continue;
            }
            let mut r = with_p.clone();
            let b = r.graph.vertices.len();
            r.graph.vertices.push(Vertex { genus: 0, beta: CurveClass::zero(up.beta.rank()) });
            r.kappa.push(Vec::new());
            r.graph.legs[p] = b;
            match h {
                Half::Leg(i) => {
                    r.graph.legs[i] = b;
                    r.leg_psi[i] = 0;
                }
                Half::Edge(e, 0) => {
                    r.graph.edges[e].0 = b;
                    r.edge_psi[e].0 = 0;
                }
                Half::Edge(e, _) => {
                    r.graph.edges[e].1 = b;
                    r.edge_psi[e].1 = 0;
                }
            }
            r.graph.edges.push((v, b));
            r.edge_psi.push((k - 1, 0));
            r.edge_class.push(ChowElement::basis(0));
            out.push((r, -Q::one()));
        }
    }
    out
}

/// Renames legs: old leg `i` (1-based) becomes leg `perm[i-1]`.
pub fn relabel_legs(s: &StrataElement, perm: &[usize]) -> Result<StrataElement> {
    let n = s.ambient.n;
    let mut check: Vec<usize> = perm.to_vec();
    check.sort_unstable();
    if check != (1..=n).collect::<Vec<_>>() {
        return Err(Error::Unsupported("leg relabelling must be a permutation".into()));
    }
    let mut out = StrataElement::with_symbols(&s.ambient, s.symbols.clone());
    for (t, c) in s.terms() {
        let mut raw = RawTerm::from_term(t);
        for old in 0..n {
            let new = perm[old] - 1;
            raw.graph.legs[new] = t.graph.legs[old];
            raw.leg_psi[new] = t.dec.leg_psi[old];
            raw.leg_class[new] = ChowElement::basis(t.dec.leg_class[old]);
        }
        out.add_raw(&raw, c);
    }
    Ok(out)
}

/// `ev_i^* α` on the trivial graph, legs 1-based.
pub fn leg_class_element(amb: &Ambient, i: usize, alpha: &ChowElement) -> StrataElement {
    let mut raw = RawTerm::bare(StableGraph::trivial(amb.g, amb.n, amb.beta.clone()));
    raw.leg_class[i - 1] = alpha.clone();
    StrataElement::from_raw(amb, &raw, &Q::one())
}
