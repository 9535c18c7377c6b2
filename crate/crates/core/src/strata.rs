//! Decorated graphs and formal linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::coeff::{Poly, Q};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, canonical_form, Ambient, Half, StableGraph};
use crate::target::{ChowElement, Target};

/// Single-index twisted κ entry `κ_a(α)` with `α` a basis index.
pub type Kappa = (i32, usize);

/// Decorations of a graph, with every Chow class a single basis element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub leg_class: Vec<usize>,
    pub leg_psi: Vec<u32>,
    pub edge_psi: Vec<(u32, u32)>,
    pub edge_class: Vec<usize>,
    /// sorted multiset per vertex
    pub kappa: Vec<Vec<Kappa>>,
}

impl Decoration {
    pub fn bare(graph: &StableGraph) -> Self {
        Self {
            leg_class: vec![0; graph.num_legs()],
            leg_psi: vec![0; graph.num_legs()],
            edge_psi: vec![(0, 0); graph.num_edges()],
            edge_class: vec![0; graph.num_edges()],
            kappa: vec![Vec::new(); graph.num_vertices()],
        }
    }

    pub fn psi(&self, h: Half) -> u32 {
        match h {
            Half::Leg(i) => self.leg_psi[i],
            Half::Edge(e, 0) => self.edge_psi[e].0,
            Half::Edge(e, _) => self.edge_psi[e].1,
        }
    }

    pub fn psi_mut(&mut self, h: Half) -> &mut u32 {
        match h {
            Half::Leg(i) => &mut self.leg_psi[i],
            Half::Edge(e, 0) => &mut self.edge_psi[e].0,
            Half::Edge(e, _) => &mut self.edge_psi[e].1,
        }
    }
}

/// A decorated graph in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedTerm {
    pub graph: StableGraph,
    pub dec: Decoration,
}

impl DecoratedTerm {
    pub fn bare(graph: StableGraph) -> Self {
        let dec = Decoration::bare(&graph);
        Self { graph, dec }
    }

    pub fn degree(&self, target: &Target) -> i64 {
        let d = &self.dec;
        let mut deg = self.graph.num_edges() as i64;
        deg += d.leg_psi.iter().map(|&x| i64::from(x)).sum::<i64>();
        deg += d.edge_psi.iter().map(|&(x, y)| i64::from(x + y)).sum::<i64>();
        deg += d.leg_class.iter().chain(&d.edge_class).map(|&c| i64::from(target.codim(c))).sum::<i64>();
        deg += d
            .kappa
            .iter()
            .flatten()
            .map(|&(a, c)| i64::from(a) + i64::from(target.codim(c)))
            .sum::<i64>();
        deg
    }

    /// Number of Chow codimensions carried by the decoration (each a power of the
    /// line-bundle class in the scaling grading).
    pub fn class_weight(&self, target: &Target) -> u32 {
        let d = &self.dec;
        d.leg_class.iter().chain(&d.edge_class).map(|&c| target.codim(c)).sum::<u32>()
            + d.kappa.iter().flatten().map(|&(_, c)| target.codim(c)).sum::<u32>()
    }

    /// Canonical representative, or `None` when a `κ_{-1}(1)` factor kills the term.
    pub fn normalize(mut self) -> Option<Self> {
        if self.dec.kappa.iter().flatten().any(|&(a, c)| a == -1 && c == 0) {
            return None;
        }
        for k in &mut self.dec.kappa {
            k.sort_unstable();
        }
        let c = canonical_form(&self.graph, &self.dec.kappa, &self.dec.edge_psi, &self.dec.edge_class);
        Some(Self {
            graph: c.graph,
            dec: Decoration {
                leg_class: self.dec.leg_class,
                leg_psi: self.dec.leg_psi,
                edge_psi: c.half_data,
                edge_class: c.edge_data,
                kappa: c.vertex_data,
            },
        })
    }

    pub fn automorphism_order(&self) -> u64 {
        automorphism_count(&self.graph, &self.dec.kappa, &self.dec.edge_psi, &self.dec.edge_class)
    }

    /// Applies a vertex permutation and edge permutation/flip without canonicalising.
    pub fn relabeled(&self, vertex: &[usize], edge: &[(usize, bool)]) -> Self {
        let g = &self.graph;
        let mut vertices = g.vertices.clone();
        let mut kappa = self.dec.kappa.clone();
        for (old, &new) in vertex.iter().enumerate() {
            vertices[new] = g.vertices[old].clone();
            kappa[new] = self.dec.kappa[old].clone();
        }
        let mut edges = g.edges.clone();
        let mut edge_psi = self.dec.edge_psi.clone();
        let mut edge_class = self.dec.edge_class.clone();
        for (old, &(new, flip)) in edge.iter().enumerate() {
            let (a, b) = g.edges[old];
            let (pa, pb) = self.dec.edge_psi[old];
            if flip {
                edges[new] = (vertex[b], vertex[a]);
                edge_psi[new] = (pb, pa);
            } else {
                edges[new] = (vertex[a], vertex[b]);
                edge_psi[new] = (pa, pb);
            }
            edge_class[new] = self.dec.edge_class[old];
        }
        Self {
            graph: StableGraph { vertices, legs: g.legs.iter().map(|&v| vertex[v]).collect(), edges },
            dec: Decoration { edge_psi, edge_class, kappa, ..self.dec.clone() },
        }
    }
}

/// Term under construction: classes are arbitrary Chow elements and the graph
/// need not be canonical. `expand` distributes it over basis decorations.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub graph: StableGraph,
    pub leg_class: Vec<ChowElement>,
    pub leg_psi: Vec<u32>,
    pub edge_psi: Vec<(u32, u32)>,
    pub edge_class: Vec<ChowElement>,
    pub kappa: Vec<Vec<(i32, ChowElement)>>,
}

impl RawTerm {
    pub fn bare(graph: StableGraph) -> Self {
        Self {
            leg_class: vec![ChowElement::basis(0); graph.num_legs()],
            leg_psi: vec![0; graph.num_legs()],
            edge_psi: vec![(0, 0); graph.num_edges()],
            edge_class: vec![ChowElement::basis(0); graph.num_edges()],
            kappa: vec![Vec::new(); graph.num_vertices()],
            graph,
        }
    }

    pub fn from_term(t: &DecoratedTerm) -> Self {
        Self {
            graph: t.graph.clone(),
            leg_class: t.dec.leg_class.iter().map(|&c| ChowElement::basis(c)).collect(),
            leg_psi: t.dec.leg_psi.clone(),
            edge_psi: t.dec.edge_psi.clone(),
            edge_class: t.dec.edge_class.iter().map(|&c| ChowElement::basis(c)).collect(),
            kappa: t
                .dec
                .kappa
                .iter()
                .map(|ks| ks.iter().map(|&(a, c)| (a, ChowElement::basis(c))).collect())
                .collect(),
        }
    }

    pub fn psi_mut(&mut self, h: Half) -> &mut u32 {
        match h {
            Half::Leg(i) => &mut self.leg_psi[i],
            Half::Edge(e, 0) => &mut self.edge_psi[e].0,
            Half::Edge(e, _) => &mut self.edge_psi[e].1,
        }
    }

    /// Multiplies `ev_h^* α` into the leg or edge carrying half-edge `h`.
    pub fn mul_class_at(&mut self, target: &Target, h: Half, alpha: &ChowElement) {
        match h {
            Half::Leg(i) => self.leg_class[i] = target.mul(&self.leg_class[i], alpha),
            Half::Edge(e, _) => self.edge_class[e] = target.mul(&self.edge_class[e], alpha),
        }
    }

    /// Basis expansion into normalised canonical terms with rational weights.
    pub fn expand(&self) -> Vec<(DecoratedTerm, Q)> {
        let slots: Vec<&ChowElement> = self
            .leg_class
            .iter()
            .chain(&self.edge_class)
            .chain(self.kappa.iter().flatten().map(|(_, c)| c))
            .collect();
        if slots.iter().any(|c| c.is_zero()) {
            return Vec::new();
        }
        let mut combos: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), Q::one())];
        for slot in &slots {
            let mut next = Vec::with_capacity(combos.len() * slot.0.len());
            for (picked, c) in &combos {
                for (i, ci) in slot.iter() {
                    let mut p = picked.clone();
                    p.push(i);
                    next.push((p, c * ci));
                }
            }
            combos = next;
        }
        let nl = self.leg_class.len();
        let ne = self.edge_class.len();
        let mut out = Vec::with_capacity(combos.len());
        for (picked, c) in combos {
            let mut it = picked.into_iter();
            let leg_class: Vec<usize> = it.by_ref().take(nl).collect();
            let edge_class: Vec<usize> = it.by_ref().take(ne).collect();
            let kappa: Vec<Vec<Kappa>> = self
                .kappa
                .iter()
                .map(|ks| ks.iter().map(|(a, _)| (*a, it.next().unwrap())).collect())
                .collect();
            let term = DecoratedTerm {
                graph: self.graph.clone(),
                dec: Decoration {
                    leg_class,
                    leg_psi: self.leg_psi.clone(),
                    edge_psi: self.edge_psi.clone(),
                    edge_class,
                    kappa,
                },
            };
            if let Some(t) = term.normalize() {
                out.push((t, c));
            }
        }
        out
    }
}

/// Finite formal combination of canonical decorated terms with polynomial
/// coefficients in the declared symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataElement {
    pub ambient: Ambient,
    pub symbols: Vec<String>,
    terms: BTreeMap<DecoratedTerm, Poly>,
}

impl StrataElement {
    pub fn zero(ambient: &Ambient) -> Self {
        Self { ambient: ambient.clone(), symbols: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn with_symbols(ambient: &Ambient, symbols: Vec<String>) -> Self {
        Self { ambient: ambient.clone(), symbols, terms: BTreeMap::new() }
    }

    pub fn fundamental(ambient: &Ambient) -> Self {
        let g = StableGraph::trivial(ambient.g, ambient.n, ambient.beta.clone());
        Self::from_raw(ambient, &RawTerm::bare(g), &Q::one())
    }

    pub fn from_term(ambient: &Ambient, term: DecoratedTerm, c: Q) -> Self {
        let mut e = Self::zero(ambient);
        e.add_raw(&RawTerm::from_term(&term), &Poly::constant(c));
        e
    }

    pub fn from_raw(ambient: &Ambient, raw: &RawTerm, c: &Q) -> Self {
        let mut e = Self::zero(ambient);
        e.add_raw(raw, &Poly::constant(c.clone()));
        e
    }

    /// `[Γ]` with no decoration.
    pub fn graph_class(ambient: &Ambient, graph: &StableGraph) -> Self {
        Self::from_raw(ambient, &RawTerm::bare(graph.clone()), &Q::one())
    }

    pub fn vdim(&self) -> i64 {
        self.ambient.vdim()
    }

    pub fn target(&self) -> &Target {
        &self.ambient.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedTerm, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &DecoratedTerm) -> Poly {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    /// Adds an already canonical term; terms above the virtual dimension are dropped.
    pub fn add_term(&mut self, t: DecoratedTerm, c: Poly) {
        if c.is_zero() || t.degree(&self.ambient.target) > self.ambient.vdim() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_raw(&mut self, raw: &RawTerm, c: &Poly) {
        for (t, w) in raw.expand() {
            self.add_term(t, c.scale(&w));
        }
    }

    fn merge_symbols(&mut self, other: &[String]) {
        if self.symbols.len() < other.len() && other.starts_with(&self.symbols) {
            self.symbols = other.to_vec();
        }
    }

    pub fn check_compatible(&self, other: &StrataElement) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.ambient, other.ambient)));
        }
        let (short, long) = if self.symbols.len() <= other.symbols.len() {
            (&self.symbols, &other.symbols)
        } else {
            (&other.symbols, &self.symbols)
        };
        if !long.starts_with(short) {
            return Err(Error::AmbientMismatch("incompatible symbol lists".into()));
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &StrataElement) {
        self.merge_symbols(&other.symbols);
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &StrataElement) -> StrataElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &StrataElement) -> StrataElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, p) in &self.terms {
            out.add_term(t.clone(), p.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, p: &Poly) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c * p);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c));
        }
        out
    }

    pub fn truncate(&self, d: i64) -> StrataElement {
        self.filter(|t| t.degree(self.target()) <= d)
    }

    pub fn degree_part(&self, d: i64) -> StrataElement {
        self.filter(|t| t.degree(self.target()) == d)
    }

    pub fn filter(&self, keep: impl Fn(&DecoratedTerm) -> bool) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, c) in &self.terms {
            if keep(t) {
                out.terms.insert(t.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient of one monomial in the declared symbols.
    pub fn extract_coefficient(&self, monomial: &[u32]) -> StrataElement {
        let mut out = Self::zero(&self.ambient);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), Poly::constant(c.coefficient(&monomial.to_vec())));
        }
        out
    }

    /// All symbol monomials occurring in some coefficient.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let mut ms: Vec<Vec<u32>> = self.terms.values().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        ms.sort();
        ms.dedup();
        ms
    }

    /// Scaling weight of `monomial * term`: symbol degree plus Chow codimension of
    /// the decorations.
    pub fn m_degree(&self, t: &DecoratedTerm, monomial: &[u32]) -> u32 {
        monomial.iter().sum::<u32>() + t.class_weight(self.target())
    }

    /// Sub-sum of monomial-times-term pieces with the given formal scaling weight.
    pub fn formal_m_part(&self, m: u32) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, c) in &self.terms {
            let mut p = Poly::zero();
            for (mono, v) in c.terms() {
                if self.m_degree(t, mono) == m {
                    p.add_term(mono.clone(), v.clone());
                }
            }
            out.add_term(t.clone(), p);
        }
        out
    }

    /// Numeric coefficients, if no symbol occurs.
    pub fn numeric_terms(&self) -> Option<Vec<(&DecoratedTerm, Q)>> {
        self.terms.iter().map(|(t, c)| c.as_constant().map(|v| (t, v))).collect()
    }

    pub fn is_homogeneous(&self, d: i64) -> bool {
        self.terms.keys().all(|t| t.degree(self.target()) == d)
    }

    pub fn renormalized(&self) -> StrataElement {
        let mut out = Self::with_symbols(&self.ambient, self.symbols.clone());
        for (t, c) in &self.terms {
            let raw = RawTerm::from_term(t);
            out.add_raw(&raw, c);
        }
        out
    }
}

impl fmt::Display for StrataElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "({}) * {}", c.render(&self.symbols), crate::latex::term_plain(self.target(), t))?;
        }
        Ok(())
    }
}

/// Grafts the per-vertex elements onto the vertices of `graph`. Local leg `j` of
/// the element at `v` is the `j`-th half-edge of `graph.half_edges_at(v)`.
pub fn glue_along_graph(amb: &Ambient, graph: &StableGraph, parts: &[StrataElement]) -> Result<StrataElement> {
    if parts.len() != graph.num_vertices() {
        return Err(Error::AmbientMismatch("one element per vertex is required".into()));
    }
    for (v, p) in parts.iter().enumerate() {
        let vx = &graph.vertices[v];
        let a = &p.ambient;
        if a.g != vx.genus || a.n != graph.valence(v) || a.beta != vx.beta || a.target != amb.target {
            return Err(Error::AmbientMismatch(format!("vertex {v} expects {}", a)));
        }
    }
    let symbols = parts.iter().map(|p| &p.symbols).max_by_key(|s| s.len()).cloned().unwrap_or_default();
    let mut out = StrataElement::with_symbols(amb, symbols);
    let mut combos: Vec<(Vec<&DecoratedTerm>, Poly)> = vec![(Vec::new(), Poly::one())];
    for p in parts {
        let mut next = Vec::new();
        for (picked, c) in &combos {
            for (t, ct) in p.terms() {
                let mut np = picked.clone();
                np.push(t);
                next.push((np, c * ct));
            }
        }
        combos = next;
    }
    let target = &amb.target;
    for (picked, c) in combos {
        let locals: Vec<StableGraph> = picked.iter().map(|t| t.graph.clone()).collect();
        let sub = graph.substitute(&locals);
        let mut raw = RawTerm::bare(sub.graph.clone());
        for (v, t) in picked.iter().enumerate() {
            let halves = graph.half_edges_at(v);
            for (j, &h) in halves.iter().enumerate() {
                *raw.psi_mut(h) += t.dec.leg_psi[j];
                raw.mul_class_at(target, h, &ChowElement::basis(t.dec.leg_class[j]));
            }
            for (le, &ne) in sub.inner_edge[v].iter().enumerate() {
                raw.edge_psi[ne] = t.dec.edge_psi[le];
                raw.edge_class[ne] = ChowElement::basis(t.dec.edge_class[le]);
            }
            for (lw, &nw) in sub.vertex[v].iter().enumerate() {
                raw.kappa[nw] = t.dec.kappa[lw].iter().map(|&(a, cl)| (a, ChowElement::basis(cl))).collect();
            }
        }
        out.add_raw(&raw, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;
    use crate::graph::{loop_graph, separating_graph};
    use crate::target::CurveClass;
    use std::sync::Arc;

    fn amb(g: u32, n: usize, d: u32) -> Ambient {
        Ambient::new(g, n, CurveClass(vec![d]), Arc::new(Target::projective_space(1, 1).unwrap()))
    }

    #[test]
    fn degrees() {
        let a = amb(1, 1, 1);
        let f = StrataElement::fundamental(&a);
        assert!(f.is_homogeneous(0));
        assert_eq!(f.degree_part(0), f);
        assert!(f.degree_part(1).is_zero());
        let mut eta = RawTerm::bare(StableGraph::trivial(1, 1, CurveClass(vec![1])));
        eta.kappa[0].push((-1, ChowElement::basis(1)));
        let e = StrataElement::from_raw(&a, &eta, &q(1));
        assert_eq!(e.terms().next().unwrap().0.degree(a.target.as_ref()), 0);
        let lp = loop_graph(&a);
        let mut t = RawTerm::bare(lp);
        t.edge_psi[0] = (1, 0);
        let e = StrataElement::from_raw(&a, &t, &q(1));
        assert_eq!(e.terms().next().unwrap().0.degree(a.target.as_ref()), 2);
        let t2 = RawTerm { leg_psi: vec![2], ..t };
        assert!(StrataElement::from_raw(&a, &t2, &q(1)).is_zero());
    }

    #[test]
    fn kappa_minus_one_of_unit_vanishes() {
        let a = amb(0, 3, 1);
        let mut t = RawTerm::bare(StableGraph::trivial(0, 3, CurveClass(vec![1])));
        t.kappa[0].push((-1, ChowElement::basis(0)));
        assert!(StrataElement::from_raw(&a, &t, &q(1)).is_zero());
    }

    #[test]
    fn glue_trivial_parts() {
        let a = amb(0, 3, 2);
        let gr = separating_graph(3, (0, CurveClass(vec![1]), &[1, 2]), (0, CurveClass(vec![1]), &[3]));
        let parts: Vec<StrataElement> = (0..2)
            .map(|v| {
                let va = Ambient::new(0, gr.valence(v), gr.vertices[v].beta.clone(), a.target.clone());
                StrataElement::fundamental(&va)
            })
            .collect();
        let glued = glue_along_graph(&a, &gr, &parts).unwrap();
        assert_eq!(glued, StrataElement::graph_class(&a, &gr));
    }
}
