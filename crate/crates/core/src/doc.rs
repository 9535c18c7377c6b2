//! JSON documents for elements, graph lists and fixture catalogs.
//!
//! Rationals are written as `"p/q"` strings and coefficients as polynomial
//! strings in the declared symbols. Terms appear in canonical order, so equal
//! elements serialise to identical bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::Poly;
use crate::error::{Error, Result};
use crate::graph::{Ambient, StableGraph};
use crate::strata::{RawTerm, StrataElement};
use crate::target::{ChowElement, CurveClass, Target, TargetDocument};

pub const ELEMENT_FORMAT: &str = "tautring-element/1";
pub const GRAPHS_FORMAT: &str = "tautring-graphs/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientDoc {
    pub g: u32,
    pub n: usize,
    pub beta: CurveClass,
    pub target: TargetDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub graph: StableGraph,
    pub leg_psi: Vec<u32>,
    pub leg_class: Vec<String>,
    pub edge_psi: Vec<(u32, u32)>,
    pub edge_class: Vec<String>,
    pub kappa: Vec<Vec<(i32, String)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub format: String,
    pub ambient: AmbientDoc,
    pub symbols: Vec<String>,
    pub terms: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphsDoc {
    pub format: String,
    pub ambient: AmbientDoc,
    pub max_edges: usize,
    pub shapes_only: bool,
    pub count: usize,
    pub graphs: Vec<StableGraph>,
}

pub fn ambient_doc(amb: &Ambient) -> AmbientDoc {
    AmbientDoc { g: amb.g, n: amb.n, beta: amb.beta.clone(), target: amb.target.to_document() }
}

pub fn ambient_from_doc(doc: &AmbientDoc) -> Result<Ambient> {
    let target = Target::from_document(&doc.target)?;
    if !target.admits(&doc.beta) {
        return Err(Error::Parse(format!("curve class {} is not admissible on {}", doc.beta, target.name())));
    }
    Ok(Ambient::new(doc.g, doc.n, doc.beta.clone(), Arc::new(target)))
}

pub fn element_doc(e: &StrataElement, provenance: Option<Value>) -> ElementDoc {
    let t = e.target();
    let labels = |cs: &[usize]| cs.iter().map(|&c| t.label(c).to_string()).collect::<Vec<_>>();
    let terms = e
        .terms()
        .map(|(term, c)| TermDoc {
            coeff: c.render(&e.symbols),
            graph: term.graph.clone(),
            leg_psi: term.dec.leg_psi.clone(),
            leg_class: labels(&term.dec.leg_class),
            edge_psi: term.dec.edge_psi.clone(),
            edge_class: labels(&term.dec.edge_class),
            kappa: term
                .dec
                .kappa
                .iter()
                .map(|ks| ks.iter().map(|&(a, c)| (a, t.label(c).to_string())).collect())
                .collect(),
        })
        .collect();
    ElementDoc {
        format: ELEMENT_FORMAT.into(),
        ambient: ambient_doc(&e.ambient),
        symbols: e.symbols.clone(),
        terms,
        provenance,
    }
}

pub fn element_from_doc(doc: &ElementDoc) -> Result<StrataElement> {
    if doc.format != ELEMENT_FORMAT {
        return Err(Error::Parse(format!("unsupported element format {:?}", doc.format)));
    }
    let amb = ambient_from_doc(&doc.ambient)?;
    let target = amb.target.clone();
    let class = |label: &str| {
        target
            .index_of(label)
            .map(ChowElement::basis)
            .ok_or_else(|| Error::Parse(format!("unknown basis label {label:?}")))
    };
    let mut out = StrataElement::with_symbols(&amb, doc.symbols.clone());
    for (i, t) in doc.terms.iter().enumerate() {
        let g = &t.graph;
        g.validate(&amb).map_err(|v| Error::InvalidGraph(format!("term {i}: {v}")))?;
        let (nl, ne, nv) = (g.num_legs(), g.num_edges(), g.num_vertices());
        if t.leg_psi.len() != nl || t.leg_class.len() != nl || t.edge_psi.len() != ne || t.edge_class.len() != ne
        {
            return Err(Error::Parse(format!("term {i}: decoration lengths do not match the graph")));
        }
        if t.kappa.len() != nv {
            return Err(Error::Parse(format!("term {i}: one kappa list per vertex is required")));
        }
        let mut raw = RawTerm::bare(g.clone());
        raw.leg_psi = t.leg_psi.clone();
        raw.edge_psi = t.edge_psi.clone();
        raw.leg_class = t.leg_class.iter().map(|l| class(l)).collect::<Result<_>>()?;
        raw.edge_class = t.edge_class.iter().map(|l| class(l)).collect::<Result<_>>()?;
        for (v, ks) in t.kappa.iter().enumerate() {
            for (a, l) in ks {
                if *a < -1 {
                    return Err(Error::Parse(format!("term {i}: kappa index {a} below -1")));
                }
                raw.kappa[v].push((*a, class(l)?));
            }
        }
        out.add_raw(&raw, &Poly::parse(&t.coeff, &doc.symbols)?);
    }
    Ok(out)
}

pub fn element_to_json(e: &StrataElement, provenance: Option<Value>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&element_doc(e, provenance))?)
}

pub fn element_from_json(text: &str) -> Result<StrataElement> {
    element_from_doc(&serde_json::from_str(text)?)
}

pub fn graphs_doc(amb: &Ambient, max_edges: usize, shapes_only: bool, graphs: &[StableGraph]) -> GraphsDoc {
    GraphsDoc {
        format: GRAPHS_FORMAT.into(),
        ambient: ambient_doc(amb),
        max_edges,
        shapes_only,
        count: graphs.len(),
        graphs: graphs.to_vec(),
    }
}
