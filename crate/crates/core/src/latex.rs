//! Human-readable renderings of decorated terms and elements.

use crate::graph::StableGraph;
use crate::strata::{DecoratedTerm, StrataElement};
use crate::target::Target;

pub fn graph_plain(g: &StableGraph) -> String {
    let verts: Vec<String> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let legs: Vec<String> =
                (0..g.legs.len()).filter(|&i| g.legs[i] == v).map(|i| (i + 1).to_string()).collect();
            format!("v{v}(g{},b{};{})", x.genus, x.beta, legs.join(","))
        })
        .collect();
    let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("v{a}-v{b}")).collect();
    if edges.is_empty() {
        format!("[{}]", verts.join(" "))
    } else {
        format!("[{} | {}]", verts.join(" "), edges.join(" "))
    }
}

fn pow(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Compact one-line form, e.g. `psi1^2*ev2(H)*kappa1(1)@v0 [v0(g1,b1;1,2)]`.
pub fn term_plain(target: &Target, t: &DecoratedTerm) -> String {
    let d = &t.dec;
    let mut f = Vec::new();
    for (i, (&c, &p)) in d.leg_class.iter().zip(&d.leg_psi).enumerate() {
        if p > 0 {
            f.push(pow(format!("psi{}", i + 1), p));
        }
        if c != 0 {
            f.push(format!("ev{}({})", i + 1, target.label(c)));
        }
    }
    for (e, (&(p0, p1), &c)) in d.edge_psi.iter().zip(&d.edge_class).enumerate() {
        if p0 > 0 {
            f.push(pow(format!("psi(e{e}.0)"), p0));
        }
        if p1 > 0 {
            f.push(pow(format!("psi(e{e}.1)"), p1));
        }
        if c != 0 {
            f.push(format!("ev(e{e})({})", target.label(c)));
        }
    }
    for (v, ks) in d.kappa.iter().enumerate() {
        for &(a, c) in ks {
            f.push(format!("kappa{a}({})@v{v}", target.label(c)));
        }
    }
    let head = if f.is_empty() { "1".to_string() } else { f.join("*") };
    format!("{head} {}", graph_plain(&t.graph))
}

pub fn graph_latex(g: &StableGraph) -> String {
    let verts: Vec<String> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let legs: Vec<String> =
                (0..g.legs.len()).filter(|&i| g.legs[i] == v).map(|i| (i + 1).to_string()).collect();
            let genus = if x.genus > 0 { format!("{},", x.genus) } else { String::new() };
            format!("({genus}\\beta={})_{{{}}}", x.beta, legs.join(","))
        })
        .collect();
    let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}\\!-\\!{b}")).collect();
    if edges.is_empty() {
        format!("\\Big[{}\\Big]", verts.join("\\;"))
    } else {
        format!("\\Big[{}\\;;\\;{}\\Big]", verts.join("\\;"), edges.join(",\\,"))
    }
}

pub fn term_latex(target: &Target, t: &DecoratedTerm) -> String {
    let d = &t.dec;
    let mut f = Vec::new();
    let sup = |e: u32| if e == 1 { String::new() } else { format!("^{{{e}}}") };
    for (i, (&c, &p)) in d.leg_class.iter().zip(&d.leg_psi).enumerate() {
        if p > 0 {
            f.push(format!("\\psi_{{{}}}{}", i + 1, sup(p)));
        }
        if c != 0 {
            f.push(format!("ev_{{{}}}^{{*}}{}", i + 1, target.label(c)));
        }
    }
    for (e, (&(p0, p1), &c)) in d.edge_psi.iter().zip(&d.edge_class).enumerate() {
        if p0 > 0 {
            f.push(format!("\\psi_{{h_{e}}}{}", sup(p0)));
        }
        if p1 > 0 {
            f.push(format!("\\psi_{{h'_{e}}}{}", sup(p1)));
        }
        if c != 0 {
            f.push(format!("ev_{{e_{e}}}^{{*}}{}", target.label(c)));
        }
    }
    for (v, ks) in d.kappa.iter().enumerate() {
        for &(a, c) in ks {
            f.push(format!("\\kappa_{{{a}}}({})_{{v_{v}}}", target.label(c)));
        }
    }
    format!("{}{}", f.join(" "), graph_latex(&t.graph))
}

/// The element as a LaTeX sum, one term per line, in canonical order.
pub fn element_latex(e: &StrataElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let lines: Vec<String> = e
        .terms()
        .map(|(t, c)| format!("\\left({}\\right) {}", c.render(&e.symbols), term_latex(e.target(), t)))
        .collect();
    lines.join("\n+ ")
}
