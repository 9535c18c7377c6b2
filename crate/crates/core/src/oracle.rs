//! Reference relations written out in bracket notation, a tiny intersection
//! table for the four-pointed genus-zero space, and a span-membership test.
//!
//! A bracket `[Γ]` is the class of the locus: the sum over labelled class
//! splittings of the raw pushforward divided by the automorphisms of the
//! unlabelled shape.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::{q, q_frac, Q};
use crate::error::{Error, Result};
use crate::graph::{Ambient, StableGraph, Vertex};
use crate::strata::{DecoratedTerm, RawTerm, StrataElement};
use crate::target::{enumerate_splittings, ChowElement, CurveClass, Target};

/// Identifier, the ambient shape it applies to, and a verbatim anchor.
///
/// `scale` is the factor the printed relation carries relative to the engine's
/// output (printed = scale * computed); it is 1 where nothing is cleared.
pub struct FixtureInfo {
    pub id: &'static str,
    pub genus: u32,
    pub markings: usize,
    pub anchor: &'static str,
    pub scale: i64,
}

pub const CATALOG: &[FixtureInfo] = &[
    FixtureInfo { id: "2.6/psi", genus: 0, markings: 0, anchor: "st^{*}\\psi_{i} = \\psi_{i} - [D_{i}]", scale: 1 },
    FixtureInfo { id: "2.7", genus: 0, markings: 0, anchor: "st^{*}\\kappa_{1} = \\kappa_{1} + [D]", scale: 1 },
    FixtureInfo { id: "4.2/a1^2", genus: 0, markings: 2, anchor: "Coefficient of $a_{1}^{2}$", scale: 2 },
    FixtureInfo { id: "4.2/a1", genus: 0, markings: 2, anchor: "Coefficient of $a_{1}$", scale: 1 },
    FixtureInfo { id: "4.2/a1^0", genus: 0, markings: 2, anchor: "Coefficient of $a_{1}^{0}$", scale: 2 },
    FixtureInfo { id: "4.4/m^4", genus: 1, markings: 1, anchor: "Coefficient of $m^{4}$", scale: 8 },
    FixtureInfo { id: "4.4/m^2", genus: 1, markings: 1, anchor: "Coefficient of $m^{2}$", scale: -24 },
    FixtureInfo { id: "4.4/m^0", genus: 1, markings: 1, anchor: "Coefficient of $m^{0}$", scale: 240 },
    FixtureInfo { id: "4.5/D", genus: 1, markings: 2, anchor: "The excess intersection formula gives", scale: 1 },
    FixtureInfo { id: "4.5/square", genus: 1, markings: 2, anchor: "The excess intersection formula gives", scale: 1 },
    FixtureInfo { id: "4.5/m^4a1^3", genus: 1, markings: 2, anchor: "After simplification, the relation becomes", scale: 4 },
    FixtureInfo { id: "4.5/m^4a1^3-step", genus: 1, markings: 2, anchor: "the equation is equivalent to", scale: 1 },
    FixtureInfo { id: "4.5/g0n3", genus: 0, markings: 3, anchor: "in $(g,n) = (0,3)$", scale: 1 },
    FixtureInfo { id: "4.3", genus: 1, markings: 0, anchor: "On $\\overline{\\mathcal{M}}_{1,n,\\beta}(X)$, we have", scale: 1 },
];

pub fn fixture_info(id: &str) -> Result<&'static FixtureInfo> {
    let id = if psi_leg(id).is_some() { "2.6/psi" } else { id };
    CATALOG.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFixture(id.to_string()))
}

/// Leg index in ids of the form `2.6/psi<i>`.
fn psi_leg(id: &str) -> Option<usize> {
    id.strip_prefix("2.6/psi")?.parse().ok().filter(|&i| i >= 1)
}

/// Graph shape with placeholder classes.
pub fn shape(genera: &[u32], legs: &[usize], edges: &[(usize, usize)]) -> StableGraph {
    StableGraph {
        vertices: genera.iter().map(|&g| Vertex { genus: g, beta: CurveClass(Vec::new()) }).collect(),
        legs: legs.to_vec(),
        edges: edges.to_vec(),
    }
}

/// `b = ∫_β c₁(S)` and the per-vertex values `b_v`.
pub struct Split {
    pub b: Q,
    pub bv: Vec<Q>,
}

impl Split {
    pub fn v(&self, i: usize) -> Q {
        self.bv[i].clone()
    }
}

/// One monomial decoration factor.
#[derive(Clone, Copy, Debug)]
pub enum Dec {
    Psi(usize),
    Xi(usize),
    HalfPsi(usize, usize),
    Eta(usize),
    Kappa1(usize),
}

pub type Coef = Box<dyn Fn(&Split) -> Q>;

pub fn coef(f: impl Fn(&Split) -> Q + 'static) -> Coef {
    Box::new(f)
}

pub fn constant(c: Q) -> Coef {
    Box::new(move |_| c.clone())
}

fn sq(x: Q) -> Q {
    &x * &x
}

/// `Σ_{splittings} coef * decorations * [Γ]` over all stable labelled splittings.
pub fn bracket(amb: &Ambient, shape_graph: &StableGraph, pieces: &[(Coef, Vec<Dec>)]) -> StrataElement {
    let target = amb.target.as_ref();
    let c1 = target.c1_s().clone();
    // automorphisms of the unlabelled shape, classes ignored
    let aut = q(shape_graph.canonical().automorphism_order() as i64);
    let mut out = StrataElement::zero(amb);
    for split in enumerate_splittings(&amb.beta, shape_graph.num_vertices()) {
        let mut g = shape_graph.clone();
        for (v, b) in split.into_iter().enumerate() {
            g.vertices[v].beta = b;
        }
        if g.validate(amb).is_err() {
            continue;
        }
        let s = Split {
            b: q(amb.b()),
            bv: g.vertices.iter().map(|v| Q::from_integer(target.s_degree(&v.beta))).collect(),
        };
        for (c, decs) in pieces {
            let w = c(&s) / &aut;
            if w.is_zero() {
                continue;
            }
            let mut raw = RawTerm::bare(g.clone());
            for d in decs {
                match *d {
                    Dec::Psi(i) => raw.leg_psi[i - 1] += 1,
                    Dec::Xi(i) => raw.leg_class[i - 1] = target.mul(&raw.leg_class[i - 1], &c1),
                    Dec::HalfPsi(e, 0) => raw.edge_psi[e].0 += 1,
                    Dec::HalfPsi(e, _) => raw.edge_psi[e].1 += 1,
                    Dec::Eta(v) => raw.kappa[v].push((-1, target.mul(&c1, &c1))),
                    Dec::Kappa1(v) => raw.kappa[v].push((1, ChowElement::basis(0))),
                }
            }
            out.add_raw(&raw, &crate::coeff::Poly::constant(w));
        }
    }
    out
}

fn require(amb: &Ambient, g: u32, n: usize, id: &str) -> Result<()> {
    if amb.g != g || amb.n != n {
        return Err(Error::AmbientMismatch(format!("fixture {id} lives on genus {g} with {n} markings")));
    }
    Ok(())
}

fn one(n: i64) -> Coef {
    constant(Q::from_integer(n.into()))
}

/// Expands a fixture over the class splittings of a concrete ambient.
pub fn paper_fixture(id: &str, amb: &Ambient) -> Result<StrataElement> {
    fixture_info(id)?;
    let triv = |amb: &Ambient| shape(&[amb.g], &vec![0; amb.n], &[]);
    if let Some(i) = psi_leg(id) {
        if i > amb.n {
            return Err(Error::AmbientMismatch(format!("fixture {id} needs {i} markings")));
        }
        let mut legs = vec![0; amb.n];
        legs[i - 1] = 1;
        return Ok(bracket(amb, &triv(amb), &[(one(1), vec![Dec::Psi(i)])])
            .sub(&bracket(amb, &shape(&[amb.g, 0], &legs, &[(0, 1)]), &[(one(1), vec![])])));
    }
    let el = match id {
        "2.7" => {
            let t = triv(amb);
            let legs = vec![0; amb.n];
            bracket(amb, &t, &[(one(1), vec![Dec::Kappa1(0)])])
                .add(&bracket(amb, &shape(&[amb.g, 0], &legs, &[(0, 1)]), &[(one(1), vec![])]))
        }
        "4.3" => {
            if amb.g != 1 || amb.n == 0 {
                return Err(Error::AmbientMismatch("fixture 4.3 needs genus 1 and a marking".into()));
            }
            let n = amb.n;
            let mut rel = bracket(amb, &triv(amb), &[(one(1), vec![Dec::Psi(1)])]);
            let lp = shape(&[0], &vec![0; n], &[(0, 0)]);
            rel = rel.sub(&bracket(amb, &lp, &[(constant(q_frac(1, 12)), vec![])]));
            // subsets S of the legs containing leg 1 go to the genus-zero side
            for mask in 0u64..(1 << (n - 1)) {
                let legs: Vec<usize> =
                    (0..n).map(|i| if i == 0 || (mask >> (i - 1)) & 1 == 1 { 1 } else { 0 }).collect();
                rel = rel.sub(&bracket(amb, &shape(&[1, 0], &legs, &[(0, 1)]), &[(one(1), vec![])]));
            }
            rel
        }
        "4.2/a1^2" | "4.2/a1" | "4.2/a1^0" => {
            require(amb, 0, 2, id)?;
            let t = triv(amb);
            let split = shape(&[0, 0], &[0, 1], &[(0, 1)]);
            let together = shape(&[0, 0], &[0, 0], &[(0, 1)]);
            match id {
                "4.2/a1^2" => bracket(amb, &t, &[(one(1), vec![Dec::Psi(1)]), (one(1), vec![Dec::Psi(2)])])
                    .sub(&bracket(amb, &split, &[(one(1), vec![])])),
                "4.2/a1" => bracket(
                    amb,
                    &t,
                    &[
                        (one(1), vec![Dec::Xi(1)]),
                        (one(-1), vec![Dec::Xi(2)]),
                        (coef(|s| -s.b.clone()), vec![Dec::Psi(2)]),
                    ],
                )
                .add(&bracket(amb, &split, &[(coef(|s| s.v(0)), vec![])])),
                _ => bracket(
                    amb,
                    &t,
                    &[
                        (one(-1), vec![Dec::Eta(0)]),
                        (coef(|s| sq(s.b.clone())), vec![Dec::Psi(2)]),
                        (coef(|s| Q::from_integer(2.into()) * &s.b), vec![Dec::Xi(2)]),
                    ],
                )
                .sub(&bracket(amb, &together, &[(coef(|s| sq(s.v(1))), vec![])]))
                .sub(&bracket(amb, &split, &[(coef(|s| sq(s.v(0))), vec![])])),
            }
        }
        "4.4/m^4" => {
            require(amb, 1, 1, id)?;
            let two = || Q::from_integer(2.into());
            let four = || Q::from_integer(4.into());
            let mut el = bracket(
                amb,
                &triv(amb),
                &[
                    (one(1), vec![Dec::Eta(0), Dec::Eta(0)]),
                    (coef(move |s| -four() * sq(s.b.clone())), vec![Dec::Eta(0), Dec::Psi(1)]),
                    (coef(move |s| -four() * &s.b), vec![Dec::Eta(0), Dec::Xi(1)]),
                    (coef(|s| sq(sq(s.b.clone()))), vec![Dec::Psi(1), Dec::Psi(1)]),
                    (coef(move |s| four() * sq(s.b.clone())), vec![Dec::Xi(1), Dec::Xi(1)]),
                    (coef(move |s| four() * sq(s.b.clone()) * &s.b), vec![Dec::Psi(1), Dec::Xi(1)]),
                ],
            );
            // the one-edge graphs, with the class weight read off the genus-zero end (v) or
            // the legless end
            for (legs, w) in [([0usize], 1usize), ([1usize], 0usize)] {
                let g = shape(&[1, 0], &legs, &[(0, 1)]);
                el = el.add(&bracket(
                    amb,
                    &g,
                    &[
                        (coef(move |s| two() * sq(s.v(w))), vec![Dec::Eta(0)]),
                        (coef(move |s| two() * sq(s.v(w))), vec![Dec::Eta(1)]),
                        (coef(move |s| -two() * sq(s.b.clone()) * sq(s.v(w))), vec![Dec::Psi(1)]),
                        (coef(move |s| -four() * &s.b * sq(s.v(w))), vec![Dec::Xi(1)]),
                    ],
                ));
            }
            let chain = [(0, 1), (1, 2)];
            el = el
                .add(&bracket(amb, &shape(&[1, 0, 0], &[0], &chain), &[(
                    coef(move |s| two() * sq(&s.b - s.v(0)) * sq(s.v(2))),
                    vec![],
                )]))
                .add(&bracket(amb, &shape(&[1, 0, 0], &[1], &chain), &[(
                    coef(move |s| two() * sq(s.v(0)) * sq(s.v(2))),
                    vec![],
                )]))
                .add(&bracket(amb, &shape(&[1, 0, 0], &[2], &chain), &[(
                    coef(move |s| two() * sq(s.v(0)) * sq(&s.b - s.v(2))),
                    vec![],
                )]))
                .add(&bracket(amb, &shape(&[0, 1, 0], &[0], &chain), &[(
                    coef(move |s| two() * sq(s.v(2)) * sq(&s.b - s.v(1))),
                    vec![],
                )]))
                .add(&bracket(amb, &shape(&[0, 1, 0], &[1], &chain), &[(
                    coef(move |s| two() * sq(s.v(1)) * sq(s.v(2))),
                    vec![],
                )]));
            el
        }
        "4.4/m^2" => {
            require(amb, 1, 1, id)?;
            let lp = shape(&[0], &[0], &[(0, 0)]);
            bracket(
                amb,
                &lp,
                &[(one(-1), vec![Dec::Eta(0)]), (coef(|s| Q::from_integer(2.into()) * &s.b), vec![Dec::Xi(1)])],
            )
            .add(&bracket(amb, &shape(&[0, 0], &[0], &[(0, 0), (0, 1)]), &[(coef(|s| -sq(s.v(1))), vec![])]))
            .add(&bracket(amb, &shape(&[0, 0], &[1], &[(0, 0), (0, 1)]), &[(
                coef(|s| sq(s.b.clone()) - sq(s.v(0))),
                vec![],
            )]))
            .add(&bracket(amb, &shape(&[0, 0], &[0], &[(0, 1), (0, 1)]), &[(
                coef(|s| Q::from_integer(2.into()) * sq(s.v(1))),
                vec![],
            )]))
        }
        "4.4/m^0" => {
            require(amb, 1, 1, id)?;
            let lp = shape(&[0], &[0], &[(0, 0)]);
            bracket(amb, &lp, &[(one(1), vec![Dec::HalfPsi(0, 0)]), (one(1), vec![Dec::HalfPsi(0, 1)])])
                .sub(&bracket(amb, &shape(&[0, 0], &[0], &[(0, 1), (0, 1)]), &[(one(2), vec![])]))
        }
        "4.5/D" => {
            require(amb, 1, 2, id)?;
            bracket(amb, &shape(&[1, 0], &[0, 1], &[(0, 1)]), &[(one(1), vec![])])
        }
        "4.5/square" => {
            require(amb, 1, 2, id)?;
            bracket(
                amb,
                &shape(&[1, 0], &[0, 1], &[(0, 1)]),
                &[(one(-1), vec![Dec::HalfPsi(0, 0)]), (one(-1), vec![Dec::HalfPsi(0, 1)])],
            )
            .add(&bracket(amb, &shape(&[1, 0, 0], &[0, 2], &[(0, 1), (1, 2)]), &[(one(2), vec![])]))
        }
        "4.5/m^4a1^3" => {
            require(amb, 1, 2, id)?;
            let two = || Q::from_integer(2.into());
            let mut el = bracket(
                amb,
                &triv(amb),
                &[
                    (coef(|s| s.b.clone()), vec![Dec::Psi(1), Dec::Psi(1)]),
                    (coef(|s| -s.b.clone()), vec![Dec::Psi(2), Dec::Psi(2)]),
                    (one(2), vec![Dec::Psi(1), Dec::Xi(1)]),
                    (one(-2), vec![Dec::Psi(1), Dec::Xi(2)]),
                    (one(2), vec![Dec::Psi(2), Dec::Xi(1)]),
                    (one(-2), vec![Dec::Psi(2), Dec::Xi(2)]),
                ],
            );
            // leg 1 on the genus-one end, then leg 2 there
            for (legs, sign) in [([0usize, 1usize], 1i64), ([1, 0], -1)] {
                let sg = move || Q::from_integer(sign.into());
                let (p_one, p_two) = if sign == 1 { (1usize, 0usize) } else { (0, 1) };
                el = el.add(&bracket(
                    amb,
                    &shape(&[1, 0], &legs, &[(0, 1)]),
                    &[
                        (coef(move |s| -two() * s.v(p_one)), vec![Dec::Psi(1)]),
                        (coef(move |s| two() * s.v(p_two)), vec![Dec::Psi(2)]),
                        (one(-2), vec![Dec::Xi(1)]),
                        (one(2), vec![Dec::Xi(2)]),
                        (coef(move |s| sg() * (s.v(0) - s.v(1))), vec![Dec::HalfPsi(0, 0)]),
                        (coef(move |s| sg() * (s.v(0) - s.v(1))), vec![Dec::HalfPsi(0, 1)]),
                    ],
                ));
            }
            let chain = [(0, 1), (1, 2)];
            let d13 = move |s: &Split| two() * (s.v(2) - s.v(0));
            el.add(&bracket(amb, &shape(&[1, 0, 0], &[0, 2], &chain), &[(coef(d13), vec![])]))
                .add(&bracket(amb, &shape(&[1, 0, 0], &[2, 0], &chain), &[(coef(move |s| -d13(s)), vec![])]))
                .add(&bracket(amb, &shape(&[0, 1, 0], &[0, 2], &chain), &[(coef(d13), vec![])]))
        }
        "4.5/m^4a1^3-step" => {
            require(amb, 1, 2, id)?;
            let lp = shape(&[0], &[0, 0], &[(0, 0)]);
            let third = |s: &Split| s.v(1) / Q::from_integer(3.into());
            bracket(
                amb,
                &lp,
                &[(constant(q_frac(1, 3)), vec![Dec::Xi(1)]), (constant(q_frac(-1, 3)), vec![Dec::Xi(2)])],
            )
            .add(&bracket(amb, &shape(&[1, 0], &[1, 1], &[(0, 1)]), &[
                (one(4), vec![Dec::Xi(1)]),
                (one(-4), vec![Dec::Xi(2)]),
            ]))
            .add(&bracket(amb, &shape(&[0, 0], &[1, 0], &[(0, 1), (0, 0)]), &[(coef(third), vec![])]))
            .add(&bracket(amb, &shape(&[0, 0], &[0, 1], &[(0, 1), (0, 0)]), &[(coef(move |s| -third(s)), vec![])]))
        }
        "4.5/g0n3" => {
            require(amb, 0, 3, id)?;
            let e = [(0, 1)];
            bracket(amb, &shape(&[0, 0], &[0, 0, 1], &e), &[(one(1), vec![])])
                .sub(&bracket(amb, &shape(&[0, 0], &[0, 1, 0], &e), &[(one(1), vec![])]))
        }
        _ => return Err(Error::UnknownFixture(id.to_string())),
    };
    Ok(el)
}

/// The second independent difference of the three genus-zero, three-point classes.
pub fn g0n3_second(amb: &Ambient) -> Result<StrataElement> {
    require(amb, 0, 3, "4.5/g0n3")?;
    let e = [(0, 1)];
    Ok(bracket(amb, &shape(&[0, 0], &[0, 1, 0], &e), &[(one(1), vec![])])
        .sub(&bracket(amb, &shape(&[0, 0], &[1, 0, 0], &e), &[(one(1), vec![])])))
}

/// Integral over the four-pointed genus-zero space with point target.
///
/// Each ψ_i, each boundary divisor and κ₁ (with the log canonical convention)
/// has degree one there.
pub fn evaluate_m04_point(s: &StrataElement) -> Result<Q> {
    let amb = &s.ambient;
    if amb.g != 0 || amb.n != 4 || amb.target.dim() != 0 || !amb.beta.is_zero() {
        return Err(Error::AmbientMismatch("evaluation needs genus 0, four markings, point target".into()));
    }
    let mut total = Q::zero();
    for (t, c) in s.terms() {
        let Some(c) = c.as_constant() else {
            return Err(Error::Unsupported("evaluation needs numeric coefficients".into()));
        };
        if t.degree(amb.target.as_ref()) != 1 {
            return Err(Error::Unsupported("evaluation needs a degree-one class".into()));
        }
        total += c;
    }
    Ok(total)
}

fn vector(s: &StrataElement) -> Result<BTreeMap<DecoratedTerm, Q>> {
    s.terms()
        .map(|(t, c)| {
            c.as_constant()
                .map(|v| (t.clone(), v))
                .ok_or_else(|| Error::Unsupported("span test needs numeric coefficients".into()))
        })
        .collect()
}

/// Whether `v` is a rational combination of `gens`.
pub fn in_span(v: &StrataElement, gens: &[StrataElement]) -> Result<bool> {
    Ok(remainder(v, gens)?.is_zero())
}

/// `v` reduced against the row-echelon form of `gens`.
pub fn remainder(v: &StrataElement, gens: &[StrataElement]) -> Result<StrataElement> {
    // row-reduce the generators, keyed by their pivot term
    let mut pivots: BTreeMap<DecoratedTerm, BTreeMap<DecoratedTerm, Q>> = BTreeMap::new();
    let reduce = |mut x: BTreeMap<DecoratedTerm, Q>, pivots: &BTreeMap<DecoratedTerm, BTreeMap<DecoratedTerm, Q>>| {
        loop {
            let Some(key) = x.keys().find(|k| pivots.contains_key(*k)).cloned() else { return x };
            let row = &pivots[&key];
            let f = x[&key].clone();
            for (k, c) in row {
                let e = x.entry(k.clone()).or_insert_with(Q::zero);
                *e -= &f * c;
                if e.is_zero() {
                    x.remove(k);
                }
            }
        }
    };
    for g in gens {
        let r = reduce(vector(g)?, &pivots);
        if let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = Q::one() / c;
            let row: BTreeMap<DecoratedTerm, Q> = r.into_iter().map(|(t, x)| (t, x * &inv)).collect();
            // keep rows fully reduced against the new pivot
            for other in pivots.values_mut() {
                if let Some(f) = other.get(&k).cloned() {
                    for (t, x) in &row {
                        let e = other.entry(t.clone()).or_insert_with(Q::zero);
                        *e -= &f * x;
                        if e.is_zero() {
                            other.remove(t);
                        }
                    }
                }
            }
            pivots.insert(k, row);
        }
    }
    let mut out = StrataElement::zero(&v.ambient);
    for (t, c) in reduce(vector(v)?, &pivots) {
        out.add_term(t, crate::coeff::Poly::constant(c));
    }
    Ok(out)
}

/// `x = λ y` for a single nonzero rational `λ`, returned when it exists.
pub fn proportional(x: &StrataElement, y: &StrataElement) -> Option<Q> {
    let xv = vector(x).ok()?;
    let yv = vector(y).ok()?;
    if xv.is_empty() || xv.len() != yv.len() {
        return None;
    }
    let (k, c) = yv.iter().next()?;
    let lambda = xv.get(k)? / c;
    if lambda.is_zero() {
        return None;
    }
    yv.iter().all(|(t, c)| xv.get(t) == Some(&(c * &lambda))).then_some(lambda)
}

/// Degree-one basis decorations of an ambient: ψ, evaluation, κ classes on the
/// trivial graph and every bare one-edge graph.
pub fn degree_one_terms(amb: &Ambient) -> Vec<StrataElement> {
    let target = amb.target.as_ref();
    let triv = StableGraph::trivial(amb.g, amb.n, amb.beta.clone());
    let mut raws = Vec::new();
    let by_codim = |c: u32| (0..target.basis().len()).filter(move |&i| target.codim(i) == c);
    for i in 0..amb.n {
        let mut r = RawTerm::bare(triv.clone());
        r.leg_psi[i] = 1;
        raws.push(r);
        for c in by_codim(1) {
            let mut r = RawTerm::bare(triv.clone());
            r.leg_class[i] = ChowElement::basis(c);
            raws.push(r);
        }
    }
    let mut k1 = RawTerm::bare(triv.clone());
    k1.kappa[0].push((1, ChowElement::basis(0)));
    raws.push(k1);
    for c in by_codim(1) {
        let mut r = RawTerm::bare(triv.clone());
        r.kappa[0].push((0, ChowElement::basis(c)));
        raws.push(r);
    }
    for c in by_codim(2) {
        let mut r = RawTerm::bare(triv.clone());
        r.kappa[0].push((-1, ChowElement::basis(c)));
        raws.push(r);
    }
    let mut out: Vec<StrataElement> = raws.iter().map(|r| StrataElement::from_raw(amb, r, &Q::one())).collect();
    for g in crate::graph::enumerate_graphs(amb, 1, false).iter().filter(|g| g.num_edges() == 1) {
        out.push(StrataElement::graph_class(amb, g));
    }
    out.retain(|e| !e.is_zero());
    out
}

/// Replaces `ψ_i` on a genus-zero vertex of valence three by the boundary
/// divisors separating leg `i` there. Only terms whose sole decoration is that
/// single ψ are rewritten.
pub fn rational_psi_to_boundary(el: &StrataElement, leg: usize) -> Result<StrataElement> {
    let amb = &el.ambient;
    let mut out = StrataElement::with_symbols(amb, el.symbols.clone());
    for (t, c) in el.terms() {
        let g = &t.graph;
        let v = g.legs[leg - 1];
        let mut bare = crate::strata::Decoration::bare(g);
        bare.leg_psi[leg - 1] = 1;
        if g.vertices[v].genus != 0 || g.valence(v) != 3 || t.dec != bare {
            out.add_term(t.clone(), c.clone());
            continue;
        }
        let parts: Vec<StrataElement> = (0..g.num_vertices())
            .map(|w| {
                let local = Ambient::new(g.vertices[w].genus, g.valence(w), g.vertices[w].beta.clone(), amb.target.clone());
                if w != v {
                    return Ok(StrataElement::fundamental(&local));
                }
                let j = g.half_edges_at(v).iter().position(|&h| h == crate::graph::Half::Leg(leg - 1)).unwrap_or(0);
                let mut psi = RawTerm::bare(StableGraph::trivial(0, 3, local.beta.clone()));
                psi.leg_psi[j] = 1;
                Ok(StrataElement::from_raw(&local, &psi, &Q::one()).sub(&crate::stabilization::pullback_psi(j + 1, &local)?))
            })
            .collect::<Result<_>>()?;
        out.add_assign(&crate::strata::glue_along_graph(amb, g, &parts)?.scale_poly(c));
    }
    Ok(out)
}

/// The genus-one ψ relation with leg `i` in the role of leg 1.
fn psi_boundary_relation(amb: &Ambient, i: usize) -> Result<StrataElement> {
    let rel = paper_fixture("4.3", amb)?;
    let mut perm: Vec<usize> = (1..=amb.n).collect();
    perm.swap(0, i - 1);
    crate::stabilization::relabel_legs(&rel, &perm)
}

/// Local relations available at a vertex, as elements on its own ambient.
fn vertex_relations(local: &Ambient) -> Result<Vec<StrataElement>> {
    Ok(match (local.g, local.n) {
        (1, n) if n >= 1 => (1..=n).map(|i| psi_boundary_relation(local, i)).collect::<Result<_>>()?,
        (0, 2) => vec![paper_fixture("4.2/a1^2", local)?],
        (0, 3) => {
            let mut out = vec![paper_fixture("4.5/g0n3", local)?, g0n3_second(local)?];
            // the two-point relation pulled back along each forgetful map
            let pulled = crate::stabilization::forgetful_pullback(&paper_fixture("4.2/a1^2", &local.with_n(2))?);
            for perm in [[1, 2, 3], [1, 3, 2], [3, 2, 1]] {
                out.push(crate::stabilization::relabel_legs(&pulled, &perm)?);
            }
            out
        }
        _ => Vec::new(),
    })
}

/// Relations used to rewrite the genus-one, two-point relation: the ψ relation
/// times every degree-one class, and the vertex relations grafted onto every
/// one-edge graph.
pub fn reduction_generators(amb: &Ambient) -> Result<Vec<StrataElement>> {
    let mut gens = Vec::new();
    let degree_one = degree_one_terms(amb);
    for i in 1..=amb.n {
        let rho = psi_boundary_relation(amb, i)?;
        for m in &degree_one {
            gens.push(crate::product::multiply(&rho, m)?);
        }
    }
    for g in crate::graph::enumerate_graphs(amb, 1, false).iter().filter(|g| g.num_edges() == 1) {
        let locals: Vec<Ambient> = (0..g.num_vertices())
            .map(|v| Ambient::new(g.vertices[v].genus, g.valence(v), g.vertices[v].beta.clone(), amb.target.clone()))
            .collect();
        for (v, local) in locals.iter().enumerate() {
            for rel in vertex_relations(local)? {
                let mut parts: Vec<StrataElement> = locals.iter().map(StrataElement::fundamental).collect();
                parts[v] = rel;
                gens.push(crate::strata::glue_along_graph(amb, g, &parts)?);
            }
        }
    }
    gens.retain(|e| !e.is_zero());
    Ok(gens)
}

/// Whether the printed relation minus the printed residual lies in the span of
/// [`reduction_generators`].
pub fn check_residual_reduction(amb: &Ambient) -> Result<bool> {
    let relation = paper_fixture("4.5/m^4a1^3", amb)?;
    let residual = paper_fixture("4.5/m^4a1^3-step", amb)?;
    in_span(&relation.sub(&residual), &reduction_generators(amb)?)
}

/// Outcome of comparing one fixture on one ambient.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Check {
    pub id: String,
    pub ambient: String,
    pub passed: bool,
    pub detail: String,
}

fn fixture_scale(id: &str) -> Result<Q> {
    Ok(q(fixture_info(id)?.scale))
}

/// The engine-side counterpart of a fixture, when one exists.
pub fn computed_counterpart(id: &str, amb: &Ambient) -> Result<Option<StrataElement>> {
    if let Some(i) = psi_leg(id) {
        return crate::stabilization::pullback_psi(i, amb).map(Some);
    }
    let out = match id {
        "2.7" => crate::stabilization::pullback_kappa1(amb)?,
        "4.2/a1^2" | "4.2/a1" | "4.2/a1^0" => {
            require(amb, 0, 2, id)?;
            let e = match id {
                "4.2/a1^2" => 2,
                "4.2/a1" => 1,
                _ => 0,
            };
            crate::dr::compute_p_d_symbolic(amb, 0, 1)?.0.extract_coefficient(&[e])
        }
        "4.4/m^4" | "4.4/m^2" | "4.4/m^0" => {
            require(amb, 1, 1, id)?;
            let m: u32 = id[id.len() - 1..].parse().unwrap_or(0);
            let part = crate::dr::m_graded_parts(amb, 0, 2)?.remove(&m).unwrap_or_else(|| StrataElement::zero(amb));
            if m == 2 {
                rational_psi_to_boundary(&part, 1)?
            } else {
                part
            }
        }
        "4.5/square" => {
            let d = paper_fixture("4.5/D", amb)?;
            crate::product::multiply(&d, &d)?
        }
        "4.5/m^4a1^3" => {
            // the a1^3 coefficient made antisymmetric in the two legs with the a1^4 one
            require(amb, 1, 2, id)?;
            let part = crate::dr::m_graded_parts(amb, 0, 2)?.remove(&4).unwrap_or_else(|| StrataElement::zero(amb));
            let c3 = part.extract_coefficient(&[3]);
            let c4 = part.extract_coefficient(&[4]);
            c3.add(&c4.scale(&q(2 * amb.b())))
        }
        _ => {
            fixture_info(id)?;
            return Ok(None);
        }
    };
    Ok(Some(out))
}

/// Compares `fixture` with `scale * computed` term by term.
pub fn verify_fixture(id: &str, amb: &Ambient) -> Result<Check> {
    let fixture = paper_fixture(id, amb)?;
    let Some(computed) = computed_counterpart(id, amb)? else {
        return Err(Error::Unsupported(format!("fixture {id} has no computed counterpart")));
    };
    let diff = fixture.sub(&computed.scale(&fixture_scale(id)?));
    let detail = if diff.is_zero() {
        format!("{} terms agree", fixture.len())
    } else {
        let t = amb.target.as_ref();
        let lines: Vec<String> = diff
            .terms()
            .map(|(term, c)| format!("{} {}", c.render(&diff.symbols), crate::latex::term_plain(t, term)))
            .collect();
        format!("printed - scale*computed = {}", lines.join(" ; "))
    };
    Ok(Check { id: id.to_string(), ambient: amb.to_string(), passed: diff.is_zero(), detail })
}

/// The rewrite check for the genus-one, two-point relation.
pub fn verify_reduction(amb: &Ambient) -> Result<Check> {
    let relation = paper_fixture("4.5/m^4a1^3", amb)?;
    let residual = paper_fixture("4.5/m^4a1^3-step", amb)?;
    let rest = remainder(&relation.sub(&residual), &reduction_generators(amb)?)?;
    let t = amb.target.as_ref();
    let detail = if rest.is_zero() {
        "relation minus residual lies in the span of the rewriting relations".to_string()
    } else {
        let lines: Vec<String> =
            rest.terms().map(|(term, c)| format!("{} {}", c.render(&rest.symbols), crate::latex::term_plain(t, term))).collect();
        format!("left over after reduction: {}", lines.join(" ; "))
    };
    Ok(Check { id: "4.5/m^4a1^3-step".into(), ambient: amb.to_string(), passed: rest.is_zero(), detail })
}

/// Ambients for the stabilization fixtures.
pub const STABILIZATION_SHAPES: [(u32, usize); 5] = [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)];

/// Runs every check belonging to one example (`2.7`, `4.2`, `4.3`, `4.4`, `4.5`) or `all`.
pub fn verify_example(example: &str, target: &Arc<Target>, betas: &[u32]) -> Result<Vec<Check>> {
    let amb = |g: u32, n: usize, b: u32| Ambient::new(g, n, CurveClass::multiple(target.curve_rank(), b), target.clone());
    let mut out = Vec::new();
    match example {
        "2.7" => {
            for &b in betas {
                for (g, n) in STABILIZATION_SHAPES {
                    let a = amb(g, n, b);
                    out.push(verify_fixture("2.7", &a)?);
                    for i in 1..=n {
                        out.push(verify_fixture(&format!("2.6/psi{i}"), &a)?);
                    }
                }
            }
        }
        "4.2" => {
            for &b in betas {
                for id in ["4.2/a1^2", "4.2/a1", "4.2/a1^0"] {
                    out.push(verify_fixture(id, &amb(0, 2, b))?);
                }
            }
        }
        "4.3" => {
            for &b in betas {
                out.push(verify_reduction(&amb(1, 2, b))?);
            }
        }
        "4.4" => {
            for &b in betas {
                for id in ["4.4/m^4", "4.4/m^2", "4.4/m^0"] {
                    out.push(verify_fixture(id, &amb(1, 1, b))?);
                }
            }
        }
        "4.5" => {
            let count = crate::graph::enumerate_graphs(&amb(1, 2, betas.first().copied().unwrap_or(1)), 2, true).len();
            out.push(Check {
                id: "4.5/shapes".into(),
                ambient: "(g=1, n=2, at most 2 edges, shapes only)".into(),
                passed: count == 26,
                detail: format!("{count} shapes, 26 printed"),
            });
            for &b in betas {
                let a = amb(1, 2, b);
                out.push(verify_fixture("4.5/square", &a)?);
                out.push(verify_fixture("4.5/m^4a1^3", &a)?);
                out.push(verify_reduction(&a)?);
            }
        }
        "all" => {
            for ex in ["2.7", "4.2", "4.4", "4.5"] {
                out.extend(verify_example(ex, target, betas)?);
            }
        }
        _ => return Err(Error::UnknownFixture(example.to_string())),
    }
    Ok(out)
}
