//! Exact coefficients: rationals and multivariate polynomials over them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exponent vector with trailing zeros stripped, so constants are the empty vector
/// regardless of how many symbols are declared.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Polynomial with rational coefficients in positional symbols `x0, x1, ...`.
/// Symbol names live with whoever owns the polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut p = Self::zero();
        p.add_term(m, Q::one());
        p
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(m)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no symbol dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(&trim(m.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    /// Number of symbols actually referenced.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i -> scale^deg * x_i` for a rational scale, i.e. rescales
    /// each monomial by `scale^(total degree)`.
    pub fn rescale_symbols(&self, scale: &Q) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut f = c.clone();
            for _ in 0..monomial_degree(m) {
                f *= scale;
            }
            out.add_term(m.clone(), f);
        }
        out
    }

    pub fn render(&self, symbols: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| {
                    let name = symbols.get(j).cloned().unwrap_or_else(|| format!("x{j}"));
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_q(&abs));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format_q(&abs));
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parses strings like `3/2*a1^2 - a1*a2 + 5` against a declared symbol list.
    pub fn parse(s: &str, symbols: &[String]) -> Result<Self> {
        let err = |why: &str| Error::Parse(format!("bad polynomial {s:?}: {why}"));
        let mut out = Self::zero();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut c = Q::one();
            let mut m: Monomial = vec![0; symbols.len()];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    c *= parse_q(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let idx = symbols
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| err(&format!("undeclared symbol {name}")))?;
                m[idx] += exp;
            }
            if neg {
                c = -c;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let len = m1.len().max(m2.len());
                let m: Monomial = (0..len)
                    .map(|i| m1.get(i).copied().unwrap_or(0) + m2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms() -> Vec<String> {
        vec!["a1".into(), "a2".into()]
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_q(&q_frac(6, -4)), "-3/2");
        assert_eq!(parse_q(" -3/2 ").unwrap(), q_frac(-3, 2));
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
    }

    #[test]
    fn parse_and_render() {
        let p = Poly::parse("3/2*a1^2 - a1*a2 + 5 - 5", &syms()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.render(&syms()), "-a1*a2 + 3/2*a1^2");
        let again = Poly::parse(&p.render(&syms()), &syms()).unwrap();
        assert_eq!(p, again);
        assert!(Poly::parse("b + 1", &syms()).is_err());
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = Poly::var(0);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.as_constant(), Some(Q::zero()));
    }

    #[test]
    fn product_and_eval() {
        let a = Poly::var(0);
        let b = Poly::var(1);
        let s = &a + &b;
        let sq = &s * &s;
        assert_eq!(sq.eval(&[q(2), q(3)]), q(25));
        assert_eq!(sq.coefficient(&vec![1, 1]), q(2));
        assert_eq!(sq.rescale_symbols(&q(2)).eval(&[q(1), q(1)]), q(16));
    }
}
