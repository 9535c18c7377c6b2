//! Exact polynomial interpolation over the rationals.

use num_traits::{One, Zero};

use crate::coeff::{Monomial, Poly, Q};

/// Monomial-basis coefficients of the unique polynomial of degree `< xs.len()`
/// through the points `(xs[i], ys[i])`.
pub fn fit(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // divided differences
    let mut dd: Vec<Q> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form
    let mut coeffs: Vec<Q> = vec![Q::zero(); n.max(1)];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Q::zero(); n.max(1)];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

pub fn eval(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

pub fn degree(coeffs: &[Q]) -> usize {
    coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Tensor-grid interpolation: `values[idx]` is the value at
/// `(nodes[idx_0], ..., nodes[idx_{m-1}])` with `idx` in row-major order.
pub fn fit_grid(nodes: &[Q], arity: usize, values: &[Q]) -> Poly {
    let len = nodes.len();
    assert_eq!(values.len(), len.pow(arity as u32));
    let mut data = values.to_vec();
    // transform one axis at a time from values to monomial coefficients
    for axis in 0..arity {
        let stride = len.pow((arity - 1 - axis) as u32);
        let block = stride * len;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                let ys: Vec<Q> = (0..len).map(|j| data[base + off + j * stride].clone()).collect();
                let c = fit(nodes, &ys);
                for j in 0..len {
                    data[base + off + j * stride] = c.get(j).cloned().unwrap_or_else(Q::zero);
                }
            }
        }
    }
    let mut p = Poly::zero();
    for (flat, c) in data.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut m: Monomial = vec![0; arity];
        let mut rest = flat;
        for axis in (0..arity).rev() {
            m[axis] = (rest % len) as u32;
            rest /= len;
        }
        p.add_term(m, c);
    }
    p
}

/// Row-major grid points for `arity` axes over `nodes`.
pub fn grid_points(nodes: &[Q], arity: usize) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|p| {
                nodes.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

pub fn binomial(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut c = Q::one();
    for i in 0..k {
        c = c * Q::from_integer((n - i).into()) / Q::from_integer((i + 1).into());
    }
    c
}

pub fn factorial(n: u32) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * Q::from_integer(i.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn recovers_cubic() {
        let xs: Vec<Q> = (3..7).map(q).collect();
        let ys: Vec<Q> = xs.iter().map(|x| x * x * x - q(2) * x + q(5)).collect();
        assert_eq!(fit(&xs, &ys), vec![q(5), q(-2), q(0), q(1)]);
        assert_eq!(eval(&fit(&xs, &ys), &q(10)), q(985));
    }

    #[test]
    fn grid_recovers_bivariate() {
        let nodes: Vec<Q> = (0..3).map(q).collect();
        let f = |x: &Q, y: &Q| x * x * y - q(3) * y + q(1);
        let vals: Vec<Q> = grid_points(&nodes, 2).iter().map(|p| f(&p[0], &p[1])).collect();
        let p = fit_grid(&nodes, 2, &vals);
        for pt in [[q(5), q(-2)], [q(7), q(4)]] {
            assert_eq!(p.eval(&pt), f(&pt[0], &pt[1]));
        }
    }
}
