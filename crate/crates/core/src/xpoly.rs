//! Polynomials in x with coefficients in A = F_q[t]: Sylvester resultants by
//! fraction-free (Bareiss) elimination, and the power-polynomial transform
//! P ↦ P⁽ⁿ⁾ whose roots are the n-th powers of the roots of P.

use crate::apoly::APoly;
use crate::field::{Field, Fq};

/// Polynomial in x over A, ascending coefficients, trimmed.
pub type XPoly = Vec<APoly>;

pub fn xp_trim(mut v: XPoly) -> XPoly {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

pub fn xp_deg(v: &XPoly) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn xp_add(fq: &Fq, a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(APoly::zero);
        let y = b.get(i).cloned().unwrap_or_else(APoly::zero);
        v.push(x.add(fq, &y));
    }
    xp_trim(v)
}

pub fn xp_neg(fq: &Fq, a: &XPoly) -> XPoly {
    a.iter().map(|c| c.neg(fq)).collect()
}

pub fn xp_mul(fq: &Fq, a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![APoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] = v[i + j].add(fq, &x.mul(fq, y));
        }
    }
    xp_trim(v)
}

/// Exact division in A[x]; panics if the division is not exact.
fn xp_divexact(fq: &Fq, a: &XPoly, b: &XPoly) -> XPoly {
    assert!(!b.is_empty(), "division by zero in A[x]");
    if a.is_empty() {
        return vec![];
    }
    let mut rem = a.clone();
    let blead = b.last().unwrap();
    let mut quo = vec![APoly::zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.divrem(fq, blead);
        assert!(r.is_zero(), "inexact division in A[x]");
        quo[k] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(fq, &c.mul(fq, bj));
        }
    }
    assert!(xp_trim(rem).is_empty(), "inexact division in A[x]");
    xp_trim(quo)
}

fn a_divexact(fq: &Fq, a: &APoly, b: &APoly) -> APoly {
    let (q, r) = a.divrem(fq, b);
    assert!(r.is_zero(), "inexact division in A");
    q
}

/// Fraction-free determinant over A.
fn bareiss_a(fq: &Fq, mut m: Vec<Vec<APoly>>) -> APoly {
    let n = m.len();
    if n == 0 {
        return APoly::one();
    }
    let mut negate = false;
    let mut prev = APoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return APoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(fq, &m[k][k]).sub(fq, &m[i][k].mul(fq, &m[k][j]));
                m[i][j] = a_divexact(fq, &num, &prev);
            }
            m[i][k] = APoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg(fq)
    } else {
        det
    }
}

/// Fraction-free determinant over A[x].
fn bareiss_ax(fq: &Fq, mut m: Vec<Vec<XPoly>>) -> XPoly {
    let n = m.len();
    if n == 0 {
        return vec![APoly::one()];
    }
    let mut negate = false;
    let mut prev: XPoly = vec![APoly::one()];
    for k in 0..n - 1 {
        if m[k][k].is_empty() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_empty()) else {
                return vec![];
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = xp_add(
                    fq,
                    &xp_mul(fq, &m[i][j], &m[k][k]),
                    &xp_neg(fq, &xp_mul(fq, &m[i][k], &m[k][j])),
                );
                m[i][j] = xp_divexact(fq, &num, &prev);
            }
            m[i][k] = vec![];
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        xp_neg(fq, &det)
    } else {
        det
    }
}

fn sylvester<T: Clone>(zero: T, f: &[T], g: &[T]) -> Vec<Vec<T>> {
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let n = df + dg;
    let mut m = vec![vec![zero; n]; n];
    // rows of f (descending coefficients), then rows of g
    for i in 0..dg {
        for (j, c) in f.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in g.iter().rev().enumerate() {
            m[dg + i][i + j] = c.clone();
        }
    }
    m
}

/// Resultant of two nonzero polynomials in x over A. Zero iff they share a
/// root in an algebraic closure; for monic P it is ∏ Q(α) over roots α of P.
pub fn resultant_x(fq: &Fq, p: &XPoly, q: &XPoly) -> APoly {
    let p = xp_trim(p.clone());
    let q = xp_trim(q.clone());
    assert!(!p.is_empty() && !q.is_empty(), "resultant of a zero polynomial");
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    if dp == 0 {
        return p[0].pow(fq, dq as u64);
    }
    if dq == 0 {
        return q[0].pow(fq, dp as u64);
    }
    bareiss_a(fq, sylvester(APoly::zero(), &p, &q))
}

/// P⁽ⁿ⁾ for monic P: the monic polynomial whose roots are the n-th powers of
/// the roots of P, computed as Res_y(P(y), x − yⁿ) over A[x].
pub fn power_poly(fq: &Fq, p: &XPoly, n: u32) -> XPoly {
    assert!(n >= 1);
    let p = xp_trim(p.clone());
    assert!(
        p.last().map(|c| *c == APoly::one()).unwrap_or(false),
        "power_poly needs a monic polynomial"
    );
    if n == 1 {
        return p;
    }
    // polynomials in y with coefficients in A[x]
    let f: Vec<XPoly> = p.iter().map(|c| xp_trim(vec![c.clone()])).collect();
    let mut g: Vec<XPoly> = vec![vec![]; n as usize + 1];
    g[0] = vec![APoly::zero(), APoly::one()]; // the coefficient "x"
    g[n as usize] = vec![APoly::constant(1).neg(fq)]; // -y^n
    let dres = bareiss_ax(fq, sylvester(Vec::new(), &f, &g));
    // normalize monic (the determinant is monic up to a unit)
    let lead = dres.last().expect("power polynomial is nonzero");
    assert_eq!(lead.deg(), Some(0), "power polynomial leading coefficient must be a unit");
    let u = fq.inv(&lead.0[0]);
    dres.iter().map(|c| APoly(crate::fpoly::scale(fq, &c.0, &u))).collect()
}

pub fn xp_to_string(fq: &Fq, p: &XPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for k in (0..p.len()).rev() {
        let c = &p[k];
        if c.is_zero() {
            continue;
        }
        let xs = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        let s = if k == 0 {
            format!("({})", c.to_string(fq))
        } else if *c == APoly::one() {
            xs
        } else {
            format!("({})*{}", c.to_string(fq), xs)
        };
        terms.push(s);
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xp(fq: &Fq, coeffs: &[&str]) -> XPoly {
        xp_trim(coeffs.iter().map(|s| APoly::parse(fq, s).unwrap()).collect())
    }

    #[test]
    fn resultant_example_value() {
        // Res(x^2+t, x^2+x+t+1) over F_2[t] is t+1
        let f2 = Fq::prime(2).unwrap();
        let p = xp(&f2, &["t", "0", "1"]);
        let q = xp(&f2, &["t+1", "1", "1"]);
        assert_eq!(resultant_x(&f2, &p, &q), APoly::parse(&f2, "t+1").unwrap());
    }

    #[test]
    fn resultant_trivia() {
        let f3 = Fq::prime(3).unwrap();
        let p = xp(&f3, &["t^2+1", "t", "1"]);
        assert!(resultant_x(&f3, &p, &p).is_zero());
        // Res(x-a, x-b) = a-b
        let a = APoly::parse(&f3, "t^2+2").unwrap();
        let b = APoly::parse(&f3, "t+1").unwrap();
        let fa = vec![a.neg(&f3), APoly::one()];
        let fb = vec![b.neg(&f3), APoly::one()];
        assert_eq!(resultant_x(&f3, &fa, &fb), a.sub(&f3, &b));
    }

    #[test]
    fn resultant_detects_common_factor() {
        let f2 = Fq::prime(2).unwrap();
        let common = xp(&f2, &["t", "1"]); // x + t
        let p = xp_mul(&f2, &common, &xp(&f2, &["1", "1"]));
        let q = xp_mul(&f2, &common, &xp(&f2, &["t+1", "0", "1"]));
        assert!(resultant_x(&f2, &p, &q).is_zero());
    }

    #[test]
    fn power_poly_identity_and_squares() {
        let f2 = Fq::prime(2).unwrap();
        let p = xp(&f2, &["t", "0", "1"]); // x^2 + t, double root sqrt(t)
        assert_eq!(power_poly(&f2, &p, 1), p);
        // squaring the roots gives x^2 + t^2
        assert_eq!(power_poly(&f2, &p, 2), xp(&f2, &["t^2", "0", "1"]));

        let f5 = Fq::prime(5).unwrap();
        // (x-1)(x-t) = x^2 - (t+1)x + t; squares of roots are 1 and t^2
        let p = xp(&f5, &["t", "4*t+4", "1"]);
        let expect = xp(&f5, &["t^2", "4*t^2+4", "1"]);
        assert_eq!(power_poly(&f5, &p, 2), expect);
    }

    #[test]
    fn print_frobenius_shape() {
        let f3 = Fq::prime(3).unwrap();
        let p = xp(&f3, &["t^2+t+2", "2", "1"]);
        assert_eq!(xp_to_string(&f3, &p), "x^2 + (2)*x + (t^2+t+2)");
        let f2 = Fq::prime(2).unwrap();
        let q = xp(&f2, &["t", "0", "1"]);
        assert_eq!(xp_to_string(&f2, &q), "x^2 + (t)");
    }
}
