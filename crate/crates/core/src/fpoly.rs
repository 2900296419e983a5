//! Dense univariate polynomial arithmetic over any [`Field`].
//!
//! Polynomials are coefficient vectors in ascending power order with no
//! trailing zeros; the zero polynomial is the empty vector. All routines are
//! deterministic: equal-degree splitting runs on a fixed-seed RNG.

use crate::field::Field;
use crate::rng::SplitMix64;
use std::cmp::Ordering;

pub type FP<F> = Vec<<F as Field>::El>;

pub fn trim<F: Field>(f: &F, mut v: FP<F>) -> FP<F> {
    while let Some(last) = v.last() {
        if f.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

pub fn deg<F: Field>(v: &[F::El]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn is_zero<F: Field>(v: &[F::El]) -> bool {
    v.is_empty()
}

pub fn is_one<F: Field>(f: &F, v: &[F::El]) -> bool {
    v.len() == 1 && v[0] == f.one()
}

pub fn constant<F: Field>(f: &F, c: F::El) -> FP<F> {
    if f.is_zero(&c) {
        vec![]
    } else {
        vec![c]
    }
}

/// The monomial x.
pub fn x<F: Field>(f: &F) -> FP<F> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> FP<F> {
    let n = a.len().max(b.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        v.push(f.add(&x, &y));
    }
    trim(f, v)
}

pub fn neg<F: Field>(f: &F, a: &[F::El]) -> FP<F> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> FP<F> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &[F::El], c: &F::El) -> FP<F> {
    if f.is_zero(c) {
        return vec![];
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn mul<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> FP<F> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] = f.add(&v[i + j], &f.mul(x, y));
        }
    }
    trim(f, v)
}

/// Quotient and remainder; panics if b = 0.
pub fn divrem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> (FP<F>, FP<F>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let lead_inv = f.inv(b.last().unwrap());
    let mut rem: Vec<F::El> = a.to_vec();
    let mut quo = vec![f.zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if f.is_zero(&top) {
            continue;
        }
        let c = f.mul(&top, &lead_inv);
        quo[k] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = f.mul(&c, bj);
            rem[k + j] = f.sub(&rem[k + j], &t);
        }
    }
    (trim(f, quo), trim(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> FP<F> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::El]) -> FP<F> {
    match a.last() {
        None => vec![],
        Some(l) if *l == f.one() => a.to_vec(),
        Some(l) => scale(f, a, &f.inv(l)),
    }
}

/// Monic gcd.
pub fn gcd<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> FP<F> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub fn exgcd<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> (FP<F>, FP<F>, FP<F>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (constant(f, f.one()), vec![]);
    let (mut t0, mut t1) = (vec![], constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let ns = sub(f, &s0, &mul(f, &q, &s1));
        let nt = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    match r0.last() {
        None => (vec![], vec![], vec![]),
        Some(l) => {
            let li = f.inv(l);
            (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
        }
    }
}

/// Inverse of a modulo m, if coprime.
pub fn inv_mod<F: Field>(f: &F, a: &[F::El], m: &[F::El]) -> Option<FP<F>> {
    let (g, s, _) = exgcd(f, a, m);
    if is_one(f, &g) {
        Some(rem(f, &s, m))
    } else {
        None
    }
}

pub fn eval<F: Field>(f: &F, a: &[F::El], x: &F::El) -> F::El {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::El]) -> FP<F> {
    if a.len() <= 1 {
        return vec![];
    }
    let p = f.characteristic();
    let mut v = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = (i as u64) % p;
        let mut s = f.zero();
        let mut kk = k;
        // small multiple k·c in characteristic p
        let mut addc = c.clone();
        let mut kbit = kk;
        while kbit > 0 {
            if kbit & 1 == 1 {
                s = f.add(&s, &addc);
            }
            addc = f.add(&addc, &addc);
            kbit >>= 1;
        }
        kk = 0;
        let _ = kk;
        v.push(s);
    }
    trim(f, v)
}

pub fn pow_mod<F: Field>(f: &F, base: &[F::El], mut e: u128, m: &[F::El]) -> FP<F> {
    let mut b = rem(f, base, m);
    let mut acc = constant(f, f.one());
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Canonical order: degree first, then coefficients from the top power down.
pub fn cmp_poly<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for i in (0..a.len()).rev() {
            let c = f.cmp_el(&a[i], &b[i]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Monic irreducibility test over a finite field.
pub fn is_irreducible<F: Field>(f: &F, poly: &[F::El]) -> bool {
    let n = match deg::<F>(poly) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let q = f.size().expect("irreducibility needs a finite field");
    let m = monic(f, poly);
    let mut h = x(f);
    for _ in 0..n / 2 {
        h = pow_mod(f, &h, q, &m);
        let g = gcd(f, &sub(f, &h, &x(f)), &m);
        if !is_one(f, &g) {
            return false;
        }
    }
    true
}

/// p-th root of a polynomial whose exponents are all multiples of p.
fn poly_proot<F: Field>(f: &F, a: &[F::El]) -> FP<F> {
    let p = f.characteristic() as usize;
    let mut v = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if i % p == 0 {
            v.push(f.proot(c));
        } else {
            debug_assert!(f.is_zero(c));
        }
    }
    trim(f, v)
}

/// Squarefree decomposition of a monic polynomial in characteristic p.
pub fn squarefree_decomposition<F: Field>(f: &F, poly: &[F::El]) -> Vec<(FP<F>, usize)> {
    let p = f.characteristic() as usize;
    let a = monic(f, poly);
    if deg::<F>(&a).unwrap_or(0) == 0 {
        return vec![];
    }
    let d = derivative(f, &a);
    let mut out = Vec::new();
    if d.is_empty() {
        let root = poly_proot(f, &a);
        for (h, m) in squarefree_decomposition(f, &root) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1usize;
    while !is_one(f, &w) {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if deg::<F>(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if !is_one(f, &c) {
        let root = poly_proot(f, &c);
        for (h, m) in squarefree_decomposition(f, &root) {
            out.push((h, m * p));
        }
    }
    out
}

/// Distinct-degree split of a monic squarefree polynomial: (product, d) pairs.
pub fn distinct_degree<F: Field>(f: &F, poly: &[F::El]) -> Vec<(FP<F>, usize)> {
    let q = f.size().expect("DDF needs a finite field");
    let mut rest = monic(f, poly);
    let mut out = Vec::new();
    let mut h = rem(f, &x(f), &rest);
    let mut i = 0usize;
    while deg::<F>(&rest).unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        h = pow_mod(f, &h, q, &rest);
        let g = gcd(f, &sub(f, &h, &x(f)), &rest);
        if deg::<F>(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), i));
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
    }
    if deg::<F>(&rest).unwrap_or(0) > 0 {
        let d = deg::<F>(&rest).unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly<F: Field>(f: &F, below_deg: usize, rng: &mut SplitMix64) -> FP<F> {
    let els = f.elements();
    let mut v = Vec::with_capacity(below_deg);
    for _ in 0..below_deg {
        v.push(els[rng.below(els.len() as u64) as usize].clone());
    }
    trim(f, v)
}

/// Cantor–Zassenhaus equal-degree split: `poly` is a monic product of
/// distinct irreducibles, all of degree d.
pub fn equal_degree<F: Field>(f: &F, poly: &[F::El], d: usize, rng: &mut SplitMix64) -> Vec<FP<F>> {
    let n = deg::<F>(poly).unwrap();
    if n == d {
        return vec![monic(f, poly)];
    }
    let q = f.size().expect("EDF needs a finite field");
    loop {
        let r = random_poly(f, n, rng);
        if deg::<F>(&r).is_none() {
            continue;
        }
        let g0 = gcd(f, &r, poly);
        let g = if !is_one(f, &g0) && deg::<F>(&g0).unwrap() < n {
            g0
        } else if f.characteristic() == 2 {
            // trace map over F_{2^k}: T(r) = r + r^2 + ... + r^(2^(kd-1))
            let k = q.trailing_zeros() as usize; // q = 2^k exactly
            let kd = (q.trailing_zeros() as usize) * d;
            let _ = k;
            let mut acc = rem(f, &r, poly);
            let mut s = acc.clone();
            for _ in 1..kd {
                acc = pow_mod(f, &acc, 2, poly);
                s = add(f, &s, &acc);
            }
            gcd(f, &s, poly)
        } else {
            let e = (q.checked_pow(d as u32).expect("EDF exponent overflow") - 1) / 2;
            let s = pow_mod(f, &r, e, poly);
            gcd(f, &sub(f, &s, &constant(f, f.one())), poly)
        };
        let gd = deg::<F>(&g).unwrap_or(0);
        if gd > 0 && gd < n {
            let rest = divrem(f, poly, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &rest, d, rng));
            return out;
        }
    }
}

/// Full monic factorization into (irreducible, multiplicity), sorted
/// canonically. Deterministic (fixed split seed).
pub fn factor<F: Field>(f: &F, poly: &[F::El]) -> Vec<(FP<F>, usize)> {
    assert!(!poly.is_empty(), "factor of zero polynomial");
    let mut rng = SplitMix64::new(0x5eed_cafe);
    let mut out: Vec<(FP<F>, usize)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(f, &monic(f, poly)) {
        for (prod, d) in distinct_degree(f, &sf) {
            for irr in equal_degree(f, &prod, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| cmp_poly(f, &a.0, &b.0));
    out
}

/// Roots in the coefficient field, sorted canonically, without multiplicity.
pub fn roots<F: Field>(f: &F, poly: &[F::El]) -> Vec<F::El> {
    let mut out = Vec::new();
    if poly.is_empty() {
        return out;
    }
    if f.size().map(|s| s <= 4096).unwrap_or(false) {
        for c in f.elements() {
            if f.is_zero(&eval(f, poly, &c)) {
                out.push(c);
            }
        }
        return out;
    }
    for (irr, _) in factor(f, poly) {
        if irr.len() == 2 {
            out.push(f.neg(&irr[0]));
        }
    }
    out.sort_by(|a, b| f.cmp_el(a, b));
    out
}

/// The lexicographically first monic irreducible of the given degree,
/// reading coefficients from the highest power down.
pub fn lex_first_irreducible<F: Field>(f: &F, degree: usize) -> FP<F> {
    assert!(degree >= 1);
    if degree == 1 {
        return x(f);
    }
    let els = f.elements();
    let mut odo = vec![0usize; degree]; // odo[i] = index of coefficient of x^i
    loop {
        let mut cand: Vec<F::El> = odo.iter().map(|&i| els[i].clone()).collect();
        cand.push(f.one());
        if is_irreducible(f, &cand) {
            return cand;
        }
        // increment with carry; position 0 moves fastest
        let mut pos = 0;
        loop {
            odo[pos] += 1;
            if odo[pos] < els.len() {
                break;
            }
            odo[pos] = 0;
            pos += 1;
            assert!(pos < degree, "no irreducible of degree {degree} found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    fn p(v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    #[test]
    fn divrem_roundtrip() {
        let f3 = Fq::prime(3).unwrap();
        let a = p(&[1, 2, 0, 1, 2]);
        let b = p(&[2, 1, 1]);
        let (q, r) = divrem(&f3, &a, &b);
        let back = add(&f3, &mul(&f3, &q, &b), &r);
        assert_eq!(back, a);
        assert!(deg::<Fq>(&r).unwrap_or(0) < deg::<Fq>(&b).unwrap());
    }

    #[test]
    fn gcd_of_multiples() {
        let f2 = Fq::prime(2).unwrap();
        let g = p(&[1, 1, 1]); // t^2+t+1
        let a = mul(&f2, &g, &p(&[1, 1]));
        let b = mul(&f2, &g, &p(&[0, 1]));
        assert_eq!(gcd(&f2, &a, &b), g);
    }

    #[test]
    fn irreducibility_small() {
        let f2 = Fq::prime(2).unwrap();
        assert!(is_irreducible(&f2, &p(&[1, 1, 1])));
        assert!(!is_irreducible(&f2, &p(&[1, 0, 1]))); // (t+1)^2
        assert!(is_irreducible(&f2, &p(&[1, 1, 0, 1]))); // t^3+t+1
        assert!(is_irreducible(&f2, &p(&[1, 0, 1, 1]))); // t^3+t^2+1
        assert!(!is_irreducible(&f2, &p(&[1, 1, 1, 1]))); // (t+1)(t^2+t+1)... actually t^3+t^2+t+1=(t+1)^3? (t+1)^3 = t^3+t^2+t+1 mod 2, yes
    }

    #[test]
    fn factor_with_multiplicities() {
        let f2 = Fq::prime(2).unwrap();
        // (t)^2 (t+1) (t^2+t+1)
        let mut f = mul(&f2, &p(&[0, 0, 1]), &p(&[1, 1]));
        f = mul(&f2, &f, &p(&[1, 1, 1]));
        let fac = factor(&f2, &f);
        assert_eq!(
            fac,
            vec![(p(&[0, 1]), 2), (p(&[1, 1]), 1), (p(&[1, 1, 1]), 1)]
        );
    }

    #[test]
    fn factor_roundtrip_randomized() {
        for q in [2u64, 3, 4, 5] {
            let f = Fq::new(q).unwrap();
            let mut rng = SplitMix64::new(7 * q);
            for _ in 0..60 {
                let d = 1 + (rng.below(10) as usize);
                let mut v = random_poly(&f, d + 1, &mut rng);
                if deg::<Fq>(&v).unwrap_or(0) == 0 {
                    v = p(&[1, 1]);
                }
                let fac = factor(&f, &v);
                let mut prod = constant(&f, *v.last().unwrap());
                for (g, m) in &fac {
                    for _ in 0..*m {
                        prod = mul(&f, &prod, g);
                    }
                }
                assert_eq!(prod, v, "q={q}");
                for (g, _) in &fac {
                    assert!(is_irreducible(&f, g));
                }
            }
        }
    }

    #[test]
    fn lex_first_matches_table() {
        let f2 = Fq::prime(2).unwrap();
        assert_eq!(lex_first_irreducible(&f2, 2), p(&[1, 1, 1]));
        assert_eq!(lex_first_irreducible(&f2, 3), p(&[1, 1, 0, 1]));
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(lex_first_irreducible(&f3, 2), p(&[1, 0, 1]));
        assert_eq!(lex_first_irreducible(&f3, 3), p(&[1, 2, 0, 1]));
    }
}
