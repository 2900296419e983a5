//! The base field F_q (q = p^e) and the `Field` trait implemented by every
//! coefficient field in the tower (F_q, A/𝔭, extensions of A/𝔭, F_q(t)).
//!
//! Elements of F_q are packed indices: the element Σ c_i·g^i (c_i ∈ F_p) is
//! stored as the integer Σ c_i·p^i. Index order is the canonical element
//! order used everywhere determinism matters.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Common interface for the coefficient fields in the tower.
///
/// All operations go through the context (`self`); elements are plain data so
/// they can be hashed and stored freely. `cmp_el` is the canonical total
/// order: for finite fields it agrees with the numeric order of coefficient
/// vectors read from the highest power down.
pub trait Field: Clone {
    type El: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::El, mut n: u128) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn characteristic(&self) -> u64;

    /// Cardinality of the base field F_q this field is an F_q-algebra over.
    /// The twist τ c = c^q τ always uses this q.
    fn base_q(&self) -> u64;

    /// Cardinality, if finite and representable.
    fn size(&self) -> Option<u128>;

    /// Image of the F_q element with packed index `c`.
    #[allow(clippy::wrong_self_convention)]
    fn from_base(&self, c: u32) -> Self::El;

    /// All elements in canonical order. Only for small finite fields.
    fn elements(&self) -> Vec<Self::El>;

    /// Canonical total order on elements.
    fn cmp_el(&self, a: &Self::El, b: &Self::El) -> Ordering;

    /// p-th root (inverse Frobenius). Only for finite fields.
    fn proot(&self, a: &Self::El) -> Self::El {
        let s = self.size().expect("proot needs a finite field");
        self.pow(a, s / self.characteristic() as u128)
    }
}

/// Built-in defining moduli (coefficients over F_p, ascending, monic) for
/// the small non-prime q. Each is the lexicographically first monic
/// irreducible of its degree, reading coefficients from the highest power
/// down.
const MODULUS_TABLE: &[(u64, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // q = 4:  g^2 + g + 1
    (2, 3, &[1, 1, 0, 1]),    // q = 8:  g^3 + g + 1
    (3, 2, &[1, 0, 1]),       // q = 9:  g^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // q = 16: g^4 + g + 1
    (5, 2, &[2, 0, 1]),       // q = 25: g^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // q = 27: g^3 + 2g + 1
];

/// The finite field F_q with q = p^e, presented as F_p[g]/(modulus).
/// Small fields (q ≤ 256) carry dense operation tables.
#[derive(Clone, Debug)]
pub struct Fq {
    p: u64,
    e: u32,
    q: u64,
    /// Modulus over F_p, ascending coefficients, length e+1. Empty for e = 1.
    modulus: Vec<u32>,
    tables: Option<std::sync::Arc<OpTables>>,
}

#[derive(Debug)]
struct OpTables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Fq {}

const FQ_TABLE_CAP: u64 = 256;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    /// F_p for prime p.
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Fq { p, e: 1, q: p, modulus: vec![], tables: None }.with_tables())
    }

    /// F_q for any prime power, with the deterministic built-in modulus.
    pub fn new(q: u64) -> Result<Fq> {
        if q < 2 {
            return Err(Error::Domain(format!("q = {q} is not a prime power >= 2")));
        }
        let mut p = 2u64;
        while p * p <= q {
            if q.is_multiple_of(p) {
                break;
            }
            p += 1;
        }
        if !q.is_multiple_of(p) {
            p = q; // q itself prime
        }
        let mut e = 0u32;
        let mut m = q;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if m != 1 {
            return Err(Error::Domain(format!("q = {q} is not a prime power")));
        }
        if e == 1 {
            return Fq::prime(p);
        }
        if let Some((_, _, tab)) = MODULUS_TABLE.iter().find(|(tp, te, _)| *tp == p && *te == e) {
            return Fq::with_modulus(p, e, tab.to_vec());
        }
        // Outside the table: same deterministic lex-first search used for
        // extension fields elsewhere.
        let fp = Fq::prime(p)?;
        let m = crate::fpoly::lex_first_irreducible(&fp, e as usize);
        Fq::with_modulus(p, e, m)
    }

    /// F_{p^e} with a user-supplied modulus (ascending coefficients over F_p,
    /// monic, degree e, irreducible).
    pub fn with_modulus(p: u64, e: u32, modulus: Vec<u32>) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if e < 2 {
            return Err(Error::Domain("extension degree must be >= 2".into()));
        }
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
            return Err(Error::Domain("modulus must be monic of degree e".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::Domain("modulus coefficients must lie in F_p".into()));
        }
        let fp = Fq::prime(p)?;
        let mpoly: Vec<u32> = modulus.clone();
        if !crate::fpoly::is_irreducible(&fp, &mpoly) {
            return Err(Error::Domain("modulus is reducible over F_p".into()));
        }
        let q = p.checked_pow(e).ok_or_else(|| Error::Domain("q overflows".into()))?;
        Ok(Fq { p, e, q, modulus, tables: None }.with_tables())
    }

    fn with_tables(mut self) -> Fq {
        if self.q > FQ_TABLE_CAP {
            return self;
        }
        let n = self.q as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        let mut inv = vec![0u32; n];
        for a in 0..n as u32 {
            neg[a as usize] = self.neg_raw(&a);
            if a != 0 {
                inv[a as usize] = self.pow_raw(&a, (self.q - 2) as u128);
            }
            for b in 0..n as u32 {
                add[a as usize * n + b as usize] = self.add_raw(&a, &b);
                mul[a as usize * n + b as usize] = self.mul_raw(&a, &b);
            }
        }
        self.tables = Some(std::sync::Arc::new(OpTables { add, mul, neg, inv }));
        self
    }

    fn pow_raw(&self, a: &u32, mut n: u128) -> u32 {
        let mut base = *a;
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The class of g (only meaningful for e > 1).
    pub fn gen(&self) -> u32 {
        self.p as u32
    }

    fn unpack(&self, a: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.e as usize];
        let mut a = a as u64;
        for d in v.iter_mut() {
            *d = (a % self.p) as u32;
            a /= self.p;
        }
        v
    }

    fn pack(&self, v: &[u32]) -> u32 {
        let mut a = 0u64;
        for &d in v.iter().rev() {
            a = a * self.p + d as u64;
        }
        a as u32
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u64 {
        assert!(a != 0, "order of zero");
        let mut k = 1u64;
        let mut x = a;
        while x != 1 {
            x = self.mul(&x, &a);
            k += 1;
        }
        k
    }

    /// Render an element in the g-power grammar (plain integer for prime q).
    pub fn el_to_string(&self, a: u32) -> String {
        if self.e == 1 {
            return format!("{a}");
        }
        if a == 0 {
            return "0".into();
        }
        let digits = self.unpack(a);
        let mut terms = Vec::new();
        for k in (0..digits.len()).rev() {
            let c = digits[k];
            if c == 0 {
                continue;
            }
            let t = match k {
                0 => format!("{c}"),
                1 => {
                    if c == 1 {
                        "g".into()
                    } else {
                        format!("{c}*g")
                    }
                }
                _ => {
                    if c == 1 {
                        format!("g^{k}")
                    } else {
                        format!("{c}*g^{k}")
                    }
                }
            };
            terms.push(t);
        }
        terms.join("+")
    }

    /// Number of `+`-joined terms the element prints as.
    pub fn el_term_count(&self, a: u32) -> usize {
        if self.e == 1 {
            1
        } else {
            self.unpack(a).iter().filter(|&&c| c != 0).count().max(1)
        }
    }
}

impl Field for Fq {
    type El = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        if let Some(t) = &self.tables {
            return t.add[*a as usize * self.q as usize + *b as usize];
        }
        self.add_raw(a, b)
    }

    fn neg(&self, a: &u32) -> u32 {
        if let Some(t) = &self.tables {
            return t.neg[*a as usize];
        }
        self.neg_raw(a)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if let Some(t) = &self.tables {
            return t.mul[*a as usize * self.q as usize + *b as usize];
        }
        self.mul_raw(a, b)
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.q);
        if let Some(t) = &self.tables {
            return t.inv[*a as usize];
        }
        self.pow(a, (self.q - 2) as u128)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn base_q(&self) -> u64 {
        self.q
    }

    fn size(&self) -> Option<u128> {
        Some(self.q as u128)
    }

    fn from_base(&self, c: u32) -> u32 {
        debug_assert!((c as u64) < self.q);
        c
    }

    fn elements(&self) -> Vec<u32> {
        (0..self.q as u32).collect()
    }

    fn cmp_el(&self, a: &u32, b: &u32) -> Ordering {
        a.cmp(b)
    }
}

impl Fq {
    fn add_raw(&self, a: &u32, b: &u32) -> u32 {
        if self.e == 1 {
            return ((*a as u64 + *b as u64) % self.p) as u32;
        }
        let va = self.unpack(*a);
        let vb = self.unpack(*b);
        let v: Vec<u32> = va
            .iter()
            .zip(vb.iter())
            .map(|(x, y)| ((*x as u64 + *y as u64) % self.p) as u32)
            .collect();
        self.pack(&v)
    }

    fn neg_raw(&self, a: &u32) -> u32 {
        if self.e == 1 {
            return ((self.p - *a as u64) % self.p) as u32;
        }
        let v: Vec<u32> =
            self.unpack(*a).iter().map(|x| ((self.p - *x as u64) % self.p) as u32).collect();
        self.pack(&v)
    }

    fn mul_raw(&self, a: &u32, b: &u32) -> u32 {
        if self.e == 1 {
            return ((*a as u64 * *b as u64) % self.p) as u32;
        }
        let va = self.unpack(*a);
        let vb = self.unpack(*b);
        let n = self.e as usize;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, x) in va.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u64 * *y as u64) % self.p;
            }
        }
        // reduce modulo the (monic) defining polynomial
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, m) in self.modulus.iter().enumerate().take(n) {
                let idx = k - n + j;
                prod[idx] = (prod[idx] + c * (self.p - *m as u64)) % self.p;
            }
        }
        let v: Vec<u32> = prod[..n].iter().map(|&x| x as u32).collect();
        self.pack(&v)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}
