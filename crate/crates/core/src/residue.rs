//! Residue fields F_𝔭 = A/𝔭 and explicit finite extensions of them.
//!
//! `ResidueField` keeps polynomial representatives. For kernel computations
//! the residue field is wrapped in a `TableField` (packed element indices
//! with dense operation tables; residue fields here have at most a few
//! thousand elements), and an `ExtField` of degree m over it is
//! F_𝔭[z]/(h) with h the lexicographically first monic irreducible of
//! degree m. Extension elements carry F_q-coordinates so kernels of
//! F_q-linear maps reduce to plain linear algebra.

use crate::apoly::{AIdeal, APoly};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::fpoly;
use crate::ratfunc::RatFunc;
use std::cmp::Ordering;

/// The field A/𝔭 for a nonzero prime ideal 𝔭. Elements are polynomial
/// representatives of degree < deg 𝔭.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub fq: Fq,
    prime: AIdeal,
}

impl ResidueField {
    pub fn new(fq: &Fq, prime: &AIdeal) -> Result<ResidueField> {
        if !prime.is_prime(fq) {
            return Err(Error::NotPrime(prime.generator().to_string(fq)));
        }
        Ok(ResidueField { fq: fq.clone(), prime: prime.clone() })
    }

    pub fn prime(&self) -> &AIdeal {
        &self.prime
    }

    pub fn degree(&self) -> usize {
        self.prime.degree()
    }

    pub fn reduce(&self, f: &APoly) -> APoly {
        f.rem(&self.fq, self.prime.generator())
    }

    /// Image of t.
    pub fn t_image(&self) -> APoly {
        self.reduce(&APoly::t())
    }

    /// Reduce an element of F with nonnegative valuation at 𝔭.
    pub fn reduce_rat(&self, x: &RatFunc) -> Result<APoly> {
        if x.is_zero() {
            return Ok(APoly::zero());
        }
        let den = self.reduce(&x.den);
        if den.is_zero() {
            return Err(Error::Domain("negative valuation at the reduction prime".into()));
        }
        let num = self.reduce(&x.num);
        Ok(self.mul(&num, &self.inv(&den)))
    }

    /// If the element lies in the image of F_q, its packed index.
    pub fn as_fq_constant(&self, el: &APoly) -> Option<u32> {
        match el.deg() {
            None => Some(0),
            Some(0) => Some(el.0[0]),
            _ => None,
        }
    }

    /// Canonical numeric index of a reduced element.
    pub fn index_of(&self, el: &APoly) -> u64 {
        let q = self.fq.q();
        let mut idx = 0u64;
        for c in el.0.iter().rev() {
            idx = idx * q + *c as u64;
        }
        idx
    }

    pub fn el_from_index(&self, mut idx: u64) -> APoly {
        let q = self.fq.q();
        let mut v = Vec::new();
        while idx > 0 {
            v.push((idx % q) as u32);
            idx /= q;
        }
        APoly(v)
    }
}

impl Field for ResidueField {
    type El = APoly;

    fn zero(&self) -> APoly {
        APoly::zero()
    }

    fn one(&self) -> APoly {
        APoly::one()
    }

    fn is_zero(&self, a: &APoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &APoly, b: &APoly) -> APoly {
        a.add(&self.fq, b)
    }

    fn neg(&self, a: &APoly) -> APoly {
        a.neg(&self.fq)
    }

    fn mul(&self, a: &APoly, b: &APoly) -> APoly {
        a.mul(&self.fq, b).rem(&self.fq, self.prime.generator())
    }

    fn inv(&self, a: &APoly) -> APoly {
        assert!(!a.is_zero(), "inverse of zero in a residue field");
        APoly(
            fpoly::inv_mod(&self.fq, &a.0, &self.prime.generator().0)
                .expect("prime modulus: nonzero elements are units"),
        )
    }

    fn characteristic(&self) -> u64 {
        self.fq.p()
    }

    fn base_q(&self) -> u64 {
        self.fq.q()
    }

    fn size(&self) -> Option<u128> {
        (self.fq.q() as u128).checked_pow(self.degree() as u32)
    }

    fn from_base(&self, c: u32) -> APoly {
        APoly::constant(c)
    }

    fn elements(&self) -> Vec<APoly> {
        let total = self.size().expect("residue fields are finite") as u64;
        (0..total).map(|i| self.el_from_index(i)).collect()
    }

    fn cmp_el(&self, a: &APoly, b: &APoly) -> Ordering {
        a.cmp_canonical(&self.fq, b)
    }
}

/// A small finite field wrapping a residue field for fast kernel
/// arithmetic: elements are canonical indices, multiplication runs on
/// exp/log arrays over a multiplicative generator, addition on cached digit
/// vectors, and fields of at most 128 elements additionally carry flat
/// operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableField {
    pub res: ResidueField,
    size: u32,
    deg: usize,
    /// digit vectors of all elements, flattened (size × deg)
    digits: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    /// flat add/mul tables for small fields
    flat: Option<(Vec<u32>, Vec<u32>)>,
}

pub const TABLE_FIELD_CAP: u64 = 4096;
const FLAT_TABLE_CAP: usize = 128;

impl TableField {
    pub fn new(res: &ResidueField) -> Result<TableField> {
        let size = res.size().unwrap_or(u128::MAX);
        if size > TABLE_FIELD_CAP as u128 {
            return Err(Error::ResourceCap(format!(
                "residue field of size {size} exceeds the table cap {TABLE_FIELD_CAP}"
            )));
        }
        let n = size as usize;
        let fq = &res.fq;
        let q = fq.q();
        let deg = res.degree();

        let mut digits = vec![0u32; n * deg];
        for i in 0..n {
            let mut idx = i as u64;
            for k in 0..deg {
                digits[i * deg + k] = (idx % q) as u32;
                idx /= q;
            }
        }
        let pack = |v: &[u32]| -> u32 {
            let mut idx = 0u64;
            for d in v.iter().rev() {
                idx = idx * q + *d as u64;
            }
            idx as u32
        };
        let mut neg = vec![0u32; n];
        let mut scratch = vec![0u32; deg];
        for i in 0..n {
            for k in 0..deg {
                scratch[k] = fq.neg(&digits[i * deg + k]);
            }
            neg[i] = pack(&scratch);
        }

        // exp/log over a multiplicative generator: O(n) polynomial products
        let mut exp = vec![0u32; n - 1];
        let mut log = vec![0u32; n];
        let mut generator_found = false;
        'search: for cand in 1..n as u64 {
            let g = res.el_from_index(cand);
            let mut acc = APoly::one();
            for (k, e) in exp.iter_mut().enumerate() {
                *e = res.index_of(&acc) as u32;
                if k > 0 && acc == APoly::one() {
                    continue 'search; // order too small
                }
                acc = Field::mul(res, &acc, &g);
            }
            if acc == APoly::one() {
                generator_found = true;
                break;
            }
        }
        if !generator_found {
            return Err(Error::Inconsistency("no multiplicative generator found".into()));
        }
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let ord = (n - 1) as u32;
        let mut inv = vec![0u32; n];
        for i in 1..n {
            inv[i] = exp[((ord - log[i]) % ord) as usize];
        }

        let mut tf = TableField {
            res: res.clone(),
            size: n as u32,
            deg,
            digits,
            exp,
            log,
            neg,
            inv,
            flat: None,
        };
        if n <= FLAT_TABLE_CAP {
            let mut add_t = vec![0u32; n * n];
            let mut mul_t = vec![0u32; n * n];
            for i in 0..n as u32 {
                for j in 0..n as u32 {
                    add_t[(i as usize) * n + j as usize] = tf.add_slow(i, j);
                    mul_t[(i as usize) * n + j as usize] = tf.mul_slow(i, j);
                }
            }
            tf.flat = Some((add_t, mul_t));
        }
        Ok(tf)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let fq = &self.res.fq;
        let q = self.res.fq.q();
        let (ia, ib) = (a as usize * self.deg, b as usize * self.deg);
        let mut idx = 0u64;
        for k in (0..self.deg).rev() {
            idx = idx * q + fq.add(&self.digits[ia + k], &self.digits[ib + k]) as u64;
        }
        idx as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let ord = self.size - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % ord) as usize]
    }

    pub fn degree(&self) -> usize {
        self.res.degree()
    }

    pub fn to_apoly(&self, idx: u32) -> APoly {
        self.res.el_from_index(idx as u64)
    }

    pub fn from_apoly(&self, el: &APoly) -> u32 {
        self.res.index_of(el) as u32
    }

    /// Image of t in the residue field, as an index.
    pub fn t_image(&self) -> u32 {
        self.from_apoly(&self.res.t_image())
    }
}

impl Field for TableField {
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
        if let Some((add_t, _)) = &self.flat {
            return add_t[(*a * self.size + *b) as usize];
        }
        self.add_slow(*a, *b)
    }

    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if let Some((_, mul_t)) = &self.flat {
            return mul_t[(*a * self.size + *b) as usize];
        }
        self.mul_slow(*a, *b)
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.inv[*a as usize]
    }

    fn characteristic(&self) -> u64 {
        self.res.characteristic()
    }

    fn base_q(&self) -> u64 {
        self.res.base_q()
    }

    fn size(&self) -> Option<u128> {
        Some(self.size as u128)
    }

    fn from_base(&self, c: u32) -> u32 {
        debug_assert!((c as u64) < self.res.base_q());
        c
    }

    fn elements(&self) -> Vec<u32> {
        (0..self.size).collect()
    }

    fn cmp_el(&self, a: &u32, b: &u32) -> Ordering {
        a.cmp(b)
    }
}

/// F_𝔭[z]/(h): an explicit extension of a (table-backed) residue field.
/// Elements are coefficient index-vectors, ascending powers of z, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    pub base: TableField,
    degree: usize,
    modulus: Vec<u32>,
}

impl ExtField {
    /// Extension of the stated degree with the lex-first irreducible modulus.
    pub fn new(base: &TableField, degree: usize) -> ExtField {
        assert!(degree >= 1);
        let modulus = fpoly::lex_first_irreducible(base, degree);
        ExtField { base: base.clone(), degree, modulus }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn embed(&self, a: u32) -> Vec<u32> {
        if a == 0 {
            vec![]
        } else {
            vec![a]
        }
    }

    /// Dimension over F_q.
    pub fn fq_dim(&self) -> usize {
        self.degree * self.base.degree()
    }

    /// Flatten to F_q-coordinates (length `fq_dim`).
    pub fn to_fq_vec(&self, el: &[u32]) -> Vec<u32> {
        let bd = self.base.degree();
        let mut v = vec![0u32; self.fq_dim()];
        for (j, &c) in el.iter().enumerate() {
            let a = self.base.to_apoly(c);
            for k in 0..bd {
                v[j * bd + k] = a.coeff(k);
            }
        }
        v
    }

    pub fn from_fq_vec(&self, v: &[u32]) -> Vec<u32> {
        let bd = self.base.degree();
        let fq = &self.base.res.fq;
        let mut el = Vec::with_capacity(self.degree);
        for j in 0..self.degree {
            let mut c = Vec::with_capacity(bd);
            for k in 0..bd {
                c.push(v.get(j * bd + k).copied().unwrap_or(0));
            }
            el.push(self.base.from_apoly(&APoly(fpoly::trim(fq, c))));
        }
        fpoly::trim(&self.base, el)
    }
}

impl Field for ExtField {
    type El = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![]
    }

    fn one(&self) -> Vec<u32> {
        vec![1]
    }

    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        fpoly::add(&self.base, a, b)
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        fpoly::neg(&self.base, a)
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        fpoly::rem(&self.base, &fpoly::mul(&self.base, a, b), &self.modulus)
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        assert!(!a.is_empty(), "inverse of zero in an extension field");
        fpoly::inv_mod(&self.base, a, &self.modulus).expect("irreducible modulus")
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn base_q(&self) -> u64 {
        self.base.base_q()
    }

    fn size(&self) -> Option<u128> {
        self.base.size().and_then(|s| s.checked_pow(self.degree as u32))
    }

    fn from_base(&self, c: u32) -> Vec<u32> {
        self.embed(self.base.from_base(c))
    }

    fn elements(&self) -> Vec<Vec<u32>> {
        let size = self.size().expect("extension too large to enumerate");
        assert!(size <= 1 << 20, "extension too large to enumerate");
        let n = self.base.size().unwrap() as u32;
        let mut out = Vec::with_capacity(size as usize);
        let mut odo = vec![0u32; self.degree];
        for _ in 0..size {
            out.push(fpoly::trim(&self.base, odo.clone()));
            for digit in odo.iter_mut() {
                *digit += 1;
                if *digit < n {
                    break;
                }
                *digit = 0;
            }
        }
        out.sort_by(|a, b| self.cmp_el(a, b));
        out
    }

    fn cmp_el(&self, a: &Vec<u32>, b: &Vec<u32>) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for i in (0..a.len()).rev() {
                let c = a[i].cmp(&b[i]);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}
