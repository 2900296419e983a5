//! The polynomial ring A = F_q[t], its ideals, and the text grammar.
//!
//! Grammar (bit-exact printing): terms `c*t^k` joined by `+`, descending k;
//! a coefficient of 1 is elided, `t^1` prints as `t`, `t^0` as the bare
//! coefficient. Coefficients in non-prime fields use the generator symbol
//! `g` with the same power grammar; a multi-term coefficient in front of a
//! power of t is parenthesized, e.g. `(g+1)*t^2+g*t+1`. The parser accepts
//! omitted `*`, any term order and `-` signs.

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::fpoly;
use std::cmp::Ordering;

/// Element of A = F_q[t]: ascending coefficients (packed F_q indices),
/// trimmed, empty = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APoly(pub Vec<u32>);

impl APoly {
    pub fn zero() -> APoly {
        APoly(vec![])
    }

    pub fn one() -> APoly {
        APoly(vec![1])
    }

    pub fn t() -> APoly {
        APoly(vec![0, 1])
    }

    pub fn constant(c: u32) -> APoly {
        if c == 0 {
            APoly(vec![])
        } else {
            APoly(vec![c])
        }
    }

    pub fn from_coeffs(fq: &Fq, v: Vec<u32>) -> APoly {
        APoly(fpoly::trim(fq, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        fpoly::deg::<Fq>(&self.0)
    }

    pub fn lead(&self) -> u32 {
        *self.0.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, fq: &Fq, rhs: &APoly) -> APoly {
        APoly(fpoly::add(fq, &self.0, &rhs.0))
    }

    pub fn sub(&self, fq: &Fq, rhs: &APoly) -> APoly {
        APoly(fpoly::sub(fq, &self.0, &rhs.0))
    }

    pub fn neg(&self, fq: &Fq) -> APoly {
        APoly(fpoly::neg(fq, &self.0))
    }

    pub fn mul(&self, fq: &Fq, rhs: &APoly) -> APoly {
        APoly(fpoly::mul(fq, &self.0, &rhs.0))
    }

    pub fn divrem(&self, fq: &Fq, rhs: &APoly) -> (APoly, APoly) {
        let (q, r) = fpoly::divrem(fq, &self.0, &rhs.0);
        (APoly(q), APoly(r))
    }

    pub fn rem(&self, fq: &Fq, rhs: &APoly) -> APoly {
        self.divrem(fq, rhs).1
    }

    pub fn gcd(&self, fq: &Fq, rhs: &APoly) -> APoly {
        APoly(fpoly::gcd(fq, &self.0, &rhs.0))
    }

    pub fn monic(&self, fq: &Fq) -> APoly {
        APoly(fpoly::monic(fq, &self.0))
    }

    pub fn pow(&self, fq: &Fq, mut n: u64) -> APoly {
        let mut base = self.clone();
        let mut acc = APoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(fq, &base);
            }
            base = base.mul(fq, &base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicity of the prime divisor `pi` in self (self nonzero).
    pub fn multiplicity(&self, fq: &Fq, pi: &APoly) -> usize {
        assert!(!self.is_zero());
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.divrem(fq, pi);
            if r.is_zero() {
                m += 1;
                f = q;
            } else {
                return m;
            }
        }
    }

    pub fn cmp_canonical(&self, fq: &Fq, rhs: &APoly) -> Ordering {
        fpoly::cmp_poly(fq, &self.0, &rhs.0)
    }

    pub fn to_string(&self, fq: &Fq) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for k in (0..self.0.len()).rev() {
            let c = self.0[k];
            if c == 0 {
                continue;
            }
            let tpow = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let s = if k == 0 {
                fq.el_to_string(c)
            } else if c == 1 {
                tpow
            } else if fq.el_term_count(c) > 1 {
                format!("({})*{}", fq.el_to_string(c), tpow)
            } else {
                format!("{}*{}", fq.el_to_string(c), tpow)
            };
            terms.push(s);
        }
        terms.join("+")
    }

    pub fn parse(fq: &Fq, s: &str) -> Result<APoly> {
        Parser::new(fq, s).parse()
    }
}

/// A nonzero ideal of A, stored by its monic generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AIdeal {
    gen: APoly,
}

impl AIdeal {
    pub fn new(fq: &Fq, f: &APoly) -> Result<AIdeal> {
        if f.is_zero() {
            return Err(Error::Domain("the zero ideal is not allowed".into()));
        }
        Ok(AIdeal { gen: f.monic(fq) })
    }

    pub fn generator(&self) -> &APoly {
        &self.gen
    }

    pub fn degree(&self) -> usize {
        self.gen.deg().unwrap()
    }

    pub fn norm(&self, fq: &Fq) -> u64 {
        fq.q().pow(self.degree() as u32)
    }

    pub fn is_prime(&self, fq: &Fq) -> bool {
        fpoly::is_irreducible(fq, &self.gen.0)
    }

    pub fn mul(&self, fq: &Fq, rhs: &AIdeal) -> AIdeal {
        AIdeal { gen: self.gen.mul(fq, &rhs.gen) }
    }

    pub fn divides(&self, fq: &Fq, f: &APoly) -> bool {
        !f.is_zero() && f.rem(fq, &self.gen).is_zero()
    }

    pub fn to_string(&self, fq: &Fq) -> String {
        format!("({})", self.gen.to_string(fq))
    }

    /// Parse `(f)`; the generator is normalized monic.
    pub fn parse(fq: &Fq, s: &str) -> Result<AIdeal> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        AIdeal::new(fq, &APoly::parse(fq, inner)?)
    }
}

/// `factor_poly`: monic irreducible factors with multiplicity, sorted by
/// (degree, coefficient vector). The leading unit times the product of
/// factors reproduces the input.
pub fn factor_poly(fq: &Fq, f: &APoly) -> Result<Vec<(APoly, usize)>> {
    if f.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    Ok(fpoly::factor(fq, &f.0).into_iter().map(|(g, m)| (APoly(g), m)).collect())
}

/// All monic irreducibles of the given degree, ascending canonical order.
pub fn primes_of_degree(fq: &Fq, d: usize) -> Vec<AIdeal> {
    assert!(d >= 1);
    let q = fq.q();
    let mut out = Vec::new();
    let mut odo = vec![0u32; d];
    loop {
        let mut cand: Vec<u32> = odo.clone();
        cand.push(1);
        // quick root screen before the full test
        let has_root = fq.elements().iter().any(|c| fq.is_zero(&fpoly::eval(fq, &cand, c)));
        if (d == 1 || !has_root) && fpoly::is_irreducible(fq, &cand) {
            out.push(AIdeal { gen: APoly(cand) });
        }
        let mut pos = 0;
        loop {
            odo[pos] += 1;
            if (odo[pos] as u64) < q {
                break;
            }
            odo[pos] = 0;
            pos += 1;
            if pos == d {
                // enumeration order is numeric ascending, which equals the
                // canonical (degree, msb-down) order for fixed-degree monics
                return out;
            }
        }
    }
}

/// Primes in ascending canonical order: degree 1 primes first, etc.
pub fn primes_ascending(fq: &Fq, max_degree: usize) -> Vec<AIdeal> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(primes_of_degree(fq, d));
    }
    out
}

/// CRT: residues (value, modulus) with pairwise coprime moduli; returns the
/// unique representative modulo the product, of degree < deg(product).
pub fn crt(fq: &Fq, parts: &[(APoly, APoly)]) -> APoly {
    let mut acc = APoly::zero();
    let mut modulus = APoly::one();
    for (v, m) in parts {
        // combine: x ≡ acc (mod modulus), x ≡ v (mod m)
        let (g, s, _) = fpoly::exgcd(fq, &modulus.0, &m.0);
        assert!(fpoly::is_one(fq, &g), "CRT moduli must be coprime");
        let diff = v.sub(fq, &acc);
        // acc + modulus * s * diff  ≡ v (mod m)
        let corr = APoly(fpoly::rem(fq, &fpoly::mul(fq, &s, &diff.0), &m.0));
        acc = acc.add(fq, &modulus.mul(fq, &corr));
        modulus = modulus.mul(fq, m);
        acc = acc.rem(fq, &modulus);
    }
    acc
}

// ---------------------------------------------------------------------------
// parser

struct Parser<'a> {
    fq: &'a Fq,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(fq: &'a Fq, s: &str) -> Parser<'a> {
        Parser { fq, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse(mut self) -> Result<APoly> {
        let v = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected input at position {}",
                self.pos
            )));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<APoly> {
        let mut neg = false;
        if let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.bump();
                neg = c == '-';
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg(self.fq);
        }
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.bump();
                let t = self.term()?;
                acc = if c == '+' { acc.add(self.fq, &t) } else { acc.sub(self.fq, &t) };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<APoly> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let a = self.atom()?;
                    acc = acc.mul(self.fq, &a);
                }
                Some(c) if c.is_ascii_digit() || c == 'g' || c == 't' || c == '(' => {
                    let a = self.atom()?;
                    acc = acc.mul(self.fq, &a);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(Error::Parse("expected a number".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| Error::Parse(format!("bad number {s}")))
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.peek() == Some('^') {
            self.bump();
            self.number()
        } else {
            Ok(1)
        }
    }

    fn atom(&mut self) -> Result<APoly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                if self.bump() != Some(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(v)
            }
            Some('t') => {
                self.bump();
                let k = self.exponent()?;
                Ok(APoly::t().pow(self.fq, k))
            }
            Some('g') => {
                if self.fq.e() == 1 {
                    return Err(Error::Parse("symbol g is only valid for non-prime q".into()));
                }
                self.bump();
                let k = self.exponent()?;
                Ok(APoly::constant(self.fq.pow(&self.fq.gen(), k as u128)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(APoly::constant((n % self.fq.p()) as u32))
            }
            other => Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
}
