//! The fraction field F = F_q(t): reduced rational functions, places of F
//! and their normalized valuations.

use crate::apoly::{AIdeal, APoly};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use std::cmp::Ordering;

/// Reduced fraction: gcd(num, den) = 1, den monic; 0 is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: APoly,
    pub den: APoly,
}

impl RatFunc {
    pub fn new(fq: &Fq, num: APoly, den: APoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::reduced(fq, num, den))
    }

    fn reduced(fq: &Fq, num: APoly, den: APoly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num: APoly::zero(), den: APoly::one() };
        }
        let g = num.gcd(fq, &den);
        let (num, den) = (num.divrem(fq, &g).0, den.divrem(fq, &g).0);
        let lead_inv = fq.inv(&den.lead());
        let num = APoly(crate::fpoly::scale(fq, &num.0, &lead_inv));
        let den = APoly(crate::fpoly::scale(fq, &den.0, &lead_inv));
        RatFunc { num, den }
    }

    pub fn from_poly(p: APoly) -> RatFunc {
        RatFunc { num: p, den: APoly::one() }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: APoly::zero(), den: APoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: APoly::one(), den: APoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial itself, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&APoly> {
        if self.den == APoly::one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn to_string(&self, fq: &Fq) -> String {
        if self.den == APoly::one() {
            self.num.to_string(fq)
        } else {
            format!("({})/({})", self.num.to_string(fq), self.den.to_string(fq))
        }
    }
}

/// A place of F: a nonzero prime ideal of A, or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(AIdeal),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree(),
            Place::Infinity => 1,
        }
    }
}

/// Normalized valuation of x at a place; None encodes v(0) = +∞.
/// The finite place must be prime.
pub fn valuation(fq: &Fq, x: &RatFunc, place: &Place) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(match place {
        Place::Infinity => x.den.deg().unwrap() as i64 - x.num.deg().unwrap() as i64,
        Place::Finite(p) => {
            debug_assert!(p.is_prime(fq), "valuation at a non-prime place");
            let pi = p.generator();
            x.num.multiplicity(fq, pi) as i64 - x.den.multiplicity(fq, pi) as i64
        }
    })
}

/// F as a coefficient field for skew polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncField {
    pub fq: Fq,
}

impl FuncField {
    pub fn new(fq: Fq) -> FuncField {
        FuncField { fq }
    }
}

impl Field for FuncField {
    type El = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }

    fn one(&self) -> RatFunc {
        RatFunc::one()
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let fq = &self.fq;
        let num = a.num.mul(fq, &b.den).add(fq, &b.num.mul(fq, &a.den));
        let den = a.den.mul(fq, &b.den);
        RatFunc::reduced(fq, num, den)
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(&self.fq), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let fq = &self.fq;
        RatFunc::reduced(fq, a.num.mul(fq, &b.num), a.den.mul(fq, &b.den))
    }

    fn inv(&self, a: &RatFunc) -> RatFunc {
        assert!(!a.is_zero(), "inverse of zero in F_q(t)");
        RatFunc::reduced(&self.fq, a.den.clone(), a.num.clone())
    }

    fn characteristic(&self) -> u64 {
        self.fq.p()
    }

    fn base_q(&self) -> u64 {
        self.fq.q()
    }

    fn size(&self) -> Option<u128> {
        None
    }

    fn from_base(&self, c: u32) -> RatFunc {
        RatFunc::from_poly(APoly::constant(c))
    }

    fn elements(&self) -> Vec<RatFunc> {
        panic!("F_q(t) is infinite")
    }

    fn cmp_el(&self, a: &RatFunc, b: &RatFunc) -> Ordering {
        a.den
            .cmp_canonical(&self.fq, &b.den)
            .then_with(|| a.num.cmp_canonical(&self.fq, &b.num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_spec_values() {
        // v_inf(t^9/(t^2+t+1)) = -7
        let f2 = Fq::prime(2).unwrap();
        let x = RatFunc::new(&f2, APoly::t().pow(&f2, 9), APoly::parse(&f2, "t^2+t+1").unwrap()).unwrap();
        assert_eq!(valuation(&f2, &x, &Place::Infinity), Some(-7));

        // v_(t)(-1/t^(q-1)) = -(q-1) for q = 5
        let f5 = Fq::prime(5).unwrap();
        let y = RatFunc::new(&f5, APoly::constant(4), APoly::t().pow(&f5, 4)).unwrap();
        let pt = AIdeal::parse(&f5, "(t)").unwrap();
        assert_eq!(valuation(&f5, &y, &Place::Finite(pt)), Some(-4));

        // v_(t+1)(t) = 0
        let p1 = AIdeal::parse(&f5, "(t+1)").unwrap();
        let t = RatFunc::from_poly(APoly::t());
        assert_eq!(valuation(&f5, &t, &Place::Finite(p1)), Some(0));

        assert_eq!(valuation(&f5, &RatFunc::zero(), &Place::Infinity), None);
    }

    #[test]
    fn field_ops_reduce() {
        let f3 = Fq::prime(3).unwrap();
        let ff = FuncField::new(f3.clone());
        let t = RatFunc::from_poly(APoly::t());
        let inv_t = ff.inv(&t);
        assert_eq!(ff.mul(&t, &inv_t), RatFunc::one());
        let s = ff.add(&inv_t, &inv_t); // 2/t
        assert_eq!(s.num, APoly::constant(2));
        assert_eq!(s.den, APoly::t());
        let z = ff.sub(&t, &t);
        assert!(z.is_zero());
        assert_eq!(z.den, APoly::one());
    }
}
