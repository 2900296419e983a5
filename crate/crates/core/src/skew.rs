//! The twisted polynomial ring K{τ} with τ c = c^q τ, and additive
//! polynomials Σ c_i x^(q^i).

use crate::field::Field;
use std::cmp::Ordering;

/// Element of K{τ}: ascending τ-power coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly<F: Field> {
    pub c: Vec<F::El>,
}

impl<F: Field> SkewPoly<F> {
    pub fn new(f: &F, mut c: Vec<F::El>) -> SkewPoly<F> {
        while c.last().map(|x| f.is_zero(x)).unwrap_or(false) {
            c.pop();
        }
        SkewPoly { c }
    }

    pub fn zero() -> SkewPoly<F> {
        SkewPoly { c: vec![] }
    }

    pub fn constant(f: &F, x: F::El) -> SkewPoly<F> {
        SkewPoly::new(f, vec![x])
    }

    pub fn tau(f: &F) -> SkewPoly<F> {
        SkewPoly { c: vec![f.zero(), f.one()] }
    }

    pub fn deg_tau(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// ∂₀: the constant-τ coefficient.
    pub fn d0(&self, f: &F) -> F::El {
        self.c.first().cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add(&self, f: &F, rhs: &SkewPoly<F>) -> SkewPoly<F> {
        let n = self.c.len().max(rhs.c.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let x = self.c.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = rhs.c.get(i).cloned().unwrap_or_else(|| f.zero());
            v.push(f.add(&x, &y));
        }
        SkewPoly::new(f, v)
    }

    pub fn sub(&self, f: &F, rhs: &SkewPoly<F>) -> SkewPoly<F> {
        let neg = SkewPoly { c: rhs.c.iter().map(|x| f.neg(x)).collect() };
        self.add(f, &neg)
    }

    /// Twisted product: (Σ a_i τ^i)(Σ b_j τ^j) = Σ a_i · b_j^(q^i) · τ^(i+j).
    pub fn mul(&self, f: &F, rhs: &SkewPoly<F>) -> SkewPoly<F> {
        if self.c.is_empty() || rhs.c.is_empty() {
            return SkewPoly::zero();
        }
        let q = f.base_q() as u128;
        let mut v = vec![f.zero(); self.c.len() + rhs.c.len() - 1];
        // twisted[j] = b_j^(q^i), updated incrementally as i grows
        let mut twisted: Vec<F::El> = rhs.c.clone();
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                for b in twisted.iter_mut() {
                    *b = f.pow(b, q);
                }
            }
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in twisted.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        SkewPoly::new(f, v)
    }

    pub fn cmp(&self, f: &F, rhs: &SkewPoly<F>) -> Ordering {
        self.c.len().cmp(&rhs.c.len()).then_with(|| {
            for i in (0..self.c.len()).rev() {
                let c = f.cmp_el(&self.c[i], &rhs.c[i]);
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

/// An F_q-linear polynomial P(x) = Σ c_i x^(q^i), stored by its τ-expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivePoly<F: Field> {
    pub c: Vec<F::El>,
}

impl<F: Field> AdditivePoly<F> {
    pub fn from_skew(s: &SkewPoly<F>) -> AdditivePoly<F> {
        AdditivePoly { c: s.c.clone() }
    }

    /// Degree as an ordinary polynomial: q^(τ-degree).
    pub fn degree(&self, f: &F) -> Option<u64> {
        if self.c.is_empty() {
            None
        } else {
            Some(f.base_q().pow((self.c.len() - 1) as u32))
        }
    }

    pub fn eval(&self, f: &F, x: &F::El) -> F::El {
        let q = f.base_q() as u128;
        let mut acc = f.zero();
        let mut xp = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xp = f.pow(&xp, q);
            }
            acc = f.add(&acc, &f.mul(c, &xp));
        }
        acc
    }

    /// Expand into a dense ordinary polynomial (degree q^(len-1)).
    pub fn to_dense(&self, f: &F) -> Vec<F::El> {
        if self.c.is_empty() {
            return vec![];
        }
        let q = f.base_q();
        let n = q.pow((self.c.len() - 1) as u32) as usize;
        let mut v = vec![f.zero(); n + 1];
        for (i, c) in self.c.iter().enumerate() {
            let idx = q.pow(i as u32) as usize;
            v[idx] = f.add(&v[idx], c);
        }
        crate::fpoly::trim(f, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apoly::APoly;
    use crate::field::Fq;
    use crate::ratfunc::{FuncField, RatFunc};

    fn t(ff: &FuncField) -> SkewPoly<FuncField> {
        let _ = ff;
        SkewPoly { c: vec![RatFunc::from_poly(APoly::t())] }
    }

    #[test]
    fn commutation_rule() {
        // q = 2: τ · t = t^2 τ
        let ff = FuncField::new(Fq::prime(2).unwrap());
        let tau = SkewPoly::tau(&ff);
        let prod = tau.mul(&ff, &t(&ff));
        let t2 = RatFunc::from_poly(APoly::t().pow(&ff.fq, 2));
        assert_eq!(prod, SkewPoly::new(&ff, vec![RatFunc::zero(), t2]));
    }

    #[test]
    fn square_of_t_plus_tau() {
        // q = 2: (t+τ)(t+τ) = t^2 + (t^2+t)τ + τ^2 by direct expansion
        let ff = FuncField::new(Fq::prime(2).unwrap());
        let fq = &ff.fq;
        let f = t(&ff).add(&ff, &SkewPoly::tau(&ff));
        let sq = f.mul(&ff, &f);
        let t2 = APoly::t().pow(fq, 2);
        let expect = SkewPoly::new(
            &ff,
            vec![
                RatFunc::from_poly(t2.clone()),
                RatFunc::from_poly(t2.add(fq, &APoly::t())),
                RatFunc::one(),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn one_is_neutral() {
        let ff = FuncField::new(Fq::prime(3).unwrap());
        let one = SkewPoly::constant(&ff, ff.one());
        let f = SkewPoly::new(
            &ff,
            vec![
                RatFunc::from_poly(APoly::parse(&ff.fq, "t^2+1").unwrap()),
                RatFunc::from_poly(APoly::parse(&ff.fq, "2*t").unwrap()),
                RatFunc::one(),
            ],
        );
        assert_eq!(f.mul(&ff, &one), f);
        assert_eq!(one.mul(&ff, &f), f);
    }

    #[test]
    fn additive_poly_dense_expansion() {
        let fq = Fq::prime(2).unwrap();
        let ff = FuncField::new(fq.clone());
        // t·x + x^2 is the Carlitz action of t for q=2
        let car = SkewPoly::new(&ff, vec![RatFunc::from_poly(APoly::t()), RatFunc::one()]);
        let add = AdditivePoly::from_skew(&car);
        let dense = add.to_dense(&ff);
        assert_eq!(dense.len(), 3);
        assert_eq!(dense[1], RatFunc::from_poly(APoly::t()));
        assert_eq!(dense[2], RatFunc::one());
    }
}
