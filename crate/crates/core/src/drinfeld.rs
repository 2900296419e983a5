//! Drinfeld modules over an A-field K: the homomorphism a ↦ φ_a, rank-2
//! j-invariants, reduction types at primes, and torsion polynomials.

use crate::apoly::{factor_poly, AIdeal, APoly};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::ratfunc::{valuation, FuncField, Place, RatFunc};
use crate::residue::ResidueField;
use crate::skew::{AdditivePoly, SkewPoly};

/// A Drinfeld module over the coefficient field F, given by
/// φ_t = ι(t) + a_1 τ + … + a_r τ^r with a_r ≠ 0.
#[derive(Clone, Debug)]
pub struct DrinfeldModule<F: Field> {
    pub field: F,
    pub t_image: F::El,
    /// a_1 … a_r.
    pub coeffs: Vec<F::El>,
    /// The characteristic prime for reduced modules; None in generic
    /// characteristic.
    pub char_prime: Option<AIdeal>,
}

impl<F: Field> DrinfeldModule<F> {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn phi_t(&self) -> SkewPoly<F> {
        let mut c = vec![self.t_image.clone()];
        c.extend(self.coeffs.iter().cloned());
        SkewPoly::new(&self.field, c)
    }

    /// φ_a by Horner evaluation of a at φ_t.
    pub fn phi_of(&self, a: &APoly) -> SkewPoly<F> {
        let f = &self.field;
        let phi_t = self.phi_t();
        let mut acc = SkewPoly::zero();
        for k in (0..a.0.len()).rev() {
            acc = acc.mul(f, &phi_t);
            acc = acc.add(f, &SkewPoly::constant(f, f.from_base(a.0[k])));
        }
        acc
    }

    /// j-invariant a₁^(q+1)/a₂ of a rank-2 module.
    pub fn j_invariant(&self) -> F::El {
        assert_eq!(self.rank(), 2, "j-invariant needs rank 2");
        let f = &self.field;
        let q = f.base_q() as u128;
        f.div(&f.pow(&self.coeffs[0], q + 1), &self.coeffs[1])
    }

    /// The additive polynomial φ_g for the monic generator g of 𝔞.
    pub fn torsion_polynomial(&self, a: &AIdeal) -> AdditivePoly<F> {
        AdditivePoly::from_skew(&self.phi_of(a.generator()))
    }
}

impl DrinfeldModule<FuncField> {
    /// Generic-characteristic module over F = F_q(t).
    pub fn generic(fq: &Fq, coeffs: Vec<RatFunc>) -> Result<DrinfeldModule<FuncField>> {
        if coeffs.last().map(|c| c.is_zero()).unwrap_or(true) {
            return Err(Error::Domain("the top coefficient a_r must be nonzero".into()));
        }
        Ok(DrinfeldModule {
            field: FuncField::new(fq.clone()),
            t_image: RatFunc::from_poly(APoly::t()),
            coeffs,
            char_prime: None,
        })
    }

    /// The rank-2 family member φ(a) for a = (a₁, a₂) ∈ A², a₂ ≠ 0.
    pub fn family(fq: &Fq, a1: &APoly, a2: &APoly) -> Result<DrinfeldModule<FuncField>> {
        Self::generic(fq, vec![RatFunc::from_poly(a1.clone()), RatFunc::from_poly(a2.clone())])
    }

    pub fn fq(&self) -> &Fq {
        &self.field.fq
    }

    /// Twist by b ∈ F^×: a_i ↦ b^(q^i − 1)·a_i. Isomorphic module.
    pub fn twist(&self, b: &RatFunc) -> DrinfeldModule<FuncField> {
        assert!(!b.is_zero());
        let f = &self.field;
        let q = f.base_q() as u128;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| f.mul(a, &f.pow(b, q.pow(i as u32 + 1) - 1)))
            .collect();
        DrinfeldModule {
            field: f.clone(),
            t_image: self.t_image.clone(),
            coeffs,
            char_prime: None,
        }
    }

    pub fn reduction_type(&self, p: &AIdeal) -> Result<ReductionReport> {
        if self.rank() != 2 {
            return Err(Error::Unsupported("reduction types are rank-2 only".into()));
        }
        if !p.is_prime(self.fq()) {
            return Err(Error::NotPrime(p.generator().to_string(self.fq())));
        }
        let fq = self.fq();
        let q = fq.q() as i64;
        let place = Place::Finite(p.clone());
        let v1 = valuation(fq, &self.coeffs[0], &place);
        let v2 = valuation(fq, &self.coeffs[1], &place).expect("a2 is nonzero");
        let vj = {
            let j = self.j_invariant();
            valuation(fq, &j, &place)
        };
        // compare v1/(q-1) with v2/(q^2-1) by cross multiplication
        let pot_rank2 = match v1 {
            None => true,
            Some(v1) => v2 * (q - 1) <= v1 * (q * q - 1),
        };
        let m = match v1 {
            None => Rational::new(v2, q * q - 1),
            Some(v1) => {
                let r1 = Rational::new(v1, q - 1);
                let r2 = Rational::new(v2, q * q - 1);
                if r1.le(&r2) {
                    r1
                } else {
                    r2
                }
            }
        };
        let (kind, j) = if pot_rank2 {
            if v2.rem_euclid(q * q - 1) == 0 {
                (ReductionKind::Good, 2)
            } else {
                (ReductionKind::PotentiallyGoodNotGood, 2)
            }
        } else {
            let v1 = v1.unwrap();
            if v1.rem_euclid(q - 1) == 0 {
                (ReductionKind::StableRank1, 1)
            } else {
                (ReductionKind::NotStableOverBase, 1)
            }
        };
        Ok(ReductionReport { prime: p.clone(), kind, potential_rank: j, m, v_j: vj })
    }

    /// Reduce a rank-2 module with good reduction at 𝔭, applying the unit
    /// twist that clears the valuation of a₂.
    pub fn reduce_at(&self, p: &AIdeal) -> Result<DrinfeldModule<ResidueField>> {
        let report = self.reduction_type(p)?;
        if report.kind != ReductionKind::Good {
            return Err(Error::Domain(format!(
                "no good reduction at {}",
                p.to_string(self.fq())
            )));
        }
        let fq = self.fq();
        let q = fq.q() as i64;
        let place = Place::Finite(p.clone());
        let v2 = valuation(fq, &self.coeffs[1], &place).unwrap();
        let k = -v2 / (q * q - 1);
        let res = ResidueField::new(fq, p)?;
        let ff = &self.field;
        let pi = RatFunc::from_poly(p.generator().clone());
        let mut reduced = Vec::with_capacity(2);
        for (i, a) in self.coeffs.iter().enumerate() {
            let shift = (q.pow(i as u32 + 1) - 1) * k;
            let twisted = if shift >= 0 {
                ff.mul(a, &ff.pow(&pi, shift as u128))
            } else {
                ff.div(a, &ff.pow(&pi, (-shift) as u128))
            };
            reduced.push(res.reduce_rat(&twisted)?);
        }
        if reduced[1].is_zero() {
            return Err(Error::Inconsistency("rank dropped under good reduction".into()));
        }
        Ok(DrinfeldModule {
            field: res.clone(),
            t_image: res.t_image(),
            coeffs: reduced,
            char_prime: Some(p.clone()),
        })
    }

    /// Primes of bad (non-good) reduction of a rank-2 module, ascending.
    pub fn bad_primes(&self) -> Result<Vec<AIdeal>> {
        if self.rank() != 2 {
            return Err(Error::Unsupported("bad locus is rank-2 only".into()));
        }
        let fq = self.fq();
        let mut cands = std::collections::BTreeSet::new();
        let a1 = &self.coeffs[0];
        let a2 = &self.coeffs[1];
        for poly in [&a2.num, &a2.den, &a1.den] {
            if poly.deg().unwrap_or(0) >= 1 {
                for (f, _) in factor_poly(fq, poly)? {
                    cands.insert(f);
                }
            }
        }
        let mut out = Vec::new();
        for gen in cands {
            let ideal = AIdeal::new(fq, &gen)?;
            if self.reduction_type(&ideal)?.kind != ReductionKind::Good {
                out.push(ideal);
            }
        }
        out.sort_by(|a, b| a.generator().cmp_canonical(fq, b.generator()));
        Ok(out)
    }
}

impl DrinfeldModule<ResidueField> {
    /// The characteristic prime of a reduced module.
    pub fn characteristic(&self) -> &AIdeal {
        self.char_prime.as_ref().expect("reduced modules carry their characteristic")
    }
}

/// Exact rational for the slope m = min_i v(a_i)/(q^i − 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den > 0);
        let g = gcd_i64(num.abs(), den);
        if g == 0 {
            Rational { num: 0, den: 1 }
        } else {
            Rational { num: num / g, den: den / g }
        }
    }

    pub fn le(&self, rhs: &Rational) -> bool {
        self.num * rhs.den <= rhs.num * self.den
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ReductionKind {
    Good,
    StableRank1,
    PotentiallyGoodNotGood,
    NotStableOverBase,
}

/// Outcome of the reduction analysis at one prime.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub prime: AIdeal,
    pub kind: ReductionKind,
    /// Rank of the stable reduction over an extension (2 = potentially good).
    pub potential_rank: usize,
    /// min_i v(a_i)/(q^i − 1) as an exact rational.
    pub m: Rational,
    /// v_𝔭(j_φ); None encodes +∞ (j = 0).
    pub v_j: Option<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_q2(fq: &Fq) -> DrinfeldModule<FuncField> {
        DrinfeldModule::family(
            fq,
            &APoly::parse(fq, "t^3").unwrap(),
            &APoly::parse(fq, "t^2+t+1").unwrap(),
        )
        .unwrap()
    }

    fn example_general(fq: &Fq) -> DrinfeldModule<FuncField> {
        // t + τ - t^(q-1) τ^2
        let a2 = APoly::t().pow(fq, fq.q() - 1).neg(fq);
        DrinfeldModule::family(fq, &APoly::one(), &a2).unwrap()
    }

    #[test]
    fn phi_of_t_is_phi_t() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        assert_eq!(dm.phi_of(&APoly::t()), dm.phi_t());
    }

    #[test]
    fn phi_of_t_squared_carlitz() {
        // q=2, ψ_t = t + τ: φ_(t²) = t² + (t²+t)τ + τ²
        let fq = Fq::prime(2).unwrap();
        let psi = DrinfeldModule::generic(&fq, vec![RatFunc::one()]).unwrap();
        let got = psi.phi_of(&APoly::parse(&fq, "t^2").unwrap());
        let sq = psi.phi_t().mul(&psi.field, &psi.phi_t());
        assert_eq!(got, sq);
        assert_eq!(got.c.len(), 3);
        assert_eq!(got.c[1], RatFunc::from_poly(APoly::parse(&fq, "t^2+t").unwrap()));
    }

    #[test]
    fn j_invariant_values() {
        let f2 = Fq::prime(2).unwrap();
        let dm = example_q2(&f2);
        let j = dm.j_invariant();
        assert_eq!(j.num, APoly::parse(&f2, "t^9").unwrap());
        assert_eq!(j.den, APoly::parse(&f2, "t^2+t+1").unwrap());

        let f5 = Fq::prime(5).unwrap();
        let dm5 = example_general(&f5);
        let j5 = dm5.j_invariant();
        // -1/t^4
        assert_eq!(j5.num, APoly::constant(4));
        assert_eq!(j5.den, APoly::parse(&f5, "t^4").unwrap());

        let zero_j = DrinfeldModule::family(&f2, &APoly::zero(), &APoly::one()).unwrap();
        assert!(zero_j.j_invariant().is_zero());
    }

    #[test]
    fn reduction_types_of_the_examples() {
        let f2 = Fq::prime(2).unwrap();
        let dm = example_q2(&f2);
        let p_bad = AIdeal::parse(&f2, "(t^2+t+1)").unwrap();
        let r = dm.reduction_type(&p_bad).unwrap();
        assert_eq!(r.kind, ReductionKind::StableRank1);
        assert_eq!(r.v_j, Some(-1));
        assert_eq!(r.potential_rank, 1);

        let p_good = AIdeal::parse(&f2, "(t)").unwrap();
        assert_eq!(dm.reduction_type(&p_good).unwrap().kind, ReductionKind::Good);
        assert_eq!(dm.bad_primes().unwrap(), vec![p_bad]);

        let f5 = Fq::prime(5).unwrap();
        let dm5 = example_general(&f5);
        let p_t = AIdeal::parse(&f5, "(t)").unwrap();
        let r5 = dm5.reduction_type(&p_t).unwrap();
        assert_eq!(r5.kind, ReductionKind::StableRank1);
        assert_eq!(r5.v_j, Some(-4));
    }

    #[test]
    fn reduction_classifies_fractional_slopes() {
        // q=3, a1 = 1, a2 = t: v2 = 1 is not divisible by q^2-1 = 8 and
        // m is attained at i = 1 only
        let f3 = Fq::prime(3).unwrap();
        let dm = DrinfeldModule::family(&f3, &APoly::one(), &APoly::t()).unwrap();
        let p = AIdeal::parse(&f3, "(t)").unwrap();
        let r = dm.reduction_type(&p).unwrap();
        assert_eq!(r.kind, ReductionKind::StableRank1);
        assert_eq!(r.m, Rational::new(0, 1));
        // a1 = t, a2 = t: slopes 1/2 vs 1/8, m = 1/8 at i=2, 8 ∤ 1
        let dm2 = DrinfeldModule::family(&f3, &APoly::t(), &APoly::t()).unwrap();
        let r2 = dm2.reduction_type(&p).unwrap();
        assert_eq!(r2.kind, ReductionKind::PotentiallyGoodNotGood);
        assert_eq!(r2.m, Rational::new(1, 8));
        // a1 = t^2, a2 = t: slopes 1 vs 1/8, m = 1/8 at i=2, 8 ∤ 1
        let dm3 = DrinfeldModule::family(&f3, &APoly::parse(&f3, "t^2").unwrap(), &APoly::t()).unwrap();
        assert_eq!(dm3.reduction_type(&p).unwrap().kind, ReductionKind::PotentiallyGoodNotGood);
        // a1 = t^2, a2 = t^9: slopes 1 vs 9/8, rank-1 side, 2 | 2
        let dm4 =
            DrinfeldModule::family(&f3, &APoly::parse(&f3, "t^2").unwrap(), &APoly::parse(&f3, "t^9").unwrap())
                .unwrap();
        let r4 = dm4.reduction_type(&p).unwrap();
        assert_eq!(r4.kind, ReductionKind::StableRank1);
        assert_eq!(r4.m, Rational::new(1, 1));
        // a1 = t^3, a2 = t^25: slopes 3/2 vs 25/8, rank-1 side, 2 ∤ 3
        let dm5 =
            DrinfeldModule::family(&f3, &APoly::parse(&f3, "t^3").unwrap(), &APoly::parse(&f3, "t^25").unwrap())
                .unwrap();
        assert_eq!(dm5.reduction_type(&p).unwrap().kind, ReductionKind::NotStableOverBase);
    }

    #[test]
    fn torsion_polynomials_at_reductions() {
        let f2 = Fq::prime(2).unwrap();
        let dm = example_q2(&f2);
        let p_t = AIdeal::parse(&f2, "(t)").unwrap();
        let red = dm.reduce_at(&p_t).unwrap();
        // ā1 = 0, ā2 = 1, ι(t) = 0: φ̄_t = τ², dense x^4
        let tp = red.torsion_polynomial(&p_t);
        let dense = tp.to_dense(&red.field);
        assert_eq!(dense.len(), 5);
        assert!(dense[..4].iter().all(|c| c.is_zero()));
        // 𝔞 = (t+1): φ̄_(t+1) = 1 + τ², dense x^4 + x
        let p_t1 = AIdeal::parse(&f2, "(t+1)").unwrap();
        let tp1 = red.torsion_polynomial(&p_t1);
        let dense1 = tp1.to_dense(&red.field);
        assert_eq!(dense1.len(), 5);
        assert!(!dense1[1].is_zero() && dense1[2].is_zero() && !dense1[4].is_zero());
    }

    #[test]
    fn twist_preserves_j() {
        let f3 = Fq::prime(3).unwrap();
        let dm = example_general(&f3);
        let b = RatFunc::from_poly(APoly::parse(&f3, "t^2+1").unwrap());
        let tw = dm.twist(&b);
        assert_eq!(dm.j_invariant(), tw.j_invariant());
    }
}
