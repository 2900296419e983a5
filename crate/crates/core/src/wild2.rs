//! The q = 2 toolkit for ramification at the infinite place: quadratic
//! resolvents of cubics, Artin–Schreier classes x² − x + u, and the
//! odd-deep-pole criterion on v_∞(j) that forces a full abelianized image.

use crate::apoly::APoly;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::fpoly;
use crate::ratfunc::{valuation, FuncField, Place, RatFunc};

/// Small integer as a field element (reduced mod p).
fn int_el<F: Field>(f: &F, n: u64) -> F::El {
    f.from_base((n % f.characteristic()) as u32)
}

/// The quadratic resolvent x² − 3c·x + (b³ + 9c²) of the separable cubic
/// x³ + b·x + c. Returned as ascending coefficients [c0, c1, 1].
pub fn resolvent_quadratic<F: Field>(f: &F, b: &F::El, c: &F::El) -> Result<[F::El; 3]> {
    // separability: gcd(x³+bx+c, derivative) = 1
    let cubic = vec![c.clone(), b.clone(), f.zero(), f.one()];
    let deriv = fpoly::derivative(f, &cubic);
    if deriv.is_empty() || !fpoly::is_one(f, &fpoly::gcd(f, &cubic, &deriv)) {
        return Err(Error::Domain("the cubic x^3+bx+c is not separable".into()));
    }
    let three = int_el(f, 3);
    let nine = int_el(f, 9);
    let c1 = f.neg(&f.mul(&three, c));
    let b3 = f.mul(b, &f.mul(b, b));
    let c0 = f.add(&b3, &f.mul(&nine, &f.mul(c, c)));
    Ok([c0, c1, f.one()])
}

/// Discriminant of x³ + bx + c: −4b³ − 27c².
pub fn cubic_discriminant<F: Field>(f: &F, b: &F::El, c: &F::El) -> F::El {
    let four = int_el(f, 4);
    let twenty7 = int_el(f, 27);
    let b3 = f.mul(b, &f.mul(b, b));
    f.neg(&f.add(&f.mul(&four, &b3), &f.mul(&twenty7, &f.mul(c, c))))
}

/// Discriminant of x² + Bx + C: B² − 4C.
pub fn quadratic_discriminant<F: Field>(f: &F, bb: &F::El, cc: &F::El) -> F::El {
    f.sub(&f.mul(bb, bb), &f.mul(&int_el(f, 4), cc))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ASVerdict {
    RamifiedAtInfinity,
    Inconclusive,
}

/// An Artin–Schreier class over F in characteristic 2: the extension given
/// by x² − x + u, with u replaced by its minimal-v_∞ representative.
#[derive(Clone, Debug)]
pub struct ASClass {
    pub rep: RatFunc,
    /// v_∞ of the reduced representative; None encodes +∞.
    pub v_inf: Option<i64>,
    pub verdict: ASVerdict,
}

/// Reduce u modulo ℘(F) = {w² + w} so that v_∞ is maximal: in
/// characteristic 2 every even-degree leading term of the polynomial part
/// cancels exactly against some w² (square roots always exist), so the
/// greedy pass reaches the canonical representative.
pub fn artin_schreier_reduce(fq: &Fq, u: &RatFunc) -> RatFunc {
    assert_eq!(fq.p(), 2, "Artin-Schreier reduction is a characteristic-2 tool");
    let ff = FuncField::new(fq.clone());
    let mut u = u.clone();
    loop {
        let v = match valuation(fq, &u, &Place::Infinity) {
            None => return u,
            Some(v) => v,
        };
        if v >= 0 || v % 2 != 0 {
            return u;
        }
        let d = (-v) as usize; // even
        // leading coefficient at infinity (denominator is monic)
        let c = u.num.lead();
        let sqrt_c = fq.pow(&c, (fq.q() / 2) as u128);
        let mut wv = vec![0u32; d / 2 + 1];
        wv[d / 2] = sqrt_c;
        let w = RatFunc::from_poly(APoly(wv));
        let shift = ff.add(&ff.mul(&w, &w), &w);
        u = ff.add(&u, &shift);
    }
}

/// Classify x² − x + u after reduction: a negative odd v_∞ certifies
/// ramification at ∞; anything else stays inconclusive.
pub fn classify_as_class(fq: &Fq, u: &RatFunc) -> ASClass {
    let rep = artin_schreier_reduce(fq, u);
    let v_inf = valuation(fq, &rep, &Place::Infinity);
    let verdict = match v_inf {
        Some(v) if v < 0 && v % 2 != 0 => ASVerdict::RamifiedAtInfinity,
        _ => ASVerdict::Inconclusive,
    };
    ASClass { rep, v_inf, verdict }
}

/// The class of the quadratic subextension cut out at the level (t+i),
/// i ∈ F_2: u = j_φ/(t+i)² + 1.
pub fn infinity_class(dm: &DrinfeldModule<FuncField>, i: u32) -> Result<ASClass> {
    let fq = dm.fq();
    if fq.q() != 2 {
        return Err(Error::Unsupported("infinity classes are a q = 2 tool".into()));
    }
    if dm.rank() != 2 {
        return Err(Error::Unsupported("infinity classes need rank 2".into()));
    }
    let ff = &dm.field;
    let j = dm.j_invariant();
    let ti = RatFunc::from_poly(APoly::from_coeffs(fq, vec![i % 2, 1]));
    let u = ff.add(&ff.div(&j, &ff.mul(&ti, &ti)), &ff.one());
    Ok(classify_as_class(fq, &u))
}

/// Are the classes pairwise distinct in F/℘(F)? Certified when every
/// pairwise difference reduces to a negative odd v_∞.
pub fn classes_pairwise_distinct(fq: &Fq, classes: &[RatFunc]) -> bool {
    let ff = FuncField::new(fq.clone());
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let diff = ff.add(&classes[i], &classes[j]);
            let red = classify_as_class(fq, &diff);
            if red.verdict != ASVerdict::RamifiedAtInfinity {
                return false;
            }
        }
    }
    true
}

/// The odd-deep-pole criterion at ∞ (q = 2): v_∞(j_φ) odd and ≤ −5. When it
/// holds, the composite of the torsion representation with the quotient to
/// the abelianization of GL₂(Â) is surjective.
pub fn wild_infinity_criterion(dm: &DrinfeldModule<FuncField>) -> Result<bool> {
    let fq = dm.fq();
    if fq.q() != 2 {
        return Err(Error::Unsupported("the infinity criterion is a q = 2 tool".into()));
    }
    if dm.rank() != 2 {
        return Err(Error::Unsupported("the infinity criterion needs rank 2".into()));
    }
    let j = dm.j_invariant();
    match valuation(fq, &j, &Place::Infinity) {
        Some(v) => Ok(v % 2 != 0 && v <= -5),
        None => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn example_q2(fq: &Fq) -> DrinfeldModule<FuncField> {
        DrinfeldModule::family(
            fq,
            &APoly::parse(fq, "t^3").unwrap(),
            &APoly::parse(fq, "t^2+t+1").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn resolvent_formula() {
        // (b,c) = (0,1): x² − 3x + 9
        let f7 = Fq::prime(7).unwrap();
        let ff = FuncField::new(f7);
        let r = resolvent_quadratic(&ff, &ff.zero(), &ff.one()).unwrap();
        assert_eq!(r[1], RatFunc::from_poly(APoly::constant(4))); // −3 mod 7
        assert_eq!(r[0], RatFunc::from_poly(APoly::constant(2))); // 9 mod 7
    }

    #[test]
    fn resolvent_rejects_inseparable() {
        // char 2, c = 0: x³ + bx = x(x + √b)² is inseparable
        let f2 = Fq::prime(2).unwrap();
        let ff = FuncField::new(f2);
        let b = RatFunc::from_poly(APoly::t());
        assert!(resolvent_quadratic(&ff, &b, &ff.zero()).is_err());
    }

    #[test]
    fn resolvent_discriminant_matches_cubic() {
        for q in [2u64, 3, 5] {
            let fq = Fq::new(q).unwrap();
            let ff = FuncField::new(fq.clone());
            let mut rng = SplitMix64::new(11 * q);
            let mut done = 0;
            while done < 50 {
                let rand_poly = |rng: &mut SplitMix64| {
                    let d = rng.below(4) as usize;
                    let mut v = Vec::new();
                    for _ in 0..=d {
                        v.push(rng.below(q) as u32);
                    }
                    RatFunc::from_poly(APoly::from_coeffs(&fq, v))
                };
                let b = rand_poly(&mut rng);
                let c = rand_poly(&mut rng);
                let Ok(r2) = resolvent_quadratic(&ff, &b, &c) else {
                    continue;
                };
                let disc_cubic = cubic_discriminant(&ff, &b, &c);
                let disc_quad = quadratic_discriminant(&ff, &r2[1], &r2[0]);
                assert_eq!(disc_cubic, disc_quad, "q={q}");
                done += 1;
            }
        }
    }

    #[test]
    fn infinity_classes_of_the_example() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        // u_i = j/(t+i)² + 1 has v_∞ = v_∞(j) + 2 = −5, already odd
        let c0 = infinity_class(&dm, 0).unwrap();
        assert_eq!(c0.v_inf, Some(-5));
        assert_eq!(c0.verdict, ASVerdict::RamifiedAtInfinity);
        let c1 = infinity_class(&dm, 1).unwrap();
        assert_eq!(c1.v_inf, Some(-5));
        assert_eq!(c1.verdict, ASVerdict::RamifiedAtInfinity);
        // the combined class j/(t(t+1))² has v_∞ = v_∞(j) + 4 = −3
        let ff = &dm.field;
        let sum = ff.add(&c0.rep, &c1.rep);
        let cs = classify_as_class(&fq, &sum);
        assert_eq!(cs.v_inf, Some(-3));
        assert_eq!(cs.verdict, ASVerdict::RamifiedAtInfinity);
        // all three classes pairwise distinct in F/℘(F)
        assert!(classes_pairwise_distinct(&fq, &[c0.rep, c1.rep, cs.rep]));
    }

    #[test]
    fn resolvent_reproduces_the_torsion_class() {
        // with b = a1/a2 and c = (t+i)/a2, substituting y = a2/(t+i)·x into
        // the resolvent and normalizing gives y² − y + j/(t+i)² + 1
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let ff = &dm.field;
        for i in 0..2u32 {
            let ti = RatFunc::from_poly(APoly::from_coeffs(&fq, vec![i, 1]));
            let a1 = dm.coeffs[0].clone();
            let a2 = dm.coeffs[1].clone();
            let b = ff.div(&a1, &a2);
            let c = ff.div(&ti, &a2);
            let r2 = resolvent_quadratic(ff, &b, &c).unwrap();
            // p(y) = (a2/(t+i))² · R2(((t+i)/a2)·y)
            let s = ff.div(&ti, &a2); // substitution factor for x
            let s2 = ff.mul(&s, &s);
            let scale = ff.inv(&s2);
            let c2 = ff.mul(&scale, &ff.mul(&r2[2], &s2)); // = 1
            let c1 = ff.mul(&scale, &ff.mul(&r2[1], &s));
            let c0 = ff.mul(&scale, &r2[0]);
            assert_eq!(c2, ff.one());
            assert_eq!(c1, ff.neg(&ff.one()));
            // the constant term is exactly j/(t+i)² + 1
            let j = dm.j_invariant();
            let u = ff.add(&ff.div(&j, &ff.mul(&ti, &ti)), &ff.one());
            assert_eq!(c0, u);
        }
    }

    #[test]
    fn wild_criterion_is_twist_invariant() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let b = RatFunc::new(&fq, APoly::parse(&fq, "t^2+t").unwrap(), APoly::parse(&fq, "t^3+1").unwrap())
            .unwrap();
        let tw = dm.twist(&b);
        assert_eq!(
            wild_infinity_criterion(&dm).unwrap(),
            wild_infinity_criterion(&tw).unwrap()
        );
    }

    #[test]
    fn reduction_cancels_even_poles() {
        let fq = Fq::prime(2).unwrap();
        // t^4 + t^2 = (t^2)^2 + t^2 = ℘(t^2): reduces to v_∞ ≥ 0
        let u = RatFunc::from_poly(APoly::parse(&fq, "t^4+t^2").unwrap());
        let red = artin_schreier_reduce(&fq, &u);
        assert!(valuation(&fq, &red, &Place::Infinity).map(|v| v >= 0).unwrap_or(true));
        // t^6 reduces to t^3 + lower: odd pole survives
        let u2 = RatFunc::from_poly(APoly::parse(&fq, "t^6").unwrap());
        let c = classify_as_class(&fq, &u2);
        assert_eq!(c.verdict, ASVerdict::RamifiedAtInfinity);
        assert_eq!(c.v_inf, Some(-3));
    }

    #[test]
    fn wild_criterion_values() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        assert!(wild_infinity_criterion(&dm).unwrap()); // v_∞(j) = −7

        // deg a₁ = deg a₂ − 1 with deg a₂ ≥ 4: v_∞(j) = −2 deg a₂ + 3
        let a1 = APoly::parse(&fq, "t^3+1").unwrap();
        let a2 = APoly::parse(&fq, "t^4+t+1").unwrap();
        let fam = DrinfeldModule::family(&fq, &a1, &a2).unwrap();
        assert_eq!(
            valuation(&fq, &fam.j_invariant(), &Place::Infinity),
            Some(-5)
        );
        assert!(wild_infinity_criterion(&fam).unwrap());

        // v_∞(j) = −3 fails the ≤ −5 requirement
        let shallow = DrinfeldModule::family(
            &fq,
            &APoly::parse(&fq, "t^2").unwrap(),
            &APoly::parse(&fq, "t^3+t+1").unwrap(),
        )
        .unwrap();
        assert_eq!(
            valuation(&fq, &shallow.j_invariant(), &Place::Infinity),
            Some(-3)
        );
        assert!(!wild_infinity_criterion(&shallow).unwrap());
    }
}
