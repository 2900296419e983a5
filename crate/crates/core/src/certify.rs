//! Rule-based certification of Galois-image properties: determinant indices,
//! inertia witnesses at bad primes, per-level fullness certificates, and the
//! adelic assembly. Certificates are auditable trees whose leaves are finite
//! computations; a missing witness makes a claim Inconclusive, never false.

use crate::apoly::{factor_poly, primes_of_degree, AIdeal, APoly};
use crate::drinfeld::{DrinfeldModule, ReductionKind};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::frobenius::{frob_matrix_reduced, irreducibility_bound};
use crate::groups::{commutator_criterion, CommutatorCriterionReport};
use crate::residue::ResidueField;
use crate::wild2::wild_infinity_criterion;
use crate::FuncField;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Proven,
    Inconclusive,
}

/// What a certificate (or one of its nodes) asserts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// The mod-λ image is all of GL₂(F_λ).
    ModLFull(String),
    /// The λ-adic image is all of GL₂(A_λ).
    LambdaAdicFull(String),
    /// The λ-adic image is full at every nonzero prime λ.
    AllLambdaFull,
    /// The image contains the commutator subgroup of GL₂(Â).
    CommutatorFull,
    /// The image is all of GL₂(Â).
    AdelicFull,
    /// The index of the image in GL₂(Â) divides k.
    IndexDivides(u64),
    /// A finite computation or a rule application with checked side
    /// conditions.
    Fact(String),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::ModLFull(l) => write!(f, "ModLFull({l})"),
            Claim::LambdaAdicFull(l) => write!(f, "LambdaAdicFull({l})"),
            Claim::AllLambdaFull => write!(f, "AllLambdaFull"),
            Claim::CommutatorFull => write!(f, "CommutatorFull"),
            Claim::AdelicFull => write!(f, "AdelicFull"),
            Claim::IndexDivides(k) => write!(f, "IndexDivides({k})"),
            Claim::Fact(s) => write!(f, "Fact: {s}"),
        }
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Auditable deduction tree. Inconclusive propagates upward.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub claim: Claim,
    pub status: Status,
    pub rule: String,
    pub detail: String,
    pub premises: Vec<Certificate>,
}

impl Certificate {
    fn leaf(claim: Claim, rule: &str, detail: String, proven: bool) -> Certificate {
        Certificate {
            claim,
            status: if proven { Status::Proven } else { Status::Inconclusive },
            rule: rule.into(),
            detail,
            premises: vec![],
        }
    }

    fn node(claim: Claim, rule: &str, detail: String, premises: Vec<Certificate>) -> Certificate {
        let status = if premises.iter().all(|p| p.status == Status::Proven) {
            Status::Proven
        } else {
            Status::Inconclusive
        };
        Certificate { claim, status, rule: rule.into(), detail, premises }
    }

    pub fn proven(&self) -> bool {
        self.status == Status::Proven
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

/// Search budgets and evidence toggles.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Degree cap for irreducible-charpoly witness primes.
    pub irr_witness_degree_cap: usize,
    /// Degree cap when looking for an equal-degree pair of good primes.
    pub prime_pair_search_cap: usize,
    /// Largest reducibility bound for which all levels are certified
    /// explicitly; above it, the whole-family claim is Inconclusive.
    pub max_explicit_bound: usize,
    /// Withhold the infinite-place rule (for exercising Inconclusive paths).
    pub withhold_wild_rule: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            irr_witness_degree_cap: 6,
            prime_pair_search_cap: 8,
            max_explicit_bound: 3,
            withhold_wild_rule: false,
        }
    }
}

// ---------------------------------------------------------------------------
// determinant facts

/// Determinant data of a rank-2 module with polynomial a₂: the degree d,
/// the sign-adjusted leading coefficient ζ, its order e, and the exact
/// adelic determinant index gcd(d−1, (q−1)/e).
#[derive(Clone, Debug, Serialize)]
pub struct DetFacts {
    pub d: usize,
    pub zeta: u32,
    pub e: u64,
    pub adelic_index: u64,
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn poly_a2(dm: &DrinfeldModule<FuncField>) -> Result<APoly> {
    if dm.rank() != 2 {
        return Err(Error::Unsupported("determinant facts need rank 2".into()));
    }
    dm.coeffs[1]
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::Domain("determinant facts need a polynomial a₂".into()))
}

pub fn det_facts(dm: &DrinfeldModule<FuncField>) -> Result<DetFacts> {
    let fq = dm.fq();
    let a2 = poly_a2(dm)?;
    let d = a2.deg().unwrap();
    // ζ = leading coefficient of (−1)^(d+1)·a₂
    let mut zeta = a2.lead();
    if (d + 1) % 2 == 1 {
        zeta = fq.neg(&zeta);
    }
    let e = fq.order(zeta);
    // gcd(d−1, (q−1)/e) with the convention gcd(0, x) = x; for constant a₂
    // the degree term is |d−1| = 1 and the index is 1
    let adelic_index = if d == 0 {
        1
    } else {
        gcd_u64((d - 1) as u64, (fq.q() - 1) / e).max(1)
    };
    Ok(DetFacts { d, zeta, e, adelic_index })
}

/// The exact index of det(ρ) in Â^×: gcd(d−1, (q−1)/e).
pub fn det_index(dm: &DrinfeldModule<FuncField>) -> Result<u64> {
    Ok(det_facts(dm)?.adelic_index)
}

/// Sufficient condition for a full determinant mod 𝔞:
/// g = gcd({d−1, q−1} ∪ {v_𝔭(a₂) : 𝔭 ∤ 𝔞}) = 1. Returns (g == 1, g).
pub fn det_surjective_mod(dm: &DrinfeldModule<FuncField>, ideal: &AIdeal) -> Result<(bool, u64)> {
    let fq = dm.fq();
    let a2 = poly_a2(dm)?;
    let d = a2.deg().unwrap() as u64;
    // d = 0 contributes |d - 1| = 1 to the gcd set
    let mut g = if d == 0 { 1 } else { gcd_u64(d - 1, fq.q() - 1) };
    if a2.deg().unwrap() >= 1 {
        for (p, mult) in factor_poly(fq, &a2)? {
            let pid = AIdeal::new(fq, &p)?;
            if !ideal.generator().rem(fq, pid.generator()).is_zero() {
                g = gcd_u64(g, mult as u64);
            }
        }
    }
    Ok((g == 1, g))
}

/// The exact index of the rank-1 image mod 𝔞 for ψ_t = t + Δτ:
/// gcd(d−1, (q−1)/e, {v_𝔭(Δ) : 𝔭 ∤ 𝔞}).
pub fn rank1_index(fq: &Fq, delta: &APoly, ideal: &AIdeal) -> Result<u64> {
    if delta.is_zero() {
        return Err(Error::Domain("rank-1 index needs Δ ≠ 0".into()));
    }
    let d = delta.deg().unwrap();
    let mut zeta = delta.lead();
    if d % 2 == 1 {
        zeta = fq.neg(&zeta);
    }
    let e = fq.order(zeta);
    // d = 0 contributes |d - 1| = 1
    let mut g = if d == 0 { 1 } else { gcd_u64((d - 1) as u64, (fq.q() - 1) / e) };
    if d >= 1 {
        for (p, mult) in factor_poly(fq, delta)? {
            let pid = AIdeal::new(fq, &p)?;
            if !ideal.generator().rem(fq, pid.generator()).is_zero() {
                g = gcd_u64(g, mult as u64);
            }
        }
    }
    Ok(g.max(1))
}

/// Exact per-level determinant index: det ρ_φ is the rank-1 character of
/// ψ_t = t − a₂τ, so the index of det(ρ̄_{φ,𝔞}) in (A/𝔞)^× is
/// rank1_index(−a₂, 𝔞); it is the same at 𝔞 = λ^i for every i ≥ 1.
pub fn det_index_mod(dm: &DrinfeldModule<FuncField>, ideal: &AIdeal) -> Result<u64> {
    let fq = dm.fq();
    let a2 = poly_a2(dm)?;
    rank1_index(fq, &a2.neg(fq), ideal)
}

// ---------------------------------------------------------------------------
// inertia witnesses

/// A bad prime with stable rank-1 reduction, carrying the facts the
/// inertia rules consume.
#[derive(Clone, Debug, Serialize)]
pub struct InertiaWitness {
    #[serde(skip)]
    pub prime: AIdeal,
    pub prime_text: String,
    pub v_j: i64,
    pub gcd_v_q_is_1: bool,
    pub deg_gt1: bool,
}

#[derive(Clone, Debug, Default)]
pub struct WitnessConstraints {
    pub exclude: Vec<AIdeal>,
    pub need_deg_gt1: bool,
    pub need_gcd_q: bool,
}

/// Scan the bad locus in canonical order for a stable-rank-1 prime meeting
/// the constraints. None is a value (no witness below the caps).
pub fn find_inertia_witness(
    dm: &DrinfeldModule<FuncField>,
    constraints: &WitnessConstraints,
) -> Result<Option<InertiaWitness>> {
    let fq = dm.fq();
    for p in dm.bad_primes()? {
        if constraints.exclude.contains(&p) {
            continue;
        }
        let report = dm.reduction_type(&p)?;
        if report.kind != ReductionKind::StableRank1 {
            continue;
        }
        let v = report.v_j.expect("stable rank 1 forces j ≠ 0");
        debug_assert!(v < 0);
        let gcd_ok = gcd_u64(v.unsigned_abs(), fq.q()) == 1;
        let deg_gt1 = p.degree() > 1;
        if constraints.need_gcd_q && !gcd_ok {
            continue;
        }
        if constraints.need_deg_gt1 && !deg_gt1 {
            continue;
        }
        return Ok(Some(InertiaWitness {
            prime_text: p.to_string(fq),
            prime: p,
            v_j: v,
            gcd_v_q_is_1: gcd_ok,
            deg_gt1,
        }));
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// per-level evidence and certificates

/// The finite facts backing a mod-λ fullness certificate.
#[derive(Clone, Debug)]
pub struct ModLEvidence {
    pub lambda: AIdeal,
    /// Exact index of the determinant image mod λ (1 = full).
    pub det_index: u64,
    pub unipotent: Option<InertiaWitness>,
    /// A good prime whose Frobenius charpoly is irreducible mod λ, with the
    /// reduced (trace, det).
    pub irreducible_witness: Option<(AIdeal, APoly, APoly)>,
}

pub fn modl_evidence(
    dm: &DrinfeldModule<FuncField>,
    lambda: &AIdeal,
    opts: &CertifyOptions,
) -> Result<ModLEvidence> {
    let fq = dm.fq();
    if !lambda.is_prime(fq) {
        return Err(Error::NotPrime(lambda.generator().to_string(fq)));
    }
    let det_index = det_index_mod(dm, lambda)?;
    // a unipotent of order N(λ) inside the image: any stable-rank-1 prime
    // with gcd(v_𝔭(j), q) = 1; the witness may equal λ because the level is
    // exactly divisible by it
    let unipotent = find_inertia_witness(
        dm,
        &WitnessConstraints { need_gcd_q: true, ..Default::default() },
    )?;
    // a Frobenius with irreducible characteristic polynomial mod λ
    let lf = ResidueField::new(fq, lambda)?;
    let lam_els = lf.elements();
    let mut irreducible_witness = None;
    'search: for deg in 1..=opts.irr_witness_degree_cap {
        for q_prime in primes_of_degree(fq, deg) {
            if q_prime == *lambda {
                continue;
            }
            if dm.reduction_type(&q_prime)?.kind != ReductionKind::Good {
                continue;
            }
            let red = dm.reduce_at(&q_prime)?;
            let sample = frob_matrix_reduced(&red, lambda)?;
            let tr = lf.reduce(&sample.trace);
            let dt = lf.reduce(&sample.det);
            let irreducible = lam_els.iter().all(|x| {
                let v = lf.add(&lf.sub(&lf.mul(x, x), &lf.mul(&tr, x)), &dt);
                !v.is_zero()
            });
            if irreducible {
                irreducible_witness = Some((q_prime, tr, dt));
                break 'search;
            }
        }
    }
    Ok(ModLEvidence { lambda: lambda.clone(), det_index, unipotent, irreducible_witness })
}

/// Certificate that the mod-λ image is all of GL₂(F_λ): determinant full,
/// an order-N(λ) unipotent from inertia, and an irreducible Frobenius
/// characteristic polynomial, combined through the SL₂-containment
/// criterion.
pub fn modl_full_certificate(
    dm: &DrinfeldModule<FuncField>,
    lambda: &AIdeal,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let fq = dm.fq();
    let ev = modl_evidence(dm, lambda, opts)?;
    Ok(modl_certificate_from_evidence(fq, &ev))
}

fn modl_certificate_from_evidence(fq: &Fq, ev: &ModLEvidence) -> Certificate {
    let lam = ev.lambda.to_string(fq);
    let det = Certificate::leaf(
        Claim::Fact(format!("det image mod {lam} has index {}", ev.det_index)),
        "determinant-index-exact",
        format!("rank-1 character index = {}", ev.det_index),
        ev.det_index == 1,
    );
    let uni = match &ev.unipotent {
        Some(w) => Certificate::leaf(
            Claim::Fact(format!(
                "inertia at {} forces a unipotent subgroup of order N({lam})",
                w.prime_text
            )),
            "unipotent-from-inertia",
            format!("stable rank 1 at {}, v(j) = {}, gcd(v, q) = 1", w.prime_text, w.v_j),
            true,
        ),
        None => Certificate::leaf(
            Claim::Fact("no stable-rank-1 prime with gcd(v(j), q) = 1".into()),
            "unipotent-from-inertia",
            "witness search exhausted".into(),
            false,
        ),
    };
    let irr = match &ev.irreducible_witness {
        Some((q_prime, tr, dt)) => Certificate::leaf(
            Claim::Fact(format!(
                "Frobenius at {} acts irreducibly mod {lam}",
                q_prime.to_string(fq)
            )),
            "irreducible-frobenius-witness",
            format!(
                "charpoly x^2 - ({})*x + ({}) has no root mod {lam}",
                tr.to_string(fq),
                dt.to_string(fq)
            ),
            true,
        ),
        None => Certificate::leaf(
            Claim::Fact("no good prime with irreducible Frobenius charpoly found".into()),
            "irreducible-frobenius-witness",
            "witness search exhausted".into(),
            false,
        ),
    };
    Certificate::node(
        Claim::ModLFull(lam),
        "sl2-criterion-plus-determinant",
        String::new(),
        vec![det, uni, irr],
    )
}

/// Certificate that the λ-adic image is all of GL₂(A_λ).
pub fn lambda_adic_full_certificate(
    dm: &DrinfeldModule<FuncField>,
    lambda: &AIdeal,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let fq = dm.fq();
    let ev = modl_evidence(dm, lambda, opts)?;
    let modl = modl_certificate_from_evidence(fq, &ev);
    let lam = lambda.to_string(fq);
    let norm = fq.q().pow(lambda.degree() as u32);

    let det_all_powers = Certificate::leaf(
        Claim::Fact(format!("det image mod {lam}^i has index {} for every i", ev.det_index)),
        "determinant-index-exact-at-all-powers",
        "the rank-1 index only depends on the primes dividing the level".into(),
        ev.det_index == 1,
    );

    let mut premises = vec![modl, det_all_powers];
    if norm > 2 {
        // a nonscalar I+πB element: inertia at a stable-rank-1 prime has a
        // subgroup of order N(λ)² inside a Borel shape at level λ²
        let w = find_inertia_witness(
            dm,
            &WitnessConstraints { need_gcd_q: true, ..Default::default() },
        )?;
        premises.push(match w {
            Some(w) => Certificate::leaf(
                Claim::Fact(format!(
                    "inertia at {} forces I+πB with B nonscalar mod {lam}",
                    w.prime_text
                )),
                "nonscalar-shift-from-inertia",
                format!(
                    "order N² subgroup in a Borel shape at level {lam}^2; v(j) = {}",
                    w.v_j
                ),
                true,
            ),
            None => Certificate::leaf(
                Claim::Fact("no inertia witness for a nonscalar shift".into()),
                "nonscalar-shift-from-inertia",
                "witness search exhausted".into(),
                false,
            ),
        });
    } else {
        // N(λ) = 2 (so q = 2): the mod-λ² image is recovered from the
        // infinite-place rule plus a unipotent from a prime away from λ
        let wild_ok = if opts.withhold_wild_rule {
            false
        } else {
            wild_infinity_criterion(dm)?
        };
        let wild = Certificate::leaf(
            Claim::Fact("the abelianized adelic image is full".into()),
            "odd-deep-pole-at-infinity",
            if opts.withhold_wild_rule {
                "rule withheld".into()
            } else {
                "v_inf(j) odd and <= -5".into()
            },
            wild_ok,
        );
        let w = find_inertia_witness(
            dm,
            &WitnessConstraints {
                exclude: vec![lambda.clone()],
                need_gcd_q: true,
                ..Default::default()
            },
        )?;
        let (uni2, order2) = match w {
            Some(w) => (
                Certificate::leaf(
                    Claim::Fact(format!(
                        "inertia at {} gives the full unipotent mod {lam}^i for all i",
                        w.prime_text
                    )),
                    "deep-unipotent-from-inertia",
                    format!("witness avoids {lam}; gcd(v, 2) = 1, v(j) = {}", w.v_j),
                    true,
                ),
                Certificate::leaf(
                    Claim::Fact("a determinant-1 element of order 2 mod λ exists".into()),
                    "order-two-unipotent",
                    format!("supplied by the unipotent at {}", w.prime_text),
                    true,
                ),
            ),
            None => (
                Certificate::leaf(
                    Claim::Fact("no inertia witness away from λ".into()),
                    "deep-unipotent-from-inertia",
                    "witness search exhausted".into(),
                    false,
                ),
                Certificate::leaf(
                    Claim::Fact("no order-2 element witnessed".into()),
                    "order-two-unipotent",
                    "witness search exhausted".into(),
                    false,
                ),
            ),
        };
        let modl2 = Certificate::node(
            Claim::Fact(format!("the image mod {lam}^2 is all of GL₂(A/{lam}^2)")),
            "mod-level-squared-from-counting",
            "full abelianization + full mod-λ + a deep unipotent".into(),
            vec![wild, uni2.clone()],
        );
        premises.push(modl2);
        premises.push(order2);
    }
    Ok(Certificate::node(
        Claim::LambdaAdicFull(lam),
        "full-local-image-criterion",
        String::new(),
        premises,
    ))
}

/// Certificate that ρ_{φ,λ} is full at every nonzero prime λ: explicit
/// certificates below the reducibility bound, uniform rules above it.
pub fn all_lambda_certificate(
    dm: &DrinfeldModule<FuncField>,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    let fq = dm.fq();
    let bound = match irreducibility_bound(dm, None, opts.prime_pair_search_cap) {
        Ok(b) => b,
        Err(e) => {
            return Ok(Certificate::leaf(
                Claim::AllLambdaFull,
                "reducible-levels-bounded",
                format!("no bound: {e}"),
                false,
            ))
        }
    };
    let bound_leaf = Certificate::leaf(
        Claim::Fact(format!(
            "any prime with a reducible mod-λ image has degree ≤ {}",
            bound.bound
        )),
        "reducible-levels-bounded",
        format!(
            "exponent n = {}, equal-degree good primes {} and {} of degree {}",
            bound.n,
            bound.witnesses.0.to_string(fq),
            bound.witnesses.1.to_string(fq),
            bound.degree_d
        ),
        true,
    );
    if bound.bound > opts.max_explicit_bound {
        return Ok(Certificate::node(
            Claim::AllLambdaFull,
            "explicit-below-bound-plus-uniform-rules",
            format!(
                "bound {} exceeds the explicit-certification cap {}",
                bound.bound, opts.max_explicit_bound
            ),
            vec![
                bound_leaf,
                Certificate::leaf(
                    Claim::Fact("explicit certification capped".into()),
                    "explicit-levels",
                    String::new(),
                    false,
                ),
            ],
        ));
    }

    let mut premises = vec![bound_leaf];

    // the uniform chain needs stable reduction at every level above the
    // bound; non-stable primes are all in the bad locus
    let mut unstable_above = Vec::new();
    for p in dm.bad_primes()? {
        let kind = dm.reduction_type(&p)?.kind;
        let stable = matches!(kind, ReductionKind::Good | ReductionKind::StableRank1);
        if !stable && p.degree() > bound.bound {
            unstable_above.push(p.to_string(fq));
        }
    }
    premises.push(Certificate::leaf(
        Claim::Fact("stable reduction at every prime above the bound".into()),
        "stable-reduction-above-bound",
        if unstable_above.is_empty() {
            "no unstable primes above the bound".into()
        } else {
            format!("unstable primes above the bound: {}", unstable_above.join(", "))
        },
        unstable_above.is_empty(),
    ));

    // uniform unipotent and nonscalar-shift witnesses (they serve every
    // level above the bound)
    let w = find_inertia_witness(
        dm,
        &WitnessConstraints { need_gcd_q: true, ..Default::default() },
    )?;
    premises.push(match &w {
        Some(w) => Certificate::leaf(
            Claim::Fact(format!("uniform unipotent witness at {}", w.prime_text)),
            "unipotent-from-inertia",
            format!("v(j) = {}, gcd(v, q) = 1", w.v_j),
            true,
        ),
        None => Certificate::leaf(
            Claim::Fact("no uniform unipotent witness".into()),
            "unipotent-from-inertia",
            "witness search exhausted".into(),
            false,
        ),
    });
    premises.push(match &w {
        Some(w) => Certificate::leaf(
            Claim::Fact(format!(
                "inertia at {} forces I+πB with B nonscalar at every level above the bound",
                w.prime_text
            )),
            "nonscalar-shift-from-inertia",
            format!("order N² subgroup in a Borel shape at level λ²; v(j) = {}", w.v_j),
            true,
        ),
        None => Certificate::leaf(
            Claim::Fact("no uniform nonscalar-shift witness".into()),
            "nonscalar-shift-from-inertia",
            "witness search exhausted".into(),
            false,
        ),
    });

    // uniform determinant fullness above the bound: the exact rank-1 index
    // must be 1 for λ away from a₂ and for every large divisor of a₂
    let a2 = poly_a2(dm)?;
    let mut det_ok = true;
    let mut det_detail = Vec::new();
    {
        let delta = a2.neg(fq);
        let d = delta.deg().unwrap();
        let mut zeta = delta.lead();
        if d % 2 == 1 {
            zeta = fq.neg(&zeta);
        }
        let e = fq.order(zeta);
        let mut g_all =
            if d == 0 { 1 } else { gcd_u64((d - 1) as u64, (fq.q() - 1) / e) };
        let mut divisors = Vec::new();
        if d >= 1 {
            for (p, mult) in factor_poly(fq, &delta)? {
                g_all = gcd_u64(g_all, mult as u64);
                divisors.push((AIdeal::new(fq, &p)?, mult));
            }
        }
        if g_all != 1 {
            det_ok = false;
            det_detail.push(format!("index {} at primes away from a₂", g_all.max(1)));
        }
        for (p, _) in divisors {
            if p.degree() > bound.bound {
                let idx = rank1_index(fq, &delta, &p)?;
                if idx != 1 {
                    det_ok = false;
                    det_detail.push(format!("index {idx} at {}", p.to_string(fq)));
                }
            }
        }
    }
    premises.push(Certificate::leaf(
        Claim::Fact("determinant full at every level above the bound".into()),
        "determinant-index-exact-above-bound",
        if det_detail.is_empty() { "all indices are 1".into() } else { det_detail.join("; ") },
        det_ok,
    ));

    // explicit levels
    for deg in 1..=bound.bound {
        for lam in primes_of_degree(fq, deg) {
            premises.push(lambda_adic_full_certificate(dm, &lam, opts)?);
        }
    }

    Ok(Certificate::node(
        Claim::AllLambdaFull,
        "explicit-below-bound-plus-uniform-rules",
        format!("bound {}", bound.bound),
        premises,
    ))
}

/// The outcome of the adelic assembly: the strongest certificate, the exact
/// determinant index, and the proven index bound when available.
#[derive(Clone, Debug)]
pub struct AdelicOutcome {
    pub certificate: Certificate,
    pub det_index: u64,
    /// Proven divisor of the image index in GL₂(Â), when the commutator
    /// criterion holds.
    pub index_divides: Option<u64>,
    pub commutator: CommutatorCriterionReport,
}

/// Assemble the adelic certificate: the commutator criterion over the
/// all-λ certificate and inertia witnesses, then the finish through the
/// determinant index (q ≠ 2) or the infinite-place rule (q = 2).
pub fn adelic_certificate(
    dm: &DrinfeldModule<FuncField>,
    opts: &CertifyOptions,
) -> Result<AdelicOutcome> {
    let fq = dm.fq();
    let q = fq.q();
    let dfacts = det_facts(dm)?;
    let all_lambda = all_lambda_certificate(dm, opts)?;

    // (pairs) subgroups of order N² mod λ₁λ₂ from inertia, uniformly
    let pair_witness = find_inertia_witness(
        dm,
        &WitnessConstraints { need_gcd_q: true, ..Default::default() },
    )?;
    let pair_leaf = match &pair_witness {
        Some(w) => Certificate::leaf(
            Claim::Fact(format!(
                "inertia at {} gives order-N² subgroups mod equal-norm pairs",
                w.prime_text
            )),
            "pair-subgroup-from-inertia",
            format!("v(j) = {} with gcd(v, q) = 1", w.v_j),
            true,
        ),
        None => Certificate::leaf(
            Claim::Fact("no pair-subgroup witness".into()),
            "pair-subgroup-from-inertia",
            "witness search exhausted".into(),
            false,
        ),
    };

    // (norm-2 places, q = 2 only): the full unipotent over A_{(t)(t+1)},
    // from a witness of degree > 1
    let norm2_leaf = if q == 2 {
        let w = find_inertia_witness(
            dm,
            &WitnessConstraints { need_deg_gt1: true, need_gcd_q: true, ..Default::default() },
        )?;
        Some(match &w {
            Some(w) => Certificate::leaf(
                Claim::Fact(format!(
                    "inertia at {} gives the full unipotent at the two norm-2 places",
                    w.prime_text
                )),
                "deep-unipotent-from-inertia",
                format!("deg > 1 witness, v(j) = {}", w.v_j),
                true,
            ),
            None => Certificate::leaf(
                Claim::Fact("no degree > 1 inertia witness".into()),
                "deep-unipotent-from-inertia",
                "witness search exhausted".into(),
                false,
            ),
        })
    } else {
        None
    };

    // (small norms, q ≤ 3 only): exact determinant index at the product of
    // the degree-1 primes
    let det_small_leaf = if q <= 3 {
        let mut prod = AIdeal::new(fq, &APoly::one().mul(fq, &APoly::t()))?;
        let mut first = true;
        for p in primes_of_degree(fq, 1) {
            if first {
                prod = p;
                first = false;
            } else {
                prod = prod.mul(fq, &p);
            }
        }
        let idx = det_index_mod(dm, &prod)?;
        Some(Certificate::leaf(
            Claim::Fact(format!(
                "det image mod {} has index {idx}",
                prod.to_string(fq)
            )),
            "determinant-index-exact",
            String::new(),
            idx == 1,
        ))
    } else {
        None
    };

    let report = commutator_criterion(
        q,
        Some(all_lambda.proven()),
        Some(pair_leaf.proven()),
        norm2_leaf.as_ref().map(|c| c.proven()),
        det_small_leaf.as_ref().map(|c| c.proven()),
    );

    let mut comm_premises = vec![all_lambda, pair_leaf];
    if let Some(c) = norm2_leaf {
        comm_premises.push(c);
    }
    if let Some(c) = det_small_leaf {
        comm_premises.push(c);
    }
    let commutator_cert = Certificate::node(
        Claim::CommutatorFull,
        "adelic-commutator-criterion",
        String::new(),
        comm_premises,
    );

    let commutator_proven = commutator_cert.proven() && report.verdict.holds();

    // finish
    let (certificate, index_divides) = if q == 2 {
        let wild_ok = if opts.withhold_wild_rule {
            false
        } else {
            wild_infinity_criterion(dm)?
        };
        let wild_leaf = Certificate::leaf(
            Claim::Fact("the abelianized adelic image is full".into()),
            "odd-deep-pole-at-infinity",
            if opts.withhold_wild_rule { "rule withheld".into() } else { "v_inf(j) odd and <= -5".into() },
            wild_ok,
        );
        if commutator_proven && wild_ok {
            (
                Certificate::node(
                    Claim::AdelicFull,
                    "commutator-plus-full-abelianization",
                    String::new(),
                    vec![commutator_cert, wild_leaf],
                ),
                Some(1),
            )
        } else if commutator_proven {
            (commutator_cert, Some(4))
        } else {
            (
                Certificate::node(
                    Claim::AdelicFull,
                    "commutator-plus-full-abelianization",
                    String::new(),
                    vec![commutator_cert, wild_leaf],
                ),
                None,
            )
        }
    } else {
        let det_leaf = Certificate::leaf(
            Claim::IndexDivides(dfacts.adelic_index),
            "adelic-determinant-index",
            format!("gcd(d-1, (q-1)/e) = {}", dfacts.adelic_index),
            true,
        );
        if commutator_proven && dfacts.adelic_index == 1 {
            (
                Certificate::node(
                    Claim::AdelicFull,
                    "sl2-from-commutator-plus-full-determinant",
                    String::new(),
                    vec![commutator_cert, det_leaf],
                ),
                Some(1),
            )
        } else if commutator_proven {
            (
                Certificate::node(
                    Claim::IndexDivides(dfacts.adelic_index),
                    "sl2-from-commutator-plus-determinant-index",
                    String::new(),
                    vec![commutator_cert, det_leaf],
                ),
                Some(dfacts.adelic_index),
            )
        } else {
            (
                Certificate::node(
                    Claim::AdelicFull,
                    "sl2-from-commutator-plus-full-determinant",
                    String::new(),
                    vec![commutator_cert, det_leaf],
                ),
                None,
            )
        }
    };

    Ok(AdelicOutcome {
        certificate,
        det_index: dfacts.adelic_index,
        index_divides,
        commutator: report,
    })
}

// ---------------------------------------------------------------------------
// sieve sets

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SieveFlags {
    pub in_r: bool,
    pub in_s: bool,
    pub in_t: bool,
}

/// Membership of a = (a₁, a₂) in the sieving sets: R needs two distinct
/// deg > 1 primes with v(a₁) = 0 and v(a₂) = 1; S_m forbids deep common
/// prime divisors; T_m needs two equal-degree primes below the cap away
/// from a₂. All three are computed by the definitional brute force.
pub fn sieve_membership(fq: &Fq, a1: &APoly, a2: &APoly, m: usize) -> Result<SieveFlags> {
    assert!(m >= 2);
    if a2.is_zero() {
        return Ok(SieveFlags { in_r: false, in_s: false, in_t: false });
    }
    // R
    let mut r_count = 0usize;
    for (p, mult) in factor_poly(fq, a2)? {
        if mult != 1 || p.deg() == Some(1) {
            continue;
        }
        let v1_zero = if a1.is_zero() { false } else { !a1.rem(fq, &p).is_zero() };
        if v1_zero {
            r_count += 1;
        }
    }
    let in_r = r_count >= 2;
    // S_m
    let in_s = if a1.is_zero() {
        factor_poly(fq, a2)?.iter().all(|(p, _)| p.deg().unwrap() <= m)
    } else {
        let g = a1.gcd(fq, a2);
        g.deg().unwrap() == 0 || factor_poly(fq, &g)?.iter().all(|(p, _)| p.deg().unwrap() <= m)
    };
    // T_m
    let q = fq.q();
    let dcap = m / (2 * ((q - 1) * (q - 1) * (q + 1)) as usize);
    let mut in_t = false;
    for d in 1..=dcap {
        let good = primes_of_degree(fq, d)
            .into_iter()
            .filter(|p| !a2.rem(fq, p.generator()).is_zero())
            .count();
        if good >= 2 {
            in_t = true;
            break;
        }
    }
    Ok(SieveFlags { in_r, in_s, in_t })
}
