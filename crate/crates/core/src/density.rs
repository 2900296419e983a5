//! Exact enumeration and seeded sampling over A²(d) for the density sets:
//! the degree-profile set C, the sieving sets R/S_m/T_m, certified mod-λ
//! fullness, and determinant-index classes. Results are deterministic given
//! (set, d, mode, seed) and export to a fixed CSV schema.

use crate::apoly::{factor_poly, AIdeal, APoly};
use crate::certify::{det_index, modl_full_certificate, sieve_membership, CertifyOptions};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::rng::SplitMix64;

pub const EXACT_MODE_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetDescriptor {
    /// a₁a₂ ≠ 0 and deg a₁ = deg a₂ − 1.
    C,
    /// Two distinct deg > 1 primes with v(a₁) = 0 and v(a₂) = 1.
    R,
    /// No common prime divisor of degree > m.
    SM(usize),
    /// Two equal-degree primes below the cap avoiding a₂.
    TM(usize),
    /// modl_full_certificate(φ(a), λ) is Proven (a₂ ≠ 0).
    ModLFullCertified(AIdeal),
    /// det_index(φ(a)) = k (a₂ ≠ 0).
    DetIndexEquals(u64),
}

impl SetDescriptor {
    pub fn name(&self, fq: &Fq) -> String {
        match self {
            SetDescriptor::C => "C".into(),
            SetDescriptor::R => "R".into(),
            SetDescriptor::SM(m) => format!("S_{m}"),
            SetDescriptor::TM(m) => format!("T_{m}"),
            SetDescriptor::ModLFullCertified(l) => {
                format!("ModLFullCertified({})", l.to_string(fq))
            }
            SetDescriptor::DetIndexEquals(k) => format!("DetIndexEquals({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Sampled { n: u64, seed: u64 },
}

impl CountMode {
    pub fn label(&self) -> String {
        match self {
            CountMode::Exact => "exact".into(),
            CountMode::Sampled { n, seed } => format!("sampled(n={n};seed={seed})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DensityEstimate {
    pub set: String,
    pub q: u64,
    pub d: usize,
    pub mode: CountMode,
    pub count: u64,
    pub total: u64,
    pub ratio: f64,
}

impl DensityEstimate {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.6}",
            self.set,
            self.q,
            self.d,
            self.mode.label(),
            self.count,
            self.total,
            self.ratio
        )
    }
}

pub const CSV_HEADER: &str = "set,q,d,mode,count,total,ratio";

pub fn to_csv(rows: &[DensityEstimate]) -> String {
    let mut s = String::from(CSV_HEADER);
    for r in rows {
        s.push('\n');
        s.push_str(&r.csv_row());
    }
    s.push('\n');
    s
}

/// Closed form for |C(d)|: (q−1)²·q·(q^(2d) − 1)/(q² − 1).
pub fn c_count_closed_form(q: u64, d: usize) -> u64 {
    let q2d = q.pow(2 * d as u32);
    (q - 1) * (q - 1) * q * (q2d - 1) / (q * q - 1)
}

fn all_polys_of_bounded_degree(fq: &Fq, d: usize) -> Vec<APoly> {
    let q = fq.q();
    let total = q.pow(d as u32 + 1);
    let mut out = Vec::with_capacity(total as usize);
    let mut odo = vec![0u32; d + 1];
    for _ in 0..total {
        out.push(APoly(crate::fpoly::trim(fq, odo.clone())));
        for digit in odo.iter_mut() {
            *digit += 1;
            if (*digit as u64) < q {
                break;
            }
            *digit = 0;
        }
    }
    out
}

fn sample_poly(fq: &Fq, d: usize, rng: &mut SplitMix64) -> APoly {
    let q = fq.q();
    let v: Vec<u32> = (0..=d).map(|_| rng.below(q) as u32).collect();
    APoly(crate::fpoly::trim(fq, v))
}

/// Per-a₂ data reused across the inner a₁ loop.
enum Pre {
    Nothing,
    /// Simple prime divisors of a₂ of degree > 1 (the R-candidates).
    RPrimes(Vec<APoly>),
    /// Membership decided by a₂ alone.
    Fixed(bool),
}

fn precompute(fq: &Fq, desc: &SetDescriptor, a2: &APoly) -> Result<Pre> {
    Ok(match desc {
        SetDescriptor::R => {
            if a2.is_zero() {
                Pre::Fixed(false)
            } else {
                let primes = factor_poly(fq, a2)?
                    .into_iter()
                    .filter(|(p, m)| *m == 1 && p.deg().unwrap() > 1)
                    .map(|(p, _)| p)
                    .collect();
                Pre::RPrimes(primes)
            }
        }
        SetDescriptor::TM(m) => {
            if a2.is_zero() {
                Pre::Fixed(false)
            } else {
                Pre::Fixed(sieve_membership(fq, &APoly::one(), a2, *m)?.in_t)
            }
        }
        SetDescriptor::DetIndexEquals(k) => {
            if a2.is_zero() {
                Pre::Fixed(false)
            } else {
                let dm = DrinfeldModule::family(fq, &APoly::zero(), a2)?;
                Pre::Fixed(det_index(&dm)? == *k)
            }
        }
        _ => Pre::Nothing,
    })
}

fn member(
    fq: &Fq,
    desc: &SetDescriptor,
    a1: &APoly,
    a2: &APoly,
    pre: &Pre,
    opts: &CertifyOptions,
) -> Result<bool> {
    if let Pre::Fixed(b) = pre {
        return Ok(*b);
    }
    Ok(match desc {
        SetDescriptor::C => {
            !a1.is_zero() && !a2.is_zero() && a1.deg().unwrap() + 1 == a2.deg().unwrap()
        }
        SetDescriptor::R => {
            let Pre::RPrimes(primes) = pre else { unreachable!() };
            let hits = primes
                .iter()
                .filter(|p| !a1.is_zero() && !a1.rem(fq, p).is_zero())
                .count();
            hits >= 2
        }
        SetDescriptor::SM(m) => {
            if a2.is_zero() {
                false
            } else {
                sieve_membership(fq, a1, a2, *m)?.in_s
            }
        }
        SetDescriptor::TM(_) => unreachable!("handled by precompute"),
        SetDescriptor::ModLFullCertified(lam) => {
            if a2.is_zero() {
                false
            } else {
                let dm = DrinfeldModule::family(fq, a1, a2)?;
                modl_full_certificate(&dm, lam, opts)?.proven()
            }
        }
        SetDescriptor::DetIndexEquals(_) => unreachable!("handled by precompute"),
    })
}

/// Count |S(d)| for the descriptor over A²(d), exactly or by seeded
/// sampling. Deterministic for fixed inputs.
pub fn count_set(
    fq: &Fq,
    desc: &SetDescriptor,
    d: usize,
    mode: CountMode,
) -> Result<DensityEstimate> {
    let q = fq.q();
    let opts = CertifyOptions::default();
    let total_pairs = (q as u128).pow(2 * (d as u32 + 1));
    match mode {
        CountMode::Exact => {
            if total_pairs > EXACT_MODE_CAP as u128 {
                return Err(Error::ResourceCap(format!(
                    "exact mode needs q^(2(d+1)) = {total_pairs} <= {EXACT_MODE_CAP}"
                )));
            }
            let polys = all_polys_of_bounded_degree(fq, d);
            let mut count = 0u64;
            for a2 in &polys {
                let pre = precompute(fq, desc, a2)?;
                if let Pre::Fixed(b) = pre {
                    if b {
                        count += polys.len() as u64;
                    }
                    continue;
                }
                for a1 in &polys {
                    if member(fq, desc, a1, a2, &pre, &opts)? {
                        count += 1;
                    }
                }
            }
            let total = total_pairs as u64;
            Ok(DensityEstimate {
                set: desc.name(fq),
                q,
                d,
                mode,
                count,
                total,
                ratio: count as f64 / total as f64,
            })
        }
        CountMode::Sampled { n, seed } => {
            let mut count = 0u64;
            for i in 0..n {
                let mut rng = SplitMix64::for_index(seed, i);
                let a1 = sample_poly(fq, d, &mut rng);
                let a2 = sample_poly(fq, d, &mut rng);
                let pre = precompute(fq, desc, &a2)?;
                if member(fq, desc, &a1, &a2, &pre, &opts)? {
                    count += 1;
                }
            }
            Ok(DensityEstimate {
                set: desc.name(fq),
                q,
                d,
                mode,
                count,
                total: n,
                ratio: count as f64 / n as f64,
            })
        }
    }
}

/// Fraction of seeded samples a ∈ A²(d) (a₂ ≠ 0, resampled otherwise) whose
/// mod-λ image is certified full.
pub fn surjectivity_scan(
    fq: &Fq,
    lambda: &AIdeal,
    d: usize,
    n: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    let opts = CertifyOptions::default();
    let mut count = 0u64;
    for i in 0..n {
        let mut rng = SplitMix64::for_index(seed, i);
        let a1 = sample_poly(fq, d, &mut rng);
        let mut a2 = sample_poly(fq, d, &mut rng);
        while a2.is_zero() {
            a2 = sample_poly(fq, d, &mut rng);
        }
        let dm = DrinfeldModule::family(fq, &a1, &a2)?;
        if modl_full_certificate(&dm, lambda, &opts)?.proven() {
            count += 1;
        }
    }
    Ok(DensityEstimate {
        set: format!("ModLFullCertified({})", lambda.to_string(fq)),
        q: fq.q(),
        d,
        mode: CountMode::Sampled { n, seed },
        count,
        total: n,
        ratio: count as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_counts_match_closed_form_small() {
        let f2 = Fq::prime(2).unwrap();
        for d in 1..=5 {
            let est = count_set(&f2, &SetDescriptor::C, d, CountMode::Exact).unwrap();
            assert_eq!(est.count, c_count_closed_form(2, d), "d={d}");
            assert_eq!(est.total, 4u64.pow(d as u32 + 1));
        }
        let f3 = Fq::prime(3).unwrap();
        for d in 1..=4 {
            let est = count_set(&f3, &SetDescriptor::C, d, CountMode::Exact).unwrap();
            assert_eq!(est.count, c_count_closed_form(3, d), "d={d}");
        }
    }

    #[test]
    fn r_is_empty_at_degree_zero() {
        let f2 = Fq::prime(2).unwrap();
        let est = count_set(&f2, &SetDescriptor::R, 0, CountMode::Exact).unwrap();
        assert_eq!(est.count, 0);
        assert_eq!(est.total, 4); // q^(2(d+1))
    }

    #[test]
    fn sampled_and_exact_agree_within_3_sigma() {
        let f2 = Fq::prime(2).unwrap();
        let exact = count_set(&f2, &SetDescriptor::R, 4, CountMode::Exact).unwrap();
        let n = 400u64;
        let sampled =
            count_set(&f2, &SetDescriptor::R, 4, CountMode::Sampled { n, seed: 2024 }).unwrap();
        let p = exact.ratio;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!(
            (sampled.ratio - p).abs() <= 3.0 * sigma + 1e-12,
            "sampled {} vs exact {} (sigma {})",
            sampled.ratio,
            p,
            sigma
        );
    }

    #[test]
    fn exact_cap_enforced() {
        let f5 = Fq::prime(5).unwrap();
        assert!(matches!(
            count_set(&f5, &SetDescriptor::C, 7, CountMode::Exact),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn csv_schema() {
        let f2 = Fq::prime(2).unwrap();
        let est = count_set(&f2, &SetDescriptor::C, 1, CountMode::Exact).unwrap();
        let csv = to_csv(&[est]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "set,q,d,mode,count,total,ratio");
        let row = lines.next().unwrap();
        assert!(row.starts_with("C,2,1,exact,2,16,0.125000"), "{row}");
    }

    #[test]
    fn det_index_class_counts() {
        // membership depends only on a₂, so the count is a multiple of the
        // number of a₁ choices
        let f3 = Fq::prime(3).unwrap();
        let est = count_set(&f3, &SetDescriptor::DetIndexEquals(2), 1, CountMode::Exact).unwrap();
        assert_eq!(est.count % 9, 0);
        assert!(est.count > 0);
    }

    #[test]
    fn scan_is_seed_deterministic() {
        let f2 = Fq::prime(2).unwrap();
        let lam = AIdeal::parse(&f2, "(t)").unwrap();
        let a = surjectivity_scan(&f2, &lam, 3, 25, 7).unwrap();
        let b = surjectivity_scan(&f2, &lam, 3, 25, 7).unwrap();
        assert_eq!(a.count, b.count);
        assert!(a.count > 0, "some samples certify at d=3");
    }
}
