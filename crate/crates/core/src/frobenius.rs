//! Torsion kernels of reduced Drinfeld modules, Frobenius matrices at finite
//! level, and exact Frobenius characteristic polynomials x² − a·x + b ∈ A[x]
//! reconstructed by CRT over small auxiliary primes.

use crate::apoly::{crt, primes_of_degree, AIdeal, APoly};
use crate::drinfeld::{DrinfeldModule, ReductionKind};
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::fpoly;
use crate::ratfunc::FuncField;
use crate::residue::{ExtField, ResidueField, TableField};
use std::collections::HashMap;

pub use crate::xpoly::power_poly;

type ExtEl = Vec<u32>;

/// The λ-torsion of a reduced module: an explicit splitting field E over
/// F_𝔭, all N(λ)² kernel points, and a deterministic A/λ-basis.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub ext: ExtField,
    pub level: AIdeal,
    /// All kernel points in canonical order.
    pub points: Vec<ExtEl>,
    pub e1: ExtEl,
    pub e2: ExtEl,
    /// Kernel point ↦ its (c₁, c₂) coordinates, reps of degree < deg λ.
    coords: HashMap<ExtEl, (APoly, APoly)>,
}

impl TorsionBasis {
    pub fn coords_of(&self, point: &ExtEl) -> Option<&(APoly, APoly)> {
        self.coords.get(point)
    }
}

/// Kernel of the linear map with the given rows, over F_q. Returns a basis.
fn fq_kernel(fq: &Fq, rows_in: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = rows_in.len();
    if n == 0 {
        return vec![];
    }
    let mut rows: Vec<Vec<u32>> = rows_in.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = fq.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = fq.mul(x, &inv);
        }
        for i in 0..n {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    let t = fq.mul(&factor, p);
                    *x = fq.sub(x, &t);
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = fq.neg(&rows[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Columns (images of the F_q-basis of E) of the additive polynomial
/// Σ c_k x^(q^k), with coefficients c_k given as base-field indices.
fn additive_map_columns(ext: &ExtField, coeffs: &[u32]) -> Vec<Vec<u32>> {
    let base = &ext.base;
    let fq = &base.res.fq;
    let q = fq.q() as u128;
    let n = ext.fq_dim();
    let m = ext.degree();
    let bd = base.degree();

    let z: ExtEl = if m == 1 { ext.one() } else { vec![0, 1] };
    let mut cols = vec![vec![0u32; n]; n];

    let mut zq = z;
    let mut tq = base.t_image();
    for (k, ck) in coeffs.iter().enumerate() {
        if k > 0 {
            zq = ext.pow(&zq, q);
            tq = base.pow(&tq, q);
        }
        if base.is_zero(ck) {
            continue;
        }
        // (t̄^(q^k))^kk for kk < bd, times the coefficient
        let mut scalars = Vec::with_capacity(bd);
        let mut acc_t = *ck;
        for _ in 0..bd {
            scalars.push(acc_t);
            acc_t = base.mul(&acc_t, &tq);
        }
        // chain of (z^(q^k))^j across the basis index j
        let mut zq_j = ext.one();
        for j in 0..m {
            if j > 0 {
                zq_j = ext.mul(&zq_j, &zq);
            }
            for (kk, s) in scalars.iter().enumerate() {
                let img: ExtEl = fpoly::scale(base, &zq_j, s);
                let v = ext.to_fq_vec(&img);
                let col = &mut cols[j * bd + kk];
                for (dst, x) in col.iter_mut().zip(v.iter()) {
                    *dst = fq.add(dst, x);
                }
            }
        }
    }
    cols
}

/// Powers x^(q^k) of a point for k = 0..=kmax.
fn q_power_chain(ext: &ExtField, x: &ExtEl, kmax: usize) -> Vec<ExtEl> {
    let q = ext.base_q() as u128;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(x.clone());
    for k in 1..=kmax {
        let prev = out[k - 1].clone();
        out.push(ext.pow(&prev, q));
    }
    out
}

/// Evaluate an additive polynomial with base-field index coefficients at a
/// point whose q-power chain is precomputed.
fn additive_eval_chain(ext: &ExtField, coeffs: &[u32], chain: &[ExtEl]) -> ExtEl {
    let base = &ext.base;
    let mut acc = ext.zero();
    for (k, c) in coeffs.iter().enumerate() {
        if base.is_zero(c) {
            continue;
        }
        let term: ExtEl = fpoly::scale(base, &chain[k], c);
        acc = ext.add(&acc, &term);
    }
    acc
}

/// Compute the λ-torsion of a reduced rank-2 module (good reduction, λ prime
/// and different from the characteristic).
pub fn torsion_basis(dm: &DrinfeldModule<ResidueField>, level: &AIdeal) -> Result<TorsionBasis> {
    let fq = &dm.field.fq;
    if !level.is_prime(fq) {
        return Err(Error::NotPrime(level.generator().to_string(fq)));
    }
    if level == dm.characteristic() {
        return Err(Error::Domain(
            "torsion level equal to the characteristic prime is refused".into(),
        ));
    }
    torsion_basis_any(dm, level)
}

/// The same kernel-enumeration method at a composite level 𝔞 (a power λ^i
/// or a product of primes), capped at |A/𝔞| ≤ 81. The level must be prime
/// to the characteristic.
pub fn torsion_basis_composite(
    dm: &DrinfeldModule<ResidueField>,
    level: &AIdeal,
) -> Result<TorsionBasis> {
    let fq = &dm.field.fq;
    if level.norm(fq) > 81 {
        return Err(Error::ResourceCap(format!(
            "composite levels are capped at |A/a| <= 81, got {}",
            level.norm(fq)
        )));
    }
    if level
        .generator()
        .rem(fq, dm.characteristic().generator())
        .is_zero()
    {
        return Err(Error::Domain(
            "the level must be prime to the characteristic".into(),
        ));
    }
    torsion_basis_any(dm, level)
}

fn torsion_basis_any(dm: &DrinfeldModule<ResidueField>, level: &AIdeal) -> Result<TorsionBasis> {
    let base = &dm.field;
    let fq = &base.fq;
    if dm.rank() != 2 {
        return Err(Error::Unsupported("torsion bases are rank-2 only".into()));
    }
    let tp = dm.torsion_polynomial(level);
    let table = TableField::new(base)?;
    let coeffs: Vec<u32> = tp.c.iter().map(|c| table.from_apoly(c)).collect();
    debug_assert!(coeffs[0] != 0, "separable away from the characteristic");

    // splitting-field degree: lcm of irreducible factor degrees
    let dense: Vec<u32> = {
        let qd = fq.q().pow(tp.c.len() as u32 - 1) as usize;
        let mut v = vec![0u32; qd + 1];
        for (i, c) in coeffs.iter().enumerate() {
            let idx = fq.q().pow(i as u32) as usize;
            v[idx] = table.add(&v[idx], c);
        }
        fpoly::trim(&table, v)
    };
    let mut m = 1u64;
    for (_, d) in fpoly::distinct_degree(&table, &fpoly::monic(&table, &dense)) {
        m = lcm(m, d as u64);
    }
    let ext = ExtField::new(&table, m as usize);

    // kernel of the additive map as an F_q-subspace of E
    let cols = additive_map_columns(&ext, &coeffs);
    let kernel = fq_kernel(fq, &transpose(&cols));
    let dim = 2 * level.degree();
    if kernel.len() != dim {
        return Err(Error::Inconsistency(format!(
            "torsion kernel has F_q-dimension {} instead of {}",
            kernel.len(),
            dim
        )));
    }

    // enumerate all q^dim kernel points
    let q = fq.q();
    let expected = q.pow(dim as u32) as usize;
    let mut points = Vec::with_capacity(expected);
    let mut odo = vec![0u32; dim];
    'outer: loop {
        let mut v = vec![0u32; ext.fq_dim()];
        for (i, &c) in odo.iter().enumerate() {
            if c != 0 {
                for (dst, x) in v.iter_mut().zip(kernel[i].iter()) {
                    *dst = fq.add(dst, &fq.mul(&c, x));
                }
            }
        }
        points.push(ext.from_fq_vec(&v));
        let mut pos = 0;
        loop {
            odo[pos] += 1;
            if (odo[pos] as u64) < q {
                break;
            }
            odo[pos] = 0;
            pos += 1;
            if pos == dim {
                break 'outer;
            }
        }
    }
    points.sort_by(|a, b| ext.cmp_el(a, b));
    points.dedup();
    if points.len() != expected {
        return Err(Error::Inconsistency("kernel points are not distinct".into()));
    }
    finish_basis(dm, level, ext, points)
}

fn finish_basis(
    dm: &DrinfeldModule<ResidueField>,
    level: &AIdeal,
    ext: ExtField,
    points: Vec<ExtEl>,
) -> Result<TorsionBasis> {
    let fq = &dm.field.fq;
    let kmax = 2 * level.degree();

    let reps = residue_reps(fq, level);
    let actions: Vec<Vec<u32>> = reps
        .iter()
        .map(|c| dm.phi_of(c).c.iter().map(|x| ext.base.from_apoly(x)).collect())
        .collect();

    // proper divisors g/π of the level, for exact-order checks
    let gens_of_max_subideals: Vec<APoly> = crate::apoly::factor_poly(fq, level.generator())?
        .into_iter()
        .map(|(p, _)| level.generator().divrem(fq, &p).0)
        .collect();
    let has_full_order = |point: &ExtEl| -> bool {
        let chain = q_power_chain(&ext, point, kmax);
        gens_of_max_subideals.iter().all(|c| {
            let action: Vec<u32> =
                dm.phi_of(c).c.iter().map(|x| ext.base.from_apoly(x)).collect();
            !ext.is_zero(&additive_eval_chain(&ext, &action, &chain))
        })
    };

    let e1 = points
        .iter()
        .find(|p| !ext.is_zero(p) && has_full_order(p))
        .cloned()
        .ok_or_else(|| Error::Inconsistency("no point of full order in the kernel".into()))?;
    let chain1 = q_power_chain(&ext, &e1, kmax);
    let span1: Vec<ExtEl> = actions.iter().map(|a| additive_eval_chain(&ext, a, &chain1)).collect();

    let candidates: Vec<ExtEl> =
        points.iter().filter(|p| !span1.contains(p)).cloned().collect();
    'candidates: for e2 in candidates {
        if !has_full_order(&e2) {
            continue;
        }
        let chain2 = q_power_chain(&ext, &e2, kmax);
        let span2: Vec<ExtEl> =
            actions.iter().map(|a| additive_eval_chain(&ext, a, &chain2)).collect();
        let mut coords = HashMap::new();
        for (i, p1) in span1.iter().enumerate() {
            for (j, p2) in span2.iter().enumerate() {
                let point = ext.add(p1, p2);
                if coords.insert(point, (reps[i].clone(), reps[j].clone())).is_some() {
                    continue 'candidates;
                }
            }
        }
        if coords.len() != points.len() {
            continue 'candidates;
        }
        return Ok(TorsionBasis { ext, level: level.clone(), points, e1, e2, coords });
    }
    Err(Error::Inconsistency("kernel is not free of rank 2".into()))
}

/// Representatives of A/𝔞 (degree < deg 𝔞) in canonical order.
pub fn residue_reps(fq: &Fq, ideal: &AIdeal) -> Vec<APoly> {
    let d = ideal.degree();
    let q = fq.q();
    let mut out = Vec::with_capacity(q.pow(d as u32) as usize);
    let mut odo = vec![0u32; d];
    loop {
        out.push(APoly(fpoly::trim(fq, odo.clone())));
        let mut pos = 0;
        loop {
            odo[pos] += 1;
            if (odo[pos] as u64) < q {
                break;
            }
            odo[pos] = 0;
            pos += 1;
            if pos == d {
                out.sort_by(|a, b| a.cmp_canonical(fq, b));
                return out;
            }
        }
    }
}

fn transpose(cols: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = cols.len();
    let mut rows = vec![vec![0u32; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            rows[i][j] = x;
        }
    }
    rows
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The matrix of Frob_𝔭 on φ[λ] in the deterministic torsion basis.
#[derive(Clone, Debug)]
pub struct FrobSample {
    pub prime: AIdeal,
    pub level: AIdeal,
    /// Column convention: Frob(e_j) = Σ_i mat[i][j]·e_i.
    pub mat: [[APoly; 2]; 2],
    /// trace and det of charpoly x² − trace·x + det, reduced mod λ.
    pub trace: APoly,
    pub det: APoly,
}

/// Frobenius matrix of a reduced module at level λ.
pub fn frob_matrix_reduced(dm: &DrinfeldModule<ResidueField>, level: &AIdeal) -> Result<FrobSample> {
    let tb = torsion_basis(dm, level)?;
    frob_matrix_on_basis(dm, &tb)
}

/// Frobenius matrix at a composite level (capped; see
/// [`torsion_basis_composite`]).
pub fn frob_matrix_composite(
    dm: &DrinfeldModule<ResidueField>,
    level: &AIdeal,
) -> Result<FrobSample> {
    let tb = torsion_basis_composite(dm, level)?;
    frob_matrix_on_basis(dm, &tb)
}

/// The q^(deg 𝔭)-power map expressed in the basis of a torsion kernel.
pub fn frob_matrix_on_basis(
    dm: &DrinfeldModule<ResidueField>,
    tb: &TorsionBasis,
) -> Result<FrobSample> {
    let level = &tb.level;
    let fq = &dm.field.fq;
    let np = (fq.q() as u128).pow(dm.characteristic().degree() as u32);
    let ext = &tb.ext;
    let f1 = ext.pow(&tb.e1, np);
    let f2 = ext.pow(&tb.e2, np);
    let c1 = tb
        .coords_of(&f1)
        .ok_or_else(|| Error::Inconsistency("Frobenius image left the kernel".into()))?
        .clone();
    let c2 = tb
        .coords_of(&f2)
        .ok_or_else(|| Error::Inconsistency("Frobenius image left the kernel".into()))?
        .clone();
    let mat = [[c1.0.clone(), c2.0.clone()], [c1.1.clone(), c2.1.clone()]];
    let g = level.generator();
    let trace = mat[0][0].add(fq, &mat[1][1]).rem(fq, g);
    let det = mat[0][0]
        .mul(fq, &mat[1][1])
        .sub(fq, &mat[0][1].mul(fq, &mat[1][0]))
        .rem(fq, g);
    if !fpoly::is_one(fq, &fpoly::gcd(fq, &det.0, &g.0)) {
        return Err(Error::Inconsistency("Frobenius matrix is singular".into()));
    }
    Ok(FrobSample { prime: dm.characteristic().clone(), level: level.clone(), mat, trace, det })
}

/// Frobenius matrix of a global module at a good prime 𝔭 and level λ ≠ 𝔭.
pub fn frob_matrix(
    dm: &DrinfeldModule<FuncField>,
    p: &AIdeal,
    level: &AIdeal,
) -> Result<FrobSample> {
    let red = dm.reduce_at(p)?;
    frob_matrix_reduced(&red, level)
}

/// The exact Frobenius polynomial x² − a·x + b at a good prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobPoly {
    pub prime: AIdeal,
    /// a, with 2·deg a ≤ deg 𝔭.
    pub trace: APoly,
    /// b, a unit multiple of the monic generator of 𝔭.
    pub constant: APoly,
}

impl FrobPoly {
    pub fn to_xpoly(&self, fq: &Fq) -> crate::xpoly::XPoly {
        vec![self.constant.clone(), self.trace.neg(fq), APoly::one()]
    }

    pub fn to_string(&self, fq: &Fq) -> String {
        crate::xpoly::xp_to_string(fq, &self.to_xpoly(fq))
    }

    /// Is x² − a·x + b irreducible modulo the prime λ? (root scan over F_λ)
    pub fn irreducible_mod(&self, fq: &Fq, lambda: &AIdeal) -> Result<bool> {
        let lf = ResidueField::new(fq, lambda)?;
        let a = lf.reduce(&self.trace);
        let b = lf.reduce(&self.constant);
        for x in lf.elements() {
            let v = lf.add(&lf.sub(&lf.mul(&x, &x), &lf.mul(&a, &x)), &b);
            if v.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reconstruct the exact Frobenius polynomial at a good prime 𝔭 by CRT over
/// the smallest auxiliary primes coprime to 𝔭 and the bad locus.
pub fn frob_charpoly_exact(dm: &DrinfeldModule<FuncField>, p: &AIdeal) -> Result<FrobPoly> {
    let fq = dm.fq();
    let red = dm.reduce_at(p)?;
    let bad = dm.bad_primes()?;
    let d = p.degree();
    let need = d / 2 + 1;

    let mut samples: Vec<FrobSample> = Vec::new();
    let mut total = 0usize;
    let mut deg = 1usize;
    while total < need {
        if deg > d + 4 {
            return Err(Error::ResourceCap("ran out of CRT primes".into()));
        }
        for lam in primes_of_degree(fq, deg) {
            if lam == *p || bad.contains(&lam) {
                continue;
            }
            samples.push(frob_matrix_reduced(&red, &lam)?);
            total += deg;
            if total >= need {
                break;
            }
        }
        deg += 1;
    }

    // the unit in b = u·π, fixed by the first determinant
    let first = &samples[0];
    let lf = ResidueField::new(fq, &first.level)?;
    let pibar = lf.reduce(p.generator());
    let u_el = lf.mul(&first.det, &lf.inv(&pibar));
    let u = lf
        .as_fq_constant(&u_el)
        .filter(|&u| u != 0)
        .ok_or_else(|| Error::Inconsistency("determinant unit is not in F_q^×".into()))?;
    let b = APoly(fpoly::scale(fq, &p.generator().0, &u));

    // consistency of b at every sample
    for s in &samples {
        if b.rem(fq, s.level.generator()) != s.det {
            return Err(Error::Inconsistency("determinant disagrees across CRT primes".into()));
        }
    }

    // CRT the traces
    let parts: Vec<(APoly, APoly)> = samples
        .iter()
        .map(|s| (s.trace.clone(), s.level.generator().clone()))
        .collect();
    let a = crt(fq, &parts);
    // Weil bound / one-segment Newton polygon at infinity: 2·deg a ≤ d
    if let Some(da) = a.deg() {
        if 2 * da > d {
            return Err(Error::Inconsistency("trace violates the Weil bound".into()));
        }
    }
    debug_assert_eq!(b.deg(), Some(d));
    Ok(FrobPoly { prime: p.clone(), trace: a, constant: b })
}

/// Do the premises for the sharp exponent n = 1 hold? (single bad prime,
/// stable of rank 1 there, every valuation of a₂ divisible by q−1 so that
/// the determinant character is a constant twist of the Carlitz one)
pub fn n_one_premises(dm: &DrinfeldModule<FuncField>) -> Result<bool> {
    let fq = dm.fq();
    let bad = dm.bad_primes()?;
    if bad.len() != 1 {
        return Ok(false);
    }
    if dm.reduction_type(&bad[0])?.kind != ReductionKind::StableRank1 {
        return Ok(false);
    }
    let qm1 = (fq.q() - 1) as usize;
    let a2 = &dm.coeffs[1];
    for poly in [&a2.num, &a2.den] {
        if poly.deg().unwrap_or(0) >= 1 {
            for (_, mult) in crate::apoly::factor_poly(fq, poly)? {
                if mult % qm1 != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn default_power_exponent(q: u64) -> u32 {
    ((q - 1) * (q - 1) * (q + 1)) as u32
}

/// The reducible-level bound: any prime λ with reducible mod-λ image has
/// deg λ ≤ bound, given the exponent n and an equal-degree pair of good
/// primes.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u32,
    pub degree_d: usize,
    pub witnesses: (AIdeal, AIdeal),
    pub bound: usize,
}

/// Smallest degree with two good primes; bound = 2·n·d. `n = None` selects
/// n = 1 when the sharp premises hold, else (q−1)²(q+1).
pub fn irreducibility_bound(
    dm: &DrinfeldModule<FuncField>,
    n: Option<u32>,
    search_cap: usize,
) -> Result<BoundReport> {
    let fq = dm.fq();
    let n = match n {
        Some(n) => n,
        None => {
            if n_one_premises(dm)? {
                1
            } else {
                default_power_exponent(fq.q())
            }
        }
    };
    for d in 1..=search_cap {
        let mut good = Vec::new();
        for p in primes_of_degree(fq, d) {
            if dm.reduction_type(&p)?.kind == ReductionKind::Good {
                good.push(p);
                if good.len() == 2 {
                    return Ok(BoundReport {
                        n,
                        degree_d: d,
                        witnesses: (good[0].clone(), good[1].clone()),
                        bound: 2 * n as usize * d,
                    });
                }
            }
        }
    }
    Err(Error::ResourceCap(format!(
        "no equal-degree pair of good primes below degree {search_cap}"
    )))
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
        let a2 = APoly::t().pow(fq, fq.q() - 1).neg(fq);
        DrinfeldModule::family(fq, &APoly::one(), &a2).unwrap()
    }

    #[test]
    fn torsion_basis_of_q2_example() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let p = AIdeal::parse(&fq, "(t)").unwrap();
        let lam = AIdeal::parse(&fq, "(t+1)").unwrap();
        let red = dm.reduce_at(&p).unwrap();
        let tb = torsion_basis(&red, &lam).unwrap();
        // kernel of x^4 + x in F_4: all four elements, basis (1, ω)
        assert_eq!(tb.points.len(), 4);
        assert_eq!(tb.e1, tb.ext.one());
        let z: Vec<u32> = vec![0, 1];
        assert_eq!(tb.e2, z);
    }

    #[test]
    fn frob_matrix_of_q2_example() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let p = AIdeal::parse(&fq, "(t)").unwrap();
        let lam = AIdeal::parse(&fq, "(t+1)").unwrap();
        let s = frob_matrix(&dm, &p, &lam).unwrap();
        // squaring fixes 1 and sends ω to ω+1: M = [[1,1],[0,1]]
        assert_eq!(s.mat[0][0], APoly::one());
        assert_eq!(s.mat[0][1], APoly::one());
        assert_eq!(s.mat[1][0], APoly::zero());
        assert_eq!(s.mat[1][1], APoly::one());
        // charpoly = x² + 1 over F_2, matching x² + t reduced mod (t+1)
        assert!(s.trace.is_zero());
        assert_eq!(s.det, APoly::one());
    }

    #[test]
    fn charpoly_is_basis_independent() {
        // recompute the matrix in the swapped basis (e2, e1): same charpoly
        let fq = Fq::prime(3).unwrap();
        let dm = example_general(&fq);
        let p = AIdeal::parse(&fq, "(t+1)").unwrap();
        let lam = AIdeal::parse(&fq, "(t)").unwrap();
        let red = dm.reduce_at(&p).unwrap();
        let tb = torsion_basis(&red, &lam).unwrap();
        let swapped = TorsionBasis {
            ext: tb.ext.clone(),
            level: tb.level.clone(),
            points: tb.points.clone(),
            e1: tb.e2.clone(),
            e2: tb.e1.clone(),
            coords: tb.coords.iter().map(|(k, (c1, c2))| (k.clone(), (c2.clone(), c1.clone()))).collect(),
        };
        let a = frob_matrix_on_basis(&red, &tb).unwrap();
        let b = frob_matrix_on_basis(&red, &swapped).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.det, b.det);
        assert_ne!(a.mat, b.mat, "the matrices themselves differ");
    }

    #[test]
    fn kernel_size_q3() {
        let fq = Fq::prime(3).unwrap();
        let dm = example_general(&fq);
        let p = AIdeal::parse(&fq, "(t+2)").unwrap(); // (t - 1)
        let lam = AIdeal::parse(&fq, "(t)").unwrap();
        let red = dm.reduce_at(&p).unwrap();
        let tb = torsion_basis(&red, &lam).unwrap();
        assert_eq!(tb.points.len(), 9);
    }

    #[test]
    fn composite_levels_are_exposed_with_cap() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let p = AIdeal::parse(&fq, "(t)").unwrap();
        let red = dm.reduce_at(&p).unwrap();
        // λ² = (t+1)²: free of rank 2 over A/(t+1)², 16 kernel points
        let sq = AIdeal::parse(&fq, "(t^2+1)").unwrap(); // (t+1)^2
        let tb = torsion_basis_composite(&red, &sq).unwrap();
        assert_eq!(tb.points.len(), 16);
        let s = frob_matrix_composite(&red, &sq).unwrap();
        assert!(!s.det.is_zero());
        // λ₁λ₂ = (t+1)(t²+t+1): 64 kernel points
        let prod = AIdeal::new(
            &fq,
            &APoly::parse(&fq, "t+1").unwrap().mul(&fq, &APoly::parse(&fq, "t^2+t+1").unwrap()),
        )
        .unwrap();
        let tb2 = torsion_basis_composite(&red, &prod).unwrap();
        assert_eq!(tb2.points.len(), 64);
        // the level must avoid the characteristic
        let bad = AIdeal::parse(&fq, "(t^2+t)").unwrap();
        assert!(torsion_basis_composite(&red, &bad).is_err());
        // and the cap is enforced
        let f3 = Fq::prime(3).unwrap();
        let dm3 = DrinfeldModule::family(&f3, &APoly::one(), &APoly::parse(&f3, "2t^2").unwrap()).unwrap();
        let red3 = dm3.reduce_at(&AIdeal::parse(&f3, "(t+1)").unwrap()).unwrap();
        let big = AIdeal::new(&f3, &APoly::t().pow(&f3, 5)).unwrap();
        assert!(matches!(torsion_basis_composite(&red3, &big), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn refuses_characteristic_level_and_composite() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let p = AIdeal::parse(&fq, "(t)").unwrap();
        let red = dm.reduce_at(&p).unwrap();
        assert!(torsion_basis(&red, &p).is_err());
        let sq = AIdeal::parse(&fq, "(t^2)").unwrap();
        assert!(torsion_basis(&red, &sq).is_err());
    }

    #[test]
    fn frob_charpoly_q3_lemma_values() {
        let fq = Fq::prime(3).unwrap();
        let dm = example_general(&fq);
        // P at (t-c) = x² - x + (t-c) for c in {1, 2}
        for c in [1u32, 2] {
            let p = AIdeal::new(&fq, &APoly::from_coeffs(&fq, vec![fq.neg(&c), 1])).unwrap();
            let fp = frob_charpoly_exact(&dm, &p).unwrap();
            assert_eq!(fp.trace, APoly::one(), "c={c}");
            assert_eq!(fp.constant, p.generator().clone(), "c={c}");
            assert!(satisfies_frobenius_relation(&dm, &fp), "c={c}");
        }
        // P at (t²+t+2): the trace is pinned by the endomorphism relation
        // π² − φ̄_a·π + φ̄_b = 0 over F_9, whose unique solution is a = 2
        let p2 = AIdeal::parse(&fq, "(t^2+t+2)").unwrap();
        let fp2 = frob_charpoly_exact(&dm, &p2).unwrap();
        assert_eq!(fp2.to_string(&fq), "x^2 + x + (t^2+t+2)");
        assert!(satisfies_frobenius_relation(&dm, &fp2));
    }

    /// Oracle: does π = τ^(deg 𝔭) satisfy x² − a·x + b in F_𝔭{τ}?
    fn satisfies_frobenius_relation(dm: &DrinfeldModule<FuncField>, fp: &FrobPoly) -> bool {
        let red = dm.reduce_at(&fp.prime).unwrap();
        let rf = red.field.clone();
        let mut pi = crate::skew::SkewPoly::constant(&rf, rf.one());
        for _ in 0..fp.prime.degree() {
            pi = pi.mul(&rf, &crate::skew::SkewPoly::tau(&rf));
        }
        let pi2 = pi.mul(&rf, &pi);
        let lhs = pi2
            .sub(&rf, &red.phi_of(&fp.trace).mul(&rf, &pi))
            .add(&rf, &red.phi_of(&fp.constant));
        lhs.is_zero()
    }

    #[test]
    fn frob_charpoly_q2_lemma_values() {
        let fq = Fq::prime(2).unwrap();
        let dm = example_q2(&fq);
        let pt = AIdeal::parse(&fq, "(t)").unwrap();
        assert_eq!(frob_charpoly_exact(&dm, &pt).unwrap().to_string(&fq), "x^2 + (t)");
        let pt1 = AIdeal::parse(&fq, "(t+1)").unwrap();
        assert_eq!(frob_charpoly_exact(&dm, &pt1).unwrap().to_string(&fq), "x^2 + x + (t+1)");
    }

    #[test]
    fn charpoly_mod_matches_lemma_reduction() {
        // q=3, 𝔭=(t-1), λ=(t): x² − x + (t−1) ≡ x² + 2x + 2 (mod t)
        let fq = Fq::prime(3).unwrap();
        let dm = example_general(&fq);
        let p = AIdeal::parse(&fq, "(t+2)").unwrap();
        let lam = AIdeal::parse(&fq, "(t)").unwrap();
        let s = frob_matrix(&dm, &p, &lam).unwrap();
        assert_eq!(s.trace, APoly::one());
        assert_eq!(s.det, APoly::constant(2));
    }

    #[test]
    fn bound_reports() {
        let f2 = Fq::prime(2).unwrap();
        let dm2 = example_q2(&f2);
        let b = irreducibility_bound(&dm2, None, 8).unwrap();
        assert_eq!((b.n, b.degree_d, b.bound), (1, 1, 2));
        let b3 = irreducibility_bound(&dm2, Some(default_power_exponent(2)), 8).unwrap();
        assert_eq!((b3.n, b3.bound), (3, 6));

        let f3 = Fq::prime(3).unwrap();
        let dm3 = example_general(&f3);
        let b = irreducibility_bound(&dm3, None, 8).unwrap();
        assert_eq!((b.n, b.degree_d, b.bound), (1, 1, 2));
    }

    #[test]
    fn q5_family_spot_check() {
        let fq = Fq::prime(5).unwrap();
        let dm = example_general(&fq);
        for c in [1u32, 2, 3, 4] {
            let p = AIdeal::new(&fq, &APoly::from_coeffs(&fq, vec![fq.neg(&c), 1])).unwrap();
            let fp = frob_charpoly_exact(&dm, &p).unwrap();
            assert_eq!(fp.trace, APoly::one(), "c={c}");
            assert_eq!(fp.constant, p.generator().clone(), "c={c}");
        }
    }
}
