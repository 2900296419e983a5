//! Brute-force confirmation of the certified mod-λ² fullness: the pair
//! (matrix order, characteristic polynomial) of a Frobenius element is
//! independent of all basis choices, so the sampled pairs at good primes
//! are invariants of the global image. If no proper subgroup of
//! GL₂(A/λ²) realizes all sampled pairs, the image is the full group,
//! confirming the certificate without the rule engine.
//!
//! The subgroup lattice is walked on u128 bitmasks over a precomputed
//! multiplication table (the group has 96 elements).

use dmq_core::apoly::{primes_of_degree, AIdeal, APoly};
use dmq_core::drinfeld::{DrinfeldModule, ReductionKind};
use dmq_core::field::Fq;
use dmq_core::frobenius::frob_matrix_composite;
use dmq_core::groups::{all_invertible, QuotMat, QuotRing};
use std::collections::{BTreeSet, HashMap, HashSet};

type Invariant = (usize, APoly, APoly);

fn mat_order(ring: &QuotRing, m: &QuotMat) -> usize {
    let mut acc = m.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.mul(ring, m);
        k += 1;
        assert!(k <= 4096, "order overflow");
    }
    k
}

fn invariant(ring: &QuotRing, m: &QuotMat) -> Invariant {
    (mat_order(ring, m), m.trace(ring), m.det(ring))
}

/// Close a bitmask under the group multiplication table.
fn close_mask(mult: &[Vec<u8>], id: usize, mut mask: u128) -> u128 {
    mask |= 1u128 << id;
    loop {
        let mut next = mask;
        let mut i_bits = mask;
        while i_bits != 0 {
            let i = i_bits.trailing_zeros() as usize;
            i_bits &= i_bits - 1;
            let mut j_bits = mask;
            while j_bits != 0 {
                let j = j_bits.trailing_zeros() as usize;
                j_bits &= j_bits - 1;
                next |= 1u128 << mult[i][j];
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    }
}

#[test]
fn certified_mod_level_squared_image_is_provably_full() {
    let fq = Fq::prime(2).unwrap();
    let dm = DrinfeldModule::family(
        &fq,
        &APoly::parse(&fq, "t^3").unwrap(),
        &APoly::parse(&fq, "t^2+t+1").unwrap(),
    )
    .unwrap();
    let lam2 = AIdeal::parse(&fq, "(t^2)").unwrap(); // λ² for λ = (t)
    let ring = QuotRing::new(&fq, lam2.generator()).unwrap();

    // conjugation-invariant Frobenius data at good primes
    let mut sampled: BTreeSet<Invariant> = BTreeSet::new();
    for d in 1..=5usize {
        for p in primes_of_degree(&fq, d) {
            if p.generator() == &APoly::t()
                || dm.reduction_type(&p).unwrap().kind != ReductionKind::Good
            {
                continue;
            }
            let red = dm.reduce_at(&p).unwrap();
            let s = frob_matrix_composite(&red, &lam2).unwrap();
            let m = QuotMat {
                e: [
                    s.mat[0][0].clone(),
                    s.mat[0][1].clone(),
                    s.mat[1][0].clone(),
                    s.mat[1][1].clone(),
                ],
            };
            sampled.insert(invariant(&ring, &m));
        }
    }
    assert!(sampled.len() >= 5, "sampled {} invariant classes", sampled.len());

    // group data: elements, multiplication table, invariants per element
    let all = all_invertible(&ring, 4096).unwrap();
    let n = all.len();
    assert_eq!(n, 96);
    let index: HashMap<QuotMat, usize> =
        all.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mult: Vec<Vec<u8>> = all
        .iter()
        .map(|a| all.iter().map(|b| index[&a.mul(&ring, b)] as u8).collect())
        .collect();
    let id = index[&QuotMat::identity()];
    let invariants: Vec<Invariant> = all.iter().map(|m| invariant(&ring, m)).collect();
    // which elements realize each sampled invariant
    let realizes: Vec<u128> = sampled
        .iter()
        .map(|inv| {
            let mut mask = 0u128;
            for (i, x) in invariants.iter().enumerate() {
                if x == inv {
                    mask |= 1u128 << i;
                }
            }
            assert!(mask != 0, "sampled invariant not realized in the full group");
            mask
        })
        .collect();
    let contains_all_sampled =
        |mask: u128| -> bool { realizes.iter().all(|r| mask & r != 0) };

    // walk the subgroup lattice on bitmasks
    let full: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let mut seen: HashSet<u128> = HashSet::new();
    let trivial = close_mask(&mult, id, 0);
    seen.insert(trivial);
    let mut frontier = vec![trivial];
    let mut proper_containing = 0usize;
    while let Some(h) = frontier.pop() {
        if h != full && contains_all_sampled(h) {
            proper_containing += 1;
        }
        if h == full {
            continue;
        }
        for g in 0..n {
            if h & (1u128 << g) != 0 {
                continue;
            }
            let join = close_mask(&mult, g, h);
            if seen.insert(join) {
                assert!(seen.len() <= 100_000, "subgroup lattice larger than expected");
                frontier.push(join);
            }
        }
    }
    assert_eq!(
        proper_containing, 0,
        "some proper subgroup of GL2(A/λ²) realizes every sampled Frobenius invariant \
         (lattice size {})",
        seen.len()
    );
}
