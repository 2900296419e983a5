//! Exhaustive finite-level commutator structure at level λ²: for norms 3
//! and 4 the commutator of the full group is the full determinant-one
//! subgroup.

use dmq_core::apoly::APoly;
use dmq_core::field::Fq;
use dmq_core::groups::{
    gl2_generators, gl2_order_power_level, sl2_order_power_level, MatGroup, QuotRing,
};

#[test]
fn commutator_of_full_group_is_sl2_at_norm_3() {
    let f3 = Fq::prime(3).unwrap();
    let ring = QuotRing::new(&f3, &APoly::parse(&f3, "t^2").unwrap()).unwrap();
    let full = MatGroup::closure(&ring, &gl2_generators(&ring), 8192).unwrap();
    assert_eq!(full.order() as u64, gl2_order_power_level(3, 2));
    let comm = full.commutator_subgroup(8192).unwrap();
    assert_eq!(comm.order() as u64, sl2_order_power_level(3, 2));
    assert!(comm.elements.iter().all(|m| m.det(&ring) == APoly::one()));
}

#[test]
fn commutator_of_full_group_is_sl2_at_norm_4() {
    let f2 = Fq::prime(2).unwrap();
    let lam = APoly::parse(&f2, "t^2+t+1").unwrap();
    let ring = QuotRing::new(&f2, &lam.pow(&f2, 2)).unwrap();
    let full = MatGroup::closure(&ring, &gl2_generators(&ring), 65536).unwrap();
    assert_eq!(full.order() as u64, gl2_order_power_level(4, 2));
    let comm = full.commutator_subgroup(65536).unwrap();
    assert_eq!(comm.order() as u64, sl2_order_power_level(4, 2));
    assert!(comm.elements.iter().all(|m| m.det(&ring) == APoly::one()));
}

/// The filtration spaces are F_λ-subspaces stable under conjugation by the
/// mod-λ image, checked over the non-prime residue field F_4 where
/// F_λ-scaling is strictly stronger than F_p-scaling.
#[test]
fn filtration_spaces_are_stable_subspaces_over_f4() {
    use dmq_core::apoly::AIdeal;
    use dmq_core::groups::{filtration, QuotMat};

    let f2 = Fq::prime(2).unwrap();
    let lam_poly = APoly::parse(&f2, "t^2+t+1").unwrap();
    let lam = AIdeal::new(&f2, &lam_poly).unwrap();
    let ring2 = QuotRing::new(&f2, &lam_poly.pow(&f2, 2)).unwrap();
    let lring = QuotRing::new(&f2, &lam_poly).unwrap();
    for gens in [gl2_generators(&ring2), dmq_core::groups::sl2_generators(&ring2)] {
        let group = MatGroup::closure(&ring2, &gens, 65536).unwrap();
        let filt = filtration(&group, &lam, 2).unwrap();
        let space = &filt.spaces[0];
        let find = |m: &QuotMat| space.binary_search_by(|x| x.cmp_canonical(&f2, m)).is_ok();
        // closed under addition and F_λ-scaling
        for a in space.iter().step_by(7) {
            for b in space.iter().step_by(11) {
                let sum = QuotMat {
                    e: [
                        lring.add(&a.e[0], &b.e[0]),
                        lring.add(&a.e[1], &b.e[1]),
                        lring.add(&a.e[2], &b.e[2]),
                        lring.add(&a.e[3], &b.e[3]),
                    ],
                };
                assert!(find(&sum), "not closed under addition");
            }
            for c in lring.elements() {
                let scaled = QuotMat {
                    e: [
                        lring.mul(&a.e[0], &c),
                        lring.mul(&a.e[1], &c),
                        lring.mul(&a.e[2], &c),
                        lring.mul(&a.e[3], &c),
                    ],
                };
                assert!(find(&scaled), "not an F_λ-subspace");
            }
        }
        // stable under conjugation by the mod-λ image
        for g in filt.gbar.elements.iter().step_by(17) {
            let gi = g.inv(&lring).unwrap();
            for a in space.iter().step_by(13) {
                let conj = g.mul(&lring, a).mul(&lring, &gi);
                assert!(find(&conj), "not conjugation-stable");
            }
        }
    }
}
