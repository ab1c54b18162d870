//! End-to-end checks of the flasque pipeline against the independent
//! `Sha^2_omega` route and against structural properties.

mod common;

use std::time::Instant;

use normone::cohomology::{h1_with, presentation_for, sha2_omega, Route};
use normone::glattice::chevalley_module;
use normone::permcore::*;
use normone::resolutions::{flasque_resolution, is_flasque, norm_one_invariant, norm_one_report};
use normone::Int;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sub(g: &PermGroup, gens: &[&[&[usize]]]) -> SubgroupHandle {
    let gens = gens.iter().map(|c| Permutation::from_cycles(g.degree(), c).unwrap()).collect();
    SubgroupHandle::new(g, gens).unwrap()
}

#[test]
fn sha_route_agrees_on_listed_pairs() {
    let c2 = cyclic(2).unwrap();
    let c4 = cyclic(4).unwrap();
    let c6 = cyclic(6).unwrap();
    let s3 = symmetric(3).unwrap();
    let a4 = alternating(4).unwrap();
    let v4 = klein_four().unwrap();
    let d4 = dihedral(4).unwrap();
    let pairs = vec![
        (c2.clone(), SubgroupHandle::trivial(&c2), 0),
        (c4.clone(), sub(&c4, &[&[&[1, 3], &[2, 4]]]), 0),
        (c6.clone(), sub(&c6, &[&[&[1, 4], &[2, 5], &[3, 6]]]), 0),
        (s3.clone(), sub(&s3, &[&[&[1, 2]]]), 0),
        (s3.clone(), sub(&s3, &[&[&[1, 2, 3]]]), 0),
        (a4.clone(), SubgroupHandle::point_stabilizer(&a4, 4).unwrap(), 2),
        (a4.clone(), sub(&a4, &[&[&[1, 2], &[3, 4]]]), 2),
        (v4.clone(), SubgroupHandle::trivial(&v4), 2),
        (d4.clone(), sub(&d4, &[&[&[1, 4], &[2, 3]]]), 0),
    ];
    for (g, h, expected) in pairs {
        let a = norm_one_invariant(&g, &h).unwrap();
        let b = sha2_omega(&g, &h).unwrap();
        assert_eq!(a, b, "{g:?} / {h}");
        let want: Vec<Int> = if expected == 0 { vec![] } else { vec![Int::from(expected)] };
        assert_eq!(a.torsion, want, "{g:?} / {h}");
    }
}

#[test]
fn sha_route_agrees_on_small_catalog() {
    // every class of index >= 2 whose shifted Chevalley module stays small
    let mut groups = common::small_catalog();
    groups.push(("S4", symmetric(4).unwrap()));
    groups.push(("D12", dihedral(12).unwrap()));
    groups.push(("C2xC2xC2xC2", cyclic_product(&[2, 2, 2, 2]).unwrap()));
    let mut checked = 0;
    for (name, g) in groups {
        for h in subgroup_classes(&g).unwrap() {
            let shifted_rank = (g.order() - 1) * (h.index() - 1);
            if h.index() < 2 || shifted_rank > 120 {
                continue;
            }
            let a = norm_one_invariant(&g, &h).unwrap();
            let b = sha2_omega(&g, &h).unwrap();
            assert_eq!(a, b, "{name} / {h}");
            checked += 1;
        }
    }
    assert!(checked >= 60, "only {checked} pairs");
}

#[test]
fn flasque_sides_pass_the_checker() {
    let groups = vec![
        cyclic(6).unwrap(),
        symmetric(3).unwrap(),
        klein_four().unwrap(),
        dihedral(4).unwrap(),
        alternating(4).unwrap(),
        symmetric(4).unwrap(),
        dihedral(6).unwrap(),
        alternating(5).unwrap(),
        symmetric(5).unwrap(),
        alternating(6).unwrap(),
    ];
    for g in groups {
        for h in subgroup_classes(&g).unwrap() {
            if h.index() < 2 || h.index() > 20 {
                continue;
            }
            let j = chevalley_module(&g, &h).unwrap();
            let res = flasque_resolution(&j).unwrap();
            res.verify().unwrap();
            let check = is_flasque(&res.side).unwrap();
            assert!(check.holds(), "{g:?} / {h}: witness {:?}", check.witness);
        }
    }
}

#[test]
fn invariant_is_conjugation_invariant_on_a5() {
    let g = alternating(5).unwrap();
    let base = norm_one_invariant(&g, &SubgroupHandle::point_stabilizer(&g, 5).unwrap()).unwrap();
    assert!(base.is_trivial());
    for k in 1..=4 {
        let h = SubgroupHandle::point_stabilizer(&g, k).unwrap();
        assert_eq!(norm_one_invariant(&g, &h).unwrap(), base);
    }
    let mut rng = StdRng::seed_from_u64(5);
    let elements = g.elements().unwrap();
    let h = SubgroupHandle::point_stabilizer(&g, 5).unwrap();
    for _ in 0..4 {
        let x = &elements[rng.gen_range(0..elements.len())];
        assert_eq!(norm_one_invariant(&g, &h.conjugate(x)).unwrap(), base);
    }
    // a non-trivial invariant is preserved too
    let a4 = alternating(4).unwrap();
    let want = norm_one_invariant(&a4, &SubgroupHandle::point_stabilizer(&a4, 4).unwrap()).unwrap();
    for k in 1..=3 {
        let h = SubgroupHandle::point_stabilizer(&a4, k).unwrap();
        assert_eq!(norm_one_invariant(&a4, &h).unwrap(), want);
    }
}

#[test]
fn both_h1_routes_agree_on_flasque_modules() {
    let a6 = alternating(6).unwrap();
    let a7 = alternating(7).unwrap();
    let mut cases = vec![
        (a6.clone(), sub(&a6, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 3]]])),
        (a6.clone(), sub(&a6, &[&[&[1, 2, 3, 4, 5]], &[&[1, 4], &[5, 6]]])),
        (a7.clone(), SubgroupHandle::point_stabilizer(&a7, 7).unwrap()),
    ];
    for g in [alternating(4).unwrap(), alternating(5).unwrap(), symmetric(4).unwrap(), symmetric(5).unwrap()] {
        let h = SubgroupHandle::point_stabilizer(&g, g.degree()).unwrap();
        cases.push((g, h));
    }
    for (g, h) in cases {
        let rep = norm_one_report(&g, &h).unwrap();
        let p = presentation_for(&g).unwrap();
        let t = Instant::now();
        let exact = h1_with(&rep.resolution.side, &p, Route::Kernel).unwrap().invariants;
        let sat = h1_with(&rep.resolution.side, &p, Route::Saturation).unwrap().invariants;
        assert_eq!(exact, sat, "{g:?}");
        assert_eq!(exact, rep.invariant);
        assert!(t.elapsed().as_secs() < 120);
    }
}

#[test]
fn index_two_subgroups_give_zero() {
    for g in [symmetric(3).unwrap(), symmetric(4).unwrap(), dihedral(5).unwrap(), cyclic(8).unwrap()] {
        for h in subgroup_classes(&g).unwrap() {
            if h.index() == 2 {
                let rep = norm_one_report(&g, &h).unwrap();
                assert_eq!(rep.j_rank, 1);
                assert!(rep.invariant.is_trivial());
            }
        }
    }
}
