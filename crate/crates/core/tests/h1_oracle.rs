//! `h1` against the bar complex, and the duality used by `is_coflasque`
//! against the bar complex on every subgroup class.

mod common;

use common::{bar_h1, random_lattice, small_catalog};
use normone::cohomology::{h1_with, presentation_for, tate_minus1, Route};
use normone::glattice::dual;
use normone::permcore::subgroup_classes;
use normone::resolutions::{is_coflasque, is_flasque};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn h1_matches_bar_complex_on_small_catalog() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut nonzero = 0;
    for (name, g) in small_catalog() {
        let p = presentation_for(&g).unwrap();
        let classes = subgroup_classes(&g).unwrap();
        let elements = g.elements().unwrap();
        for trial in 0..20 {
            let l = random_lattice(&mut rng, &g, &classes);
            let oracle = bar_h1(&l, &elements);
            nonzero += usize::from(!oracle.is_trivial());
            for route in [Route::Kernel, Route::Saturation] {
                let got = h1_with(&l, &p, route).unwrap().invariants;
                assert_eq!(got, oracle, "{name} trial {trial} rank {} {route:?}", l.rank());
            }
        }
    }
    assert!(nonzero >= 50, "only {nonzero} lattices with nonzero H^1");
}

#[test]
fn dual_tate_minus1_matches_h1_on_every_class() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, g) in small_catalog() {
        let classes = subgroup_classes(&g).unwrap();
        for _ in 0..4 {
            let l = random_lattice(&mut rng, &g, &classes);
            let ld = dual(&l);
            let mut all_zero = true;
            for h in &classes {
                let oracle = bar_h1(&l, &h.element_set().unwrap());
                assert_eq!(tate_minus1(h, &ld).unwrap(), oracle, "{name}, class {h}");
                all_zero &= oracle.is_trivial();
            }
            assert_eq!(is_coflasque(&l).unwrap().holds(), all_zero, "{name}");
        }
    }
}

#[test]
fn permutation_lattices_are_flasque_and_coflasque() {
    for (name, g) in small_catalog() {
        for h in subgroup_classes(&g).unwrap() {
            let p = normone::glattice::perm_lattice(&g, &h).unwrap();
            assert!(is_flasque(&p).unwrap().holds(), "{name} / {h}");
            assert!(is_coflasque(&p).unwrap().holds(), "{name} / {h}");
        }
    }
}
