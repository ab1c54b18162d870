use normone::cohomology::presentation_catalog;
use normone::fpgroups::*;
use normone::GroupKind;

#[test]
fn catalog_presentations_enumerate_to_group_order() {
    for kind in [
        GroupKind::Cyclic(7),
        GroupKind::Symmetric(5),
        GroupKind::Alternating(6),
        GroupKind::Dihedral(6),
        GroupKind::CyclicProduct(vec![2, 2, 3]),
    ] {
        let p = presentation_catalog(&kind).unwrap();
        let fp = p.fp_group();
        let t = todd_coxeter(&fp, &[], 100_000).unwrap();
        assert!(t.is_consistent(&fp));
        assert_eq!(t.coset_count() as u64, kind.build().unwrap().order(), "{kind}");
    }
}

#[test]
fn schur_covers_up_to_the_cap() {
    let mut factorial = 6usize;
    for n in 4..=SCHUR_COVER_CAP {
        factorial *= n;
        let u = schur_cover_sn(n).unwrap();
        let table = todd_coxeter(&u, &[], 200_000).unwrap();
        assert!(table.is_consistent(&u));
        assert_eq!(table.coset_count(), 2 * factorial, "|U_{n}|");
        // killing z gives S_n back
        assert_eq!(u.with_relator(vec![1]).unwrap().order(200_000).unwrap(), factorial);
        let v = preimage_an(n, 200_000).unwrap();
        assert_eq!((v.index(), v.order), (2, factorial), "V_{n}");
        // the commutator identity, in the finite group U_n only
        assert!(verify_commutator_claim(n, 200_000).unwrap());
    }
}

#[test]
fn commutator_of_an_element_with_itself_is_not_z() {
    let u = schur_cover_sn(4).unwrap();
    let reg = todd_coxeter(&u, &[], 1000).unwrap();
    let e2 = e_word(2);
    let c = commutator(&e2, &e2);
    assert_eq!(reg.trace(0, &c), 0);
    assert_ne!(reg.trace(0, &[1]), reg.trace(0, &c));
}
