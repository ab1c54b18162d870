use normone::exactla::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 7 => -bound..=bound], r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(Int::from).collect()))
    })
}

fn rank_over_q(a: &IntMatrix) -> usize {
    hermite_basis(a).rows()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_identities(a in matrix(8, 30)) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().is_unit());
        prop_assert!(s.v.det().is_unit());
        prop_assert!(s.v.mul(s.v_inv()).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(Int::is_positive));
        for w in f.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert_eq!(invariant_factors(&a), f.clone());
        prop_assert_eq!(sparse_invariant_factors(&SparseMatrix::from_dense(&a)), f);
    }

    #[test]
    fn kernel_is_saturated_and_complete(a in matrix(8, 12)) {
        let k = kernel_basis(&a);
        prop_assert_eq!(k.rows(), a.rows() - rank_over_q(&a));
        if k.rows() > 0 {
            prop_assert!(k.mul(&a).is_zero());
            prop_assert!(is_saturated(&k));
        }
    }

    #[test]
    fn hermite_is_idempotent(a in matrix(8, 25)) {
        let h = hermite_basis(&a);
        prop_assert_eq!(hermite_basis(&h), h.clone());
        // same row lattice: each basis spans the other's rows
        let s = LatticeSolver::new(&h);
        for row in a.row_iter() {
            prop_assert!(s.contains(row));
        }
    }

    #[test]
    fn quotient_order_is_product_of_factors(a in matrix(6, 9)) {
        let q = quotient_invariants(&IntMatrix::identity(a.cols()), &a).unwrap();
        let f = invariant_factors(&a);
        prop_assert_eq!(q.free_rank, a.cols() - f.len());
        let nontrivial: Vec<Int> = f.into_iter().filter(|d| !d.is_one()).collect();
        prop_assert_eq!(q.torsion, nontrivial);
    }

    #[test]
    fn int_arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let (x, y, z) = (Int::from(a), Int::from(b), Int::from(c));
        let (p, q, r) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        prop_assert_eq!((&x * &y).to_big(), &p * &q);
        prop_assert_eq!((&x + &y).to_big(), &p + &q);
        prop_assert_eq!((&x - &y).to_big(), &p - &q);
        let mut acc = z.clone();
        acc.add_mul(&x, &y);
        prop_assert_eq!(acc.to_big(), &r + &p * &q);
        if b != 0 {
            let d = x.div_round(&y);
            let rem = &x - &(&d * &y);
            prop_assert!((&rem + &rem).cmp_abs(&y).is_le());
        }
    }
}

#[test]
fn big_entries_stay_exact() {
    let big = Int::from(i64::MAX);
    let a = IntMatrix::from_vec(2, 2, vec![big.clone(), big.clone(), Int::from(1), Int::from(2)]);
    let s = snf(&a);
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    assert_eq!(s.invariant_factors()[1], big);
}
