#![allow(dead_code)]

use std::collections::HashMap;

use normone::exactla::{kernel_basis, quotient_invariants};
use normone::glattice::{augmentation_ideal, chevalley_module, direct_sum, perm_lattice};
use normone::permcore::*;
use normone::{AbelianInvariants, GLattice, Int, IntMatrix};
use rand::rngs::StdRng;
use rand::Rng;

/// Catalog groups of order at most 12.
pub fn small_catalog() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C2", cyclic(2).unwrap()),
        ("C3", cyclic(3).unwrap()),
        ("C4", cyclic(4).unwrap()),
        ("C5", cyclic(5).unwrap()),
        ("C6", cyclic(6).unwrap()),
        ("C7", cyclic(7).unwrap()),
        ("C8", cyclic(8).unwrap()),
        ("C9", cyclic(9).unwrap()),
        ("C10", cyclic(10).unwrap()),
        ("C11", cyclic(11).unwrap()),
        ("C12", cyclic(12).unwrap()),
        ("C2xC2", klein_four().unwrap()),
        ("C2xC4", cyclic_product(&[2, 4]).unwrap()),
        ("C2xC2xC2", cyclic_product(&[2, 2, 2]).unwrap()),
        ("C3xC3", cyclic_product(&[3, 3]).unwrap()),
        ("C2xC6", cyclic_product(&[2, 6]).unwrap()),
        ("S3", symmetric(3).unwrap()),
        ("D4", dihedral(4).unwrap()),
        ("D5", dihedral(5).unwrap()),
        ("D6", dihedral(6).unwrap()),
        ("A4", alternating(4).unwrap()),
    ]
}

/// `rho(g)` for every element, by breadth-first multiplication
/// `rho(g x) = rho(g) rho(x)` over the generators.
pub fn all_matrices(l: &GLattice) -> Vec<(Permutation, IntMatrix)> {
    let g = l.group();
    let gens: Vec<(Permutation, IntMatrix)> =
        g.generators().iter().cloned().zip(l.action_matrices()).collect();
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    let mut out = vec![(g.identity(), IntMatrix::identity(l.rank()))];
    seen.insert(g.identity(), 0);
    let mut i = 0;
    while i < out.len() {
        for (x, m) in &gens {
            let p = &out[i].0 * x;
            if !seen.contains_key(&p) {
                let mat = out[i].1.mul(m);
                seen.insert(p.clone(), out.len());
                out.push((p, mat));
            }
        }
        i += 1;
    }
    out
}

/// `H^1(S, L)` from inhomogeneous 1-cochains on the elements of `S`:
/// cocycles solve `f(gh) = f(g) rho(h) + f(h)` for all pairs, coboundaries
/// are `g -> v (rho(g) - 1)`.
pub fn bar_h1(l: &GLattice, subgroup: &[Permutation]) -> AbelianInvariants {
    let r = l.rank();
    let mats: HashMap<Permutation, IntMatrix> = all_matrices(l).into_iter().collect();
    let n = subgroup.len();
    let pos: HashMap<&Permutation, usize> = subgroup.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if r == 0 {
        return AbelianInvariants::trivial();
    }
    let mut a = IntMatrix::zeros(n * r, n * n * r);
    for (gi, g) in subgroup.iter().enumerate() {
        for (hi, h) in subgroup.iter().enumerate() {
            let gh = pos[&(g * h)];
            let rho_h = &mats[h];
            for b in 0..r {
                let col = (gi * n + hi) * r + b;
                a[(gh * r + b, col)] += Int::from(1);
                a[(hi * r + b, col)] -= Int::from(1);
                for c in 0..r {
                    let v = rho_h[(c, b)].clone();
                    a[(gi * r + c, col)] -= v;
                }
            }
        }
    }
    let z = kernel_basis(&a);
    let mut b = IntMatrix::zeros(r, n * r);
    for (gi, g) in subgroup.iter().enumerate() {
        let d = mats[g].minus_identity();
        for i in 0..r {
            for c in 0..r {
                b[(i, gi * r + c)] = d[(i, c)].clone();
            }
        }
    }
    quotient_invariants(&z, &b).unwrap()
}

/// A random unimodular matrix and its inverse.
pub fn random_unimodular(rng: &mut StdRng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p.negate_row(0);
            q.negate_col(0);
        }
        return (p, q);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Int::from(rng.gen_range(-2i64..=2));
        // P <- E P, Q <- Q E^-1 with E = 1 + c e_ij
        p.add_row_multiple(i, j, &c);
        q.add_col_multiple(j, i, &-c);
    }
    (p, q)
}

/// Random lattice of rank 1..=4: a sum of small standard lattices in a
/// random basis.
pub fn random_lattice(rng: &mut StdRng, g: &PermGroup, classes: &[SubgroupHandle]) -> GLattice {
    let target = rng.gen_range(1..=4usize);
    let mut l = GLattice::zero(g);
    let mut tries = 0;
    while l.rank() < target && tries < 50 {
        tries += 1;
        let room = target - l.rank();
        let h = &classes[rng.gen_range(0..classes.len())];
        let block = match rng.gen_range(0..5) {
            0 => GLattice::trivial(g),
            1 => GLattice::sign(g),
            2 => perm_lattice(g, h).unwrap(),
            3 if h.index() > 1 => augmentation_ideal(g, h).unwrap().0,
            4 if h.index() > 1 => chevalley_module(g, h).unwrap(),
            _ => continue,
        };
        if block.rank() == 0 || block.rank() > room {
            continue;
        }
        l = direct_sum(&l, &block).unwrap();
    }
    if l.rank() == 0 {
        l = GLattice::trivial(g);
    }
    let (p, q) = random_unimodular(rng, l.rank());
    let mats: Vec<IntMatrix> = l.action_matrices().iter().map(|m| p.mul(m).mul(&q)).collect();
    GLattice::from_dense(g, &mats).unwrap()
}
