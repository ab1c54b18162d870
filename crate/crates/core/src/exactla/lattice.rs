//! Row lattices: kernels, membership/solving, and finite quotients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::matrix::IntMatrix;
use super::normal_form::{hermite, invariant_factors, snf, HermiteForm};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`
/// with `t_1 | t_2 | ... | t_k` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants::default()
    }

    /// Normalizes an arbitrary list of cyclic orders (zeros count as free
    /// factors, units are dropped) into divisibility order.
    pub fn from_cyclic_orders(orders: &[Int]) -> AbelianInvariants {
        let free_rank = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<Int> = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        let torsion = invariant_factors(&IntMatrix::diagonal(&finite))
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianInvariants { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().fold(Int::one(), |a, b| &a * b)
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut orders: Vec<Int> = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut out = AbelianInvariants::from_cyclic_orders(&orders);
        out.free_rank = self.free_rank + other.free_rank;
        out
    }

    /// Torsion orders as decimal strings (the JSON representation).
    pub fn torsion_strings(&self) -> Vec<String> {
        self.torsion.iter().map(|t| t.to_string()).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Solves `x * A = b` repeatedly against a fixed `A`.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    h: IntMatrix,
    u: IntMatrix,
    pivots: Vec<usize>,
}

impl LatticeSolver {
    pub fn new(a: &IntMatrix) -> LatticeSolver {
        let HermiteForm { h, u, pivots } = hermite(a, true);
        let r = pivots.len();
        LatticeSolver { h: h.row_range(0, r), u: u.expect("tracked").row_range(0, r), pivots }
    }

    /// Rank of the row lattice.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Hermite basis of the row lattice.
    pub fn basis(&self) -> &IntMatrix {
        &self.h
    }

    /// Coordinates `y` with `y * H = b` in the Hermite basis.
    pub fn hermite_coordinates(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.h.cols(), "vector length mismatch");
        let mut res = b.to_vec();
        let mut y = vec![Int::zero(); self.pivots.len()];
        let mut next = 0;
        for c in 0..self.h.cols() {
            if next < self.pivots.len() && self.pivots[next] == c {
                let p = &self.h[(next, c)];
                let q = res[c].div_exact(p)?;
                if !q.is_zero() {
                    for (j, r) in res.iter_mut().enumerate().skip(c) {
                        let hv = &self.h[(next, j)];
                        if !hv.is_zero() {
                            r.sub_mul(&q, hv);
                        }
                    }
                }
                y[next] = q;
                next += 1;
            } else if !res[c].is_zero() {
                return None;
            }
        }
        Some(y)
    }

    /// Some `x` with `x * A = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let y = self.hermite_coordinates(b)?;
        Some(self.u.vec_mul(&y))
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.hermite_coordinates(b).is_some()
    }
}

/// Rows forming a basis of the integer solutions of `x * A = 0`, in Hermite
/// normal form. The basis is saturated: it spans every integer solution.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let f = hermite(a, true);
    let r = f.rank();
    let u = f.u.expect("tracked");
    let k = u.row_range(r, u.rows());
    if k.rows() == 0 {
        return k;
    }
    hermite_basis(&k)
}

/// Nonzero rows of the Hermite form: a basis of the row lattice.
pub fn hermite_basis(a: &IntMatrix) -> IntMatrix {
    let f = hermite(a, false);
    f.h.row_range(0, f.rank())
}

/// Solves `x * A = b`; `None` means no integer solution.
pub fn solve_left(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    LatticeSolver::new(a).solve(b)
}

/// Saturation test for the row lattice of `a`: true iff the lattice equals
/// its rational span intersected with `Z^n`.
pub fn is_saturated(a: &IntMatrix) -> bool {
    invariant_factors(a).iter().all(Int::is_one)
}

/// The quotient of two row lattices with explicit coordinates.
///
/// Holds a basis `Z` of the larger lattice and a Smith decomposition of the
/// smaller lattice written in that basis; `coordinates` maps any lattice
/// element to its normal-form coordinates.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    z_basis: IntMatrix,
    solver: LatticeSolver,
    factors: Vec<Int>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl FiniteQuotient {
    /// `(row lattice of z) / (row lattice of b)`.
    pub fn new(z: &IntMatrix, b: &IntMatrix) -> Result<FiniteQuotient> {
        if z.cols() != b.cols() {
            return Err(Error::DimensionMismatch(format!(
                "lattice in Z^{} vs sublattice in Z^{}",
                z.cols(),
                b.cols()
            )));
        }
        let solver = LatticeSolver::new(z);
        let z_basis = solver.basis().clone();
        let m = z_basis.rows();
        let mut coords = Vec::with_capacity(b.rows());
        for (i, row) in b.row_iter().enumerate() {
            match solver.hermite_coordinates(row) {
                Some(c) => coords.push(c),
                None => return Err(Error::NotContained(format!("generator row {i}"))),
            }
        }
        let c = IntMatrix::from_int_rows(m, coords);
        let s = snf(&c);
        let mut factors = s.invariant_factors();
        factors.resize(m, Int::zero());
        let v_inv = s.v_inv().clone();
        Ok(FiniteQuotient { z_basis, solver, factors, v: s.v, v_inv })
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: self.factors.iter().filter(|d| d.is_zero()).count(),
            torsion: self.factors.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect(),
        }
    }

    /// Orders of the cyclic factors that are not trivial, in the same order
    /// as [`FiniteQuotient::generators`] (0 for a free factor).
    pub fn generator_orders(&self) -> Vec<Int> {
        self.nontrivial().map(|i| self.factors[i].clone()).collect()
    }

    fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.factors.len()).filter(move |&i| !self.factors[i].is_one())
    }

    /// Ambient representatives of the nontrivial cyclic factors.
    pub fn generators(&self) -> IntMatrix {
        let idx: Vec<usize> = self.nontrivial().collect();
        self.v_inv.select_rows(&idx).mul(&self.z_basis)
    }

    /// Coordinates of a lattice element on the nontrivial factors, each
    /// reduced modulo its order (free coordinates are left as is).
    pub fn coordinates(&self, x: &[Int]) -> Result<Vec<Int>> {
        let c = self
            .solver
            .hermite_coordinates(x)
            .ok_or_else(|| Error::NotContained("vector outside the lattice".into()))?;
        let y = self.v.vec_mul(&c);
        Ok(self
            .nontrivial()
            .map(|i| {
                let d = &self.factors[i];
                if d.is_zero() { y[i].clone() } else { y[i].mod_floor(d) }
            })
            .collect())
    }
}

/// Invariants of `(row lattice of z) / (row lattice of b)`. Fails when some
/// row of `b` lies outside the lattice of `z`.
pub fn quotient_invariants(z: &IntMatrix, b: &IntMatrix) -> Result<AbelianInvariants> {
    Ok(FiniteQuotient::new(z, b)?.invariants())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rows(), 0);
    }

    #[test]
    fn kernel_of_column_one_minus_one() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[1], [-1]]));
        assert_eq!(k, IntMatrix::from_rows(&[[1, 1]]));
    }

    #[test]
    fn kernel_of_column_two_four() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[2], [4]]));
        assert_eq!(k.rows(), 1);
        let r = k.row(0);
        // primitive solution of 2x + 4y = 0, up to sign
        assert!(r == ints(&[2, -1]).as_slice() || r == ints(&[-2, 1]).as_slice());
    }

    #[test]
    fn quotient_examples() {
        let i2 = IntMatrix::identity(2);
        let two = IntMatrix::diagonal(&ints(&[2, 2]));
        let q = quotient_invariants(&i2, &two).unwrap();
        assert_eq!(q, AbelianInvariants { free_rank: 0, torsion: ints(&[2, 2]) });
        assert!(quotient_invariants(&i2, &i2).unwrap().is_trivial());
        let z = IntMatrix::from_rows(&[[1, 1]]);
        let b = IntMatrix::from_rows(&[[3, 3]]);
        assert_eq!(quotient_invariants(&z, &b).unwrap().torsion, ints(&[3]));
    }

    #[test]
    fn quotient_rejects_outside_rows() {
        let z = IntMatrix::from_rows(&[[2, 0]]);
        let b = IntMatrix::from_rows(&[[1, 0]]);
        assert!(matches!(quotient_invariants(&z, &b), Err(Error::NotContained(_))));
    }

    #[test]
    fn solve_examples() {
        let b = ints(&[3, -4]);
        assert_eq!(solve_left(&IntMatrix::identity(2), &b), Some(b.clone()));
        assert_eq!(solve_left(&IntMatrix::from_rows(&[[2]]), &ints(&[1])), None);
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(solve_left(&a, &ints(&[4, 3])), Some(ints(&[2, 1])));
    }

    #[test]
    fn quotient_coordinates_round_trip() {
        let z = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[[2, 0], [0, 6]]);
        let q = FiniteQuotient::new(&z, &b).unwrap();
        assert_eq!(q.generator_orders(), ints(&[2, 6]));
        let gens = q.generators();
        for (i, row) in gens.row_iter().enumerate() {
            let c = q.coordinates(row).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(cj.is_one(), i == j);
            }
        }
        // an element of b has zero coordinates
        assert!(q.coordinates(&ints(&[2, 6])).unwrap().iter().all(Int::is_zero));
    }

    #[test]
    fn invariants_display() {
        let a = AbelianInvariants::from_cyclic_orders(&ints(&[2, 3, 0]));
        assert_eq!(a.to_string(), "Z/6 x Z");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }
}
