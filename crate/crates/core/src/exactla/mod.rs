//! Exact integer linear algebra.
//!
//! Lattice elements are row vectors and matrices act by right
//! multiplication, so a sublattice is always the row lattice of a matrix.

mod int;
mod lattice;
mod matrix;
mod normal_form;
mod sparse;

pub use int::Int;
pub use lattice::{
    hermite_basis, is_saturated, kernel_basis, quotient_invariants, solve_left, AbelianInvariants,
    FiniteQuotient, LatticeSolver,
};
pub use matrix::IntMatrix;
pub use normal_form::{hermite, hnf, invariant_factors, snf, HermiteForm, SmithDecomposition};
pub use sparse::{sparse_invariant_factors, SparseMatrix};
