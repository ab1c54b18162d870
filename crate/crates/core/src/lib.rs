//! Computes the birational invariant `H^1(G, M)` of norm-one tori, where `M`
//! is the flasque module in a flasque resolution of the Chevalley module
//! `J_{G/H}`, together with the supporting machinery: permutation groups,
//! exact integer normal forms, G-lattices, cohomology, and coset
//! enumeration.
//!
//! Conventions used throughout:
//! * permutations compose left to right, `(p * q)(i) = q(p(i))`;
//! * groups act on lattices from the right and lattice elements are row
//!   vectors, so `v . g = v * rho(g)`;
//! * 1-cocycles satisfy `c(uv) = c(u) rho(v) + c(v)`.

pub mod cohomology;
pub mod error;
pub mod exactla;
pub mod fpgroups;
pub mod glattice;
pub mod limits;
pub mod permcore;
pub mod resolutions;

pub use cohomology::{h1, presentation_catalog, sha2_omega, tate_cyclic, tate_minus1, Presentation};
pub use error::{Error, Result};
pub use exactla::{AbelianInvariants, Int, IntMatrix, SmithDecomposition, SparseMatrix};
pub use glattice::{GLattice, LatticeMap};
pub use limits::Limits;
pub use permcore::{GroupKind, PermGroup, Permutation, SubgroupHandle};
pub use resolutions::{flasque_resolution, norm_one_invariant, verdict, Resolution, Verdict};

/// Alias used where a value is read as a cohomology group.
pub type CohomologyGroup = AbelianInvariants;
