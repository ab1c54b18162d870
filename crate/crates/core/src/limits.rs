use serde::{Deserialize, Serialize};

/// Size caps for the brute-force parts of the pipeline.
///
/// Every enumeration checks the relevant cap first and fails with
/// [`crate::Error::CapExceeded`] instead of running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest permutation degree accepted by group constructors.
    pub max_degree: usize,
    /// Largest group order whose elements may be listed.
    pub max_order: u64,
    /// Largest group order for brute-force subgroup conjugacy tests.
    pub max_conjugacy_order: u64,
    /// Largest group order for subgroup class enumeration.
    pub max_classes_order: u64,
    /// Largest group order for which emitted flasque modules are re-checked
    /// with the full Tate cohomology test.
    pub max_flasque_check_order: u64,
    /// Largest group order accepted by the induced-module constructions.
    pub max_induced_order: u64,
    /// Coset table size bound for Todd-Coxeter enumeration.
    pub max_cosets: usize,
    /// Largest rank of a permutation module built by a coflasque cover.
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 16,
            max_order: 40_320,
            max_conjugacy_order: 5040,
            max_classes_order: 2520,
            max_flasque_check_order: 360,
            max_induced_order: 60,
            max_cosets: 100_000,
            max_rank: 20_000,
        }
    }
}
