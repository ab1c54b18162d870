use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("degree {degree} outside supported range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("parameter {value} out of range for {what}")]
    ParameterOutOfRange { what: String, value: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("permutation {0} is not an element of the group")]
    NotInGroup(String),

    #[error("lattices are defined over different groups")]
    GroupMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sublattice not contained in lattice: {0}")]
    NotContained(String),

    #[error("map is not equivariant for generator {generator}")]
    NotEquivariant { generator: usize },

    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimit { limit: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::CosetLimit { .. } | Error::DegreeOutOfRange { .. })
    }
}
