use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FtvError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not an F-matrix: {0}")]
    NotFMatrix(String),

    #[error("framing must be strictly positive (entry {index} is {value})")]
    NonPositiveFraming { index: usize, value: String },

    #[error("weak framing must be non-negative and not identically zero")]
    InvalidWeakFraming,

    #[error("matrix is singular")]
    Singular,

    #[error("linear system has no integer solution")]
    NoIntegerSolution,

    #[error("could not find a non-negative Gale dual basis")]
    PositivizationFailed,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    Empty,

    #[error("polytope contains no lattice points")]
    EmptyLattice,

    #[error("origin is not an interior point")]
    OriginNotInterior,

    #[error("no multiplier up to {cap} puts the origin in the interior of the integer part")]
    KCapExceeded { cap: u64 },

    #[error("weight vector is not positive: {0}")]
    NotPositiveWeights(String),

    #[error("expected a rank one class group, got rank {0}")]
    NotRankOne(usize),

    #[error("torsion data failed validation property ({property}): {detail}")]
    ValidationFailed { property: u8, detail: String },

    #[error("framing breaks the convention on projective space: {0}")]
    ConventionViolated(String),

    #[error("degree {d} is below n + 1 = {min}")]
    DegreeTooSmall { d: i64, min: i64 },

    #[error("degree {d} is outside 1..={n} for dimension {n}")]
    DegreeOutOfRange { n: usize, d: usize },

    #[error("negative exponent in monomial {0}")]
    NegativeExponent(String),

    #[error("subfamily assumption ({0}) does not hold")]
    AssumptionFailed(u8),

    #[error("Minkowski decomposition check failed: {0}")]
    NotMinkowskiDecomposition(String),

    #[error("partition is invalid: {0}")]
    InvalidPartition(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("input error: {0}")]
    Input(String),
}

impl FtvError {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        use FtvError::*;
        match self {
            KCapExceeded { .. } | SearchTooLarge(_) => 3,
            ValidationFailed { .. } | InvariantViolated(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, FtvError>;
