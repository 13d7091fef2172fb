use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("cannot contract {count} covectors from a multivector of grade {grade}")]
    GradeUnderflow { grade: usize, count: usize },

    #[error("covector has length {len}, expected {nvars}")]
    CovectorLength { len: usize, nvars: usize },

    #[error("support is empty")]
    EmptySupport,

    #[error("negative exponent in {0:?}")]
    NegativeExponent(Vec<i64>),

    #[error("Newton polyhedron has no facet of positive level (support contains the origin)")]
    NoPositiveLevel,

    #[error("point {0:?} lies on no compact face of its scaled Newton polyhedron")]
    NoCompactFace(Vec<i64>),

    #[error("face {0} is not compact")]
    NonCompactFace(usize),

    #[error("face {0} lies in a coordinate hyperplane")]
    FaceOnHyperplane(usize),

    #[error("no face with id {0}")]
    UnknownFace(usize),

    #[error("Newton polyhedron is not convenient")]
    NotConvenient,

    #[error("form is zero")]
    ZeroForm,

    #[error("scaling factor must be nonnegative")]
    NegativeScale,

    #[error("{0}")]
    Malformed(String),

    #[error("e*a = {0} is not an integer")]
    NonIntegralSuspension(String),

    #[error("degree {0} is an integer")]
    IntegralDegree(String),

    #[error("beta function needs positive arguments, got {0} and {1}")]
    BetaDomain(String, String),

    #[error("pole order parameter r = {r} outside 1..={n}")]
    PoleOrderRange { r: usize, n: usize },

    #[error("λ grid reaches into the divergence region: {0}")]
    DivergentGrid(String),

    #[error("Monte Carlo sample starvation: {0}")]
    SampleStarvation(String),
}
