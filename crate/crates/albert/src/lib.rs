//! Exceptional Jordan algebra J(3), the Cayley projective plane and its
//! punctured cotangent bundle realised as the null cone of J(3)^C.

pub mod atlas;
pub mod bargmann;
pub mod embedding;
pub mod harmonic;
pub mod jordan;
pub mod kahler;
pub mod linalg;
pub mod octonion;
pub mod plane;
pub mod poly;
pub mod quad;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod symmetry;
pub mod volume;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("outside the chart domain: {0}")]
    Domain(String),
    #[error("pivot coordinate {0} vanishes")]
    ZeroPivot(&'static str),
    #[error("not on the null cone: residual {0:e}")]
    NotNull(f64),
    #[error("zero section is excluded")]
    ZeroSection,
    #[error("degree {k} exceeds the cap {cap}; raise the cap explicitly")]
    CapExceeded { k: usize, cap: usize },
    #[error("Gamma argument 4k+44+2ε = {arg} is not positive at degree k = {k}")]
    GammaPole { k: u64, arg: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
