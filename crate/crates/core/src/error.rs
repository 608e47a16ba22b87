use thiserror::Error;

/// Errors raised by the exact-arithmetic, apolarity and decomposition layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("discriminant of a constant polynomial is undefined")]
    ConstantPolynomial,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("binary form is identically zero")]
    ZeroForm,
    #[error("operator of degree {operator} cannot act on a form of degree {form}")]
    DegreeTooLarge { operator: usize, form: usize },
    #[error("kernel degree {degree} outside the admissible range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("apolar kernel at degree {0} is trivial")]
    TrivialKernel(usize),
    #[error("point set contains a repeated projective point")]
    DuplicatePoint,
    #[error("point set is not stable under complex conjugation")]
    NotConjugationStable,
    #[error("witness form does not annihilate the target form")]
    NotApolar,
    #[error("witness of degree {witness} exceeds form degree {form}")]
    WitnessTooLarge { witness: usize, form: usize },
    #[error("label ({s},{a}) is not achievable")]
    LabelNotAchievable { s: usize, a: usize },
    #[error(
        "certification failed: relative residual {residual:.3e} above tolerance {tolerance:.3e}"
    )]
    CertificationFailed { residual: f64, tolerance: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
