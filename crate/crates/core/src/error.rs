use thiserror::Error;

/// Errors surfaced by exact arithmetic, series evaluation and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    CyclotomicDivisionByZero,
    #[error("graded scalars have different (2\u{3c0}i)-powers: {0} vs {1}")]
    MixedTwoPiGrade(i64, i64),
    #[error("non-rational residue after canonical reduction")]
    NonRationalResidue,
    #[error("gamma pole at a non-positive integer argument")]
    GammaPole,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("matrix is singular over Q(zeta)")]
    SingularMatrix,
    #[error("chosen generating set is not independent")]
    DependentGenerators,
    #[error("resonant twist parameter: |zeta^k e^(2 pi i (f+xi)/d) - 1| below guard")]
    ResonantTwist,
    #[error("evaluation point outside the convergence radius ({point} vs radius {radius})")]
    OutsideRadius { point: f64, radius: f64 },
    #[error("series tail bound {bound:e} above tolerance {tol:e} at truncation {terms}")]
    TailBound { bound: f64, tol: f64, terms: usize },
    #[error("step size underflow during path transport near {at}")]
    StepUnderflow { at: String },
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
