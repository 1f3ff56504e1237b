use thiserror::Error;

use crate::homotopy_algebra::ICellRecord;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("a degree window is required: {0}")]
    WindowRequired(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("square does not commute")]
    SquareNotCommutative,
    #[error("budget of {budget} steps exceeded")]
    BudgetExceeded { budget: usize, partial: Box<ICellRecord> },
    #[error("no generator of the category is filtered by the given set")]
    GeneratorMissing,
    #[error("filtration factor {0} is not in the left class")]
    FactorNotInLeftClass(usize),
    #[error("pair is not hereditary: {0}")]
    PairNotHereditary(String),
    #[error("universe too large: {size} objects exceeds cap {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("factorization budget exceeded")]
    FactorizationBudgetExceeded,
    #[error("invalid cover: {0}")]
    CoverInvalid(String),
    #[error("module is not quasi-coherent at edge {0} <= {1}")]
    NotQuasiCoherent(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
