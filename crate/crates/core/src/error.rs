use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported affine type {0}")]
    UnsupportedType(String),
    #[error("inconsistent root data: {0}")]
    InternalData(String),
    #[error("root {0} is not real")]
    NotRealRoot(String),
    #[error("root {0} is not a base root in Φ₁⁺")]
    NotBaseRoot(String),
    #[error("element has a nonzero positive part")]
    NotInBorel,
    #[error("word basis does not span the weight space: {0}")]
    Basis(String),
    #[error("structure constant polynomial has a non-integer coefficient: {0}")]
    Rescaling(String),
    #[error("Shapovalov construction failed: {0}")]
    Construction(String),
    #[error("size budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("root is not η-good for η = {0}")]
    NotEtaGood(usize),
    #[error("hypotheses not satisfied: {}", .0.join("; "))]
    Hypothesis(Vec<String>),
    #[error("Z_η v̄⁺ vanishes in L(λ)_Z")]
    NonzeroImage,
    #[error("outside the symbolic engine scope: {0}")]
    Scope(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
