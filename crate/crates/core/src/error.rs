use thiserror::Error;

use crate::qring::RingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingId, RingId),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero element where a nonzero one is required")]
    ZeroInput,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("degree budget exceeded: attempted degree {attempted}, budget {budget}")]
    DegreeBudgetExceeded { attempted: u128, budget: usize },

    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,

    #[error("curve is not compatible with CM by {0}")]
    IncompatibleCurve(RingId),

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("composition with a constant that is a pole of the outer map")]
    ConstantPole,

    #[error("period k must be positive")]
    InvalidPeriod,

    #[error("endomorphism is not in standard form: {0}")]
    InvalidEndo(&'static str),
}
