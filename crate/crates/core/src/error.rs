use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid observation at step {step}: {value}")]
    InvalidObservation { step: u64, value: f64 },

    #[error("least-squares estimate undefined: gamma0 is zero")]
    UndefinedEstimate,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("model rejected: the running confidence interval is empty")]
    RejectedModel,

    #[error("degenerate statistic: {0}")]
    DegenerateStatistic(String),
}
