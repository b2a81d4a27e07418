use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// No case of the modular formula covers this `k` (only `k = 2`).
    #[error("k = {k} is not covered by any case of the labeling formula (even k needs p >= 2)")]
    Unsupported { k: u32 },

    #[error("k must be at least 1")]
    ZeroK,

    /// An intermediate value does not fit the chosen scalar type.
    #[error("integer overflow while computing {what} (k = {k}); use a wider scalar type")]
    Overflow { what: &'static str, k: u32 },

    #[error("enumeration needs {needed} evaluations but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("invalid patch {rows}x{cols}: {reason}")]
    InvalidPatch {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },

    #[error("invalid window {width}x{height}: dimensions must be positive")]
    InvalidWindow { width: usize, height: usize },

    #[error("invalid k range [{k_min}, {k_max}]")]
    InvalidRange { k_min: u32, k_max: u32 },

    #[error("invalid scheme coefficients: {0}")]
    InvalidScheme(&'static str),

    #[error("gcd and enumeration disagree on the no-hole property")]
    ModeDisagreement,
}
