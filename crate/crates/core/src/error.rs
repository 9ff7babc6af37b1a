use thiserror::Error;

/// Errors raised by spectrum construction, ensemble bookkeeping, and the
/// majorisation / critical-coupling machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spin magnitude must satisfy 2s >= 1, got 2s = {0}")]
    InvalidSpin(u32),

    #[error("field strength must be positive, got B = {0}")]
    NonPositiveField(f64),

    #[error("exchange coupling must be nonnegative, got J = {0}")]
    NegativeCoupling(f64),

    #[error("temperature must be positive, got T = {0}")]
    NonPositiveTemperature(f64),

    #[error("hot temperature must exceed cold temperature, got T1 = {t_hot}, T2 = {t_cold}")]
    TemperatureOrder { t_hot: f64, t_cold: f64 },

    /// The coupled spectrum has a level crossing at or below this field, so
    /// the adiabatic labels no longer track the energy order.
    #[error("unordered spectrum: B = {field} does not exceed the level-crossing threshold 2(2s+1)J = {threshold}")]
    UnorderedSpectrum { field: f64, threshold: f64 },

    #[error("mismatched spectra: {0}")]
    MismatchedSpectra(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("distribution is not normalized: sum = {sum}")]
    Normalization { sum: f64 },

    #[error("absolute continuity violated at index {index}: x = {x} > 0 where y = 0")]
    AbsoluteContinuity { index: usize, x: f64 },

    #[error("dimension {got} does not match the expected {expected}")]
    Dimension { got: usize, expected: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not in engine mode: the work functional must be positive, got {0}")]
    Mode(f64),

    #[error("singular efficiency denominator: 2(2s+1)J = {gap_term} must stay below B1 = {field}")]
    Singularity { gap_term: f64, field: f64 },

    #[error("no bracket: {0}")]
    NoBracket(String),

    #[error("eigensolver failed to meet its tolerance after {0} sweeps")]
    Convergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
