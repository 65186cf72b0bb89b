use num_complex::Complex64;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular time: {0}")]
    SingularTime(String),

    #[error("causality violated: {0}")]
    Causality(String),

    #[error("quadrature did not converge: best estimate {estimate}, error bound {error_bound:.3e}")]
    Convergence { estimate: Complex64, error_bound: f64 },

    #[error("no physical stationary time in (0, t): {0}")]
    NoStationaryTime(String),

    #[error("degenerate stationary point: {0}")]
    DegenerateStationaryPoint(String),

    #[error("insufficient fringes: {0}")]
    InsufficientFringes(String),

    #[error("insufficient peaks: {0}")]
    InsufficientPeaks(String),

    #[error("normalization error: {0}")]
    Normalization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
