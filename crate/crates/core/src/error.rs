use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive quadrature or the eigensolver ran out of its iteration
    /// budget before reaching the requested tolerance.
    #[error("failed to converge: {0}")]
    NonConvergence(String),

    /// A matrix failed the density-matrix checks (negative eigenvalue
    /// beyond tolerance, or vanishing trace).
    #[error("not a physical state: {0}")]
    NotAState(String),

    /// The correlation pair has a vanishing norm, so no normalized state
    /// can be formed.
    #[error("degenerate state: correlation norm {norm:e} is not positive")]
    DegenerateState { norm: f64 },

    /// The explicit Fock simulation was asked for more momentum modes
    /// than it can represent.
    #[error("dimension too large: {modes} momentum modes requested, at most {max} supported")]
    DimensionTooLarge { modes: usize, max: usize },

    /// A scalar argument violated its domain.
    #[error("argument out of range: {what} = {value}")]
    OutOfRange { what: &'static str, value: f64 },
}
