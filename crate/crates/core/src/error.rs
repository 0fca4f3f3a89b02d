use thiserror::Error;

/// Errors raised by the density, special-function and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} is outside the domain ({bound})")]
    Domain {
        what: &'static str,
        value: f64,
        bound: String,
    },

    #[error("LUE weight diverges at x = 0 when alpha = {alpha} < 0")]
    DivergentWeight { alpha: f64 },

    #[error("LUE limiting density has a pole at x = 0")]
    PoleAtOrigin,

    #[error("saddle points coalesce at x = {x}; use the soft-edge expansion")]
    CoalescedSaddle { x: f64 },

    #[error("action has a pole at z = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("bulk expansion is not valid at x = {x} (limiting density {rho:.3e} < 1e-3); use edge_expansion")]
    NearEdge { x: f64, rho: f64 },

    #[error("grid point {point} violates the admissible region: {bound}")]
    OutsideAdmissible { point: f64, bound: String },

    #[error("quadrature did not converge: estimated error {estimate:.3e} exceeds {tolerance:.3e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("contour oracle imaginary residue {residue:.3e} exceeds {tolerance:.1e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, bound: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        bound: bound.into(),
    }
}
