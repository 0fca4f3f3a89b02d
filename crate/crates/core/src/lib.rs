//! Exact finite-N eigenvalue densities of the Gaussian and Laguerre unitary
//! ensembles, their limiting laws, and the first asymptotic corrections in
//! the bulk and at the soft edge.
//!
//! The exact density is computed from the confluent Christoffel–Darboux
//! kernel and cross-checked against an independent double contour integral
//! representation ([`contour`]). Closed-form expansions live in
//! [`asymptotics`]; [`report`] assembles figure datasets and error-scaling
//! summaries used by the command-line tool.

pub mod asymptotics;
pub mod cli;
pub mod contour;
pub mod ensembles;
pub mod error;
pub mod exact_density;
pub mod output;
pub mod quadrature;
pub mod report;
pub mod specfun;

pub use ensembles::{EnsembleKind, EnsembleSpec, SaddleData, HARD_EDGE_EPSILON};
pub use error::{Error, Result};
pub use exact_density::{density_curve, density_exact, moment, DensityCurve, Method, MomentResult};
