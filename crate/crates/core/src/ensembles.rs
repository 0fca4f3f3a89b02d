//! The Gaussian and Laguerre unitary ensembles in the scaling
//! `ω_N(x) = exp(-2N x²)` (GUE) and `ω_N(x) = x^α exp(-4N x)` (LUE), whose
//! limiting spectra live on `[-1, 1]` and `(0, 1]` respectively.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::log_gamma;

/// Lower clamp for LUE grids near the hard edge at `x = 0`.
pub const HARD_EDGE_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Gue,
    Lue,
}

/// Ensemble, Laguerre exponent and matrix size.
///
/// `alpha` only matters for the LUE; GUE routines never read it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub alpha: f64,
    pub n: usize,
}

/// Saddle points of the action and the data attached to them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleData {
    pub z_plus: Complex64,
    pub z_minus: Complex64,
    /// `S''(z_+, x) / 2`.
    pub s_second_deriv_plus: Complex64,
    pub re_s_plus: f64,
    pub im_s_plus: f64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, alpha: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size n must be >= 1".into()));
        }
        if kind == EnsembleKind::Lue && !(alpha > -1.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "LUE exponent alpha = {alpha} must be finite and > -1"
            )));
        }
        Ok(Self { kind, alpha, n })
    }

    pub fn gue(n: usize) -> Result<Self> {
        Self::new(EnsembleKind::Gue, 0.0, n)
    }

    pub fn lue(alpha: f64, n: usize) -> Result<Self> {
        Self::new(EnsembleKind::Lue, alpha, n)
    }

    pub fn is_gue(&self) -> bool {
        self.kind == EnsembleKind::Gue
    }

    pub(crate) fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Left edge of the limiting support.
    pub fn left_edge(&self) -> f64 {
        match self.kind {
            EnsembleKind::Gue => -1.0,
            EnsembleKind::Lue => 0.0,
        }
    }

    /// `log ω_N(x)`.
    pub fn log_weight(&self, x: f64) -> Result<f64> {
        let n = self.nf();
        match self.kind {
            EnsembleKind::Gue => Ok(-2.0 * n * x * x),
            EnsembleKind::Lue => {
                if x < 0.0 || x.is_nan() {
                    return Err(domain("x", x, "LUE weight is supported on x >= 0"));
                }
                if x == 0.0 {
                    return match self.alpha {
                        a if a < 0.0 => Err(Error::DivergentWeight { alpha: a }),
                        a if a == 0.0 => Ok(0.0),
                        _ => Ok(f64::NEG_INFINITY),
                    };
                }
                Ok(self.alpha * x.ln() - 4.0 * n * x)
            }
        }
    }

    /// The weight `ω_N(x)`.
    pub fn weight(&self, x: f64) -> Result<f64> {
        self.log_weight(x).map(f64::exp)
    }

    /// The limiting density: semicircle (GUE) or Marčenko–Pastur (LUE).
    pub fn limiting_density(&self, x: f64) -> Result<f64> {
        match self.kind {
            EnsembleKind::Gue => {
                if x.abs() >= 1.0 {
                    Ok(0.0)
                } else {
                    Ok(2.0 / PI * (1.0 - x * x).sqrt())
                }
            }
            EnsembleKind::Lue => {
                if x == 0.0 {
                    Err(Error::PoleAtOrigin)
                } else if x < 0.0 || x >= 1.0 {
                    Ok(0.0)
                } else {
                    Ok(2.0 / PI * (1.0 / x - 1.0).sqrt())
                }
            }
        }
    }

    /// Distribution function `P(x)` of the limiting density.
    pub fn distribution_function(&self, x: f64) -> Result<f64> {
        match self.kind {
            EnsembleKind::Gue => {
                if !(-1.0..=1.0).contains(&x) {
                    return Err(domain("x", x, "GUE distribution function needs |x| <= 1"));
                }
                let nu = (1.0 - x * x).sqrt();
                // x ρ(x) / 2 = x ν / π
                Ok(1.0 + x * nu / PI - arccos(x) / PI)
            }
            EnsembleKind::Lue => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(domain("x", x, "LUE distribution function needs 0 <= x <= 1"));
                }
                // x ρ(x) = (2/π) sqrt(x (1 - x)) stays finite at the origin.
                let x_rho = 2.0 / PI * (x * (1.0 - x)).sqrt();
                Ok(1.0 + x_rho - 2.0 / PI * arccos(x.sqrt()))
            }
        }
    }

    /// `ν(x) = (π/2) ρ(x)` on the support.
    pub fn nu(&self, x: f64) -> Result<f64> {
        match self.kind {
            EnsembleKind::Gue => {
                if !(-1.0..=1.0).contains(&x) {
                    return Err(domain("x", x, "GUE nu needs |x| <= 1"));
                }
                Ok((1.0 - x * x).sqrt())
            }
            EnsembleKind::Lue => {
                if !(x > 0.0 && x <= 1.0) {
                    return Err(domain("x", x, "LUE nu needs 0 < x <= 1"));
                }
                Ok((1.0 / x - 1.0).sqrt())
            }
        }
    }

    /// Saddle points `z_±` of `S(z, x)` and the action values there.
    pub fn saddle_data(&self, x: f64) -> Result<SaddleData> {
        let inside = match self.kind {
            EnsembleKind::Gue => x.abs() < 1.0,
            EnsembleKind::Lue => x > 0.0 && x < 1.0,
        };
        if !inside {
            let edge = match self.kind {
                EnsembleKind::Gue => x.abs() == 1.0,
                EnsembleKind::Lue => x == 1.0,
            };
            if edge {
                return Err(Error::CoalescedSaddle { x });
            }
            return Err(domain("x", x, "saddle data needs x inside the open support"));
        }
        let nu = self.nu(x)?;
        let p = self.distribution_function(x)?;
        let (z_plus, s2, re_s) = match self.kind {
            EnsembleKind::Gue => (
                Complex64::new(-x, nu),
                Complex64::from_polar(nu, PI - x.asin()),
                0.5 + x * x,
            ),
            EnsembleKind::Lue => (
                Complex64::new(-1.0, nu),
                Complex64::from_polar(2.0 * x * x * nu, FRAC_PI_2),
                2.0 * x - LN_2,
            ),
        };
        Ok(SaddleData {
            z_plus,
            z_minus: z_plus.conj(),
            s_second_deriv_plus: s2,
            re_s_plus: re_s,
            im_s_plus: -PI * p,
        })
    }

    /// `log ‖π_{N-1}‖^{-2}` for the monic orthogonal polynomials of `ω_N`.
    pub fn inverse_norm_squared_log(&self) -> f64 {
        let n = self.nf();
        match self.kind {
            EnsembleKind::Gue => {
                (2.0 * n - 1.5) * LN_2 - 0.5 * PI.ln() + (n + 0.5) * n.ln() - lgamma(n + 1.0)
            }
            EnsembleKind::Lue => {
                (2.0 * n + self.alpha - 1.0) * (4.0 * n).ln() - lgamma(n) - lgamma(n + self.alpha)
            }
        }
    }

    /// `log c_j(N)` with `c_j(N) = (N + j - 1)! / (2N)^{N + j - 1}`.
    pub fn log_contour_constant(&self, j: usize) -> f64 {
        let n = self.nf();
        let m = n + j as f64 - 1.0;
        lgamma(m + 1.0) - m * (2.0 * n).ln()
    }

    /// `log(2 c_0 c_1 / ‖π_{N-1}‖²)`, the prefactor of the double contour integral.
    pub fn log_contour_prefactor(&self) -> f64 {
        LN_2 + self.log_contour_constant(0)
            + self.log_contour_constant(1)
            + self.inverse_norm_squared_log()
    }
}

/// Principal arccosine as `π/2 - arcsin(x)`.
pub(crate) fn arccos(x: f64) -> f64 {
    FRAC_PI_2 - x.asin()
}

fn lgamma(x: f64) -> f64 {
    // arguments here are >= alpha + 1 > 0
    log_gamma(x).expect("positive gamma argument")
}
