//! Orthonormal wavefunctions `φ_k(x) = p_k(x) sqrt(ω_N(x))` for the scaled
//! Hermite and Laguerre weights.
//!
//! The three-term recurrence runs in the unit-scale variable (`u = sqrt(2N) x`
//! for GUE, `u = 4N x` for LUE) on mantissas, with a separate running log
//! scale so that the folded-in weight neither underflows at the start nor
//! overflows later.

use std::f64::consts::PI;

use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{domain, Result};
use crate::specfun::log_gamma;

/// `φ_0(x), …, φ_{N-1}(x)` at a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSet {
    pub spec: EnsembleSpec,
    pub x: f64,
    pub values: Vec<f64>,
}

const RESCALE_AT: f64 = 1e100;

struct Recurrence {
    kind: EnsembleKind,
    alpha: f64,
    u: f64,
    prev: f64,
    cur: f64,
    log_scale: f64,
    k: usize,
}

impl Recurrence {
    fn start(spec: &EnsembleSpec, x: f64) -> Result<(Self, f64)> {
        let n = spec.nf();
        match spec.kind {
            EnsembleKind::Gue => {
                let u = (2.0 * n).sqrt() * x;
                let log0 = -0.5 * u * u - 0.25 * PI.ln();
                let jac = 0.25 * (2.0 * n).ln();
                Ok((Self::new(spec, u, log0), jac))
            }
            EnsembleKind::Lue => {
                if !(x > 0.0) {
                    return Err(domain("x", x, "LUE wavefunctions need x > 0"));
                }
                let u = 4.0 * n * x;
                let log0 = 0.5 * spec.alpha * u.ln() - 0.5 * u - 0.5 * log_gamma(spec.alpha + 1.0)?;
                let jac = 0.5 * (4.0 * n).ln();
                Ok((Self::new(spec, u, log0), jac))
            }
        }
    }

    fn new(spec: &EnsembleSpec, u: f64, log0: f64) -> Self {
        Self {
            kind: spec.kind,
            alpha: spec.alpha,
            u,
            prev: 0.0,
            cur: 1.0,
            log_scale: log0,
            k: 0,
        }
    }

    /// Advances from degree `k` to `k + 1`; returns the factor by which the
    /// mantissas were divided (1 when no rescale happened).
    fn step(&mut self) -> f64 {
        let k = self.k as f64;
        let next = match self.kind {
            EnsembleKind::Gue => {
                (2.0 / (k + 1.0)).sqrt() * self.u * self.cur - (k / (k + 1.0)).sqrt() * self.prev
            }
            EnsembleKind::Lue => {
                let a = self.alpha;
                (2.0 * k + 1.0 + a - self.u) / ((k + 1.0) * (k + a + 1.0)).sqrt() * self.cur
                    - ((k * (k + a)) / ((k + 1.0) * (k + a + 1.0))).sqrt() * self.prev
            }
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        if self.cur.abs() > RESCALE_AT {
            self.prev /= RESCALE_AT;
            self.cur /= RESCALE_AT;
            self.log_scale += RESCALE_AT.ln();
            RESCALE_AT
        } else {
            1.0
        }
    }
}

/// The first `N` orthonormal wavefunctions at `x`.
pub fn wavefunctions(spec: &EnsembleSpec, x: f64) -> Result<WavefunctionSet> {
    let (mut rec, jac) = Recurrence::start(spec, x)?;
    let mut values = Vec::with_capacity(spec.n);
    values.push((rec.log_scale + jac).exp() * rec.cur);
    for _ in 1..spec.n {
        rec.step();
        values.push((rec.log_scale + jac).exp() * rec.cur);
    }
    Ok(WavefunctionSet {
        spec: *spec,
        x,
        values,
    })
}

/// `Σ_{k<N} φ_k(x)²`, accumulated without forming the individual values.
pub fn kernel_diagonal(spec: &EnsembleSpec, x: f64) -> Result<f64> {
    let (mut rec, jac) = Recurrence::start(spec, x)?;
    let mut acc = rec.cur * rec.cur;
    for _ in 1..spec.n {
        let factor = rec.step();
        if factor != 1.0 {
            acc /= factor * factor;
        }
        acc += rec.cur * rec.cur;
    }
    Ok(acc * (2.0 * (rec.log_scale + jac)).exp())
}
