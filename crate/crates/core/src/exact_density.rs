//! Exact finite-N density `ρ_N(x) = (1/N) Σ_{k<N} φ_k(x)²`, batch evaluation
//! over grids, and moments by adaptive quadrature.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{bulk_expansion, edge_expansion};
use crate::contour::{density_via_contour, ContourSpec};
use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_panels, QuadResult};
use crate::specfun::kernel_diagonal;

/// How a [`DensityCurve`] was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactKernel,
    ContourOracle,
    BulkAsymptotic,
    EdgeAsymptotic,
    LimitLaw,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ExactKernel => "exact_kernel",
            Method::ContourOracle => "contour_oracle",
            Method::BulkAsymptotic => "bulk_asymptotic",
            Method::EdgeAsymptotic => "edge_asymptotic",
            Method::LimitLaw => "limit_law",
        }
    }
}

/// Density values on a grid.
///
/// For [`Method::EdgeAsymptotic`] the grid holds the edge variable `ξ` and the
/// values are the edge-scaled density (see [`crate::asymptotics::edge_scale`]).
/// Asymptotic methods may produce small negative values; they are kept in
/// `values` and counted in `negative_count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub spec: EnsembleSpec,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub method: Method,
    pub order: u32,
    pub negative_count: usize,
}

impl DensityCurve {
    /// Values with negatives replaced by zero, for plotting.
    pub fn clamped_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.max(0.0)).collect()
    }
}

/// `m_N(p) = ∫ x^p ρ_N(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    pub spec: EnsembleSpec,
    pub p: u32,
    pub value: f64,
    pub quadrature_error_estimate: f64,
}

/// Exact density at `x` from the confluent Christoffel–Darboux kernel.
pub fn density_exact(spec: &EnsembleSpec, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("x", x, "density needs a finite abscissa"));
    }
    if spec.kind == EnsembleKind::Lue && !(x > 0.0) {
        return Err(domain("x", x, "LUE density is evaluated on x > 0"));
    }
    Ok(kernel_diagonal(spec, x)? / spec.nf())
}

/// Exact density from the two-polynomial Christoffel–Darboux formula
/// `ω_N (π_N' π_{N-1} - π_{N-1}' π_N) / (N ‖π_{N-1}‖²)` with monic `π_k`.
///
/// The monic polynomials grow like `(4N)^{-k}` scaled factorials, so this is
/// only usable for small `N`; it exists as a check on [`density_exact`].
pub fn density_christoffel_darboux(spec: &EnsembleSpec, x: f64) -> Result<f64> {
    let n = spec.n;
    let nf = spec.nf();
    let mut p_prev = 0.0;
    let mut p = 1.0;
    let mut d_prev = 0.0;
    let mut d = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let (a, b) = match spec.kind {
            EnsembleKind::Gue => (0.0, kf / (4.0 * nf)),
            EnsembleKind::Lue => (
                (2.0 * kf + 1.0 + spec.alpha) / (4.0 * nf),
                kf * (kf + spec.alpha) / (16.0 * nf * nf),
            ),
        };
        let p_next = (x - a).mul_add(p, -b * p_prev);
        let d_next = p + (x - a).mul_add(d, -b * d_prev);
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    // now p = π_N, p_prev = π_{N-1}
    let wronskian = d.mul_add(p_prev, -d_prev * p);
    let log_norm = -spec.inverse_norm_squared_log();
    Ok(spec.weight(x)? * wronskian / (nf * log_norm.exp()))
}

/// Integration window `[a, b]` covering the numerical support of `ρ_N`.
pub(crate) fn support_window(spec: &EnsembleSpec) -> (f64, f64) {
    let edge_scale = spec.nf().powf(-2.0 / 3.0);
    match spec.kind {
        EnsembleKind::Gue => {
            let l = 1.0 + 6.0 * edge_scale;
            (-l, l)
        }
        EnsembleKind::Lue => (0.0, 1.0 + 12.0 * edge_scale),
    }
}

const MOMENT_P_MAX: u32 = 20;
const MOMENT_TOL: f64 = 1e-13;

/// `∫ x^p ρ_N(x) dx` by panelled adaptive Gauss–Legendre quadrature.
///
/// The LUE integral is taken in `t = sqrt(x)` so the `x^α` behaviour at the
/// hard edge becomes `t^{2α+1}`.
pub fn moment(spec: &EnsembleSpec, p: u32) -> Result<MomentResult> {
    if p > MOMENT_P_MAX {
        return Err(Error::InvalidParameter(format!(
            "moment order p = {p} exceeds the quadrature cap {MOMENT_P_MAX}"
        )));
    }
    let (a, b) = support_window(spec);
    let panels = 2 * spec.n + 8;
    let scale = b.powi(p as i32).max(1.0);
    let tol = MOMENT_TOL * scale;
    let q: QuadResult = match spec.kind {
        EnsembleKind::Gue => integrate_panels(
            |x| x.powi(p as i32) * density_exact(spec, x).unwrap_or(0.0),
            a,
            b,
            panels,
            tol,
        )?,
        EnsembleKind::Lue => integrate_panels(
            |t| {
                if t <= 0.0 {
                    return 0.0;
                }
                let x = t * t;
                2.0 * t * x.powi(p as i32) * density_exact(spec, x).unwrap_or(0.0)
            },
            a.sqrt(),
            b.sqrt(),
            panels,
            tol,
        )?,
    };
    Ok(MomentResult {
        spec: *spec,
        p,
        value: q.value,
        quadrature_error_estimate: q.error_estimate,
    })
}

/// Total mass `∫ ρ_N`, which should be 1.
pub fn normalization(spec: &EnsembleSpec) -> Result<MomentResult> {
    moment(spec, 0)
}

/// Least-squares fit of `y ≈ Σ_{j<terms} c_j N^{-j}`; returns `c_0, c_1, …`.
pub fn fit_inverse_powers(ns: &[f64], ys: &[f64], terms: usize) -> Result<Vec<f64>> {
    if ns.len() != ys.len() || ns.len() < terms || terms == 0 {
        return Err(Error::InvalidParameter(
            "fit needs at least as many samples as terms".into(),
        ));
    }
    // normal equations with columns N^{-j}
    let mut m = vec![vec![0.0; terms + 1]; terms];
    for (&n, &y) in ns.iter().zip(ys) {
        let basis: Vec<f64> = (0..terms).map(|j| n.powi(-(j as i32))).collect();
        for r in 0..terms {
            for c in 0..terms {
                m[r][c] += basis[r] * basis[c];
            }
            m[r][terms] += basis[r] * y;
        }
    }
    for col in 0..terms {
        let pivot = (col..terms)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let d = m[col][col];
        if d == 0.0 {
            return Err(Error::InvalidParameter("singular fit".into()));
        }
        for r in 0..terms {
            if r != col {
                let f = m[r][col] / d;
                for c in col..=terms {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Ok((0..terms).map(|r| m[r][terms] / m[r][r]).collect())
}

fn check_order(method: Method, order: u32) -> Result<()> {
    let max = match method {
        Method::BulkAsymptotic => 1,
        Method::EdgeAsymptotic => 2,
        _ => 0,
    };
    if order > max {
        return Err(Error::InvalidParameter(format!(
            "order {order} is not available for {} (max {max})",
            method.as_str()
        )));
    }
    Ok(())
}

/// Evaluates `method` at every grid point.
pub fn density_curve(
    spec: &EnsembleSpec,
    grid: &[f64],
    method: Method,
    order: u32,
) -> Result<DensityCurve> {
    check_order(method, order)?;
    if grid.is_empty() {
        return Err(Error::InvalidParameter("grid is empty".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidParameter(format!(
                "grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    let contour = ContourSpec::default();
    let mut values = Vec::with_capacity(grid.len());
    for &x in grid {
        if !x.is_finite() {
            return Err(Error::OutsideAdmissible {
                point: x,
                bound: "grid points must be finite".into(),
            });
        }
        let v = match method {
            Method::ExactKernel => density_exact(spec, x),
            Method::ContourOracle => density_via_contour(spec, x, &contour),
            Method::BulkAsymptotic => bulk_expansion(spec, x, order).map(|t| t.truncated_sum),
            Method::EdgeAsymptotic => edge_expansion(spec, x, order).map(|t| t.truncated_sum),
            Method::LimitLaw => spec.limiting_density(x),
        }
        .map_err(|e| match e {
            Error::OutsideAdmissible { .. } => e,
            other => Error::OutsideAdmissible {
                point: x,
                bound: other.to_string(),
            },
        })?;
        values.push(v);
    }
    let negative_count = values.iter().filter(|v| **v < 0.0).count();
    Ok(DensityCurve {
        spec: *spec,
        grid: grid.to_vec(),
        values,
        method,
        order,
        negative_count,
    })
}
