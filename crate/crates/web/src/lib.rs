//! WebAssembly bindings for the browser demo: bulk and soft-edge comparison
//! curves, and point evaluation of the Airy pair.

use unitary_density::asymptotics::{
    bulk_expansion, edge_expansion, edge_limit_density, scaled_exact_edge_density,
};
use unitary_density::report::linspace;
use unitary_density::specfun::airy;
use unitary_density::{density_exact, EnsembleKind, EnsembleSpec};
use wasm_bindgen::prelude::*;

/// Curves sampled on a common grid. Asymptotic values are clamped at zero
/// for plotting; `max_abs_error` is computed before clamping.
#[wasm_bindgen]
pub struct Curve {
    x: Vec<f64>,
    exact: Vec<f64>,
    asymptotic: Vec<f64>,
    limit: Vec<f64>,
    max_abs_error: f64,
}

#[wasm_bindgen]
impl Curve {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn asymptotic(&self) -> Vec<f64> {
        self.asymptotic.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn limit(&self) -> Vec<f64> {
        self.limit.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn max_abs_error(&self) -> f64 {
        self.max_abs_error
    }
}

fn spec_from(ensemble: &str, alpha: f64, n: usize) -> Result<EnsembleSpec, String> {
    let kind = match ensemble {
        "gue" => EnsembleKind::Gue,
        "lue" => EnsembleKind::Lue,
        other => return Err(format!("unknown ensemble {other:?}")),
    };
    EnsembleSpec::new(kind, alpha, n).map_err(|e| e.to_string())
}

/// Bulk comparison: exact density, order-1 bulk expansion and limit law on
/// the open support trimmed by `margin` at each end.
pub fn bulk_curve_native(
    ensemble: &str,
    alpha: f64,
    n: usize,
    points: usize,
    margin: f64,
) -> Result<Curve, String> {
    let spec = spec_from(ensemble, alpha, n)?;
    if !(margin > 0.0 && margin < 0.5) {
        return Err(format!("margin must lie in (0, 0.5), got {margin}"));
    }
    let (a, b) = match spec.kind {
        EnsembleKind::Gue => (-1.0 + margin, 1.0 - margin),
        EnsembleKind::Lue => (margin, 1.0 - margin),
    };
    let x = linspace(a, b, points.max(2));
    let mut out = Curve {
        exact: Vec::with_capacity(x.len()),
        asymptotic: Vec::with_capacity(x.len()),
        limit: Vec::with_capacity(x.len()),
        max_abs_error: 0.0,
        x: Vec::new(),
    };
    for &t in &x {
        let exact = density_exact(&spec, t).map_err(|e| e.to_string())?;
        let terms = bulk_expansion(&spec, t, 1).map_err(|e| e.to_string())?;
        out.max_abs_error = out.max_abs_error.max((exact - terms.truncated_sum).abs());
        out.exact.push(exact);
        out.asymptotic.push(terms.truncated_sum.max(0.0));
        out.limit.push(terms.leading);
    }
    out.x = x;
    Ok(out)
}

/// Soft-edge comparison in the edge variable: scaled exact density, order-2
/// edge expansion and the Airy-kernel limit.
pub fn edge_curve_native(
    ensemble: &str,
    alpha: f64,
    n: usize,
    points: usize,
    xi_min: f64,
    xi_max: f64,
) -> Result<Curve, String> {
    let spec = spec_from(ensemble, alpha, n)?;
    if !(xi_min < xi_max) || !xi_min.is_finite() || !xi_max.is_finite() {
        return Err(format!("need finite xi_min < xi_max, got [{xi_min}, {xi_max}]"));
    }
    let x = linspace(xi_min, xi_max, points.max(2));
    let mut out = Curve {
        exact: Vec::with_capacity(x.len()),
        asymptotic: Vec::with_capacity(x.len()),
        limit: Vec::with_capacity(x.len()),
        max_abs_error: 0.0,
        x: Vec::new(),
    };
    for &xi in &x {
        let exact = scaled_exact_edge_density(&spec, xi).map_err(|e| e.to_string())?;
        let asym = edge_expansion(&spec, xi, 2).map_err(|e| e.to_string())?.truncated_sum;
        out.max_abs_error = out.max_abs_error.max((exact - asym).abs());
        out.exact.push(exact);
        out.asymptotic.push(asym.max(0.0));
        out.limit.push(edge_limit_density(xi).map_err(|e| e.to_string())?);
    }
    out.x = x;
    Ok(out)
}

#[wasm_bindgen]
pub fn bulk_curve(
    ensemble: &str,
    alpha: f64,
    n: usize,
    points: usize,
    margin: f64,
) -> Result<Curve, JsError> {
    bulk_curve_native(ensemble, alpha, n, points, margin).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn edge_curve(
    ensemble: &str,
    alpha: f64,
    n: usize,
    points: usize,
    xi_min: f64,
    xi_max: f64,
) -> Result<Curve, JsError> {
    edge_curve_native(ensemble, alpha, n, points, xi_min, xi_max).map_err(|e| JsError::new(&e))
}

/// `[Ai(ξ), Ai'(ξ)]`.
#[wasm_bindgen]
pub fn airy_pair(xi: f64) -> Result<Vec<f64>, JsError> {
    let p = airy(xi).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(vec![p.ai, p.ai_prime])
}
