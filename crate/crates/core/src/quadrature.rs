//! Gauss–Legendre rules and an adaptive bisection integrator.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared 20-point rule used by the adaptive integrator.
pub fn gl20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

/// Value of an integral together with a bisection-based error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

const MAX_DEPTH: u32 = 30;

/// Adaptive Gauss–Legendre quadrature of `f` over `[a, b]`.
///
/// Each panel is compared against the sum over its two halves; panels whose
/// discrepancy exceeds their share of `tol` are bisected. The tolerance is
/// floored at a small multiple of machine epsilon times `∫|f|`, below which
/// the comparison only sees rounding noise.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult> {
    let rule = gl20();
    let mut l1 = 0.0;
    let whole = rule.integrate(a, b, |x| {
        let v = f(x);
        l1 += v.abs();
        v
    });
    let l1 = l1 * (b - a).abs() / rule.len() as f64;
    let tol = tol.max(64.0 * f64::EPSILON * l1);
    let mut out = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
    };
    refine(&mut f, rule, a, b, whole, tol, b - a, 0, &mut out);
    if out.error_estimate > tol && out.error_estimate > 1e-15 * out.value.abs() {
        return Err(Error::Quadrature {
            estimate: out.error_estimate,
            tolerance: tol,
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: FnMut(f64) -> f64>(
    f: &mut F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    span: f64,
    depth: u32,
    out: &mut QuadResult,
) {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, &mut *f);
    let right = rule.integrate(mid, b, &mut *f);
    let halves = left + right;
    let diff = (halves - whole).abs();
    let share = tol * (b - a) / span;
    if diff <= share || depth >= MAX_DEPTH || diff <= 4.0 * f64::EPSILON * halves.abs() {
        out.value += halves;
        out.error_estimate += diff;
        return;
    }
    refine(f, rule, a, mid, left, tol, span, depth + 1, out);
    refine(f, rule, mid, b, right, tol, span, depth + 1, out);
}

/// Splits `[a, b]` into `panels` equal pieces and integrates each adaptively.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    tol: f64,
) -> Result<QuadResult> {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
    };
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        let r = integrate_adaptive(&mut f, lo, hi, tol / panels as f64)?;
        total.value += r.value;
        total.error_estimate += r.error_estimate;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 20, 33] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let r = GaussLegendre::new(10);
        for deg in 0..20 {
            let v = r.integrate(0.0, 1.0, |x| x.powi(deg));
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let r = integrate_adaptive(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn panels_integrate_gaussian() {
        let r = integrate_panels(|x: f64| (-x * x).exp(), -8.0, 8.0, 8, 1e-14).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }
}
