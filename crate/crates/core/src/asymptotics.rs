//! Closed-form large-N expansions of the density: the bulk expansion with its
//! oscillating `1/N` correction, the soft-edge expansion in powers of
//! `N^{-1/3}`, the Airy-kernel limit law, and the re-expansion of the bulk
//! result in edge variables that exhibits the matching between the two.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::ensembles::{arccos, EnsembleKind, EnsembleSpec};
use crate::error::{domain, Error, Result};
use crate::exact_density::density_exact;
use crate::specfun::airy;

/// Bulk expansions are refused where the limiting density is below this.
pub const BULK_RHO_FLOOR: f64 = 1e-3;

/// A rational exponent `num/den` of `1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderExponent {
    pub num: u32,
    pub den: u32,
}

impl OrderExponent {
    pub const fn new(num: u32, den: u32) -> Self {
        Self { num, den }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// One correction term of an expansion, already multiplied by its power of `1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correction {
    pub order: OrderExponent,
    pub value: f64,
}

/// Leading term, corrections in increasing order, and their sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerms {
    pub leading: f64,
    pub corrections: Vec<Correction>,
    pub truncated_sum: f64,
}

impl ExpansionTerms {
    fn new(leading: f64, corrections: Vec<Correction>) -> Self {
        let truncated_sum = corrections.iter().fold(leading, |acc, c| acc + c.value);
        Self {
            leading,
            corrections,
            truncated_sum,
        }
    }
}

fn bulk_inside(spec: &EnsembleSpec, x: f64) -> bool {
    match spec.kind {
        EnsembleKind::Gue => x.abs() < 1.0,
        EnsembleKind::Lue => x > 0.0 && x < 1.0,
    }
}

/// Bulk expansion of `ρ_N(x)` through order `1/N`.
///
/// GUE: `ρ - 2cos(2NπP)/(π³ρ²N)`.
/// LUE: `ρ - [cos(2NπP - 2α Arccos√x)/(π³x²ρ²) - α/(π²xρ)]/N`.
pub fn bulk_expansion(spec: &EnsembleSpec, x: f64, order: u32) -> Result<ExpansionTerms> {
    if order > 1 {
        return Err(Error::InvalidParameter(format!(
            "bulk expansion is available through order 1, got {order}"
        )));
    }
    if !bulk_inside(spec, x) {
        return Err(domain(
            "x",
            x,
            "bulk expansion needs x inside the open support; use edge_expansion near the edge",
        ));
    }
    let rho = spec.limiting_density(x)?;
    if rho < BULK_RHO_FLOOR {
        return Err(Error::NearEdge { x, rho });
    }
    if order == 0 {
        return Ok(ExpansionTerms::new(rho, Vec::new()));
    }
    let nf = spec.nf();
    let p = spec.distribution_function(x)?;
    let value = match spec.kind {
        EnsembleKind::Gue => -2.0 * (2.0 * nf * PI * p).cos() / (PI.powi(3) * rho * rho) / nf,
        EnsembleKind::Lue => {
            let a = spec.alpha;
            let phase = 2.0 * nf * PI * p - 2.0 * a * arccos(x.sqrt());
            let osc = phase.cos() / (PI.powi(3) * x * x * rho * rho);
            let smooth = a / (PI * PI * x * rho);
            -(osc - smooth) / nf
        }
    };
    Ok(ExpansionTerms::new(
        rho,
        vec![Correction {
            order: OrderExponent::new(1, 1),
            value,
        }],
    ))
}

/// `Ai'(ξ)² - ξ Ai(ξ)²`, the soft-edge limit of the scaled density.
pub fn edge_limit_density(xi: f64) -> Result<f64> {
    let p = airy(xi)?;
    // the two terms cancel for large positive ξ; clamp the rounding residue
    Ok((p.ai_prime * p.ai_prime - xi * p.ai * p.ai).max(0.0))
}

/// `x` corresponding to the edge variable `ξ`: `1 + ξ/(2N^{2/3})` (GUE) or
/// `1 + ξ/(2N)^{2/3}` (LUE).
pub fn edge_abscissa(spec: &EnsembleSpec, xi: f64) -> f64 {
    let n = spec.nf();
    match spec.kind {
        EnsembleKind::Gue => 1.0 + xi / (2.0 * n.powf(2.0 / 3.0)),
        EnsembleKind::Lue => 1.0 + xi / (2.0 * n).powf(2.0 / 3.0),
    }
}

/// Factor multiplying `ρ_N` in the edge expansion: `N^{1/3}/2` (GUE) or
/// `(2N)^{1/3}/2` (LUE).
pub fn edge_scale(spec: &EnsembleSpec) -> f64 {
    let n = spec.nf();
    match spec.kind {
        EnsembleKind::Gue => 0.5 * n.cbrt(),
        EnsembleKind::Lue => 0.5 * (2.0 * n).cbrt(),
    }
}

/// Exact density in edge variables, `edge_scale · ρ_N(edge_abscissa(ξ))`.
pub fn scaled_exact_edge_density(spec: &EnsembleSpec, xi: f64) -> Result<f64> {
    Ok(edge_scale(spec) * density_exact(spec, edge_abscissa(spec, xi))?)
}

/// Expansion of the scaled edge density through order `N^{-2/3}`.
///
/// GUE has no `N^{-1/3}` term; it is recorded with value exactly 0 so that
/// both ensembles report the same exponents.
pub fn edge_expansion(spec: &EnsembleSpec, xi: f64, order: u32) -> Result<ExpansionTerms> {
    if order > 2 {
        return Err(Error::InvalidParameter(format!(
            "edge expansion is available through order 2, got {order}"
        )));
    }
    let p = airy(xi)?;
    let (ai, aip) = (p.ai, p.ai_prime);
    let leading = edge_limit_density(xi)?;
    let n = spec.nf();
    let mut corrections = Vec::new();
    if order >= 1 {
        let value = match spec.kind {
            EnsembleKind::Gue => 0.0,
            EnsembleKind::Lue => spec.alpha / 2f64.cbrt() * ai * ai / n.cbrt(),
        };
        corrections.push(Correction {
            order: OrderExponent::new(1, 3),
            value,
        });
    }
    if order >= 2 {
        let n23 = n.powf(2.0 / 3.0);
        let value = match spec.kind {
            EnsembleKind::Gue => {
                -(3.0 * xi * xi * ai * ai - 2.0 * xi * aip * aip - 3.0 * ai * aip) / (20.0 * n23)
            }
            EnsembleKind::Lue => {
                let a = spec.alpha;
                2f64.cbrt() / 10.0
                    * (3.0 * xi * xi * ai * ai - 2.0 * xi * aip * aip
                        + (2.0 - 5.0 * a * a) * ai * aip)
                    / n23
            }
        };
        corrections.push(Correction {
            order: OrderExponent::new(2, 3),
            value,
        });
    }
    Ok(ExpansionTerms::new(leading, corrections))
}

/// `2√|ξ|/π - cos(4|ξ|^{3/2}/3)/(2π|ξ|)`, the `N`-independent part of the
/// bulk expansion written in edge variables.
pub fn matching_bracket(xi: f64) -> f64 {
    let a = xi.abs();
    2.0 * a.sqrt() / PI - (4.0 * a.powf(1.5) / 3.0).cos() / (2.0 * PI * a)
}

/// Coefficient of `N^{-2/3}` in the GUE re-expansion (entering with a minus sign).
pub fn gue_matching_correction(xi: f64) -> f64 {
    let a = xi.abs();
    let phase = 4.0 * a.powf(1.5) / 3.0;
    a.powf(1.5) / (4.0 * PI) + phase.cos() / (8.0 * PI) + a.powf(1.5) * phase.sin() / (20.0 * PI)
}

/// Coefficient of `(2N)^{-1/3}` in the LUE re-expansion.
pub fn lue_matching_term(alpha: f64, xi: f64) -> f64 {
    let a = xi.abs();
    alpha * (1.0 + (4.0 * a.powf(1.5) / 3.0).sin()) / (PI * a.sqrt())
}

/// The bulk expansion re-expanded at `x = edge_abscissa(ξ)`, `ξ < 0`, on the
/// `N^{1/3}ρ_N` (GUE) or `(2N)^{1/3}ρ_N` (LUE) scale, i.e. twice the scale of
/// [`edge_expansion`].
///
/// GUE keeps the `N^{-2/3}` bracket, LUE the `(2N)^{-1/3}` term.
pub fn bulk_reexpanded_at_edge(spec: &EnsembleSpec, xi: f64) -> Result<f64> {
    if !(xi < 0.0) {
        return Err(domain("xi", xi, "re-expansion needs xi < 0"));
    }
    let x = edge_abscissa(spec, xi);
    if !bulk_inside(spec, x) {
        return Err(domain("x", x, "mapped point lies outside the bulk; increase N"));
    }
    let n = spec.nf();
    Ok(match spec.kind {
        EnsembleKind::Gue => matching_bracket(xi) - gue_matching_correction(xi) / n.powf(2.0 / 3.0),
        EnsembleKind::Lue => {
            matching_bracket(xi) + lue_matching_term(spec.alpha, xi) / (2.0 * n).cbrt()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{AI0, AIP0};

    fn gue(n: usize) -> EnsembleSpec {
        EnsembleSpec::gue(n).unwrap()
    }

    fn lue(a: f64, n: usize) -> EnsembleSpec {
        EnsembleSpec::lue(a, n).unwrap()
    }

    #[test]
    fn bulk_examples() {
        let t = bulk_expansion(&gue(10), 0.0, 1).unwrap();
        let expected = 2.0 / PI - 1.0 / (20.0 * PI);
        assert!((t.truncated_sum - expected).abs() < 1e-14);
        assert!((t.truncated_sum - 0.620_704_28).abs() < 1e-8);
        let exact = density_exact(&gue(10), 0.0).unwrap();
        assert!((t.truncated_sum - exact).abs() < 0.01);

        let spec = lue(0.0, 10);
        let t = bulk_expansion(&spec, 0.5, 1).unwrap();
        let rho = spec.limiting_density(0.5).unwrap();
        let p = spec.distribution_function(0.5).unwrap();
        let expected = rho - (20.0 * PI * p).cos() / (PI.powi(3) * 0.25 * rho * rho) / 10.0;
        assert!((t.truncated_sum - expected).abs() < 1e-15);

        for spec in [gue(7), lue(1.3, 7)] {
            for x in [0.2, 0.45, 0.7] {
                let t = bulk_expansion(&spec, x, 0).unwrap();
                assert_eq!(t.truncated_sum, spec.limiting_density(x).unwrap());
                assert!(t.corrections.is_empty());
            }
        }
    }

    #[test]
    fn bulk_guards() {
        assert!(matches!(
            bulk_expansion(&gue(10), 0.999_999_9, 1),
            Err(Error::NearEdge { .. })
        ));
        let e = bulk_expansion(&gue(10), 1.2, 1).unwrap_err();
        assert!(e.to_string().contains("edge_expansion"));
        assert!(bulk_expansion(&lue(0.5, 10), 0.0, 1).is_err());
        assert!(bulk_expansion(&gue(10), 0.1, 2).is_err());
    }

    #[test]
    fn lue_phase_forms_agree() {
        // the phase with απ[1 + xρ - P] equals the one with 2α Arccos√x
        for a in [0.5, 2.0] {
            let spec = lue(a, 13);
            for i in 1..=10 {
                let x = 0.09 * i as f64;
                let rho = spec.limiting_density(x).unwrap();
                let p = spec.distribution_function(x).unwrap();
                let n = spec.nf();
                let first = (2.0 * n * PI * p - a * PI * (1.0 + x * rho - p)).cos();
                let second = (2.0 * n * PI * p - 2.0 * a * arccos(x.sqrt())).cos();
                assert!((first - second).abs() < 1e-12, "x = {x}");
            }
        }
    }

    #[test]
    fn lue_smooth_term_is_mean_consistent() {
        // ∫ x · α/(π² x ρ) dx over (0, 1) = α/4, the 1/N part of the first moment
        let a = 0.5;
        let q = crate::quadrature::integrate_adaptive(
            |t: f64| {
                let x = 0.5 * (1.0 - (PI * t).cos());
                let rho = (2.0 / PI) * (1.0 / x - 1.0).sqrt();
                a / (PI * PI * rho) * 0.5 * PI * (PI * t).sin()
            },
            0.0,
            1.0,
            1e-14,
        )
        .unwrap();
        assert!((q.value - a / 4.0).abs() < 1e-12, "{}", q.value);
    }

    #[test]
    fn bulk_correction_tracks_exact_oscillation() {
        let spec = gue(10);
        let mut checked = 0;
        for i in 0..20 {
            let x = -0.6 + 1.2 * i as f64 / 19.0;
            let p = spec.distribution_function(x).unwrap();
            let c = (2.0 * 10.0 * PI * p).cos();
            if c.abs() < 0.3 {
                continue;
            }
            let diff = density_exact(&spec, x).unwrap() - spec.limiting_density(x).unwrap();
            assert_eq!(diff.signum(), (-c).signum(), "x = {x}");
            checked += 1;
        }
        assert!(checked >= 10);
    }

    #[test]
    fn bulk_remainder_is_second_order() {
        for spec in [gue(40), lue(0.5, 40)] {
            let mut worst: f64 = 0.0;
            for i in 0..21 {
                let x = 0.2 + 0.6 * i as f64 / 20.0;
                let t = bulk_expansion(&spec, x, 1).unwrap();
                worst = worst.max((t.truncated_sum - density_exact(&spec, x).unwrap()).abs());
            }
            assert!(worst * 1600.0 < 3.0, "{spec:?}: N² err = {}", worst * 1600.0);
        }
    }

    #[test]
    fn edge_limit_values() {
        assert!((edge_limit_density(0.0).unwrap() - AIP0 * AIP0).abs() < 1e-15);
        assert!((edge_limit_density(0.0).unwrap() - 0.066_987_48).abs() < 1e-8);
        assert!(edge_limit_density(8.0).unwrap() <= 1e-9);
        for i in 0..200 {
            let xi = -10.0 + 0.1 * i as f64;
            assert!(edge_limit_density(xi).unwrap() >= 0.0);
        }
        // -d/dξ K = Ai², numerically
        for xi in [-3.0, -0.5, 1.0] {
            let h = 1e-5;
            let d = (edge_limit_density(xi + h).unwrap() - edge_limit_density(xi - h).unwrap())
                / (2.0 * h);
            let ai = airy(xi).unwrap().ai;
            assert!((d + ai * ai).abs() < 1e-8);
        }
    }

    #[test]
    fn edge_examples() {
        let t = edge_expansion(&gue(10), 0.0, 2).unwrap();
        let expected = AIP0 * AIP0 + 0.15 * AI0 * AIP0 / 10f64.powf(2.0 / 3.0);
        assert!((t.truncated_sum - expected).abs() < 1e-15);
        assert!((t.truncated_sum - 0.064_017_98).abs() < 1e-8);
        assert_eq!(t.corrections[0].order, OrderExponent::new(1, 3));
        assert_eq!(t.corrections[0].value, 0.0);
        let exact = scaled_exact_edge_density(&gue(10), 0.0).unwrap();
        assert!((t.truncated_sum - exact).abs() < 5e-4);

        let spec = lue(0.5, 20);
        let t = edge_expansion(&spec, 1.0, 1).unwrap();
        let ai = airy(1.0).unwrap().ai;
        let expected = edge_limit_density(1.0).unwrap() + 0.5 / 2f64.cbrt() * ai * ai / 20f64.cbrt();
        assert!((t.truncated_sum - expected).abs() < 1e-15);
        let exact = scaled_exact_edge_density(&spec, 1.0).unwrap();
        assert!((t.truncated_sum - exact).abs() < 0.01);

        for xi in [-3.0, 0.0, 2.5] {
            for spec in [gue(10), lue(2.0, 10)] {
                let t = edge_expansion(&spec, xi, 0).unwrap();
                assert_eq!(t.truncated_sum, edge_limit_density(xi).unwrap());
            }
        }
        assert!(edge_expansion(&gue(10), 0.0, 3).is_err());
    }

    #[test]
    fn bookkeeping_identity() {
        for spec in [gue(9), lue(0.5, 9)] {
            for xi in [-2.0, 0.3, 1.7] {
                let t = edge_expansion(&spec, xi, 2).unwrap();
                let s: f64 = t.leading + t.corrections.iter().map(|c| c.value).sum::<f64>();
                assert!((s - t.truncated_sum).abs() <= 1e-15);
                assert!(t.corrections.windows(2).all(|w| w[0].order.value() < w[1].order.value()));
            }
        }
    }

    #[test]
    fn matching_examples() {
        let v = matching_bracket(-4.0);
        assert!((v - (4.0 / PI - (32.0f64 / 3.0).cos() / (8.0 * PI))).abs() < 1e-15);
        for n in [5, 50, 500] {
            let a = bulk_reexpanded_at_edge(&lue(0.0, n), -4.0).unwrap();
            assert_eq!(a, matching_bracket(-4.0));
        }
        let spec = gue(40);
        let xi = -6.0;
        let x = edge_abscissa(&spec, xi);
        let bulk = bulk_expansion(&spec, x, 1).unwrap().truncated_sum * 40f64.cbrt();
        let re = bulk_reexpanded_at_edge(&spec, xi).unwrap();
        assert!((bulk - re).abs() <= 2e-3, "{bulk} vs {re}");
        assert!(bulk_reexpanded_at_edge(&spec, 0.5).is_err());
        assert!(bulk_reexpanded_at_edge(&gue(1), -6.0).is_err());
    }

    #[test]
    fn edge_limit_matches_bracket() {
        for xi in [-4.0, -5.0, -6.0, -8.0] {
            let k2 = 2.0 * edge_limit_density(xi).unwrap();
            let gap = (k2 - matching_bracket(xi)).abs();
            assert!(gap <= xi.abs().powf(-2.5), "xi = {xi}: {gap}");
        }
    }

    #[test]
    fn lue_first_correction_matches_reexpansion_term() {
        // twice the N^{-1/3} edge term, against the (2N)^{-1/3} re-expansion term
        for a in [0.5, 2.0] {
            for xi in [-4.0, -5.0, -6.0] {
                let spec = lue(a, 100);
                let t = edge_expansion(&spec, xi, 1).unwrap();
                let edge = 2.0 * t.corrections[0].value * (2.0 * spec.nf()).cbrt();
                let gap = (edge - lue_matching_term(a, xi)).abs();
                assert!(gap <= a * xi.abs().powf(-2.0), "a = {a}, xi = {xi}: {gap}");
            }
        }
    }
}
