//! The Airy function Ai and its derivative on the real line.
//!
//! For `|xi| <= SERIES_CUTOFF` the Maclaurin series is summed with
//! compensated arithmetic. Beyond the cutoff the pair is obtained from the
//! Laplace-type integral along the steepest-descent path of the Airy
//! integrand (the representation whose termwise expansion is the classical
//! asymptotic series), evaluated by Gauss–Legendre quadrature. The truncated
//! asymptotic series itself is available as [`airy_asymptotic`].

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{log_gamma, CompensatedSum};
use crate::error::{domain, Result};
use crate::quadrature::GaussLegendre;

/// Ai(0) = 3^{-2/3} / Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_239_26;
/// Ai'(0) = -3^{-1/3} / Γ(1/3).
pub const AIP0: f64 = -0.258_819_403_792_806_798_41;

/// Switch point between the Maclaurin series and the steepest-descent integral.
pub const SERIES_CUTOFF: f64 = 3.0;

/// Simultaneous values of Ai(ξ) and Ai′(ξ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
}

/// Ai and Ai′ at a finite real point.
pub fn airy(xi: f64) -> Result<AiryPair> {
    if !xi.is_finite() {
        return Err(domain("xi", xi, "Airy argument must be finite"));
    }
    if xi.abs() <= SERIES_CUTOFF {
        Ok(airy_series(xi))
    } else {
        Ok(airy_integral(xi))
    }
}

/// `m`-th derivative of Ai for `m <= 4`, reduced to Ai and Ai′ with Ai″ = ξ·Ai.
pub fn airy_derivative(m: u32, xi: f64) -> Result<f64> {
    let p = airy(xi)?;
    match m {
        0 => Ok(p.ai),
        1 => Ok(p.ai_prime),
        2 => Ok(xi * p.ai),
        3 => Ok(p.ai + xi * p.ai_prime),
        4 => Ok(2.0 * p.ai_prime + xi * xi * p.ai),
        _ => Err(domain("m", m as f64, "derivative order must be <= 4")),
    }
}

/// Maclaurin series, `Ai = Ai(0) f(ξ) + Ai′(0) g(ξ)` with the two standard
/// homogeneous solutions `f`, `g`.
pub fn airy_series(xi: f64) -> AiryPair {
    let x3 = xi * xi * xi;
    // f terms a_k, g terms b_k, and their derivatives p_k, q_k
    let mut a = 1.0;
    let mut b = xi;
    let mut p = 0.0;
    let mut q = 1.0;
    let mut ai = CompensatedSum::default();
    let mut aip = CompensatedSum::default();
    ai.add(AI0 * a + AIP0 * b);
    aip.add(AIP0 * q);
    let mut peak: f64 = ai.value().abs().max(1.0);
    for k in 1..400 {
        let kf = k as f64;
        a *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        b *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        p = if k == 1 {
            0.5 * xi * xi
        } else {
            p * x3 / ((3.0 * kf - 3.0) * (3.0 * kf - 1.0))
        };
        q *= x3 / ((3.0 * kf - 2.0) * (3.0 * kf));
        let t_ai = AI0 * a + AIP0 * b;
        let t_aip = AI0 * p + AIP0 * q;
        ai.add(t_ai);
        aip.add(t_aip);
        let size = t_ai.abs().max(t_aip.abs());
        peak = peak.max(size);
        if size <= 1e-17 * peak && k > 3 {
            break;
        }
    }
    AiryPair {
        ai: ai.value(),
        ai_prime: aip.value(),
    }
}

struct SteepestDescentRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    gamma_5_6: f64,
    gamma_7_6: f64,
}

// Beyond s = 2.4 the factor exp(-s^6) is below e^-190.
const S_MAX: f64 = 2.4;
const PANELS: usize = 12;

fn steepest_descent_rule() -> &'static SteepestDescentRule {
    static RULE: OnceLock<SteepestDescentRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(16);
        let h = S_MAX / PANELS as f64;
        let mut nodes = Vec::with_capacity(PANELS * gl.len());
        let mut weights = Vec::with_capacity(PANELS * gl.len());
        for i in 0..PANELS {
            let mid = h * (i as f64 + 0.5);
            for (x, w) in gl.nodes().iter().zip(gl.weights()) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        SteepestDescentRule {
            nodes,
            weights,
            gamma_5_6: log_gamma(5.0 / 6.0).unwrap().exp(),
            gamma_7_6: log_gamma(7.0 / 6.0).unwrap().exp(),
        }
    })
}

/// `∫_0^∞ e^{-t} t^p (1 + t/(2ζ))^p dt` for `p = ±1/6`, with `t = s^6`.
fn laplace_integral(rule: &SteepestDescentRule, p: f64, zeta: Complex64) -> Complex64 {
    // t^p dt = 6 s^{6p+5} ds
    let power = (6.0 * p + 5.0).round() as i32;
    let inv_two_zeta = 0.5 / zeta;
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = s.powi(6);
        let base = Complex64::new(1.0, 0.0) + inv_two_zeta * t;
        acc += base.powf(p) * (w * 6.0 * s.powi(power) * (-t).exp());
    }
    acc
}

/// Ai and Ai′ from the steepest-descent integral; intended for `|ξ|` beyond
/// the series cutoff but convergent for any `ξ != 0`.
pub fn airy_integral(xi: f64) -> AiryPair {
    let rule = steepest_descent_rule();
    let sqrt_pi = PI.sqrt();
    if xi > 0.0 {
        let zeta = 2.0 / 3.0 * xi.powf(1.5);
        let z = Complex64::new(zeta, 0.0);
        let i13 = laplace_integral(rule, -1.0 / 6.0, z).re / rule.gamma_5_6;
        let i23 = laplace_integral(rule, 1.0 / 6.0, z).re / rule.gamma_7_6;
        let decay = (-zeta).exp() / (2.0 * sqrt_pi);
        let q = xi.powf(0.25);
        AiryPair {
            ai: decay / q * i13,
            ai_prime: -decay * q * i23,
        }
    } else {
        // Ai(-x) = 2 Re[e^{iπ/3} Ai(x e^{iπ/3})]; there ζ is purely imaginary.
        let x = -xi;
        let zeta0 = 2.0 / 3.0 * x.powf(1.5);
        let z = Complex64::new(0.0, zeta0);
        let i13 = laplace_integral(rule, -1.0 / 6.0, z) / rule.gamma_5_6;
        let i23 = laplace_integral(rule, 1.0 / 6.0, z) / rule.gamma_7_6;
        let q = x.powf(0.25);
        let ph_ai = Complex64::from_polar(1.0, FRAC_PI_4 - zeta0);
        let ph_aip = Complex64::from_polar(1.0, 3.0 * FRAC_PI_4 - zeta0);
        AiryPair {
            ai: (ph_ai * i13).re / (sqrt_pi * q),
            ai_prime: (ph_aip * i23).re * q / sqrt_pi,
        }
    }
}

fn asymptotic_coefficients(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    for k in 1..count {
        let kf = k as f64;
        let prev = u[k - 1];
        let uk = prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / (216.0 * kf * (2.0 * kf - 1.0));
        u.push(uk);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk);
    }
    (u, v)
}

/// Classical large-|ξ| asymptotic series truncated after `terms` terms.
pub fn airy_asymptotic(xi: f64, terms: usize) -> Result<AiryPair> {
    if !xi.is_finite() || xi == 0.0 {
        return Err(domain("xi", xi, "asymptotic series needs finite xi != 0"));
    }
    let terms = terms.max(1);
    let sqrt_pi = PI.sqrt();
    if xi > 0.0 {
        let (u, v) = asymptotic_coefficients(terms);
        let zeta = 2.0 / 3.0 * xi.powf(1.5);
        let (mut su, mut sv) = (0.0, 0.0);
        let mut zk = 1.0;
        for k in 0..terms {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            su += sign * u[k] * zk;
            sv += sign * v[k] * zk;
            zk /= zeta;
        }
        let decay = (-zeta).exp() / (2.0 * sqrt_pi);
        let q = xi.powf(0.25);
        Ok(AiryPair {
            ai: decay / q * su,
            ai_prime: -decay * q * sv,
        })
    } else {
        let x = -xi;
        let (u, v) = asymptotic_coefficients(2 * terms);
        let zeta = 2.0 / 3.0 * x.powf(1.5);
        let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
        for k in 0..terms {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let even = zeta.powi(-(2 * k as i32));
            let odd = zeta.powi(-(2 * k as i32 + 1));
            pu += sign * u[2 * k] * even;
            qu += sign * u[2 * k + 1] * odd;
            pv += sign * v[2 * k] * even;
            qv += sign * v[2 * k + 1] * odd;
        }
        let (s, c) = (zeta - FRAC_PI_4).sin_cos();
        let q = x.powf(0.25);
        Ok(AiryPair {
            ai: (c * pu + s * qu) / (sqrt_pi * q),
            ai_prime: q * (s * pv - c * qv) / sqrt_pi,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath reference values (30 digits)
    const REFERENCE: [(f64, f64, f64); 18] = [
        (-12.0, -0.066_555_175_054_373_129_474, 1.023_110_453_367_970_729_9),
        (-10.0, 0.040_241_238_486_443_190_689, 0.996_265_044_132_790_055_9),
        (-8.0, -0.052_705_050_356_386_202_622, 0.935_560_938_198_306_551_03),
        (-6.5, -0.238_020_301_997_115_803_59, -0.674_952_492_513_202_173),
        (-6.0, -0.329_145_173_629_823_105_23, 0.345_935_487_281_342_894_93),
        (-5.5, 0.017_781_541_276_574_975_603, 0.864_197_217_771_398_390_77),
        (-4.0, -0.070_265_532_949_289_515_099, -0.790_628_575_368_581_380_3),
        (-2.0, 0.227_407_428_201_685_575_99, 0.618_259_020_741_691_041_04),
        (-1.0, 0.535_560_883_292_352_118_8, -0.010_160_567_116_645_209_395),
        (0.0, 0.355_028_053_887_817_239_26, -0.258_819_403_792_806_798_41),
        (1.0, 0.135_292_416_312_881_415_52, -0.159_147_441_296_793_212_79),
        (2.0, 0.034_924_130_423_274_379_135, -0.053_090_384_433_653_631_704),
        (5.0, 0.000_108_344_428_136_074_417_35, -0.000_247_413_890_868_462_476),
        (5.5, 0.000_033_685_311_908_599_814_425, -0.000_080_463_391_305_565_143_38),
        (6.0, 9.947_694_360_252_889_570_2e-6, -0.000_024_765_200_397_034_954_754),
        (6.5, 2.795_882_343_204_913_585_5e-6, -7.231_931_466_601_792_559_8e-6),
        (8.0, 4.692_207_616_099_231_625_6e-8, -1.341_439_297_906_786_574_3e-7),
        (10.0, 1.104_753_255_289_868_593_4e-10, -3.520_633_676_738_923_636_6e-10),
    ];

    #[test]
    fn matches_reference_table() {
        for (x, ai, aip) in REFERENCE {
            let p = airy(x).unwrap();
            assert!((p.ai - ai).abs() < 1e-12, "Ai({x}) = {} vs {ai}", p.ai);
            assert!((p.ai_prime - aip).abs() < 1e-12, "Ai'({x}) = {} vs {aip}", p.ai_prime);
        }
    }

    #[test]
    fn origin_values_from_gamma() {
        let g23 = log_gamma(2.0 / 3.0).unwrap().exp();
        let g13 = log_gamma(1.0 / 3.0).unwrap().exp();
        let p = airy(0.0).unwrap();
        assert!((p.ai - 3f64.powf(-2.0 / 3.0) / g23).abs() < 1e-12);
        assert!((p.ai_prime + 3f64.powf(-1.0 / 3.0) / g13).abs() < 1e-12);
    }

    #[test]
    fn series_and_integral_overlap() {
        for i in 0..=40 {
            let x = 5.5 + i as f64 / 40.0;
            for xi in [x, -x] {
                let s = airy_series(xi);
                let g = airy_integral(xi);
                assert!((s.ai - g.ai).abs() < 1e-10, "Ai at {xi}");
                assert!((s.ai_prime - g.ai_prime).abs() < 1e-10, "Ai' at {xi}");
            }
        }
    }

    #[test]
    fn switch_point_is_seamless() {
        for xi in [SERIES_CUTOFF, -SERIES_CUTOFF] {
            let s = airy_series(xi);
            let g = airy_integral(xi);
            assert!((s.ai - g.ai).abs() < 1e-14);
            assert!((s.ai_prime - g.ai_prime).abs() < 1e-14);
            // a second difference straddling the switch still sees Ai'' = ξ Ai
            let h = 1e-4;
            let f = |t: f64| airy(t).unwrap().ai;
            let d2 = (f(xi + h) - 2.0 * f(xi) + f(xi - h)) / (h * h);
            assert!((d2 - xi * f(xi)).abs() < 1e-6);
        }
    }

    #[test]
    fn decaying_sanity_bound() {
        let approx = (-(2.0 / 3.0) * 5f64.powf(1.5)).exp() / (2.0 * PI.sqrt() * 5f64.powf(0.25));
        let ai = airy(5.0).unwrap().ai;
        assert!(((ai - approx) / ai).abs() < 0.02);
    }

    #[test]
    fn asymptotic_series_converges_to_integral_far_out() {
        for xi in [-12.0, -9.0, 9.0, 12.0] {
            let a = airy_asymptotic(xi, 8).unwrap();
            let g = airy(xi).unwrap();
            assert!((a.ai - g.ai).abs() < 1e-13, "{xi}");
            assert!((a.ai_prime - g.ai_prime).abs() < 1e-12, "{xi}");
        }
    }

    #[test]
    fn derivative_reduction() {
        let h = 1e-4;
        for xi in [-3.0, -0.5, 0.7, 2.0] {
            let d3 = airy_derivative(3, xi).unwrap();
            let fd = (airy_derivative(2, xi + h).unwrap() - airy_derivative(2, xi - h).unwrap())
                / (2.0 * h);
            assert!((d3 - fd).abs() < 1e-7);
        }
        assert!(airy_derivative(5, 0.0).is_err());
    }

    #[test]
    fn nan_is_rejected() {
        assert!(airy(f64::NAN).is_err());
        assert!(airy(f64::INFINITY).is_err());
    }
}
