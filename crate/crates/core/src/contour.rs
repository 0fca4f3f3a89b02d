//! Independent evaluation of `ρ_N(x)` from its double contour integral
//! representation, plus the Airy ray integral used at the soft edge.
//!
//! Expanding `G(z₁, z₂) = u(z₁)u(z₂)(1 - z₁/z₂)` turns the double integral
//! into `A² - C·D` with three single integrals
//! `A = ∮ e^{NS} u`, `C = ∮ e^{NS} u z`, `D = ∮ e^{NS} u / z`,
//! each taken by the trapezoidal rule on a circle about the origin.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{domain, Error, Result};
use crate::quadrature::gl20;

/// Complex number stored as `exp(log_mag + i·phase)`, for factors whose
/// magnitudes leave the double range. Zero is `log_mag = -∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub log_mag: f64,
    pub phase: f64,
}

fn wrap_phase(p: f64) -> f64 {
    let mut q = p.rem_euclid(2.0 * PI);
    if q > PI {
        q -= 2.0 * PI;
    }
    if q == -PI {
        q = PI;
    }
    q
}

impl ScaledComplex {
    pub const ZERO: Self = Self {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    /// `exp(w)` for complex `w`.
    pub fn exp(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.phase)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + other.log_mag, self.phase + other.phase)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let m = self.log_mag.max(other.log_mag);
        let a = Complex64::from_polar((self.log_mag - m).exp(), self.phase);
        let b = Complex64::from_polar((other.log_mag - m).exp(), other.phase);
        let s = Self::from_complex(a + b);
        if s.is_zero() {
            return s;
        }
        Self::new(s.log_mag + m, s.phase)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_mag, self.phase + PI)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    /// Sum with the largest magnitude peeled off first.
    pub fn sum(items: &[Self]) -> Self {
        let m = items
            .iter()
            .map(|s| s.log_mag)
            .fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let total: Complex64 = items
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| Complex64::from_polar((s.log_mag - m).exp(), s.phase))
            .sum();
        let s = Self::from_complex(total);
        if s.is_zero() {
            return s;
        }
        Self::new(s.log_mag + m, s.phase)
    }
}

/// Circle `|z| = radius` sampled at `num_points` equally spaced nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub radius: f64,
    pub num_points: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            radius: 1.0,
            num_points: 512,
        }
    }
}

impl ContourSpec {
    pub fn new(radius: f64, num_points: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "contour radius must be positive, got {radius}"
            )));
        }
        if num_points < 64 || num_points % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "contour needs an even number of points >= 64, got {num_points}"
            )));
        }
        Ok(Self { radius, num_points })
    }

    fn check_for(&self, spec: &EnsembleSpec) -> Result<()> {
        Self::new(self.radius, self.num_points)?;
        if spec.kind == EnsembleKind::Lue && self.radius >= 2.0 {
            return Err(Error::InvalidParameter(format!(
                "LUE contour must not enclose z = -2 (radius {} >= 2)",
                self.radius
            )));
        }
        Ok(())
    }
}

fn check_poles(spec: &EnsembleSpec, z: Complex64) -> Result<()> {
    let pole = z == Complex64::new(0.0, 0.0)
        || (spec.kind == EnsembleKind::Lue && z == Complex64::new(-2.0, 0.0));
    if pole {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

/// The phase function `S(z, x)`, principal logarithms.
///
/// GUE: `-2zx - log z - z²/2`; LUE: `-2zx - log z + log(1 + z/2)`.
pub fn action(spec: &EnsembleSpec, z: Complex64, x: f64) -> Result<Complex64> {
    check_poles(spec, z)?;
    let common = -2.0 * z * x - z.ln();
    Ok(match spec.kind {
        EnsembleKind::Gue => common - 0.5 * z * z,
        EnsembleKind::Lue => common + (1.0 + 0.5 * z).ln(),
    })
}

fn amplitude(spec: &EnsembleSpec, z: Complex64) -> Complex64 {
    match spec.kind {
        EnsembleKind::Gue => Complex64::new(1.0, 0.0),
        EnsembleKind::Lue => (1.0 + 0.5 * z).powf(spec.alpha - 1.0),
    }
}

/// `G(z₁, z₂) = u(z₁) u(z₂) (1 - z₁/z₂)` with `u ≡ 1` (GUE) or
/// `u(z) = (1 + z/2)^{α-1}` (LUE).
pub fn integrand_g(spec: &EnsembleSpec, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    check_poles(spec, z2)?;
    if spec.kind == EnsembleKind::Lue && z1 == Complex64::new(-2.0, 0.0) {
        return Err(Error::Pole { re: z1.re, im: z1.im });
    }
    Ok(amplitude(spec, z1) * amplitude(spec, z2) * (1.0 - z1 / z2))
}

/// Largest `N` accepted by [`density_via_contour`].
pub const CONTOUR_MAX_N: usize = 60;
/// Relative size of the discarded imaginary part allowed in the result.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// `ρ_N(x) = [2c₀c₁/‖π_{N-1}‖²] ω_N(x) J_N(x)` with `J_N` from the
/// factorized contour integrals.
pub fn density_via_contour(spec: &EnsembleSpec, x: f64, contour: &ContourSpec) -> Result<f64> {
    contour.check_for(spec)?;
    if spec.n > CONTOUR_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "contour oracle is limited to N <= {CONTOUR_MAX_N}, got {}",
            spec.n
        )));
    }
    let inside = match spec.kind {
        EnsembleKind::Gue => x.abs() < 1.0,
        EnsembleKind::Lue => x > 0.0 && x < 1.0,
    };
    if !inside {
        return Err(domain("x", x, "contour oracle needs x inside the open support"));
    }
    let n = spec.nf();
    let m_pts = contour.num_points;
    let mut logs = Vec::with_capacity(m_pts);
    let mut nodes = Vec::with_capacity(m_pts);
    for j in 0..m_pts {
        let theta = 2.0 * PI * j as f64 / m_pts as f64;
        let z = Complex64::from_polar(contour.radius, theta);
        let mut l = n * action(spec, z, x)?;
        if spec.kind == EnsembleKind::Lue {
            l += (spec.alpha - 1.0) * (1.0 + 0.5 * z).ln();
        }
        logs.push(l);
        nodes.push(z);
    }
    let peak = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    // dz/(2πi) on the circle becomes z_j / M
    let (mut a, mut c, mut d) = (Complex64::default(), Complex64::default(), Complex64::default());
    for (l, z) in logs.iter().zip(&nodes) {
        let w = (l - peak).exp() * z / m_pts as f64;
        a += w;
        c += w * z;
        d += w / z;
    }
    let j_peeled = ScaledComplex::from_complex(a * a - c * d);
    let scale = spec.log_contour_prefactor() + spec.log_weight(x)? + 2.0 * peak;
    let value = j_peeled.mul(ScaledComplex::new(scale, 0.0)).to_complex();
    let residue = if value.re != 0.0 {
        (value.im / value.re).abs()
    } else {
        f64::INFINITY
    };
    if !(residue <= IMAGINARY_TOLERANCE) {
        return Err(Error::ImaginaryResidue {
            residue,
            tolerance: IMAGINARY_TOLERANCE,
        });
    }
    Ok(value.re)
}

/// Length of each ray of the Airy contour.
pub const AIRY_RAY_LENGTH: f64 = 8.0;
const AIRY_RAY_CUTOFF: f64 = 12.0;
const AIRY_RAY_PANELS: usize = 48;

/// `∫_B z^m exp(bN z³/3 - ξ b^{1/3} N^{1/3} z) dz/(2πi)` along the rays
/// `arg z = ∓π/3`, which equals `(-1)^m (bN)^{-(m+1)/3} Ai^{(m)}(ξ)`.
pub fn airy_ray_integral(m: u32, n_param: usize, b: f64, xi: f64) -> Result<f64> {
    if m > 4 {
        return Err(domain("m", m as f64, "ray integral order must be <= 4"));
    }
    if n_param == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(domain("b", b, "b must be positive"));
    }
    if !xi.is_finite() {
        return Err(domain("xi", xi, "xi must be finite"));
    }
    let bn = b * n_param as f64;
    let c = bn.cbrt();
    // in s = (bN)^{1/3} t the integrand is s^m exp(-s³/3 - ξ s e^{iπ/3}) up to
    // a constant; beyond s = 12 it is below e^{-500}
    let dir = Complex64::from_polar(1.0, PI / 3.0);
    let upper_im = |s: f64| {
        let w = s * dir;
        (w.powu(m) * (w * w * w / 3.0 - xi * w).exp() * dir).im
    };
    let length = AIRY_RAY_LENGTH * c;
    let live = length.min(AIRY_RAY_CUTOFF);
    let rule = gl20();
    let h = live / AIRY_RAY_PANELS as f64;
    let mut acc = 0.0;
    for p in 0..AIRY_RAY_PANELS {
        let lo = h * p as f64;
        acc += rule.integrate(lo, lo + h, upper_im);
    }
    if length > live {
        acc += rule.integrate(live, length, upper_im);
    }
    // lower ray is the conjugate of the upper one, so the two combine to Im/π
    Ok(acc / PI * c.powi(-(m as i32) - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_density::density_exact;
    use crate::specfun::{airy_derivative, AI0, AIP0};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn action_examples() {
        let gue = EnsembleSpec::gue(3).unwrap();
        let s = action(&gue, c(-1.0, 0.0), 1.0).unwrap();
        assert!((s - c(1.5, -PI)).norm() < 1e-15, "{s}");
        let lue = EnsembleSpec::lue(0.5, 3).unwrap();
        let s = action(&lue, c(-1.0, 0.0), 1.0).unwrap();
        assert!((s - c(2.0 - 2f64.ln(), -PI)).norm() < 1e-15, "{s}");
        assert!(action(&gue, c(0.0, 0.0), 0.3).is_err());
        assert!(action(&lue, c(-2.0, 0.0), 0.3).is_err());
        assert!(action(&gue, c(-2.0, 0.0), 0.3).is_ok());
    }

    #[test]
    fn action_at_saddles() {
        for &x in &[-0.7, -0.2, 0.0, 0.5, 0.9] {
            let spec = EnsembleSpec::gue(4).unwrap();
            let sd = spec.saddle_data(x).unwrap();
            let s = action(&spec, sd.z_plus, x).unwrap();
            assert!((s.re - (0.5 + x * x)).abs() < 1e-14);
            assert!((s.im - sd.im_s_plus).abs() < 1e-13, "x = {x}");
        }
        for &x in &[0.1, 0.5, 0.9] {
            let spec = EnsembleSpec::lue(1.5, 4).unwrap();
            let sd = spec.saddle_data(x).unwrap();
            let s = action(&spec, sd.z_plus, x).unwrap();
            assert!((s.re - sd.re_s_plus).abs() < 1e-14);
            assert!((s.im - sd.im_s_plus).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn g_examples() {
        let gue = EnsembleSpec::gue(3).unwrap();
        let z1 = c(0.3, 0.4);
        let z2 = c(-0.2, 0.9);
        assert_eq!(integrand_g(&gue, z1, z1).unwrap(), c(0.0, 0.0));
        assert!((integrand_g(&gue, z1, z2).unwrap() - (1.0 - z1 / z2)).norm() < 1e-15);
        let lue1 = EnsembleSpec::lue(1.0, 3).unwrap();
        assert!((integrand_g(&lue1, z1, z2).unwrap() - (1.0 - z1 / z2)).norm() < 1e-15);
        assert!(integrand_g(&gue, z1, c(0.0, 0.0)).is_err());
        assert!(integrand_g(&lue1, c(-2.0, 0.0), z2).is_err());
    }

    #[test]
    fn contour_spec_validation() {
        assert!(ContourSpec::new(0.0, 512).is_err());
        assert!(ContourSpec::new(1.0, 63).is_err());
        assert!(ContourSpec::new(1.0, 65).is_err());
        let wide = ContourSpec::new(2.5, 512).unwrap();
        let lue = EnsembleSpec::lue(0.5, 4).unwrap();
        assert!(matches!(
            density_via_contour(&lue, 0.5, &wide),
            Err(Error::InvalidParameter(_))
        ));
        let gue = EnsembleSpec::gue(4).unwrap();
        assert!(density_via_contour(&gue, 0.5, &wide).is_ok());
        assert!(density_via_contour(&EnsembleSpec::gue(61).unwrap(), 0.5, &ContourSpec::default()).is_err());
        assert!(density_via_contour(&gue, 1.0, &ContourSpec::default()).is_err());
    }

    #[test]
    fn n1_closed_form() {
        let spec = EnsembleSpec::gue(1).unwrap();
        let v = density_via_contour(&spec, 0.4, &ContourSpec::default()).unwrap();
        let exact = (2.0 / PI).sqrt() * (-2.0f64 * 0.16).exp();
        assert!(((v - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn matches_kernel() {
        let cases = [
            (EnsembleSpec::gue(10).unwrap(), 0.0),
            (EnsembleSpec::lue(0.5, 10).unwrap(), 0.5),
            (EnsembleSpec::gue(40).unwrap(), 0.63),
            (EnsembleSpec::lue(2.0, 30).unwrap(), 0.3),
        ];
        for (spec, x) in cases {
            let a = density_via_contour(&spec, x, &ContourSpec::default()).unwrap();
            let b = density_exact(&spec, x).unwrap();
            assert!(((a - b) / b).abs() < 1e-6, "{spec:?} {x}: {a} vs {b}");
        }
    }

    #[test]
    fn radius_and_resolution_independence() {
        let spec = EnsembleSpec::gue(10).unwrap();
        for x in [0.0, 0.3, -0.75] {
            let base = density_via_contour(&spec, x, &ContourSpec::default()).unwrap();
            for r in [0.8, 1.2] {
                let v = density_via_contour(&spec, x, &ContourSpec::new(r, 512).unwrap()).unwrap();
                assert!(((v - base) / base).abs() < 1e-8);
            }
            let fine = density_via_contour(&spec, x, &ContourSpec::new(1.0, 1024).unwrap()).unwrap();
            assert!(((fine - base) / base).abs() < 1e-10);
        }
    }

    #[test]
    fn scaled_complex_arithmetic() {
        let a = ScaledComplex::from_complex(c(3.0, -4.0));
        let b = ScaledComplex::from_complex(c(-1.0, 2.0));
        assert!((a.mul(b).to_complex() - c(3.0, -4.0) * c(-1.0, 2.0)).norm() < 1e-13);
        assert!((a.add(b).to_complex() - c(2.0, -2.0)).norm() < 1e-14);
        assert!((a.sub(b).to_complex() - c(4.0, -6.0)).norm() < 1e-14);
        assert!(a.sub(a).log_mag < -30.0 || a.sub(a).is_zero());
        assert!(ScaledComplex::ZERO.mul(a).is_zero());
        let big = ScaledComplex::new(2000.0, 1.0);
        let small = ScaledComplex::new(1990.0, 1.0);
        let s = ScaledComplex::sum(&[big, small]);
        assert!((s.log_mag - (2000.0 + (1.0 + (-10f64).exp()).ln())).abs() < 1e-12);
        let p = ScaledComplex::new(0.0, 3.0).mul(ScaledComplex::new(0.0, 3.0)).phase;
        assert!(p > -PI && p <= PI);
        assert!((p - (6.0 - 2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn lemma1_examples() {
        let v = airy_ray_integral(0, 30, 1.0, 0.0).unwrap();
        assert!(((v - AI0 * 30f64.powf(-1.0 / 3.0)) / v).abs() < 1e-9);
        let v = airy_ray_integral(1, 30, 1.0, 0.0).unwrap();
        assert!(((v + AIP0 * 30f64.powf(-2.0 / 3.0)) / v).abs() < 1e-9);
        let v = airy_ray_integral(2, 30, 2.0, 1.0).unwrap();
        let target = airy_derivative(0, 1.0).unwrap() / 60.0;
        assert!(((v - target) / target).abs() < 1e-9, "{v} vs {target}");
        assert!(airy_ray_integral(5, 30, 1.0, 0.0).is_err());
        assert!(airy_ray_integral(0, 30, 0.0, 0.0).is_err());
    }
}
