use crate::error::{domain, Result};

// Lanczos approximation with g = 607/128 and 15 coefficients.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Natural logarithm of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("x", x, "log_gamma requires finite x > 0"));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut y = x;
    let t = x + LANCZOS_G;
    let head = (x + 0.5) * t.ln() - t;
    let mut ser = LANCZOS_C0;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    Ok(head + (SQRT_2PI * ser / x).ln())
}
