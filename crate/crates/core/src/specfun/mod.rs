//! Special functions used by the density routines.
//!
//! Everything here is self-contained: log-gamma, the Airy pair on the real
//! line, and the orthonormal weight-folded Hermite/Laguerre wavefunctions.

mod airy;
mod gamma;
mod wavefunctions;

pub use airy::{
    airy, airy_asymptotic, airy_derivative, airy_integral, airy_series, AiryPair, AI0, AIP0,
    SERIES_CUTOFF,
};
pub use gamma::log_gamma;
pub use wavefunctions::{kernel_diagonal, wavefunctions, WavefunctionSet};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::CompensatedSum;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }
}
