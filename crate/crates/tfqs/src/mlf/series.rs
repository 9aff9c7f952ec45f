//! Truncated power series for E_beta(z) near the origin.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use super::{MlRequest, MlfError, MlfResult, SERIES_RADIUS};

/// Neumaier-compensated accumulator, one per real component.
#[derive(Debug, Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums the defining series of E_beta(z).
///
/// Terms are built in log space, exp(j*ln|z| - ln Gamma(beta*j + 1)), so the
/// magnitude never overflows even when |z|^j alone would; both components are
/// accumulated with compensated summation.  Truncation follows the first-
/// omitted-term rule: summation stops at the first term whose magnitude is
/// below tol * |partial sum|.
///
/// Errors: `DomainError` when |z| exceeds [`SERIES_RADIUS`]; `NonConvergence`
/// when the rule is not met within `max_terms` terms or a term overflows
/// double precision (possible for small beta, where the largest term is
/// ~exp(|z|^(1/beta))).  Within its convergence domain the series is exact up
/// to cancellation; see [`super::series_error_floor`] for the error envelope.
pub fn ml_series(req: &MlRequest, max_terms: usize) -> MlfResult<Complex64> {
    let z = req.z();
    let beta = req.beta();
    let r = z.norm();
    if r > SERIES_RADIUS {
        return Err(MlfError::DomainError(format!(
            "|z| = {r:.3} exceeds the series radius {SERIES_RADIUS}"
        )));
    }
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }

    let ln_r = r.ln();
    let phi = z.arg();
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    re.add(1.0); // j = 0 term

    for j in 1..=max_terms {
        let jf = j as f64;
        let log_mag = jf * ln_r - ln_gamma(beta * jf + 1.0);
        if log_mag > 700.0 {
            // the term would overflow; no double-precision sum can absorb it
            return Err(MlfError::NonConvergence { terms: j, z_abs: r, beta });
        }
        let mag = log_mag.exp();
        let partial = Complex64::new(re.value(), im.value()).norm();
        if mag <= req.tol() * partial {
            return Ok(Complex64::new(re.value(), im.value()));
        }
        let (s, c) = (jf * phi).sin_cos();
        re.add(mag * c);
        im.add(mag * s);
    }
    Err(MlfError::NonConvergence { terms: max_terms, z_abs: r, beta })
}
