//! The Mittag-Leffler function E_beta(z) for 0 < beta <= 1 and complex z.
//!
//! E_beta(z) = sum_{j>=0} z^j / Gamma(beta*j + 1)
//!
//! E_1(z) = exp(z), and for beta < 1 the function interpolates between
//! exponential and algebraic behaviour: along rays inside the sector
//! |arg z| < pi*beta/2 it grows/oscillates like exp(z^(1/beta))/beta, and
//! outside the Stokes sector |arg z| > pi*beta it decays like 1/(z*Gamma(1-beta)).
//!
//! Two evaluation paths are exposed:
//!
//! * [`ml_series`]: the defining power series with compensated (Neumaier)
//!   summation, each term assembled in log space as
//!   exp(j*ln|z| - ln Gamma(beta*j + 1)) so no intermediate overflows.
//!   The series is exact arithmetic-wise but suffers cancellation: its
//!   absolute error floor is ~exp(|z|^(1/beta)) * eps, the size of the
//!   largest term, which restricts it to small |z|^(1/beta).
//! * [`ml_contour`]: numerical inversion of the Laplace transform
//!   s^(beta-1) / (s^beta - z) on a parabolic contour, accurate over the
//!   whole plane and used everywhere the series is not trustworthy.
//!
//! [`ml`] dispatches between them and is what the rest of the crate calls.

mod contour;
mod series;

pub use contour::ml_contour;
pub use series::ml_series;

use num_complex::Complex64;
use thiserror::Error;

/// Largest |z| accepted by the series path.
pub const SERIES_RADIUS: f64 = 5.0;
/// Relative tolerance used by callers that do not pick their own.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Tolerances below double-precision resolution are rejected.
pub const MIN_TOLERANCE: f64 = 1e-14;
/// Term budget the dispatcher grants the series path.
pub const DEFAULT_MAX_TERMS: usize = 4_000;

/// Errors from Mittag-Leffler evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MlfError {
    /// Input outside the supported domain (order, tolerance, or radius).
    #[error("domain error: {0}")]
    DomainError(String),
    /// The series did not meet the tolerance within the term budget.
    #[error("series did not converge within {terms} terms (|z| = {z_abs:.3e}, beta = {beta})")]
    NonConvergence { terms: usize, z_abs: f64, beta: f64 },
}

pub type MlfResult<T> = Result<T, MlfError>;

/// A validated evaluation request: order in (0, 1], finite z, tolerance
/// no tighter than [`MIN_TOLERANCE`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlRequest {
    beta: f64,
    z: Complex64,
    tol: f64,
}

impl MlRequest {
    pub fn new(beta: f64, z: Complex64, tol: f64) -> MlfResult<Self> {
        if !beta.is_finite() || beta <= 0.0 || beta > 1.0 {
            return Err(MlfError::DomainError(format!(
                "order beta must lie in (0, 1], got {beta}"
            )));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(MlfError::DomainError(format!("argument must be finite, got {z}")));
        }
        if !tol.is_finite() || tol < MIN_TOLERANCE {
            return Err(MlfError::DomainError(format!(
                "tolerance {tol:e} is below double-precision resolution ({MIN_TOLERANCE:e})"
            )));
        }
        Ok(Self { beta, z, tol })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Evaluates E_beta(z) to relative accuracy ~tol.
///
/// Routing rules, in order:
/// * E_beta(conj z) = conj(E_beta(z)): arguments in the lower half-plane are
///   reflected, which makes the symmetry exact;
/// * z = 0 returns exactly 1 and beta = 1 returns exp(z);
/// * the series is used when |z| <= [`SERIES_RADIUS`] *and* its cancellation
///   floor exp(|z|^(1/beta)) * eps stays below the requested tolerance
///   (see [`series_error_floor`]); everything else goes to the contour.
pub fn ml(beta: f64, z: Complex64, tol: f64) -> MlfResult<Complex64> {
    let req = MlRequest::new(beta, z, tol)?;
    if z.im < 0.0 {
        let refl = MlRequest::new(beta, z.conj(), tol)?;
        return eval_upper(&refl).map(|v| v.conj());
    }
    eval_upper(&req)
}

fn eval_upper(req: &MlRequest) -> MlfResult<Complex64> {
    let z = req.z();
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if req.beta() == 1.0 {
        return Ok(z.exp());
    }
    let r = z.norm();
    if r <= SERIES_RADIUS && series_error_floor(req.beta(), r) <= 0.25 * req.tol() {
        ml_series(req, DEFAULT_MAX_TERMS)
    } else {
        ml_contour(req)
    }
}

/// Conservative relative-error floor of the double-precision series at radius r.
///
/// The largest series term is ~exp(X) with X = r^(1/beta); after cancellation
/// the result can be as small as ~exp(-r), so the floor is
/// exp(X) * K * eps / max(exp(-r), 1e-3) with K covering per-term rounding.
pub fn series_error_floor(beta: f64, r: f64) -> f64 {
    if r == 0.0 {
        return f64::EPSILON;
    }
    let x = r.powf(1.0 / beta);
    if x > 690.0 {
        return f64::INFINITY;
    }
    let magnitude_floor = (-r).exp().max(1e-3);
    x.exp() * 24.0 * f64::EPSILON / magnitude_floor
}
