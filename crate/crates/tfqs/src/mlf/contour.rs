//! Laplace-inversion contour evaluation of E_beta(z).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{MlRequest, MlfError, MlfResult};

/// Evaluates E_beta(z) anywhere in the plane by inverting the Laplace
/// transform of t -> E_beta(z t^beta),
///
///   E_beta(z) = 1/(2 pi i) * Int_C exp(s) s^(beta-1) / (s^beta - z) ds,
///
/// on the parabolic contour s(u) = mu (1 + iu)^2 with the trapezoid rule.
///
/// Parameter choice, balancing discretization against truncation for a
/// quadrature target eta = tol/10 with L = ln(1/eta):
///
/// * mu = min(L/2, 5); the cap bounds the exp(mu)*eps roundoff
///   amplification at the contour vertex to ~3e-14 absolute;
/// * 2N+1 nodes with N = ceil(u_max / h), u_max = sqrt(1 + L/mu), so the
///   tails are cut where |exp(s)| has decayed to eta;
/// * the step h obeys two strip constraints on the trapezoid error of the
///   integrand g(u), which decays like exp(-2 pi y / h) per unit of strip
///   half-width y, weighted by max |g| on the strip edge:
///   - above the axis |e^s| <= 1ish but g loses analyticity at y = 1
///     (the s = 0 branch point) or at the pole image when it sits there,
///     so h <= 2 pi d / (mu + L) with d <= 0.95 the available height;
///   - below the axis g is analytic much deeper but |e^s| grows like
///     exp(mu (1+y)^2), and minimizing mu (1+y)^2 - 2 pi y / h over y
///     gives h <= pi / (mu (1 + u_max)); when the pole image sits below
///     the axis at height rho - 1 the usable depth is capped first.
///
/// The resolvent has one pole on the principal sheet, s_p = z^(1/beta), when
/// |arg z| < pi beta.  Its image in the u-plane sits at height |1 - rho| with
/// rho = Re(sqrt(s_p)) / sqrt(mu); if it comes within 0.2 of the contour, mu
/// is re-chosen to restore that separation, and whenever rho > 1 (the pole
/// lies between the contour and the Bromwich line) its residue
/// exp(s_p)/beta is added explicitly.  This term carries the oscillatory or
/// growing part of E_beta; the contour sum carries the algebraic part.
pub fn ml_contour(req: &MlRequest) -> MlfResult<Complex64> {
    let z = req.z();
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if z.im < 0.0 {
        let refl = MlRequest::new(req.beta(), z.conj(), req.tol())?;
        return ml_contour(&refl).map(|v| v.conj());
    }
    let v = integrate(req.beta(), z, req.tol())?;
    if z.im == 0.0 {
        // E_beta maps the real axis to the real axis
        Ok(Complex64::new(v.re, 0.0))
    } else {
        Ok(v)
    }
}

fn integrate(beta: f64, z: Complex64, tol: f64) -> MlfResult<Complex64> {
    let eta = (0.1 * tol).clamp(5e-15, 1e-8);
    let lg = -eta.ln();
    let mut mu = (0.5 * lg).clamp(2.0, 5.0);

    let phi = z.arg(); // in [0, pi] after reflection
    let pole = if phi < PI * beta {
        Some(Complex64::from_polar(z.norm().powf(1.0 / beta), phi / beta))
    } else {
        None
    };

    let mut rho = 0.0;
    if let Some(sp) = pole {
        let w_re = sp.norm().sqrt() * (0.5 * sp.arg()).cos(); // Re sqrt(s_p)
        const DELTA: f64 = 0.2;
        rho = w_re / mu.sqrt();
        if (rho - 1.0).abs() < DELTA {
            let enclosing = (w_re / (1.0 + DELTA)).powi(2);
            let excluding = (w_re / (1.0 - DELTA)).powi(2);
            mu = if enclosing >= 1.0 { enclosing } else { excluding.min(7.0) };
            rho = w_re / mu.sqrt();
        }
    }

    let d_up = if pole.is_some() && rho < 1.0 {
        (1.0 - rho).min(0.95)
    } else {
        0.95
    };
    let u_max = (1.0 + lg / mu).sqrt();
    let mut h = (2.0 * PI * d_up / (mu + lg)).min(PI / (mu * (1.0 + u_max)));
    if pole.is_some() && rho > 1.0 {
        let d_dn = (0.8 * (rho - 1.0)).min(u_max);
        h = h.min(2.0 * PI * d_dn / (lg + mu * (1.0 + d_dn).powi(2)));
    }
    let half_n = (u_max / h).ceil() as i64;

    let mut acc = Complex64::new(0.0, 0.0);
    for k in -half_n..=half_n {
        let u = k as f64 * h;
        let v = Complex64::new(1.0, u);
        let s = v * v * mu;
        let ds = Complex64::new(0.0, 2.0 * mu) * v;
        let ln_s = s.ln();
        let sb = (ln_s * beta).exp();
        let sbm1 = (ln_s * (beta - 1.0)).exp();
        acc += s.exp() * sbm1 / (sb - z) * ds;
    }
    let mut result = acc * Complex64::new(0.0, -h / (2.0 * PI));

    if let Some(sp) = pole {
        if rho > 1.0 {
            result += sp.exp() / beta;
        }
    }
    if !result.re.is_finite() || !result.im.is_finite() {
        return Err(MlfError::DomainError(format!(
            "E_{beta}({z}) is outside the double-precision range"
        )));
    }
    Ok(result)
}
