//! The visibility constant: L^p angular mean of |cos|.

use crate::error::{PhaseLabError, Result};
use crate::numeric::{adaptive_simpson, beta};

/// `C_p = ((1/2pi) Int_0^{2pi} |cos t|^p dt)^{1/p}`, the factor by which fast
/// interference fringes average under an L^p measurement.
///
/// Computed by adaptive quadrature on a quarter period and cross-checked
/// against the closed form `((1/pi) B((p+1)/2, 1/2))^{1/p}`; the two routes
/// must agree to 1e-10 or an error is raised.
pub fn visibility_constant(p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(PhaseLabError::InvalidParameter(format!(
            "visibility constant requires finite p >= 1, got {p}"
        )));
    }
    let pi = std::f64::consts::PI;
    let mean = adaptive_simpson(&|t: f64| t.cos().abs().powf(p), 0.0, 0.5 * pi, 1e-14) * 2.0 / pi;
    let quadrature = mean.powf(1.0 / p);
    let closed_form = (beta(0.5 * (p + 1.0), 0.5) / pi).powf(1.0 / p);
    if (quadrature - closed_form).abs() > 1e-10 {
        return Err(PhaseLabError::QuadratureNotConverged(format!(
            "visibility constant routes disagree at p = {p}: {quadrature} vs {closed_form}"
        )));
    }
    Ok(quadrature)
}
