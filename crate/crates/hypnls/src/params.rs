use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Model parameters: dimension d ≥ 2 of the hyperbolic space ℍ^d and the
/// nonlinearity exponent σ of u|u|^{2σ}.
///
/// The half sum of positive roots ρ = (d-1)/2 is stored explicitly because
/// every spectral formula (multiplier λ² + ρ², decay envelopes e^{-ρr},
/// Plancherel density) is written in terms of it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d: usize,
    pub sigma: f64,
    pub rho: f64,
}

impl ModelParams {
    /// Validates d ≥ 2 and the energy-subcritical window for σ:
    /// 0 < σ < 2/(d-2) for d ≥ 3, any σ > 0 for d = 2.
    pub fn new(d: usize, sigma: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension d = {d} not supported; need d >= 2"
            )));
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma = {sigma} must be positive and finite"
            )));
        }
        if d >= 3 {
            let cap = 2.0 / (d as f64 - 2.0);
            if sigma >= cap {
                return Err(Error::InvalidParameter(format!(
                    "sigma = {sigma} outside energy-subcritical range (0, {cap}) for d = {d}"
                )));
            }
        }
        Ok(Self {
            d,
            sigma,
            rho: (d as f64 - 1.0) / 2.0,
        })
    }

    /// Surface measure of the unit sphere S^{d-1}: ω_{d-1} = 2 π^{d/2} / Γ(d/2).
    pub fn sphere_area(&self) -> f64 {
        let half_d = self.d as f64 / 2.0;
        2.0 * std::f64::consts::PI.powf(half_d) / crate::special::gamma_real(half_d)
    }
}
