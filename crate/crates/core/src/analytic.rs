//! Closed-form densification laws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingInputs {
    /// Base stations per km² of one operator.
    pub rho: f64,
    pub num_operators: usize,
    pub total_bandwidth_hz: f64,
    pub num_ue: usize,
    pub num_bs: usize,
    pub alpha_pl: f64,
    pub coverage_area_km2: f64,
}

/// Bandwidth available to one user. With sharing every user sees the whole
/// band `W`; without it each operator keeps `W / M`.
pub fn bandwidth_per_ue(total_bandwidth_hz: f64, num_bs: usize, num_ue: usize, num_operators: usize, sharing: bool) -> Result<f64> {
    if num_ue == 0 {
        return Err(Error::param("num_ue must be > 0"));
    }
    if num_operators == 0 {
        return Err(Error::param("num_operators must be > 0"));
    }
    let shared = total_bandwidth_hz * num_bs as f64 / num_ue as f64;
    Ok(if sharing { shared } else { shared / num_operators as f64 })
}

/// Effective tower density seen by a user when `num_operators` pool everything.
pub fn effective_density(rho: f64, num_operators: usize) -> f64 {
    rho * num_operators as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    InterferenceLimited,
    PowerLimited,
}

/// Exponent `e` in `R_UE = O(rho^e)`.
pub fn rate_scaling_exponent(regime: Regime, alpha_pl: f64) -> Result<f64> {
    if !(alpha_pl > 0.0) {
        return Err(Error::param("path-loss exponent must be > 0"));
    }
    Ok(match regime {
        Regime::InterferenceLimited => 1.0,
        Regime::PowerLimited => alpha_pl / 2.0,
    })
}

/// `max(1 - A_c * rho, 0)`: fraction of users outside every cell when each
/// cell covers a fixed area.
pub fn outage_fraction(coverage_area_km2: f64, rho: f64) -> Result<f64> {
    if !(coverage_area_km2 > 0.0) {
        return Err(Error::param("coverage area must be > 0"));
    }
    if !(rho >= 0.0) {
        return Err(Error::param("density must be >= 0"));
    }
    Ok((1.0 - coverage_area_km2 * rho).max(0.0))
}

/// Mean distance (km) from a typical point to the nearest point of a PPP of
/// intensity `rho`, `1 / (2 sqrt(rho))`.
pub fn nearest_distance_scaling(rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::param("density must be > 0"));
    }
    Ok(0.5 / rho.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandwidth_examples() {
        assert_eq!(bandwidth_per_ue(1e9, 30, 200, 1, true).unwrap(), bandwidth_per_ue(1e9, 30, 200, 1, false).unwrap());
        assert_eq!(bandwidth_per_ue(1e9, 30, 200, 2, true).unwrap(), 1.5e8);
        assert_eq!(bandwidth_per_ue(1e9, 30, 200, 2, false).unwrap(), 7.5e7);
        assert!(bandwidth_per_ue(1e9, 30, 0, 2, true).is_err());
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(rate_scaling_exponent(Regime::InterferenceLimited, 2.7).unwrap(), 1.0);
        assert!((rate_scaling_exponent(Regime::PowerLimited, 2.7).unwrap() - 1.35).abs() < 1e-15);
        assert_eq!(rate_scaling_exponent(Regime::PowerLimited, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn outage_examples() {
        assert_eq!(outage_fraction(0.03, 40.0).unwrap(), 0.0);
        assert!((outage_fraction(0.02, 30.0).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(outage_fraction(0.02, 0.0).unwrap(), 1.0);
        assert_eq!(outage_fraction(0.02, 50.0).unwrap(), 0.0);
    }

    #[test]
    fn nearest_distance_examples() {
        assert!((nearest_distance_scaling(30.0).unwrap() - 0.0913).abs() < 1e-4);
        assert_eq!(nearest_distance_scaling(1.0).unwrap(), 0.5);
        assert_eq!(nearest_distance_scaling(4.0).unwrap() * 2.0, nearest_distance_scaling(1.0).unwrap());
        assert_eq!(effective_density(30.0, 2), 60.0);
    }
}
