//! Statistical 28 GHz link model: blockage state, log-distance path loss,
//! lognormal shadowing and sectored antenna gains.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Thermal noise density at 290 K in dBm/Hz.
pub const THERMAL_NOISE_DBM_HZ: f64 = -174.0;

/// Distances below this are clamped before evaluating path loss.
pub const MIN_DISTANCE_M: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkState {
    Los,
    Nlos,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutageModel {
    /// Deterministic blockage outside a disc of area `hard_coverage_area_km2`.
    HardRadius,
    /// Outage probability `max(0, 1 - exp(outage_offset - d * outage_decay_per_m))`,
    /// capped so that the three state probabilities still sum to one.
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelParams {
    pub carrier_ghz: f64,
    pub pl_exponent_los: f64,
    pub pl_exponent_nlos: f64,
    /// Path loss at 1 m.
    pub pl_intercept_db: f64,
    pub shadow_sigma_los_db: f64,
    pub shadow_sigma_nlos_db: f64,
    pub outage_model: OutageModel,
    pub hard_coverage_area_km2: f64,
    pub los_decay_per_m: f64,
    pub outage_decay_per_m: f64,
    pub outage_offset: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            carrier_ghz: 28.0,
            pl_exponent_los: 2.0,
            pl_exponent_nlos: 2.7,
            pl_intercept_db: 61.4,
            shadow_sigma_los_db: 4.0,
            shadow_sigma_nlos_db: 7.0,
            outage_model: OutageModel::HardRadius,
            hard_coverage_area_km2: 0.03,
            los_decay_per_m: 1.0 / 67.1,
            outage_decay_per_m: 1.0 / 30.0,
            outage_offset: 5.2,
        }
    }
}

/// Free-space loss at 1 m, `20 log10(4 pi f / c)`.
pub fn friis_intercept_db(carrier_ghz: f64) -> f64 {
    20.0 * (4.0 * std::f64::consts::PI * carrier_ghz * 1e9 / SPEED_OF_LIGHT).log10()
}

impl ChannelParams {
    /// Checks the documented parameter ranges: exponents >= 2, non-negative
    /// shadowing and decay rates, positive coverage area, and an intercept
    /// within 3 dB of free space at the carrier.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.carrier_ghz,
            self.pl_exponent_los,
            self.pl_exponent_nlos,
            self.pl_intercept_db,
            self.shadow_sigma_los_db,
            self.shadow_sigma_nlos_db,
            self.hard_coverage_area_km2,
            self.los_decay_per_m,
            self.outage_decay_per_m,
            self.outage_offset,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("channel parameters must be finite"));
        }
        if self.carrier_ghz <= 0.0 {
            return Err(Error::param("carrier_ghz must be > 0"));
        }
        if self.pl_exponent_los < 2.0 || self.pl_exponent_nlos < 2.0 {
            return Err(Error::param("path-loss exponents must be >= 2"));
        }
        if self.shadow_sigma_los_db < 0.0 || self.shadow_sigma_nlos_db < 0.0 {
            return Err(Error::param("shadowing sigmas must be >= 0"));
        }
        if self.hard_coverage_area_km2 <= 0.0 {
            return Err(Error::param("hard_coverage_area_km2 must be > 0"));
        }
        if self.los_decay_per_m < 0.0 || self.outage_decay_per_m < 0.0 {
            return Err(Error::param("decay rates must be >= 0"));
        }
        let friis = friis_intercept_db(self.carrier_ghz);
        if (self.pl_intercept_db - friis).abs() > 3.0 {
            return Err(Error::param(format!(
                "pl_intercept_db {} is more than 3 dB from free space at {} GHz ({friis:.2} dB)",
                self.pl_intercept_db, self.carrier_ghz
            )));
        }
        Ok(())
    }

    /// Radius in metres beyond which the hard-radius model blocks every link.
    pub fn hard_outage_radius_m(&self) -> f64 {
        (self.hard_coverage_area_km2 / std::f64::consts::PI).sqrt() * 1000.0
    }

    pub fn exponent(&self, state: LinkState) -> Option<f64> {
        match state {
            LinkState::Los => Some(self.pl_exponent_los),
            LinkState::Nlos => Some(self.pl_exponent_nlos),
            LinkState::Out => None,
        }
    }

    pub fn shadow_sigma_db(&self, state: LinkState) -> f64 {
        match state {
            LinkState::Los => self.shadow_sigma_los_db,
            LinkState::Nlos => self.shadow_sigma_nlos_db,
            LinkState::Out => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateProbabilities {
    pub los: f64,
    pub nlos: f64,
    pub out: f64,
}

/// Analytic link-state probabilities at `distance_m`.
pub fn state_probabilities(distance_m: f64, params: &ChannelParams) -> Result<StateProbabilities> {
    if !(distance_m >= 0.0) {
        return Err(Error::param(format!("distance must be >= 0, got {distance_m}")));
    }
    let p_los = (-distance_m * params.los_decay_per_m).exp();
    let probs = match params.outage_model {
        OutageModel::HardRadius => {
            if distance_m > params.hard_outage_radius_m() {
                StateProbabilities { los: 0.0, nlos: 0.0, out: 1.0 }
            } else {
                StateProbabilities { los: p_los, nlos: 1.0 - p_los, out: 0.0 }
            }
        }
        OutageModel::Exponential => {
            let raw = (1.0 - (params.outage_offset - distance_m * params.outage_decay_per_m).exp()).max(0.0);
            let out = raw.min(1.0 - p_los);
            StateProbabilities {
                los: p_los,
                nlos: 1.0 - p_los - out,
                out,
            }
        }
    };
    Ok(probs)
}

/// Draws a link state. A single uniform variate is compared against the
/// cumulative probabilities in the order LOS, OUT, NLOS.
pub fn link_state<R: Rng + ?Sized>(distance_m: f64, params: &ChannelParams, rng: &mut R) -> Result<LinkState> {
    let probs = state_probabilities(distance_m, params)?;
    if probs.out >= 1.0 {
        return Ok(LinkState::Out);
    }
    let u: f64 = rng.gen();
    Ok(if u < probs.los {
        LinkState::Los
    } else if u < probs.los + probs.out {
        LinkState::Out
    } else {
        LinkState::Nlos
    })
}

/// `intercept + 10 * exponent(state) * log10(max(d, 1 m))`.
pub fn path_loss_db(distance_m: f64, state: LinkState, params: &ChannelParams) -> Result<f64> {
    let exponent = params
        .exponent(state)
        .ok_or_else(|| Error::Domain("path loss is undefined for a blocked link".into()))?;
    if !(distance_m >= 0.0) {
        return Err(Error::param(format!("distance must be >= 0, got {distance_m}")));
    }
    let d = distance_m.max(MIN_DISTANCE_M);
    Ok(params.pl_intercept_db + 10.0 * exponent * d.log10())
}

/// Sectored ("flat-top") pattern: mainlobe gain within half the beamwidth of
/// boresight, inclusive, sidelobe gain elsewhere.
pub fn beam_gain_db(angle_off_boresight_deg: f64, mainlobe_db: f64, sidelobe_db: f64, beamwidth_deg: f64) -> f64 {
    if angle_off_boresight_deg <= 0.5 * beamwidth_deg {
        mainlobe_db
    } else {
        sidelobe_db
    }
}

/// Absolute angle between two azimuths, folded into [0, 180].
pub fn angle_off_boresight(boresight_deg: f64, target_deg: f64) -> f64 {
    let d = (target_deg - boresight_deg).rem_euclid(360.0);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AntennaModel {
    pub bs_mainlobe_gain_db: f64,
    pub bs_sidelobe_gain_db: f64,
    pub bs_beamwidth_deg: f64,
    pub ue_mainlobe_gain_db: f64,
    pub ue_sidelobe_gain_db: f64,
    pub ue_beamwidth_deg: f64,
}

impl Default for AntennaModel {
    fn default() -> Self {
        Self {
            bs_mainlobe_gain_db: 20.0,
            bs_sidelobe_gain_db: -10.0,
            bs_beamwidth_deg: 10.0,
            ue_mainlobe_gain_db: 10.0,
            ue_sidelobe_gain_db: -10.0,
            ue_beamwidth_deg: 30.0,
        }
    }
}

impl AntennaModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.bs_mainlobe_gain_db > self.bs_sidelobe_gain_db && self.ue_mainlobe_gain_db > self.ue_sidelobe_gain_db) {
            return Err(Error::param("mainlobe gain must exceed sidelobe gain"));
        }
        for bw in [self.bs_beamwidth_deg, self.ue_beamwidth_deg] {
            if !(bw > 0.0 && bw <= 360.0) {
                return Err(Error::param(format!("beamwidth must be in (0, 360], got {bw}")));
            }
        }
        Ok(())
    }

    pub fn bs_gain_db(&self, angle_deg: f64) -> f64 {
        beam_gain_db(angle_deg, self.bs_mainlobe_gain_db, self.bs_sidelobe_gain_db, self.bs_beamwidth_deg)
    }

    pub fn ue_gain_db(&self, angle_deg: f64) -> f64 {
        beam_gain_db(angle_deg, self.ue_mainlobe_gain_db, self.ue_sidelobe_gain_db, self.ue_beamwidth_deg)
    }

    /// Gains of a serving link, both ends aligned on boresight.
    pub fn boresight(&self) -> LinkGains {
        LinkGains {
            tx_db: self.bs_mainlobe_gain_db,
            rx_db: self.ue_mainlobe_gain_db,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGains {
    pub tx_db: f64,
    pub rx_db: f64,
}

/// The gain-independent part of a link: state, path loss and shadowing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeScale {
    pub state: LinkState,
    pub path_loss_db: f64,
    pub shadowing_db: f64,
}

impl LargeScale {
    pub fn draw<R: Rng + ?Sized>(distance_m: f64, params: &ChannelParams, rng: &mut R) -> Result<Self> {
        let state = link_state(distance_m, params, rng)?;
        if state == LinkState::Out {
            return Ok(Self {
                state,
                path_loss_db: f64::INFINITY,
                shadowing_db: 0.0,
            });
        }
        let path_loss_db = path_loss_db(distance_m, state, params)?;
        let sigma = params.shadow_sigma_db(state);
        let shadowing_db = if sigma > 0.0 {
            Normal::new(0.0, sigma)
                .map_err(|e| Error::param(e.to_string()))?
                .sample(rng)
        } else {
            0.0
        };
        Ok(Self {
            state,
            path_loss_db,
            shadowing_db,
        })
    }

    pub fn with_gains(&self, gains: LinkGains, tx_power_dbm: f64) -> LinkSample {
        LinkSample::compose(self.state, self.path_loss_db, self.shadowing_db, gains, tx_power_dbm)
    }

    /// Received power in dBm for the given gains, `-inf` when blocked.
    pub fn rx_power_dbm(&self, gains: LinkGains, tx_power_dbm: f64) -> f64 {
        if self.state == LinkState::Out {
            f64::NEG_INFINITY
        } else {
            tx_power_dbm + gains.tx_db + gains.rx_db - self.path_loss_db - self.shadowing_db
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub state: LinkState,
    pub path_loss_db: f64,
    pub shadowing_db: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    pub rx_power_dbm: f64,
}

impl LinkSample {
    fn compose(state: LinkState, path_loss_db: f64, shadowing_db: f64, gains: LinkGains, tx_power_dbm: f64) -> Self {
        let scale = LargeScale {
            state,
            path_loss_db,
            shadowing_db,
        };
        Self {
            state,
            path_loss_db,
            shadowing_db,
            tx_gain_db: gains.tx_db,
            rx_gain_db: gains.rx_db,
            rx_power_dbm: scale.rx_power_dbm(gains, tx_power_dbm),
        }
    }
}

/// Realizes one link at `distance_m` with the given antenna gains.
///
/// Serving links pass [`AntennaModel::boresight`]; interfering links pass the
/// gains implied by the geometry of the current association.
pub fn realize_link<R: Rng + ?Sized>(
    distance_m: f64,
    gains: LinkGains,
    tx_power_dbm: f64,
    params: &ChannelParams,
    rng: &mut R,
) -> Result<LinkSample> {
    Ok(LargeScale::draw(distance_m, params, rng)?.with_gains(gains, tx_power_dbm))
}

/// Thermal noise power over `bandwidth_hz` plus the receiver noise figure.
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0) {
        return Err(Error::param(format!("bandwidth must be > 0, got {bandwidth_hz}")));
    }
    Ok(THERMAL_NOISE_DBM_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db)
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}
