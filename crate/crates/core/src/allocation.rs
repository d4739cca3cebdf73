//! User association, bandwidth splitting, SINR and per-user rate, plus the
//! exhaustive coordinated upper bound.
//!
//! Signal model, downlink only:
//!
//! * every loaded base station transmits at full power in its pool and points
//!   a beam at each user it serves;
//! * a user's signal is the serving link's received power with both ends on
//!   boresight, and its noise is taken over the user's bandwidth share;
//! * a base station's users hold equal, contiguous slices of its pool in user
//!   order (or the whole pool each when `full_pool_bandwidth` is set);
//! * each other loaded base station in the same pool interferes. On every
//!   part of the victim's slice it points the beam of whichever of its own
//!   users holds that part, so its transmit gain toward the victim is the
//!   overlap-weighted linear average of those beams. The victim's receive
//!   gain follows from the angle between the interferer and the serving base
//!   station.
//!
//! Idle base stations do not transmit.

use serde::{Deserialize, Serialize};

use crate::channel::{angle_off_boresight, dbm_to_mw, noise_power_dbm, AntennaModel, ChannelParams, LargeScale, LinkGains, LinkState};
use crate::error::{Error, Result};
use crate::geometry::{azimuth_deg, distance};
use crate::rng::rng_from_seed;
use crate::scenario::Network;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateParams {
    /// Shannon capacity rescaling factor.
    pub eta: f64,
    /// Half-duplex factor.
    pub duty_factor: f64,
    /// Fraction of resources spent on overhead.
    pub overhead_beta: f64,
    pub target_rate_bps: f64,
}

impl Default for RateParams {
    fn default() -> Self {
        Self {
            eta: 0.5,
            duty_factor: 0.5,
            overhead_beta: 0.2,
            target_rate_bps: 1e7,
        }
    }
}

impl RateParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::param(format!("eta must be in (0, 1], got {}", self.eta)));
        }
        if !(self.duty_factor > 0.0 && self.duty_factor <= 1.0) {
            return Err(Error::param(format!("duty_factor must be in (0, 1], got {}", self.duty_factor)));
        }
        if !(0.0..1.0).contains(&self.overhead_beta) {
            return Err(Error::param(format!("overhead_beta must be in [0, 1), got {}", self.overhead_beta)));
        }
        if !(self.target_rate_bps >= 0.0) {
            return Err(Error::param("target_rate_bps must be >= 0"));
        }
        Ok(())
    }
}

/// `eta * duty * (1 - beta) * bandwidth * log2(1 + gamma)`.
pub fn user_rate(gamma: f64, bandwidth_hz: f64, params: &RateParams) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::param(format!("SINR must be >= 0, got {gamma}")));
    }
    Ok(params.eta * params.duty_factor * (1.0 - params.overhead_beta) * bandwidth_hz * (1.0 + gamma).log2())
}

/// Long-term state of every (base station, user) pair in one drop.
#[derive(Debug, Clone)]
pub struct LinkTable {
    n_bs: usize,
    scale: Vec<LargeScale>,
    /// Azimuth of each user as seen from each base station, degrees.
    azimuth: Vec<f64>,
}

impl LinkTable {
    /// Draws every link of the network from one seeded stream, users in the
    /// outer loop and base stations in the inner loop.
    ///
    /// Base stations at identical positions (co-located towers) share one
    /// propagation path to each user: only the first of them draws, the
    /// others copy its state and shadowing.
    pub fn realize(net: &Network, params: &ChannelParams, seed: u64) -> Result<Self> {
        let n_bs = net.base_stations.len();
        let site: Vec<usize> = net
            .base_stations
            .iter()
            .enumerate()
            .map(|(i, b)| {
                net.base_stations[..i]
                    .iter()
                    .position(|o| o.position == b.position)
                    .unwrap_or(i)
            })
            .collect();
        let mut rng = rng_from_seed(seed);
        let mut scale = Vec::with_capacity(n_bs * net.users.len());
        let mut azimuth = Vec::with_capacity(n_bs * net.users.len());
        for ue in &net.users {
            let row = scale.len();
            for (i, bs) in net.base_stations.iter().enumerate() {
                if site[i] != i {
                    scale.push(scale[row + site[i]]);
                } else {
                    let d_m = distance(bs.position, ue.position, &net.region) * 1000.0;
                    scale.push(LargeScale::draw(d_m, params, &mut rng)?);
                }
                azimuth.push(azimuth_deg(bs.position, ue.position, &net.region));
            }
        }
        Ok(Self { n_bs, scale, azimuth })
    }

    /// Builds a table from explicit link states; `azimuth` is indexed like
    /// `scale`, `[ue * n_bs + bs]`.
    pub fn from_parts(n_bs: usize, scale: Vec<LargeScale>, azimuth: Vec<f64>) -> Result<Self> {
        if scale.len() != azimuth.len() || (n_bs == 0 && !scale.is_empty()) || (n_bs > 0 && !scale.len().is_multiple_of(n_bs)) {
            return Err(Error::param("link table dimensions do not match"));
        }
        Ok(Self { n_bs, scale, azimuth })
    }

    pub fn num_bs(&self) -> usize {
        self.n_bs
    }

    pub fn num_ue(&self) -> usize {
        self.scale.len().checked_div(self.n_bs).unwrap_or(0)
    }

    pub fn get(&self, bs: usize, ue: usize) -> &LargeScale {
        &self.scale[ue * self.n_bs + bs]
    }

    pub fn azimuth_deg(&self, bs: usize, ue: usize) -> f64 {
        self.azimuth[ue * self.n_bs + bs]
    }
}

/// Everything needed to turn an association into SINRs and rates.
#[derive(Debug, Clone, Copy)]
pub struct RadioContext<'a> {
    pub net: &'a Network,
    pub links: &'a LinkTable,
    pub antenna: &'a AntennaModel,
    pub tx_power_dbm: f64,
    pub noise_figure_db: f64,
    /// When false the interference sum is dropped (noise-only studies).
    pub interference: bool,
    /// Give every user the whole pool instead of an equal share of it.
    pub full_pool_bandwidth: bool,
}

impl RadioContext<'_> {
    fn serving_rx_dbm(&self, bs: usize, ue: usize) -> f64 {
        self.links.get(bs, ue).rx_power_dbm(self.antenna.boresight(), self.tx_power_dbm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Association {
    pub serving_bs: Vec<Option<usize>>,
    pub ue_bandwidth_hz: Vec<f64>,
    pub load: Vec<usize>,
}

impl Association {
    /// Counts loads for a serving map; bandwidths are left at zero until
    /// [`split_bandwidth`] runs.
    pub fn from_serving(serving_bs: Vec<Option<usize>>, num_bs: usize) -> Self {
        let mut load = vec![0; num_bs];
        for bs in serving_bs.iter().flatten() {
            load[*bs] += 1;
        }
        Self {
            ue_bandwidth_hz: vec![0.0; serving_bs.len()],
            serving_bs,
            load,
        }
    }
}

/// Attaches every user to the accessible base station with the largest
/// long-term received power, ignoring interference. Ties go to the lowest
/// index; users whose accessible links are all blocked stay unassociated.
pub fn associate_blind(ctx: &RadioContext<'_>) -> Association {
    let net = ctx.net;
    let serving = net
        .users
        .iter()
        .enumerate()
        .map(|(ue, user)| {
            let mut best: Option<(usize, f64)> = None;
            for bs in net.access.accessible(user.operator) {
                let p = ctx.serving_rx_dbm(bs, ue);
                if p == f64::NEG_INFINITY {
                    continue;
                }
                if best.is_none_or(|(_, b)| p > b) {
                    best = Some((bs, p));
                }
            }
            best.map(|(bs, _)| bs)
        })
        .collect();
    Association::from_serving(serving, net.base_stations.len())
}

/// Divides each loaded base station's pool equally among its users.
pub fn split_bandwidth(mut assoc: Association, ctx: &RadioContext<'_>) -> Association {
    for (ue, serving) in assoc.serving_bs.iter().enumerate() {
        assoc.ue_bandwidth_hz[ue] = match serving {
            Some(bs) => {
                let pool = ctx.net.pools.bs_bandwidth_hz(*bs);
                if ctx.full_pool_bandwidth {
                    pool
                } else {
                    pool / assoc.load[*bs] as f64
                }
            }
            None => 0.0,
        };
    }
    assoc
}

/// Users served by each base station, in user order.
fn served_users(assoc: &Association) -> Vec<Vec<usize>> {
    let mut served = vec![Vec::new(); assoc.load.len()];
    for (ue, bs) in assoc.serving_bs.iter().enumerate() {
        if let Some(bs) = bs {
            served[*bs].push(ue);
        }
    }
    served
}

/// Linear SINR of `ue` under `assoc`.
pub fn compute_sinr(ue: usize, assoc: &Association, ctx: &RadioContext<'_>) -> Result<f64> {
    let served = served_users(assoc);
    sinr_with(ue, assoc, &served, ctx)
}

fn sinr_with(ue: usize, assoc: &Association, served: &[Vec<usize>], ctx: &RadioContext<'_>) -> Result<f64> {
    let serving = assoc.serving_bs[ue].ok_or_else(|| Error::Domain(format!("user {ue} has no serving base station")))?;
    let signal = dbm_to_mw(ctx.serving_rx_dbm(serving, ue));
    let noise = dbm_to_mw(noise_power_dbm(assoc.ue_bandwidth_hz[ue], ctx.noise_figure_db)?);
    let interference = if ctx.interference {
        interference_mw(ue, serving, served, ctx)
    } else {
        0.0
    };
    Ok(signal / (noise + interference))
}

/// Fraction of the interval `[a0, a1)` covered by `[b0, b1)`.
fn overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0) / (a1 - a0)
}

fn interference_mw(ue: usize, serving: usize, served: &[Vec<usize>], ctx: &RadioContext<'_>) -> f64 {
    let antenna = ctx.antenna;
    let serving_az = ctx.links.azimuth_deg(serving, ue);
    let own = &served[serving];
    let (lo, hi) = if ctx.full_pool_bandwidth {
        (0.0, 1.0)
    } else {
        let k = own.iter().position(|&u| u == ue).expect("user is served") as f64;
        let n = own.len() as f64;
        (k / n, (k + 1.0) / n)
    };
    let mut total = 0.0;
    for (bs, users) in served.iter().enumerate() {
        if bs == serving || users.is_empty() || !ctx.net.pools.co_channel(bs, serving) {
            continue;
        }
        let link = ctx.links.get(bs, ue);
        if link.state == LinkState::Out {
            continue;
        }
        let victim_az = ctx.links.azimuth_deg(bs, ue);
        let n = users.len() as f64;
        let tx_lin: f64 = users
            .iter()
            .enumerate()
            .map(|(j, &u)| {
                let weight = if ctx.full_pool_bandwidth {
                    1.0 / n
                } else {
                    overlap(lo, hi, j as f64 / n, (j as f64 + 1.0) / n)
                };
                if weight == 0.0 {
                    return 0.0;
                }
                weight * dbm_to_mw(antenna.bs_gain_db(angle_off_boresight(ctx.links.azimuth_deg(bs, u), victim_az)))
            })
            .sum();
        let gains = LinkGains {
            tx_db: 10.0 * tx_lin.log10(),
            rx_db: antenna.ue_gain_db(angle_off_boresight(serving_az, victim_az)),
        };
        total += dbm_to_mw(link.rx_power_dbm(gains, ctx.tx_power_dbm));
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserResult {
    /// `-inf` for unassociated users.
    pub sinr_db: f64,
    pub rate_bps: f64,
    pub in_outage: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub association: Association,
    pub users: Vec<UserResult>,
    pub total_rate_bps: f64,
}

/// Loads, bandwidth split, SINR and rate for a complete serving map.
pub fn evaluate(serving: Vec<Option<usize>>, ctx: &RadioContext<'_>, rate: &RateParams) -> Result<Evaluation> {
    let assoc = split_bandwidth(Association::from_serving(serving, ctx.net.base_stations.len()), ctx);
    let served = served_users(&assoc);
    let mut users = Vec::with_capacity(assoc.serving_bs.len());
    let mut total = 0.0;
    for ue in 0..assoc.serving_bs.len() {
        let result = match assoc.serving_bs[ue] {
            Some(_) => {
                let gamma = sinr_with(ue, &assoc, &served, ctx)?;
                let r = user_rate(gamma, assoc.ue_bandwidth_hz[ue], rate)?;
                UserResult {
                    sinr_db: 10.0 * gamma.log10(),
                    rate_bps: r,
                    in_outage: r < rate.target_rate_bps,
                }
            }
            None => UserResult {
                sinr_db: f64::NEG_INFINITY,
                rate_bps: 0.0,
                in_outage: true,
            },
        };
        total += result.rate_bps;
        users.push(result);
    }
    Ok(Evaluation {
        association: assoc,
        users,
        total_rate_bps: total,
    })
}

/// Blind association followed by evaluation.
pub fn run_blind(ctx: &RadioContext<'_>, rate: &RateParams) -> Result<Evaluation> {
    evaluate(associate_blind(ctx).serving_bs, ctx, rate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    SumRate,
    /// Proportional fairness; any user at zero rate makes the objective `-inf`.
    SumLogRate,
}

impl Objective {
    pub fn score(self, eval: &Evaluation) -> f64 {
        match self {
            Objective::SumRate => eval.total_rate_bps,
            Objective::SumLogRate => eval.users.iter().map(|u| u.rate_bps.ln()).sum(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchLimits {
    pub max_ues: usize,
    pub max_bs_per_ue: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_ues: 8,
            max_bs_per_ue: 4,
        }
    }
}

/// Non-blocked accessible base stations of each user, or `[None]` when a
/// user has none.
pub fn candidate_sets(ctx: &RadioContext<'_>) -> Vec<Vec<Option<usize>>> {
    ctx.net
        .users
        .iter()
        .enumerate()
        .map(|(ue, user)| {
            let c: Vec<Option<usize>> = ctx
                .net
                .access
                .accessible(user.operator)
                .filter(|&bs| ctx.links.get(bs, ue).state != LinkState::Out)
                .map(Some)
                .collect();
            if c.is_empty() {
                vec![None]
            } else {
                c
            }
        })
        .collect()
}

/// Exhaustive search over every user-to-candidate assignment, maximizing
/// `objective`. Assignments are visited in lexicographic order and only a
/// strictly better score replaces the incumbent, so ties resolve to the
/// lexicographically smallest assignment.
pub fn coordinated_upper_bound(
    ctx: &RadioContext<'_>,
    rate: &RateParams,
    limits: SearchLimits,
    objective: Objective,
) -> Result<Evaluation> {
    let candidates = candidate_sets(ctx);
    if candidates.len() > limits.max_ues {
        return Err(Error::InstanceSize {
            what: "users",
            actual: candidates.len(),
            limit: limits.max_ues,
        });
    }
    if let Some(widest) = candidates.iter().map(Vec::len).max() {
        if widest > limits.max_bs_per_ue {
            return Err(Error::InstanceSize {
                what: "accessible base stations per user",
                actual: widest,
                limit: limits.max_bs_per_ue,
            });
        }
    }

    let n = candidates.len();
    let mut digits = vec![0usize; n];
    let mut best: Option<(f64, Evaluation)> = None;
    loop {
        let serving = digits.iter().zip(&candidates).map(|(&d, c)| c[d]).collect();
        let eval = evaluate(serving, ctx, rate)?;
        let score = objective.score(&eval);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, eval));
        }
        // odometer, last user fastest
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(best.expect("search space is never empty").1);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::LinkState;
    use crate::geometry::{Deployment, Point, Region};
    use crate::scenario::{Scenario, ScenarioKind};

    fn los(d_m: f64) -> LargeScale {
        LargeScale {
            state: LinkState::Los,
            path_loss_db: crate::channel::path_loss_db(d_m, LinkState::Los, &ChannelParams::default()).unwrap(),
            shadowing_db: 0.0,
        }
    }

    fn out() -> LargeScale {
        LargeScale {
            state: LinkState::Out,
            path_loss_db: f64::INFINITY,
            shadowing_db: 0.0,
        }
    }

    fn single_operator(bs: Vec<Point>, ue: Vec<Point>, kind: ScenarioKind) -> Network {
        let s = Scenario {
            kind,
            num_operators: 1,
            ..Default::default()
        };
        let dep = Deployment {
            operator_id: 0,
            bs_points: bs,
            ue_points: ue,
            bs_density: 0.0,
            ue_density: 0.0,
        };
        Network::from_deployments(&s, Region::default(), vec![dep], &[]).unwrap()
    }

    fn ctx<'a>(net: &'a Network, links: &'a LinkTable, antenna: &'a AntennaModel) -> RadioContext<'a> {
        RadioContext {
            net,
            links,
            antenna,
            tx_power_dbm: 30.0,
            noise_figure_db: 7.0,
            interference: true,
            full_pool_bandwidth: false,
        }
    }

    #[test]
    fn rate_examples() {
        let p = RateParams::default();
        assert_eq!(user_rate(0.0, 1e9, &p).unwrap(), 0.0);
        assert_eq!(user_rate(1.0, 1e9, &p).unwrap(), 2.0e8);
        assert!((user_rate(15.0, 1e9, &p).unwrap() - 8.0e8).abs() < 1e-6);
        assert!(user_rate(-0.1, 1e9, &p).is_err());
    }

    #[test]
    fn nearer_tower_wins_and_forced_single() {
        let net = single_operator(
            vec![Point::new(0.45, 0.5), Point::new(0.6, 0.5)],
            vec![Point::new(0.5, 0.5)],
            ScenarioKind::NoSharing,
        );
        let links = LinkTable::from_parts(2, vec![los(50.0), los(100.0)], vec![0.0, 180.0]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        assert_eq!(associate_blind(&c).serving_bs, vec![Some(0)]);

        let links = LinkTable::from_parts(2, vec![out(), los(100.0)], vec![0.0, 180.0]).unwrap();
        let c = ctx(&net, &links, &antenna);
        assert_eq!(associate_blind(&c).serving_bs, vec![Some(1)]);
    }

    #[test]
    fn equal_tie_goes_to_lowest_index() {
        let net = single_operator(vec![Point::new(0.4, 0.5), Point::new(0.6, 0.5)], vec![Point::new(0.5, 0.5)], ScenarioKind::NoSharing);
        let links = LinkTable::from_parts(2, vec![los(100.0), los(100.0)], vec![0.0, 180.0]).unwrap();
        let antenna = AntennaModel::default();
        assert_eq!(associate_blind(&ctx(&net, &links, &antenna)).serving_bs, vec![Some(0)]);
    }

    #[test]
    fn all_blocked_means_outage() {
        let net = single_operator(vec![Point::new(0.4, 0.5)], vec![Point::new(0.5, 0.5)], ScenarioKind::NoSharing);
        let links = LinkTable::from_parts(1, vec![out()], vec![0.0]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let eval = run_blind(&c, &RateParams::default()).unwrap();
        assert_eq!(eval.association.serving_bs, vec![None]);
        assert_eq!(eval.users[0].rate_bps, 0.0);
        assert!(eval.users[0].in_outage);
        assert!(matches!(compute_sinr(0, &eval.association, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn equal_split_and_conservation() {
        let ues: Vec<Point> = (0..4).map(|i| Point::new(0.5, 0.4 + 0.01 * i as f64)).collect();
        let net = single_operator(vec![Point::new(0.5, 0.5)], ues, ScenarioKind::Spectrum);
        let links = LinkTable::from_parts(1, vec![los(50.0); 4], vec![0.0; 4]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let a = split_bandwidth(associate_blind(&c), &c);
        // one operator sharing spectrum owns a 500 MHz pool
        assert_eq!(a.ue_bandwidth_hz, vec![1.25e8; 4]);
        assert_eq!(a.ue_bandwidth_hz.iter().sum::<f64>(), net.pools.bandwidth_hz[0]);
        let full = RadioContext { full_pool_bandwidth: true, ..c };
        assert_eq!(split_bandwidth(associate_blind(&full), &full).ue_bandwidth_hz, vec![5e8; 4]);
    }

    #[test]
    fn sinr_without_interferers_is_snr() {
        let net = single_operator(vec![Point::new(0.5, 0.5)], vec![Point::new(0.6, 0.5)], ScenarioKind::NoSharing);
        let links = LinkTable::from_parts(1, vec![los(100.0)], vec![0.0]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let a = split_bandwidth(associate_blind(&c), &c);
        let gamma = compute_sinr(0, &a, &c).unwrap();
        let snr = dbm_to_mw(-41.4) / dbm_to_mw(noise_power_dbm(5e8, 7.0).unwrap());
        assert!((gamma / snr - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blocked_or_idle_interferers_contribute_nothing() {
        // Two users, two towers; user 1 is blocked from both towers, so tower 1 idles.
        let net = single_operator(
            vec![Point::new(0.5, 0.5), Point::new(0.52, 0.5)],
            vec![Point::new(0.6, 0.5), Point::new(0.9, 0.9)],
            ScenarioKind::NoSharing,
        );
        let links = LinkTable::from_parts(2, vec![los(100.0), los(80.0), out(), out()], vec![0.0, 0.0, 0.0, 0.0]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let eval = evaluate(vec![Some(0), None], &c, &RateParams::default()).unwrap();
        let quiet = RadioContext { interference: false, ..c };
        let eval_quiet = evaluate(vec![Some(0), None], &quiet, &RateParams::default()).unwrap();
        assert_eq!(eval.users[0], eval_quiet.users[0]);
    }

    #[test]
    fn interferer_beam_follows_overlapping_slice() {
        // Tower 1 serves users 2 and 3; its beam to user 2 also covers users 0 and 1.
        let net = single_operator(
            vec![Point::new(0.5, 0.5), Point::new(0.5, 0.4)],
            (0..4).map(|i| Point::new(0.6, 0.5 + 0.01 * i as f64)).collect(),
            ScenarioKind::NoSharing,
        );
        let azimuth = vec![0.0, 90.0, 10.0, 90.0, 200.0, 90.0, 200.0, 270.0];
        let links = LinkTable::from_parts(2, vec![los(100.0); 8], azimuth).unwrap();
        let antenna = AntennaModel::default();
        let pl = los(100.0).path_loss_db;
        let signal = dbm_to_mw(30.0 + 20.0 + 10.0 - pl);
        let noise = dbm_to_mw(noise_power_dbm(2.5e8, 7.0).unwrap());
        let serving = vec![Some(0), Some(0), Some(1), Some(1)];

        let c = ctx(&net, &links, &antenna);
        let a = split_bandwidth(Association::from_serving(serving.clone(), 2), &c);
        let main = dbm_to_mw(30.0 + 20.0 - 10.0 - pl);
        let side = dbm_to_mw(30.0 - 10.0 - 10.0 - pl);
        assert!((compute_sinr(0, &a, &c).unwrap() / (signal / (noise + main)) - 1.0).abs() < 1e-12);
        assert!((compute_sinr(1, &a, &c).unwrap() / (signal / (noise + side)) - 1.0).abs() < 1e-12);

        let full = RadioContext { full_pool_bandwidth: true, ..c };
        let a = split_bandwidth(Association::from_serving(serving, 2), &full);
        let noise = dbm_to_mw(noise_power_dbm(5e8, 7.0).unwrap());
        let avg = (main + side) / 2.0;
        for ue in 0..2 {
            assert!((compute_sinr(ue, &a, &full).unwrap() / (signal / (noise + avg)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn coordinated_refuses_oversize() {
        let ues: Vec<Point> = (0..9).map(|i| Point::new(0.1 * i as f64, 0.5)).collect();
        let net = single_operator(vec![Point::new(0.5, 0.5)], ues, ScenarioKind::NoSharing);
        let links = LinkTable::from_parts(1, vec![los(50.0); 9], vec![0.0; 9]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let err = coordinated_upper_bound(&c, &RateParams::default(), SearchLimits::default(), Objective::SumRate).unwrap_err();
        assert!(matches!(err, Error::InstanceSize { .. }));
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn singleton_search_equals_blind() {
        let net = single_operator(vec![Point::new(0.5, 0.5)], vec![Point::new(0.55, 0.5)], ScenarioKind::NoSharing);
        let links = LinkTable::from_parts(1, vec![los(50.0)], vec![0.0]).unwrap();
        let antenna = AntennaModel::default();
        let c = ctx(&net, &links, &antenna);
        let rate = RateParams::default();
        let ub = coordinated_upper_bound(&c, &rate, SearchLimits::default(), Objective::SumRate).unwrap();
        assert_eq!(ub, run_blind(&c, &rate).unwrap());
    }
}
