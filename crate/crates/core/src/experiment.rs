//! Monte Carlo orchestration: single drops, four-scenario comparisons,
//! density sweeps and blind-versus-coordinated studies.
//!
//! Drop `k` of any run uses seed `child_seed(master_seed, k)`, so a sweep
//! reuses the same per-drop seeds at every density (common random numbers).
//! Drops run on the rayon pool and are merged in drop order.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::allocation::{coordinated_upper_bound, run_blind, Evaluation, LinkTable, RadioContext};
use crate::config::{Allocator, ExperimentConfig};
use crate::error::{Error, Result};
use crate::geometry::{uniform_points, Deployment, Region};
use crate::metrics::{bootstrap_ci, fit_scaling_exponent, mean, outage_rate, EmpiricalCdf, SweepResult};
use crate::rng::{child_seed, rng_from_seed, Stream};
use crate::scenario::{build_scenario, shared_bs_selection, Network, Scenario, ScenarioKind};

pub fn drop_seed(master_seed: u64, drop: u64) -> u64 {
    child_seed(master_seed, drop)
}

fn context<'a>(cfg: &'a ExperimentConfig, net: &'a Network, links: &'a LinkTable) -> RadioContext<'a> {
    RadioContext {
        net,
        links,
        antenna: &cfg.antenna,
        tx_power_dbm: cfg.tx_power_dbm,
        noise_figure_db: cfg.noise_figure_db,
        interference: cfg.interference,
        full_pool_bandwidth: cfg.allocation.full_pool_bandwidth,
    }
}

/// Runs the configured allocator on a realized network.
pub fn allocate(cfg: &ExperimentConfig, net: &Network, links: &LinkTable) -> Result<Evaluation> {
    let ctx = context(cfg, net, links);
    match cfg.allocation.allocator {
        Allocator::Blind => run_blind(&ctx, &cfg.rate),
        Allocator::Ub => coordinated_upper_bound(&ctx, &cfg.rate, cfg.allocation.limits, cfg.allocation.objective),
    }
}

/// Draws the network and link table of one drop.
pub fn realize_drop(cfg: &ExperimentConfig, kind: ScenarioKind, bs_density: f64, seed: u64) -> Result<(Network, LinkTable)> {
    let scenario = Scenario { kind, ..cfg.scenario.clone() };
    let net = build_scenario(&scenario, &cfg.region, bs_density, cfg.densities.ue_per_km2, seed)?;
    let links = LinkTable::realize(&net, &cfg.channel, Stream::Links.seed(seed))?;
    Ok((net, links))
}

/// Draws and evaluates one drop.
pub fn simulate_drop(cfg: &ExperimentConfig, kind: ScenarioKind, bs_density: f64, seed: u64) -> Result<Evaluation> {
    let (net, links) = realize_drop(cfg, kind, bs_density, seed)?;
    allocate(cfg, &net, &links)
}

/// Per-user samples pooled over drops, in drop order.
#[derive(Debug, Clone, PartialEq)]
pub struct PooledUsers {
    pub sinr_db: Vec<f64>,
    pub rate_bps: Vec<f64>,
}

fn pooled_run(cfg: &ExperimentConfig, kind: ScenarioKind, bs_density: f64, drops: usize) -> Result<PooledUsers> {
    let per_drop = (0..drops as u64)
        .into_par_iter()
        .map(|k| simulate_drop(cfg, kind, bs_density, drop_seed(cfg.master_seed, k)))
        .collect::<Result<Vec<_>>>()?;
    let mut pooled = PooledUsers {
        sinr_db: Vec::new(),
        rate_bps: Vec::new(),
    };
    for eval in per_drop {
        for u in eval.users {
            pooled.sinr_db.push(u.sinr_db);
            pooled.rate_bps.push(u.rate_bps);
        }
    }
    Ok(pooled)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub kind: ScenarioKind,
    pub users: usize,
    pub median_sinr_db: f64,
    pub median_rate_bps: f64,
    pub p05_rate_bps: f64,
    pub mean_rate_bps: f64,
    pub outage_fraction: f64,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub kind: ScenarioKind,
    pub users: PooledUsers,
    pub sinr_cdf: EmpiricalCdf,
    pub rate_cdf: EmpiricalCdf,
    pub summary: ScenarioSummary,
}

/// Pools `cfg.drops` drops of one sharing configuration at the configured density.
pub fn run_scenario(cfg: &ExperimentConfig, kind: ScenarioKind) -> Result<ScenarioOutcome> {
    let users = pooled_run(cfg, kind, cfg.densities.bs_per_km2, cfg.drops)?;
    let sinr_cdf = EmpiricalCdf::new(&users.sinr_db)?;
    let rate_cdf = EmpiricalCdf::new(&users.rate_bps)?;
    let summary = ScenarioSummary {
        kind,
        users: users.rate_bps.len(),
        median_sinr_db: sinr_cdf.median(),
        median_rate_bps: rate_cdf.median(),
        p05_rate_bps: rate_cdf.percentile(0.05)?,
        mean_rate_bps: mean(&users.rate_bps),
        outage_fraction: outage_rate(&users.rate_bps, cfg.rate.target_rate_bps)?,
    };
    Ok(ScenarioOutcome {
        kind,
        users,
        sinr_cdf,
        rate_cdf,
        summary,
    })
}

pub fn run_scenarios(cfg: &ExperimentConfig, kinds: &[ScenarioKind]) -> Result<Vec<ScenarioOutcome>> {
    kinds.iter().map(|&k| run_scenario(cfg, k)).collect()
}

/// Sweep output together with the pooled per-user rates behind each point.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub result: SweepResult,
    pub rates: Vec<Vec<f64>>,
}

impl SweepRun {
    /// 99% bootstrap interval of the outage fraction at each density.
    pub fn outage_ci(&self, target_bps: f64, resamples: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
        self.rates
            .iter()
            .enumerate()
            .map(|(i, r)| {
                bootstrap_ci(
                    r,
                    |s| s.iter().filter(|&&x| x < target_bps).count() as f64 / s.len() as f64,
                    resamples,
                    0.99,
                    child_seed(seed, i as u64),
                )
            })
            .collect()
    }

    /// 99% bootstrap interval of the median rate at each density.
    pub fn median_ci(&self, resamples: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
        self.rates
            .iter()
            .enumerate()
            .map(|(i, r)| {
                bootstrap_ci(
                    r,
                    |s| EmpiricalCdf::new(s).map(|c| c.median()).unwrap_or(f64::NAN),
                    resamples,
                    0.99,
                    child_seed(seed, i as u64),
                )
            })
            .collect()
    }
}

/// Density sweep of the configured scenario: for each base-station density,
/// pools per-user rates over `drops` drops.
pub fn run_sweep(cfg: &ExperimentConfig, densities: &[f64], drops: usize) -> Result<SweepRun> {
    if densities.is_empty() {
        return Err(Error::param("sweep needs at least one density"));
    }
    if drops == 0 {
        return Err(Error::param("sweep needs at least one drop"));
    }
    let mut result = SweepResult {
        densities: densities.to_vec(),
        median_rate: Vec::new(),
        p05_rate: Vec::new(),
        mean_rate: Vec::new(),
        outage_fraction: Vec::new(),
        fitted_exponent: None,
    };
    let mut rates = Vec::with_capacity(densities.len());
    for &rho in densities {
        let pooled = pooled_run(cfg, cfg.scenario.kind, rho, drops)?;
        if pooled.rate_bps.is_empty() {
            return Err(Error::EmptyPopulation(format!("no users realized at density {rho}")));
        }
        let cdf = EmpiricalCdf::new(&pooled.rate_bps)?;
        result.median_rate.push(cdf.median());
        result.p05_rate.push(cdf.percentile(0.05)?);
        result.mean_rate.push(mean(&pooled.rate_bps));
        result.outage_fraction.push(outage_rate(&pooled.rate_bps, cfg.rate.target_rate_bps)?);
        rates.push(pooled.rate_bps);
    }
    if densities.len() >= 3 {
        result.fitted_exponent = fit_scaling_exponent(densities, &result.mean_rate).ok();
    }
    Ok(SweepRun { result, rates })
}

/// A small network for exhaustive search.
#[derive(Debug, Clone)]
pub struct GapInstance {
    pub network: Network,
    pub links: LinkTable,
}

/// Draws instance `id`: each operator gets a uniform number of towers in
/// `1..=max_bs_per_operator`, the instance gets a uniform number of users
/// in `1..=max_ues` with uniformly chosen operators, all placed uniformly on
/// a `side_km` square torus.
pub fn gap_instance(cfg: &ExperimentConfig, kind: ScenarioKind, id: u64) -> Result<GapInstance> {
    let seed = child_seed(cfg.master_seed ^ 0x6761_7000, id);
    let mut rng = rng_from_seed(seed);
    let g = &cfg.gap;
    let region = Region::new(g.side_km, g.side_km, true)?;
    let m = cfg.scenario.num_operators;
    let n_ue = rng.gen_range(1..=g.max_ues);
    let owners: Vec<usize> = (0..n_ue).map(|_| rng.gen_range(0..m)).collect();
    let mut deployments: Vec<Deployment> = (0..m)
        .map(|op| {
            let n_bs = rng.gen_range(1..=g.max_bs_per_operator);
            Deployment {
                operator_id: op,
                bs_points: uniform_points(n_bs, &region, &mut rng),
                ue_points: Vec::new(),
                bs_density: 0.0,
                ue_density: 0.0,
            }
        })
        .collect();
    for op in owners {
        let p = uniform_points(1, &region, &mut rng);
        deployments[op].ue_points.extend(p);
    }
    let scenario = Scenario { kind, ..cfg.scenario.clone() };
    let shared = if kind == ScenarioKind::SpectrumAccess {
        let counts: Vec<usize> = deployments.iter().map(|d| d.bs_points.len()).collect();
        counts
            .iter()
            .enumerate()
            .map(|(op, &n)| shared_bs_selection(n, scenario.access_share_fraction, Stream::SharedSelection(op).seed(seed)))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let network = Network::from_deployments(&scenario, region, deployments, &shared)?;
    let links = LinkTable::realize(&network, &cfg.channel, Stream::Links.seed(seed))?;
    Ok(GapInstance { network, links })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub instance_id: u64,
    pub blind_sum_rate_bps: f64,
    pub ub_sum_rate_bps: f64,
    /// `100 * (ub - blind) / ub`, zero when both are zero.
    pub gap_percent: f64,
}

pub fn gap_percent(blind: f64, ub: f64) -> f64 {
    if ub > 0.0 {
        100.0 * (ub - blind) / ub
    } else {
        0.0
    }
}

/// Blind and coordinated sum rates on `cfg.gap.instances` instances of the
/// configured scenario.
pub fn run_gap(cfg: &ExperimentConfig) -> Result<Vec<GapRecord>> {
    let kind = cfg.scenario.kind;
    (0..cfg.gap.instances as u64)
        .into_par_iter()
        .map(|id| {
            let inst = gap_instance(cfg, kind, id)?;
            let ctx = context(cfg, &inst.network, &inst.links);
            let blind = run_blind(&ctx, &cfg.rate)?;
            let ub = coordinated_upper_bound(&ctx, &cfg.rate, cfg.allocation.limits, cfg.allocation.objective)?;
            Ok(GapRecord {
                instance_id: id,
                blind_sum_rate_bps: blind.total_rate_bps,
                ub_sum_rate_bps: ub.total_rate_bps,
                gap_percent: gap_percent(blind.total_rate_bps, ub.total_rate_bps),
            })
        })
        .collect()
}

/// Radio context for an instance, for callers that evaluate allocations themselves.
pub fn instance_context<'a>(cfg: &'a ExperimentConfig, inst: &'a GapInstance) -> RadioContext<'a> {
    context(cfg, &inst.network, &inst.links)
}
