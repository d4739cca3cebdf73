//! The four sharing configurations: spectrum pools, which base stations a
//! user may attach to, and whether operators share tower positions.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{deploy_ppp, Deployment, Point, Region};
use crate::rng::{rng_from_seed, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioKind {
    /// Own band, own towers, own users.
    NoSharing,
    /// One common band, independent towers.
    Spectrum,
    /// One common band, co-located towers.
    SpectrumInfra,
    /// One common band, users may attach to shared foreign towers.
    SpectrumAccess,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] = [
        ScenarioKind::NoSharing,
        ScenarioKind::Spectrum,
        ScenarioKind::SpectrumInfra,
        ScenarioKind::SpectrumAccess,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::NoSharing => "NoSharing",
            ScenarioKind::Spectrum => "Spectrum",
            ScenarioKind::SpectrumInfra => "SpectrumInfra",
            ScenarioKind::SpectrumAccess => "SpectrumAccess",
        }
    }

    pub fn shares_spectrum(self) -> bool {
        self != ScenarioKind::NoSharing
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::param(format!("unknown scenario {s:?} (expected NoSharing | Spectrum | SpectrumInfra | SpectrumAccess)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub num_operators: usize,
    pub license_bandwidth_hz: f64,
    /// Fraction of each operator's towers opened to foreign users; only
    /// consulted by `SpectrumAccess`.
    pub access_share_fraction: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            kind: ScenarioKind::NoSharing,
            num_operators: 2,
            license_bandwidth_hz: 5e8,
            access_share_fraction: 1.0,
        }
    }
}

impl Scenario {
    pub fn new(kind: ScenarioKind) -> Self {
        Self { kind, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_operators < 1 {
            return Err(Error::param("num_operators must be >= 1"));
        }
        if !(self.license_bandwidth_hz.is_finite() && self.license_bandwidth_hz > 0.0) {
            return Err(Error::param("license_bandwidth_hz must be > 0"));
        }
        if !(0.0..=1.0).contains(&self.access_share_fraction) {
            return Err(Error::param(format!(
                "access_share_fraction must be in [0, 1], got {}",
                self.access_share_fraction
            )));
        }
        Ok(())
    }

    /// Aggregate bandwidth of all licenses.
    pub fn total_bandwidth_hz(&self) -> f64 {
        self.num_operators as f64 * self.license_bandwidth_hz
    }
}

/// Spectrum pools and the pool each base station transmits in.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPools {
    pub bandwidth_hz: Vec<f64>,
    pub pool_of_bs: Vec<usize>,
}

impl SpectrumPools {
    pub fn bs_bandwidth_hz(&self, bs: usize) -> f64 {
        self.bandwidth_hz[self.pool_of_bs[bs]]
    }

    pub fn co_channel(&self, a: usize, b: usize) -> bool {
        self.pool_of_bs[a] == self.pool_of_bs[b]
    }
}

/// `allowed[ue_operator][bs]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AccessMatrix {
    pub allowed: Vec<Vec<bool>>,
}

impl AccessMatrix {
    pub fn is_allowed(&self, ue_operator: usize, bs: usize) -> bool {
        self.allowed[ue_operator][bs]
    }

    pub fn accessible(&self, ue_operator: usize) -> impl Iterator<Item = usize> + '_ {
        self.allowed[ue_operator]
            .iter()
            .enumerate()
            .filter_map(|(i, &ok)| ok.then_some(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub position: Point,
    pub operator: usize,
}

/// One drop of a multi-operator network, flattened so that base stations and
/// users have global indices (operator 0 first).
#[derive(Debug, Clone)]
pub struct Network {
    pub scenario: Scenario,
    pub region: Region,
    pub deployments: Vec<Deployment>,
    pub base_stations: Vec<Node>,
    pub users: Vec<Node>,
    pub access: AccessMatrix,
    pub pools: SpectrumPools,
}

impl Network {
    /// Assembles a network from explicit deployments. `shared` lists, per
    /// operator, the local indices of towers opened to foreign users; it is
    /// ignored unless the scenario is `SpectrumAccess`.
    pub fn from_deployments(
        scenario: &Scenario,
        region: Region,
        mut deployments: Vec<Deployment>,
        shared: &[Vec<usize>],
    ) -> Result<Self> {
        scenario.validate()?;
        let m = scenario.num_operators;
        if deployments.len() != m {
            return Err(Error::param(format!("expected {m} deployments, got {}", deployments.len())));
        }
        if scenario.kind == ScenarioKind::SpectrumInfra {
            deployments = co_locate(deployments);
        }

        let mut base_stations = Vec::new();
        let mut users = Vec::new();
        let mut shared_global = vec![false; 0];
        for (op, dep) in deployments.iter().enumerate() {
            let opened: Vec<bool> = {
                let mut v = vec![false; dep.bs_points.len()];
                if let Some(set) = shared.get(op) {
                    for &i in set {
                        if i >= v.len() {
                            return Err(Error::param(format!("shared index {i} out of range for operator {op}")));
                        }
                        v[i] = true;
                    }
                }
                v
            };
            shared_global.extend(opened);
            base_stations.extend(dep.bs_points.iter().map(|&position| Node { position, operator: op }));
            users.extend(dep.ue_points.iter().map(|&position| Node { position, operator: op }));
        }

        let allowed = (0..m)
            .map(|ue_op| {
                base_stations
                    .iter()
                    .zip(&shared_global)
                    .map(|(bs, &open)| {
                        bs.operator == ue_op || (scenario.kind == ScenarioKind::SpectrumAccess && open)
                    })
                    .collect()
            })
            .collect();

        let pools = if scenario.kind.shares_spectrum() {
            SpectrumPools {
                bandwidth_hz: vec![scenario.total_bandwidth_hz()],
                pool_of_bs: vec![0; base_stations.len()],
            }
        } else {
            SpectrumPools {
                bandwidth_hz: vec![scenario.total_bandwidth_hz() / m as f64; m],
                pool_of_bs: base_stations.iter().map(|b| b.operator).collect(),
            }
        };

        Ok(Self {
            scenario: scenario.clone(),
            region,
            deployments,
            base_stations,
            users,
            access: AccessMatrix { allowed },
            pools,
        })
    }

    /// Bandwidth of the pool a user's operator is licensed to use.
    pub fn user_pool_bandwidth_hz(&self, ue: usize) -> f64 {
        if self.scenario.kind.shares_spectrum() {
            self.pools.bandwidth_hz[0]
        } else {
            self.pools.bandwidth_hz[self.users[ue].operator]
        }
    }
}

/// Draws one drop of `scenario`. Each operator gets independent PPP
/// deployments of towers and users from its own seeded stream.
pub fn build_scenario(
    scenario: &Scenario,
    region: &Region,
    bs_density: f64,
    ue_density: f64,
    drop_seed: u64,
) -> Result<Network> {
    scenario.validate()?;
    region.validate()?;
    let deployments = (0..scenario.num_operators)
        .map(|op| {
            Ok(Deployment {
                operator_id: op,
                bs_points: deploy_ppp(bs_density, region, Stream::BaseStations(op).seed(drop_seed))?,
                ue_points: deploy_ppp(ue_density, region, Stream::Users(op).seed(drop_seed))?,
                bs_density,
                ue_density,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bs_counts: Vec<usize> = match scenario.kind {
        // after co-location every operator owns operator 0's towers
        ScenarioKind::SpectrumInfra => vec![deployments[0].bs_points.len(); deployments.len()],
        _ => deployments.iter().map(|d| d.bs_points.len()).collect(),
    };
    let shared: Vec<Vec<usize>> = if scenario.kind == ScenarioKind::SpectrumAccess {
        bs_counts
            .iter()
            .enumerate()
            .map(|(op, &n)| shared_bs_selection(n, scenario.access_share_fraction, Stream::SharedSelection(op).seed(drop_seed)))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Network::from_deployments(scenario, *region, deployments, &shared)
}

/// Copies operator 0's tower positions to every operator; users are untouched.
pub fn co_locate(mut deployments: Vec<Deployment>) -> Vec<Deployment> {
    if let Some(first) = deployments.first().map(|d| d.bs_points.clone()) {
        for dep in deployments.iter_mut().skip(1) {
            dep.bs_points = first.clone();
        }
    }
    deployments
}

/// Uniformly random subset of `round(fraction * n)` indices out of `0..n`,
/// returned sorted. Selections for the same seed are nested in `fraction`.
pub fn shared_bs_selection(n: usize, fraction: f64, seed: u64) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::param(format!("fraction must be in [0, 1], got {fraction}")));
    }
    let k = (fraction * n as f64).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let mut picked = order[..k.min(n)].to_vec();
    picked.sort_unstable();
    Ok(picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dep(op: usize, bs: Vec<Point>, ue: Vec<Point>) -> Deployment {
        Deployment {
            operator_id: op,
            bs_points: bs,
            ue_points: ue,
            bs_density: 30.0,
            ue_density: 200.0,
        }
    }

    #[test]
    fn no_sharing_pools_are_halves() {
        let s = Scenario::new(ScenarioKind::NoSharing);
        let net = build_scenario(&s, &Region::default(), 30.0, 200.0, 1).unwrap();
        assert_eq!(net.pools.bandwidth_hz, vec![5e8, 5e8]);
        assert_eq!(net.pools.bandwidth_hz.iter().sum::<f64>(), s.total_bandwidth_hz());
        for (ue, u) in net.users.iter().enumerate() {
            assert_eq!(net.user_pool_bandwidth_hz(ue), 5e8);
            for bs in net.access.accessible(u.operator) {
                assert_eq!(net.base_stations[bs].operator, u.operator);
            }
        }
    }

    #[test]
    fn shared_pool_is_whole_band() {
        for kind in [ScenarioKind::Spectrum, ScenarioKind::SpectrumInfra, ScenarioKind::SpectrumAccess] {
            let net = build_scenario(&Scenario::new(kind), &Region::default(), 30.0, 200.0, 2).unwrap();
            assert_eq!(net.pools.bandwidth_hz, vec![1e9]);
        }
    }

    #[test]
    fn full_access_doubles_reachable_towers() {
        let region = Region::default();
        let s = Scenario::new(ScenarioKind::SpectrumAccess);
        let net = build_scenario(&s, &region, 30.0, 200.0, 3).unwrap();
        let open = net.access.accessible(0).count();
        let base = Scenario::new(ScenarioKind::NoSharing);
        let net0 = build_scenario(&base, &region, 30.0, 200.0, 3).unwrap();
        let own: usize = net0.deployments.iter().map(|d| d.bs_points.len()).sum();
        assert_eq!(open, own);
        assert_eq!(net0.access.accessible(0).count(), net0.deployments[0].bs_points.len());
    }

    #[test]
    fn thirty_percent_opens_three_of_ten() {
        let bs: Vec<Point> = (0..10).map(|i| Point::new(0.05 + 0.09 * i as f64, 0.5)).collect();
        let s = Scenario {
            kind: ScenarioKind::SpectrumAccess,
            access_share_fraction: 0.3,
            ..Default::default()
        };
        let shared = vec![shared_bs_selection(10, 0.3, 1).unwrap(), shared_bs_selection(10, 0.3, 2).unwrap()];
        let net = Network::from_deployments(&s, Region::default(), vec![dep(0, bs.clone(), vec![]), dep(1, bs, vec![])], &shared).unwrap();
        let foreign_for_0 = net.access.accessible(0).filter(|&b| net.base_stations[b].operator == 1).count();
        let foreign_for_1 = net.access.accessible(1).filter(|&b| net.base_stations[b].operator == 0).count();
        assert_eq!((foreign_for_0, foreign_for_1), (3, 3));
    }

    #[test]
    fn co_locate_examples() {
        let a = dep(0, vec![Point::new(0.1, 0.1)], vec![Point::new(0.5, 0.5)]);
        let b = dep(1, vec![Point::new(0.9, 0.9), Point::new(0.2, 0.3)], vec![Point::new(0.4, 0.4)]);
        assert_eq!(co_locate(vec![a.clone()]), vec![a.clone()]);
        let out = co_locate(vec![a.clone(), b.clone()]);
        assert_eq!(out[1].bs_points, out[0].bs_points);
        assert_eq!(out[1].ue_points, b.ue_points);
    }

    #[test]
    fn infra_differs_from_spectrum_only_in_towers() {
        let region = Region::default();
        let a = build_scenario(&Scenario::new(ScenarioKind::Spectrum), &region, 30.0, 200.0, 9).unwrap();
        let b = build_scenario(&Scenario::new(ScenarioKind::SpectrumInfra), &region, 30.0, 200.0, 9).unwrap();
        assert_eq!(a.deployments[0], b.deployments[0]);
        for (x, y) in a.deployments.iter().zip(&b.deployments) {
            assert_eq!(x.ue_points, y.ue_points);
        }
        assert_eq!(b.deployments[1].bs_points, b.deployments[0].bs_points);
    }

    #[test]
    fn selection_sizes() {
        assert!(shared_bs_selection(10, 0.0, 1).unwrap().is_empty());
        assert_eq!(shared_bs_selection(10, 1.0, 1).unwrap(), (0..10).collect::<Vec<_>>());
        assert_eq!(shared_bs_selection(10, 0.5, 1).unwrap().len(), 5);
        assert!(shared_bs_selection(10, 1.5, 1).is_err());
    }

    #[test]
    fn invalid_scenarios() {
        let s = Scenario {
            num_operators: 0,
            ..Default::default()
        };
        assert!(build_scenario(&s, &Region::default(), 30.0, 200.0, 1).is_err());
        let s = Scenario {
            access_share_fraction: -0.1,
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ScenarioKind::ALL {
            assert_eq!(k.name().parse::<ScenarioKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert!("Bogus".parse::<ScenarioKind>().is_err());
    }
}
