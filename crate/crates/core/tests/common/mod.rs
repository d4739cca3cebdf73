//! Independent reference implementations used as test oracles. Nothing here
//! calls the crate's allocation code; it only reads the realized network and
//! link table.

#![allow(dead_code)]

use mmshare::allocation::{LinkTable, RateParams};
use mmshare::channel::{AntennaModel, LinkState};
use mmshare::scenario::Network;

pub struct Radio<'a> {
    pub net: &'a Network,
    pub links: &'a LinkTable,
    pub antenna: &'a AntennaModel,
    pub tx_power_dbm: f64,
    pub noise_figure_db: f64,
    pub interference: bool,
    pub full_pool: bool,
    pub rate: &'a RateParams,
}

fn lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn bearing(net: &Network, bs: usize, ue: usize) -> f64 {
    let (dx, dy) = net
        .region
        .displacement(net.base_stations[bs].position, net.users[ue].position);
    dy.atan2(dx).to_degrees()
}

fn off_axis(a: f64, b: f64) -> f64 {
    let d = (b - a).rem_euclid(360.0);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}

fn sector(angle: f64, main: f64, side: f64, width: f64) -> f64 {
    if angle <= width / 2.0 {
        main
    } else {
        side
    }
}

fn rx_dbm(r: &Radio<'_>, bs: usize, ue: usize, tx_gain: f64, rx_gain: f64) -> f64 {
    let l = r.links.get(bs, ue);
    r.tx_power_dbm + tx_gain + rx_gain - l.path_loss_db - l.shadowing_db
}

/// Per-user (bandwidth, linear SINR) for a serving map; `None` for unserved users.
pub fn sinrs(r: &Radio<'_>, serving: &[Option<usize>]) -> Vec<Option<(f64, f64)>> {
    let n_bs = r.net.base_stations.len();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_bs];
    for (ue, s) in serving.iter().enumerate() {
        if let Some(b) = *s {
            members[b].push(ue);
        }
    }
    let a = r.antenna;
    let mut out = Vec::with_capacity(serving.len());
    for (ue, s) in serving.iter().enumerate() {
        let Some(b) = *s else {
            out.push(None);
            continue;
        };
        let pool = r.net.pools.bandwidth_hz[r.net.pools.pool_of_bs[b]];
        let k = members[b].len();
        let bw = if r.full_pool { pool } else { pool / k as f64 };
        let slot = members[b].iter().position(|&u| u == ue).unwrap() as f64;
        let (lo, hi) = if r.full_pool { (0.0, 1.0) } else { (slot / k as f64, (slot + 1.0) / k as f64) };
        let signal = lin(rx_dbm(r, b, ue, a.bs_mainlobe_gain_db, a.ue_mainlobe_gain_db));
        let noise = lin(-174.0 + 10.0 * bw.log10() + r.noise_figure_db);
        let mut interference = 0.0;
        if r.interference {
            let serving_dir = bearing(r.net, b, ue);
            for (j, theirs) in members.iter().enumerate() {
                let same_pool = r.net.pools.pool_of_bs[j] == r.net.pools.pool_of_bs[b];
                if j == b || theirs.is_empty() || !same_pool || r.links.get(j, ue).state == LinkState::Out {
                    continue;
                }
                let toward_victim = bearing(r.net, j, ue);
                let n = theirs.len() as f64;
                let mut g = 0.0;
                for (idx, &u) in theirs.iter().enumerate() {
                    let w = if r.full_pool {
                        1.0 / n
                    } else {
                        let (b0, b1) = (idx as f64 / n, (idx as f64 + 1.0) / n);
                        (hi.min(b1) - lo.max(b0)).max(0.0) / (hi - lo)
                    };
                    if w == 0.0 {
                        continue;
                    }
                    let beam = off_axis(bearing(r.net, j, u), toward_victim);
                    g += w * lin(sector(beam, a.bs_mainlobe_gain_db, a.bs_sidelobe_gain_db, a.bs_beamwidth_deg));
                }
                let rx_gain = sector(
                    off_axis(serving_dir, toward_victim),
                    a.ue_mainlobe_gain_db,
                    a.ue_sidelobe_gain_db,
                    a.ue_beamwidth_deg,
                );
                interference += lin(rx_dbm(r, j, ue, 10.0 * g.log10(), rx_gain));
            }
        }
        out.push(Some((bw, signal / (noise + interference))));
    }
    out
}

pub fn rates(r: &Radio<'_>, serving: &[Option<usize>]) -> Vec<f64> {
    let p = r.rate;
    sinrs(r, serving)
        .into_iter()
        .map(|x| match x {
            Some((bw, g)) => p.eta * p.duty_factor * (1.0 - p.overhead_beta) * bw * (1.0 + g).log2(),
            None => 0.0,
        })
        .collect()
}

pub fn sum_rate(r: &Radio<'_>, serving: &[Option<usize>]) -> f64 {
    rates(r, serving).into_iter().fold(0.0, |acc, x| acc + x)
}

/// Exhaustive sum-rate maximization by depth-first recursion. The first
/// maximum found in lexicographic candidate order wins.
pub fn brute_force(r: &Radio<'_>) -> (Vec<Option<usize>>, f64) {
    let n_ue = r.net.users.len();
    let options: Vec<Vec<Option<usize>>> = (0..n_ue)
        .map(|ue| {
            let op = r.net.users[ue].operator;
            let v: Vec<Option<usize>> = (0..r.net.base_stations.len())
                .filter(|&b| r.net.access.is_allowed(op, b) && r.links.get(b, ue).state != LinkState::Out)
                .map(Some)
                .collect();
            if v.is_empty() {
                vec![None]
            } else {
                v
            }
        })
        .collect();

    fn walk(r: &Radio<'_>, options: &[Vec<Option<usize>>], prefix: &mut Vec<Option<usize>>, best: &mut Option<(Vec<Option<usize>>, f64)>) {
        if prefix.len() == options.len() {
            let v = sum_rate(r, prefix);
            if best.as_ref().is_none_or(|(_, b)| v > *b) {
                *best = Some((prefix.clone(), v));
            }
            return;
        }
        for &c in &options[prefix.len()] {
            prefix.push(c);
            walk(r, options, prefix, best);
            prefix.pop();
        }
    }

    let mut best = None;
    walk(r, &options, &mut Vec::new(), &mut best);
    best.expect("at least one assignment")
}
