//! CSV and JSON artifacts. Every file starts with the schema revision, the
//! config hash and the master seed: as `# key=value` lines in CSV, as
//! top-level fields in JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{ExperimentConfig, SPEC_REVISION};
use crate::error::{Error, Result};
use crate::experiment::{GapRecord, ScenarioOutcome, ScenarioSummary, SweepRun};
use crate::metrics::EmpiricalCdf;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactHeader {
    pub spec_revision: String,
    pub config_hash: String,
    pub master_seed: u64,
}

impl ArtifactHeader {
    pub fn for_config(cfg: &ExperimentConfig) -> Self {
        Self {
            spec_revision: SPEC_REVISION.to_string(),
            config_hash: cfg.config_hash(),
            master_seed: cfg.master_seed,
        }
    }

    fn csv_preamble(&self) -> String {
        format!(
            "# spec_revision={}\n# config_hash={}\n# master_seed={}\n",
            self.spec_revision, self.config_hash, self.master_seed
        )
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

/// `value,cum_prob` rows, one per distinct value.
pub fn cdf_csv(header: &ArtifactHeader, cdf: &EmpiricalCdf) -> String {
    let mut out = header.csv_preamble();
    out.push_str("value,cum_prob\n");
    for (v, p) in cdf.steps() {
        let _ = writeln!(out, "{v},{p}");
    }
    out
}

pub fn sweep_csv(header: &ArtifactHeader, run: &SweepRun) -> String {
    let r = &run.result;
    let mut out = header.csv_preamble();
    out.push_str("density_bs_km2,median_rate_bps,p05_rate_bps,outage_fraction\n");
    for i in 0..r.densities.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.densities[i], r.median_rate[i], r.p05_rate[i], r.outage_fraction[i]
        );
    }
    out
}

pub fn gap_csv(header: &ArtifactHeader, records: &[GapRecord]) -> String {
    let mut out = header.csv_preamble();
    out.push_str("instance_id,blind_sum_rate_bps,ub_sum_rate_bps,gap_percent\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.instance_id, r.blind_sum_rate_bps, r.ub_sum_rate_bps, r.gap_percent
        );
    }
    out
}

#[derive(Serialize)]
struct ScenariosSummary<'a> {
    #[serde(flatten)]
    header: &'a ArtifactHeader,
    drops: usize,
    scenarios: Vec<&'a ScenarioSummary>,
}

/// Writes `cdf_sinr_<Kind>.csv` and `cdf_rate_<Kind>.csv` per scenario and
/// `scenarios_summary.json`. Returns the written paths.
pub fn write_scenarios(dir: &Path, cfg: &ExperimentConfig, outcomes: &[ScenarioOutcome]) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let header = ArtifactHeader::for_config(cfg);
    let mut written = Vec::new();
    for o in outcomes {
        for (metric, cdf) in [("sinr", &o.sinr_cdf), ("rate", &o.rate_cdf)] {
            let path = dir.join(format!("cdf_{metric}_{}.csv", o.kind.name()));
            write_file(&path, &cdf_csv(&header, cdf))?;
            written.push(path);
        }
    }
    let summary = ScenariosSummary {
        header: &header,
        drops: cfg.drops,
        scenarios: outcomes.iter().map(|o| &o.summary).collect(),
    };
    let path = dir.join("scenarios_summary.json");
    write_file(&path, &json(&summary))?;
    written.push(path);
    Ok(written)
}

#[derive(Serialize)]
struct SweepSummary<'a> {
    #[serde(flatten)]
    header: &'a ArtifactHeader,
    scenario: &'a str,
    drops: usize,
    densities: &'a [f64],
    mean_rate_bps: &'a [f64],
    fitted_exponent: Option<f64>,
    outage_ci99: Vec<[f64; 2]>,
}

pub fn write_sweep(dir: &Path, cfg: &ExperimentConfig, run: &SweepRun, drops: usize) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let header = ArtifactHeader::for_config(cfg);
    let csv_path = dir.join("sweep.csv");
    write_file(&csv_path, &sweep_csv(&header, run))?;
    let ci = run.outage_ci(cfg.rate.target_rate_bps, cfg.sweep.bootstrap_resamples, cfg.master_seed)?;
    let summary = SweepSummary {
        header: &header,
        scenario: cfg.scenario.kind.name(),
        drops,
        densities: &run.result.densities,
        mean_rate_bps: &run.result.mean_rate,
        fitted_exponent: run.result.fitted_exponent,
        outage_ci99: ci.into_iter().map(|(a, b)| [a, b]).collect(),
    };
    let json_path = dir.join("sweep_summary.json");
    write_file(&json_path, &json(&summary))?;
    Ok(vec![csv_path, json_path])
}

#[derive(Serialize)]
struct GapSummary<'a> {
    #[serde(flatten)]
    header: &'a ArtifactHeader,
    scenario: &'a str,
    instances: usize,
    median_gap_percent: Option<f64>,
    max_gap_percent: Option<f64>,
}

pub fn write_gap(dir: &Path, cfg: &ExperimentConfig, records: &[GapRecord]) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let header = ArtifactHeader::for_config(cfg);
    let csv_path = dir.join("gap.csv");
    write_file(&csv_path, &gap_csv(&header, records))?;
    let gaps: Vec<f64> = records.iter().map(|r| r.gap_percent).collect();
    let cdf = EmpiricalCdf::new(&gaps).ok();
    let summary = GapSummary {
        header: &header,
        scenario: cfg.scenario.kind.name(),
        instances: records.len(),
        median_gap_percent: cdf.as_ref().map(EmpiricalCdf::median),
        max_gap_percent: cdf.as_ref().and_then(|c| c.sorted_values().last().copied()),
    };
    let json_path = dir.join("gap_summary.json");
    write_file(&json_path, &json(&summary))?;
    Ok(vec![csv_path, json_path])
}

const PLOT_SCRIPT: &str = r##"#!/usr/bin/env python3
"""Plots every CSV artifact in this directory. Requires pandas and matplotlib."""
import glob
import os

import matplotlib.pyplot as plt
import pandas as pd

here = os.path.dirname(os.path.abspath(__file__))
for path in sorted(glob.glob(os.path.join(here, "*.csv"))):
    df = pd.read_csv(path, comment="#")
    fig, ax = plt.subplots()
    if list(df.columns) == ["value", "cum_prob"]:
        ax.step(df["value"], df["cum_prob"], where="post")
        ax.set_xlabel("value")
        ax.set_ylabel("CDF")
    else:
        x = df.columns[0]
        for col in df.columns[1:]:
            ax.plot(df[x], df[col], marker="o", label=col)
        ax.set_xlabel(x)
        ax.legend()
    ax.set_title(os.path.basename(path))
    fig.savefig(path[:-4] + ".png", dpi=120)
    plt.close(fig)
"##;

pub fn write_plot_script(dir: &Path) -> Result<PathBuf> {
    ensure_dir(dir)?;
    let path = dir.join("plot.py");
    write_file(&path, PLOT_SCRIPT)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_fields() {
        let cfg = ExperimentConfig::default();
        let h = ArtifactHeader::for_config(&cfg);
        let cdf = EmpiricalCdf::new(&[1.0, 2.0, 2.0, f64::NEG_INFINITY]).unwrap();
        let text = cdf_csv(&h, &cdf);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# spec_revision=1");
        assert!(lines[1].starts_with("# config_hash="));
        assert_eq!(lines[2], "# master_seed=1");
        assert_eq!(lines[3], "value,cum_prob");
        assert_eq!(&lines[4..], &["-inf,0.25", "1,0.5", "2,1"]);
    }
}
