//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::analytic::{bandwidth_per_ue, effective_density, nearest_distance_scaling, outage_fraction, rate_scaling_exponent, Regime};
use crate::config::{Allocator, ExperimentConfig};
use crate::error::{Error, Result};
use crate::experiment::{run_gap, run_scenarios, run_sweep};
use crate::geometry::avg_cell_radius;
use crate::report;
use crate::scenario::ScenarioKind;

#[derive(Debug, Parser)]
#[command(name = "mmshare", version, about = "Multi-operator mmWave sharing simulator")]
pub struct Cli {
    /// JSON experiment config; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,

    /// Overrides `master_seed`.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Overrides `drops`.
    #[arg(long, global = true, value_name = "N")]
    pub drops: Option<usize>,

    /// Overrides `scenario.kind` (NoSharing | Spectrum | SpectrumInfra | SpectrumAccess).
    #[arg(long, global = true, value_name = "NAME")]
    pub scenario: Option<String>,

    /// Comma-separated base-station densities for `sweep`.
    #[arg(long, global = true, value_name = "LIST", value_delimiter = ',')]
    pub densities: Option<Vec<f64>>,

    #[arg(long, global = true, value_enum)]
    pub allocator: Option<Allocator>,

    /// Write a matplotlib script next to the CSV files.
    #[arg(long, global = true)]
    pub emit_plot_script: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Run all four sharing configurations and write SINR and rate CDFs.
    Scenarios,
    /// Sweep base-station density and write median, 5% rate and outage.
    Sweep,
    /// Compare blind association with the exhaustive upper bound on small instances.
    Gap,
    /// Print the closed-form densification laws.
    Analytic,
}

impl Cli {
    /// Loads the config file, applies flag overrides and validates the result.
    pub fn resolve_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_path(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if let Some(drops) = self.drops {
            cfg.drops = drops;
        }
        if let Some(name) = &self.scenario {
            cfg.scenario.kind = name
                .parse::<ScenarioKind>()
                .map_err(|e| Error::config("--scenario", e.to_string()))?;
        }
        if let Some(d) = &self.densities {
            cfg.sweep.densities = d.clone();
        }
        if let Some(a) = self.allocator {
            cfg.allocation.allocator = a;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Executes a parsed command line, writing progress to `log`.
pub fn run(cli: &Cli, log: &mut dyn Write) -> Result<()> {
    let cfg = cli.resolve_config()?;
    let mut written = match cli.command {
        Command::Scenarios => {
            let outcomes = run_scenarios(&cfg, &ScenarioKind::ALL)?;
            for o in &outcomes {
                let s = &o.summary;
                let _ = writeln!(
                    log,
                    "{:<15} users={:<7} median_sinr_db={:>8.2} median_rate_mbps={:>9.2} p05_rate_mbps={:>8.2} outage={:.4}",
                    s.kind.name(),
                    s.users,
                    s.median_sinr_db,
                    s.median_rate_bps / 1e6,
                    s.p05_rate_bps / 1e6,
                    s.outage_fraction
                );
            }
            report::write_scenarios(&cli.out, &cfg, &outcomes)?
        }
        Command::Sweep => {
            let run = run_sweep(&cfg, &cfg.sweep.densities, cfg.drops)?;
            let r = &run.result;
            for i in 0..r.densities.len() {
                let _ = writeln!(
                    log,
                    "rho={:<6} median_rate_mbps={:>9.2} p05_rate_mbps={:>8.2} mean_rate_mbps={:>9.2} outage={:.4}",
                    r.densities[i],
                    r.median_rate[i] / 1e6,
                    r.p05_rate[i] / 1e6,
                    r.mean_rate[i] / 1e6,
                    r.outage_fraction[i]
                );
            }
            if let Some(e) = r.fitted_exponent {
                let _ = writeln!(log, "fitted log-log exponent of mean rate: {e:.3}");
            }
            report::write_sweep(&cli.out, &cfg, &run, cfg.drops)?
        }
        Command::Gap => {
            let records = run_gap(&cfg)?;
            let worse = records.iter().filter(|r| r.gap_percent > 0.0).count();
            let _ = writeln!(log, "{} instances, blind below upper bound on {worse}", records.len());
            report::write_gap(&cli.out, &cfg, &records)?
        }
        Command::Analytic => {
            print_analytic(&cfg, log)?;
            Vec::new()
        }
    };
    if cli.emit_plot_script && !matches!(cli.command, Command::Analytic) {
        written.push(report::write_plot_script(&cli.out)?);
    }
    for path in written {
        let _ = writeln!(log, "wrote {}", path.display());
    }
    Ok(())
}

fn print_analytic(cfg: &ExperimentConfig, log: &mut dyn Write) -> Result<()> {
    let m = cfg.scenario.num_operators;
    let w = cfg.scenario.total_bandwidth_hz();
    let area = cfg.region.area_km2();
    let rho = cfg.densities.bs_per_km2;
    let n_bs = (rho * area).round() as usize;
    let n_ue = (cfg.densities.ue_per_km2 * area).round().max(1.0) as usize;
    let alpha = cfg.channel.pl_exponent_nlos;
    let a_c = cfg.channel.hard_coverage_area_km2;

    let _ = writeln!(log, "operators M                      {m}");
    let _ = writeln!(log, "total bandwidth W [Hz]           {w}");
    let _ = writeln!(log, "effective density [/km2]         {}", effective_density(rho, m));
    let _ = writeln!(log, "W_UE sharing [Hz]                {}", bandwidth_per_ue(w, n_bs, n_ue, m, true)?);
    let _ = writeln!(log, "W_UE no sharing [Hz]             {}", bandwidth_per_ue(w, n_bs, n_ue, m, false)?);
    let _ = writeln!(log, "rate exponent, interference      {}", rate_scaling_exponent(Regime::InterferenceLimited, alpha)?);
    let _ = writeln!(log, "rate exponent, power-limited     {}", rate_scaling_exponent(Regime::PowerLimited, alpha)?);
    let _ = writeln!(log);
    let _ = writeln!(log, "{:>10} {:>16} {:>18} {:>16}", "rho/km2", "cell radius [m]", "nearest BS [km]", "outage fraction");
    for &r in &cfg.sweep.densities {
        let _ = writeln!(
            log,
            "{:>10} {:>16.1} {:>18.4} {:>16.4}",
            r,
            avg_cell_radius(r)?,
            nearest_distance_scaling(r)?,
            outage_fraction(a_c, r)?
        );
    }
    Ok(())
}
