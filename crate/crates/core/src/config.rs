//! Run configuration: optional TOML file, command-line flags on top.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Statistics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every setting is optional so that a file and flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// Site count L_t (odd).
    #[arg(long = "Lt")]
    #[serde(rename = "Lt")]
    pub sites: Option<usize>,

    /// Hopping J (> 0).
    #[arg(long = "J", allow_negative_numbers = true)]
    #[serde(rename = "J")]
    pub hopping: Option<f64>,

    /// Nearest-neighbour interaction V.
    #[arg(long = "V", allow_negative_numbers = true)]
    #[serde(rename = "V")]
    pub interaction: Option<f64>,

    #[arg(long = "stats")]
    pub stats: Option<StatsArg>,

    /// Initial pair as `l1,l2`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub initial: Option<(i64, i64)>,

    #[arg(long, allow_negative_numbers = true)]
    pub t_start: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,

    #[arg(long)]
    pub n_samples: Option<usize>,

    /// Bound-state tail threshold on |phi(L)| / max |phi|.
    #[arg(long)]
    pub tail: Option<f64>,

    /// Cone arrival threshold.
    #[arg(long)]
    pub theta: Option<f64>,

    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Report energies in units of J and read times as Jt.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,

    /// Keep going when the walk front reaches the boundary.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_boundary: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StatsArg {
    Boson,
    Fermion,
    Hcb,
}

impl From<StatsArg> for Statistics {
    fn from(s: StatsArg) -> Self {
        match s {
            StatsArg::Boson => Statistics::Boson,
            StatsArg::Fermion => Statistics::Fermion,
            StatsArg::Hcb => Statistics::HardCoreBoson,
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `l1,l2`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

impl Overrides {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            sites: self.sites.or(base.sites),
            hopping: self.hopping.or(base.hopping),
            interaction: self.interaction.or(base.interaction),
            stats: self.stats.or(base.stats),
            initial: self.initial.or(base.initial),
            t_start: self.t_start.or(base.t_start),
            t_end: self.t_end.or(base.t_end),
            n_samples: self.n_samples.or(base.n_samples),
            tail: self.tail.or(base.tail),
            theta: self.theta.or(base.theta),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            normalize: self.normalize.or(base.normalize),
            allow_boundary: self.allow_boundary.or(base.allow_boundary),
        }
    }
}

/// Command defaults before any file or flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defaults {
    pub sites: usize,
    pub interaction: f64,
    pub statistics: Statistics,
    pub t_end: f64,
    pub n_samples: usize,
}

/// Fully resolved configuration for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(rename = "Lt")]
    pub sites: usize,
    #[serde(rename = "J")]
    pub hopping: f64,
    #[serde(rename = "V")]
    pub interaction: f64,
    pub statistics: Statistics,
    pub initial: (i64, i64),
    pub t_start: f64,
    pub t_end: f64,
    pub n_samples: usize,
    pub tail: f64,
    pub theta: f64,
    pub out: PathBuf,
    pub format: Format,
    pub normalize: bool,
    pub allow_boundary: bool,
}

impl RunConfig {
    pub fn resolve(o: &Overrides, d: Defaults) -> Result<Self> {
        let cfg = RunConfig {
            sites: o.sites.unwrap_or(d.sites),
            hopping: o.hopping.unwrap_or(1.0),
            interaction: o.interaction.unwrap_or(d.interaction),
            statistics: o.stats.map(Statistics::from).unwrap_or(d.statistics),
            initial: o.initial.unwrap_or((0, 1)),
            t_start: o.t_start.unwrap_or(0.0),
            t_end: o.t_end.unwrap_or(d.t_end),
            n_samples: o.n_samples.unwrap_or(d.n_samples),
            tail: o.tail.unwrap_or(0.25),
            theta: o.theta.unwrap_or(crate::dynamics::CONE_THRESHOLD),
            out: o.out.clone().unwrap_or_else(|| PathBuf::from("out")),
            format: o.format.unwrap_or_default(),
            normalize: o.normalize.unwrap_or(false),
            allow_boundary: o.allow_boundary.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 2 {
            return Err(Error::Config(format!("n_samples must be >= 2, got {}", self.n_samples)));
        }
        if !(self.t_start >= 0.0 && self.t_end > self.t_start) {
            return Err(Error::Config(format!(
                "need t_end > t_start >= 0, got [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::Config(format!("theta must lie in (0, 1), got {}", self.theta)));
        }
        if !(self.tail > 0.0 && self.tail < 1.0) {
            return Err(Error::Config(format!("tail must lie in (0, 1), got {}", self.tail)));
        }
        self.spec()?;
        Ok(())
    }

    pub fn spec(&self) -> Result<LatticeSpec> {
        LatticeSpec::with_sites(self.sites, self.hopping, self.interaction, self.statistics)
    }

    /// Time grid in units of 1/J; `--normalize` reads the window as Jt.
    pub fn times(&self) -> Vec<f64> {
        let scale = if self.normalize { 1.0 / self.hopping } else { 1.0 };
        crate::dynamics::time_grid(self.t_start * scale, self.t_end * scale, self.n_samples)
    }

    /// Energy as reported: divided by J under `--normalize`.
    pub fn energy_out(&self, e: f64) -> f64 {
        if self.normalize {
            e / self.hopping
        } else {
            e
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> Defaults {
        Defaults {
            sites: 21,
            interaction: -1.0,
            statistics: Statistics::Boson,
            t_end: 4.0,
            n_samples: 41,
        }
    }

    #[test]
    fn flags_override_file() {
        let file: Overrides = toml::from_str("Lt = 11\nV = -3.0\nstats = \"hcb\"\n").unwrap();
        let flags = Overrides {
            interaction: Some(-5.0),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&flags.over(file), defaults()).unwrap();
        assert_eq!(cfg.sites, 11);
        assert_eq!(cfg.interaction, -5.0);
        assert_eq!(cfg.statistics, Statistics::HardCoreBoson);
    }

    #[test]
    fn rejects_invalid() {
        for bad in [
            "n_samples = 1",
            "t_start = 2.0\nt_end = 1.0",
            "t_start = -1.0",
            "theta = 1.0",
            "Lt = 20",
            "J = 0.0",
        ] {
            let o: Overrides = toml::from_str(bad).unwrap();
            assert!(RunConfig::resolve(&o, defaults()).is_err(), "{bad}");
        }
        assert!(toml::from_str::<Overrides>("bogus = 1").is_err());
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pair("-1, 2"), Ok((-1, 2)));
        assert!(parse_pair("3").is_err());
    }
}
