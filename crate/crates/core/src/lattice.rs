//! Physical parameters of the two-particle ring.
//!
//! Sites carry labels `-L..=L`; internally they are addressed by the index
//! `label + L`, so index arithmetic is modulo `L_t = 2L + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Commutation relations obeyed by the two walkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
    #[serde(rename = "hcb")]
    HardCoreBoson,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [
        Statistics::Boson,
        Statistics::Fermion,
        Statistics::HardCoreBoson,
    ];

    /// Sign picked up by `C[l2][l1]` relative to `C[l1][l2]`.
    pub fn exchange_sign(self) -> f64 {
        match self {
            Statistics::Fermion => -1.0,
            _ => 1.0,
        }
    }

    pub fn allows_double_occupancy(self) -> bool {
        matches!(self, Statistics::Boson)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
            Statistics::HardCoreBoson => "hcb",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "boson" | "b" => Ok(Statistics::Boson),
            "fermion" | "f" => Ok(Statistics::Fermion),
            "hcb" | "hardcoreboson" | "hard-core-boson" | "h" => Ok(Statistics::HardCoreBoson),
            other => Err(Error::Config(format!("unknown statistics `{other}`"))),
        }
    }
}

/// Lattice size, hopping, interaction and statistics of one model instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    half_width: usize,
    hopping: f64,
    interaction: f64,
    statistics: Statistics,
}

impl LatticeSpec {
    /// `half_width` is `L`; the ring has `2L + 1` sites.
    pub fn new(
        half_width: usize,
        hopping: f64,
        interaction: f64,
        statistics: Statistics,
    ) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidSpec(
                "need at least three sites (L >= 1)".into(),
            ));
        }
        if !(hopping.is_finite() && hopping > 0.0) {
            return Err(Error::InvalidSpec(format!("hopping J must be > 0, got {hopping}")));
        }
        if !interaction.is_finite() {
            return Err(Error::InvalidSpec(format!("interaction V must be finite, got {interaction}")));
        }
        Ok(LatticeSpec {
            half_width,
            hopping,
            interaction,
            statistics,
        })
    }

    /// Construct from the total site count `L_t`, which must be odd.
    pub fn with_sites(
        sites: usize,
        hopping: f64,
        interaction: f64,
        statistics: Statistics,
    ) -> Result<Self> {
        if sites % 2 == 0 {
            return Err(Error::InvalidSpec(format!("site count must be odd, got {sites}")));
        }
        LatticeSpec::new(sites / 2, hopping, interaction, statistics)
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn sites(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    pub fn interaction(&self) -> f64 {
        self.interaction
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// |V / 2J|.
    pub fn coupling_ratio(&self) -> f64 {
        (self.interaction / (2.0 * self.hopping)).abs()
    }

    pub fn with_statistics(&self, statistics: Statistics) -> Self {
        LatticeSpec { statistics, ..*self }
    }

    pub fn with_interaction(&self, interaction: f64) -> Self {
        LatticeSpec { interaction, ..*self }
    }

    pub fn site_index(&self, label: i64) -> Result<usize> {
        let l = self.half_width as i64;
        if label < -l || label > l {
            return Err(Error::SiteOutOfRange {
                site: label,
                half_width: self.half_width,
            });
        }
        Ok((label + l) as usize)
    }

    pub fn site_label(&self, index: usize) -> i64 {
        index as i64 - self.half_width as i64
    }

    /// Index of `index + shift` on the ring.
    pub fn shift(&self, index: usize, shift: i64) -> usize {
        let n = self.sites() as i64;
        (index as i64 + shift).rem_euclid(n) as usize
    }

    /// True when two site indices are nearest neighbours on the ring.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let n = self.sites();
        let d = (a + n - b) % n;
        d == 1 || d == n - 1
    }

    /// Lattice momenta `2 pi alpha / L_t` for `alpha = -L..=L`.
    pub fn momentum(&self, alpha: i64) -> f64 {
        2.0 * std::f64::consts::PI * alpha as f64 / self.sites() as f64
    }

    pub fn alphas(&self) -> impl Iterator<Item = i64> {
        let l = self.half_width as i64;
        -l..=l
    }
}
