use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::{build_k_block, diagonalize_block, BlockEigen, KBlock};
use super::conditions::{scattering_residual, DEGENERATE};
use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateLabel {
    Bound,
    Scattering,
    /// Residual and tail tests disagree, or the condition is degenerate.
    Ambiguous,
}

impl StateLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StateLabel::Bound => "bound",
            StateLabel::Scattering => "scattering",
            StateLabel::Ambiguous => "ambiguous",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bound" => Ok(StateLabel::Bound),
            "scattering" => Ok(StateLabel::Scattering),
            "ambiguous" => Ok(StateLabel::Ambiguous),
            other => Err(Error::Parse(format!("unknown state label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyThresholds {
    /// Upper bound on `|phi(L)| / max_r |phi(r)|` for a bound state.
    pub tail: f64,
    /// A real-`k` residual above this rules out a scattering state.
    pub residual: f64,
}

impl Default for ClassifyThresholds {
    fn default() -> Self {
        ClassifyThresholds {
            tail: 0.25,
            residual: 1e-4,
        }
    }
}

/// Diagnostics behind one label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub label: StateLabel,
    pub energy: f64,
    /// `E / (2 J_K)`; outside [-1, 1] there is no real relative momentum.
    pub cos_k: f64,
    /// Real-`k` residual; `None` when `k` is not real or the condition is degenerate.
    pub residual: Option<f64>,
    pub tail: f64,
}

fn tail_measure(block: &KBlock, eigen: &BlockEigen, i: usize) -> f64 {
    let v: Vec<Complex64> = eigen.vectors.column(i).iter().copied().collect();
    let phi = block.relative_amplitudes(&v);
    let peak = phi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    phi.last().map(|z| z.norm()).unwrap_or(0.0) / peak
}

/// Label each eigenpair of one block as bound or scattering.
pub fn classify_eigenstates(
    spec: &LatticeSpec,
    block: &KBlock,
    eigen: &BlockEigen,
    thresholds: &ClassifyThresholds,
) -> Vec<Classification> {
    let jk = block.jk();
    let v = spec.interaction();
    eigen
        .values
        .iter()
        .enumerate()
        .map(|(i, &energy)| {
            let tail = tail_measure(block, eigen, i);
            if jk.abs() < DEGENERATE {
                // decoupled relative sites: only the interaction site binds
                let label = if v != 0.0 && (energy - v).abs() < 1e-12 {
                    StateLabel::Bound
                } else {
                    StateLabel::Scattering
                };
                return Classification {
                    label,
                    energy,
                    cos_k: f64::INFINITY,
                    residual: None,
                    tail,
                };
            }
            let cos_k = energy / (2.0 * jk);
            let inside = cos_k.abs() <= 1.0 + 1e-12;
            let (residual, label) = if !inside {
                // k is complex: the real-k test fails outright
                let label = if tail < thresholds.tail {
                    StateLabel::Bound
                } else {
                    StateLabel::Ambiguous
                };
                (None, label)
            } else {
                let k = cos_k.clamp(-1.0, 1.0).acos();
                match scattering_residual(spec, block.momentum(), Complex64::new(k, 0.0)) {
                    Ok(r) if r <= thresholds.residual => (Some(r), StateLabel::Scattering),
                    Ok(r) if tail < thresholds.tail => (Some(r), StateLabel::Bound),
                    Ok(r) => (Some(r), StateLabel::Ambiguous),
                    Err(_) => (None, StateLabel::Ambiguous),
                }
            };
            Classification {
                label,
                energy,
                cos_k,
                residual,
                tail,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub alpha: i64,
    #[serde(rename = "K")]
    pub momentum: f64,
    pub energy: f64,
    pub label: StateLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    pub fn energies(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.energy).collect()
    }

    pub fn count(&self, label: StateLabel) -> usize {
        self.rows.iter().filter(|r| r.label == label).count()
    }

    fn extreme(&self, label: StateLabel, max: bool) -> Option<f64> {
        let it = self.rows.iter().filter(|r| r.label == label).map(|r| r.energy);
        if max {
            it.reduce(f64::max)
        } else {
            it.reduce(f64::min)
        }
    }

    /// `min E_scattering - max E_bound`; positive when the bound band sits
    /// strictly below the scattering band.
    pub fn band_gap(&self) -> Option<f64> {
        Some(self.extreme(StateLabel::Scattering, false)? - self.extreme(StateLabel::Bound, true)?)
    }

    /// Lowest eigenvalue in each block, ordered by alpha.
    pub fn lowest_per_block(&self) -> Vec<(i64, f64, f64)> {
        let mut out: Vec<(i64, f64, f64)> = Vec::new();
        for r in &self.rows {
            match out.last() {
                Some(&(a, _, _)) if a == r.alpha => {}
                _ => out.push((r.alpha, r.momentum, r.energy)),
            }
        }
        out
    }
}

/// All block spectra, ordered by alpha then energy.
pub fn spectrum_sweep(spec: &LatticeSpec, thresholds: &ClassifyThresholds) -> SpectrumTable {
    let alphas: Vec<i64> = spec.alphas().collect();
    let per_block: Vec<Vec<SpectrumRow>> = alphas
        .par_iter()
        .map(|&alpha| {
            let block = build_k_block(spec, alpha).expect("alpha drawn from the lattice grid");
            let eigen = diagonalize_block(&block);
            classify_eigenstates(spec, &block, &eigen, thresholds)
                .into_iter()
                .map(|c| SpectrumRow {
                    alpha,
                    momentum: block.momentum(),
                    energy: c.energy,
                    label: c.label,
                })
                .collect()
        })
        .collect();
    SpectrumTable {
        rows: per_block.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Statistics;

    fn sweep(v: f64, stats: Statistics) -> SpectrumTable {
        let spec = LatticeSpec::with_sites(21, 1.0, v, stats).unwrap();
        spectrum_sweep(&spec, &ClassifyThresholds::default())
    }

    #[test]
    fn strong_coupling_one_bound_state_per_block() {
        for stats in Statistics::ALL {
            let t = sweep(-4.0, stats);
            assert_eq!(t.count(StateLabel::Bound), 21, "{stats}");
            assert_eq!(t.count(StateLabel::Ambiguous), 0);
            for (alpha, _, _) in t.lowest_per_block() {
                let first = t.rows.iter().find(|r| r.alpha == alpha).unwrap();
                assert_eq!(first.label, StateLabel::Bound);
            }
            assert!(t.band_gap().unwrap() > 0.0);
        }
    }

    #[test]
    fn no_interaction_no_bound_states() {
        for stats in Statistics::ALL {
            let t = sweep(0.0, stats);
            assert_eq!(t.count(StateLabel::Bound), 0, "{stats}");
        }
    }

    #[test]
    fn weak_coupling_binds_only_where_v_exceeds_jk() {
        // |V/2J| = 0.5: |J_K| < |V| = 1 only for |alpha| >= 8 on 21 sites
        for stats in [Statistics::Fermion, Statistics::HardCoreBoson] {
            let t = sweep(-1.0, stats);
            let bound: Vec<i64> = t
                .rows
                .iter()
                .filter(|r| r.label == StateLabel::Bound)
                .map(|r| r.alpha)
                .collect();
            assert_eq!(bound, vec![-10, -9, -8, 8, 9, 10], "{stats}");
            assert!(t.band_gap().unwrap() < 0.0);
        }
        // the threshold block |J_K| = |V| degenerates for fermions
        let f = sweep(-1.0, Statistics::Fermion);
        assert_eq!(f.count(StateLabel::Ambiguous), 2);
        // bosons satisfy beta^2 (beta^2 + 11) > 1 in every block here
        assert_eq!(sweep(-1.0, Statistics::Boson).count(StateLabel::Bound), 21);
    }

    #[test]
    fn sweep_is_ordered_and_complete() {
        let t = sweep(-1.0, Statistics::Boson);
        assert_eq!(t.rows.len(), 231);
        assert!(t.rows.windows(2).all(|w| {
            w[0].alpha < w[1].alpha || (w[0].alpha == w[1].alpha && w[0].energy <= w[1].energy)
        }));
    }

    #[test]
    fn scattering_labels_are_roots() {
        for stats in Statistics::ALL {
            let spec = LatticeSpec::with_sites(21, 1.0, -1.0, stats).unwrap();
            for alpha in spec.alphas() {
                let b = build_k_block(&spec, alpha).unwrap();
                let e = diagonalize_block(&b);
                for c in classify_eigenstates(&spec, &b, &e, &ClassifyThresholds::default()) {
                    if c.label == StateLabel::Scattering {
                        assert!(c.residual.unwrap() < 1e-8, "{stats} alpha={alpha}");
                    }
                }
            }
        }
    }
}
