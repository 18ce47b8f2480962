//! Two walkers on a ring as one walker on an `L_t x L_t` torus.
//!
//! Site `(l1, l2)` of the torus carries the field amplitude `E_{l1 l2}`; it
//! couples with `-J` to its four torus neighbours and is detuned by `V` when
//! `l1 - l2 = ±1 (mod L_t)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::basis::TwoParticleBasis;
use crate::lattice::{LatticeSpec, Statistics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveguideSite {
    pub id: usize,
    pub l1: i64,
    pub l2: i64,
    pub detuning: f64,
    pub detuned: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveguideEdge {
    pub a: usize,
    pub b: usize,
    pub coupling: f64,
}

/// Waveguide array for one statistics sector.
///
/// Bosons use the full torus; fermions and hard-core bosons drop the
/// diagonal waveguides `(l, l)` together with their couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveguideLayout {
    pub sites_per_axis: usize,
    pub statistics: Statistics,
    pub hopping: f64,
    pub interaction: f64,
    pub sites: Vec<WaveguideSite>,
    pub edges: Vec<WaveguideEdge>,
}

fn torus_index(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

/// Coupled-mode matrix on all `L_t^2` torus sites, row-major in `(l1, l2)`.
pub fn build_distinguishable_2d(spec: &LatticeSpec) -> DMatrix<f64> {
    let n = spec.sites();
    let j = spec.hopping();
    let mut h = DMatrix::<f64>::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let s = torus_index(n, a, b);
            if spec.adjacent(a, b) {
                h[(s, s)] = spec.interaction();
            }
            for (x, y) in [
                (spec.shift(a, 1), b),
                (spec.shift(a, -1), b),
                (a, spec.shift(b, 1)),
                (a, spec.shift(b, -1)),
            ] {
                h[(torus_index(n, x, y), s)] += -j;
            }
        }
    }
    h
}

pub fn waveguide_layout(spec: &LatticeSpec) -> WaveguideLayout {
    let n = spec.sites();
    let keep_diagonal = spec.statistics().allows_double_occupancy();
    let mut ids = vec![usize::MAX; n * n];
    let mut sites = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b && !keep_diagonal {
                continue;
            }
            let detuned = spec.adjacent(a, b);
            ids[torus_index(n, a, b)] = sites.len();
            sites.push(WaveguideSite {
                id: sites.len(),
                l1: spec.site_label(a),
                l2: spec.site_label(b),
                detuning: if detuned { spec.interaction() } else { 0.0 },
                detuned,
            });
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let from = ids[torus_index(n, a, b)];
            if from == usize::MAX {
                continue;
            }
            // each torus bond once: towards +l1 and +l2
            for (x, y) in [(spec.shift(a, 1), b), (a, spec.shift(b, 1))] {
                let to = ids[torus_index(n, x, y)];
                if to != usize::MAX {
                    edges.push(WaveguideEdge {
                        a: from.min(to),
                        b: from.max(to),
                        coupling: -spec.hopping(),
                    });
                }
            }
        }
    }
    WaveguideLayout {
        sites_per_axis: n,
        statistics: spec.statistics(),
        hopping: spec.hopping(),
        interaction: spec.interaction(),
        sites,
        edges,
    }
}

/// Isometry from the pair basis into the torus: symmetric combinations for
/// bosons, antisymmetric for fermions, symmetric off-diagonal for HCBs.
pub fn sector_isometry(basis: &TwoParticleBasis) -> DMatrix<f64> {
    let n = basis.spec().sites();
    let sign = basis.statistics().exchange_sign();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut p = DMatrix::<f64>::zeros(n * n, basis.dim());
    for (col, &(a, b)) in basis.pairs().iter().enumerate() {
        if a == b {
            p[(torus_index(n, a, a), col)] = 1.0;
        } else {
            p[(torus_index(n, a, b), col)] = r;
            p[(torus_index(n, b, a), col)] = sign * r;
        }
    }
    p
}
