use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::propagator::Propagator;
use crate::error::Result;
use crate::model::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

/// Two-body correlation `Gamma`, indexed by site (position) or by
/// `alpha + L` (momentum).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub entries: DMatrix<f64>,
    pub space: Space,
    pub time: f64,
}

impl CorrelationMatrix {
    pub fn total(&self) -> f64 {
        self.entries.sum()
    }

    pub fn diagonal_weight(&self) -> f64 {
        self.entries.diagonal().sum()
    }

    /// `max |Gamma - Gamma^T|`.
    pub fn asymmetry(&self) -> f64 {
        (&self.entries - self.entries.transpose()).amax()
    }

    pub fn max_difference(&self, other: &CorrelationMatrix) -> f64 {
        (&self.entries - &other.entries).amax()
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }
}

/// `Gamma_qr = <a^dag_q a^dag_r a_r a_q> = |C_qr|^2`.
pub fn correlation_position(state: &StateVector) -> CorrelationMatrix {
    let basis = state.basis();
    let n = basis.spec().sites();
    let mut entries = DMatrix::zeros(n, n);
    for (i, &(a, b)) in basis.pairs().iter().enumerate() {
        let w = state.amplitudes()[i].norm_sqr();
        if a == b {
            entries[(a, a)] = 2.0 * w;
        } else {
            entries[(a, b)] = w;
            entries[(b, a)] = w;
        }
    }
    CorrelationMatrix {
        entries,
        space: Space::Position,
        time: 0.0,
    }
}

/// `e^{i p_alpha m} / sqrt(L_t)` with `alpha` and `m` as labels in `[-L, L]`.
fn fourier_table(sites: usize) -> DMatrix<Complex64> {
    let l = (sites / 2) as i64;
    let scale = 1.0 / (sites as f64).sqrt();
    DMatrix::from_fn(sites, sites, |ai, mi| {
        let alpha = ai as i64 - l;
        let m = mi as i64 - l;
        // reduce alpha * m before the division so the phase stays exact-ish
        let phase = 2.0 * std::f64::consts::PI * (alpha * m).rem_euclid(sites as i64) as f64
            / sites as f64;
        Complex64::from_polar(scale, phase)
    })
}

/// `Gamma_{alpha beta} = |C~(p_alpha, p_beta)|^2` with
/// `C~ = (1/L_t) sum_{m,l} e^{i (p_alpha m + p_beta l)} C[m][l]`.
///
/// The sum runs over basis pairs so that exchange symmetry of `C~` holds
/// bit-for-bit: fermion diagonals are exactly zero and `Gamma` is exactly
/// symmetric.
pub fn correlation_momentum(state: &StateVector) -> CorrelationMatrix {
    let basis = state.basis();
    let n = basis.spec().sites();
    let f = fourier_table(n);
    let sign = basis.statistics().exchange_sign();
    let mut ct = DMatrix::<Complex64>::zeros(n, n);
    for (i, &(a, b)) in basis.pairs().iter().enumerate() {
        let psi = state.amplitudes()[i];
        if psi == Complex64::new(0.0, 0.0) {
            continue;
        }
        for al in 0..n {
            for be in 0..n {
                let term = if a == b {
                    f[(al, a)] * f[(be, a)] * std::f64::consts::SQRT_2
                } else {
                    f[(al, a)] * f[(be, b)] + f[(al, b)] * f[(be, a)] * sign
                };
                ct[(al, be)] += psi * term;
            }
        }
    }
    CorrelationMatrix {
        entries: ct.map(|z| z.norm_sqr()),
        space: Space::Momentum,
        time: 0.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkFrame {
    pub time: f64,
    pub position: CorrelationMatrix,
    pub momentum: CorrelationMatrix,
}

/// Position and momentum correlations at each time, in input order.
pub fn walk_series(prop: &Propagator, initial: &StateVector, times: &[f64]) -> Result<Vec<WalkFrame>> {
    let states = prop.evolve_many(initial, times)?;
    Ok(states
        .par_iter()
        .zip(times.par_iter())
        .map(|(psi, &t)| WalkFrame {
            time: t,
            position: correlation_position(psi).with_time(t),
            momentum: correlation_momentum(psi).with_time(t),
        })
        .collect())
}

/// `Gamma_{q, q+1}` for every site index `q` (wrapping at the edge).
pub fn minor_diagonal(position: &CorrelationMatrix) -> Vec<f64> {
    let n = position.entries.nrows();
    (0..n).map(|q| position.entries[(q, (q + 1) % n)]).collect()
}

/// Fraction of particle density at ring distance `>= L - 1` from both
/// starting sites.
pub fn boundary_weight(position: &CorrelationMatrix, start: (usize, usize)) -> f64 {
    let n = position.entries.nrows();
    let half = n / 2;
    let dist = |a: usize, b: usize| {
        let d = (a + n - b) % n;
        d.min(n - d)
    };
    (0..n)
        .filter(|&q| dist(q, start.0).min(dist(q, start.1)) + 1 >= half)
        .map(|q| position.entries.row(q).sum())
        .sum::<f64>()
        / 2.0
}

/// Minor-diagonal series straight from evolved states, without momentum work.
pub fn minor_diagonal_series(
    prop: &Propagator,
    initial: &StateVector,
    times: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let states = prop.evolve_many(initial, times)?;
    Ok(states
        .par_iter()
        .map(|psi| minor_diagonal(&correlation_position(psi)))
        .collect())
}
