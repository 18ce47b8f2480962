use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::basis::TwoParticleBasis;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::lattice::Statistics;

/// `C[l1][l2] = <0| a_{l2} a_{l1} |Psi>` on site indices.
///
/// Bosons: symmetric, `C[l][l] = sqrt(2) psi_{ll}`. Fermions: antisymmetric.
/// Hard-core bosons: symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeMatrix {
    statistics: Statistics,
    entries: DMatrix<Complex64>,
}

impl AmplitudeMatrix {
    pub fn from_state(state: &StateVector) -> Self {
        let basis = state.basis();
        let n = basis.spec().sites();
        let sign = basis.statistics().exchange_sign();
        let mut entries = DMatrix::zeros(n, n);
        for (i, &(a, b)) in basis.pairs().iter().enumerate() {
            let psi = state.amplitudes()[i];
            if a == b {
                entries[(a, a)] = psi * std::f64::consts::SQRT_2;
            } else {
                entries[(a, b)] = psi;
                entries[(b, a)] = psi * sign;
            }
        }
        AmplitudeMatrix {
            statistics: basis.statistics(),
            entries,
        }
    }

    /// Wrap a raw matrix; it must already have the statistics symmetry.
    pub fn from_entries(statistics: Statistics, entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        Ok(AmplitudeMatrix { statistics, entries })
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.entries[(a, b)]
    }

    /// Sum of `|C|^2` over all ordered entries (2 for a normalized state).
    pub fn weight(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Recover `psi` on the given basis from the upper triangle of `C`.
    pub fn to_state(&self, basis: Arc<TwoParticleBasis>) -> Result<StateVector> {
        let n = basis.spec().sites();
        if self.entries.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.entries.nrows(),
            });
        }
        let amplitudes = DVector::from_iterator(
            basis.dim(),
            basis.pairs().iter().map(|&(a, b)| {
                if a == b {
                    self.entries[(a, a)] / std::f64::consts::SQRT_2
                } else {
                    self.entries[(a, b)]
                }
            }),
        );
        StateVector::new(basis, amplitudes)
    }
}
