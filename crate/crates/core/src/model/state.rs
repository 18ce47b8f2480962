use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use super::basis::TwoParticleBasis;
use crate::error::{Error, Result};

/// Amplitudes `psi_{l1 l2}` over a [`TwoParticleBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Arc<TwoParticleBasis>,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(basis: Arc<TwoParticleBasis>, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// Unit vector on basis state `index`.
    pub fn basis_state(basis: Arc<TwoParticleBasis>, index: usize) -> Self {
        let mut amplitudes = DVector::zeros(basis.dim());
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { basis, amplitudes }
    }

    pub fn basis(&self) -> &Arc<TwoParticleBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.amplitudes.unscale_mut(n);
        }
        self
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}
