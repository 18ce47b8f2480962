use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use crate::linalg;
use crate::model::{build_hamiltonian_on, StateVector, TwoParticleBasis};

/// Spectral propagator `e^{-iHt} = U e^{-i Lambda t} U^T` for the full
/// two-particle Hamiltonian (hbar = 1).
#[derive(Debug, Clone)]
pub struct Propagator {
    basis: Arc<TwoParticleBasis>,
    hamiltonian: DMatrix<f64>,
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(spec: &LatticeSpec) -> Self {
        Self::on_basis(Arc::new(TwoParticleBasis::new(*spec)))
    }

    pub fn on_basis(basis: Arc<TwoParticleBasis>) -> Self {
        let hamiltonian = build_hamiltonian_on(&basis);
        let (values, vectors) = linalg::eigh_real(&hamiltonian);
        Propagator {
            basis,
            hamiltonian,
            values,
            vectors,
        }
    }

    pub fn spec(&self) -> &LatticeSpec {
        self.basis.spec()
    }

    pub fn basis(&self) -> &Arc<TwoParticleBasis> {
        &self.basis
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.hamiltonian
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    /// `max |U Lambda U^T - H|`.
    pub fn reconstruction_error(&self) -> f64 {
        let lambda = DMatrix::from_diagonal(&DVector::from_column_slice(&self.values));
        (&self.vectors * lambda * self.vectors.transpose() - &self.hamiltonian).amax()
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        if state.amplitudes().len() != self.basis.dim() || state.basis().spec() != self.spec() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                found: state.amplitudes().len(),
            });
        }
        Ok(())
    }

    /// Eigenbasis coefficients `U^T psi`.
    pub fn coefficients(&self, state: &StateVector) -> Result<DVector<Complex64>> {
        self.check(state)?;
        Ok(real_times(&self.vectors.transpose(), state.amplitudes()))
    }

    fn synthesize(&self, coefficients: &DVector<Complex64>, t: f64) -> StateVector {
        let phased = DVector::from_fn(coefficients.len(), |n, _| {
            coefficients[n] * Complex64::from_polar(1.0, -self.values[n] * t)
        });
        let amplitudes = real_times(&self.vectors, &phased);
        StateVector::new(self.basis.clone(), amplitudes).expect("dimension fixed by the basis")
    }

    /// `psi(t)`; negative `t` runs the evolution backwards.
    pub fn evolve(&self, state: &StateVector, t: f64) -> Result<StateVector> {
        let c = self.coefficients(state)?;
        Ok(self.synthesize(&c, t))
    }

    /// `psi(t)` at each time, sharing one projection onto the eigenbasis.
    pub fn evolve_many(&self, state: &StateVector, times: &[f64]) -> Result<Vec<StateVector>> {
        use rayon::prelude::*;
        let c = self.coefficients(state)?;
        Ok(times.par_iter().map(|&t| self.synthesize(&c, t)).collect())
    }

    /// `<psi|H|psi>` from the Hamiltonian matrix itself.
    pub fn energy(&self, state: &StateVector) -> Result<f64> {
        self.check(state)?;
        let h_psi = real_times(&self.hamiltonian, state.amplitudes());
        Ok(state.amplitudes().dotc(&h_psi).re)
    }

    /// Projection onto eigenstates with energy in `[lo, hi]`, not renormalized.
    pub fn project_energy_window(&self, state: &StateVector, lo: f64, hi: f64) -> Result<StateVector> {
        let mut c = self.coefficients(state)?;
        for (n, &e) in self.values.iter().enumerate() {
            if e < lo || e > hi {
                c[n] = Complex64::new(0.0, 0.0);
            }
        }
        Ok(self.synthesize(&c, 0.0))
    }
}

fn real_times(m: &DMatrix<f64>, v: &DVector<Complex64>) -> DVector<Complex64> {
    let re = DVector::from_iterator(v.len(), v.iter().map(|z| z.re));
    let im = DVector::from_iterator(v.len(), v.iter().map(|z| z.im));
    let (re, im) = (m * re, m * im);
    DVector::from_fn(m.nrows(), |i, _| Complex64::new(re[i], im[i]))
}

/// Unit vector on the pair `(l1, l2)` of site labels.
pub fn prepare_initial(basis: &Arc<TwoParticleBasis>, l1: i64, l2: i64) -> Result<StateVector> {
    let spec = basis.spec();
    spec.site_index(l1)?;
    spec.site_index(l2)?;
    if l1 == l2 && !spec.statistics().allows_double_occupancy() {
        return Err(Error::DoubleOccupancy {
            site: l1,
            statistics: spec.statistics(),
        });
    }
    let index = basis.index_of(l1, l2)?;
    Ok(StateVector::basis_state(basis.clone(), index))
}
