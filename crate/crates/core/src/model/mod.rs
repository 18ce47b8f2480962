//! Two-particle Hilbert space, Hamiltonian and equivalent models.

mod amplitude;
mod basis;
mod hamiltonian;
mod state;
mod waveguide;
mod xxz;

pub use amplitude::AmplitudeMatrix;
pub use basis::TwoParticleBasis;
pub use hamiltonian::{build_hamiltonian, build_hamiltonian_on};
pub use state::StateVector;
pub use waveguide::{
    build_distinguishable_2d, sector_isometry, waveguide_layout, WaveguideEdge, WaveguideLayout,
    WaveguideSite,
};
pub use xxz::{map_to_xxz, XxzMapping};

use std::sync::Arc;

use crate::lattice::LatticeSpec;

pub fn build_basis(spec: LatticeSpec) -> TwoParticleBasis {
    TwoParticleBasis::new(spec)
}

pub fn amplitude_matrix(state: &StateVector) -> AmplitudeMatrix {
    AmplitudeMatrix::from_state(state)
}

pub fn shared_basis(spec: LatticeSpec) -> Arc<TwoParticleBasis> {
    Arc::new(TwoParticleBasis::new(spec))
}
