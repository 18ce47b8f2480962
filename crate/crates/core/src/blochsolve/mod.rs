//! Translation-invariant reduction: one relative-motion block per total
//! quasi-momentum, the analytic quantization conditions, and bound/scattering
//! classification.

mod block;
mod classify;
mod conditions;

pub use block::{build_k_block, diagonalize_block, BlockEigen, KBlock};
pub use classify::{
    classify_eigenstates, spectrum_sweep, Classification, ClassifyThresholds, SpectrumRow,
    SpectrumTable, StateLabel,
};
pub use conditions::{
    bound_state_energy_fh, bound_state_eta_boson, boson_cubic, dressed_hopping, momentum_index,
    scattering_residual, BoundStateSolution, DEGENERATE,
};

use crate::lattice::LatticeSpec;

/// Ascending union of all block eigenvalues.
pub fn block_spectrum(spec: &LatticeSpec) -> Vec<f64> {
    let mut all: Vec<f64> = spec
        .alphas()
        .flat_map(|alpha| {
            let block = build_k_block(spec, alpha).expect("alpha drawn from the lattice grid");
            diagonalize_block(&block).values
        })
        .collect();
    all.sort_by(f64::total_cmp);
    all
}
