//! Exact two-particle time evolution and two-body correlations.

mod cone;
mod correlation;
mod propagator;

pub use cone::{cone_speed, time_grid, ConeFit, CONE_THRESHOLD, MAX_DISTANCE, MIN_POINTS};
pub use correlation::{
    boundary_weight, correlation_momentum, correlation_position, minor_diagonal, minor_diagonal_series, walk_series,
    CorrelationMatrix, Space, WalkFrame,
};
pub use propagator::{prepare_initial, Propagator};

use crate::effective::effective_params;
use crate::error::Result;
use crate::lattice::LatticeSpec;

/// Cone fit for a pair starting on bond `(0, 1)`.
///
/// The time window runs to the ballistic arrival of the effective composite
/// at three sites past the farthest fitted distance, `(d_max + 3) / (2 |J_eff|)`.
pub fn composite_cone(spec: &LatticeSpec, threshold: f64, samples: usize) -> Result<ConeFit> {
    let prop = Propagator::new(spec);
    let initial = prepare_initial(prop.basis(), 0, 1)?;
    let times = composite_times(spec, samples)?;
    let series = minor_diagonal_series(&prop, &initial, &times)?;
    cone_speed(&times, &series, spec.site_index(0)?, threshold)
}

/// Sample times for [`composite_cone`].
pub fn composite_times(spec: &LatticeSpec, samples: usize) -> Result<Vec<f64>> {
    let (j_eff, _) = effective_params(spec)?;
    let dmax = MAX_DISTANCE.min(spec.half_width().saturating_sub(3));
    Ok(time_grid(0.0, (dmax as f64 + 3.0) / (2.0 * j_eff.abs()), samples))
}
