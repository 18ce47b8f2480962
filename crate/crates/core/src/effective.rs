//! Second-order effective model of the bound composite in the strongly
//! interacting limit: the pair on bonds `(q, q+1)` hops as a single particle.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::blochsolve::{spectrum_sweep, ClassifyThresholds, StateLabel};
use crate::error::{Error, Result};
use crate::fock::{FockAlgebra, FockVector};
use crate::lattice::{LatticeSpec, Statistics};
use crate::linalg;

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveModel {
    pub statistics: Statistics,
    pub j_eff: f64,
    pub mu_eff: f64,
    /// `mu_eff` on the diagonal, `j_eff` between neighbouring bonds (periodic).
    pub hamiltonian: DMatrix<f64>,
}

/// `(J_eff, mu_eff)`: `(3J^2/V, V + 6J^2/V)` for bosons, `(J^2/V, V + 2J^2/V)` otherwise.
pub fn effective_params(spec: &LatticeSpec) -> Result<(f64, f64)> {
    let v = spec.interaction();
    if v == 0.0 {
        return Err(Error::ZeroInteraction);
    }
    let j2 = spec.hopping() * spec.hopping();
    let weight = match spec.statistics() {
        Statistics::Boson => 3.0,
        _ => 1.0,
    };
    Ok((weight * j2 / v, v + 2.0 * weight * j2 / v))
}

impl EffectiveModel {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        let (j_eff, mu_eff) = effective_params(spec)?;
        let n = spec.sites();
        let mut h = DMatrix::from_diagonal_element(n, n, mu_eff);
        for q in 0..n {
            let next = (q + 1) % n;
            h[(q, next)] += j_eff;
            h[(next, q)] += j_eff;
        }
        Ok(EffectiveModel {
            statistics: spec.statistics(),
            j_eff,
            mu_eff,
            hamiltonian: h,
        })
    }

    pub fn sites(&self) -> usize {
        self.hamiltonian.nrows()
    }

    /// `<K| H |K>` for the plane wave `e^{iKq} / sqrt(L_t)`.
    pub fn plane_wave_energy(&self, momentum: f64) -> f64 {
        let n = self.sites();
        let mut e = Complex64::new(0.0, 0.0);
        for p in 0..n {
            for q in 0..n {
                let phase = Complex64::from_polar(1.0, momentum * (q as f64 - p as f64));
                e += phase * self.hamiltonian[(p, q)];
            }
        }
        e.re / n as f64
    }

    /// `|psi_q(t)|^2` for a composite starting on bond `origin`.
    pub fn evolve(&self, origin: usize, times: &[f64]) -> Vec<Vec<f64>> {
        let (values, vectors) = linalg::eigh_real(&self.hamiltonian);
        let n = self.sites();
        times
            .iter()
            .map(|&t| {
                (0..n)
                    .map(|q| {
                        let amp: Complex64 = (0..n)
                            .map(|k| {
                                Complex64::from_polar(vectors[(q, k)] * vectors[(origin, k)], -values[k] * t)
                            })
                            .sum();
                        amp.norm_sqr()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `mu_eff + 2 J_eff cos K`, i.e. `V + 12 (J^2/V) cos^2(K/2)` for bosons and
/// `V + 4 (J^2/V) cos^2(K/2)` for fermions and hard-core bosons.
pub fn effective_spectrum(model: &EffectiveModel, momentum: f64) -> f64 {
    model.mu_eff + 2.0 * model.j_eff * momentum.cos()
}

/// Composite-site probabilities from [`EffectiveModel::evolve`].
pub fn evolve_effective(model: &EffectiveModel, origin: usize, times: &[f64]) -> Vec<Vec<f64>> {
    model.evolve(origin, times)
}

/// `sum_q p_q d_q^2` with `d_q` the signed ring displacement from `origin`.
pub fn displacement_variance(probabilities: &[f64], origin: usize) -> f64 {
    let n = probabilities.len() as i64;
    probabilities
        .iter()
        .enumerate()
        .map(|(q, &p)| {
            let mut d = (q as i64 - origin as i64).rem_euclid(n);
            if d > n / 2 {
                d -= n;
            }
            p * (d * d) as f64
        })
        .sum()
}

/// `h0 + h2 = E0 P0 + P0 H1 S H1 P0` on the bond states `|G_q> = a+_q a+_{q+1} |0>`,
/// built by literal operator algebra.
///
/// `H0 = V sum n_l n_{l+1}` is the unperturbed part with `E0 = V` on the
/// bond manifold, `H1` is the hopping and `S = sum_e |e><e| / (E0 - E_e)`
/// over all other occupations.
pub fn build_h2_from_projectors(spec: &LatticeSpec) -> Result<DMatrix<f64>> {
    let v = spec.interaction();
    if v == 0.0 {
        return Err(Error::ZeroInteraction);
    }
    let n = spec.sites();
    let algebra = FockAlgebra::new(spec.statistics());
    let ground: Vec<FockVector> = (0..n).map(|q| algebra.pair(n, q, (q + 1) % n)).collect();
    let is_ground = |occ: &[u8]| (0..n).any(|q| occ[q] == 1 && occ[(q + 1) % n] == 1);
    let unperturbed = |occ: &Vec<u8>| -> f64 {
        let mut single = FockVector::zero();
        single.add_term(occ.clone(), Complex64::new(1.0, 0.0));
        algebra.apply_interaction(n, v, &single).get(occ).re
    };
    let e0 = unperturbed(ground[0].terms().next().expect("bond state is nonzero").0);

    // S H1 |G_q> for each ground state
    let excited: Vec<FockVector> = ground
        .iter()
        .map(|g| {
            let h1 = algebra.apply_hopping(n, spec.hopping(), g);
            h1.map_terms(|occ| {
                if is_ground(occ) {
                    return None;
                }
                Some((occ.clone(), 1.0 / (e0 - unperturbed(occ))))
            })
        })
        .collect();

    let mut h = DMatrix::zeros(n, n);
    for p in 0..n {
        let bra = algebra.apply_hopping(n, spec.hopping(), &ground[p]);
        for q in 0..n {
            // H1 is Hermitian, so <G_p| H1 = (H1 |G_p>)^dag
            let value = bra.inner(&excited[q]);
            let norm = ground[p].inner(&ground[q]);
            h[(p, q)] = e0 * norm.re + value.re;
        }
    }
    Ok(h)
}

/// One row of the effective-vs-exact bound-band comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub alpha: i64,
    #[serde(rename = "K")]
    pub momentum: f64,
    pub e_eff: f64,
    pub e_exact: f64,
    pub abs_err: f64,
}

/// Effective band against the exact lowest bound state of each K-block.
pub fn compare_bound_band(spec: &LatticeSpec) -> Result<Vec<SpectrumComparison>> {
    let model = EffectiveModel::new(spec)?;
    let table = spectrum_sweep(spec, &ClassifyThresholds::default());
    spec.alphas()
        .map(|alpha| {
            let row = table
                .rows
                .iter()
                .find(|r| r.alpha == alpha && r.label == StateLabel::Bound)
                .ok_or(Error::NoBoundState {
                    k: spec.momentum(alpha),
                    v_abs: spec.interaction().abs(),
                    jk_abs: (2.0 * spec.hopping() * (spec.momentum(alpha) / 2.0).cos()).abs(),
                })?;
            let e_eff = effective_spectrum(&model, row.momentum);
            Ok(SpectrumComparison {
                alpha,
                momentum: row.momentum,
                e_eff,
                e_exact: row.energy,
                abs_err: (e_eff - row.energy).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(sites: usize, v: f64, stats: Statistics) -> LatticeSpec {
        LatticeSpec::with_sites(sites, 1.0, v, stats).unwrap()
    }

    #[test]
    fn parameters_at_strong_coupling() {
        let (jf, _) = effective_params(&spec(21, -80.0, Statistics::Fermion)).unwrap();
        let (jb, _) = effective_params(&spec(21, -80.0, Statistics::Boson)).unwrap();
        assert_eq!(jf, -0.0125);
        assert_eq!(jb, -0.0375);
        assert!(matches!(
            effective_params(&spec(21, 0.0, Statistics::Boson)),
            Err(Error::ZeroInteraction)
        ));
    }

    #[test]
    fn chemical_potential_shift_ratio() {
        let s = spec(9, -3.7, Statistics::Fermion);
        let (_, mf) = effective_params(&s).unwrap();
        let (_, mb) = effective_params(&s.with_statistics(Statistics::Boson)).unwrap();
        assert!(((mb + 3.7) - 3.0 * (mf + 3.7)).abs() < 1e-14);
    }

    #[test]
    fn projector_matrix_matches_closed_form() {
        for stats in Statistics::ALL {
            for sites in [5, 7, 9] {
                let s = spec(sites, -6.0, stats);
                let built = build_h2_from_projectors(&s).unwrap();
                let closed = EffectiveModel::new(&s).unwrap().hamiltonian;
                assert!((built - closed).amax() < 1e-12, "{stats} L_t={sites}");
            }
        }
    }

    #[test]
    fn plane_waves_diagonalize() {
        let s = spec(11, -10.0, Statistics::Boson);
        let m = EffectiveModel::new(&s).unwrap();
        for alpha in s.alphas() {
            let k = s.momentum(alpha);
            assert!((m.plane_wave_energy(k) - effective_spectrum(&m, k)).abs() < 1e-12);
        }
        let pi = std::f64::consts::PI;
        assert!((effective_spectrum(&m, pi) - -10.0).abs() < 1e-14);
    }

    #[test]
    fn commutes_with_translation() {
        let m = EffectiveModel::new(&spec(9, -4.0, Statistics::HardCoreBoson)).unwrap();
        let shift = DMatrix::from_fn(9, 9, |i, j| if j == (i + 1) % 9 { 1.0 } else { 0.0 });
        let c = &m.hamiltonian * &shift - &shift * &m.hamiltonian;
        assert!(c.amax() < 1e-13);
    }

    #[test]
    fn effective_evolution_starts_localized_and_spreads() {
        let m = EffectiveModel::new(&spec(21, -80.0, Statistics::Fermion)).unwrap();
        let p = evolve_effective(&m, 10, &[0.0, 50.0]);
        assert!((p[0][10] - 1.0).abs() < 1e-13);
        assert!((p[1].iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // tight binding: variance = 2 J_eff^2 t^2
        let var = displacement_variance(&p[1], 10);
        assert!((var - 2.0 * m.j_eff.powi(2) * 2500.0).abs() < 1e-6);
    }
}
