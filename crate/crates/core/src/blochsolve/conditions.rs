//! Quantization conditions for the relative quasi-momentum `k` and the
//! infinite-ring closed forms for bound states.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Statistics};

/// Below this modulus a dressed hopping or a denominator counts as zero.
pub const DEGENERATE: f64 = 1e-13;

/// A bound state `phi(r) ~ e^{-eta r}` in the large-ring limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundStateSolution {
    pub momentum: f64,
    /// Decay rate; infinite when `J_K` vanishes.
    pub eta: f64,
    /// `2 J_K cosh(eta)` for the attractive branch, `-2 J_K cosh(eta)` for the
    /// repulsive one (where `e^{ik} = -e^{-eta}`).
    pub energy: f64,
}

/// Total quasi-momentum index `alpha` for `K` on the grid `2 pi alpha / L_t`.
pub fn momentum_index(spec: &LatticeSpec, momentum: f64) -> Result<i64> {
    let scaled = momentum * spec.sites() as f64 / (2.0 * std::f64::consts::PI);
    let alpha = scaled.round();
    if (scaled - alpha).abs() > 1e-9 {
        return Err(Error::OffGrid { momentum });
    }
    let alpha = alpha as i64;
    if alpha.unsigned_abs() as usize > spec.half_width() {
        return Err(Error::AlphaOutOfRange {
            alpha,
            half_width: spec.half_width(),
        });
    }
    Ok(alpha)
}

pub fn dressed_hopping(spec: &LatticeSpec, momentum: f64) -> f64 {
    -2.0 * spec.hopping() * (momentum / 2.0).cos()
}

/// `|e^{i k L_t} - RHS(k)|` for the statistics-appropriate quantization
/// condition at total quasi-momentum `K`.
///
/// `k` may be complex; scattering states have real `k`, bound states
/// `k = i eta`.
pub fn scattering_residual(spec: &LatticeSpec, momentum: f64, k: Complex64) -> Result<f64> {
    let alpha = momentum_index(spec, momentum)?;
    let jk = dressed_hopping(spec, momentum);
    let v = spec.interaction();
    let i = Complex64::i();
    let eik = (i * k).exp();
    let emik = (-i * k).exp();
    let parity = if alpha % 2 == 0 { 1.0 } else { -1.0 };

    let (sign, numerator, denominator) = match spec.statistics() {
        Statistics::Fermion => (parity, jk - v * eik, jk - v * emik),
        Statistics::HardCoreBoson => (-parity, jk - v * eik, jk - v * emik),
        Statistics::Boson => (
            parity,
            jk * (eik - emik) + v * (1.0 + eik * eik),
            jk * (eik - emik) - v * (1.0 + emik * emik),
        ),
    };
    if denominator.norm() < DEGENERATE {
        return Err(Error::DegenerateDenominator {
            modulus: denominator.norm(),
        });
    }
    let lhs = (i * k * spec.sites() as f64).exp();
    Ok((lhs - sign * numerator / denominator).norm())
}

/// Fermion/HCB bound-band energy `V + J_K^2 / V = V + (4 J^2 / V) cos^2(K/2)`,
/// with `e^eta = |V / J_K|`.
pub fn bound_state_energy_fh(spec: &LatticeSpec, momentum: f64) -> Result<BoundStateSolution> {
    if spec.statistics() == Statistics::Boson {
        return Err(Error::WrongStatistics {
            expected: "fermion or hcb",
            found: spec.statistics(),
        });
    }
    let v = spec.interaction();
    let jk = dressed_hopping(spec, momentum);
    if jk.abs() < DEGENERATE {
        if v == 0.0 {
            return Err(Error::NoBoundState {
                k: momentum,
                v_abs: 0.0,
                jk_abs: jk.abs(),
            });
        }
        return Ok(BoundStateSolution {
            momentum,
            eta: f64::INFINITY,
            energy: v,
        });
    }
    if v.abs() <= jk.abs() {
        return Err(Error::NoBoundState {
            k: momentum,
            v_abs: v.abs(),
            jk_abs: jk.abs(),
        });
    }
    Ok(BoundStateSolution {
        momentum,
        eta: (v / jk).abs().ln(),
        energy: v + jk * jk / v,
    })
}

/// Root `x = e^eta > 1` of `x^3 - beta x^2 - x - beta = 0` for `beta > 0`.
fn boson_root_positive(beta: f64) -> f64 {
    let disc = (beta.powi(4) + 11.0 * beta * beta - 1.0).sqrt();
    let delta0 = (18.0 * beta + beta.powi(3) + 3.0 * 3f64.sqrt() * disc).cbrt();
    (beta + (3.0 + beta * beta) / delta0 + delta0) / 3.0
}

/// Boson bound state from the closed-form cubic root with `beta = V / J_K`.
///
/// For `beta < 0` the cubic's odd symmetry gives `x(beta) = -x(-beta)`.
pub fn bound_state_eta_boson(spec: &LatticeSpec, momentum: f64) -> Result<BoundStateSolution> {
    if spec.statistics() != Statistics::Boson {
        return Err(Error::WrongStatistics {
            expected: "boson",
            found: spec.statistics(),
        });
    }
    let v = spec.interaction();
    let jk = dressed_hopping(spec, momentum);
    if jk.abs() < DEGENERATE && v != 0.0 {
        return Ok(BoundStateSolution {
            momentum,
            eta: f64::INFINITY,
            energy: v,
        });
    }
    let beta = v / jk;
    let validity = beta * beta * (beta * beta + 11.0);
    if !(validity > 1.0) {
        return Err(Error::InvalidBosonRegime { value: validity });
    }
    let x = beta.signum() * boson_root_positive(beta.abs());
    Ok(BoundStateSolution {
        momentum,
        eta: x.abs().ln(),
        energy: jk * (x + 1.0 / x),
    })
}

/// `x^3 - beta x^2 - x - beta` (the boson bound-state condition times `x^2 / J_K`).
pub fn boson_cubic(beta: f64, x: f64) -> f64 {
    x.powi(3) - beta * x * x - x - beta
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(sites: usize, v: f64, stats: Statistics) -> LatticeSpec {
        LatticeSpec::with_sites(sites, 1.0, v, stats).unwrap()
    }

    #[test]
    fn fh_closed_form_values() {
        let s = spec(21, -4.0, Statistics::Fermion);
        let b = bound_state_energy_fh(&s, 0.0).unwrap();
        assert!((b.energy + 5.0).abs() < 1e-15);
        assert!((b.eta - 2f64.ln()).abs() < 1e-15);
        assert!((b.energy - 2.0 * -2.0 * b.eta.cosh()).abs() < 1e-12);
        // K -> pi: E -> V
        let near_pi = s.momentum(10);
        let e = bound_state_energy_fh(&s, near_pi).unwrap().energy;
        assert!((e + 4.0).abs() < 4.0 / 4.0 * (near_pi / 2.0).cos().powi(2) + 1e-15);
    }

    #[test]
    fn fh_no_bound_state() {
        let s = spec(21, -1.0, Statistics::HardCoreBoson);
        assert!(matches!(bound_state_energy_fh(&s, 0.0), Err(Error::NoBoundState { .. })));
        assert!(bound_state_energy_fh(&s, s.momentum(10)).is_ok());
        let b = spec(21, -1.0, Statistics::Boson);
        assert!(matches!(bound_state_energy_fh(&b, 0.0), Err(Error::WrongStatistics { .. })));
    }

    #[test]
    fn boson_root_satisfies_condition() {
        for &v in &[-0.7, -1.0, -4.0, -10.0, -80.0] {
            let s = spec(21, v, Statistics::Boson);
            for alpha in s.alphas() {
                let k = s.momentum(alpha);
                let b = bound_state_eta_boson(&s, k).unwrap();
                let jk = dressed_hopping(&s, k);
                let x = b.eta.exp();
                assert!(boson_cubic(v / jk, x).abs() < 1e-12 * x.powi(3));
                let cond = jk * ((-b.eta).exp() - b.eta.exp()) + v * (1.0 + (-2.0 * b.eta).exp());
                assert!(cond.abs() < 1e-10, "cond {cond} at V={v}, alpha={alpha}");
                assert!((b.energy - 2.0 * jk * b.eta.cosh()).abs() < 1e-12 * b.energy.abs());
            }
        }
    }

    #[test]
    fn boson_large_beta_limit() {
        let mut last = f64::INFINITY;
        for &beta in &[10.0, 100.0, 1000.0, 1e4] {
            let x = boson_root_positive(beta);
            assert!(x > beta);
            let ratio = x / beta;
            assert!(ratio < last);
            last = ratio;
        }
        assert!((last - 1.0).abs() < 1e-6);
    }

    #[test]
    fn boson_invalid_regime() {
        // beta = V / J_K = 0.1 at K = 0 with J = 1 -> V = -0.2
        let s = spec(21, -0.2, Statistics::Boson);
        assert!(matches!(
            bound_state_eta_boson(&s, 0.0),
            Err(Error::InvalidBosonRegime { .. })
        ));
    }

    #[test]
    fn boson_binds_deeper_than_fermion() {
        let b = spec(21, -4.0, Statistics::Boson);
        let f = spec(21, -4.0, Statistics::Fermion);
        let eb = bound_state_eta_boson(&b, 0.0).unwrap().energy;
        let ef = bound_state_energy_fh(&f, 0.0).unwrap().energy;
        assert!(eb < ef && ef < 0.0);
    }

    #[test]
    fn free_fermion_roots() {
        // V = 0: e^{i k L_t} = (-1)^alpha, so k = (2 pi m + pi alpha) / L_t
        let s = spec(5, 0.0, Statistics::Fermion);
        for alpha in s.alphas() {
            let kt = s.momentum(alpha);
            for m in 0..5 {
                let k = (2.0 * PI * m as f64 + PI * alpha as f64) / 5.0;
                let r = scattering_residual(&s, kt, Complex64::new(k, 0.0)).unwrap();
                assert!(r < 1e-13, "alpha={alpha} m={m} r={r}");
                let off = scattering_residual(&s, kt, Complex64::new(k + 0.3, 0.0)).unwrap();
                assert!(off > 1e-2);
            }
        }
    }

    #[test]
    fn bound_root_defect_is_exponentially_small() {
        let s = spec(21, -4.0, Statistics::Fermion);
        for alpha in s.alphas() {
            let kt = s.momentum(alpha);
            let b = bound_state_energy_fh(&s, kt).unwrap();
            let r = scattering_residual(&s, kt, Complex64::new(0.0, b.eta)).unwrap();
            let bound = (-b.eta * 21.0).exp() * 4.0;
            assert!(r <= bound + 1e-15, "alpha={alpha}: {r} vs {bound}");
        }
    }

    #[test]
    fn degenerate_denominator_flagged() {
        // J_K = V at k = 0 for fermions: denominator J_K - V e^{-ik} vanishes
        let s = spec(21, -1.0, Statistics::Fermion);
        let kt = s.momentum(7);
        assert!((dressed_hopping(&s, kt) - (-1.0)).abs() < 1e-12);
        assert!(matches!(
            scattering_residual(&s, kt, Complex64::new(0.0, 0.0)),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn off_grid_momentum_rejected() {
        let s = spec(21, -1.0, Statistics::Fermion);
        assert!(matches!(
            scattering_residual(&s, 0.1, Complex64::new(0.3, 0.0)),
            Err(Error::OffGrid { .. })
        ));
    }
}
