//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use cowalk::fock::{to_fock, FockAlgebra, FockVector};
use cowalk::model::{StateVector, TwoParticleBasis};
use cowalk::{LatticeSpec, Statistics};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn spec(sites: usize, v: f64, stats: Statistics) -> LatticeSpec {
    LatticeSpec::with_sites(sites, 1.0, v, stats).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_state(basis: &Arc<TwoParticleBasis>, rng: &mut StdRng) -> StateVector {
    let amps = DVector::from_fn(basis.dim(), |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    StateVector::new(basis.clone(), amps).unwrap().normalized()
}

fn fock_of(state: &StateVector) -> FockVector {
    let amps: Vec<Complex64> = state.amplitudes().iter().copied().collect();
    to_fock(state.basis(), &amps)
}

/// `<a+_q a+_r a_r a_q> = || a_r a_q psi ||^2` by literal operators.
pub fn operator_position(state: &StateVector) -> DMatrix<f64> {
    let n = state.basis().spec().sites();
    let alg = FockAlgebra::new(state.basis().statistics());
    let psi = fock_of(state);
    DMatrix::from_fn(n, n, |q, r| {
        let v = alg.annihilate(r, &alg.annihilate(q, &psi));
        v.inner(&v).re
    })
}

/// `c_alpha = L_t^{-1/2} sum_l e^{i p_alpha l} a_l`, applied literally.
fn momentum_annihilate(alg: &FockAlgebra, n: usize, alpha: i64, v: &FockVector) -> FockVector {
    let l = (n / 2) as i64;
    let mut out = FockVector::zero();
    for site in 0..n {
        let label = site as i64 - l;
        let p = 2.0 * std::f64::consts::PI * alpha as f64 / n as f64;
        let coeff = Complex64::from_polar(1.0 / (n as f64).sqrt(), p * label as f64);
        out.add(&alg.annihilate(site, v).scaled(coeff));
    }
    out
}

pub fn operator_momentum(state: &StateVector) -> DMatrix<f64> {
    let n = state.basis().spec().sites();
    let l = (n / 2) as i64;
    let alg = FockAlgebra::new(state.basis().statistics());
    let psi = fock_of(state);
    let singles: Vec<FockVector> = (0..n)
        .map(|a| momentum_annihilate(&alg, n, a as i64 - l, &psi))
        .collect();
    DMatrix::from_fn(n, n, |a, b| {
        let v = momentum_annihilate(&alg, n, b as i64 - l, &singles[a]);
        v.inner(&v).re
    })
}

/// Single-particle ring propagator `e^{-i h t}`, `h = -J` on neighbours.
pub fn single_particle_propagator(sites: usize, hopping: f64, t: f64) -> DMatrix<Complex64> {
    // plane waves diagonalize the ring exactly
    let n = sites as f64;
    DMatrix::from_fn(sites, sites, |x, y| {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..sites {
            let p = 2.0 * std::f64::consts::PI * m as f64 / n;
            let e = -2.0 * hopping * p.cos();
            acc += Complex64::from_polar(1.0 / n, p * (x as f64 - y as f64) - e * t);
        }
        acc
    })
}

/// Position correlation of two free walkers from `a` and `b`, (anti)symmetrized.
pub fn free_pair_correlation(sites: usize, hopping: f64, t: f64, a: usize, b: usize, sign: f64) -> DMatrix<f64> {
    let u = single_particle_propagator(sites, hopping, t);
    DMatrix::from_fn(sites, sites, |q, r| {
        (u[(q, a)] * u[(r, b)] + u[(q, b)] * u[(r, a)] * sign).norm_sqr()
    })
}

/// All free two-particle energies allowed by exchange symmetry, ascending.
///
/// Two hard-core bosons are Jordan-Wigner fermions with an antiperiodic
/// ring, so their momenta sit on the half-shifted grid.
pub fn free_spectrum(sites: usize, hopping: f64, stats: Statistics) -> Vec<f64> {
    let shift = if stats == Statistics::HardCoreBoson { 0.5 } else { 0.0 };
    let e: Vec<f64> = (0..sites)
        .map(|m| {
            let p = 2.0 * std::f64::consts::PI * (m as f64 + shift) / sites as f64;
            -2.0 * hopping * p.cos()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..sites {
        for j in i..sites {
            if i == j && stats != Statistics::Boson {
                continue;
            }
            out.push(e[i] + e[j]);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
