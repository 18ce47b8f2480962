mod common;

use common::{free_spectrum, spec};
use cowalk::linalg::{eigvalsh_real, spectrum_distance};
use cowalk::model::{
    build_distinguishable_2d, build_hamiltonian, sector_isometry, shared_basis, AmplitudeMatrix,
    StateVector, TwoParticleBasis,
};
use cowalk::{LatticeSpec, Statistics};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn free_spectrum_is_sum_of_single_particle_bands() {
    for stats in Statistics::ALL {
        for sites in [3, 5, 7] {
            let s = spec(sites, 0.0, stats);
            let got = eigvalsh_real(&build_hamiltonian(&s));
            let want = free_spectrum(sites, 1.0, stats);
            assert!(spectrum_distance(&got, &want) < 1e-12, "{stats} L_t={sites}");
        }
    }
}

/// Brute force: two distinguishable walkers on the ring, then the
/// symmetric or antisymmetric sector of `h (x) 1 + 1 (x) h`.
#[test]
fn free_spectrum_by_kronecker_product() {
    let n = 5;
    let h1 = DMatrix::from_fn(n, n, |a, b| {
        let d = (a + n - b) % n;
        if d == 1 || d == n - 1 {
            -1.0
        } else {
            0.0
        }
    });
    let id = DMatrix::<f64>::identity(n, n);
    let h2 = h1.kronecker(&id) + id.kronecker(&h1);
    let swap = DMatrix::from_fn(n * n, n * n, |i, j| {
        if j == (i % n) * n + i / n {
            1.0
        } else {
            0.0
        }
    });
    for (stats, sign) in [(Statistics::Boson, 1.0), (Statistics::Fermion, -1.0)] {
        let proj = (DMatrix::<f64>::identity(n * n, n * n) + &swap * sign) * 0.5;
        let sector = &proj * &h2 * &proj;
        // project out the complementary sector's zero modes by shifting them away
        let shifted = sector + (DMatrix::<f64>::identity(n * n, n * n) - &proj) * 1e3;
        let mut ev = eigvalsh_real(&shifted);
        ev.retain(|&e| e < 100.0);
        let got = eigvalsh_real(&build_hamiltonian(&spec(n, 0.0, stats)));
        assert!(spectrum_distance(&ev, &got) < 1e-12, "{stats}");
    }
}

#[test]
fn waveguide_sectors_match_two_particle_matrices() {
    for stats in Statistics::ALL {
        let s = spec(5, -1.6, stats);
        let basis = TwoParticleBasis::new(s);
        let w = sector_isometry(&basis);
        // columns orthonormal
        let gram = w.transpose() * &w;
        assert!((gram - DMatrix::<f64>::identity(basis.dim(), basis.dim())).amax() < 1e-14);
        let restricted = w.transpose() * build_distinguishable_2d(&s) * &w;
        let h = build_hamiltonian(&s);
        if stats == Statistics::HardCoreBoson {
            // the torus keeps hops onto (l, l): compare spectra of the
            // symmetric sector with diagonal sites removed instead
            let full = build_distinguishable_2d(&s);
            let keep: Vec<usize> = (0..25).filter(|i| i / 5 != i % 5).collect();
            let sub = DMatrix::from_fn(keep.len(), keep.len(), |i, j| full[(keep[i], keep[j])]);
            let wk = DMatrix::from_fn(keep.len(), basis.dim(), |i, j| w[(keep[i], j)]);
            let r = wk.transpose() * sub * &wk;
            assert!((r - &h).amax() < 1e-14);
        } else {
            assert!((restricted - &h).amax() < 1e-14, "{stats}");
        }
    }
}

#[test]
fn amplitude_matrix_symmetries_and_weight() {
    for stats in Statistics::ALL {
        let basis = shared_basis(spec(7, -1.0, stats));
        let amps = DVector::from_fn(basis.dim(), |i, _| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()));
        let psi = StateVector::new(basis.clone(), amps).unwrap().normalized();
        let c = AmplitudeMatrix::from_state(&psi);
        let e = c.entries();
        let sign = stats.exchange_sign();
        assert!((e - e.transpose() * Complex64::new(sign, 0.0)).camax() < 1e-15);
        if stats != Statistics::Boson {
            assert!(e.diagonal().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
        }
        assert!((c.weight() - 2.0).abs() < 1e-12);
        let back = c.to_state(basis.clone()).unwrap();
        assert!((back.amplitudes() - psi.amplitudes()).camax() < 1e-14);
    }
}

fn any_stats() -> impl Strategy<Value = Statistics> {
    prop_oneof![
        Just(Statistics::Boson),
        Just(Statistics::Fermion),
        Just(Statistics::HardCoreBoson)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_index_is_a_bijection(half in 1usize..9, stats in any_stats()) {
        let basis = TwoParticleBasis::new(LatticeSpec::new(half, 1.0, -1.0, stats).unwrap());
        let n = 2 * half + 1;
        let dim = if stats == Statistics::Boson { n * (n + 1) / 2 } else { n * (n - 1) / 2 };
        prop_assert_eq!(basis.dim(), dim);
        for i in 0..basis.dim() {
            let (l1, l2) = basis.pair_labels(i);
            prop_assert_eq!(basis.index_of(l1, l2).unwrap(), i);
        }
        prop_assert!(basis.pairs().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn hamiltonian_is_symmetric_with_adjacent_diagonal(
        half in 1usize..6,
        v in -10.0f64..10.0,
        j in 0.1f64..3.0,
        stats in any_stats(),
    ) {
        let s = LatticeSpec::new(half, j, v, stats).unwrap();
        let basis = TwoParticleBasis::new(s);
        let h = build_hamiltonian(&s);
        prop_assert_eq!(&h, &h.transpose());
        for (i, &(a, b)) in basis.pairs().iter().enumerate() {
            let want = if s.adjacent(a, b) { v } else { 0.0 };
            prop_assert_eq!(h[(i, i)], want);
        }
    }
}
