//! Self-check of the core invariants, run by `cowalk verify`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::blochsolve::{
    block_spectrum, bound_state_energy_fh, build_k_block, diagonalize_block, spectrum_sweep,
    ClassifyThresholds,
};
use crate::dynamics::{
    composite_cone, correlation_momentum, correlation_position, prepare_initial, time_grid,
    walk_series, Propagator, CONE_THRESHOLD,
};
use crate::effective::{build_h2_from_projectors, compare_bound_band, EffectiveModel};
use crate::fock::{to_fock, FockAlgebra, FockVector};
use crate::lattice::{LatticeSpec, Statistics};
use crate::linalg::{eigvalsh_real, spectrum_distance};
use crate::model::{build_hamiltonian, map_to_xxz, StateVector};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn spec(sites: usize, v: f64, stats: Statistics) -> LatticeSpec {
    LatticeSpec::with_sites(sites, 1.0, v, stats).expect("fixed parameters are valid")
}

fn block_completeness() -> Check {
    let mut worst: f64 = 0.0;
    for stats in Statistics::ALL {
        for sites in [5, 7, 21] {
            let s = spec(sites, -1.3, stats);
            worst = worst.max(spectrum_distance(&block_spectrum(&s), &eigvalsh_real(&build_hamiltonian(&s))));
        }
    }
    Check {
        name: "block spectra = full spectrum",
        pass: worst < 1e-10,
        detail: format!("{worst:.2e}"),
    }
}

fn hermiticity() -> Check {
    let exact = Statistics::ALL.iter().all(|&st| {
        let h = build_hamiltonian(&spec(9, -1.7, st));
        h == h.transpose()
    });
    Check {
        name: "Hamiltonian exactly symmetric",
        pass: exact,
        detail: String::new(),
    }
}

fn bound_band() -> Check {
    let mut worst: f64 = 0.0;
    for stats in [Statistics::Fermion, Statistics::HardCoreBoson] {
        let s = spec(21, -4.0, stats);
        for alpha in s.alphas() {
            let b = build_k_block(&s, alpha).expect("alpha in range");
            let e = diagonalize_block(&b).values[0];
            let exact = match bound_state_energy_fh(&s, b.momentum()) {
                Ok(x) => x.energy,
                Err(_) => return Check {
                    name: "bound band matches closed form",
                    pass: false,
                    detail: format!("no bound state at alpha {alpha}"),
                },
            };
            worst = worst.max(((e - exact) / exact).abs());
        }
    }
    Check {
        name: "bound band matches closed form",
        pass: worst < 1e-5,
        detail: format!("relative {worst:.2e}"),
    }
}

fn band_topology() -> Check {
    let t = ClassifyThresholds::default();
    let mut pass = true;
    for stats in Statistics::ALL {
        let strong = spectrum_sweep(&spec(21, -4.0, stats), &t).band_gap();
        let weak = spectrum_sweep(&spec(21, -1.0, stats), &t).band_gap();
        pass &= matches!(strong, Some(g) if g > 0.0) && weak.map_or(true, |g| g <= 0.0);
    }
    Check {
        name: "band gap at |V/2J|=2, none at 0.5",
        pass,
        detail: String::new(),
    }
}

fn conservation() -> Check {
    let times = time_grid(0.0, 1000.0, 51);
    let (mut norm, mut energy, mut sums): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for stats in Statistics::ALL {
        let p = Propagator::new(&spec(21, -1.972, stats));
        let psi = prepare_initial(p.basis(), 0, 1).expect("valid pair");
        let e0 = p.energy(&psi).expect("same basis");
        let states = p.evolve_many(&psi, &times).expect("same basis");
        for s in &states {
            norm = norm.max((s.norm() - 1.0).abs());
            energy = energy.max((p.energy(s).expect("same basis") - e0).abs());
            sums = sums.max((correlation_position(s).total() - 2.0).abs());
            sums = sums.max((correlation_momentum(s).total() - 2.0).abs());
        }
    }
    Check {
        name: "norm, energy and sum rules",
        pass: norm < 1e-12 && energy < 1e-10 && sums < 1e-10,
        detail: format!("norm {norm:.1e}, energy {energy:.1e}, sums {sums:.1e}"),
    }
}

fn operator_expectations(state: &StateVector) -> (DMatrix<f64>, DMatrix<f64>) {
    let basis = state.basis();
    let n = basis.spec().sites();
    let l = (n / 2) as i64;
    let alg = FockAlgebra::new(basis.statistics());
    let amps: Vec<Complex64> = state.amplitudes().iter().copied().collect();
    let psi = to_fock(basis, &amps);
    let position = DMatrix::from_fn(n, n, |q, r| {
        let v = alg.annihilate(r, &alg.annihilate(q, &psi));
        v.inner(&v).re
    });
    let c = |alpha: usize, v: &FockVector| {
        let p = 2.0 * std::f64::consts::PI * (alpha as i64 - l) as f64 / n as f64;
        let mut out = FockVector::zero();
        for site in 0..n {
            let phase = Complex64::from_polar(1.0 / (n as f64).sqrt(), p * (site as i64 - l) as f64);
            out.add(&alg.annihilate(site, v).scaled(phase));
        }
        out
    };
    let singles: Vec<FockVector> = (0..n).map(|a| c(a, &psi)).collect();
    let momentum = DMatrix::from_fn(n, n, |a, b| {
        let v = c(b, &singles[a]);
        v.inner(&v).re
    });
    (position, momentum)
}

fn correlation_oracle() -> Check {
    let mut worst: f64 = 0.0;
    for stats in Statistics::ALL {
        let p = Propagator::new(&spec(5, -1.0, stats));
        let psi = prepare_initial(p.basis(), -2, 1).expect("valid pair");
        // evolved states are generic superpositions over the whole basis
        for s in p.evolve_many(&psi, &time_grid(0.3, 9.0, 10)).expect("same basis") {
            let (pos, mom) = operator_expectations(&s);
            worst = worst.max((correlation_position(&s).entries - pos).amax());
            worst = worst.max((correlation_momentum(&s).entries - mom).amax());
        }
    }
    Check {
        name: "correlations = operator expectations",
        pass: worst < 1e-12,
        detail: format!("{worst:.2e}"),
    }
}

fn projector_construction() -> Check {
    let mut worst: f64 = 0.0;
    for stats in Statistics::ALL {
        for sites in [5, 7, 9] {
            let s = spec(sites, -6.0, stats);
            let built = build_h2_from_projectors(&s).expect("V != 0");
            let closed = EffectiveModel::new(&s).expect("V != 0").hamiltonian;
            worst = worst.max((built - closed).amax());
        }
    }
    Check {
        name: "projector h0 + h2 = closed form",
        pass: worst < 1e-12,
        detail: format!("{worst:.2e}"),
    }
}

fn xxz_equivalence() -> Check {
    let s = spec(7, -1.972, Statistics::HardCoreBoson);
    let m = map_to_xxz(&s).expect("hcb");
    let xxz = eigvalsh_real(&m.matrix);
    let hcb = eigvalsh_real(&build_hamiltonian(&s));
    let d: Vec<f64> = xxz.iter().zip(&hcb).map(|(a, b)| a - b).collect();
    let spread = d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - d.iter().copied().fold(f64::INFINITY, f64::min);
    Check {
        name: "XXZ two-magnon = HCB + constant",
        pass: spread < 1e-10 && (d[0] - m.offset).abs() < 1e-10,
        detail: format!("spread {spread:.2e}, offset {:.6}", m.offset),
    }
}

fn effective_convergence() -> Check {
    let mut pass = true;
    let mut parts = Vec::new();
    for stats in Statistics::ALL {
        let errs: Vec<f64> = [5.0, 10.0, 20.0, 40.0]
            .iter()
            .map(|r| match compare_bound_band(&spec(21, -2.0 * r, stats)) {
                Ok(rows) => rows.iter().map(|c| c.abs_err).fold(0.0, f64::max),
                Err(_) => f64::INFINITY,
            })
            .collect();
        pass &= errs[3] < 1e-3
            && errs.windows(2).all(|w| w[1] < w[0] || (w[0] < 1e-12 && w[1] < 1e-12));
        parts.push(format!("{stats} {:.1e}", errs[3]));
    }
    Check {
        name: "effective band converges",
        pass,
        detail: parts.join(", "),
    }
}

fn statistics_signatures() -> Check {
    let times = time_grid(0.0, 4.0, 21);
    let series = |st| {
        let p = Propagator::new(&spec(21, 0.0, st));
        let psi = prepare_initial(p.basis(), 0, 1).expect("valid pair");
        walk_series(&p, &psi, &times).expect("same basis")
    };
    let f = series(Statistics::Fermion);
    let b = series(Statistics::Boson);
    let zero = f.iter().all(|x| x.momentum.entries.diagonal().iter().all(|&g| g == 0.0));
    let bunch = b[1..].iter().all(|x| x.momentum.diagonal_weight() > 0.0);
    Check {
        name: "fermion anti-bunching, boson bunching",
        pass: zero && bunch,
        detail: String::new(),
    }
}

fn cowalk_ratio() -> Check {
    let fit = |sites, st| composite_cone(&spec(sites, -80.0, st), CONE_THRESHOLD, 801);
    match (
        fit(41, Statistics::Boson),
        fit(21, Statistics::Fermion),
        fit(21, Statistics::HardCoreBoson),
    ) {
        (Ok(b), Ok(f), Ok(h)) => {
            let ratio = b.speed / f.speed;
            let fh = (f.speed - h.speed).abs() / f.speed;
            Check {
                name: "co-walking speed ratio 3:1",
                pass: (2.7..=3.3).contains(&ratio) && fh < 0.02,
                detail: format!("B/F {ratio:.4}, |F-H|/F {fh:.1e}"),
            }
        }
        (b, f, h) => Check {
            name: "co-walking speed ratio 3:1",
            pass: false,
            detail: format!("{:?}", [b.err(), f.err(), h.err()].map(|e| e.map(|e| e.to_string()))),
        },
    }
}

pub fn run_all() -> Vec<Check> {
    vec![
        hermiticity(),
        block_completeness(),
        bound_band(),
        band_topology(),
        conservation(),
        correlation_oracle(),
        projector_construction(),
        xxz_equivalence(),
        effective_convergence(),
        statistics_signatures(),
        cowalk_ratio(),
    ]
}
