use nalgebra::DMatrix;

use super::basis::TwoParticleBasis;
use crate::lattice::LatticeSpec;

/// Dense two-particle Hamiltonian in the ordered pair basis.
///
/// Column `j` is obtained by lifting basis state `j` to its amplitude
/// matrix `C`, applying
/// `(HC)[x][y] = -J (C[x][y±1] + C[x±1][y]) + V [x ~ y] C[x][y]`
/// and reading the result back on the basis. The construction is real and
/// symmetric for all three statistics.
pub fn build_hamiltonian(spec: &LatticeSpec) -> DMatrix<f64> {
    let basis = TwoParticleBasis::new(*spec);
    build_hamiltonian_on(&basis)
}

pub fn build_hamiltonian_on(basis: &TwoParticleBasis) -> DMatrix<f64> {
    let spec = basis.spec();
    let dim = basis.dim();
    let j = spec.hopping();
    let v = spec.interaction();
    let sign = basis.statistics().exchange_sign();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut h = DMatrix::<f64>::zeros(dim, dim);

    for (col, &(a, b)) in basis.pairs().iter().enumerate() {
        if spec.adjacent(a, b) {
            h[(col, col)] += v;
        }
        // nonzero entries of C for this basis vector
        let entries: Vec<(usize, usize, f64)> = if a == b {
            vec![(a, a, sqrt2)]
        } else {
            vec![(a, b, 1.0), (b, a, sign)]
        };
        for (x0, y0, c) in entries {
            for (x, y) in [
                (spec.shift(x0, 1), y0),
                (spec.shift(x0, -1), y0),
                (x0, spec.shift(y0, 1)),
                (x0, spec.shift(y0, -1)),
            ] {
                // only the upper triangle (x <= y) maps back onto the basis
                if x > y {
                    continue;
                }
                if let Some(row) = basis.index(x, y) {
                    let scale = if x == y { 1.0 / sqrt2 } else { 1.0 };
                    h[(row, col)] += -j * c * scale;
                }
            }
        }
    }
    // the two doublon couplings agree only to rounding: sqrt(2) vs 2 / sqrt(2)
    (&h + h.transpose()) * 0.5
}
