use nalgebra::DMatrix;

use super::basis::TwoParticleBasis;
use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Statistics};

/// Two-magnon sector of the equivalent XXZ chain
/// `-J_ex sum (Sx Sx + Sy Sy + Delta Sz Sz) + h_z sum Sz`.
#[derive(Debug, Clone, PartialEq)]
pub struct XxzMapping {
    pub exchange: f64,
    pub anisotropy: f64,
    pub field: f64,
    /// Matrix on the hard-core boson pair basis (up spins at `l1 < l2`).
    pub matrix: DMatrix<f64>,
    /// `H_xxz - H_hcb` on this sector, a multiple of the identity.
    pub offset: f64,
}

const MAGNONS: f64 = 2.0;

pub fn map_to_xxz(spec: &LatticeSpec) -> Result<XxzMapping> {
    if spec.statistics() != Statistics::HardCoreBoson {
        return Err(Error::WrongStatistics {
            expected: "hcb",
            found: spec.statistics(),
        });
    }
    let j = spec.hopping();
    let v = spec.interaction();
    let exchange = 2.0 * j;
    let anisotropy = -v / (2.0 * j);
    let field = v;

    let basis = TwoParticleBasis::new(*spec);
    let n = spec.sites();
    let dim = basis.dim();
    let mut matrix = DMatrix::<f64>::zeros(dim, dim);

    for (col, &(a, b)) in basis.pairs().iter().enumerate() {
        let up = |site: usize| site == a || site == b;
        let sz = |site: usize| if up(site) { 0.5 } else { -0.5 };
        let mut diag = 0.0;
        for l in 0..n {
            let r = (l + 1) % n;
            diag += -exchange * anisotropy * sz(l) * sz(r);
            diag += field * sz(l);
            if up(l) != up(r) {
                // (S+ S- + S- S+) / 2 swaps the anti-aligned pair
                let (moved_from, moved_to) = if up(l) { (l, r) } else { (r, l) };
                let other = if moved_from == a { b } else { a };
                let (x, y) = if other < moved_to {
                    (other, moved_to)
                } else {
                    (moved_to, other)
                };
                let row = basis.index(x, y).expect("two-magnon closure");
                matrix[(row, col)] += -exchange * 0.5;
            }
        }
        matrix[(col, col)] += diag;
    }

    // Sz = n - 1/2: the zz and field terms expand to V sum n n plus a constant.
    let sites = n as f64;
    let offset = -exchange * anisotropy * (sites / 4.0 - MAGNONS) + field * (MAGNONS - sites / 2.0);

    Ok(XxzMapping {
        exchange,
        anisotropy,
        field,
        matrix,
        offset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let spec = LatticeSpec::with_sites(7, 1.0, -2.0, Statistics::HardCoreBoson).unwrap();
        let m = map_to_xxz(&spec).unwrap();
        assert_eq!(m.exchange, 2.0);
        assert_eq!(m.anisotropy, 1.0);
        assert_eq!(m.field, -2.0);

        let exp = LatticeSpec::with_sites(7, 1.0, -2.0 * 0.986, Statistics::HardCoreBoson).unwrap();
        assert!((map_to_xxz(&exp).unwrap().anisotropy - 0.986).abs() < 1e-15);
    }

    #[test]
    fn rejects_other_statistics() {
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let spec = LatticeSpec::with_sites(7, 1.0, -2.0, stats).unwrap();
            assert!(matches!(map_to_xxz(&spec), Err(Error::WrongStatistics { .. })));
        }
    }

    #[test]
    fn offset_is_minus_v_sites_over_four() {
        let spec = LatticeSpec::with_sites(9, 0.8, -1.3, Statistics::HardCoreBoson).unwrap();
        let m = map_to_xxz(&spec).unwrap();
        assert!((m.offset - (1.3 * 9.0 / 4.0)).abs() < 1e-14);
        let h = super::super::build_hamiltonian(&spec);
        let diff = &m.matrix - &h;
        for i in 0..diff.nrows() {
            for k in 0..diff.ncols() {
                let expect = if i == k { m.offset } else { 0.0 };
                assert!((diff[(i, k)] - expect).abs() < 1e-13);
            }
        }
    }
}
