use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Statistics};
use crate::linalg;

/// Relative-motion Hamiltonian at fixed total quasi-momentum `K = 2 pi alpha / L_t`.
///
/// The stored matrix is the Hermitian form. For bosons the `r = 0` amplitude
/// is rescaled by `1/sqrt(2)`, which turns the `(0, 2 J_K; J_K, V)` corner of
/// the `phi(r)` equations into `sqrt(2) J_K` on both sides;
/// [`KBlock::relative_motion_matrix`] returns the unscaled form.
#[derive(Debug, Clone, PartialEq)]
pub struct KBlock {
    alpha: i64,
    momentum: f64,
    jk: f64,
    corner: Complex64,
    statistics: Statistics,
    matrix: DMatrix<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockEigen {
    pub values: Vec<f64>,
    /// Columns are eigenvectors in the Hermitian block coordinates.
    pub vectors: DMatrix<Complex64>,
}

pub fn build_k_block(spec: &LatticeSpec, alpha: i64) -> Result<KBlock> {
    let l = spec.half_width() as i64;
    if alpha < -l || alpha > l {
        return Err(Error::AlphaOutOfRange {
            alpha,
            half_width: spec.half_width(),
        });
    }
    let momentum = spec.momentum(alpha);
    let jk = -2.0 * spec.hopping() * (momentum / 2.0).cos();
    // e^{i K L_t / 2} = e^{i pi alpha}, exactly real
    let twist = Complex64::new(if alpha % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    let corner = match spec.statistics() {
        Statistics::Fermion => -twist * jk,
        _ => twist * jk,
    };
    let statistics = spec.statistics();
    let v = spec.interaction();
    let c = |x: f64| Complex64::new(x, 0.0);

    let matrix = match statistics {
        Statistics::Boson => {
            // r = 0..=L
            let n = spec.half_width() + 1;
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for r in 0..n - 1 {
                m[(r, r + 1)] = c(jk);
                m[(r + 1, r)] = c(jk);
            }
            m[(0, 1)] = c(std::f64::consts::SQRT_2 * jk);
            m[(1, 0)] = c(std::f64::consts::SQRT_2 * jk);
            m[(1, 1)] += c(v);
            m[(n - 1, n - 1)] += corner;
            m
        }
        Statistics::Fermion | Statistics::HardCoreBoson => {
            // r = 1..=L
            let n = spec.half_width();
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for r in 0..n.saturating_sub(1) {
                m[(r, r + 1)] = c(jk);
                m[(r + 1, r)] = c(jk);
            }
            m[(0, 0)] += c(v);
            m[(n - 1, n - 1)] += corner;
            m
        }
    };

    Ok(KBlock {
        alpha,
        momentum,
        jk,
        corner,
        statistics,
        matrix,
    })
}

impl KBlock {
    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    /// Total quasi-momentum `K`.
    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    /// Dressed hopping `J_K = -2 J cos(K/2)`.
    pub fn jk(&self) -> f64 {
        self.jk
    }

    /// Boundary element `J_K^{B/F/H}` on the `r = L` diagonal.
    pub fn corner(&self) -> Complex64 {
        self.corner
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Smallest relative coordinate represented by row 0.
    pub fn first_r(&self) -> usize {
        match self.statistics {
            Statistics::Boson => 0,
            _ => 1,
        }
    }

    /// The block acting on `phi(r)` directly; not Hermitian for bosons.
    pub fn relative_motion_matrix(&self) -> DMatrix<Complex64> {
        let mut m = self.matrix.clone();
        if self.statistics == Statistics::Boson {
            m[(0, 1)] = Complex64::new(2.0 * self.jk, 0.0);
            m[(1, 0)] = Complex64::new(self.jk, 0.0);
        }
        m
    }

    /// `phi(r)` for `r = first_r()..=L` from a Hermitian-coordinate eigenvector.
    pub fn relative_amplitudes(&self, vector: &[Complex64]) -> Vec<Complex64> {
        let mut phi = vector.to_vec();
        if self.statistics == Statistics::Boson {
            phi[0] *= std::f64::consts::SQRT_2;
        }
        phi
    }
}

pub fn diagonalize_block(block: &KBlock) -> BlockEigen {
    let (values, vectors) = linalg::eigh_complex(&block.matrix);
    BlockEigen { values, vectors }
}
