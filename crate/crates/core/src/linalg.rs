//! Dense Hermitian eigensolvers with ascending, deterministic output.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Eigenvalues ascending with matching eigenvector columns.
pub fn eigh_real(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let order = ascending(eig.eigenvalues.as_slice());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn eigh_complex(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(m.clone());
    let order = ascending(eig.eigenvalues.as_slice());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn eigvalsh_real(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn ascending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

/// Largest entrywise modulus of `m - m^dagger`.
pub fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `max |a_i - b_i|` over two sorted spectra of equal length.
pub fn spectrum_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra differ in length");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
