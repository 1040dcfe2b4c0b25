//! Dense Hermitian eigendecomposition with a deterministic ordering.
//!
//! All spectra in this crate go through [`hermitian_eigen`]. Matrices that
//! happen to be exactly real (the Rabi Hamiltonians, the position-grid
//! discretization) take a real-symmetric path, which is about 4x faster than
//! the complex one at the dimensions used here.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, column k pairs with `values[k]`.
    pub vectors: DMatrix<Complex64>,
}

fn strictly_real(mat: &DMatrix<Complex64>) -> Option<DMatrix<f64>> {
    if mat.iter().all(|c| c.im == 0.0) {
        Some(mat.map(|c| c.re))
    } else {
        None
    }
}

/// Full eigendecomposition, eigenvalues ascending (ties broken by original
/// index, so identical input bits give identical output bits).
pub(crate) fn hermitian_eigen(mat: &DMatrix<Complex64>) -> HermitianEigen {
    let n = mat.nrows();
    let (values, vectors): (Vec<f64>, DMatrix<Complex64>) = match strictly_real(mat) {
        Some(re) => {
            let se = re.symmetric_eigen();
            let vecs = se.eigenvectors.map(|x| Complex64::new(x, 0.0));
            (se.eigenvalues.iter().copied().collect(), vecs)
        }
        None => {
            let se = mat.clone().symmetric_eigen();
            (se.eigenvalues.iter().copied().collect(), se.eigenvectors)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        sorted_vectors.set_column(col, &vectors.column(i));
    }
    HermitianEigen {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

/// Ascending eigenvalues only.
pub(crate) fn hermitian_eigenvalues(mat: &DMatrix<Complex64>) -> Vec<f64> {
    let mut values: Vec<f64> = match strictly_real(mat) {
        Some(re) => re.symmetric_eigenvalues().iter().copied().collect(),
        None => mat
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect(),
    };
    values.sort_by(f64::total_cmp);
    values
}

/// Largest singular value, computed as sqrt of the top eigenvalue of M†M.
pub(crate) fn spectral_norm(mat: &DMatrix<Complex64>) -> f64 {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0.0;
    }
    let gram = mat.adjoint() * mat;
    let values = hermitian_eigenvalues(&gram);
    values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}
