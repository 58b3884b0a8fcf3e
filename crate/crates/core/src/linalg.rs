use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending with
/// matching eigenvector columns.
pub(crate) fn hermitian_eigen(m: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub(crate) fn hermitian_min_eigenvalue(m: DMatrix<Complex64>) -> f64 {
    m.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Split ascending eigenvalues into runs whose neighbours differ by < `gap`.
pub(crate) fn clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] >= gap {
            out.push(start..i);
            start = i;
        }
    }
    out
}
