//! Small dense helpers shared by the two-qubit modules.

use nalgebra::{Complex, DMatrix, Matrix2, Matrix4, SymmetricEigen, Vector4};

pub type C64 = Complex<f64>;
pub type Matrix4c = Matrix4<C64>;
pub type Vector4c = Vector4<C64>;

pub(crate) fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

pub fn hermitian_eigenvalues4(m: &Matrix4c) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut values: [f64; 4] = eig.eigenvalues.into();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Reduced density of the first qubit of a two-qubit operator.
pub fn partial_trace_second(m: &Matrix4c) -> Matrix2<C64> {
    Matrix2::from_fn(|i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
}

pub fn outer(v: &Vector4c) -> Matrix4c {
    v * v.adjoint()
}

/// Principal square root of a Hermitian PSD matrix; negative eigenvalues are clipped.
pub fn psd_sqrt(m: &Matrix4c) -> Matrix4c {
    let eig = SymmetricEigen::new(*m);
    let roots = eig.eigenvalues.map(|v| c(v.max(0.0).sqrt()));
    let u = eig.eigenvectors;
    u * Matrix4c::from_diagonal(&roots) * u.adjoint()
}

/// Shannon entropy in bits of a probability list; entries at or below `floor` contribute zero.
pub fn shannon_bits(probs: &[f64], floor: f64) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > floor)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Largest entry modulus.
pub fn max_abs<'a>(entries: impl IntoIterator<Item = &'a C64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}
