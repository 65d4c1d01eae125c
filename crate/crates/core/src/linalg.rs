//! Small dense complex linear-algebra helpers.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

pub type Mat2 = Matrix2<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli matrices `[σ_x, σ_y, σ_z]`.
pub fn paulis() -> [Mat2; 3] {
    [
        Mat2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Mat2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ]
}

/// `exp(i θ n·σ) = cos θ · 1 + i sin θ · n·σ` for a unit axis `n`.
pub fn exp_i_sigma(axis: [f64; 3], theta: f64) -> Mat2 {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [px, py, pz] = paulis();
    let n_sigma = (px * c(axis[0], 0.0) + py * c(axis[1], 0.0) + pz * c(axis[2], 0.0)) / c(norm, 0.0);
    Mat2::identity() * c(theta.cos(), 0.0) + n_sigma * c(0.0, theta.sin())
}

/// Largest entry of `|u†u − 1|`.
pub fn unitarity_deviation(u: &Mat2) -> f64 {
    (u.adjoint() * u - Mat2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// [`unitarity_deviation`] for a square dense matrix.
pub fn dense_unitarity_deviation(u: &CMatrix) -> f64 {
    max_abs(&(u.adjoint() * u - CMatrix::identity(u.nrows(), u.ncols())))
}

/// Largest entry magnitude of a dense matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product of dense matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn to_dense(m: &Mat2) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `|⟨a|b⟩| / (‖a‖‖b‖)`: one exactly when the vectors agree up to phase.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    inner(a, b).norm() / (norm(a) * norm(b))
}

/// Largest entry of `|a − b|`.
pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
