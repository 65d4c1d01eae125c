//! Seeded sampling of random states and group elements.

use rand::Rng;
use rand_distr::StandardNormal;
use num_complex::Complex64;

use crate::bloch::Spinor;
use crate::linalg::{c, Mat2};

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized vector with i.i.d. complex Gaussian entries (Haar on the sphere).
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len).map(|_| gaussian_complex(rng)).collect();
        let n = crate::linalg::norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn random_spinor<R: Rng + ?Sized>(rng: &mut R) -> Spinor {
    let v = random_unit_vector(rng, 2);
    Spinor::new(v[0], v[1]).expect("nonzero")
}

/// Haar-distributed element of SU(2).
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let v = random_unit_vector(rng, 2);
    let (a, b) = (v[0], v[1]);
    Mat2::new(a, -b.conj(), b, a.conj())
}

/// Ginibre matrix rejected until its condition number is at most `max_cond`.
pub fn random_gl2<R: Rng + ?Sized>(rng: &mut R, max_cond: f64) -> Mat2 {
    loop {
        let m = Mat2::from_fn(|_, _| gaussian_complex(rng));
        let s = m.singular_values();
        let (hi, lo) = (s[0].max(s[1]), s[0].min(s[1]));
        if lo > 0.0 && hi / lo <= max_cond {
            return m;
        }
    }
}

/// Random Hermitian positive-definite matrix with eigenvalues in `[lo, hi]`.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Mat2 {
    let u = haar_su2(rng);
    let d = Mat2::new(c(rng.random_range(lo..hi), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(rng.random_range(lo..hi), 0.0));
    u * d * u.adjoint()
}
