//! Spinors, stereographic coordinates and Bloch vectors.
//!
//! A spinor `(c0, c1)` sits at `z = c0 / c1` in the extended plane and at
//! the usual Bloch vector `(2 Re c0*c1, 2 Im c0*c1, |c0|² − |c1|²)`, so that
//! `|0⟩` is the north pole and `z = ∞`.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};

/// Normalized spin-½ state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    c0: Complex64,
    c1: Complex64,
}

impl Spinor {
    /// Normalizes `(c0, c1)`; fails on the zero vector.
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { c0: c0 / norm, c1: c1 / norm })
    }

    pub fn up() -> Self {
        Self { c0: Complex64::new(1.0, 0.0), c1: Complex64::new(0.0, 0.0) }
    }

    pub fn down() -> Self {
        Self { c0: Complex64::new(0.0, 0.0), c1: Complex64::new(1.0, 0.0) }
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &Spinor) -> f64 {
        (self.c0.conj() * other.c0 + self.c1.conj() * other.c1).norm()
    }

    /// Applies a 2×2 matrix and renormalizes.
    pub fn transform(&self, m: &Mat2) -> Result<Self> {
        Spinor::new(m[(0, 0)] * self.c0 + m[(0, 1)] * self.c1, m[(1, 0)] * self.c0 + m[(1, 1)] * self.c1)
    }

    pub fn bloch(&self) -> BlochPoint {
        let cross = self.c0.conj() * self.c1;
        BlochPoint::from_unit([2.0 * cross.re, 2.0 * cross.im, self.c0.norm_sqr() - self.c1.norm_sqr()])
    }
}

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    n: [f64; 3],
}

impl BlochPoint {
    /// Normalizes an arbitrary nonzero 3-vector.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { n: [v[0] / norm, v[1] / norm, v[2] / norm] })
    }

    fn from_unit(v: [f64; 3]) -> Self {
        Self::new(v).expect("unit vector")
    }

    pub const NORTH: BlochPoint = BlochPoint { n: [0.0, 0.0, 1.0] };
    pub const SOUTH: BlochPoint = BlochPoint { n: [0.0, 0.0, -1.0] };

    pub fn coords(&self) -> [f64; 3] {
        self.n
    }

    pub fn x(&self) -> f64 {
        self.n[0]
    }

    pub fn y(&self) -> f64 {
        self.n[1]
    }

    pub fn z(&self) -> f64 {
        self.n[2]
    }

    /// Euclidean distance between the two points (the chordal metric).
    pub fn chordal(&self, other: &BlochPoint) -> f64 {
        let d = [self.n[0] - other.n[0], self.n[1] - other.n[1], self.n[2] - other.n[2]];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }

    pub fn rotate(&self, r: &Matrix3<f64>) -> BlochPoint {
        let v = r * Vector3::new(self.n[0], self.n[1], self.n[2]);
        BlochPoint::from_unit([v.x, v.y, v.z])
    }

    /// Spinor whose Bloch vector is this point, phase fixed as in [`z_to_spinor`].
    pub fn spinor(&self) -> Spinor {
        z_to_spinor(bloch_to_z(self))
    }
}

/// Fractional-linear map `z ↦ (a z + b) / (c z + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// `m = u · r` with `u` unitary and `r` Hermitian positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarFactors {
    pub u: Mat2,
    pub r: Mat2,
}

pub fn spinor_to_z(s: &Spinor) -> ExtendedComplex {
    if s.c1.norm() > 0.0 {
        ExtendedComplex::Finite(s.c0 / s.c1)
    } else {
        ExtendedComplex::Infinity
    }
}

/// Inverse of [`spinor_to_z`]; `c1` is real nonnegative for finite `z` and
/// `c0 = 1` at infinity.
pub fn z_to_spinor(z: ExtendedComplex) -> Spinor {
    match z {
        ExtendedComplex::Infinity => Spinor::up(),
        ExtendedComplex::Finite(z) => {
            let norm = (1.0 + z.norm_sqr()).sqrt();
            if norm.is_finite() {
                Spinor { c0: z / norm, c1: Complex64::new(1.0 / norm, 0.0) }
            } else {
                // |z| so large that 1 + |z|² overflows: go through z/|z|.
                let r = z.norm();
                Spinor { c0: z / r, c1: Complex64::new(1.0 / r, 0.0) }
            }
        }
    }
}

/// Stereographic image `(2 Re z, −2 Im z, |z|² − 1) / (|z|² + 1)`.
pub fn z_to_bloch(z: ExtendedComplex) -> BlochPoint {
    match z {
        ExtendedComplex::Infinity => BlochPoint::NORTH,
        ExtendedComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            if r2 > 1.0 {
                // Divide through by |z|² to stay accurate near the north pole.
                let w = z.inv();
                let s = 1.0 + w.norm_sqr();
                BlochPoint::from_unit([2.0 * w.re / s, 2.0 * w.im / s, (1.0 - w.norm_sqr()) / s])
            } else {
                let s = 1.0 + r2;
                BlochPoint::from_unit([2.0 * z.re / s, -2.0 * z.im / s, (r2 - 1.0) / s])
            }
        }
    }
}

pub fn bloch_to_z(n: &BlochPoint) -> ExtendedComplex {
    let [x, y, z] = n.n;
    if z >= 0.0 {
        let den = Complex64::new(x, y);
        if den.norm() == 0.0 {
            return ExtendedComplex::Infinity;
        }
        ExtendedComplex::Finite(Complex64::new(1.0 + z, 0.0) / den)
    } else {
        ExtendedComplex::Finite(Complex64::new(x, -y) / (1.0 - z))
    }
}

/// Rotation `R_ij = ½ Tr(σ_i u σ_j u†)` induced on Bloch vectors.
pub fn su2_to_so3(u: &Mat2) -> Result<Matrix3<f64>> {
    let deviation = linalg::unitarity_deviation(u);
    if deviation > 1e-10 {
        return Err(Error::NotUnitary { deviation });
    }
    let paulis = linalg::paulis();
    let ud = u.adjoint();
    let mut r = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            r[(i, j)] = 0.5 * (paulis[i] * u * paulis[j] * ud).trace().re;
        }
    }
    Ok(r)
}

/// Polar factors from the singular-value decomposition `m = W Σ V†`:
/// `u = W V†`, `r = V Σ V†`.
pub fn polar_decompose(m: &Mat2) -> Result<PolarFactors> {
    let det_abs = m.determinant().norm();
    if det_abs <= 1e-12 {
        return Err(Error::Singular { det_abs });
    }
    let svd = m.svd(true, true);
    let w = svd.u.expect("left singular vectors");
    let v_t = svd.v_t.expect("right singular vectors");
    let sigma = Matrix2::from_diagonal(&svd.singular_values.map(|s| Complex64::new(s, 0.0)));
    let u = w * v_t;
    let mut r = v_t.adjoint() * sigma * v_t;
    // Symmetrize away rounding.
    r = (r + r.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(PolarFactors { u, r })
}

pub fn mobius_from_gl2(m: &Mat2) -> Result<MobiusMap> {
    let det_abs = m.determinant().norm();
    if det_abs == 0.0 {
        return Err(Error::Singular { det_abs });
    }
    Ok(MobiusMap { a: m[(0, 0)], b: m[(0, 1)], c: m[(1, 0)], d: m[(1, 1)] })
}

pub fn apply_mobius(f: &MobiusMap, z: ExtendedComplex) -> ExtendedComplex {
    let zero = Complex64::new(0.0, 0.0);
    match z {
        ExtendedComplex::Infinity => {
            if f.c == zero {
                ExtendedComplex::Infinity
            } else {
                ExtendedComplex::Finite(f.a / f.c)
            }
        }
        ExtendedComplex::Finite(z) => {
            let den = f.c * z + f.d;
            if den == zero {
                ExtendedComplex::Infinity
            } else {
                ExtendedComplex::Finite((f.a * z + f.b) / den)
            }
        }
    }
}

/// Chordal distance between two points of the extended plane.
pub fn chordal_distance(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    z_to_bloch(a).chordal(&z_to_bloch(b))
}
