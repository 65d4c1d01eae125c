//! Majorana stellar representation of spin-J pure states.
//!
//! Amplitudes are indexed by `m = J, J−1, …, −J`, so entry `k` of the
//! amplitude vector is `ψ_{J−k}`, the Dicke state with `k` excitations.
//! The Majorana polynomial is `Σ_k (−1)^k √C(2J,k) ψ_{J−k} z^k`; a product
//! state `|s⟩^⊗2J` then has a `2J`-fold root at `z = c0/c1`, which puts
//! `|J,J⟩` on the north pole and `|J,−J⟩` on the south pole.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bloch::{self, BlochPoint, ExtendedComplex, Spinor};
use crate::error::{Error, Result};
use crate::linalg::{self, binomial, c, CMatrix, Mat2};
use crate::polyroots::{self, ComplexPolynomial, RootSet};

/// Default chordal clustering threshold for degenerate points.
pub const DEFAULT_EPS: f64 = 1e-6;

/// Relative residual tolerance handed to the root finder.
pub const ROOT_TOL: f64 = 1e-10;

/// Normalized pure state of a single spin `J = two_j / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    two_j: u32,
    amps: Vec<Complex64>,
}

impl SpinState {
    /// Normalizes `amps`, which must have length `two_j + 1`.
    pub fn new(two_j: u32, amps: Vec<Complex64>) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidSpin("J must be at least 1/2".into()));
        }
        let dim = two_j as usize + 1;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: amps.len() });
        }
        let n = linalg::norm(&amps);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { two_j, amps: amps.into_iter().map(|z| z / n).collect() })
    }

    /// `|J, J − k⟩`.
    pub fn dicke(two_j: u32, k: usize) -> Result<Self> {
        let mut amps = vec![c(0.0, 0.0); two_j as usize + 1];
        *amps.get_mut(k).ok_or(Error::DimensionMismatch { expected: two_j as usize + 1, got: k + 1 })? =
            c(1.0, 0.0);
        Self::new(two_j, amps)
    }

    /// `α|J,J⟩ + β|J,−J⟩`, i.e. `α|0⟩^⊗N + β|1⟩^⊗N` with `N = 2J`.
    pub fn two_component(n: u32, alpha: Complex64, beta: Complex64) -> Result<Self> {
        let mut amps = vec![c(0.0, 0.0); n as usize + 1];
        amps[0] = alpha;
        amps[n as usize] = beta;
        Self::new(n, amps)
    }

    /// `(|0⟩^⊗N + |1⟩^⊗N)/√2`.
    pub fn noon(n: u32) -> Result<Self> {
        Self::two_component(n, c(1.0, 0.0), c(1.0, 0.0))
    }

    /// `((|0⟩ + |1⟩)/√2)^⊗N`, the shot-noise reference state.
    pub fn coherent_plus(n: u32) -> Result<Self> {
        let plus = Spinor::new(c(1.0, 0.0), c(1.0, 0.0))?;
        state_from_points(&vec![plus; n as usize], n)
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// `|⟨self|other⟩|`, or zero for different spins.
    pub fn fidelity(&self, other: &SpinState) -> f64 {
        if self.two_j != other.two_j {
            return 0.0;
        }
        linalg::inner(&self.amps, &other.amps).norm()
    }
}

/// The `2J` Majorana points of a state together with the roots they come from.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConstellation {
    points: Vec<BlochPoint>,
    source_roots: RootSet,
}

impl PointConstellation {
    /// Finite roots map through the stereographic projection, roots at
    /// infinity to the north pole; points follow the root order.
    pub fn from_roots(roots: RootSet) -> Self {
        let mut points: Vec<BlochPoint> =
            roots.finite_roots.iter().map(|z| bloch::z_to_bloch(ExtendedComplex::Finite(*z))).collect();
        points.extend(std::iter::repeat_n(BlochPoint::NORTH, roots.infinity_count));
        Self { points, source_roots: roots }
    }

    pub fn points(&self) -> &[BlochPoint] {
        &self.points
    }

    pub fn source_roots(&self) -> &RootSet {
        &self.source_roots
    }

    /// Roots as extended-complex values, in point order.
    pub fn roots(&self) -> Vec<ExtendedComplex> {
        self.source_roots
            .finite_roots
            .iter()
            .map(|z| ExtendedComplex::Finite(*z))
            .chain(std::iter::repeat_n(ExtendedComplex::Infinity, self.source_roots.infinity_count))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Multiplicities of coincident Majorana points, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegeneracySignature(pub Vec<usize>);

impl DegeneracySignature {
    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }
}

pub fn majorana_poly(s: &SpinState) -> ComplexPolynomial {
    let n = s.two_j as u64;
    let coeffs = s
        .amps
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            a * (sign * (binomial(n, k as u64) as f64).sqrt())
        })
        .collect();
    ComplexPolynomial::with_degree(coeffs, n as usize).expect("normalized state has a nonzero coefficient")
}

/// Majorana constellation of `s`. Numerically split multiple roots are
/// collapsed first; any points still closer than `eps` (chordal) are then
/// replaced by their common mean so that degenerate points repeat exactly.
pub fn majorana_points(s: &SpinState, eps: f64) -> Result<PointConstellation> {
    majorana_points_with(s, eps, rounding_error(s.two_j))
}

/// Normwise amplitude error of a freshly rounded spin-`J` state.
pub fn rounding_error(two_j: u32) -> f64 {
    4.0 * (two_j as f64 + 1.0) * f64::EPSILON
}

/// [`majorana_points`] for a state whose amplitude vector is known only to
/// within `amp_err` in norm. Points of a multiple root that this error can
/// split apart are still merged.
pub fn majorana_points_with(s: &SpinState, eps: f64, amp_err: f64) -> Result<PointConstellation> {
    let p = majorana_poly(s);
    let raw = polyroots::find_roots(&p, ROOT_TOL)?;
    let n = s.two_j as u64;
    let coeff_err: Vec<f64> = (0..=n).map(|k| amp_err * (binomial(n, k) as f64).sqrt()).collect();
    let refined = polyroots::refine_clusters_with(&p, &raw, &coeff_err);
    let constellation = PointConstellation::from_roots(refined);
    Ok(snap_clusters(constellation, eps))
}

fn snap_clusters(c: PointConstellation, eps: f64) -> PointConstellation {
    let labels = single_linkage(c.points(), eps);
    let groups = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut roots = c.source_roots.clone();
    let nfin = roots.finite_roots.len();
    for g in 0..groups {
        let members: Vec<usize> = (0..c.len()).filter(|&i| labels[i] == g).collect();
        if members.len() < 2 {
            continue;
        }
        // Any member at infinity pins the whole cluster to the pole.
        if members.iter().any(|&i| i >= nfin) {
            continue;
        }
        let zs: Vec<Complex64> = members.iter().map(|&i| roots.finite_roots[i]).collect();
        if zs.iter().all(|z| *z == zs[0]) {
            continue;
        }
        let mean = mean_point(members.iter().map(|&i| c.points[i]));
        let z = match bloch::bloch_to_z(&mean) {
            ExtendedComplex::Finite(z) => z,
            ExtendedComplex::Infinity => continue,
        };
        for &i in &members {
            roots.finite_roots[i] = z;
        }
    }
    PointConstellation::from_roots(roots)
}

fn mean_point(points: impl Iterator<Item = BlochPoint>) -> BlochPoint {
    let mut acc = [0.0; 3];
    for p in points {
        for (a, x) in acc.iter_mut().zip(p.coords()) {
            *a += x;
        }
    }
    BlochPoint::new(acc).expect("cluster of nearby unit vectors has nonzero mean")
}

/// Single-linkage cluster label per point under chordal threshold `eps`.
fn single_linkage(points: &[BlochPoint], eps: f64) -> Vec<usize> {
    let n = points.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for seed in 0..n {
        if label[seed] != usize::MAX {
            continue;
        }
        label[seed] = next;
        let mut stack = vec![seed];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if label[j] == usize::MAX && points[i].chordal(&points[j]) <= eps {
                    label[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    label
}

/// Symmetrized product of `2J` spinors in the `|J,m⟩` basis.
///
/// `Π_i (c0_i x + c1_i y) = Σ_k e_k x^{2J−k} y^k` gives `ψ_{J−k} ∝ e_k / √C(2J,k)`.
pub fn state_from_points(points: &[Spinor], two_j: u32) -> Result<SpinState> {
    if points.len() != two_j as usize {
        return Err(Error::DimensionMismatch { expected: two_j as usize, got: points.len() });
    }
    let mut e = vec![c(1.0, 0.0)];
    for s in points {
        let mut next = vec![c(0.0, 0.0); e.len() + 1];
        for (k, a) in e.iter().enumerate() {
            next[k] += a * s.c0();
            next[k + 1] += a * s.c1();
        }
        e = next;
    }
    let n = two_j as u64;
    let amps = e.iter().enumerate().map(|(k, a)| a / (binomial(n, k as u64) as f64).sqrt()).collect();
    SpinState::new(two_j, amps)
}

/// Spin-J state with the given constellation, from Bloch points.
pub fn state_from_bloch(points: &[BlochPoint]) -> Result<SpinState> {
    let spinors: Vec<Spinor> = points.iter().map(|p| p.spinor()).collect();
    state_from_points(&spinors, points.len() as u32)
}

/// Action of `m^⊗2J` on the symmetric subspace in the Dicke basis.
///
/// Column `l` expands `(a x + c y)^{2J−l} (b x + d y)^l` and rescales by
/// `√(C(2J,l) / C(2J,k))`.
pub fn sym_power(m: &Mat2, two_j: u32) -> CMatrix {
    let n = two_j as usize;
    let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let mut out = CMatrix::zeros(n + 1, n + 1);
    for l in 0..=n {
        let first = binomial_expansion(a, cc, n - l);
        let second = binomial_expansion(b, d, l);
        for (i, x) in first.iter().enumerate() {
            for (j, y) in second.iter().enumerate() {
                out[(i + j, l)] += x * y;
            }
        }
        for k in 0..=n {
            let scale = (binomial(n as u64, l as u64) as f64 / binomial(n as u64, k as u64) as f64).sqrt();
            out[(k, l)] *= scale;
        }
    }
    out
}

/// Coefficients of `y^i` in `(p x + q y)^e`.
fn binomial_expansion(p: Complex64, q: Complex64, e: usize) -> Vec<Complex64> {
    (0..=e).map(|i| p.powu((e - i) as u32) * q.powu(i as u32) * binomial(e as u64, i as u64) as f64).collect()
}

/// `M_J · ψ`, renormalized.
pub fn apply_gl2(s: &SpinState, m: &Mat2) -> Result<SpinState> {
    apply_gl2_with_error(s, m).map(|(out, _)| out)
}

/// [`apply_gl2`] together with an estimate of the normwise error of the
/// result.
///
/// Evaluated through the singular value decomposition `M = W Σ V†` as
/// `W_J · Σ_J · (V†)_J · ψ` with `Σ_J` scaled to `diag((σ₂/σ₁)^k)`. The
/// outer factors are unitary, so rounding stays at the level of `ε`, but
/// renormalizing by `‖Σ_J (V†)_J ψ‖` amplifies it: a state sent mostly to
/// the weak singular direction comes out with error `~ε / ‖Σ_J (V†)_J ψ‖`,
/// up to `ε · cond(M)^{2J}`.
pub fn apply_gl2_with_error(s: &SpinState, m: &Mat2) -> Result<(SpinState, f64)> {
    let det_abs = m.determinant().norm();
    if det_abs <= 1e-300 {
        return Err(Error::Singular { det_abs });
    }
    let svd = m.svd(true, true);
    let (w, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let (s1, s2) = (svd.singular_values[0], svd.singular_values[1]);
    let ratio = if s1 > 0.0 { s2 / s1 } else { 0.0 };
    let mut mid = sym_power(&v_t, s.two_j) * DVector::from_column_slice(&s.amps);
    for (k, x) in mid.iter_mut().enumerate() {
        *x *= ratio.powi(k as i32);
    }
    let gain = mid.norm();
    let out = sym_power(&w, s.two_j) * mid;
    let state = SpinState::new(s.two_j, out.iter().copied().collect())?;
    let err = 2.0 * rounding_error(s.two_j) / gain;
    Ok((state, err))
}

pub fn degeneracy_signature(c: &PointConstellation, eps: f64) -> DegeneracySignature {
    let labels = single_linkage(c.points(), eps);
    let groups = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes: Vec<usize> = (0..groups).map(|g| labels.iter().filter(|&&l| l == g).count()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    DegeneracySignature(sizes)
}

/// Smallest chordal distance between points of different clusters.
pub fn cluster_separation(c: &PointConstellation, eps: f64) -> f64 {
    let labels = single_linkage(c.points(), eps);
    let mut best = f64::INFINITY;
    for i in 0..c.len() {
        for j in (i + 1)..c.len() {
            if labels[i] != labels[j] {
                best = best.min(c.points[i].chordal(&c.points[j]));
            }
        }
    }
    best
}

/// Chordal radius by which an amplitude error of `amp_err` (in norm) can
/// move the `mult`-fold Majorana point `point` of `s`.
///
/// The state is rotated so that `point` sits at `z = 0`, which leaves the
/// normwise error unchanged. There the noisy polynomial is
/// `c_d z^d + Σ_k δ_k z^k` with `|δ_k| ≤ amp_err·√C(2J,k)`, and the radius
/// `ρ` solves `|c_d| ρ^d = amp_err Σ_{k<d} √C(2J,k) ρ^k`. Near `z = 0` a
/// displacement `ρ` is a chordal distance of about `2ρ`.
pub fn resolution_radius(s: &SpinState, point: &Spinor, mult: usize, amp_err: f64) -> f64 {
    if mult == 0 || mult > s.two_j as usize {
        return f64::INFINITY;
    }
    let target = bloch::z_to_spinor(ExtendedComplex::Finite(c(0.0, 0.0)));
    let column = |x: &Spinor| Mat2::new(x.c0(), -x.c1().conj(), x.c1(), x.c0().conj());
    let u = column(&target) * column(point).adjoint();
    let rotated = sym_power(&u, s.two_j) * DVector::from_column_slice(&s.amps);
    let Ok(rotated) = SpinState::new(s.two_j, rotated.iter().copied().collect()) else {
        return f64::INFINITY;
    };
    let lead = majorana_poly(&rotated).coeffs()[mult].norm();
    let n = s.two_j as u64;
    let weights: Vec<f64> = (0..mult).map(|k| amp_err * (binomial(n, k as u64) as f64).sqrt()).collect();
    let excess = |r: f64| lead * r.powi(mult as i32) - weights.iter().rev().fold(0.0, |acc, w| acc * r + w);
    if lead == 0.0 {
        return f64::INFINITY;
    }
    if amp_err == 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while excess(hi) <= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return f64::INFINITY;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    2.0 * hi
}

/// `|⟨s| U_J(φ) |s⟩|` for `U_J(φ) = sym_power(exp(iφ n·σ))` at
/// `φ_k = 2πk / samples`, `k = 0..samples`.
pub fn rotation_fidelity_profile(s: &SpinState, axis: &BlochPoint, samples: usize) -> Vec<(f64, f64)> {
    let samples = samples.max(2);
    let psi = DVector::from_column_slice(&s.amps);
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / samples as f64;
            let u = sym_power(&linalg::exp_i_sigma(axis.coords(), phi), s.two_j);
            let rotated = &u * &psi;
            (phi, psi.dotc(&rotated).norm())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::multiset_deviation;
    use crate::random::{haar_su2, random_gl2, random_positive, random_spinor, random_unit_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn random_state(rng: &mut ChaCha8Rng, two_j: u32) -> SpinState {
        SpinState::new(two_j, random_unit_vector(rng, two_j as usize + 1)).unwrap()
    }

    #[test]
    fn spin_half_up_is_north() {
        let s = SpinState::new(1, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let p = majorana_poly(&s);
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
        assert_eq!(pts.points(), &[BlochPoint::NORTH]);
    }

    #[test]
    fn spin_half_reproduces_its_bloch_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let sp = random_spinor(&mut rng);
            let s = SpinState::new(1, vec![sp.c0(), sp.c1()]).unwrap();
            let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
            assert!(pts.points()[0].chordal(&sp.bloch()) < 1e-12);
        }
    }

    #[test]
    fn lowest_weight_is_south_pole() {
        let s = SpinState::dicke(2, 2).unwrap();
        let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
        assert_eq!(pts.source_roots().infinity_count, 0);
        for p in pts.points() {
            assert!(p.chordal(&BlochPoint::SOUTH) < 1e-15);
        }
        assert_eq!(degeneracy_signature(&pts, DEFAULT_EPS).0, vec![2]);
    }

    #[test]
    fn highest_weight_is_north_pole() {
        for two_j in 1..=8 {
            let pts = majorana_points(&SpinState::dicke(two_j, 0).unwrap(), DEFAULT_EPS).unwrap();
            assert_eq!(pts.source_roots().infinity_count, two_j as usize);
            assert!(pts.points().iter().all(|p| *p == BlochPoint::NORTH));
        }
    }

    #[test]
    fn two_photon_noon_is_antipodal_on_equator() {
        let s = SpinState::new(2, vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        let p = majorana_poly(&s);
        // Coefficients: (1/√2, 0, 1/√2), roots ±i.
        let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
        let mut roots = pts.source_roots().finite_roots.clone();
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - c(0.0, 1.0)).norm() < 1e-12);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        let [a, b] = [pts.points()[0], pts.points()[1]];
        assert!(a.z().abs() < 1e-12 && b.z().abs() < 1e-12);
        assert!((a.chordal(&b) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn noon_is_regular_polygon_on_equator() {
        for n in 2..=12u32 {
            let pts = majorana_points(&SpinState::noon(n).unwrap(), DEFAULT_EPS).unwrap();
            assert_eq!(pts.len(), n as usize);
            let mut angles: Vec<f64> = pts.points().iter().map(|p| p.y().atan2(p.x())).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for p in pts.points() {
                assert!(p.z().abs() < 1e-12);
            }
            for w in angles.windows(2) {
                assert!((w[1] - w[0] - 2.0 * PI / n as f64).abs() < 1e-9);
            }
            assert_eq!(degeneracy_signature(&pts, DEFAULT_EPS).0, vec![1; n as usize]);
        }
    }

    #[test]
    fn coherent_plus_is_single_degenerate_point() {
        for n in [2u32, 7, 12] {
            let pts = majorana_points(&SpinState::coherent_plus(n).unwrap(), DEFAULT_EPS).unwrap();
            let x = BlochPoint::new([1.0, 0.0, 0.0]).unwrap();
            for p in pts.points() {
                assert!(p.chordal(&x) < 1e-7, "N={n}: {p:?}");
            }
            assert_eq!(degeneracy_signature(&pts, DEFAULT_EPS).0, vec![n as usize]);
        }
    }

    #[test]
    fn two_component_limits_sit_on_the_poles() {
        let n = 12u32;
        let north = majorana_points(&SpinState::two_component(n, c(1.0, 0.0), c(0.0, 0.0)).unwrap(), 1e-6).unwrap();
        assert!(north.points().iter().all(|p| *p == BlochPoint::NORTH));
        let south = majorana_points(&SpinState::two_component(n, c(0.0, 0.0), c(1.0, 0.0)).unwrap(), 1e-6).unwrap();
        assert!(south.points().iter().all(|p| p.chordal(&BlochPoint::SOUTH) < 1e-15));
        // Generic α, β: a circle parallel to the equator.
        let tilted = majorana_points(&SpinState::two_component(n, c(0.8, 0.0), c(0.6, 0.0)).unwrap(), 1e-6).unwrap();
        let height = tilted.points()[0].z();
        assert!(tilted.points().iter().all(|p| (p.z() - height).abs() < 1e-9));
    }

    #[test]
    fn product_states_recover_their_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for two_j in 1..=8u32 {
            let spinors: Vec<Spinor> = (0..two_j).map(|_| random_spinor(&mut rng)).collect();
            let s = state_from_points(&spinors, two_j).unwrap();
            let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
            let want: Vec<BlochPoint> = spinors.iter().map(|s| s.bloch()).collect();
            assert!(multiset_deviation(pts.points(), &want) < 1e-7);
        }
    }

    #[test]
    fn state_from_points_examples() {
        let s = state_from_points(&[Spinor::up(); 3], 3).unwrap();
        assert!(s.fidelity(&SpinState::dicke(3, 0).unwrap()) > 1.0 - 1e-15);
        let s = state_from_points(&[Spinor::up(), Spinor::down()], 2).unwrap();
        assert!(s.fidelity(&SpinState::dicke(2, 1).unwrap()) > 1.0 - 1e-15);
        assert!(state_from_points(&[Spinor::up()], 2).is_err());
    }

    #[test]
    fn reconstruction_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for two_j in 1..=12u32 {
            for _ in 0..5 {
                let s = random_state(&mut rng, two_j);
                let pts = majorana_points(&s, DEFAULT_EPS).unwrap();
                let back = state_from_bloch(pts.points()).unwrap();
                assert!(s.fidelity(&back) > 1.0 - 1e-10, "2J={two_j}");
            }
        }
    }

    /// Restriction of `m^⊗n` to the symmetric subspace through explicit
    /// Dicke vectors in the full `2^n` space.
    fn sym_power_oracle(m: &Mat2, n: usize) -> CMatrix {
        let dim = 1usize << n;
        let mut full = CMatrix::from_element(1, 1, c(1.0, 0.0));
        for _ in 0..n {
            full = full.kronecker(&linalg::to_dense(m));
        }
        let dicke: Vec<DVector<Complex64>> = (0..=n)
            .map(|k| {
                let norm = (binomial(n as u64, k as u64) as f64).sqrt();
                DVector::from_fn(dim, |i, _| {
                    if (i as u32).count_ones() as usize == k {
                        c(1.0 / norm, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                })
            })
            .collect();
        CMatrix::from_fn(n + 1, n + 1, |k, l| dicke[k].dotc(&(&full * &dicke[l])))
    }

    #[test]
    fn sym_power_matches_tensor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for n in 1..=4 {
            let m = random_gl2(&mut rng, 10.0);
            let diff = linalg::max_abs(&(sym_power(&m, n as u32) - sym_power_oracle(&m, n)));
            assert!(diff < 1e-10, "n={n}: {diff}");
        }
    }

    #[test]
    fn sym_power_simple_cases() {
        assert!(linalg::max_abs(&(sym_power(&Mat2::identity(), 5) - CMatrix::identity(6, 6))) < 1e-15);
        let (a, b) = (c(2.0, 1.0), c(-0.5, 0.3));
        let m = Mat2::new(a, c(0.0, 0.0), c(0.0, 0.0), b);
        let sp = sym_power(&m, 2);
        let want = CMatrix::from_diagonal(&DVector::from_vec(vec![a * a, a * b, b * b]));
        assert!(linalg::max_abs(&(sp - want)) < 1e-14);
    }

    #[test]
    fn unitary_action_rotates_rigidly() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for two_j in 1..=12u32 {
            let s = random_state(&mut rng, two_j);
            let u = haar_su2(&mut rng);
            let r = bloch::su2_to_so3(&u).unwrap();
            let before = majorana_points(&s, DEFAULT_EPS).unwrap();
            let after = majorana_points(&apply_gl2(&s, &u).unwrap(), DEFAULT_EPS).unwrap();
            let rotated: Vec<BlochPoint> = before.points().iter().map(|p| p.rotate(&r)).collect();
            assert!(multiset_deviation(after.points(), &rotated) < 1e-7);
        }
    }

    #[test]
    fn noon_self_maps_after_pi_over_n() {
        let n = 6u32;
        let s = SpinState::noon(n).unwrap();
        let u = linalg::exp_i_sigma([0.0, 0.0, 1.0], PI / n as f64);
        let t = apply_gl2(&s, &u).unwrap();
        assert!(s.fidelity(&t) > 1.0 - 1e-12);
        let a = majorana_points(&s, DEFAULT_EPS).unwrap();
        let b = majorana_points(&t, DEFAULT_EPS).unwrap();
        assert!(multiset_deviation(a.points(), b.points()) < 1e-9);
    }

    #[test]
    fn positive_action_is_mobius_on_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let s = random_state(&mut rng, 3);
            let r = random_positive(&mut rng, 0.3, 3.0);
            let f = bloch::mobius_from_gl2(&r).unwrap();
            let before = majorana_points(&s, DEFAULT_EPS).unwrap();
            let mapped: Vec<BlochPoint> =
                before.roots().into_iter().map(|z| bloch::z_to_bloch(bloch::apply_mobius(&f, z))).collect();
            let after = majorana_points(&apply_gl2(&s, &r).unwrap(), DEFAULT_EPS).unwrap();
            assert!(multiset_deviation(after.points(), &mapped) < 1e-7);
        }
    }

    #[test]
    fn signatures() {
        let noon = majorana_points(&SpinState::noon(4).unwrap(), DEFAULT_EPS).unwrap();
        assert_eq!(degeneracy_signature(&noon, DEFAULT_EPS).0, vec![1, 1, 1, 1]);
        let plus = majorana_points(&SpinState::coherent_plus(7).unwrap(), DEFAULT_EPS).unwrap();
        assert_eq!(degeneracy_signature(&plus, DEFAULT_EPS).0, vec![7]);
    }

    #[test]
    fn slocc_keeps_planted_signature() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random_spinor(&mut rng);
        let b = random_spinor(&mut rng);
        let s = state_from_points(&[a, a, b], 3).unwrap();
        let before = majorana_points(&s, DEFAULT_EPS).unwrap();
        assert_eq!(degeneracy_signature(&before, DEFAULT_EPS).0, vec![2, 1]);
        for _ in 0..10 {
            let m = random_gl2(&mut rng, 50.0);
            let after = majorana_points(&apply_gl2(&s, &m).unwrap(), DEFAULT_EPS).unwrap();
            if cluster_separation(&after, DEFAULT_EPS) > 10.0 * DEFAULT_EPS {
                assert_eq!(degeneracy_signature(&after, DEFAULT_EPS).0, vec![2, 1]);
            }
        }
    }

    #[test]
    fn profiles_match_closed_forms() {
        let n = 5u32;
        let z = BlochPoint::NORTH;
        for (phi, f) in rotation_fidelity_profile(&SpinState::noon(n).unwrap(), &z, 64) {
            assert!((f - (n as f64 * phi).cos().abs()).abs() < 1e-9);
        }
        for (phi, f) in rotation_fidelity_profile(&SpinState::coherent_plus(n).unwrap(), &z, 64) {
            assert!((f - phi.cos().abs().powi(n as i32)).abs() < 1e-9);
        }
        for (_, f) in rotation_fidelity_profile(&SpinState::dicke(n, 0).unwrap(), &z, 16) {
            assert!((f - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(SpinState::new(0, vec![c(1.0, 0.0)]).is_err());
        assert!(SpinState::new(2, vec![c(1.0, 0.0)]).is_err());
        assert!(matches!(SpinState::new(1, vec![c(0.0, 0.0); 2]), Err(Error::ZeroNorm)));
        let s = SpinState::noon(2).unwrap();
        assert!(matches!(apply_gl2(&s, &Mat2::zeros()), Err(Error::Singular { .. })));
    }

    #[test]
    fn gl2_error_estimate_bounds_the_actual_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let p = random_spinor(&mut rng);
            let state = state_from_points(&[p; 8], 8).unwrap();
            let m = random_gl2(&mut rng, 50.0);
            let (out, err) = apply_gl2_with_error(&state, &m).unwrap();
            let exact = state_from_points(&[p.transform(&m).unwrap(); 8], 8).unwrap();
            let phase = linalg::inner(exact.amps(), out.amps());
            let phase = phase.conj() / phase.norm();
            let diff: Vec<Complex64> = out.amps().iter().zip(exact.amps()).map(|(a, b)| a * phase - b).collect();
            assert!(linalg::norm(&diff) <= err, "{} > {err}", linalg::norm(&diff));
        }
    }

    #[test]
    fn resolution_radius_of_a_coherent_state() {
        // All 2J points at the south pole: c_{2J} is the only coefficient.
        let s = SpinState::dicke(6, 6).unwrap();
        let down = bloch::z_to_spinor(ExtendedComplex::Finite(c(0.0, 0.0)));
        let r = resolution_radius(&s, &down, 6, 1e-12);
        // |c_6| = 1, so ρ^6 = 1e-12 Σ_{k<6} √C(6,k) ρ^k, dominated by k = 0.
        assert!((r / (2.0 * 1e-2) - 1.0).abs() < 0.05, "{r}");
        // Simple roots move linearly with the error.
        let noon = SpinState::noon(4).unwrap();
        let pts = majorana_points(&noon, DEFAULT_EPS).unwrap();
        let r = resolution_radius(&noon, &pts.points()[0].spinor(), 1, 1e-12);
        assert!(r > 1e-13 && r < 1e-10, "{r}");
    }
}
