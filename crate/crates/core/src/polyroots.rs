//! Roots of complex polynomials.
//!
//! Polynomials are stored with a *nominal* degree: trailing coefficients may
//! vanish, in which case the missing roots are counted as roots at infinity.
//! The finite roots come from Aberth–Ehrlich simultaneous iteration with a
//! companion-matrix fallback.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative magnitude below which a coefficient counts as zero when locating
/// the highest present power.
pub const ZERO_COEFF_REL: f64 = 1e-12;

const MAX_SWEEPS: usize = 500;
const STEP_REL: f64 = 1e-14;

/// Polynomial with ascending coefficients (`coeffs[k]` multiplies `z^k`).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
    nominal_degree: usize,
}

/// Multiset of extended-complex roots: finite values plus a count of roots
/// at infinity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    pub finite_roots: Vec<Complex64>,
    pub infinity_count: usize,
}

impl RootSet {
    pub fn new(finite_roots: Vec<Complex64>, infinity_count: usize) -> Self {
        Self { finite_roots, infinity_count }
    }

    /// Total number of roots, finite and infinite.
    pub fn len(&self) -> usize {
        self.finite_roots.len() + self.infinity_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Root set with every finite root conjugated.
    pub fn conj(&self) -> Self {
        Self {
            finite_roots: self.finite_roots.iter().map(|z| z.conj()).collect(),
            infinity_count: self.infinity_count,
        }
    }
}

impl ComplexPolynomial {
    /// Builds a polynomial whose nominal degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let nominal_degree = coeffs.len() - 1;
        Self::with_degree(coeffs, nominal_degree)
    }

    pub fn with_degree(coeffs: Vec<Complex64>, nominal_degree: usize) -> Result<Self> {
        if coeffs.len() != nominal_degree + 1 {
            return Err(Error::DimensionMismatch { expected: nominal_degree + 1, got: coeffs.len() });
        }
        if coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs, nominal_degree })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn nominal_degree(&self) -> usize {
        self.nominal_degree
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Index of the highest coefficient above the relative zero threshold.
    pub fn effective_degree(&self) -> usize {
        let cut = ZERO_COEFF_REL * self.scale();
        self.coeffs.iter().rposition(|c| c.norm() > cut).unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
            nominal_degree: self.nominal_degree,
        }
    }

    /// `|p(z)| / (max_k |c_k| · max(1, |z|)^deg)` with `deg` the effective
    /// degree, evaluated without overflow for large `|z|`.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        let deg = self.effective_degree();
        relative_residual(&self.coeffs[..=deg], z) / self.scale()
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Value and first derivative by Horner's scheme.
fn horner_d(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Horner evaluation of `Σ |c_k| x^k`.
fn horner_abs(coeffs: &[Complex64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.norm())
}

/// `|p(z)| / max(1,|z|)^n`; uses the reversed polynomial outside the unit disk.
fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    if z.norm() <= 1.0 {
        horner(coeffs, z).norm()
    } else {
        let w = z.inv();
        coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c).norm()
    }
}

/// Newton correction `p(z)/p'(z)`, computed through the reversed polynomial
/// when `|z| > 1` so that large roots do not overflow.
fn newton_ratio(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let (p, dp) = horner_d(coeffs, z);
        p / dp
    } else {
        let w = z.inv();
        let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
        let (q, dq) = horner_d(&rev, w);
        // p'/p = n/z - w^2 q'(w) / q(w)
        let inv = Complex64::new(n as f64, 0.0) * w - w * w * dq / q;
        inv.inv()
    }
}

/// Floating-point error bound for Horner evaluation at `z`.
fn eval_error_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let n = coeffs.len() as f64;
    4.0 * n * f64::EPSILON * horner_abs(coeffs, z.norm())
}

/// Whether `p(z)` is indistinguishable from zero in floating point.
fn at_noise_floor(coeffs: &[Complex64], z: Complex64) -> bool {
    if z.norm() <= 1.0 {
        horner(coeffs, z).norm() <= eval_error_bound(coeffs, z)
    } else {
        let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
        let w = z.inv();
        horner(&rev, w).norm() <= eval_error_bound(&rev, w)
    }
}

/// Positive root of `|c_n| x^n = Σ_{k<n} |c_k| x^k`.
fn cauchy_radius(coeffs: &[Complex64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let f = |x: f64| {
        lead * x.powi(n as i32) - coeffs[..n].iter().enumerate().map(|(k, c)| c.norm() * x.powi(k as i32)).sum::<f64>()
    };
    let mut hi = 1.0 + coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let mut lo = 0.0;
    if f(hi) < 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    hi
}

/// Aberth–Ehrlich iteration on a polynomial with nonzero constant and leading
/// coefficients. Returns the approximations and whether every root froze.
fn aberth(coeffs: &[Complex64]) -> (Vec<Complex64>, bool) {
    let n = coeffs.len() - 1;
    let radius = cauchy_radius(coeffs);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            let jitter = 1.0 + 0.01 * ((k as f64) * 1.7).sin();
            Complex64::from_polar(radius * jitter, angle)
        })
        .collect();
    let mut frozen = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            if at_noise_floor(coeffs, zi) {
                frozen[i] = true;
                continue;
            }
            let ratio = newton_ratio(coeffs, zi);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (zi - z[j]).inv()).sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = Complex64::from_polar(1e-8 * (1.0 + zi.norm()), 0.37 * (i + 1) as f64);
            }
            z[i] = zi - step;
            if step.norm() < STEP_REL * (1.0 + z[i].norm()) {
                frozen[i] = true;
            }
        }
        if frozen.iter().all(|&f| f) {
            return (z, true);
        }
    }
    (z, false)
}

/// Eigenvalues of the companion matrix of a monic-normalized polynomial.
fn companion_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let eig = m.schur().eigenvalues()?;
    Some(eig.iter().copied().collect())
}

fn newton_polish(coeffs: &[Complex64], z: &mut [Complex64]) {
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let step = newton_ratio(coeffs, *zi);
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let next = *zi - step;
            if relative_residual(coeffs, next) > relative_residual(coeffs, *zi) {
                break;
            }
            *zi = next;
        }
    }
}

/// All roots of `p`; finite roots satisfy
/// `|p(r)| ≤ tol · max_k |c_k| · max(1,|r|)^deg` and repeated roots come back
/// as repeated entries.
pub fn find_roots(p: &ComplexPolynomial, tol: f64) -> Result<RootSet> {
    let deg = p.effective_degree();
    let infinity_count = p.nominal_degree - deg;
    let active = &p.coeffs[..=deg];

    // Exactly vanishing low-order coefficients are roots at the origin.
    let zeros = active.iter().take_while(|c| **c == Complex64::new(0.0, 0.0)).count();
    let reduced = &active[zeros..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];

    match reduced.len() - 1 {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        _ => {
            let (found, converged) = aberth(reduced);
            let scale = p.scale();
            let worst = |zs: &[Complex64]| {
                zs.iter().map(|z| relative_residual(active, *z) / scale).fold(0.0, f64::max)
            };
            let mut best = found;
            if !converged || worst(&best) > tol {
                if let Some(mut alt) = companion_roots(reduced) {
                    newton_polish(reduced, &mut alt);
                    if worst(&alt) < worst(&best) {
                        best = alt;
                    }
                }
            }
            let residual = worst(&best);
            if residual > tol {
                return Err(Error::NoConvergence { best_residual: residual });
            }
            roots.extend(best);
        }
    }
    Ok(RootSet { finite_roots: roots, infinity_count })
}

/// `∏ (z − r_i)` over the finite roots, zero-padded up to `nominal_degree`.
pub fn poly_from_roots(roots: &RootSet, nominal_degree: usize) -> Result<ComplexPolynomial> {
    if roots.len() != nominal_degree {
        return Err(Error::DimensionMismatch { expected: nominal_degree, got: roots.len() });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); nominal_degree + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for (filled, r) in roots.finite_roots.iter().enumerate() {
        for k in (1..=filled + 1).rev() {
            coeffs[k] = coeffs[k - 1] - r * coeffs[k];
        }
        coeffs[0] = -r * coeffs[0];
    }
    ComplexPolynomial::with_degree(coeffs, nominal_degree)
}

/// Coefficients of the `order`-th derivative.
fn derivative(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut out = coeffs.to_vec();
    for _ in 0..order {
        if out.len() <= 1 {
            return vec![Complex64::new(0.0, 0.0)];
        }
        out = out.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    }
    out
}

/// Replaces numerically split multiple roots by a single refined value.
///
/// Clusters are the connected components of the inclusion disks
/// `D(z_i, n·(|p(z_i)| + err_i) / |c_n ∏_{j≠i}(z_i − z_j)|)`; a component
/// holding `d` approximations contains exactly `d` roots. Its centroid is
/// polished by Newton's method on the `(d−1)`-th derivative, which has a
/// simple root at a `d`-fold root of `p`. Components far from the unit disk
/// are refined through the reversed polynomial.
pub fn refine_clusters(p: &ComplexPolynomial, roots: &RootSet) -> RootSet {
    refine_clusters_with(p, roots, &[])
}

/// [`refine_clusters`] for coefficients known only up to absolute errors
/// `coeff_err[k]` (missing entries count as exact). The error widens the
/// inclusion disks and the test that a merged root is a genuine multiple
/// root, so a multiple root split by that much noise is still recognized.
pub fn refine_clusters_with(p: &ComplexPolynomial, roots: &RootSet, coeff_err: &[f64]) -> RootSet {
    let deg = p.effective_degree();
    let coeffs = &p.coeffs[..=deg];
    let z = &roots.finite_roots;
    let n = z.len();
    if n < 2 || n != deg {
        return roots.clone();
    }
    let lead = coeffs[deg];
    let noise = Noise::new(coeff_err, deg);

    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let mut prod = lead;
            for j in 0..n {
                if j != i {
                    prod *= z[i] - z[j];
                }
            }
            if prod.norm() == 0.0 {
                return 0.0;
            }
            let err = horner(coeffs, z[i]).norm() + eval_error_bound(coeffs, z[i]) + noise.bound(0, z[i]);
            n as f64 * err / prod.norm()
        })
        .collect();

    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    let finite_radius = |r: f64| if r.is_finite() { r } else { f64::MAX };
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= finite_radius(radii[i]) + finite_radius(radii[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }

    let mut out = Vec::with_capacity(n);
    let mut done = vec![false; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if done[root] {
            continue;
        }
        done[root] = true;
        let members: Vec<usize> = (0..n).filter(|&k| find(&mut parent, k) == root).collect();
        settle(coeffs, z, &radii, &noise, members, &mut out);
    }
    RootSet { finite_roots: out, infinity_count: roots.infinity_count }
}

/// Merges `members` into one multiple root if that passes the checks,
/// otherwise splits them at the longest edge of their minimum spanning tree
/// and tries both halves.
fn settle(coeffs: &[Complex64], z: &[Complex64], radii: &[f64], noise: &Noise, members: Vec<usize>, out: &mut Vec<Complex64>) {
    if members.len() == 1 {
        out.push(z[members[0]]);
        return;
    }
    let reach = |k: usize| if radii[k].is_finite() { radii[k] } else { f64::MAX };
    if let Some(c) = refine_one(coeffs, members.iter().map(|&k| z[k]), members.len(), noise) {
        if members.iter().all(|&k| (z[k] - c).norm() <= reach(k).max(spread(z, &members))) {
            out.extend(std::iter::repeat_n(c, members.len()));
            return;
        }
    }
    let (left, right) = split_longest_edge(z, &members);
    settle(coeffs, z, radii, noise, left, out);
    settle(coeffs, z, radii, noise, right, out);
}

/// Prim's tree over `members`; removing its longest edge leaves two parts.
fn split_longest_edge(z: &[Complex64], members: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = members.len();
    let mut in_tree = vec![false; m];
    let mut best = vec![(f64::INFINITY, 0usize); m];
    let mut parent = vec![0usize; m];
    in_tree[0] = true;
    for j in 1..m {
        best[j] = ((z[members[0]] - z[members[j]]).norm(), 0);
    }
    let mut longest = (f64::NEG_INFINITY, 1usize);
    for _ in 1..m {
        let next = (0..m).filter(|&j| !in_tree[j]).min_by(|&a, &b| best[a].0.total_cmp(&best[b].0)).expect("vertex left");
        in_tree[next] = true;
        parent[next] = best[next].1;
        if best[next].0 > longest.0 {
            longest = (best[next].0, next);
        }
        for j in 0..m {
            let d = (z[members[next]] - z[members[j]]).norm();
            if !in_tree[j] && d < best[j].0 {
                best[j] = (d, next);
            }
        }
    }
    // The subtree below the cut vertex forms one side.
    let cut = longest.1;
    let below = |mut v: usize| {
        while v != 0 {
            if v == cut {
                return true;
            }
            v = parent[v];
        }
        false
    };
    let (right, left): (Vec<usize>, Vec<usize>) = (0..m).partition(|&j| below(j));
    (left.into_iter().map(|j| members[j]).collect(), right.into_iter().map(|j| members[j]).collect())
}

fn spread(z: &[Complex64], members: &[usize]) -> f64 {
    let mut d: f64 = 0.0;
    for &a in members {
        for &b in members {
            d = d.max((z[a] - z[b]).norm());
        }
    }
    d
}

fn refine_one(coeffs: &[Complex64], cluster: impl Iterator<Item = Complex64>, mult: usize, noise: &Noise) -> Option<Complex64> {
    let pts: Vec<Complex64> = cluster.collect();
    let centroid = pts.iter().sum::<Complex64>() / pts.len() as f64;
    let (work, start, inverted, noise) = if centroid.norm() > 1.0 {
        let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
        let w = pts.iter().map(|z| z.inv()).sum::<Complex64>() / pts.len() as f64;
        (rev, w, true, noise.reversed())
    } else {
        (coeffs.to_vec(), centroid, false, noise.clone())
    };
    let target = derivative(&work, mult - 1);
    if target.len() < 2 {
        return None;
    }
    let mut x = start;
    for _ in 0..60 {
        let (v, dv) = horner_d(&target, x);
        if v.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        x -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    if !vanishing_derivatives(&work, x, mult, &noise) {
        return None;
    }
    let c = if inverted { x.inv() } else { x };
    (c.re.is_finite() && c.im.is_finite()).then_some(c)
}

/// Slack on the rounding bound when testing `p^{(k)}(x) ≈ 0`.
const MULTIPLE_ROOT_SLACK: f64 = 4.0;

/// Absolute coefficient uncertainties of a degree-`deg` polynomial.
#[derive(Clone)]
struct Noise {
    err: Vec<Complex64>,
}

impl Noise {
    fn new(coeff_err: &[f64], deg: usize) -> Self {
        let err = (0..=deg).map(|k| Complex64::new(coeff_err.get(k).copied().unwrap_or(0.0), 0.0)).collect();
        Self { err }
    }

    fn reversed(&self) -> Self {
        Self { err: self.err.iter().rev().copied().collect() }
    }

    /// Bound on the change of `p^{(k)}(x)`: `Σ_i err_i · i!/(i−k)! |x|^{i−k}`.
    fn bound(&self, k: usize, x: Complex64) -> f64 {
        if self.err.iter().all(|e| e.re == 0.0) {
            return 0.0;
        }
        horner_abs(&derivative(&self.err, k), x.norm())
    }
}

/// Whether `p, p′, …, p^{(mult−1)}` all vanish at `x` to within rounding
/// and coefficient noise, i.e. `x` is numerically a root of multiplicity
/// `mult`.
fn vanishing_derivatives(coeffs: &[Complex64], x: Complex64, mult: usize, noise: &Noise) -> bool {
    (0..mult).all(|k| {
        let d = derivative(coeffs, k);
        horner(&d, x).norm() <= MULTIPLE_ROOT_SLACK * (eval_error_bound(&d, x) + noise.bound(k, x))
    })
}
