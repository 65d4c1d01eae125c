//! Property suites behind `stellar verify`.
//!
//! Every property reports the largest deviation seen over its cases and the
//! number of failing cases. Random cases draw from ChaCha8 streams derived
//! from `(seed, property, case)`, so reports are reproducible and cases can
//! run in parallel.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{self, BlochPoint, Spinor};
use crate::dfs;
use crate::error::{Error, Result};
use crate::linalg::{self, c, Mat2};
use crate::majorana::{self, SpinState};
use crate::matching::multiset_deviation;
use crate::random::{haar_su2, random_gl2, random_spinor, random_unit_vector};
use crate::schur::{self, MultiQubitState, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rigid,
    Mobius,
    Schur,
    Dfs,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rigid" => Ok(Self::Rigid),
            "mobius" => Ok(Self::Mobius),
            "schur" => Ok(Self::Schur),
            "dfs" => Ok(Self::Dfs),
            "all" => Ok(Self::All),
            other => Err(format!("unknown suite {other:?} (expected rigid, mobius, schur, dfs or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Rigid => "rigid",
            Self::Mobius => "mobius",
            Self::Schur => "schur",
            Self::Dfs => "dfs",
            Self::All => "all",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Largest qubit count for the Schur suite.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub eps: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { n: 8, trials: 100, seed: 42, eps: majorana::DEFAULT_EPS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub pass: bool,
}

impl PropertyResult {
    fn from_deviations(suite: &'static str, name: &'static str, tol: f64, devs: &[f64]) -> Self {
        let failures = devs.iter().filter(|d| d.is_nan() || **d >= tol).count();
        let max_deviation =
            devs.iter().copied().fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) });
        Self { suite, name, cases: devs.len(), failures, max_deviation, tol, note: None, pass: failures == 0 }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

impl VerifyReport {
    /// One line per property.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            out.push_str(&format!(
                "{:<4} {:>6}/{:<24} max {:.3e} (tol {:.0e}, {}/{} failed){}\n",
                if p.pass { "ok" } else { "FAIL" },
                p.suite,
                p.name,
                p.max_deviation,
                p.tol,
                p.failures,
                p.cases,
                p.note.as_ref().map(|n| format!("  [{n}]")).unwrap_or_default()
            ));
        }
        out.push_str(if self.pass { "all properties passed\n" } else { "some properties FAILED\n" });
        out
    }
}

/// Random stream for case `case` of property number `property`.
pub fn case_rng(seed: u64, property: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ property.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(case as u64);
    rng
}

fn par_cases<F>(cases: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    (0..cases).into_par_iter().map(f).collect()
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.trials == 0 {
        return Err(Error::InvalidSpin("--trials must be at least 1".into()));
    }
    let mut properties = Vec::new();
    if matches!(suite, Suite::Rigid | Suite::All) {
        properties.extend(rigid_suite(cfg)?);
    }
    if matches!(suite, Suite::Mobius | Suite::All) {
        properties.extend(mobius_suite(cfg)?);
    }
    if matches!(suite, Suite::Schur | Suite::All) {
        properties.extend(schur_suite(cfg)?);
    }
    if matches!(suite, Suite::Dfs | Suite::All) {
        properties.extend(dfs_suite(cfg)?);
    }
    let pass = properties.iter().all(|p| p.pass);
    Ok(VerifyReport { suite, config: *cfg, properties, pass })
}

fn random_spin(rng: &mut ChaCha8Rng, two_j: u32) -> SpinState {
    SpinState::new(two_j, random_unit_vector(rng, two_j as usize + 1)).expect("nonzero")
}

/// Largest deviation of a NOON constellation from the regular equatorial
/// `N`-gon: heights off the equator and azimuthal gaps off `2π/N`.
pub fn noon_polygon_deviation(n: u32, eps: f64) -> Result<f64> {
    let pts = majorana::majorana_points(&SpinState::noon(n)?, eps)?;
    if pts.len() != n as usize {
        return Ok(f64::INFINITY);
    }
    let mut az: Vec<f64> = pts.points().iter().map(|p| p.y().atan2(p.x()).rem_euclid(TAU)).collect();
    az.sort_by(f64::total_cmp);
    let step = TAU / n as f64;
    let mut dev = pts.points().iter().map(|p| p.z().abs()).fold(0.0, f64::max);
    for k in 0..az.len() {
        let next = if k + 1 < az.len() { az[k + 1] } else { az[0] + TAU };
        dev = dev.max((next - az[k] - step).abs());
    }
    Ok(dev)
}

/// Largest distance of the `|+⟩^⊗N` constellation from `(1, 0, 0)`, or
/// infinity when the points do not number `N`.
pub fn coherent_cluster_deviation(n: u32, eps: f64) -> Result<f64> {
    let pts = majorana::majorana_points(&SpinState::coherent_plus(n)?, eps)?;
    if pts.len() != n as usize {
        return Ok(f64::INFINITY);
    }
    let target = BlochPoint::new([1.0, 0.0, 0.0])?;
    Ok(pts.points().iter().map(|p| p.chordal(&target)).fold(0.0, f64::max))
}

/// Rigid-rotation deviation for one random case.
pub fn rigid_rotation_case(rng: &mut ChaCha8Rng, max_two_j: u32, eps: f64) -> Result<f64> {
    let two_j = rng.random_range(1..=max_two_j);
    let s = random_spin(rng, two_j);
    let u = haar_su2(rng);
    let r = bloch::su2_to_so3(&u)?;
    let before = majorana::majorana_points(&s, eps)?;
    let after = majorana::majorana_points(&majorana::apply_gl2(&s, &u)?, eps)?;
    let rotated: Vec<BlochPoint> = before.points().iter().map(|p| p.rotate(&r)).collect();
    Ok(multiset_deviation(after.points(), &rotated))
}

/// Largest `2J` in the Möbius suite. A condition-100 map squeezes the
/// constellation into a cap of radius about 1/100, and the amplitudes that
/// resolve it shrink like `100^{−2J}`; beyond `2J = 6` double precision no
/// longer determines the points to 1e−5.
pub const MOBIUS_MAX_TWO_J: u32 = 6;

/// Möbius-covariance deviation for one random invertible matrix.
pub fn mobius_case(rng: &mut ChaCha8Rng, max_two_j: u32, max_cond: f64, eps: f64) -> Result<f64> {
    let two_j = rng.random_range(1..=max_two_j);
    let s = random_spin(rng, two_j);
    let m = random_gl2(rng, max_cond);
    let f = bloch::mobius_from_gl2(&m)?;
    let before = majorana::majorana_points(&s, eps)?;
    let mapped: Vec<BlochPoint> =
        before.roots().into_iter().map(|z| bloch::z_to_bloch(bloch::apply_mobius(&f, z))).collect();
    let after = majorana::majorana_points(&majorana::apply_gl2(&s, &m)?, eps)?;
    Ok(multiset_deviation(after.points(), &mapped))
}

/// Planted degeneracy pattern for case `k`: `[N]`, `[N−1, 1]` or `[2, 1, …]`.
pub fn planted_pattern(k: usize, n: usize) -> Vec<usize> {
    match k % 3 {
        0 => vec![n],
        1 => vec![n - 1, 1],
        _ => {
            let mut v = vec![2];
            v.extend(std::iter::repeat_n(1, n - 2));
            v
        }
    }
}

/// Outcome of one SLOCC trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SloccOutcome {
    Preserved,
    Changed,
    /// Transformed clusters too close to resolve at `eps`.
    Skipped,
}

/// Safety factor between the separation of two clusters and the sum of
/// their resolution radii before a SLOCC case counts.
const RESOLUTION_SAFETY: f64 = 4.0;

/// Whether the distinct clusters `(point, multiplicity)` of `s` stay apart
/// under an amplitude error `amp_err`, and farther apart than `guard`.
fn clusters_resolvable(s: &SpinState, clusters: &[(Spinor, usize)], amp_err: f64, guard: f64) -> bool {
    let radii: Vec<f64> =
        clusters.iter().map(|(p, d)| majorana::resolution_radius(s, p, *d, amp_err)).collect();
    let points: Vec<_> = clusters.iter().map(|(p, _)| p.bloch()).collect();
    (0..clusters.len()).all(|i| {
        (0..i).all(|j| points[i].chordal(&points[j]) > guard.max(RESOLUTION_SAFETY * (radii[i] + radii[j])))
    })
}

/// Plants a degeneracy pattern, applies a random invertible collective
/// matrix and compares signatures.
///
/// The case is skipped when the exact clusters before or after the map are
/// closer than `10·eps` or than the radius by which the amplitude error of
/// the state can move them ([`majorana::resolution_radius`]).
pub fn slocc_case(rng: &mut ChaCha8Rng, pattern: &[usize], max_cond: f64, eps: f64) -> Result<SloccOutcome> {
    let n: usize = pattern.iter().sum();
    let spinors: Vec<Spinor> = pattern.iter().map(|_| random_spinor(rng)).collect();
    let expand = |spinors: &[Spinor]| -> Vec<Spinor> {
        spinors.iter().zip(pattern).flat_map(|(s, &k)| std::iter::repeat_n(*s, k)).collect()
    };
    let state = majorana::state_from_points(&expand(&spinors), n as u32)?;
    let guard = 10.0 * eps;
    let clusters: Vec<(Spinor, usize)> = spinors.iter().copied().zip(pattern.iter().copied()).collect();
    if !clusters_resolvable(&state, &clusters, majorana::rounding_error(n as u32), guard) {
        return Ok(SloccOutcome::Skipped);
    }
    if majorana::degeneracy_signature(&majorana::majorana_points(&state, eps)?, eps).0 != pattern {
        return Ok(SloccOutcome::Changed);
    }
    let m = random_gl2(rng, max_cond);
    let (moved, amp_err) = majorana::apply_gl2_with_error(&state, &m)?;
    let images: Vec<(Spinor, usize)> =
        spinors.iter().map(|s| s.transform(&m)).zip(pattern.iter().copied()).map(|(s, d)| s.map(|s| (s, d))).collect::<Result<_>>()?;
    let exact = majorana::state_from_points(&expand(&images.iter().map(|(s, _)| *s).collect::<Vec<_>>()), n as u32)?;
    if !clusters_resolvable(&exact, &images, amp_err, guard) {
        return Ok(SloccOutcome::Skipped);
    }
    let after = majorana::majorana_points_with(&moved, eps, amp_err)?;
    Ok(if majorana::degeneracy_signature(&after, eps).0 == pattern { SloccOutcome::Preserved } else { SloccOutcome::Changed })
}

fn rigid_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "rigid";
    let mut out = Vec::new();

    let noon: Vec<f64> = (2..=12).map(|n| noon_polygon_deviation(n, cfg.eps)).collect::<Result<_>>()?;
    out.push(PropertyResult::from_deviations(S, "noon_polygon", 1e-7, &noon).with_note("N = 2..12"));
    let coherent: Vec<f64> = (2..=12).map(|n| coherent_cluster_deviation(n, cfg.eps)).collect::<Result<_>>()?;
    out.push(PropertyResult::from_deviations(S, "coherent_cluster", 1e-7, &coherent).with_note("N = 2..12"));

    let rigid = par_cases(cfg.trials, |k| rigid_rotation_case(&mut case_rng(cfg.seed, 1, k), 12, cfg.eps))?;
    out.push(PropertyResult::from_deviations(S, "rigid_rotation", 1e-6, &rigid).with_note("J ≤ 6"));

    let roundtrip = par_cases(cfg.trials, |k| {
        let mut rng = case_rng(cfg.seed, 2, k);
        let two_j = rng.random_range(1..=12);
        let s = random_spin(&mut rng, two_j);
        let pts = majorana::majorana_points(&s, cfg.eps)?;
        Ok(1.0 - majorana::state_from_bloch(pts.points())?.fidelity(&s))
    })?;
    out.push(PropertyResult::from_deviations(S, "points_roundtrip", 1e-10, &roundtrip).with_note("1 − fidelity, J ≤ 6"));

    let z = BlochPoint::NORTH;
    let mut profile = Vec::new();
    for n in 2..=12u32 {
        let noon = majorana::rotation_fidelity_profile(&SpinState::noon(n)?, &z, 256);
        profile.push(noon.iter().map(|(phi, f)| (f - (n as f64 * phi).cos().abs()).abs()).fold(0.0, f64::max));
        let plus = majorana::rotation_fidelity_profile(&SpinState::coherent_plus(n)?, &z, 256);
        profile.push(plus.iter().map(|(phi, f)| (f - phi.cos().abs().powi(n as i32)).abs()).fold(0.0, f64::max));
    }
    out.push(PropertyResult::from_deviations(S, "rotation_profiles", 1e-9, &profile).with_note("256 samples, N = 2..12"));

    let self_map: Vec<f64> = (2..=12u32)
        .map(|n| {
            let s = SpinState::noon(n)?;
            let u = linalg::exp_i_sigma([0.0, 0.0, 1.0], PI / n as f64);
            Ok(1.0 - s.fidelity(&majorana::apply_gl2(&s, &u)?))
        })
        .collect::<Result<_>>()?;
    out.push(PropertyResult::from_deviations(S, "noon_self_map", 1e-10, &self_map).with_note("φ = π/N"));
    Ok(out)
}

fn mobius_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "mobius";
    let mut out = Vec::new();
    let mobius =
        par_cases(cfg.trials, |k| mobius_case(&mut case_rng(cfg.seed, 10, k), MOBIUS_MAX_TWO_J, 100.0, cfg.eps))?;
    out.push(PropertyResult::from_deviations(S, "mobius_covariance", 1e-5, &mobius).with_note("cond ≤ 100, J ≤ 3"));

    let polar = par_cases(cfg.trials, |k| {
        let mut rng = case_rng(cfg.seed, 11, k);
        let m = random_gl2(&mut rng, 100.0);
        let f = bloch::polar_decompose(&m)?;
        let back = f.u * f.r;
        let herm = (f.r - f.r.adjoint()).norm();
        Ok(((back - m).norm() / m.norm()).max(herm).max(linalg::unitarity_deviation(&f.u)))
    })?;
    out.push(PropertyResult::from_deviations(S, "polar_decomposition", 1e-10, &polar));

    let slocc_cases = cfg.trials.div_ceil(2).max(3);
    let outcomes: Vec<SloccOutcome> = (0..slocc_cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = case_rng(cfg.seed, 12, k);
            let n = rng.random_range(3..=8);
            slocc_case(&mut rng, &planted_pattern(k, n), 100.0, cfg.eps)
        })
        .collect::<Result<_>>()?;
    let changed = outcomes.iter().filter(|o| **o == SloccOutcome::Changed).count();
    let skipped = outcomes.iter().filter(|o| **o == SloccOutcome::Skipped).count();
    out.push(PropertyResult {
        suite: S,
        name: "slocc_signature",
        cases: slocc_cases,
        failures: changed,
        max_deviation: changed as f64,
        tol: 1.0,
        note: Some(format!("{skipped} skipped for cluster separation")),
        pass: changed == 0,
    });
    Ok(out)
}

fn unimodular_gl2(rng: &mut ChaCha8Rng, max_cond: f64) -> Mat2 {
    let m = random_gl2(rng, max_cond);
    let scale = m.determinant().norm().sqrt();
    m.unscale(scale)
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.random_range(0..=i));
    }
    Permutation::from_images(images).expect("shuffle is a bijection")
}

fn random_qubits(rng: &mut ChaCha8Rng, n: usize) -> MultiQubitState {
    MultiQubitState::new(n, random_unit_vector(rng, 1 << n)).expect("nonzero")
}

fn schur_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "schur";
    let n_max = cfg.n.clamp(1, schur::MAX_DENSE_N.min(8));
    let mut out = Vec::new();

    let orth: Vec<f64> =
        (1..=cfg.n.clamp(1, schur::MAX_DENSE_N)).map(|n| Ok(schur::schur_basis(n)?.orthonormality_deviation())).collect::<Result<_>>()?;
    out.push(PropertyResult::from_deviations(S, "orthonormality", 1e-10, &orth));

    let mut off = Vec::new();
    let mut blocks = Vec::new();
    for n in 1..=n_max {
        for k in 0..3 {
            let mut rng = case_rng(cfg.seed, 20 + n as u64, k);
            let m = if k == 0 { haar_su2(&mut rng) } else { unimodular_gl2(&mut rng, 4.0) };
            let p = if k == 1 { Permutation::identity(n) } else { random_permutation(&mut rng, n) };
            let report = schur::verify_block_structure(&m, &p, n, 1e-10)?;
            off.push(report.max_off_block);
            blocks.push(report.block_deviation.iter().map(|d| d.1).fold(0.0, f64::max));
        }
    }
    let note = format!("N = 1..{n_max}");
    out.push(PropertyResult::from_deviations(S, "off_block", 1e-10, &off).with_note(note.clone()));
    out.push(PropertyResult::from_deviations(S, "block_factorization", 1e-9, &blocks).with_note(note));

    let completeness: Vec<f64> = (1..=14usize)
        .map(|n| {
            let total: u128 = schur::allowed_two_js(n)
                .iter()
                .map(|&tj| Ok((tj as u128 + 1) * schur::multiplicity_dim(n, tj)?))
                .sum::<Result<u128>>()?;
            Ok(if total == 1u128 << n { 0.0 } else { 1.0 })
        })
        .collect::<Result<_>>()?;
    out.push(PropertyResult::from_deviations(S, "completeness", 0.5, &completeness).with_note("exact, N = 1..14"));

    let mut irreps = Vec::new();
    for n in 1..=14usize {
        let rows = schur::irrep_dimensions(n, 2)?;
        let ok = rows.iter().all(|x| {
            let tj = (x.partition[0] - x.partition.get(1).copied().unwrap_or(0)) as u32;
            x.dim_gl == tj as u128 + 1 && schur::multiplicity_dim(n, tj).is_ok_and(|d| d == x.dim_s)
        });
        irreps.push(if ok { 0.0 } else { 1.0 });
    }
    for (n, d) in [(3usize, 3usize), (4, 3), (5, 4), (8, 3)] {
        let total: u128 = schur::irrep_dimensions(n, d)?.iter().map(|x| x.dim_gl * x.dim_s).sum();
        irreps.push(if total == (d as u128).pow(n as u32) { 0.0 } else { 1.0 });
    }
    out.push(PropertyResult::from_deviations(S, "irrep_dimensions", 0.5, &irreps).with_note("exact"));

    let mut comp = Vec::new();
    let s3 = Permutation::all(3);
    for a in &s3 {
        for b in &s3 {
            comp.push(composition_deviation(a, b, 3)?);
        }
    }
    for k in 0..50 {
        let mut rng = case_rng(cfg.seed, 30, k);
        let a = random_permutation(&mut rng, 5);
        let b = random_permutation(&mut rng, 5);
        comp.push(composition_deviation(&a, &b, 5)?);
    }
    out.push(PropertyResult::from_deviations(S, "perm_composition", 1e-9, &comp).with_note("all of S₃, 50 pairs in S₅"));

    let roundtrip = par_cases(cfg.trials, |k| {
        let mut rng = case_rng(cfg.seed, 31, k);
        let n = rng.random_range(1..=n_max);
        let s = random_qubits(&mut rng, n);
        let d = schur::decompose(&s)?;
        let back = schur::reconstruct_amps(&d)?;
        Ok(linalg::max_diff(&back, s.amps()).max((d.weight() - 1.0).abs()))
    })?;
    out.push(PropertyResult::from_deviations(S, "decompose_roundtrip", 1e-10, &roundtrip));

    let collective = par_cases(cfg.trials, |k| {
        let mut rng = case_rng(cfg.seed, 32, k);
        let n = rng.random_range(1..=n_max);
        let s = random_qubits(&mut rng, n);
        let u = haar_su2(&mut rng);
        let before = schur::decompose(&s)?;
        let after = schur::decompose(&s.apply_collective(&u)?)?;
        Ok(before.blocks.iter().zip(&after.blocks).map(|(a, b)| (a.xi.norm() - b.xi.norm()).abs()).fold(0.0, f64::max))
    })?;
    out.push(PropertyResult::from_deviations(S, "collective_xi_invariance", 1e-10, &collective));
    Ok(out)
}

/// `max_j ‖P_j(a) P_j(b) − P_j(a·b)‖` over every `j` of `n` qubits.
pub fn composition_deviation(a: &Permutation, b: &Permutation, n: usize) -> Result<f64> {
    let mut dev: f64 = 0.0;
    for tj in schur::allowed_two_js(n) {
        let pa = schur::perm_irrep_matrix(a, tj, n)?;
        let pb = schur::perm_irrep_matrix(b, tj, n)?;
        let pab = schur::perm_irrep_matrix(&a.product(b), tj, n)?;
        dev = dev.max((pa * pb - pab).amax());
    }
    Ok(dev)
}

/// `(|0⟩ + |1⟩)/√2` and `(|0⟩ − |1⟩)/√2`.
pub fn example_rep_states() -> (SpinState, SpinState) {
    let h = c(FRAC_1_SQRT_2, 0.0);
    (SpinState::new(1, vec![h, h]).expect("normalized"), SpinState::new(1, vec![h, -h]).expect("normalized"))
}

/// Deviations of the example decomposition: `|ξ|` multiset, representation
/// overlaps (best α-labeling) and reconstruction residual.
pub fn example_deviations() -> Result<(f64, f64, f64)> {
    let s = dfs::example_state();
    let d = schur::decompose(&s)?;
    let mut mags: Vec<f64> = d.blocks.iter().map(|b| b.xi.norm()).collect();
    mags.sort_by(f64::total_cmp);
    let want = [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2];
    let xi_dev = if mags.len() == 3 { mags.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) } else { f64::INFINITY };

    let (plus, minus) = example_rep_states();
    let reps: Vec<SpinState> =
        d.blocks.iter().filter(|b| b.two_j == 1).filter_map(|b| b.rep_state.as_ref()?.spin_state()).collect();
    let rep_dev = if reps.len() == 2 {
        let direct = (1.0 - reps[0].fidelity(&plus)).max(1.0 - reps[1].fidelity(&minus));
        let swapped = (1.0 - reps[0].fidelity(&minus)).max(1.0 - reps[1].fidelity(&plus));
        direct.min(swapped)
    } else {
        f64::INFINITY
    };
    let residual = linalg::max_diff(&schur::reconstruct_amps(&d)?, s.amps());
    Ok((xi_dev, rep_dev, residual))
}

/// Decoded logical Bloch vector after `logical_unitary(α, β, γ)` against the
/// SO(3) image of the 2×2 Euler unitary applied to the decoded input.
pub fn logical_rotation_deviation(s: &MultiQubitState, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    let before = dfs::decode_logical(&schur::decompose(s)?)?;
    let evolved = dfs::logical_unitary(alpha, beta, gamma).apply(s)?;
    let after = dfs::decode_logical(&schur::decompose(&evolved)?)?;
    let r = bloch::su2_to_so3(&dfs::euler_unitary(alpha, beta, gamma))?;
    let predicted = r * Vector3::from(before.bloch);
    Ok((predicted - Vector3::from(after.bloch)).amax())
}

/// Three qubits with a shared `|+⟩` representation state and logical
/// amplitudes `(a0, a1)`.
pub fn shared_rep_state(a0: Complex64, a1: Complex64) -> Result<MultiQubitState> {
    let (plus, _) = example_rep_states();
    dfs::encode_logical(&dfs::LogicalQubit::new(a0, a1)?, &plus, &plus)
}

fn dfs_suite(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "dfs";
    let mut out = Vec::new();
    let (xi_dev, rep_dev, residual) = example_deviations()?;
    out.push(PropertyResult::from_deviations(S, "example_xi", 1e-10, &[xi_dev]));
    out.push(PropertyResult::from_deviations(S, "example_rep_states", 1e-9, &[rep_dev]).with_note("1 − overlap, best α-labeling"));
    out.push(PropertyResult::from_deviations(S, "example_reconstruction", 1e-10, &[residual]));

    let example = dfs::collective_noise_immunity(&dfs::example_state(), cfg.trials, cfg.seed)?;
    out.push(PropertyResult::from_deviations(S, "immunity_xi", dfs::XI_TOL, &[example.max_xi_deviation]));
    out.push(
        PropertyResult::from_deviations(S, "immunity_logical", dfs::LOGICAL_TOL, &[example.max_logical_deviation])
            .with_note("example state; representation states differ, so ξ¹/ξ⁰ is not defined"),
    );

    let shared = shared_rep_state(c(0.6, 0.0), c(0.0, 0.8))?;
    let coherent = dfs::collective_noise_immunity(&shared, cfg.trials, cfg.seed)?;
    out.push(
        PropertyResult::from_deviations(
            S,
            "immunity_ratio",
            dfs::LOGICAL_TOL,
            &[coherent.max_logical_deviation, coherent.max_ratio_deviation.unwrap_or(f64::INFINITY)],
        )
        .with_note("shared representation state"),
    );

    let mut logical = vec![
        logical_rotation_deviation(&dfs::example_state(), PI, 0.0, 0.0)?,
        logical_rotation_deviation(&shared, PI, 0.0, 0.0)?,
    ];
    logical.extend(par_cases(cfg.trials.min(20), |k| {
        let mut rng = case_rng(cfg.seed, 40, k);
        let v = random_unit_vector(&mut rng, 2);
        let s = shared_rep_state(v[0], v[1])?;
        logical_rotation_deviation(&s, rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI))
    })?);
    out.push(PropertyResult::from_deviations(S, "logical_euler_rotation", 1e-9, &logical).with_note("includes (π, 0, 0)"));

    let z = dfs::z_logical();
    let (x, y) = dfs::xy_logical();
    let comm: Vec<f64> = (0..50)
        .map(|k| {
            let u = haar_su2(&mut case_rng(cfg.seed, 41, k));
            z.commutator_with_collective(&u).max(x.commutator_with_collective(&u)).max(y.commutator_with_collective(&u))
        })
        .collect();
    out.push(PropertyResult::from_deviations(S, "logical_commutation", 1e-10, &comm).with_note("Z_L, X_L, Y_L vs 50 u^⊗3"));

    let zn = dfs::z_normalized();
    let algebra = [
        dfs::su2_relation_deviation(&x, &y, &zn),
        dfs::su2_relation_deviation(&y, &zn, &x),
        dfs::su2_relation_deviation(&zn, &x, &y),
    ];
    out.push(PropertyResult::from_deviations(S, "pauli_algebra", 1e-9, &algebra));

    let fits = [dfs::group_algebra_fit(&z).residual, dfs::group_algebra_fit(&x).residual, dfs::group_algebra_fit(&y).residual];
    out.push(
        PropertyResult::from_deviations(S, "group_algebra_fit", 1e-10, &fits)
            .with_note(format!("κ = {}", dfs::z_scale(&z))),
    );
    Ok(out)
}
