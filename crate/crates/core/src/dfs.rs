//! Three-qubit noiseless subsystem.
//!
//! The logical qubit lives in the two-dimensional multiplicity space of the
//! `j = ½` sector of three qubits. In the Schur basis the multiplicity label
//! `α = 0` is the coupling path `½→1→½` and `α = 1` is `½→0→½`.
//!
//! Logical operators are elements of the permutation group algebra. `Z_L` is
//! `⅓(S(13) + S(23) − 2S(12))`; its eigenvectors anchor `X_L` and `Y_L`:
//! `X_L` maps the `+1` eigenvector `e₊` of `Z_L` to the `−1` eigenvector `e₋`
//! with coefficient `+1`, and `Y_L` is the Pauli `Y` in the ordered basis
//! `(e₊, e₋)`. All three vanish on the `j = 3/2` sector.
//!
//! A state's logical content is its reduced multiplicity density matrix
//! `ρ_{αα'} = Σ_m ⟨½,m,α|Ψ⟩⟨Ψ|½,m,α'⟩`, which collective unitaries leave
//! untouched. When both `j = ½` blocks share one representation state, `ρ`
//! is pure and equals the multiplicity vector `(ξ⁰, ξ¹)`.

use nalgebra::{DVector, Matrix2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bloch::{BlochPoint, Spinor};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, Mat2};
use crate::majorana::SpinState;
use crate::random::haar_su2;
use crate::schur::{
    self, collective_op, permutation_op, schur_basis, MultiQubitState, Permutation, RepState, SchurBlock,
    SchurDecomposition,
};

const N: usize = 3;
const DIM: usize = 8;

/// Representation states closer than this in fidelity count as shared.
pub const SHARED_REP_TOL: f64 = 1e-9;

/// Amplitudes `(a0, a1)` of a logical qubit over `α = 0, 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalQubit {
    a0: Complex64,
    a1: Complex64,
}

impl LogicalQubit {
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { a0: a0 / norm, a1: a1 / norm })
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn bloch(&self) -> BlochPoint {
        Spinor::new(self.a0, self.a1).expect("normalized").bloch()
    }
}

/// Operator on the 8-dimensional physical space together with its action
/// on the `j = ½` multiplicity factor (in the `α` basis) and its scalar
/// value on `j = 3/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalOperator {
    dense: CMatrix,
    action: Mat2,
    quartet: Complex64,
}

impl LogicalOperator {
    /// Lifts `action ⊗ 1` on `j = ½` and `quartet · 1` on `j = 3/2`.
    pub fn from_action(action: Mat2, quartet: Complex64) -> Self {
        let basis = schur_basis(N).expect("three-qubit basis");
        let half = basis.blocks_of(1);
        let top = basis.blocks_of(3)[0];
        let mut dense = CMatrix::zeros(DIM, DIM);
        for two_m in [1i64, -1] {
            let vs: Vec<DVector<Complex64>> = half
                .iter()
                .map(|&b| DVector::from_iterator(DIM, basis.vector(b, two_m).expect("vector").into_iter().map(|x| c(x, 0.0))))
                .collect();
            for a in 0..2 {
                for b in 0..2 {
                    dense += &vs[a] * vs[b].adjoint() * action[(a, b)];
                }
            }
        }
        for two_m in [3i64, 1, -1, -3] {
            let v = DVector::from_iterator(DIM, basis.vector(top, two_m).expect("vector").into_iter().map(|x| c(x, 0.0)));
            dense += &v * v.adjoint() * quartet;
        }
        Self { dense, action, quartet }
    }

    /// Wraps a dense operator, reading off its declared action from the
    /// `m = ½` slice and the `|3/2, 3/2⟩` diagonal entry.
    pub fn from_dense(dense: CMatrix) -> Result<Self> {
        if dense.shape() != (DIM, DIM) {
            return Err(Error::DimensionMismatch { expected: DIM, got: dense.nrows() });
        }
        let basis = schur_basis(N)?;
        let half = basis.blocks_of(1);
        let col = |b: usize, two_m: i64| {
            DVector::from_iterator(DIM, basis.vector(b, two_m).expect("vector").into_iter().map(|x| c(x, 0.0)))
        };
        let mut action = Mat2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                action[(a, b)] = (col(half[a], 1).adjoint() * &dense * col(half[b], 1))[(0, 0)];
            }
        }
        let top = col(basis.blocks_of(3)[0], 3);
        let quartet = (top.adjoint() * &dense * &top)[(0, 0)];
        Ok(Self { dense, action, quartet })
    }

    pub fn dense(&self) -> &CMatrix {
        &self.dense
    }

    /// 2×2 action on the multiplicity factor, rows and columns indexed by `α`.
    pub fn action(&self) -> &Mat2 {
        &self.action
    }

    /// Scalar on the `j = 3/2` sector.
    pub fn quartet(&self) -> Complex64 {
        self.quartet
    }

    /// Largest entry of `[self, m^⊗3]`.
    pub fn commutator_with_collective(&self, m: &Mat2) -> f64 {
        let coll = collective_op(m, N).dense().expect("three qubits");
        linalg::max_abs(&(&self.dense * &coll - &coll * &self.dense))
    }

    /// Largest deviation of the dense operator from the lift of its declared
    /// action.
    pub fn consistency_deviation(&self) -> f64 {
        let lifted = Self::from_action(self.action, self.quartet);
        linalg::max_abs(&(&self.dense - lifted.dense))
    }

    /// Applies the operator to a three-qubit state and renormalizes.
    pub fn apply(&self, s: &MultiQubitState) -> Result<MultiQubitState> {
        if s.n() != N {
            return Err(Error::DimensionMismatch { expected: DIM, got: s.amps().len() });
        }
        let out = &self.dense * DVector::from_column_slice(s.amps());
        MultiQubitState::new(N, out.as_slice().to_vec())
    }
}

fn perm_dense(cycles: &str) -> CMatrix {
    let p = Permutation::parse_cycles(cycles, N).expect("valid cycle");
    permutation_op(&p, N).expect("three qubits").dense().expect("small")
}

/// `Z_L = ⅓(S(13) + S(23) − 2S(12))`.
pub fn z_logical() -> LogicalOperator {
    let dense = (perm_dense("(13)") + perm_dense("(23)") - perm_dense("(12)") * c(2.0, 0.0)) * c(1.0 / 3.0, 0.0);
    LogicalOperator::from_dense(dense).expect("8×8")
}

/// The positive constant `κ` with `Z_L/κ` involutive on `j = ½`.
pub fn z_scale(z: &LogicalOperator) -> f64 {
    let a = z.action();
    // Traceless Hermitian 2×2: eigenvalues ±√(a00² + |a01|²).
    (a[(0, 0)].re.powi(2) + a[(0, 1)].norm_sqr()).sqrt()
}

/// `Z_L/κ`.
pub fn z_normalized() -> LogicalOperator {
    let z = z_logical();
    let kappa = c(z_scale(&z), 0.0);
    LogicalOperator { dense: z.dense / kappa, action: z.action / kappa, quartet: z.quartet / kappa }
}

/// Eigenvectors `(e₊, e₋)` of the normalized `Z_L` action, each with its
/// first nonzero entry real positive.
fn z_eigenvectors() -> (nalgebra::Vector2<Complex64>, nalgebra::Vector2<Complex64>) {
    let a = *z_normalized().action();
    let fix = |v: nalgebra::Vector2<Complex64>| {
        let v = v.unscale(v.norm());
        let pivot = if v[0].norm() > 1e-12 { v[0] } else { v[1] };
        v * Complex64::from_polar(1.0, -pivot.arg())
    };
    let eig = nalgebra::SymmetricEigen::new(Matrix2::from_fn(|i, j| a[(i, j)]));
    let (mut plus, mut minus) = (eig.eigenvectors.column(0).into_owned(), eig.eigenvectors.column(1).into_owned());
    if eig.eigenvalues[0] < eig.eigenvalues[1] {
        std::mem::swap(&mut plus, &mut minus);
    }
    (fix(plus), fix(minus))
}

/// `(X_L, Y_L)` anchored to the eigenvectors of `Z_L`.
pub fn xy_logical() -> (LogicalOperator, LogicalOperator) {
    let (p, m) = z_eigenvectors();
    let i = c(0.0, 1.0);
    let x = m * p.adjoint() + p * m.adjoint();
    let y = p * m.adjoint() * (-i) + m * p.adjoint() * i;
    (LogicalOperator::from_action(x, c(0.0, 0.0)), LogicalOperator::from_action(y, c(0.0, 0.0)))
}

/// Coefficients of an operator in the group algebra of `S₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraFit {
    /// One coefficient per element of [`Permutation::all`]`(3)`.
    pub coefficients: Vec<(Permutation, Complex64)>,
    /// Largest entry of `operator − Σ c_s S(s)`.
    pub residual: f64,
}

impl GroupAlgebraFit {
    /// Whether every coefficient is real within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coefficients.iter().all(|(_, z)| z.im.abs() <= tol)
    }
}

/// Least-squares expansion of `op` in `{S(s) : s ∈ S₃}`. The six operators
/// are linearly dependent on qubits (the sign representation is absent), so
/// the minimum-norm solution is returned.
pub fn group_algebra_fit(op: &LogicalOperator) -> GroupAlgebraFit {
    let perms = Permutation::all(N);
    let mats: Vec<CMatrix> =
        perms.iter().map(|p| permutation_op(p, N).expect("three qubits").dense().expect("small")).collect();
    let design = CMatrix::from_fn(DIM * DIM, perms.len(), |r, k| mats[k][(r % DIM, r / DIM)]);
    let target = DVector::from_iterator(DIM * DIM, op.dense.iter().copied());
    let svd = design.svd(true, true);
    let coeffs = svd.solve(&target, 1e-10).expect("SVD with both factors");
    let mut fit = CMatrix::zeros(DIM, DIM);
    for (k, m) in mats.iter().enumerate() {
        fit += m * coeffs[k];
    }
    GroupAlgebraFit {
        coefficients: perms.into_iter().zip(coeffs.iter().copied()).collect(),
        residual: linalg::max_abs(&(&op.dense - fit)),
    }
}

/// `exp(iθA) = (1 − P) + P cos θ + i sin θ A` for `A` involutive on the
/// `j = ½` sector (projector `P`) and zero on `j = 3/2`.
fn involutive_exp(a: &LogicalOperator, theta: f64) -> LogicalOperator {
    let action = Mat2::identity() * c(theta.cos(), 0.0) + a.action * c(0.0, theta.sin());
    LogicalOperator::from_action(action, c(1.0, 0.0))
}

/// `exp(iα Z̃_L) exp(iβ Ỹ_L) exp(iγ Z̃_L)` with `Z̃_L = Z_L/κ`.
pub fn logical_unitary(alpha: f64, beta: f64, gamma: f64) -> LogicalOperator {
    let z = z_normalized();
    let (_, y) = xy_logical();
    let u = involutive_exp(&z, alpha).action * involutive_exp(&y, beta).action * involutive_exp(&z, gamma).action;
    let out = LogicalOperator::from_action(u, c(1.0, 0.0));
    debug_assert!(linalg::max_abs(
        &(involutive_exp(&z, alpha).dense * involutive_exp(&y, beta).dense * involutive_exp(&z, gamma).dense
            - &out.dense)
    ) < 1e-12);
    out
}

/// The 2×2 Euler unitary in the `α` basis, built from the Pauli matrices
/// of the `(e₊, e₋)` frame rather than from the permutation operators.
pub fn euler_unitary(alpha: f64, beta: f64, gamma: f64) -> Mat2 {
    let (p, m) = z_eigenvectors();
    let i = c(0.0, 1.0);
    let z = p * p.adjoint() - m * m.adjoint();
    let y = p * m.adjoint() * (-i) + m * p.adjoint() * i;
    let rot = |a: &Mat2, t: f64| Mat2::identity() * c(t.cos(), 0.0) + a * c(0.0, t.sin());
    rot(&z, alpha) * rot(&y, beta) * rot(&z, gamma)
}

/// Three qubits carrying the logical qubit `q` with representation states
/// `rep0` (for `α = 0`) and `rep1` (for `α = 1`); no `j = 3/2` weight.
pub fn encode_logical(q: &LogicalQubit, rep0: &SpinState, rep1: &SpinState) -> Result<MultiQubitState> {
    for r in [rep0, rep1] {
        if r.two_j() != 1 {
            return Err(Error::InvalidSpin(format!("representation state must be spin ½, got 2J = {}", r.two_j())));
        }
    }
    let basis = schur_basis(N)?;
    let blocks = basis
        .blocks()
        .iter()
        .map(|label| {
            let (xi, rep) = match (label.two_j, label.alpha) {
                (1, 0) => (q.a0, Some(rep0)),
                (1, 1) => (q.a1, Some(rep1)),
                _ => (c(0.0, 0.0), None),
            };
            SchurBlock {
                two_j: label.two_j,
                alpha: label.alpha,
                path: label.path.clone(),
                xi,
                rep_state: rep.map(|r| RepState { two_j: 1, amps: r.amps().to_vec() }),
            }
        })
        .collect();
    schur::reconstruct(&SchurDecomposition { n: N, blocks })
}

/// The three-qubit example
/// `(2(|110⟩+|001⟩) − (1+√3)(|101⟩+|100⟩) + (√3−1)(|011⟩+|010⟩)) / 2√6`.
pub fn example_state() -> MultiQubitState {
    let s3 = 3f64.sqrt();
    let mut amps = vec![c(0.0, 0.0); DIM];
    for (idx, v) in [(0b110, 2.0), (0b001, 2.0), (0b101, -1.0 - s3), (0b100, -1.0 - s3), (0b011, s3 - 1.0), (0b010, s3 - 1.0)] {
        amps[idx] = c(v, 0.0);
    }
    MultiQubitState::new(N, amps).expect("nonzero")
}

/// Logical content of a three-qubit decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalDecoding {
    /// Total weight in the `j = ½` sector.
    pub weight: f64,
    /// Reduced multiplicity density matrix, normalized to unit trace.
    pub density: Mat2,
    /// Bloch vector of `density`; unit length iff the logical qubit is pure.
    pub bloch: [f64; 3],
    /// Whether both `j = ½` blocks carry one representation state.
    pub shared_rep: bool,
    /// `(ξ⁰, ξ¹)` normalized, when `ξ⁰ ≠ 0` and the representation states
    /// are shared.
    pub coherent: Option<LogicalQubit>,
}

impl LogicalDecoding {
    /// `ξ¹/ξ⁰` when defined.
    pub fn ratio(&self) -> Option<Complex64> {
        self.coherent.map(|q| q.a1 / q.a0)
    }
}

pub fn decode_logical(d: &SchurDecomposition) -> Result<LogicalDecoding> {
    if d.n != N {
        return Err(Error::DimensionMismatch { expected: DIM, got: 1 << d.n });
    }
    let rho = d.multiplicity_density(1);
    let weight = (rho[(0, 0)] + rho[(1, 1)]).re;
    if weight < schur::EMPTY_BLOCK {
        return Err(Error::InvalidSpin("state has no weight in the j = ½ sector".into()));
    }
    let density = Mat2::from_fn(|i, j| rho[(i, j)] / weight);
    let bloch = [2.0 * density[(0, 1)].re, -2.0 * density[(0, 1)].im, (density[(0, 0)] - density[(1, 1)]).re];
    let b0 = d.block(1, 0).expect("α = 0 block");
    let b1 = d.block(1, 1).expect("α = 1 block");
    let shared_rep = match (&b0.rep_state, &b1.rep_state) {
        (Some(r0), Some(r1)) => linalg::fidelity(&r0.amps, &r1.amps) > 1.0 - SHARED_REP_TOL,
        _ => true,
    };
    let coherent = (shared_rep && b0.xi.norm() > schur::EMPTY_BLOCK)
        .then(|| LogicalQubit::new(b0.xi, b1.xi))
        .transpose()?;
    Ok(LogicalDecoding { weight, density, bloch, shared_rep, coherent })
}

/// Maximum deviations observed over the trials of
/// [`collective_noise_immunity`].
#[derive(Debug, Clone, PartialEq)]
pub struct ImmunityReport {
    pub trials: usize,
    pub seed: u64,
    /// Largest change of any `|ξ_j^α|`.
    pub max_xi_deviation: f64,
    /// Largest change of the reduced multiplicity density matrix.
    pub max_logical_deviation: f64,
    /// Largest change of `ξ¹/ξ⁰`; `None` when the ratio is undefined for
    /// this state (representation states not shared, or `ξ⁰ = 0`).
    pub max_ratio_deviation: Option<f64>,
    /// Whether the input state carries a shared `j = ½` representation state.
    pub shared_rep: bool,
    pub pass: bool,
}

/// Tolerance on `|ξ|` changes.
pub const XI_TOL: f64 = 1e-10;
/// Tolerance on logical-qubit changes.
pub const LOGICAL_TOL: f64 = 1e-9;

/// Applies `trials` Haar-random `u^⊗3` and checks that the multiplicity
/// content of `state` is unchanged. Trial `t` draws from the ChaCha8 stream
/// `t` of `seed`.
pub fn collective_noise_immunity(state: &MultiQubitState, trials: usize, seed: u64) -> Result<ImmunityReport> {
    if state.n() != N {
        return Err(Error::DimensionMismatch { expected: DIM, got: state.amps().len() });
    }
    if trials == 0 {
        return Err(Error::InvalidSpin("at least one trial is required".into()));
    }
    let before = schur::decompose(state)?;
    let has_half = before.multiplicity_state(1).iter().any(|x| x.norm() > schur::EMPTY_BLOCK);
    let logical_before = if has_half { Some(decode_logical(&before)?) } else { None };

    let per_trial: Vec<(f64, f64, Option<f64>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let u = haar_su2(&mut rng);
            let after = schur::decompose(&state.apply_collective(&u)?)?;
            let xi_dev = before
                .blocks
                .iter()
                .zip(&after.blocks)
                .map(|(a, b)| (a.xi.norm() - b.xi.norm()).abs())
                .fold(0.0, f64::max);
            let (logical_dev, ratio_dev) = match &logical_before {
                Some(lb) => {
                    let la = decode_logical(&after)?;
                    let dev = linalg::max_abs(&linalg::to_dense(&(la.density - lb.density)));
                    let ratio = match (lb.ratio(), la.ratio()) {
                        (Some(x), Some(y)) => Some((x - y).norm()),
                        _ => None,
                    };
                    (dev, ratio)
                }
                None => (0.0, None),
            };
            Ok((xi_dev, logical_dev, ratio_dev))
        })
        .collect::<Result<_>>()?;

    let max_xi_deviation = per_trial.iter().map(|t| t.0).fold(0.0, f64::max);
    let max_logical_deviation = per_trial.iter().map(|t| t.1).fold(0.0, f64::max);
    let ratio_ok = logical_before.as_ref().and_then(|l| l.ratio()).is_some();
    let max_ratio_deviation = ratio_ok.then(|| per_trial.iter().filter_map(|t| t.2).fold(0.0, f64::max));
    let pass = max_xi_deviation < XI_TOL
        && max_logical_deviation < LOGICAL_TOL
        && max_ratio_deviation.is_none_or(|r| r < LOGICAL_TOL);
    Ok(ImmunityReport {
        trials,
        seed,
        max_xi_deviation,
        max_logical_deviation,
        max_ratio_deviation,
        shared_rep: logical_before.as_ref().is_none_or(|l| l.shared_rep),
        pass,
    })
}

/// Largest entry of `[a, b] − 2i·c` on the multiplicity factor.
pub fn su2_relation_deviation(a: &LogicalOperator, b: &LogicalOperator, c_op: &LogicalOperator) -> f64 {
    let comm = a.action * b.action - b.action * a.action;
    linalg::max_abs(&linalg::to_dense(&(comm - c_op.action * c(0.0, 2.0))))
}
