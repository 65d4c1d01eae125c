//! C ABI over `stellar-core`.
//!
//! Every fallible function returns a [`StellarStatus`]; on failure the
//! message is kept per thread and read with [`stellar_last_error`].
//! Handles are heap objects owned by the caller and released with the
//! matching `*_free` function. Complex arrays are interleaved
//! `re, im` doubles; lengths count complex entries.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use stellar_core::linalg::{self, Mat2};
use stellar_core::majorana::{self, PointConstellation, SpinState};
use stellar_core::schur::{self, MultiQubitState, SchurDecomposition};
use stellar_core::Error;

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StellarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Singular = 3,
    NotSymmetric = 4,
    NoConvergence = 5,
    TooLarge = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<&Error> for StellarStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Singular { .. } => StellarStatus::Singular,
            Error::NotSymmetric { .. } => StellarStatus::NotSymmetric,
            Error::NoConvergence { .. } => StellarStatus::NoConvergence,
            Error::TooLarge { .. } | Error::Overflow(_) => StellarStatus::TooLarge,
            _ => StellarStatus::InvalidArgument,
        }
    }
}

/// Spin-J state.
pub struct StellarSpin {
    inner: SpinState,
}

/// Majorana constellation with its degeneracy signature.
pub struct StellarConstellation {
    inner: PointConstellation,
    degeneracy: Vec<usize>,
}

/// N-qubit state.
pub struct StellarQubits {
    inner: MultiQubitState,
}

/// Schur decomposition of an N-qubit state.
pub struct StellarDecomposition {
    inner: SchurDecomposition,
    residual: f64,
}

/// One `(j, α)` block of a decomposition.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StellarBlock {
    pub two_j: u32,
    pub alpha: usize,
    pub xi_re: f64,
    pub xi_im: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(StellarStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(StellarStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(StellarStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StellarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StellarStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            StellarStatus::Panic
        }
    }
}

unsafe fn read_amps(amps: *const f64, len: usize) -> Result<Vec<Complex64>, Failure> {
    if amps.is_null() {
        return Err(null("amplitude array"));
    }
    let raw = std::slice::from_raw_parts(amps, 2 * len);
    Ok(raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn get<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_amps(src: &[Complex64], out: *mut f64, cap: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    if cap < src.len() {
        return Err(Failure(StellarStatus::BufferTooSmall, format!("need {} entries, got {cap}", src.len())));
    }
    let dst = std::slice::from_raw_parts_mut(out, 2 * src.len());
    for (d, a) in dst.chunks_exact_mut(2).zip(src) {
        d[0] = a.re;
        d[1] = a.im;
    }
    Ok(())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn stellar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stellar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Spin state with `two_j + 1` amplitudes over `m = J, …, −J`; normalized
/// on construction.
///
/// # Safety
/// `amps` must point to `2 * len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_new(
    two_j: u32,
    amps: *const f64,
    len: usize,
    out: *mut *mut StellarSpin,
) -> StellarStatus {
    guard(|| {
        let inner = SpinState::new(two_j, read_amps(amps, len)?)?;
        put(out, StellarSpin { inner })
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_free(s: *mut StellarSpin) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// `2J`, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_two_j(s: *const StellarSpin) -> u32 {
    s.as_ref().map_or(0, |s| s.inner.two_j())
}

/// Copy the `2J + 1` amplitudes into `out` (capacity `cap` complex entries).
///
/// # Safety
/// `s` must be a live handle; `out` must hold `2 * cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_amplitudes(s: *const StellarSpin, out: *mut f64, cap: usize) -> StellarStatus {
    guard(|| write_amps(get(s, "spin state")?.inner.amps(), out, cap))
}

/// `|⟨a|b⟩|`.
///
/// # Safety
/// `a`, `b` live handles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_fidelity(a: *const StellarSpin, b: *const StellarSpin, out: *mut f64) -> StellarStatus {
    guard(|| {
        let f = get(a, "first state")?.inner.fidelity(&get(b, "second state")?.inner);
        *out.as_mut().ok_or_else(|| null("output"))? = f;
        Ok(())
    })
}

/// Collective action of the 2×2 matrix `m` (row major, interleaved
/// complex, 8 doubles), renormalized. Singular `m` fails.
///
/// # Safety
/// `s` live, `m` points to 8 doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_apply_gl2(
    s: *const StellarSpin,
    m: *const f64,
    out: *mut *mut StellarSpin,
) -> StellarStatus {
    guard(|| {
        let e = read_amps(m, 4)?;
        let mat = Mat2::new(e[0], e[1], e[2], e[3]);
        let inner = majorana::apply_gl2(&get(s, "spin state")?.inner, &mat)?;
        put(out, StellarSpin { inner })
    })
}

/// Majorana points of `s`, coincident within `eps` grouped.
///
/// # Safety
/// `s` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_spin_points(
    s: *const StellarSpin,
    eps: f64,
    out: *mut *mut StellarConstellation,
) -> StellarStatus {
    guard(|| {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Failure(StellarStatus::InvalidArgument, format!("eps must be positive, got {eps}")));
        }
        let inner = majorana::majorana_points(&get(s, "spin state")?.inner, eps)?;
        let degeneracy = majorana::degeneracy_signature(&inner, eps).0;
        put(out, StellarConstellation { inner, degeneracy })
    })
}

/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_constellation_free(c: *mut StellarConstellation) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of points (`2J`), or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_constellation_len(c: *const StellarConstellation) -> usize {
    c.as_ref().map_or(0, |c| c.inner.len())
}

/// Cartesian coordinates of point `index` into `out[0..3]`.
///
/// # Safety
/// `c` live, `out` holds 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn stellar_constellation_point(
    c: *const StellarConstellation,
    index: usize,
    out: *mut f64,
) -> StellarStatus {
    guard(|| {
        let c = get(c, "constellation")?;
        let p = c.inner.points().get(index).ok_or_else(|| {
            Failure(StellarStatus::InvalidArgument, format!("point {index} out of range ({} points)", c.inner.len()))
        })?;
        if out.is_null() {
            return Err(null("output buffer"));
        }
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&p.coords());
        Ok(())
    })
}

/// Cluster multiplicities, descending. `*len` receives the count; the
/// values are written when `cap` suffices.
///
/// # Safety
/// `c` live, `len` writable, `out` holds `cap` entries (may be null if `cap = 0`).
#[no_mangle]
pub unsafe extern "C" fn stellar_constellation_degeneracy(
    c: *const StellarConstellation,
    out: *mut usize,
    cap: usize,
    len: *mut usize,
) -> StellarStatus {
    guard(|| {
        let d = &get(c, "constellation")?.degeneracy;
        *len.as_mut().ok_or_else(|| null("length output"))? = d.len();
        if cap < d.len() {
            return Err(Failure(StellarStatus::BufferTooSmall, format!("need {} entries, got {cap}", d.len())));
        }
        if out.is_null() {
            return Err(null("output buffer"));
        }
        std::slice::from_raw_parts_mut(out, d.len()).copy_from_slice(d);
        Ok(())
    })
}

/// The spin state whose Majorana points are `c`, up to global phase.
///
/// # Safety
/// `c` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_constellation_to_spin(
    c: *const StellarConstellation,
    out: *mut *mut StellarSpin,
) -> StellarStatus {
    guard(|| {
        let inner = majorana::state_from_bloch(get(c, "constellation")?.inner.points())?;
        put(out, StellarSpin { inner })
    })
}

/// N-qubit state with `2^n` amplitudes, qubit 1 most significant.
///
/// # Safety
/// `amps` must point to `2 * len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_qubits_new(
    n: usize,
    amps: *const f64,
    len: usize,
    out: *mut *mut StellarQubits,
) -> StellarStatus {
    guard(|| {
        let inner = MultiQubitState::new(n, read_amps(amps, len)?)?;
        put(out, StellarQubits { inner })
    })
}

/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_qubits_free(q: *mut StellarQubits) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Symmetric embedding of a spin-J state into `2J` qubits.
///
/// # Safety
/// `s` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_qubits_from_spin(s: *const StellarSpin, out: *mut *mut StellarQubits) -> StellarStatus {
    guard(|| {
        let inner = MultiQubitState::from_spin(&get(s, "spin state")?.inner);
        put(out, StellarQubits { inner })
    })
}

/// Spin-N/2 state of a permutation-symmetric qubit state; fails with
/// `NotSymmetric` beyond `tol`.
///
/// # Safety
/// `q` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_qubits_to_spin(
    q: *const StellarQubits,
    tol: f64,
    out: *mut *mut StellarSpin,
) -> StellarStatus {
    guard(|| {
        let inner = get(q, "qubit state")?.inner.to_spin(tol)?;
        put(out, StellarSpin { inner })
    })
}

/// Schur decomposition of `q`.
///
/// # Safety
/// `q` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_decompose(q: *const StellarQubits, out: *mut *mut StellarDecomposition) -> StellarStatus {
    guard(|| {
        let q = &get(q, "qubit state")?.inner;
        let inner = schur::decompose(q)?;
        let rebuilt = schur::reconstruct_amps(&inner)?;
        let diff: Vec<Complex64> = rebuilt.iter().zip(q.amps()).map(|(a, b)| a - b).collect();
        let residual = linalg::norm(&diff);
        put(out, StellarDecomposition { inner, residual })
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_decomposition_free(d: *mut StellarDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of `(j, α)` blocks, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stellar_decomposition_block_count(d: *const StellarDecomposition) -> usize {
    d.as_ref().map_or(0, |d| d.inner.blocks.len())
}

/// Label and weight `ξ` of block `index`.
///
/// # Safety
/// `d` live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_decomposition_block(
    d: *const StellarDecomposition,
    index: usize,
    out: *mut StellarBlock,
) -> StellarStatus {
    guard(|| {
        let d = get(d, "decomposition")?;
        let b = d.inner.blocks.get(index).ok_or_else(|| {
            Failure(StellarStatus::InvalidArgument, format!("block {index} out of range ({} blocks)", d.inner.blocks.len()))
        })?;
        *out.as_mut().ok_or_else(|| null("output"))? =
            StellarBlock { two_j: b.two_j, alpha: b.alpha, xi_re: b.xi.re, xi_im: b.xi.im };
        Ok(())
    })
}

/// Representation state of block `index` (`2j + 1` amplitudes). Empty
/// blocks and `j = 0` blocks report `*len = 0`.
///
/// # Safety
/// `d` live, `len` writable, `out` holds `2 * cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn stellar_decomposition_rep_state(
    d: *const StellarDecomposition,
    index: usize,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> StellarStatus {
    guard(|| {
        let d = get(d, "decomposition")?;
        let b = d.inner.blocks.get(index).ok_or_else(|| {
            Failure(StellarStatus::InvalidArgument, format!("block {index} out of range ({} blocks)", d.inner.blocks.len()))
        })?;
        let amps = match &b.rep_state {
            Some(r) if r.two_j > 0 => r.amps.as_slice(),
            _ => &[],
        };
        *len.as_mut().ok_or_else(|| null("length output"))? = amps.len();
        if amps.is_empty() {
            return Ok(());
        }
        write_amps(amps, out, cap)
    })
}

/// L2 distance between the input state and its reconstruction.
///
/// # Safety
/// `d` must be null or a live handle; null yields NaN.
#[no_mangle]
pub unsafe extern "C" fn stellar_decomposition_residual(d: *const StellarDecomposition) -> f64 {
    d.as_ref().map_or(f64::NAN, |d| d.residual)
}

/// Multiplicity `d_j` of spin `two_j / 2` in `n` qubits.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stellar_multiplicity_dim(n: usize, two_j: u32, out: *mut u64) -> StellarStatus {
    guard(|| {
        let d = schur::multiplicity_dim(n, two_j)?;
        let d = u64::try_from(d).map_err(|_| Failure(StellarStatus::TooLarge, format!("d_j = {d} exceeds 64 bits")))?;
        *out.as_mut().ok_or_else(|| null("output"))? = d;
        Ok(())
    })
}
