use std::ffi::CStr;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::ptr;

use stellar_ffi::*;

fn noon(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; 2 * (n + 1)];
    v[0] = FRAC_1_SQRT_2;
    v[2 * n] = FRAC_1_SQRT_2;
    v
}

fn spin(two_j: u32, amps: &[f64]) -> *mut StellarSpin {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { stellar_spin_new(two_j, amps.as_ptr(), amps.len() / 2, &mut s) }, StellarStatus::Ok);
    s
}

fn last_error() -> String {
    let p = stellar_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(stellar_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn noon_points_through_the_c_abi() {
    let n = 8;
    let s = spin(n as u32, &noon(n));
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(stellar_spin_points(s, 1e-6, &mut c), StellarStatus::Ok);
        assert_eq!(stellar_constellation_len(c), n);
        let mut phis = Vec::new();
        for i in 0..n {
            let mut p = [0.0; 3];
            assert_eq!(stellar_constellation_point(c, i, p.as_mut_ptr()), StellarStatus::Ok);
            assert!(p[2].abs() < 1e-9);
            phis.push(p[1].atan2(p[0]).rem_euclid(TAU));
        }
        phis.sort_by(f64::total_cmp);
        for w in phis.windows(2) {
            assert!((w[1] - w[0] - TAU / n as f64).abs() < 1e-7);
        }
        let mut p = [0.0; 3];
        assert_eq!(stellar_constellation_point(c, n, p.as_mut_ptr()), StellarStatus::InvalidArgument);

        let mut deg = [0usize; 16];
        let mut len = 0;
        assert_eq!(stellar_constellation_degeneracy(c, deg.as_mut_ptr(), deg.len(), &mut len), StellarStatus::Ok);
        assert_eq!(&deg[..len], &[1; 8]);
        assert_eq!(stellar_constellation_degeneracy(c, deg.as_mut_ptr(), 2, &mut len), StellarStatus::BufferTooSmall);
        assert_eq!(len, 8);

        let mut back = ptr::null_mut();
        assert_eq!(stellar_constellation_to_spin(c, &mut back), StellarStatus::Ok);
        let mut f = 0.0;
        assert_eq!(stellar_spin_fidelity(s, back, &mut f), StellarStatus::Ok);
        assert!((1.0 - f).abs() < 1e-10);

        stellar_spin_free(back);
        stellar_constellation_free(c);
        stellar_spin_free(s);
    }
}

#[test]
fn gl2_and_error_reporting() {
    let s = spin(2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    unsafe {
        let singular = [1.0, 0.0, 2.0, 0.0, 2.0, 0.0, 4.0, 0.0];
        let mut out = ptr::null_mut();
        assert_eq!(stellar_spin_apply_gl2(s, singular.as_ptr(), &mut out), StellarStatus::Singular);
        assert!(out.is_null());
        assert!(last_error().contains("singular"));

        // σ_x maps the north pole to the south pole.
        let flip = [0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(stellar_spin_apply_gl2(s, flip.as_ptr(), &mut out), StellarStatus::Ok);
        let mut amps = [0.0; 6];
        assert_eq!(stellar_spin_amplitudes(out, amps.as_mut_ptr(), 3), StellarStatus::Ok);
        assert!((amps[4].hypot(amps[5]) - 1.0).abs() < 1e-12);
        assert_eq!(stellar_spin_amplitudes(out, amps.as_mut_ptr(), 2), StellarStatus::BufferTooSmall);
        assert_eq!(stellar_spin_two_j(out), 2);
        stellar_spin_free(out);

        let mut c = ptr::null_mut();
        assert_eq!(stellar_spin_points(s, 0.0, &mut c), StellarStatus::InvalidArgument);
        assert_eq!(stellar_spin_points(ptr::null(), 1e-6, &mut c), StellarStatus::NullPointer);
        assert!(last_error().contains("null"));
        stellar_spin_free(s);
    }

    let zero = [0.0; 4];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { stellar_spin_new(1, zero.as_ptr(), 2, &mut out) }, StellarStatus::InvalidArgument);
    assert_eq!(unsafe { stellar_spin_new(2, zero.as_ptr(), 2, &mut out) }, StellarStatus::InvalidArgument);
    unsafe {
        stellar_spin_free(ptr::null_mut());
        assert_eq!(stellar_spin_two_j(ptr::null()), 0);
        assert!(stellar_decomposition_residual(ptr::null()).is_nan());
    }
}

#[test]
fn decomposition_of_the_three_qubit_example() {
    let s3 = 3f64.sqrt();
    let k = 1.0 / (2.0 * 6f64.sqrt());
    let mut amps = [0.0; 16];
    for (idx, a) in [(0b110, 2.0), (0b001, 2.0), (0b101, -1.0 - s3), (0b100, -1.0 - s3), (0b011, s3 - 1.0), (0b010, s3 - 1.0)] {
        amps[2 * idx] = a * k;
    }
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(stellar_qubits_new(3, amps.as_ptr(), 8, &mut q), StellarStatus::Ok);
        let mut spin_out = ptr::null_mut();
        assert_eq!(stellar_qubits_to_spin(q, 1e-8, &mut spin_out), StellarStatus::NotSymmetric);

        let mut d = ptr::null_mut();
        assert_eq!(stellar_decompose(q, &mut d), StellarStatus::Ok);
        assert!(stellar_decomposition_residual(d) < 1e-10);
        assert_eq!(stellar_decomposition_block_count(d), 3);
        let mut mags = Vec::new();
        for i in 0..3 {
            let mut b = StellarBlock { two_j: 0, alpha: 0, xi_re: 0.0, xi_im: 0.0 };
            assert_eq!(stellar_decomposition_block(d, i, &mut b), StellarStatus::Ok);
            mags.push((b.two_j, b.xi_re.hypot(b.xi_im)));
            let mut rep = [0.0; 8];
            let mut len = 0;
            assert_eq!(stellar_decomposition_rep_state(d, i, rep.as_mut_ptr(), 4, &mut len), StellarStatus::Ok);
            if b.two_j == 1 {
                assert_eq!(len, 2);
                // (|0⟩ ± |1⟩)/√2 up to phase.
                assert!((rep[0].hypot(rep[1]) - FRAC_1_SQRT_2).abs() < 1e-9);
                assert!((rep[2].hypot(rep[3]) - FRAC_1_SQRT_2).abs() < 1e-9);
            } else {
                assert_eq!(len, 0);
            }
        }
        mags.sort_by(|a, b| a.1.total_cmp(&b.1));
        assert_eq!(mags[0].0, 3);
        assert!(mags[0].1 < 1e-12);
        assert!((mags[1].1 - FRAC_1_SQRT_2).abs() < 1e-12 && (mags[2].1 - FRAC_1_SQRT_2).abs() < 1e-12);
        let mut b = StellarBlock { two_j: 0, alpha: 0, xi_re: 0.0, xi_im: 0.0 };
        assert_eq!(stellar_decomposition_block(d, 3, &mut b), StellarStatus::InvalidArgument);

        stellar_decomposition_free(d);
        stellar_qubits_free(q);
    }
}

#[test]
fn symmetric_embedding_roundtrip() {
    let s = spin(4, &[0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0, -0.5, 0.0, 0.0]);
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(stellar_qubits_from_spin(s, &mut q), StellarStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(stellar_qubits_to_spin(q, 1e-8, &mut back), StellarStatus::Ok);
        let mut f = 0.0;
        assert_eq!(stellar_spin_fidelity(s, back, &mut f), StellarStatus::Ok);
        assert!((f - 1.0).abs() < 1e-12);
        stellar_spin_free(back);
        stellar_qubits_free(q);
        stellar_spin_free(s);
    }
}

#[test]
fn multiplicity_dims() {
    let mut d = 0u64;
    unsafe {
        assert_eq!(stellar_multiplicity_dim(3, 1, &mut d), StellarStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(stellar_multiplicity_dim(12, 0, &mut d), StellarStatus::Ok);
        assert_eq!(d, 132);
        assert_eq!(stellar_multiplicity_dim(3, 2, &mut d), StellarStatus::InvalidArgument);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/stellar.h")).unwrap();
    for name in [
        "stellar_version",
        "stellar_last_error",
        "stellar_spin_new",
        "stellar_spin_points",
        "stellar_constellation_point",
        "stellar_decompose",
        "stellar_decomposition_block",
        "STELLAR_STATUS_OK",
        "typedef struct StellarSpin StellarSpin",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
