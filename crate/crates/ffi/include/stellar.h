#ifndef STELLAR_H
#define STELLAR_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all functions.
 */
typedef enum StellarStatus {
  STELLAR_STATUS_OK = 0,
  STELLAR_STATUS_NULL_POINTER = 1,
  STELLAR_STATUS_INVALID_ARGUMENT = 2,
  STELLAR_STATUS_SINGULAR = 3,
  STELLAR_STATUS_NOT_SYMMETRIC = 4,
  STELLAR_STATUS_NO_CONVERGENCE = 5,
  STELLAR_STATUS_TOO_LARGE = 6,
  STELLAR_STATUS_BUFFER_TOO_SMALL = 7,
  STELLAR_STATUS_PANIC = 8,
} StellarStatus;

/**
 * Majorana constellation with its degeneracy signature.
 */
typedef struct StellarConstellation StellarConstellation;

/**
 * Schur decomposition of an N-qubit state.
 */
typedef struct StellarDecomposition StellarDecomposition;

/**
 * N-qubit state.
 */
typedef struct StellarQubits StellarQubits;

/**
 * Spin-J state.
 */
typedef struct StellarSpin StellarSpin;

/**
 * One `(j, α)` block of a decomposition.
 */
typedef struct StellarBlock {
  uint32_t two_j;
  size_t alpha;
  double xi_re;
  double xi_im;
} StellarBlock;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *stellar_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *stellar_last_error(void);

/**
 * Spin state with `two_j + 1` amplitudes over `m = J, …, −J`; normalized
 * on construction.
 *
 * # Safety
 * `amps` must point to `2 * len` doubles and `out` must be writable.
 */
enum StellarStatus stellar_spin_new(uint32_t two_j,
                                    const double *amps,
                                    size_t len,
                                    struct StellarSpin **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not yet freed.
 */
void stellar_spin_free(struct StellarSpin *s);

/**
 * `2J`, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
uint32_t stellar_spin_two_j(const struct StellarSpin *s);

/**
 * Copy the `2J + 1` amplitudes into `out` (capacity `cap` complex entries).
 *
 * # Safety
 * `s` must be a live handle; `out` must hold `2 * cap` doubles.
 */
enum StellarStatus stellar_spin_amplitudes(const struct StellarSpin *s, double *out, size_t cap);

/**
 * `|⟨a|b⟩|`.
 *
 * # Safety
 * `a`, `b` live handles, `out` writable.
 */
enum StellarStatus stellar_spin_fidelity(const struct StellarSpin *a,
                                         const struct StellarSpin *b,
                                         double *out);

/**
 * Collective action of the 2×2 matrix `m` (row major, interleaved
 * complex, 8 doubles), renormalized. Singular `m` fails.
 *
 * # Safety
 * `s` live, `m` points to 8 doubles, `out` writable.
 */
enum StellarStatus stellar_spin_apply_gl2(const struct StellarSpin *s,
                                          const double *m,
                                          struct StellarSpin **out);

/**
 * Majorana points of `s`, coincident within `eps` grouped.
 *
 * # Safety
 * `s` live, `out` writable.
 */
enum StellarStatus stellar_spin_points(const struct StellarSpin *s,
                                       double eps,
                                       struct StellarConstellation **out);

/**
 * # Safety
 * `c` must be null or a live handle.
 */
void stellar_constellation_free(struct StellarConstellation *c);

/**
 * Number of points (`2J`), or 0 for a null handle.
 *
 * # Safety
 * `c` must be null or a live handle.
 */
size_t stellar_constellation_len(const struct StellarConstellation *c);

/**
 * Cartesian coordinates of point `index` into `out[0..3]`.
 *
 * # Safety
 * `c` live, `out` holds 3 doubles.
 */
enum StellarStatus stellar_constellation_point(const struct StellarConstellation *c,
                                               size_t index,
                                               double *out);

/**
 * Cluster multiplicities, descending. `*len` receives the count; the
 * values are written when `cap` suffices.
 *
 * # Safety
 * `c` live, `len` writable, `out` holds `cap` entries (may be null if `cap = 0`).
 */
enum StellarStatus stellar_constellation_degeneracy(const struct StellarConstellation *c,
                                                    size_t *out,
                                                    size_t cap,
                                                    size_t *len);

/**
 * The spin state whose Majorana points are `c`, up to global phase.
 *
 * # Safety
 * `c` live, `out` writable.
 */
enum StellarStatus stellar_constellation_to_spin(const struct StellarConstellation *c,
                                                 struct StellarSpin **out);

/**
 * N-qubit state with `2^n` amplitudes, qubit 1 most significant.
 *
 * # Safety
 * `amps` must point to `2 * len` doubles and `out` must be writable.
 */
enum StellarStatus stellar_qubits_new(size_t n,
                                      const double *amps,
                                      size_t len,
                                      struct StellarQubits **out);

/**
 * # Safety
 * `q` must be null or a live handle.
 */
void stellar_qubits_free(struct StellarQubits *q);

/**
 * Symmetric embedding of a spin-J state into `2J` qubits.
 *
 * # Safety
 * `s` live, `out` writable.
 */
enum StellarStatus stellar_qubits_from_spin(const struct StellarSpin *s,
                                            struct StellarQubits **out);

/**
 * Spin-N/2 state of a permutation-symmetric qubit state; fails with
 * `NotSymmetric` beyond `tol`.
 *
 * # Safety
 * `q` live, `out` writable.
 */
enum StellarStatus stellar_qubits_to_spin(const struct StellarQubits *q,
                                          double tol,
                                          struct StellarSpin **out);

/**
 * Schur decomposition of `q`.
 *
 * # Safety
 * `q` live, `out` writable.
 */
enum StellarStatus stellar_decompose(const struct StellarQubits *q,
                                     struct StellarDecomposition **out);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
void stellar_decomposition_free(struct StellarDecomposition *d);

/**
 * Number of `(j, α)` blocks, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t stellar_decomposition_block_count(const struct StellarDecomposition *d);

/**
 * Label and weight `ξ` of block `index`.
 *
 * # Safety
 * `d` live, `out` writable.
 */
enum StellarStatus stellar_decomposition_block(const struct StellarDecomposition *d,
                                               size_t index,
                                               struct StellarBlock *out);

/**
 * Representation state of block `index` (`2j + 1` amplitudes). Empty
 * blocks and `j = 0` blocks report `*len = 0`.
 *
 * # Safety
 * `d` live, `len` writable, `out` holds `2 * cap` doubles.
 */
enum StellarStatus stellar_decomposition_rep_state(const struct StellarDecomposition *d,
                                                   size_t index,
                                                   double *out,
                                                   size_t cap,
                                                   size_t *len);

/**
 * L2 distance between the input state and its reconstruction.
 *
 * # Safety
 * `d` must be null or a live handle; null yields NaN.
 */
double stellar_decomposition_residual(const struct StellarDecomposition *d);

/**
 * Multiplicity `d_j` of spin `two_j / 2` in `n` qubits.
 *
 * # Safety
 * `out` writable.
 */
enum StellarStatus stellar_multiplicity_dim(size_t n, uint32_t two_j, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STELLAR_H */
