//! Majorana stellar representation of spin-J pure states and its
//! Schur–Weyl generalization to ensembles of N spin-½ particles.
//!
//! Layout:
//! - [`polyroots`]: complex polynomial roots with roots-at-infinity bookkeeping.
//! - [`bloch`]: spinors, stereographic coordinates, SU(2)→SO(3), Möbius maps.
//! - [`majorana`]: spin-J states ↔ point constellations, GL(2) action.
//! - [`schur`]: Schur basis of N qubits, decomposition into representation and
//!   multiplicity states, permutation and collective operators.
//! - [`dfs`]: the three-qubit noiseless subsystem and its logical operators.
//! - [`cli`]: the `stellar` command-line front end.

pub mod bloch;
pub mod cli;
pub mod dfs;
pub mod error;
pub mod linalg;
pub mod majorana;
pub mod matching;
pub mod polyroots;
pub mod random;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
