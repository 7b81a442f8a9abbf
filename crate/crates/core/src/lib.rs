//! Phase retrieval from local correlation measurements.
//!
//! A signal `x0` in `C^d` is probed by circular shifts of short masks
//! (support `delta`), and only squared moduli of the correlations are
//! observed, as in one-dimensional ptychography. Lifting `|<x0, S^l m>|^2 =
//! <x0 x0*, S^l m m* S^-l>` turns the measurements into a linear system on a
//! circularly banded Hermitian matrix. This crate provides:
//!
//! - construction of mask families (deterministic windows with Fourier
//!   modulations, and random families for strided shifts),
//! - the forward measurement operator for shift stride `s >= 1` and its
//!   dense canonical matrix for oracle testing,
//! - exact singular values / condition numbers of the operator through its
//!   frequency-block diagonalization, plus spanning checks,
//! - fast inversion of the linear system (FFT-based for dense shifts with
//!   Fourier masks, per-frequency least squares in general),
//! - signal recovery: blockwise magnitude estimation and eigenvector phase
//!   estimation, with phase-invariant error metrics.
//!
//! All operations are pure functions over immutable inputs and can be called
//! concurrently without synchronization.

pub mod banded;
pub mod conditioning;
pub mod error;
pub mod inversion;
pub mod linalg;
pub mod masks;
pub mod operator;
pub mod recovery;
pub mod structure;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Row guard for dense assembly helpers (`circ`, `circ_block`, dense
/// canonical matrices). These are oracle/test utilities; production paths
/// never materialize dense operators.
pub const DENSE_GUARD: usize = 4096;
