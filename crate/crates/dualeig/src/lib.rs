//! Spectral methods for dual Hermitian matrices and dual unit gain graphs.
//!
//! A dual element is `a_s + a_d*eps` with `eps^2 = 0`, where the parts live in
//! one of three ground rings: the reals, the complex numbers, or the
//! quaternions. An `n x n` dual Hermitian matrix has exactly `n` dual *number*
//! eigenvalues; their standard parts are the eigenvalues of the standard-part
//! matrix, and their dual parts are eigenvalues of small Hermitian "supplement"
//! matrices built from the eigenspaces. [`smm::smm_eig`] computes the full
//! decomposition that way.
//!
//! On top of the solver sit two graph applications: balance verification of
//! unit gain graphs through their Laplacian spectrum, and feasibility
//! ("reasonableness") of relative-configuration schemes in rigid-body
//! formation control. See [`gaingraph`].
//!
//! Module map:
//! - [`ring`]: quaternions, ground scalars, dual scalars, dual numbers.
//! - [`dmat`]: dual vectors/matrices, norms, Hermitian checks, text format.
//! - [`heig`]: ground-ring Hermitian eigensolver (real symmetric core plus
//!   complex and quaternion embeddings).
//! - [`smm`]: the supplement matrix method, dual determinant, characteristic
//!   polynomial.
//! - [`gaingraph`]: unit gain graphs, balance, scheme verification, balanced
//!   cycle generators.

pub mod dmat;
pub mod gaingraph;
pub mod heig;
pub mod ring;
pub mod smm;

use thiserror::Error;

pub use ring::{DualNumber, DualScalar, GroundScalar, Quaternion, Ring};

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("infinitesimal dual element has no inverse")]
    InfinitesimalNotInvertible,

    #[error("rotation part is not a unit quaternion (|q| = {0})")]
    NonUnitRotation(f64),

    #[error("translation part is not an imaginary quaternion (real part = {0})")]
    NonImaginaryTranslation(f64),

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("correction system is inconsistent (residual {residual:.3e}, tolerance {tolerance:.3e})")]
    InconsistentSystem { residual: f64, tolerance: f64 },

    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("gain on edge ({i}, {j}) is not unit (deviation {deviation:.3e})")]
    NonUnitGain { i: usize, j: usize, deviation: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
