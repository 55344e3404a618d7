//! Quantum correlation measures on small multipartite density matrices.
//!
//! The crate is organized in four layers:
//!
//! * [`qmat`] — dense complex linear algebra for multipartite states:
//!   tensor products, partial traces, a Jacobi eigensolver, purification
//!   and Haar-random sampling.
//! * [`measures`] — entropic and entanglement measures: von Neumann
//!   entropy, mutual information, quantum discord under optimized local
//!   qubit measurements, Wootters concurrence / entanglement of formation,
//!   and the monogamy shortcuts that evaluate qubit–qudit pairs of rank 2
//!   analytically.
//! * [`lii`] — the algebra of locally inaccessible information (LII) on
//!   tripartite pure states: average and balance of the two directional
//!   discords, cyclic and directed flows, and residual checks for the
//!   conservation identities that tie entanglement of formation to
//!   discord across a purification.
//! * [`dynamics`] — an amplitude-damping model of two qubits coupled to
//!   independent reservoirs, used to sweep the entanglement-sudden-death
//!   family and track the LII balance along the decay.
//!
//! All entropies are in bits (base-2 logarithms). States are dense,
//! row-major and small (a handful of qubits); every operation is a pure
//! function of its inputs and safe to call from multiple threads.

use thiserror::Error;

pub mod dynamics;
pub mod lii;
pub mod measures;
pub mod qmat;
pub mod statefile;

pub use qmat::{ComplexMatrix, DensityMatrix, PureState};

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "matrix is not Hermitian: max elementwise deviation {deviation:.3e} exceeds {tol:.1e}"
    )]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("trace must be 1, got {trace:.12}")]
    TraceNotOne { trace: f64 },

    #[error("eigenvalue {value:.3e} is below the -1e-9 clamping window")]
    NegativeEigenvalue { value: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigNonConvergence { sweeps: usize },

    #[error("subsystem dimensions {dims:?} are inconsistent with vector/matrix size {size}")]
    DimensionMismatch { dims: Vec<usize>, size: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    #[error("{perm:?} is not a permutation of 0..{len}")]
    MalformedPermutation { perm: Vec<usize>, len: usize },

    #[error("state vector is not normalized: squared norm {norm_sq:.12}")]
    NotNormalized { norm_sq: f64 },

    #[error("measured subsystem {index} has dimension {dim}, expected a qubit")]
    MeasuredNotQubit { index: usize, dim: usize },

    #[error(
        "optimized discord {value:.3e} is below -tol = -{tol:.1e}; optimization is inconsistent"
    )]
    NegativeDiscord { value: f64, tol: f64 },

    #[error("reduced pair state has numerical rank {rank} > 2; the monogamy route does not apply")]
    RankAboveTwo { rank: usize },

    #[error("no evaluation route for the requested discord: {0}")]
    NoRoute(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("state file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
