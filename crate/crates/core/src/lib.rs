//! Circuit-level Pauli noise characterisation and noise-aware decoding for the
//! rotated XZZX surface code.
//!
//! The crate covers the full pipeline at desk scale:
//!
//! - [`pauli`]: Pauli algebra, Pauli channels, and the Walsh-Hadamard transform
//!   between error probabilities and channel eigenvalues.
//! - [`circuit`]: Clifford layers and circuits, Pauli propagation, gate orbits.
//! - [`tableau`]: a stabilizer tableau simulator used as a verification oracle.
//! - [`frame`]: Pauli-frame fault propagation and observable sensitivity sweeps.
//! - [`noise`]: log-normal and tuned depolarizing circuit-level noise models.
//! - [`surface`]: rotated XZZX surface-code layouts, syndrome-extraction and
//!   memory-experiment circuits with detectors.
//! - [`design`]: averaged-circuit-eigenvalue-sampling experiment designs, the
//!   sparse design matrix, figures of merit, and shot-weight optimization.
//! - [`estimate`]: simulated data collection, the log-linear WLS/GLS solver,
//!   the estimator covariance calculus, and Mahalanobis simplex projection.
//! - [`dem`]: detector error models, matching graphs, and exact
//!   minimum-weight perfect-matching decoding.
//! - [`fit`]: logical-error-per-round and error-suppression-factor fits,
//!   decoder confusion matrices, and scaling extrapolation.
//! - [`pipeline`]: end-to-end benchmark orchestration with deterministic
//!   reports.

pub mod circuit;
pub mod dem;
pub mod design;
pub mod estimate;
pub mod fit;
pub mod frame;
pub mod matching;
pub mod noise;
pub mod pauli;
pub mod pipeline;
pub mod simplex;
pub mod surface;
pub mod tableau;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("unsupported gate kind: {0}")]
    UnsupportedGate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("missing noise entry for gate {0}")]
    MissingNoise(String),
    #[error("design error: {0}")]
    Design(String),
    #[error("rank deficiency: {0}")]
    RankDeficient(String),
    #[error("estimation error: {0}")]
    Estimation(String),
    #[error("decoder error: {0}")]
    Decoder(String),
    #[error("fit error: {0}")]
    Fit(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
