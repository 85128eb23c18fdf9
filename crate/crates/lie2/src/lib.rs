//! Exact computer algebra for Lie algebras and Lie superalgebras over
//! finite fields of characteristic 2.
//!
//! The crate is organized around a small tower of modules:
//!
//! * [`field`] — arithmetic in GF(2^k), including the characteristic-2
//!   specials (square roots are unique, Artin–Schreier equations replace
//!   quadratics).
//! * [`linalg`] — exact dense linear algebra over such fields, with
//!   bit-packed elimination over GF(2) as the performance kernel.
//! * [`liealg`] — structure-constant Lie algebras: validation, series,
//!   derivations, 2-power maps, quotients.
//! * [`divpow`] — divided-power algebras O(1;n), the vectorial algebras
//!   vect(1;n), grading derivations D_u and the deformation maps attached
//!   to them.
//! * [`classical`] — gl/sl/psl and both orthogonal series together with
//!   their grading representatives (projections).
//! * [`superalg`] — Lie superalgebras with squaring, the one-step
//!   restricted closure and "method 2" superization, and the named
//!   superalgebras used as references.
//! * [`cli`] — the `lie2` command-line experiment runner.
//!
//! Everything is exact: no floats anywhere, all assertions are equalities
//! in the field.

pub mod classical;
pub mod cli;
pub mod divpow;
pub mod field;
pub mod io;
pub mod liealg;
pub mod linalg;
pub mod superalg;

mod book;

use thiserror::Error as ThisError;

/// Crate-wide error type; variants map onto the CLI exit codes
/// (usage → 2, resource → 3, everything else → 1).
#[derive(Debug, ThisError)]
pub enum Error {
    /// Caller violated a precondition (bad series name, wrong dimensions, …).
    #[error("usage error: {0}")]
    Usage(String),
    /// Mathematically undefined request (inverse of zero, …).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured bound was exceeded (search space, closure steps, …).
    #[error("resource limit: {0}")]
    Resource(String),
    /// An internal consistency check failed; indicates a bug upstream.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use field::{Fe, Field, FiniteField};
pub use liealg::{LieAlgebra, Subspace, ValidationReport};
pub use linalg::{Matrix, Polynomial};
pub use superalg::{GradedPair, LieSuperalgebra};

