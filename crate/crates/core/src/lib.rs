//! Exact computation with finite-dimensional nilpotent Lie algebras given by
//! structure constants over prime fields and the rationals.
//!
//! The crate covers exact scalars and subspace lattices, the usual
//! invariants of a Lie algebra (central series, centers, centralizers),
//! enumeration of maximal subalgebras over finite fields, the Frattinian
//! predicate, and a constructive central-product decomposition of Frattinian
//! algebras together with an independent certificate verifier.

pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod frattinian;
pub mod lie;
pub mod linear;
pub mod maximal;
pub mod scalar;

pub use error::{Error, Result};
pub use lie::{LieAlgebra, SeriesKind, SeriesReport};
pub use linear::{Matrix, Subspace, Vector};
pub use scalar::{ArithOp, Domain, Scalar};
