//! Classical structures, complementarity and Simon's algorithm, evaluated as
//! matrix algebra over two scalar models: complex amplitudes (finite
//! dimensional Hilbert spaces) and booleans (sets and relations).
//!
//! Every morphism is a [`Mor`]: a `cod × dom` matrix over a [`Scalar`]
//! semiring. Composition is matrix product, the monoidal product is the
//! Kronecker product with the left factor most significant, and the dagger
//! is the conjugate transpose (relational converse for booleans).
//!
//! The modules build on each other:
//!
//! * [`tensor`]: morphisms, dualities, traces, inner products, entanglement.
//! * [`frobenius`]: classical structures: law checking, bases, convolution,
//!   Cayley representation, unbiasedness and complementarity.
//! * [`models`]: concrete structures in both models, Hadamard-Walsh, abelian
//!   groups, rectangular structures and the classification oracle in Rel.
//! * [`kleisli`]: Kleisli composition for a comonoid, substitution and the
//!   Kleisli dagger.
//! * [`oracle`]: bitstring functions, their reversible form and lifts.
//! * [`measurement`]: X-actions and measurements.
//! * [`simon`]: Simon's algorithm in both models and the GF(2) solver.
//! * [`io`]: JSON formats shared with the command line tool.

pub mod error;
pub mod frobenius;
pub mod io;
pub mod kleisli;
pub mod limits;
pub mod measurement;
pub mod models;
pub mod oracle;
pub mod scalar;
pub mod simon;
pub mod tensor;

pub use error::{Error, Result};
pub use frobenius::{Basis, CayleyClass, ClassicalStructure, LawReport, LawResult};
pub use scalar::{ModelKind, Scalar, C64};
pub use tensor::{DualityPair, Mor};
