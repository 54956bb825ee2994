//! Exact permanents and determinants of the banded matrix families whose
//! values are Jacobsthal and Jacobsthal-Lucas numbers.
//!
//! * [`matrix`]: dense big-integer matrices, family builders, Hadamard product, contraction.
//! * [`permanent`]: Laplace, Ryser and contraction-chain permanents.
//! * [`determinant`]: Bareiss and cofactor determinants.
//! * [`sequences`]: the two recurrences and the Cassini-like residual.
//! * [`verify`]: suites checking the identities across engines.
//! * [`io`]: JSON and CSV encodings.

pub mod determinant;
pub mod error;
pub mod io;
pub mod matrix;
pub mod permanent;
pub mod sequences;
pub mod verify;

pub use determinant::{determinant_bareiss, determinant_laplace, DeterminantEngine};
pub use error::{Axis, Error, Result};
pub use matrix::{
    build_a, build_b, build_h, build_k, build_s, contract_column, contract_row,
    find_contractible_column, hadamard, Family, Matrix,
};
pub use permanent::{
    contraction_chain, permanent_contraction, permanent_laplace, permanent_ryser, ContractionStep,
    ContractionTrace, EngineCaps, PermanentEngine,
};
pub use sequences::{cassini_residual, range, term, SequenceKind};
pub use verify::{Suite, SuiteConfig, VerificationReport};
