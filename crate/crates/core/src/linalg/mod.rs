//! Exact linear algebra over the rationals and a modular engine over word-sized
//! primes, with rational reconstruction tying the two together.

mod exact;
pub mod field;
mod modular;
mod reconstruct;

pub use exact::ExactMatrix;
pub use field::{primes, Field, PrimeField, Rationals, PRIME_A, PRIME_B};
pub use modular::ModMatrix;
pub use reconstruct::{
    certified_nullity, exact_kernel_vector, normalize_integer_vector, primitive_part,
    rational_reconstruct, reduce_mod, CrtVector,
};

pub(crate) use exact::bareiss;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("rational reconstruction failed; more primes are needed")]
    Reconstruction,
}
