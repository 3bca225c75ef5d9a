//! Exact scalars, dense matrices and bounded chain complexes of free modules.

mod complex;
mod matrix;
pub(crate) mod ring;
pub mod sparse;

pub use complex::{homology, quotient_by_acyclics, tensor_complex, ChainComplex, HomologyReport};
pub use matrix::{Matrix, SmithForm, MAX_COLS};
pub use ring::{CoeffRing, Scalar};
