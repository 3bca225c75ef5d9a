//! Exact computational kernels for desk-scale noncommutative Artin motives.
//!
//! Everything here is `no_std` + `alloc` and uses exact scalars only
//! (ℚ, F_p, ℤ). IO, file formats and the command line live in the `nmix`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebras;
pub mod coeffs;
pub mod cubes;
pub mod error;
pub mod hopf;
pub mod motivic_bar;
pub mod orbit;

pub use error::{Error, Result};
