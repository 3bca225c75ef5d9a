//! Bar construction over a finite set of étale generators.
//!
//! An étale algebra split by a Galois extension with group `G` is modelled by
//! the finite `G`-set of its geometric points. `HH₀(A) ⊗ R` becomes `R^X`,
//! and `K₀(A^op ⊗ B)` becomes the equivariant integer matrices on
//! `X_B × X_A`, free on the orbits (the factors of `A ⊗ B`).

mod bar;
mod gens;
mod gset;
mod k0;
mod nmam;

pub use bar::{bialgebra_check, build_bar, BarDatum, BialgebraReport, H0Structure, SimplicialReport, MAX_TERM_DIM};
pub use gens::{base_corpus, gaussian_corpus, ClosureWitness, Generator, GeneratorSet, PairOrbits};
pub use gset::GSet;
pub use k0::{coevaluation, compose_k0, counit_contract, hh_action, k0_hom, transfer, K0HomBasis, K0HomClass};
pub use nmam::{nmam_hom, NmamHom, NmamOptions};
