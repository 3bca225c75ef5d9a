//! Finite-dimensional Hopf algebras: function algebras on finite groups,
//! Galois data and double cosets, Hopf short exact sequences, Laurent
//! extensions and profinite towers.

mod alg;
mod galois;
mod group;
mod laurent;
mod map;

pub use alg::{
    antipode_is_involutive, function_hopf, group_algebra, mutation_suite, verify_hopf, HopfAlg, HopfAxiom,
    HopfReport, Mutation,
};
pub use galois::{
    direct_tensor_degrees, double_cosets, etale_tensor_decompose, galois_tensor_degrees, DecompositionRoute,
    GaloisDatum, Subgroup, TensorDecomposition,
};
pub use group::{FinGroup, GroupHom};
pub use laurent::{
    evaluate_t, laurent_extension, laurent_quotient_check, unit_counit_check, EvalConvention, LaurentElem, QuotientCheck,
    LaurentHopf,
};
pub use map::{function_ses, ses_check, HopfMap, ProfiniteTower, SesReport};
