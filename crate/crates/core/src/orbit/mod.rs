//! Graded additive categories with a ⊗-invertible twist, their orbit
//! categories and the projection functor.
//!
//! A [`GradedCat`] is presented by basic labels `x`, each appearing in every
//! twist `x⟨n⟩`, with `Hom(x⟨m⟩, y⟨n⟩) = hom(x, y)(n - m)` a free module of
//! the tabulated rank. Objects of the category are finite direct sums of
//! basic objects; morphisms are block matrices of coordinate vectors.

mod category;
mod corpus;
mod hom;
mod twist;

pub use category::{BasicObj, CMor, CompEntry, GradedCat, GradedCatSpec, HomEntry, Obj};
pub use corpus::{pure_grade, two_object};
pub use hom::{
    associativity_defects, orbit_compose, orbit_hom, project, twist_naturality_defects, twist_projection_iso,
    OrbitMor, TwistIso,
};
pub use twist::{TwistAction, TwistData};
