//! Finite posets, ring diagrams and modules over them.

pub mod builtins;
mod hom;
mod module;
mod ops;
mod poset;
mod ringrep;

pub use builtins::{
    chain_rep, field_module, p1_rep, p1_twist, p1_twist_over, p2_ringrep, projective_generator, qmat_to_ring,
    ring_to_qmat, simple,
};
pub use hom::{hom_from_generator, hom_space, GeneratorHom};
pub use module::{DiagModule, DiagMorphism, QcReport, ValidationReport, Violation};
pub use ops::{cokernel, direct_sum, image, kernel, tensor, tensor_morphisms, DirectSum};
pub use poset::FinitePoset;
pub use ringrep::RingRep;
