//! Bounded complexes: discs, spheres, cones, cohomology, tilde classes and
//! the monoidal structure.

pub mod bounded;
pub mod category;
pub mod hom;
pub mod lifted;
pub mod model;
pub mod monoidal;

pub use bounded::{BoundedComplex, ComplexMorphism};
pub use category::ComplexCategory;
pub use hom::{hom_complexes, internal_hom, InternalHom};
pub use lifted::{ext_adjunction_check, lift_cotorsion, ChainHomotopy, ExtAdjunctionReport, LiftedApproximation};
pub use model::injective_model;
pub use monoidal::{
    cokernel_is_tensor, is_degreewise_mono, pushout_product, quillen_bifunctor_check, PushoutProduct, QuillenReport,
};
