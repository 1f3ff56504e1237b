//! Geometry over finite upper semilattices: continuity, direct and inverse
//! images, Čech resolutions and the cohomology of twists on the projective line.

pub mod cohomology;
pub mod resolution;
pub mod sections;
pub mod semilattice;
pub mod twists;

pub use cohomology::{cohomology, default_window, CohomologyTable};
pub use resolution::{cech_resolution, Block, CechComplex, ResolutionReport, VertexHomotopy};
pub use sections::{global_sections, Sections};
pub use semilattice::{
    adjunction_witness, direct_image, inverse_image, unit, AdjunctionWitness, ContinuityCertificate, SemilatticeRep,
};
pub use twists::{hom_twists, locally_projective, twist_generation_check, TwistHom};
