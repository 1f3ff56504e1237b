//! Computational homological algebra at desk scale: quasi-coherent modules
//! over poset ring diagrams, cotorsion pairs, Hovey triples, complexes and
//! Cech resolutions, all over exact rational arithmetic.

pub mod cech;
pub mod complexes;
pub mod diagram;
pub mod error;
pub mod exact_arith;
pub mod homotopy_algebra;
pub mod model_structures;

pub use error::{Error, Result};
