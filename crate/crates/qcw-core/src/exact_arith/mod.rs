//! Exact arithmetic: rationals, univariate Laurent-type rings, matrices over
//! them, Smith normal form and finitely presented modules.

mod fpmodule;
mod matrix;
mod qmat;
mod ring;
mod snf;

pub use fpmodule::{
    base_change, fp_cokernel, fp_hom, fp_image, fp_kernel, fp_submodule, FPModule, HomModule, ModuleStructure,
    PresentedMap,
};
pub use matrix::RingMatrix;
pub use qmat::QMat;
pub use ring::{rat, ratio, MonoidRing, Rational, RingElement, RingMap, RingMapKind, RingSpec, Window};
pub use snf::{kernel_basis, snf, solve_linear, solve_with, SnfResult};
