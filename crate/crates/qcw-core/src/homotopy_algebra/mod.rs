//! The homological engine over finite-dimensional representations: Ext,
//! lifting problems, the small object argument and cotorsion pairs.

pub mod cells;
pub mod cotorsion;
pub mod ext;
pub mod lifting;
pub mod quiver;

pub use cells::{
    find_filtration, generating_inflations, generating_inflations_with, small_object_factorize, CellFactorization,
    CellStep, Filtration, GeneratingInflations, GeneratingMember, ICellRecord, DEFAULT_BUDGET,
};
pub use cotorsion::{
    approximation_sequences, eklof_check, hereditary_witness, horseshoe, is_cotorsion_pair, is_hereditary,
    left_approximation, right_approximation, Approximations, CotorsionPair, Horseshoe, Membership, ObjectClass,
    PairReport,
};
pub use ext::{chain_euler_form, ext1, ext1_classes, extn, presentation, projective_cover_map, syzygy, Conflation};
pub use lifting::{extend_along_mono, has_rlp, lift_through_epi, lifting, rlp_witness, square_space, SquareSpace};
pub use quiver::{
    cokernel, find_isomorphism, find_mono, find_retract, generic_combination, hom_basis, hom_dim, image, injective_sum,
    is_isomorphic, kernel, projective_sum, pullback, pushout, sum_maps, BoundQuiver, ComplexLayout, Mor, Rep,
};
