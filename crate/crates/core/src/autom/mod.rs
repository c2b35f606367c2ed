//! Automorphisms of the free pro-p group and of its Magnus algebra: the
//! Andreadakis-Johnson filtration, p-Johnson homomorphisms `tau_m`, the
//! algebra endomorphism `kappa^theta` and p-Johnson maps `tau^theta_m`.

mod algebra;
mod endo;
mod iterate;
mod johnson;
mod linear;

pub use algebra::{
    algebra_endo_apply, algebra_endo_inverse, algebra_endo_of, hom_to_ia, ia_to_hom, AlgebraEndo,
    HomTable,
};
pub use endo::{apply_endo, compose, power_endo, GroupEndo};
pub use iterate::{Iterate, ITERATE_WORD_LIMIT};
pub use johnson::{
    aj_depth, induced_matrix, is_automorphism, johnson_hom, johnson_map, johnson_map_of_kappa,
    kappa_theta, AutDepth, JohnsonTable,
};
pub use linear::LinearMapH;

/// Default bound on word length (`sum |e|`) for compositions and powers.
pub const DEFAULT_WORD_LIMIT: usize = 100_000;
