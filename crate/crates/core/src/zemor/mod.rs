//! Generalized Zémor hashing over `F_p^k` and collision constructions.

mod combine;
mod diag;
mod euclid;
mod gamma;
mod params;
mod triang;

pub use combine::{combine_to_identity, Combination, RELATION_SEARCH_MAX};
pub use diag::{bounded_diag_search, diag_collision, diagonalize_ext, DiagCollision, DiagExtension, ShortWitness};
pub use euclid::{euclid_factor, EUCLID_LIFT_ATTEMPTS};
pub use gamma::{
    double_ext_solve, gamma_of, gamma_update, quartic_coefficients, triangularize_by_gamma, DoubleExtension,
    Quartic, DOUBLE_EXT_MAX_P,
};
pub use params::{extend, hash, zg_power, ZemorParams};
pub use triang::{bounded_triang_search, triangularize_ext, TriangExtension};
