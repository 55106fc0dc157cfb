//! Generalized Tillich-Zémor hashing, the `f_n` sequence, orders of `Y`
//! and weak field moduli.

mod fseq;
mod hash;
mod period;

pub use fseq::{f_closed, f_iter, f_iter_at, FSeqCursor, FTerm};
pub use hash::{tz_hash, y_matrix, y_power, TzParams};
pub use period::{
    element_period, empty_word_check, empty_word_diagnostic, malicious_generate, period_bound,
    power_collision_certificate, power_collision_search, sequence_period, symbolic_gcd_probe, EmptyWordDiagnostic,
    WeakField, SYMBOLIC_DEGREE_CAP,
};
