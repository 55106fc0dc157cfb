//! Cayley hash functions over `SL2(F_p^k)`: Zémor and Tillich-Zémor hashing
//! and the known collision and preimage constructions against them.

pub mod cert;
pub mod error;
pub mod ff;
pub mod msg;
pub mod sl2;
pub mod tz;
pub mod zemor;

pub use cert::{CertKind, CollisionCertificate};
pub use error::{Error, Result};
pub use ff::{DensePoly, FieldElement, FieldSpec};
pub use msg::Message;
pub use sl2::Mat2;
