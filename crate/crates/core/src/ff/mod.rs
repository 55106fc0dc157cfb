//! Exact arithmetic in `F_p`, `F_p^k` and `F_p[x]`.

mod field;
pub mod modular;
mod order;
mod poly;

pub use field::{format_poly, ArithOp, FieldElement, FieldSpec};
pub use order::{discrete_log, mult_order, primitive_element, strip_order, DLOG_MAX_ORDER};
pub use poly::{irreducibles_of_degree, DensePoly};

use crate::error::Result;

/// `a op b` with spec and zero-divisor checks.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.arith(b, op)
}
