//! Generalized Tillich-Zémor hashing with `A_0 = Y(α)`, `A_1 = Y(β)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::msg::Message;
use crate::sl2::Mat2;

#[derive(Clone, Debug)]
pub struct TzParams {
    alpha: FieldElement,
    beta: FieldElement,
}

impl TzParams {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        if !FieldSpec::same(alpha.spec(), beta.spec()) {
            return Err(Error::SpecMismatch);
        }
        Ok(Self { alpha, beta })
    }

    /// `α = x`, `β = x + 1`.
    pub fn with_default_points(spec: &Arc<FieldSpec>) -> Self {
        let x = spec.generator();
        let beta = &x + &spec.one();
        Self { alpha: x, beta }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.alpha.spec()
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn point(&self, bit: u8) -> &FieldElement {
        match bit {
            0 => &self.alpha,
            1 => &self.beta,
            _ => panic!("bit must be 0 or 1"),
        }
    }
}

/// `Y(point) = (point 1; 1 0)`.
pub fn y_matrix(point: &FieldElement) -> Mat2 {
    let spec = point.spec();
    Mat2::new(point.clone(), spec.one(), spec.one(), spec.zero()).expect("one field")
}

/// `Y(point)^n = (f_{n+1} f_n; f_n f_{n-1})` evaluated at `point`.
pub fn y_power(point: &FieldElement, n: u128) -> Mat2 {
    y_matrix(point).pow(n)
}

/// Product of `Y(α)` per 0-bit and `Y(β)` per 1-bit, one power per run.
pub fn tz_hash(params: &TzParams, m: &Message) -> Mat2 {
    let mut acc = Mat2::identity(params.spec());
    for &(bit, len) in m.runs() {
        acc = &acc * &y_power(params.point(bit), len as u128);
    }
    acc
}
