//! 2x2 matrices over `F_p^k`.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ff::modular::factorize;
use crate::ff::{strip_order, FieldElement, FieldSpec};

/// Iteration cap for the direct order search used when factoring fails.
pub const ORDER_ITERATION_CAP: u64 = 50_000_000;

/// Row-major `[[a, b], [c, d]]`; all entries share one field.
///
/// The determinant is not constrained: Tillich-Zémor generators have
/// determinant `-1` in odd characteristic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Diagonal,
    UpperTriangular,
    LowerTriangular,
    Full,
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let spec = a.spec();
        if ![&b, &c, &d].iter().all(|e| FieldSpec::same(spec, e.spec())) {
            return Err(Error::SpecMismatch);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity(spec: &Arc<FieldSpec>) -> Self {
        Self {
            a: spec.one(),
            b: spec.zero(),
            c: spec.zero(),
            d: spec.one(),
        }
    }

    /// Matrix of prime-field residues.
    pub fn from_u64(spec: &Arc<FieldSpec>, rows: [[u64; 2]; 2]) -> Self {
        Self {
            a: spec.from_u64(rows[0][0]),
            b: spec.from_u64(rows[0][1]),
            c: spec.from_u64(rows[1][0]),
            d: spec.from_u64(rows[1][1]),
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.a.spec()
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn d(&self) -> &FieldElement {
        &self.d
    }

    /// Entry `(i, j)` with zero-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        match (i, j) {
            (0, 0) => &self.a,
            (0, 1) => &self.b,
            (1, 0) => &self.c,
            (1, 1) => &self.d,
            _ => panic!("index ({i}, {j}) out of range"),
        }
    }

    pub fn det(&self) -> FieldElement {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !FieldSpec::same(self.spec(), other.spec()) {
            return Err(Error::SpecMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Square-and-multiply power; `e = 0` gives the identity.
    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = Self::identity(self.spec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn shape(&self) -> Shape {
        match (self.b.is_zero(), self.c.is_zero()) {
            (true, true) => Shape::Diagonal,
            (_, true) => Shape::UpperTriangular,
            (true, _) => Shape::LowerTriangular,
            _ => Shape::Full,
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.shape() == Shape::Diagonal
    }

    /// Multiplicative order in `GL2(F_q)`, `q = p^k`.
    ///
    /// Every element order divides `p(q^2 - 1)`: split semisimple elements
    /// have order dividing `q - 1`, non-split ones `q^2 - 1`, and a Jordan
    /// block `p(q - 1)`. The prime factors of that multiple are stripped one at
    /// a time. If factoring fails, the powers are walked directly up to
    /// [`ORDER_ITERATION_CAP`].
    pub fn order(&self) -> Result<u128> {
        if self.det().is_zero() {
            return Err(Error::InvalidParams("singular matrix has no order".into()));
        }
        match self.group_exponent_factors() {
            Ok((multiple, factors)) => {
                debug_assert!(self.pow(multiple).is_identity());
                Ok(strip_order(multiple, &factors, |t| self.pow(t).is_identity()))
            }
            Err(err) => {
                let mut cur = self.clone();
                for t in 1..=ORDER_ITERATION_CAP {
                    if cur.is_identity() {
                        return Ok(t as u128);
                    }
                    cur = cur.mul_unchecked(self);
                }
                Err(err)
            }
        }
    }

    /// `p(q^2 - 1)` with its prime factorization.
    fn group_exponent_factors(&self) -> Result<(u128, Vec<(u128, u32)>)> {
        let p = self.spec().p();
        let q = self
            .spec()
            .order()
            .filter(|&q| q < u64::MAX as u128)
            .ok_or(Error::FactorizationTooHard(u128::MAX))?;
        let mut factors: Vec<(u128, u32)> = vec![(p as u128, 1)];
        for part in [q - 1, q + 1] {
            for (r, e) in factorize(part as u64)? {
                let r = r as u128;
                match factors.iter_mut().find(|(s, _)| *s == r) {
                    Some(entry) => entry.1 += e,
                    None => factors.push((r, e)),
                }
            }
        }
        factors.sort_unstable();
        Ok((p as u128 * (q * q - 1), factors))
    }

    /// Nested coefficient arrays `[[a, b], [c, d]]`, each entry a
    /// little-endian coefficient vector of length `k`.
    pub fn to_json(&self) -> Value {
        let e = |x: &FieldElement| Value::from(x.coeffs().to_vec());
        Value::Array(vec![
            Value::Array(vec![e(&self.a), e(&self.b)]),
            Value::Array(vec![e(&self.c), e(&self.d)]),
        ])
    }

    /// Inverse of [`Mat2::to_json`]. Bare integers are accepted as entries.
    pub fn from_json(spec: &Arc<FieldSpec>, value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let rows = value.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected two rows"))?;
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cols = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected two columns"))?;
            for cell in cols {
                let coeffs: Vec<u64> = match cell {
                    Value::Number(n) => vec![n.as_u64().ok_or_else(|| bad("negative entry"))?],
                    Value::Array(items) => items
                        .iter()
                        .map(|v| v.as_u64().ok_or_else(|| bad("non-integer coefficient")))
                        .collect::<Result<_>>()?,
                    Value::String(s) => spec.parse_element(s)?.coeffs().to_vec(),
                    _ => return Err(bad("unsupported matrix entry")),
                };
                if coeffs.len() > spec.k() || coeffs.iter().any(|&c| c >= spec.p()) {
                    return Err(bad("coefficient vector out of range"));
                }
                entries.push(spec.from_coeffs(&coeffs));
            }
        }
        let mut it = entries.into_iter();
        let (a, b, c, d) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        Self::new(a, b, c, d)
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;

    /// Panics on mixed fields; see [`Mat2::try_mul`].
    fn mul(self, rhs: &Mat2) -> Mat2 {
        self.try_mul(rhs).expect("matrix operands from different fields")
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{self}")
    }
}

/// `X * Y`.
pub fn mat_mul(x: &Mat2, y: &Mat2) -> Result<Mat2> {
    x.try_mul(y)
}

/// `X^e`.
pub fn mat_pow(x: &Mat2, e: u128) -> Mat2 {
    x.pow(e)
}
