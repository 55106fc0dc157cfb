//! Generalized Zémor generators and hashing.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::msg::Message;
use crate::sl2::Mat2;

/// `A_0 = (1 α; 0 1)` and `A_1 = (1 0; β 1)` over one field.
#[derive(Clone, Debug)]
pub struct ZemorParams {
    alpha: FieldElement,
    beta: FieldElement,
    ab_in_base: bool,
}

impl ZemorParams {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        if !FieldSpec::same(alpha.spec(), beta.spec()) {
            return Err(Error::SpecMismatch);
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidParams("alpha and beta must be nonzero".into()));
        }
        let ab_in_base = (&alpha * &beta).is_frobenius_fixed();
        Ok(Self { alpha, beta, ab_in_base })
    }

    pub fn from_u64(spec: &Arc<FieldSpec>, alpha: u64, beta: u64) -> Result<Self> {
        Self::new(spec.from_u64(alpha), spec.from_u64(beta))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.alpha.spec()
    }

    pub fn p(&self) -> u64 {
        self.spec().p()
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    /// Whether `αβ` lies in `F_p`.
    pub fn ab_in_base(&self) -> bool {
        self.ab_in_base
    }

    /// `αβ` as a prime-field residue, when it is one.
    pub fn ab_base(&self) -> Option<u64> {
        (&self.alpha * &self.beta).to_base()
    }

    pub fn generator(&self, bit: u8) -> Mat2 {
        zg_power(self, bit, 1)
    }
}

/// `A_bit^e` in closed form; `e` is reduced mod `p`.
pub fn zg_power(params: &ZemorParams, bit: u8, e: u128) -> Mat2 {
    let spec = params.spec();
    let e = (e % params.p() as u128) as u64;
    let (one, zero) = (spec.one(), spec.zero());
    let res = match bit {
        0 => Mat2::new(one.clone(), params.alpha.scale(e), zero, one),
        1 => Mat2::new(one.clone(), zero, params.beta.scale(e), one),
        _ => panic!("bit must be 0 or 1"),
    };
    res.expect("entries share the parameter field")
}

/// `H(m)`, one closed-form power per run.
pub fn hash(params: &ZemorParams, m: &Message) -> Mat2 {
    let mut acc = Mat2::identity(params.spec());
    for &(bit, len) in m.runs() {
        acc = &acc * &zg_power(params, bit, len as u128);
    }
    acc
}

/// `C · A_0^m · A_1^n`.
pub fn extend(params: &ZemorParams, c: &Mat2, m: u64, n: u64) -> Mat2 {
    &(c * &zg_power(params, 0, m as u128)) * &zg_power(params, 1, n as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msg::parse_rle;

    fn example_params() -> ZemorParams {
        ZemorParams::from_u64(&FieldSpec::prime(7919).unwrap(), 5698, 6497).unwrap()
    }

    #[test]
    fn generator_powers() {
        let zp = example_params();
        assert!(zg_power(&zp, 0, 0).is_identity());
        assert!(zg_power(&zp, 0, 7919).is_identity());
        assert!(zg_power(&zp, 1, 7919).is_identity());
        let expected = Mat2::from_u64(zp.spec(), [[1, 0], [30 * 6497 % 7919, 1]]);
        assert_eq!(zg_power(&zp, 1, 30), expected);
    }

    #[test]
    fn powers_match_repeated_products() {
        let zp = example_params();
        let a0 = zp.generator(0);
        let mut acc = Mat2::identity(zp.spec());
        for m in 0..10_000u64 {
            assert_eq!(acc, Mat2::from_u64(zp.spec(), [[1, m * 5698 % 7919], [0, 1]]));
            acc = &acc * &a0;
        }
    }

    #[test]
    fn hash_basics() {
        let zp = example_params();
        assert!(hash(&zp, &Message::empty()).is_identity());
        assert_eq!(hash(&zp, &parse_rle("0").unwrap()), zp.generator(0));
        assert_eq!(hash(&zp, &parse_rle("01").unwrap()), &zp.generator(0) * &zp.generator(1));
    }

    #[test]
    fn rejects_zero_parameters() {
        let f = FieldSpec::prime(7).unwrap();
        assert!(ZemorParams::from_u64(&f, 0, 1).is_err());
        assert!(ZemorParams::from_u64(&f, 1, 7).is_err());
    }
}
