//! Upper-triangular extensions when `αβ ∈ F_p`.

use rayon::prelude::*;

use super::diag::ShortWitness;
use super::params::{extend, hash, ZemorParams};
use crate::error::{Error, Result};
use crate::ff::modular::{add_mod, batch_inv, mul_mod};
use crate::sl2::Mat2;

/// `T = C · A_0^m · A_1^n`, upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangExtension {
    pub m: u64,
    pub n: u64,
    pub t: Mat2,
}

/// `n = -c / (β(mcα + d))`, which clears the lower-left entry of
/// `C · A_0^m · A_1^n`. Fails when that value is not a prime-field residue.
pub(crate) fn clearing_n(params: &ZemorParams, c: &Mat2, m: u64) -> Result<u64> {
    let den = &c.c().scale(m) * params.alpha() + c.d().clone();
    if den.is_zero() {
        return Err(Error::NoValidM);
    }
    let n = (-c.c()).checked_div(&(params.beta() * &den))?;
    n.to_base().ok_or(Error::ExponentNotInBaseField)
}

/// Triangularizes a product of generators in one step. The default `m` is
/// the least value with `mcα + d ≠ 0`.
pub fn triangularize_ext(params: &ZemorParams, c: &Mat2, m_choice: Option<u64>) -> Result<TriangExtension> {
    if !params.ab_in_base() {
        return Err(Error::AbNotInBaseField);
    }
    let m = match m_choice {
        Some(m) => m % params.p(),
        None if !c.d().is_zero() => 0,
        None if !c.c().is_zero() => 1,
        None => return Err(Error::NoValidM),
    };
    let n = clearing_n(params, c, m)?;
    let t = extend(params, c, m, n);
    if !t.is_upper_triangular() {
        return Err(Error::Verification("triangular extension check failed".into()));
    }
    Ok(TriangExtension { m, n, t })
}

/// Scans `m, s ∈ [1, δ)` for `v = s(msαβ + 1)^-1 mod p > p - δ`; then
/// `H(A_0^r A_1^s) · A_0^m · A_1^n` is upper triangular with `n = p - v` and
/// any `r` (here `r = 1`). Singular denominators are skipped.
///
/// Returns the first hit in `(m, s)` order, independent of the thread count.
pub fn bounded_triang_search(params: &ZemorParams, delta: u64) -> Result<Option<ShortWitness>> {
    let ab = params.ab_base().ok_or(Error::AbNotInBaseField)?;
    let p = params.p();
    if delta < 2 || delta > p {
        return Err(Error::InvalidParams(format!("bound must lie in [2, p], got {delta}")));
    }
    let hit = (1..delta).into_par_iter().find_map_first(|m| {
        let mab = mul_mod(m, ab, p);
        let mut inv: Vec<u64> = (1..delta).map(|s| add_mod(mul_mod(mab, s, p), 1, p)).collect();
        batch_inv(&mut inv, p);
        inv.iter().enumerate().find_map(|(j, &di)| {
            if di == 0 {
                return None;
            }
            let s = j as u64 + 1;
            let v = mul_mod(s, di, p);
            (v > p - delta).then(|| ShortWitness { r: 1, s, m, n: p - v })
        })
    });
    if let Some(w) = hit {
        if !hash(params, &w.message()).is_upper_triangular() {
            return Err(Error::Verification("triangular search witness does not verify".into()));
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FieldElement, FieldSpec};
    use crate::msg::Message;
    use crate::zemor::params::zg_power;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    /// `α` random in the extension, `β = t/α` with `t ∈ F_p^*`.
    fn base_product_params(rng: &mut StdRng, p: u64, k: usize) -> ZemorParams {
        let f = FieldSpec::with_default_modulus(p, k).unwrap();
        loop {
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            let alpha = f.from_coeffs(&coeffs);
            if alpha.is_zero() {
                continue;
            }
            let beta = &f.from_u64(rng.gen_range(1..p)) * &alpha.inv().unwrap();
            return ZemorParams::new(alpha, beta).unwrap();
        }
    }

    #[test]
    fn identity_and_upper_inputs() {
        let f = FieldSpec::prime(7919).unwrap();
        let zp = ZemorParams::from_u64(&f, 5698, 6497).unwrap();
        let id = triangularize_ext(&zp, &Mat2::identity(&f), None).unwrap();
        assert_eq!((id.m, id.n), (0, 0));
        assert!(id.t.is_identity());
        let c = Mat2::from_u64(&f, [[3, 17], [0, 2640]]);
        let ext = triangularize_ext(&zp, &c, Some(5)).unwrap();
        assert_eq!(ext.n, 0);
        assert_eq!(ext.t, &c * &zg_power(&zp, 0, 5));
    }

    #[test]
    fn short_products_over_f49() {
        let mut rng = StdRng::seed_from_u64(3);
        let zp = base_product_params(&mut rng, 7, 2);
        assert!(zp.ab_in_base());
        // every word of length <= 6
        for len in 0..=6u32 {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len).map(|i| (bits >> i & 1) as u8).collect();
                let c = hash(&zp, &Message::from_bits(&w));
                let ext = triangularize_ext(&zp, &c, None).unwrap();
                assert!(ext.t.is_upper_triangular());
            }
        }
    }

    #[test]
    fn closure_of_products_when_ab_in_base() {
        let mut rng = StdRng::seed_from_u64(5);
        for k in [2, 3] {
            for _ in 0..20 {
                let zp = base_product_params(&mut rng, 5, k);
                let len = rng.gen_range(0..=200);
                let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
                let c = hash(&zp, &Message::from_bits(&w));
                let c_over_beta: FieldElement = c.c().checked_div(zp.beta()).unwrap();
                assert!(c_over_beta.is_frobenius_fixed());
                assert!(c.d().is_frobenius_fixed());
            }
        }
    }

    #[test]
    fn full_range_search_finds_witness() {
        let f = FieldSpec::prime(11).unwrap();
        for (a, b) in [(1, 1), (4, 9)] {
            let zp = ZemorParams::from_u64(&f, a, b).unwrap();
            let w = bounded_triang_search(&zp, 11).unwrap().expect("exhaustive scan hits");
            assert!(hash(&zp, &w.message()).is_upper_triangular());
        }
    }

    #[test]
    fn requires_base_product() {
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        let zp = ZemorParams::new(f.generator(), f.one()).unwrap();
        assert_eq!(
            triangularize_ext(&zp, &Mat2::identity(&f), None).unwrap_err(),
            Error::AbNotInBaseField
        );
        assert_eq!(bounded_triang_search(&zp, 3).unwrap_err(), Error::AbNotInBaseField);
    }
}
