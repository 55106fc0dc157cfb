//! The γ criterion for `αβ ∉ F_p` and the two-step extension system.

use rayon::prelude::*;

use super::params::{extend, ZemorParams};
use super::triang::{clearing_n, TriangExtension};
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::sl2::Mat2;

/// Largest `p` accepted by [`double_ext_solve`].
pub const DOUBLE_EXT_MAX_P: u64 = 100_000;

/// `γ = d((dβ)^{p-1} - c^{p-1}) / (α c^p (1 - (αβ)^{p-1}))`.
///
/// `C · A_0^m · A_1^n` can be made upper triangular with `m, n ∈ F_p` exactly
/// when `γ^p = γ` and `γcα + d ≠ 0`, and then `m = γ`. (For `d = 0` the value
/// is `γ = 0` although no extension exists.)
pub fn gamma_of(params: &ZemorParams, c: &Mat2) -> Result<FieldElement> {
    if params.ab_in_base() {
        return Err(Error::AbInBaseField);
    }
    let (cc, d) = (c.c(), c.d());
    if cc.is_zero() {
        return Err(Error::ZeroC);
    }
    let pm1 = params.p() as u128 - 1;
    let (alpha, beta) = (params.alpha(), params.beta());
    let num = d * &((d * beta).pow(pm1) - cc.pow(pm1));
    let den = &(alpha * &cc.pow(pm1 + 1)) * &(params.spec().one() - (alpha * beta).pow(pm1));
    num.checked_div(&den)
}

/// `γ'` of `C' = C · A_0^m · A_1^n` through `γ' = (c/c')^{p+1}(γ - m)`.
pub fn gamma_update(params: &ZemorParams, c: &Mat2, m: u64, n: u64) -> Result<FieldElement> {
    let gamma = gamma_of(params, c)?;
    let c_new = extend(params, c, m, n).c().clone();
    if c_new.is_zero() {
        return Err(Error::ZeroCPrime);
    }
    let ratio = c.c().checked_div(&c_new)?;
    Ok(&ratio.pow(params.p() as u128 + 1) * &(gamma - params.spec().from_u64(m)))
}

/// One-step triangularization driven by γ; `None` when no `(m, n) ∈ F_p²`
/// works.
pub fn triangularize_by_gamma(params: &ZemorParams, c: &Mat2) -> Result<Option<TriangExtension>> {
    let Some(m) = gamma_of(params, c)?.to_base() else {
        return Ok(None);
    };
    let n = match clearing_n(params, c, m) {
        Ok(n) => n,
        Err(Error::NoValidM) => return Ok(None),
        Err(e) => return Err(e),
    };
    let t = extend(params, c, m, n);
    if !t.is_upper_triangular() {
        return Err(Error::Verification("γ extension is not upper triangular".into()));
    }
    Ok(Some(TriangExtension { m, n, t }))
}

/// Coefficients of `q3·x²y + q2·xy + q1·y + q0 = 0`, whose solutions
/// `(x, y) ∈ F_p²` are the first extensions `C · A_0^x · A_1^y` after which a
/// second single extension triangularizes. With `P = p²`:
///
/// - `q3 = c^P αβ ((αβ)^{P-1} - 1)`
/// - `q2 = c^P γ^p αβ - c^{P-1} dβ - (cαβ)^P γ + (dβ)^P`
/// - `q1 = c^{P-1} γ^p dβ - γ (dβ)^P`
/// - `q0 = c^P (γ^p - γ)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quartic {
    pub q3: FieldElement,
    pub q2: FieldElement,
    pub q1: FieldElement,
    pub q0: FieldElement,
}

impl Quartic {
    pub fn eval(&self, x: u64, y: u64) -> FieldElement {
        let p = self.q0.spec().p() as u128;
        let (x, y) = (x as u128 % p, y as u128 % p);
        let xy = (x * y % p) as u64;
        let x2y = (x * x % p * y % p) as u64;
        self.q3.scale(x2y) + self.q2.scale(xy) + self.q1.scale(y as u64) + self.q0.clone()
    }

    /// `[q3, q2, q1, q0]`.
    pub fn as_array(&self) -> [&FieldElement; 4] {
        [&self.q3, &self.q2, &self.q1, &self.q0]
    }
}

pub fn quartic_coefficients(params: &ZemorParams, c: &Mat2) -> Result<Quartic> {
    let gamma = gamma_of(params, c)?;
    let p = params.p() as u128;
    let big = p * p;
    let (cc, d) = (c.c(), c.d());
    let (alpha, beta) = (params.alpha(), params.beta());
    let ab = alpha * beta;
    let db = d * beta;
    let c_big = cc.pow(big);
    let c_big_m1 = cc.pow(big - 1);
    let gamma_p = gamma.frobenius(1);
    let db_big = db.pow(big);
    let q3 = &(&c_big * &ab) * &(ab.pow(big - 1) - params.spec().one());
    let q2 = &(&c_big * &gamma_p) * &ab - &c_big_m1 * &db - &(cc * &ab).pow(big) * &gamma + db_big.clone();
    let q1 = &(&c_big_m1 * &gamma_p) * &db - &gamma * &db_big;
    let q0 = &c_big * &(gamma_p - gamma);
    Ok(Quartic { q3, q2, q1, q0 })
}

/// Two consecutive extensions `C · A_0^{m1} A_1^{n1} · A_0^{m2} A_1^{n2}`
/// ending upper triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleExtension {
    pub m1: u64,
    pub n1: u64,
    pub m2: u64,
    pub n2: u64,
    pub t: Mat2,
}

/// Solves the two-step extension system over `F_p × F_p`.
///
/// For each `x` the system is linear in `y`: `y·L(x) + q0 = 0` with
/// `L(x) = q3x² + q2x + q1`, so one division decides every pair `(x, y)`
/// except when `L(x) = q0 = 0`, where all `y` are tried. Each candidate is
/// completed by the γ step and checked by multiplication. If a single
/// extension already works it is returned with `m2 = n2 = 0`. `None` means no
/// pair in `F_p²` works.
pub fn double_ext_solve(params: &ZemorParams, c: &Mat2) -> Result<Option<DoubleExtension>> {
    if params.p() > DOUBLE_EXT_MAX_P {
        return Err(Error::InvalidParams(format!(
            "double extension search is limited to p <= {DOUBLE_EXT_MAX_P}"
        )));
    }
    if let Some(single) = triangularize_by_gamma(params, c)? {
        return Ok(Some(DoubleExtension { m1: single.m, n1: single.n, m2: 0, n2: 0, t: single.t }));
    }
    let q = quartic_coefficients(params, c)?;
    let p = params.p();
    let found = (0..p).into_par_iter().find_map_first(|x| {
        let lin = q.q3.scale(x).scale(x) + q.q2.scale(x) + q.q1.clone();
        if lin.is_zero() {
            return if q.q0.is_zero() { (0..p).find_map(|y| complete(params, c, x, y)) } else { None };
        }
        let y = (-&q.q0).checked_div(&lin).ok()?.to_base()?;
        complete(params, c, x, y)
    });
    Ok(found)
}

/// Second step after `C · A_0^x · A_1^y`.
fn complete(params: &ZemorParams, c: &Mat2, x: u64, y: u64) -> Option<DoubleExtension> {
    let c1 = extend(params, c, x, y);
    let (m2, n2, t) = if c1.is_upper_triangular() {
        (0, 0, c1)
    } else {
        let step = triangularize_by_gamma(params, &c1).ok()??;
        (step.m, step.n, step.t)
    };
    t.is_upper_triangular().then_some(DoubleExtension { m1: x, n1: y, m2, n2, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::msg::Message;
    use crate::zemor::params::hash;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_element(rng: &mut StdRng, f: &std::sync::Arc<FieldSpec>) -> FieldElement {
        let coeffs: Vec<u64> = (0..f.k()).map(|_| rng.gen_range(0..f.p())).collect();
        f.from_coeffs(&coeffs)
    }

    fn random_params(rng: &mut StdRng, f: &std::sync::Arc<FieldSpec>) -> ZemorParams {
        loop {
            let (a, b) = (random_element(rng, f), random_element(rng, f));
            if let Ok(zp) = ZemorParams::new(a, b) {
                if !zp.ab_in_base() {
                    return zp;
                }
            }
        }
    }

    fn random_product(rng: &mut StdRng, zp: &ZemorParams, max_len: usize) -> Mat2 {
        let len = rng.gen_range(1..=max_len);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        hash(zp, &Message::from_bits(&w))
    }

    /// Direct check: is there `(m, n) ∈ F_p²` making `C A_0^m A_1^n` upper
    /// triangular?
    fn one_step_possible(zp: &ZemorParams, c: &Mat2) -> bool {
        let p = zp.p();
        (0..p).any(|m| (0..p).any(|n| extend(zp, c, m, n).is_upper_triangular()))
    }

    #[test]
    fn gamma_criterion_matches_brute_force() {
        let mut rng = StdRng::seed_from_u64(1);
        let f = FieldSpec::with_default_modulus(3, 3).unwrap();
        for _ in 0..60 {
            let zp = random_params(&mut rng, &f);
            let c = random_product(&mut rng, &zp, 12);
            if c.c().is_zero() {
                continue;
            }
            let gamma = gamma_of(&zp, &c).unwrap();
            let ext = triangularize_by_gamma(&zp, &c).unwrap();
            assert_eq!(ext.is_some(), one_step_possible(&zp, &c));
            let den = &(&gamma * c.c()) * zp.alpha() + c.d().clone();
            assert_eq!(ext.is_some(), gamma.is_frobenius_fixed() && !den.is_zero());
            if let Some(ext) = ext {
                assert_eq!(Some(ext.m), gamma.to_base());
            }
        }
    }

    #[test]
    fn update_law_trivial_cases() {
        let mut rng = StdRng::seed_from_u64(2);
        let f = FieldSpec::with_default_modulus(3, 3).unwrap();
        let zp = random_params(&mut rng, &f);
        let c = loop {
            let c = random_product(&mut rng, &zp, 10);
            if !c.c().is_zero() {
                break c;
            }
        };
        assert_eq!(gamma_update(&zp, &c, 0, 0).unwrap(), gamma_of(&zp, &c).unwrap());
    }

    #[test]
    fn quartic_roots_are_exactly_two_step_extensions() {
        let mut rng = StdRng::seed_from_u64(4);
        let f = FieldSpec::with_default_modulus(3, 3).unwrap();
        let mut checked = 0;
        while checked < 30 {
            let zp = random_params(&mut rng, &f);
            let c = random_product(&mut rng, &zp, 10);
            if c.c().is_zero() || gamma_of(&zp, &c).unwrap().is_frobenius_fixed() {
                continue;
            }
            let q = quartic_coefficients(&zp, &c).unwrap();
            for x in 0..3 {
                for y in 0..3 {
                    let c1 = extend(&zp, &c, x, y);
                    let second = c1.c().is_zero() || gamma_of(&zp, &c1).unwrap().is_frobenius_fixed();
                    assert_eq!(q.eval(x, y).is_zero(), second, "x={x} y={y}");
                }
            }
            let solved = double_ext_solve(&zp, &c).unwrap();
            let brute = (0..3).any(|x| (0..3).any(|y| {
                let c1 = extend(&zp, &c, x, y);
                c1.is_upper_triangular() || one_step_possible(&zp, &c1)
            }));
            assert_eq!(solved.is_some(), brute);
            if let Some(sol) = solved {
                assert!(q.eval(sol.m1, sol.n1).is_zero());
            }
            checked += 1;
        }
    }

    #[test]
    fn degenerate_branch() {
        let mut rng = StdRng::seed_from_u64(6);
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        let zp = random_params(&mut rng, &f);
        let c = loop {
            let c = random_product(&mut rng, &zp, 10);
            if !c.c().is_zero() {
                break c;
            }
        };
        let sol = double_ext_solve(&zp, &c).unwrap().unwrap();
        assert_eq!((sol.m2, sol.n2), (0, 0));
        assert_eq!(Some(sol.m1), gamma_of(&zp, &c).unwrap().to_base());
        assert!(sol.t.is_upper_triangular());
    }

    #[test]
    fn errors() {
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        let zp = ZemorParams::new(f.one(), f.one()).unwrap();
        assert_eq!(gamma_of(&zp, &Mat2::identity(&f)).unwrap_err(), Error::AbInBaseField);
        let zp = ZemorParams::new(f.generator(), f.one()).unwrap();
        assert_eq!(gamma_of(&zp, &Mat2::identity(&f)).unwrap_err(), Error::ZeroC);
    }
}
