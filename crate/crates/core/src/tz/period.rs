//! Orders of `Y`, power collisions, and weak field moduli.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::fseq::FSeqCursor;
use super::hash::{tz_hash, y_matrix, y_power, TzParams};
use crate::cert::{CertKind, CollisionCertificate};
use crate::error::{Error, Result};
use crate::ff::{irreducibles_of_degree, DensePoly, FieldElement, FieldSpec};
use crate::msg::Message;
use crate::sl2::Mat2;

/// Largest `N` accepted by [`symbolic_gcd_probe`].
pub const SYMBOLIC_DEGREE_CAP: u64 = 2000;

/// `(p^{2d} - p^d)(p^{2d} - 1)/(p^d - 1) = p^d (p^{2d} - 1)`, a multiple of
/// the order of `Y` over `F_{p^d}`; `None` on overflow.
pub fn period_bound(p: u64, d: usize) -> Option<u128> {
    let q = (p as u128).checked_pow(d as u32)?;
    q.checked_mul(q.checked_mul(q)?.checked_sub(1)?)
}

/// Least `N ≥ 1` with `Y(point)^N = I`.
pub fn element_period(point: &FieldElement) -> Result<u128> {
    let spec = point.spec();
    let n = y_matrix(point).order()?;
    if let Some(bound) = period_bound(spec.p(), spec.k()) {
        if bound % n != 0 {
            return Err(Error::Verification(format!("period {n} does not divide {bound}")));
        }
    }
    Ok(n)
}

/// Period of `f_n(point) mod q`, i.e. the order of `Y = (point 1; 1 0)` over
/// `F_p[x]/q`.
pub fn sequence_period(p: u64, q: &DensePoly, point: &DensePoly) -> Result<u128> {
    let spec = FieldSpec::new(p, q.clone())?;
    element_period(&spec.from_poly(point))
}

fn fingerprint(m: &Mat2) -> u64 {
    let mut h = DefaultHasher::new();
    m.hash(&mut h);
    h.finish()
}

/// Least `(m, n)` in lexicographic order with `1 ≤ m, n ≤ bound` and
/// `Y(β)^m = Y(α)^n`, so that `1^m` and `0^n` collide. The orbits are walked
/// only up to the generator orders, past which they repeat.
pub fn power_collision_search(params: &TzParams, bound: u64) -> Result<Option<(u64, u64)>> {
    let cap = |point: &FieldElement| -> u64 {
        match y_matrix(point).order() {
            Ok(n) => bound.min(u64::try_from(n).unwrap_or(u64::MAX)),
            Err(_) => bound,
        }
    };
    let (a0, a1) = (y_matrix(params.alpha()), y_matrix(params.beta()));
    let mut orbit: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut cur = Mat2::identity(params.spec());
    for n in 1..=cap(params.alpha()) {
        cur = &cur * &a0;
        orbit.entry(fingerprint(&cur)).or_default().push(n);
    }
    let mut cur = Mat2::identity(params.spec());
    for m in 1..=cap(params.beta()) {
        cur = &cur * &a1;
        if let Some(ns) = orbit.get(&fingerprint(&cur)) {
            if let Some(&n) = ns.iter().find(|&&n| y_power(params.alpha(), n as u128) == cur) {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Certificate that `0^n` and `1^m` collide.
pub fn power_collision_certificate(params: &TzParams, m: u64, n: u64) -> Result<CollisionCertificate> {
    CollisionCertificate::new(
        CertKind::PowerRelation,
        params.alpha().clone(),
        params.beta().clone(),
        Message::run(0, n),
        Message::run(1, m),
    )
}

/// Entrywise conditions for `Y(α)^m Y(β)^n = I`, written with
/// `F_j = f_j(α)` and `G_j = f_j(β)`:
///
/// - `F_{m+1}G_{n+1} + F_m G_n = 1`
/// - `F_{m+1}G_n + F_m G_{n-1} = 0`
/// - `F_m G_{n+1} + F_{m-1}G_n = 0`
/// - `F_m G_n + F_{m-1}G_{n-1} = 1`
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct EmptyWordDiagnostic {
    pub holds: bool,
    pub relations: [bool; 4],
}

/// Whether `0^m 1^n` hashes to the identity.
pub fn empty_word_check(params: &TzParams, m: u64, n: u64) -> bool {
    let mut w = Message::run(0, m);
    w.push_run(1, n);
    tz_hash(params, &w).is_identity()
}

/// [`empty_word_check`] plus the four relations, evaluated from the
/// sequence rather than from matrix powers.
pub fn empty_word_diagnostic(params: &TzParams, m: u64, n: u64) -> EmptyWordDiagnostic {
    let triple = |point: &FieldElement, k: u64| {
        let mut c = FSeqCursor::evaluated(point);
        c.advance_to(k);
        let (fk, fkm1) = (c.current().clone(), c.previous().clone());
        (&(point * &fk) + &fkm1, fk, fkm1)
    };
    let (f1, f0, fm1) = triple(params.alpha(), m);
    let (g1, g0, gm1) = triple(params.beta(), n);
    let relations = [
        (&f1 * &g1 + &f0 * &g0).is_one(),
        (&f1 * &g0 + &f0 * &gm1).is_zero(),
        (&f0 * &g1 + &fm1 * &g0).is_zero(),
        (&f0 * &g0 + &fm1 * &gm1).is_one(),
    ];
    EmptyWordDiagnostic { holds: empty_word_check(params, m, n), relations }
}

/// A modulus under which `Y(x)` has small order `n`.
#[derive(Debug, Clone)]
pub struct WeakField {
    pub q: DensePoly,
    pub n: u128,
    pub group_order_bound: Option<u128>,
    /// `0^n` against the empty word under the default points.
    pub certificate: CollisionCertificate,
}

impl WeakField {
    pub fn to_json(&self) -> Value {
        json!({
            "q_coeffs": self.q.coeffs(),
            "d": self.q.degree(),
            "N": self.n as u64,
            "group_order_bound": self.group_order_bound.map(|b| b.to_string()),
            "certificate": self.certificate.to_json(),
        })
    }
}

/// Scans the first `scan_limit` monic irreducibles of degree `d` and keeps
/// those where `Y(x)` has order at most `order_bound`, sorted by order and
/// then by scan position.
pub fn malicious_generate(p: u64, d: usize, order_bound: u128, scan_limit: usize) -> Result<Vec<WeakField>> {
    let candidates = irreducibles_of_degree(p, d, scan_limit);
    let mut found = candidates
        .into_par_iter()
        .enumerate()
        .map(|(idx, q)| -> Result<Option<(usize, WeakField)>> {
            let spec = FieldSpec::new(p, q.clone())?;
            let n = element_period(&spec.generator())?;
            if n > order_bound {
                return Ok(None);
            }
            let len = u64::try_from(n).map_err(|_| Error::InvalidParams("order too large".into()))?;
            let tp = TzParams::with_default_points(&spec);
            let certificate = CollisionCertificate::new(
                CertKind::PowerRelation,
                tp.alpha().clone(),
                tp.beta().clone(),
                Message::run(0, len),
                Message::empty(),
            )?;
            Ok(Some((idx, WeakField { q, n, group_order_bound: period_bound(p, d), certificate })))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<Vec<_>>>()?;
    found.sort_by_key(|(idx, w)| (w.n, *idx));
    Ok(found.into_iter().map(|(_, w)| w).collect())
}

/// `gcd(f_{N+1} - 1, f_N)` over `F_p`: its irreducible factors are the
/// moduli under which `Y(x)^N = I`.
pub fn symbolic_gcd_probe(p: u64, n: u64) -> Result<DensePoly> {
    if n > SYMBOLIC_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded(n));
    }
    let mut cur = FSeqCursor::symbolic(p, None);
    cur.advance_to(n);
    let fn_ = cur.current().clone();
    cur.advance();
    let fnp1_minus_1 = cur.current().sub(&DensePoly::one(p));
    Ok(fnp1_minus_1.gcd(&fn_))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_period() {
        assert_eq!(sequence_period(3, &DensePoly::x(3), &DensePoly::x(3)).unwrap(), 2);
    }

    #[test]
    fn equal_points_collide_immediately() {
        let f = FieldSpec::with_default_modulus(5, 2).unwrap();
        let tp = TzParams::new(f.generator(), f.generator()).unwrap();
        assert_eq!(power_collision_search(&tp, 10).unwrap(), Some((1, 1)));
    }

    #[test]
    fn orbit_join_matches_brute_force() {
        let f = FieldSpec::new(3, DensePoly::new(3, vec![1, 0, 1])).unwrap();
        let tp = TzParams::with_default_points(&f);
        let a0: Vec<Mat2> = (0..=200).map(|n| y_power(tp.alpha(), n)).collect();
        let a1: Vec<Mat2> = (0..=200).map(|m| y_power(tp.beta(), m)).collect();
        let brute = (1..=200u64)
            .flat_map(|m| (1..=200u64).map(move |n| (m, n)))
            .find(|&(m, n)| a1[m as usize] == a0[n as usize]);
        assert_eq!(power_collision_search(&tp, 200).unwrap(), brute);
        let (m, n) = brute.unwrap();
        power_collision_certificate(&tp, m, n).unwrap();
    }

    #[test]
    fn order_pair_collides() {
        let f = FieldSpec::with_default_modulus(5, 2).unwrap();
        let tp = TzParams::with_default_points(&f);
        let na = element_period(tp.alpha()).unwrap() as u64;
        let nb = element_period(tp.beta()).unwrap() as u64;
        assert!(y_power(tp.alpha(), na as u128).is_identity());
        assert!(y_power(tp.beta(), nb as u128).is_identity());
        assert!(empty_word_check(&tp, 0, 0));
        assert!(empty_word_check(&tp, na, 0));
        assert!(empty_word_check(&tp, na, nb));
        let (m, n) = power_collision_search(&tp, na.max(nb)).unwrap().unwrap();
        assert!(m <= nb && n <= na);
    }

    #[test]
    fn diagnostic_agrees_with_matrix_test() {
        let f = FieldSpec::with_default_modulus(3, 2).unwrap();
        let tp = TzParams::with_default_points(&f);
        for m in 0..12 {
            for n in 0..12 {
                let diag = empty_word_diagnostic(&tp, m, n);
                assert_eq!(diag.holds, diag.relations.iter().all(|&r| r));
            }
        }
    }

    #[test]
    fn gcd_probe_small_cases() {
        assert_eq!(symbolic_gcd_probe(3, 2).unwrap(), DensePoly::x(3));
        assert!(symbolic_gcd_probe(3, 1).unwrap().is_one());
        assert_eq!(symbolic_gcd_probe(3, 2001), Err(Error::DegreeCapExceeded(2001)));
    }

    #[test]
    fn gcd_probe_factors_have_dividing_periods() {
        for p in [3, 5] {
            for n in 1..=60u64 {
                let g = symbolic_gcd_probe(p, n).unwrap();
                for (q, _) in g.factor() {
                    let period = sequence_period(p, &q, &DensePoly::x(p)).unwrap();
                    assert_eq!(n as u128 % period, 0, "p={p} N={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn weak_fields_of_degree_one() {
        let found = malicious_generate(3, 1, 2, 10).unwrap();
        assert!(found.iter().any(|w| w.q == DensePoly::x(3) && w.n == 2));
    }

    #[test]
    fn weak_fields_reverify() {
        let found = malicious_generate(5, 3, 125, 1000).unwrap();
        assert!(!found.is_empty());
        for w in &found {
            let f = FieldSpec::new(5, w.q.clone()).unwrap();
            assert!(y_matrix(&f.generator()).pow(w.n).is_identity());
            w.certificate.verify().unwrap();
        }
        assert!(found.windows(2).all(|pair| pair[0].n <= pair[1].n));
    }
}
