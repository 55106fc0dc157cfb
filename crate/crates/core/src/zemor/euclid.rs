//! Factoring `SL2(F_p)` elements into `A_0 = (1 1; 0 1)`, `A_1 = (1 0; 1 1)`.

use super::params::{hash, ZemorParams};
use crate::error::{Error, Result};
use crate::msg::Message;
use crate::sl2::Mat2;

/// Number of lifts tried; the shortest resulting word is kept.
pub const EUCLID_LIFT_ATTEMPTS: u32 = 64;

/// A word over `{0, 1}` whose hash with `α = β = 1` is `X`.
///
/// `X` is lifted to a nonnegative integer matrix `(A B; C D)` of determinant
/// 1 reducing to `X` mod `p`: `A` is the least positive residue of `a`,
/// `B = b + tp` for `t = 0, 1, ...` with `gcd(A, B) = 1`, and `(C, D)` follows
/// from the extended Euclidean algorithm, shifted by multiples of `(A, B)` to
/// hit the right residues. Such a matrix is a unique product of `A_0` and
/// `A_1`, read off by repeated row subtraction: the quotients of the Euclidean
/// algorithm become the run lengths.
pub fn euclid_factor(params: &ZemorParams, x: &Mat2) -> Result<Message> {
    let spec = params.spec();
    if spec.k() != 1 {
        return Err(Error::InvalidParams("Euclid factoring needs k = 1".into()));
    }
    if !params.alpha().is_one() || !params.beta().is_one() {
        return Err(Error::InvalidParams("Euclid factoring needs alpha = beta = 1".into()));
    }
    if !x.det().is_one() {
        return Err(Error::DetNotOne);
    }
    let p = spec.p() as i128;
    let r = |e: &crate::ff::FieldElement| e.coeffs()[0] as i128;
    let (a, b, c, d) = (r(x.a()), r(x.b()), r(x.c()), r(x.d()));

    let mut best: Option<(u128, [i128; 4])> = None;
    for t in 0..EUCLID_LIFT_ATTEMPTS as i128 {
        let Some(lift) = lift(p, a, b, c, d, t) else { continue };
        let Some(len) = word_runs(lift).map(|runs| runs.iter().map(|&(_, n)| n).sum::<u128>()) else {
            continue;
        };
        if best.is_none_or(|(l, _)| len < l) {
            best = Some((len, lift));
        }
    }
    let (_, lift) = best.ok_or(Error::LiftFailed(EUCLID_LIFT_ATTEMPTS))?;
    let mut word = Message::empty();
    for (bit, n) in word_runs(lift).expect("checked above") {
        word.push_run(bit, u64::try_from(n).map_err(|_| Error::LiftFailed(EUCLID_LIFT_ATTEMPTS))?);
    }
    if hash(params, &word) != *x {
        return Err(Error::Verification("Euclid word does not re-hash to the input".into()));
    }
    Ok(word)
}

fn lift(p: i128, a: i128, b: i128, c: i128, d: i128, t: i128) -> Option<[i128; 4]> {
    let big_a = if a == 0 { p } else { a };
    let big_b = b.checked_add(t.checked_mul(p)?)?;
    let (g, u, v) = ext_gcd(big_a, big_b);
    if g != 1 {
        return None;
    }
    // A·u + B·v = 1, so (C0, D0) = (-v, u) has A·D0 - B·C0 = 1 and every
    // solution is (C0 + sA, D0 + sB).
    let (c0, d0) = (-v, u);
    let s = if a != 0 {
        (c - c0).rem_euclid(p) * inv(big_a.rem_euclid(p), p) % p
    } else {
        (d - d0).rem_euclid(p) * inv(big_b.rem_euclid(p), p) % p
    };
    // least s' ≡ s (mod p) with both C, D nonnegative
    let need = |base: i128, step: i128| if base >= 0 { 0 } else { (-base + step - 1) / step };
    let (cs, ds) = (c0 + s * big_a, d0 + s * big_b);
    let j = need(cs, p * big_a).max(if big_b > 0 { need(ds, p * big_b) } else { 0 });
    let lifted = [big_a, big_b, cs + j * p * big_a, ds + j * p * big_b];
    (lifted[2] >= 0 && lifted[3] >= 0).then_some(lifted)
}

/// Runs of the unique `A_0`/`A_1` factorization of a nonnegative
/// determinant-1 integer matrix.
fn word_runs([mut a, mut b, mut c, mut d]: [i128; 4]) -> Option<Vec<(u8, u128)>> {
    let mut runs = Vec::new();
    while !(a == 1 && b == 0 && c == 0 && d == 1) {
        if a >= c && b >= d {
            // A_0^q peels q copies of the bottom row off the top one
            let q = quot(a, c).min(quot(b, d));
            a -= q * c;
            b -= q * d;
            runs.push((0, q as u128));
        } else if c >= a && d >= b {
            let q = quot(c, a).min(quot(d, b));
            c -= q * a;
            d -= q * b;
            runs.push((1, q as u128));
        } else {
            return None;
        }
    }
    Some(runs)
}

fn quot(n: i128, m: i128) -> i128 {
    if m == 0 {
        i128::MAX
    } else {
        n / m
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

fn inv(a: i128, p: i128) -> i128 {
    let (_, s, _) = ext_gcd(a, p);
    s.rem_euclid(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::msg::parse_rle;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn unit_params(p: u64) -> ZemorParams {
        ZemorParams::from_u64(&FieldSpec::prime(p).unwrap(), 1, 1).unwrap()
    }

    #[test]
    fn small_examples() {
        let zp = unit_params(7919);
        let f = zp.spec().clone();
        assert!(euclid_factor(&zp, &Mat2::identity(&f)).unwrap().is_empty());
        let x = Mat2::from_u64(&f, [[1, 3], [0, 1]]);
        assert_eq!(euclid_factor(&zp, &x).unwrap(), parse_rle("000").unwrap());
    }

    #[test]
    fn random_products_refactor() {
        let zp = unit_params(7919);
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..100 {
            let len = rng.gen_range(0..=64);
            let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
            let x = hash(&zp, &Message::from_bits(&w));
            let word = euclid_factor(&zp, &x).unwrap();
            assert_eq!(hash(&zp, &word), x);
            assert!(word.len() <= 10_000);
        }
    }

    #[test]
    fn every_element_of_sl2_f5() {
        let zp = unit_params(5);
        let f = zp.spec().clone();
        for a in 0..5u64 {
            for b in 0..5u64 {
                for c in 0..5u64 {
                    for d in 0..5u64 {
                        if (a * d + 25 - b * c % 25) % 5 != 1 {
                            continue;
                        }
                        let x = Mat2::from_u64(&f, [[a, b], [c, d]]);
                        assert_eq!(hash(&zp, &euclid_factor(&zp, &x).unwrap()), x);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_collision_of_length_p() {
        for p in [2, 3, 5, 7919] {
            let zp = unit_params(p);
            assert!(hash(&zp, &Message::run(0, p)).is_identity());
            assert!(hash(&zp, &Message::run(1, p)).is_identity());
        }
    }

    #[test]
    fn rejects_general_parameters() {
        let zp = ZemorParams::from_u64(&FieldSpec::prime(7).unwrap(), 2, 1).unwrap();
        assert!(euclid_factor(&zp, &Mat2::identity(zp.spec())).is_err());
    }
}
