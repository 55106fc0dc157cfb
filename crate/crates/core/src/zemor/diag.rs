//! Diagonal extensions and the diagonal-pair collision.

use rayon::prelude::*;

use super::params::{extend, hash, zg_power, ZemorParams};
use crate::cert::{CertKind, CollisionCertificate};
use crate::error::{Error, Result};
use crate::ff::modular::{add_mod, batch_inv, inv_mod, mul_mod, sub_mod};
use crate::msg::Message;
use crate::sl2::Mat2;

/// `D = C · A_0^m · A_1^n`, diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagExtension {
    pub m: u64,
    pub n: u64,
    pub d: Mat2,
}

/// Exponents `m = -b/(aα)`, `n = -ac/β` that make `C · A_0^m · A_1^n`
/// equal to `diag(a, a^-1)`.
pub fn diagonalize_ext(params: &ZemorParams, c: &Mat2) -> Result<DiagExtension> {
    if !c.det().is_one() {
        return Err(Error::DetNotOne);
    }
    let (a, b, cc) = (c.a(), c.b(), c.c());
    if a.is_zero() {
        return Err(Error::ZeroCorner);
    }
    let m = (-b).checked_div(&(a * params.alpha()))?;
    let n = (-(a * cc)).checked_div(params.beta())?;
    let (m, n) = match (m.to_base(), n.to_base()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::ExponentNotInBaseField),
    };
    let d = extend(params, c, m, n);
    if !d.is_diagonal() || d.a() != a {
        return Err(Error::Verification("diagonal extension check failed".into()));
    }
    Ok(DiagExtension { m, n, d })
}

#[derive(Debug, Clone)]
pub struct DiagCollision {
    pub certificate: CollisionCertificate,
    /// `(m̃_i, ñ_i)` for the two sides.
    pub tilde: [(u64, u64); 2],
    /// Length of the middle `0`-run on each side, `m_i + m̃_i`.
    pub zero_runs: [u64; 2],
}

/// Builds `z_i = 1^{n_i} · z · 0^{m_i + m̃_i} · 1^{ñ_i}` for `i = 1, 2`, where
/// `(m̃_i, ñ_i)` diagonalizes `A_1^{n_i} · H(z) · A_0^{m_i}`. Both words hash to
/// `diag(a, a^-1)` with `a = H(z)[0,0]`.
///
/// The middle run lengths are reduced mod `p`. When `n1 ≡ n2` the two words
/// then coincide; in that case `p` more zeros are put into the first word,
/// which leaves its hash unchanged since `A_0^p = I`. Pairs that agree mod `p`
/// are rejected.
pub fn diag_collision(
    params: &ZemorParams,
    z: &Message,
    (m1, n1): (u64, u64),
    (m2, n2): (u64, u64),
) -> Result<DiagCollision> {
    let p = params.p();
    if m1 % p == m2 % p && n1 % p == n2 % p {
        return Err(Error::DegenerateEqualMessages);
    }
    let c = hash(params, z);
    let sides = [(m1, n1), (m2, n2)].map(|(m, n)| {
        let di = &(&zg_power(params, 1, n as u128) * &c) * &zg_power(params, 0, m as u128);
        diagonalize_ext(params, &di).map(|ext| (m, n, ext))
    });
    let [s1, s2] = sides;
    let (s1, s2) = (s1?, s2?);
    let word = |n: u64, run: u64, nt: u64| {
        let mut w = Message::run(1, n);
        w.append(z);
        w.push_run(0, run);
        w.push_run(1, nt);
        w
    };
    let reduced = |m: u64, mt: u64| ((m as u128 + mt as u128) % p as u128) as u64;
    let mut runs = [reduced(s1.0, s1.2.m), reduced(s2.0, s2.2.m)];
    let mut z1 = word(s1.1, runs[0], s1.2.n);
    let z2 = word(s2.1, runs[1], s2.2.n);
    if z1 == z2 {
        runs[0] += p;
        z1 = word(s1.1, runs[0], s1.2.n);
    }
    let certificate = CollisionCertificate::new(
        CertKind::DiagonalPair,
        params.alpha().clone(),
        params.beta().clone(),
        z1,
        z2,
    )?;
    if !certificate.hash().is_diagonal() {
        return Err(Error::Verification("collision hash is not diagonal".into()));
    }
    Ok(DiagCollision { certificate, tilde: [(s1.2.m, s1.2.n), (s2.2.m, s2.2.n)], zero_runs: runs })
}

/// `T = A_0^r · A_1^s` with `H(T) · A_0^m · A_1^n` diagonal and all four
/// exponents below the search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ShortWitness {
    pub r: u64,
    pub s: u64,
    pub m: u64,
    pub n: u64,
}

impl ShortWitness {
    /// `0^r 1^s 0^m 1^n`.
    pub fn message(&self) -> Message {
        let mut w = Message::run(0, self.r);
        w.push_run(1, self.s);
        w.push_run(0, self.m);
        w.push_run(1, self.n);
        w
    }
}

fn check_bound(params: &ZemorParams, delta: u64) -> Result<()> {
    if delta < 2 || delta > params.p() {
        return Err(Error::InvalidParams(format!("bound must lie in [2, p], got {delta}")));
    }
    Ok(())
}

/// Scans `r ∈ [1, δ)`, `y ∈ (p-δ, p)` for a short word whose diagonal
/// extension is also short. `s = (y^-1 - r^-1)(αβ)^-1` must satisfy `s < δ`
/// and `s(1 + rsαβ) mod p > p - δ`; then `m = p - y` and
/// `n = p - s(1 + rsαβ)`.
///
/// Returns the first hit in `(r, y)` order, independent of the thread count.
pub fn bounded_diag_search(params: &ZemorParams, delta: u64) -> Result<Option<ShortWitness>> {
    if params.spec().k() != 1 {
        return Err(Error::InvalidParams("bounded diagonal search needs k = 1".into()));
    }
    check_bound(params, delta)?;
    let p = params.p();
    let ab = params.ab_base().expect("k = 1");
    let ab_inv = inv_mod(ab, p).expect("alpha and beta are nonzero");
    let y_lo = p - delta + 1;
    let mut y_inv: Vec<u64> = (y_lo..p).collect();
    batch_inv(&mut y_inv, p);

    let hit = (1..delta).into_par_iter().find_map_first(|r| {
        let r_inv = inv_mod(r, p).expect("r < p");
        y_inv.iter().enumerate().find_map(|(j, &yi)| {
            let s = mul_mod(sub_mod(yi, r_inv, p), ab_inv, p);
            if s >= delta {
                return None;
            }
            let a = add_mod(1, mul_mod(mul_mod(r, s, p), ab, p), p);
            let v = mul_mod(s, a, p);
            (v > p - delta).then(|| ShortWitness { r, s, m: p - (y_lo + j as u64), n: p - v })
        })
    });
    if let Some(w) = hit {
        let t = hash(params, &w.message());
        if !t.is_diagonal() {
            return Err(Error::Verification("diagonal search witness does not verify".into()));
        }
    }
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_word(rng: &mut StdRng, max_len: usize) -> Message {
        let len = rng.gen_range(0..=max_len);
        Message::from_bits(&(0..len).map(|_| rng.gen_range(0..2)).collect::<Vec<u8>>())
    }

    #[test]
    fn diagonal_input_needs_no_extension() {
        let f = FieldSpec::prime(7919).unwrap();
        let zp = ZemorParams::from_u64(&f, 5698, 6497).unwrap();
        let c = Mat2::from_u64(&f, [[4812, 0], [0, 1542]]);
        let ext = diagonalize_ext(&zp, &c).unwrap();
        assert_eq!((ext.m, ext.n), (0, 0));
        assert_eq!(ext.d, c);
    }

    #[test]
    fn exhaustive_over_sl2_f7() {
        let f = FieldSpec::prime(7).unwrap();
        let zp = ZemorParams::from_u64(&f, 3, 5).unwrap();
        let a0: Vec<Mat2> = (0..7).map(|m| zg_power(&zp, 0, m)).collect();
        let a1: Vec<Mat2> = (0..7).map(|n| zg_power(&zp, 1, n)).collect();
        let mut count = 0;
        for a in 1..7u64 {
            for b in 0..7u64 {
                for c in 0..7u64 {
                    // d = (1 + bc) / a
                    let d = (1 + b * c) % 7 * inv_mod(a, 7).unwrap() % 7;
                    let x = Mat2::from_u64(&f, [[a, b], [c, d]]);
                    let ext = diagonalize_ext(&zp, &x).unwrap();
                    assert!(ext.d.is_diagonal());
                    assert_eq!(ext.d.a(), x.a());
                    // brute force: exactly one (m, n) diagonalizes
                    let found: Vec<(u64, u64)> = (0..7)
                        .flat_map(|m| (0..7).map(move |n| (m, n)))
                        .filter(|&(m, n)| (&(&x * &a0[m as usize]) * &a1[n as usize]).is_diagonal())
                        .collect();
                    assert_eq!(found, vec![(ext.m, ext.n)]);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 6 * 49);
    }

    #[test]
    fn errors() {
        let f = FieldSpec::prime(7).unwrap();
        let zp = ZemorParams::from_u64(&f, 3, 5).unwrap();
        assert_eq!(diagonalize_ext(&zp, &Mat2::from_u64(&f, [[0, 1], [6, 0]])).unwrap_err(), Error::ZeroCorner);
        assert_eq!(diagonalize_ext(&zp, &Mat2::from_u64(&f, [[2, 0], [0, 2]])).unwrap_err(), Error::DetNotOne);
    }

    #[test]
    fn empty_word_corner_case() {
        let f = FieldSpec::prime(7919).unwrap();
        let zp = ZemorParams::from_u64(&f, 5698, 6497).unwrap();
        let col = diag_collision(&zp, &Message::empty(), (1, 0), (0, 0)).unwrap();
        assert_eq!(col.certificate.z1(), &Message::run(0, 7919));
        assert!(col.certificate.z2().is_empty());
        assert!(col.certificate.hash().is_identity());
    }

    #[test]
    fn random_collisions_mod_7() {
        let f = FieldSpec::prime(7).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        let mut made = 0;
        while made < 100 {
            let zp = ZemorParams::from_u64(&f, rng.gen_range(1..7), rng.gen_range(1..7)).unwrap();
            let z = random_word(&mut rng, 30);
            let s1 = (rng.gen_range(0..7), rng.gen_range(0..7));
            let s2 = (rng.gen_range(0..7), rng.gen_range(0..7));
            if hash(&zp, &z).a().is_zero() {
                continue;
            }
            if s1 == s2 {
                assert_eq!(diag_collision(&zp, &z, s1, s2).unwrap_err(), Error::DegenerateEqualMessages);
                continue;
            }
            let col = diag_collision(&zp, &z, s1, s2).unwrap();
            let h1 = hash(&zp, col.certificate.z1());
            assert_eq!(h1, hash(&zp, col.certificate.z2()));
            assert!(h1.is_diagonal());
            made += 1;
        }
    }

    #[test]
    fn full_range_search_finds_witness() {
        let f = FieldSpec::prime(11).unwrap();
        for (a, b) in [(1, 1), (3, 7), (10, 2)] {
            let zp = ZemorParams::from_u64(&f, a, b).unwrap();
            let w = bounded_diag_search(&zp, 11).unwrap().expect("exhaustive scan hits");
            assert!(hash(&zp, &w.message()).is_diagonal());
        }
    }

    #[test]
    fn search_is_thread_independent() {
        let f = FieldSpec::prime(7919).unwrap();
        let zp = ZemorParams::from_u64(&f, 5698, 6497).unwrap();
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let multi = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for delta in [10, 90, 400] {
            let a = single.install(|| bounded_diag_search(&zp, delta).unwrap());
            let b = multi.install(|| bounded_diag_search(&zp, delta).unwrap());
            assert_eq!(a, b);
        }
    }
}
