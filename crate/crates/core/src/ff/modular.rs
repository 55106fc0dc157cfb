//! Word-sized modular arithmetic, primality and integer factoring.
//!
//! Moduli are `u64` values below `2^62`; products go through `u128`.

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 62;

/// Trial division bound used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Iteration cap for a single Pollard rho attempt.
pub const RHO_ITERATION_CAP: u64 = 1 << 22;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`, or `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // extended Euclid on signed 128-bit values
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Inverts every entry of `values` in place with one modular inversion.
/// Zero entries are left as zero.
pub fn batch_inv(values: &mut [u64], p: u64) {
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = 1u64;
    for &v in values.iter() {
        prefix.push(acc);
        if v != 0 {
            acc = mul_mod(acc, v, p);
        }
    }
    let mut inv = inv_mod(acc, p).expect("product of nonzero residues is invertible");
    for i in (0..values.len()).rev() {
        let v = values[i];
        if v != 0 {
            values[i] = mul_mod(inv, prefix[i], p);
            inv = mul_mod(inv, v, p);
        }
    }
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    // operands are < 2^64, so the product fits
    (a * b) % m
}

fn pow_mod_u128(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let n128 = n as u128;
    'outer: for &w in &WITNESSES {
        let mut x = pow_mod_u128(w as u128, d as u128, n128);
        if x == 1 || x == n128 - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n128);
            if x == n128 - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// when the iteration cap is exhausted for every tried constant.
fn pollard_rho(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let m = n as u128;
    for c in 1..=16u128 {
        let f = |x: u128| (mul_mod_u128(x, x, m) + c) % m;
        let mut y = 2u128;
        let mut r = 1u64;
        let mut q = 1u128;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut iterations = 0u64;
        while g == 1 && iterations < RHO_ITERATION_CAP {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    let diff = x.abs_diff(y);
                    q = mul_mod_u128(q, diff, m);
                }
                g = gcd_u64(q as u64, n);
                k += steps;
            }
            iterations += r;
            r *= 2;
        }
        if g == n {
            // backtrack one step at a time
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys) as u64, n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of `n` as sorted `(prime, exponent)` pairs.
///
/// Trial division to [`TRIAL_DIVISION_BOUND`], then Pollard rho with an
/// iteration cap. Exceeding the cap yields `FactorizationTooHard`.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    if rest <= 1 {
        return Ok(out);
    }
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some(entry) => entry.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let f = pollard_rho(m).ok_or(Error::FactorizationTooHard(n as u128))?;
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    Ok(out)
}

/// Binomial coefficient `C(n, k) mod p` for prime `p` via Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binom(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc % p
}

// n < p, so every denominator factor is invertible
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p).unwrap_or(1), p)
}
