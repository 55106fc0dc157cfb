//! Dense univariate polynomials over a prime field.

use std::fmt;

use super::modular::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

/// Polynomial over `F_p` with little-endian coefficients (`coeffs[i]` is the
/// coefficient of `x^i`). Trailing zeros are always stripped, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl DensePoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// `c * x^n`.
    pub fn monomial(p: u64, c: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Self::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| neg_mod(a, self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        // accumulate without reduction while the sum cannot overflow
        let bound = u128::MAX / ((p as u128 - 1).pow(2)).max(1);
        let flush_every = bound.saturating_sub(1).clamp(1, 1 << 20) as usize;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a as u128 * b as u128;
            }
            if (i + 1) % flush_every == 0 {
                out.iter_mut().for_each(|c| *c %= p as u128);
            }
        }
        Self::new(p, out.into_iter().map(|c| (c % p as u128) as u64).collect())
    }

    /// Quotient and remainder of division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = inv_mod(divisor.leading(), p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = mul_mod(c, lead_inv, p);
            quot[i - dd] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = sub_mod(rem[k], mul_mod(q, d, p), p);
            }
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::new(p, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// `self(inner) mod modulus` by Horner's rule.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Self {
        let inner = inner.rem(modulus);
        self.coeffs.iter().rev().fold(Self::zero(self.p), |acc, &c| {
            acc.mul(&inner).add(&Self::constant(self.p, c)).rem(modulus)
        })
    }

    /// Rabin's test: `f | x^{p^d} - x` and `gcd(f, x^{p^{d/r}} - x) = 1`
    /// for every prime `r | d`. Constants are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let p = self.p;
        let x = Self::x(p);
        let prime_divisors: Vec<usize> = (2..=d)
            .filter(|r| d % r == 0 && (2..*r).all(|s| r % s != 0))
            .collect();
        let checkpoints: Vec<usize> = prime_divisors.iter().map(|r| d / r).collect();
        let mut power = x.rem(&f);
        for i in 1..=d {
            power = power.pow_mod(p as u128, &f);
            if checkpoints.contains(&i) && !power.sub(&x).gcd(&f).is_one() {
                return false;
            }
        }
        power.sub(&x).rem(&f).is_zero()
    }

    /// `p`-th root of a polynomial whose exponents are all multiples of `p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        // Frobenius is the identity on F_p
        Self::new(self.p, coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with
    /// `self = prod g^e` and every `g` squarefree.
    pub fn squarefree_factors(&self) -> Vec<(Self, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        if fp.is_zero() {
            for (g, e) in f.pth_root().squarefree_factors() {
                out.push((g, e * self.p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&fp);
        let mut w = f.div_exact(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            for (g, e) in c.pth_root().squarefree_factors() {
                out.push((g, e * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree_factors(&self) -> Vec<(Self, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if deg < 2 * (d + 1) {
                break;
            }
            d += 1;
            h = h.pow_mod(p as u128, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if let Some(deg) = f.degree() {
            if deg > 0 {
                out.push((f, deg));
            }
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of common degree `d`.
    /// Splitting polynomials are enumerated deterministically.
    pub fn equal_degree_factors(&self, d: usize) -> Vec<Self> {
        let f = self.monic();
        let n = f.degree().unwrap_or(0);
        if n == 0 {
            return Vec::new();
        }
        if n == d {
            return vec![f];
        }
        let p = self.p;
        let mut counter: u64 = p; // skip constants
        loop {
            let a = Self::from_counter(p, counter, n);
            counter += 1;
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^{2^{d-1}}
                let mut t = a.rem(&f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(&f);
                    acc = acc.add(&t);
                }
                acc
            } else {
                // a^{(p^d - 1)/2} = (a * a^p * ... * a^{p^{d-1}})^{(p-1)/2}
                let mut t = a.rem(&f);
                let mut norm = t.clone();
                for _ in 1..d {
                    t = t.pow_mod(p as u128, &f);
                    norm = norm.mul(&t).rem(&f);
                }
                norm.pow_mod(((p - 1) / 2) as u128, &f).sub(&Self::one(p))
            };
            let g = b.gcd(&f);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let mut out = g.equal_degree_factors(d);
                out.extend(f.div_exact(&g).equal_degree_factors(d));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients.
    pub fn factor(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        for (sqf, e) in self.squarefree_factors() {
            for (block, d) in sqf.distinct_degree_factors() {
                for g in block.equal_degree_factors(d) {
                    out.push((g, e));
                }
            }
        }
        out.sort_by_key(|a| (a.0.degree(), a.0.lex_key()));
        out
    }

    /// Polynomial whose coefficient digits (little-endian, base `p`) spell
    /// `counter`, padded to `len` digits.
    pub(crate) fn from_counter(p: u64, mut counter: u64, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        for _ in 0..len {
            coeffs.push(counter % p);
            counter /= p;
        }
        Self::new(p, coeffs)
    }

    /// Ordering key: degree first, then coefficients from the highest power down.
    fn lex_key(&self) -> Vec<u64> {
        self.coeffs.iter().rev().copied().collect()
    }
}

/// Monic irreducible polynomials of degree `d` over `F_p`, enumerated by the
/// integer value of their coefficient vector (low-degree coefficients least
/// significant) and truncated at `limit`.
pub fn irreducibles_of_degree(p: u64, d: usize, limit: usize) -> Vec<DensePoly> {
    assert!(d >= 1, "degree must be positive");
    let mut out = Vec::new();
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let mut counter: u128 = 0;
    while counter < total && out.len() < limit {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut c = counter;
        for _ in 0..d {
            coeffs.push((c % p as u128) as u64);
            c /= p as u128;
        }
        counter += 1;
        if d > 1 && coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let f = DensePoly::new(p, coeffs);
        if f.is_irreducible() {
            out.push(f);
        }
    }
    out
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::field::format_poly(&self.coeffs, "x"))
    }
}
