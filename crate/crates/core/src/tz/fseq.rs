//! The sequence `f_0 = 0`, `f_1 = 1`, `f_{n+1} = x·f_n + f_{n-1}`.
//!
//! With `Y = (x 1; 1 0)` one has `Y^n = (f_{n+1} f_n; f_n f_{n-1})`, which
//! forces `f_{-1} = 1`.

use crate::error::{Error, Result};
use crate::ff::modular::{binom_mod, inv_mod, mul_mod, pow_mod};
use crate::ff::{DensePoly, FieldElement};

/// Ring in which the sequence is run: polynomials or field elements.
pub trait FTerm: Clone + PartialEq {
    /// `point · cur + prev`, reduced by `modulus` where applicable.
    fn next_term(point: &Self, cur: &Self, prev: &Self, modulus: Option<&DensePoly>) -> Self;
}

impl FTerm for DensePoly {
    fn next_term(point: &Self, cur: &Self, prev: &Self, modulus: Option<&DensePoly>) -> Self {
        let t = point.mul(cur).add(prev);
        match modulus {
            Some(m) => t.rem(m),
            None => t,
        }
    }
}

impl FTerm for FieldElement {
    fn next_term(point: &Self, cur: &Self, prev: &Self, _: Option<&DensePoly>) -> Self {
        &(point * cur) + prev
    }
}

/// Single-owner cursor over `(f_n, f_{n-1})`, starting at `n = 0`.
#[derive(Debug, Clone)]
pub struct FSeqCursor<T> {
    n: u64,
    cur: T,
    prev: T,
    point: T,
    modulus: Option<DensePoly>,
}

impl FSeqCursor<DensePoly> {
    /// Symbolic sequence in `F_p[x]`, optionally reduced mod `modulus`.
    pub fn symbolic(p: u64, modulus: Option<DensePoly>) -> Self {
        let point = match &modulus {
            Some(m) => DensePoly::x(p).rem(m),
            None => DensePoly::x(p),
        };
        Self { n: 0, cur: DensePoly::zero(p), prev: DensePoly::one(p), point, modulus }
    }
}

impl FSeqCursor<FieldElement> {
    /// Sequence evaluated at a field element.
    pub fn evaluated(point: &FieldElement) -> Self {
        let spec = point.spec();
        Self { n: 0, cur: spec.zero(), prev: spec.one(), point: point.clone(), modulus: None }
    }
}

impl<T: FTerm> FSeqCursor<T> {
    pub fn index(&self) -> u64 {
        self.n
    }

    /// `f_n`.
    pub fn current(&self) -> &T {
        &self.cur
    }

    /// `f_{n-1}`.
    pub fn previous(&self) -> &T {
        &self.prev
    }

    pub fn advance(&mut self) {
        let next = T::next_term(&self.point, &self.cur, &self.prev, self.modulus.as_ref());
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
    }

    pub fn advance_to(&mut self, n: u64) {
        assert!(n >= self.n, "cursor only moves forward");
        while self.n < n {
            self.advance();
        }
    }
}

/// `f_n(x)` over `F_p`, reduced mod `modulus` when given.
pub fn f_iter(n: u64, p: u64, modulus: Option<&DensePoly>) -> DensePoly {
    let mut cur = FSeqCursor::symbolic(p, modulus.cloned());
    cur.advance_to(n);
    cur.cur
}

/// `f_n` evaluated at `point`.
pub fn f_iter_at(n: u64, point: &FieldElement) -> FieldElement {
    let mut cur = FSeqCursor::evaluated(point);
    cur.advance_to(n);
    cur.cur
}

/// `f_n(x)` from the closed form, for odd `p`:
///
/// `f_n = 2^{1-n} Σ_{i ≡ n-1 (mod 2)} Σ_{j=0}^{h} C(n,i) C(h,j) 4^{h-j} x^{i+2j}`,
/// with `h = (n-1-i)/2`, which is `((x+w)^n - (x-w)^n) / (2^n w)` expanded
/// through `w² = x² + 4`.
pub fn f_closed(n: u64, p: u64) -> Result<DensePoly> {
    if p == 2 {
        return Err(Error::CharTwo);
    }
    if n == 0 {
        return Ok(DensePoly::zero(p));
    }
    let mut coeffs = vec![0u64; n as usize];
    let scale = pow_mod(inv_mod(2, p).expect("p is odd"), (n - 1) as u128, p);
    let mut i = (n - 1) % 2;
    while i < n {
        let h = (n - 1 - i) / 2;
        let cni = binom_mod(n, i, p);
        if cni != 0 {
            for j in 0..=h {
                let term = mul_mod(mul_mod(cni, binom_mod(h, j, p), p), pow_mod(4, (h - j) as u128, p), p);
                let deg = (i + 2 * j) as usize;
                coeffs[deg] = (coeffs[deg] + term) % p;
            }
        }
        i += 2;
    }
    Ok(DensePoly::new(p, coeffs).scale(scale))
}
