//! `F_p^k` as coefficient vectors modulo a monic irreducible polynomial.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::modular::{add_mod, inv_mod, is_prime, mul_mod, neg_mod, sub_mod, MAX_PRIME};
use super::poly::{irreducibles_of_degree, DensePoly};
use crate::error::{Error, Result};

/// Description of a finite field `F_p[x]/(modulus)`.
///
/// Text form: `p=3;k=12;mod=[1,1,1,2,2,0,1,0,0,0,2,0,1]` with little-endian
/// modulus coefficients. `k` and `mod` may be omitted on input.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    modulus: DensePoly,
}

impl FieldSpec {
    /// Field with an explicit modulus, validated for primality of `p` and
    /// irreducibility of the modulus.
    pub fn new(p: u64, modulus: DensePoly) -> Result<Arc<Self>> {
        check_prime(p)?;
        if modulus.modulus() != p {
            return Err(Error::InvalidField("modulus lives over a different prime".into()));
        }
        let k = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidField("modulus must have degree >= 1".into()))?;
        if !modulus.is_monic() {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !modulus.is_irreducible() {
            return Err(Error::InvalidField(format!("{modulus} is reducible")));
        }
        Ok(Arc::new(Self { p, k, modulus }))
    }

    /// The prime field `F_p` (formal modulus `x`).
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        check_prime(p)?;
        Ok(Arc::new(Self {
            p,
            k: 1,
            modulus: DensePoly::x(p),
        }))
    }

    /// `F_{p^k}` under the lexicographically smallest monic irreducible of degree `k`.
    pub fn with_default_modulus(p: u64, k: usize) -> Result<Arc<Self>> {
        check_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let modulus = irreducibles_of_degree(p, k, 1)
            .pop()
            .ok_or_else(|| Error::InvalidField("no irreducible of that degree".into()))?;
        Ok(Arc::new(Self { p, k, modulus }))
    }

    pub fn parse(text: &str) -> Result<Arc<Self>> {
        let mut p = None;
        let mut k = None;
        let mut modulus = None;
        let mut offset = 0;
        for part in text.split(';') {
            let trimmed = part.trim();
            if trimmed.is_empty() {
                offset += part.len() + 1;
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
                pos: offset,
                msg: format!("expected key=value, got {trimmed:?}"),
            })?;
            let bad = |msg: String| Error::Parse { pos: offset, msg };
            match key.trim() {
                "p" => p = Some(value.trim().parse::<u64>().map_err(|e| bad(e.to_string()))?),
                "k" => k = Some(value.trim().parse::<usize>().map_err(|e| bad(e.to_string()))?),
                "mod" => modulus = Some(parse_coeff_list(value.trim()).map_err(|(_, m)| bad(m))?),
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
            offset += part.len() + 1;
        }
        let p = p.ok_or(Error::Parse { pos: 0, msg: "missing p".into() })?;
        check_prime(p)?;
        match (k, modulus) {
            (k, Some(coeffs)) => {
                let poly = DensePoly::new(p, coeffs);
                if let Some(k) = k {
                    if poly.degree() != Some(k) {
                        return Err(Error::InvalidField(format!(
                            "modulus degree {:?} does not match k={k}",
                            poly.degree()
                        )));
                    }
                }
                if poly.degree() == Some(1) && poly == DensePoly::x(p) {
                    return Self::prime(p);
                }
                Self::new(p, poly)
            }
            (k, None) => Self::with_default_modulus(p, k.unwrap_or(1)),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &DensePoly {
        &self.modulus
    }

    /// Field size `p^k`, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_u64(1)
    }

    /// Image of a prime-field residue.
    pub fn from_u64(self: &Arc<Self>, v: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v % self.p;
        e
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> FieldElement {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element from little-endian coefficients; longer vectors are reduced
    /// modulo the field polynomial.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> FieldElement {
        self.from_poly(&DensePoly::new(self.p, coeffs.to_vec()))
    }

    /// Reduction of an arbitrary polynomial into the field.
    pub fn from_poly(self: &Arc<Self>, poly: &DensePoly) -> FieldElement {
        let reduced = poly.rem(&self.modulus);
        let mut e = self.zero();
        for (i, &c) in reduced.coeffs().iter().enumerate() {
            e.coeffs[i] = c;
        }
        e
    }

    /// The class of `x` (printed as `z`).
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&DensePoly::x(self.p))
    }

    /// Parses an element: a decimal residue, a coefficient list `[c0,c1,...]`,
    /// or a polynomial in `z` (or `x`) such as `z^3 + 2z + 1`.
    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        if t.starts_with('[') {
            let coeffs = parse_coeff_list(t).map_err(|(pos, msg)| Error::Parse { pos, msg })?;
            return Ok(self.from_coeffs(&coeffs));
        }
        let coeffs = parse_z_poly(t, self.p).map_err(|(pos, msg)| Error::Parse { pos, msg })?;
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::InvalidField(format!("p={p} exceeds the supported range")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = (0..=self.k).map(|i| self.modulus.coeff(i).to_string()).collect();
        write!(f, "p={};k={};mod=[{}]", self.p, self.k, coeffs.join(","))
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

/// Element of a [`FieldSpec`]: `k` residues, index `i` = coefficient of `z^i`.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

/// Binary operation selector for [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> DensePoly {
        DensePoly::new(self.spec.p, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The residue when the element lies in the prime field.
    pub fn to_base(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Checked arithmetic: fails on mixed fields or division by zero.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        if !FieldSpec::same(&self.spec, &other.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
            ArithOp::Div => self.mul_unchecked(&other.inv()?),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.arith(other, ArithOp::Div)
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        Self { spec: Arc::clone(&self.spec), coeffs }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        Self { spec: Arc::clone(&self.spec), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p;
        let k = self.spec.k;
        if k == 1 {
            return Self {
                spec: Arc::clone(&self.spec),
                coeffs: vec![mul_mod(self.coeffs[0], other.coeffs[0], p)],
            };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(a, b, p), p);
            }
        }
        let m = self.spec.modulus.coeffs();
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // modulus is monic: x^k = -sum m_j x^j
            for j in 0..k {
                prod[i - k + j] = sub_mod(prod[i - k + j], mul_mod(c, m[j], p), p);
            }
        }
        prod.truncate(k);
        Self { spec: Arc::clone(&self.spec), coeffs: prod }
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        Self {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|&a| neg_mod(a, p)).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.spec.k == 1 {
            let v = inv_mod(self.coeffs[0], self.spec.p).ok_or(Error::DivisionByZero)?;
            return Ok(self.spec.from_u64(v));
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.spec.modulus);
        debug_assert!(g.is_one());
        Ok(self.spec.from_poly(&s))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// `self^(p^iterations)`. The map is the identity after `k` iterations.
    pub fn frobenius(&self, iterations: u64) -> Self {
        let steps = iterations % self.spec.k as u64;
        let mut out = self.clone();
        for _ in 0..steps {
            out = out.pow(self.spec.p as u128);
        }
        out
    }

    /// Whether the element is fixed by `x -> x^p`, i.e. lies in `F_p`.
    pub fn is_frobenius_fixed(&self) -> bool {
        self.frobenius(1) == *self
    }

    /// Shorthand for `self * n` with `n` a prime-field residue.
    pub fn scale(&self, n: u64) -> Self {
        let p = self.spec.p;
        let n = n % p;
        Self {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, n, p)).collect(),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && FieldSpec::same(&self.spec, &other.spec)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs, "z"))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator forms panic on mixed fields; use `arith` for the checked variant.
macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    FieldSpec::same(&self.spec, &rhs.spec),
                    "field operands from different specs"
                );
                self.$imp(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

/// Renders little-endian coefficients as `134z + 110` style text.
pub fn format_poly(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, c) => format!("{c}{var}^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn parse_coeff_list(text: &str) -> std::result::Result<Vec<u64>, (usize, String)> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or((0, "expected [c0,c1,...]".to_string()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = 1;
    for item in inner.split(',') {
        let v = item
            .trim()
            .parse::<u64>()
            .map_err(|e| (pos, format!("bad coefficient {:?}: {e}", item.trim())))?;
        out.push(v);
        pos += item.len() + 1;
    }
    Ok(out)
}

/// Parses sums like `2z^3 + z - 1` into little-endian residues mod `p`.
fn parse_z_poly(text: &str, p: u64) -> std::result::Result<Vec<u64>, (usize, String)> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err((0, "empty element".into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let read_num = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| text[start..*i].parse::<u128>().ok()).flatten().map(|v| (v % p as u128) as u64)
    };
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() {
            break;
        }
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err((i, "expected + or -".into()));
        }
        first = false;
        let term_start = i;
        let coef = read_num(&mut i);
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            skip_ws(&mut i);
        }
        let mut power = 0usize;
        if i < bytes.len() && (bytes[i] == b'z' || bytes[i] == b'x') {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let braced = i < bytes.len() && bytes[i] == b'{';
                if braced {
                    i += 1;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = text[start..i].parse().map_err(|_| (start, "bad exponent".to_string()))?;
                if braced {
                    if i >= bytes.len() || bytes[i] != b'}' {
                        return Err((i, "missing }".into()));
                    }
                    i += 1;
                }
            }
        } else if coef.is_none() {
            return Err((term_start, "expected a number or z".into()));
        }
        let mut c = coef.unwrap_or(1);
        if negative {
            c = neg_mod(c, p);
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = add_mod(coeffs[power], c, p);
    }
    Ok(coeffs)
}
