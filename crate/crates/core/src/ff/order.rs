//! Multiplicative orders and baby-step/giant-step discrete logarithms.

use std::collections::HashMap;

use super::field::FieldElement;
use super::modular::factorize;
use crate::error::{Error, Result};

/// Largest subgroup order accepted by [`discrete_log`].
pub const DLOG_MAX_ORDER: u128 = 1 << 48;

/// Least divisor `t` of `multiple` with `is_identity(t)`, given the prime
/// factorization of `multiple` and knowing `is_identity(multiple)` holds.
pub fn strip_order(
    multiple: u128,
    factors: &[(u128, u32)],
    mut is_identity: impl FnMut(u128) -> bool,
) -> u128 {
    let mut order = multiple;
    for &(q, e) in factors {
        for _ in 0..e {
            if order.is_multiple_of(q) && is_identity(order / q) {
                order /= q;
            } else {
                break;
            }
        }
    }
    order
}

/// Factorization of `p^k - 1` for the element's field.
pub fn unit_group_factors(a: &FieldElement) -> Result<(u128, Vec<(u128, u32)>)> {
    let n = a
        .spec()
        .order()
        .map(|q| q - 1)
        .filter(|&n| n <= u64::MAX as u128)
        .ok_or(Error::FactorizationTooHard(u128::MAX))?;
    let factors = factorize(n as u64)?
        .into_iter()
        .map(|(q, e)| (q as u128, e))
        .collect();
    Ok((n, factors))
}

/// Least `t >= 1` with `a^t = 1`.
pub fn mult_order(a: &FieldElement) -> Result<u128> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (n, factors) = unit_group_factors(a)?;
    Ok(strip_order(n, &factors, |t| a.pow(t).is_one()))
}

/// Least `e >= 0` with `base^e = target`, by baby-step/giant-step over the
/// subgroup generated by `base`.
pub fn discrete_log(base: &FieldElement, target: &FieldElement) -> Result<u128> {
    if base.spec() != target.spec() {
        return Err(Error::SpecMismatch);
    }
    if target.is_zero() {
        return Err(Error::NotInSubgroup);
    }
    let order = mult_order(base)?;
    if order > DLOG_MAX_ORDER {
        return Err(Error::DlogBudgetExceeded(order));
    }
    let m = (order as f64).sqrt().ceil() as u128;
    let m = m.max(1);
    // baby steps: base^j for j < m, keeping the smallest j per value
    let mut table: HashMap<Vec<u64>, u128> = HashMap::with_capacity(m as usize);
    let mut cur = base.spec().one();
    for j in 0..m {
        table.entry(cur.coeffs().to_vec()).or_insert(j);
        cur = &cur * base;
    }
    let giant = base.pow(m).inv()?;
    let mut gamma = target.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(gamma.coeffs()) {
            let e = i * m + j;
            if e < order {
                return Ok(e);
            }
        }
        gamma = &gamma * &giant;
    }
    Err(Error::NotInSubgroup)
}

/// A generator of `F_{p^k}^*`, the first in coefficient order.
pub fn primitive_element(spec: &std::sync::Arc<super::field::FieldSpec>) -> Result<FieldElement> {
    let one = spec.one();
    let (n, factors) = unit_group_factors(&one)?;
    let p = spec.p();
    let mut counter: u64 = 1;
    loop {
        let mut coeffs = Vec::with_capacity(spec.k());
        let mut c = counter;
        for _ in 0..spec.k() {
            coeffs.push(c % p);
            c /= p;
        }
        counter += 1;
        let g = spec.from_coeffs(&coeffs);
        if g.is_zero() {
            continue;
        }
        if factors.iter().all(|&(q, _)| !g.pow(n / q).is_one()) {
            return Ok(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    #[test]
    fn order_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(mult_order(&f7.one()).unwrap(), 1);
        assert_eq!(mult_order(&f7.from_u64(3)).unwrap(), 6);
        assert_eq!(mult_order(&f7.from_u64(6)).unwrap(), 2);
        let f = FieldSpec::prime(7919).unwrap();
        assert_eq!(mult_order(&f.from_u64(7918)).unwrap(), 2);
    }

    #[test]
    fn dlog_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        let three = f7.from_u64(3);
        assert_eq!(discrete_log(&three, &f7.one()).unwrap(), 0);
        assert_eq!(discrete_log(&three, &three).unwrap(), 1);
        assert_eq!(discrete_log(&three, &f7.from_u64(5)).unwrap(), 5);
        // 2 generates {1, 2, 4}
        assert_eq!(discrete_log(&f7.from_u64(2), &f7.from_u64(3)), Err(Error::NotInSubgroup));
    }

    #[test]
    fn primitive_element_has_full_order() {
        let f = FieldSpec::with_default_modulus(3, 3).unwrap();
        let g = primitive_element(&f).unwrap();
        assert_eq!(mult_order(&g).unwrap(), 26);
    }
}
