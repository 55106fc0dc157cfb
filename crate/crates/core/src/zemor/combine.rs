//! Combining upper-triangular hashes into an identity collision.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::params::{hash, ZemorParams};
use crate::cert::{CertKind, CollisionCertificate};
use crate::error::{Error, Result};
use crate::ff::{discrete_log, mult_order, primitive_element};
use crate::msg::Message;
use crate::sl2::Mat2;

/// Largest unit-group order for which the exponent relation is found by a
/// shortest-path search over `Z/N`.
pub const RELATION_SEARCH_MAX: u128 = 1 << 22;

#[derive(Debug, Clone)]
pub struct Combination {
    /// `e_i` with `Π a_i^{e_i} = 1`.
    pub exponents: Vec<u64>,
    /// `z = z_1^{e_1} ⋯ z_r^{e_r}`, hashing to `(1 b; 0 1)`.
    pub z: Message,
    pub z_hash: Mat2,
    /// Copies of `z` in the identity word: 1 when `b = 0`, else `p`.
    pub copies: u64,
    /// Identity word versus the empty word.
    pub certificate: CollisionCertificate,
}

/// Finds exponents `e_i ≥ 0`, not all zero, with `Π a_i^{e_i} = 1` for the
/// diagonal entries `a_i` of upper-triangular hashes `H(z_i)`, so that
/// `z = z_1^{e_1} ⋯ z_r^{e_r}` hashes to `(1 b; 0 1)` and `z^p` to the
/// identity.
///
/// With `t_i = log_g a_i` for a primitive `g`, the relation is a closed walk
/// `Σ e_i t_i ≡ 0 (mod p^k - 1)`; a Dijkstra search over the residues finds
/// the one with the least total message length. Above
/// [`RELATION_SEARCH_MAX`] the item with the cheapest `ord(a_i)·|z_i|` is
/// repeated `ord(a_i)` times instead.
pub fn combine_to_identity(params: &ZemorParams, items: &[(Message, Mat2)]) -> Result<Combination> {
    if items.is_empty() {
        return Err(Error::NoNontrivialRelation);
    }
    for (z, h) in items {
        if !h.is_upper_triangular() || h.a().is_zero() {
            return Err(Error::NotUpperTriangular);
        }
        if hash(params, z) != *h {
            return Err(Error::Verification("item hash does not match its message".into()));
        }
    }
    let spec = params.spec();
    let n = spec.order().ok_or(Error::FactorizationTooHard(u128::MAX))? - 1;
    let weights: Vec<u128> = items.iter().map(|(z, _)| z.len().max(1) as u128).collect();
    let exponents = if n <= RELATION_SEARCH_MAX {
        let g = primitive_element(spec)?;
        let logs = items
            .iter()
            .map(|(_, h)| discrete_log(&g, h.a()).map(|t| t as u64))
            .collect::<Result<Vec<_>>>()?;
        shortest_relation(n as u64, &logs, &weights)
    } else {
        let mut best: Option<(u128, usize, u128)> = None;
        for (i, (_, h)) in items.iter().enumerate() {
            let ord = mult_order(h.a())?;
            let cost = ord.saturating_mul(weights[i]);
            if best.is_none_or(|(c, _, _)| cost < c) {
                best = Some((cost, i, ord));
            }
        }
        let (_, i, ord) = best.expect("items is nonempty");
        let mut e = vec![0u64; items.len()];
        e[i] = u64::try_from(ord).map_err(|_| Error::DlogBudgetExceeded(ord))?;
        e
    };

    let mut z = Message::empty();
    for ((zi, _), &e) in items.iter().zip(&exponents) {
        z.append(&zi.repeat(e));
    }
    let z_hash = hash(params, &z);
    if !(z_hash.a().is_one() && z_hash.d().is_one() && z_hash.c().is_zero()) {
        return Err(Error::Verification("combined word is not unipotent".into()));
    }
    let copies = if z_hash.b().is_zero() { 1 } else { params.p() };
    let word = z.repeat(copies);
    if word.is_empty() {
        return Err(Error::DegenerateEqualMessages);
    }
    let certificate = CollisionCertificate::new(
        CertKind::IdentityWord,
        params.alpha().clone(),
        params.beta().clone(),
        word,
        Message::empty(),
    )?;
    Ok(Combination { exponents, z, z_hash, copies, certificate })
}

/// Least-weight nonempty multiset of steps `t_i` summing to 0 mod `n`.
fn shortest_relation(n: u64, steps: &[u64], weights: &[u128]) -> Vec<u64> {
    let size = n as usize;
    let mut dist = vec![u128::MAX; size];
    let mut via: Vec<(u32, u32)> = vec![(u32::MAX, 0); size];
    let mut heap = BinaryHeap::new();
    // the start node 0 is left unsettled so that the walk must return to it
    for (i, &t) in steps.iter().enumerate() {
        let v = (t % n) as usize;
        if weights[i] < dist[v] {
            dist[v] = weights[i];
            via[v] = (i as u32, u32::MAX);
            heap.push(Reverse((weights[i], v as u32)));
        }
    }
    while let Some(Reverse((w, v))) = heap.pop() {
        let v = v as usize;
        if w > dist[v] {
            continue;
        }
        if v == 0 {
            break;
        }
        for (i, &t) in steps.iter().enumerate() {
            let u = ((v as u64 + t) % n) as usize;
            let nw = w + weights[i];
            if nw < dist[u] {
                dist[u] = nw;
                via[u] = (i as u32, v as u32);
                heap.push(Reverse((nw, u as u32)));
            }
        }
    }
    let mut e = vec![0u64; steps.len()];
    let mut v = 0usize;
    loop {
        let (i, prev) = via[v];
        e[i as usize] += 1;
        if prev == u32::MAX {
            break;
        }
        v = prev as usize;
    }
    e
}
