#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use cayley_core::ff::{FieldElement, FieldSpec};
use cayley_core::msg::Message;
use rand::rngs::StdRng;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn random_element(rng: &mut StdRng, f: &Arc<FieldSpec>) -> FieldElement {
    let coeffs: Vec<u64> = (0..f.k()).map(|_| rng.gen_range(0..f.p())).collect();
    f.from_coeffs(&coeffs)
}

pub fn random_nonzero(rng: &mut StdRng, f: &Arc<FieldSpec>) -> FieldElement {
    loop {
        let e = random_element(rng, f);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_word(rng: &mut StdRng, min_len: usize, max_len: usize) -> Message {
    let len = rng.gen_range(min_len..=max_len);
    Message::from_bits(&(0..len).map(|_| rng.gen_range(0..2)).collect::<Vec<u8>>())
}
