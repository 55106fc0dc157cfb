//! Bit messages stored as maximal runs, with the `0^{n}1^{m}` text codec.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite bit string kept as canonical runs: no empty runs and no two
/// adjacent runs of the same bit.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Message {
    runs: Vec<(u8, u64)>,
}

impl Message {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `bit^len`.
    pub fn run(bit: u8, len: u64) -> Self {
        let mut m = Self::empty();
        m.push_run(bit, len);
        m
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut m = Self::empty();
        for &b in bits {
            m.push_run(b, 1);
        }
        m
    }

    /// Appends `bit^len`, merging with the last run when the bits agree.
    pub fn push_run(&mut self, bit: u8, len: u64) {
        assert!(bit <= 1, "bit must be 0 or 1");
        if len == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((b, n)) if *b == bit => *n = n.checked_add(len).expect("message length overflow"),
            _ => self.runs.push((bit, len)),
        }
    }

    pub fn append(&mut self, other: &Message) {
        for &(b, n) in &other.runs {
            self.push_run(b, n);
        }
    }

    pub fn concat(&self, other: &Message) -> Message {
        let mut m = self.clone();
        m.append(other);
        m
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: u64) -> Message {
        let mut out = Message::empty();
        if self.runs.len() == 1 {
            let (b, n) = self.runs[0];
            out.push_run(b, n.checked_mul(times).expect("message length overflow"));
            return out;
        }
        for _ in 0..times {
            out.append(self);
        }
        out
    }

    pub fn runs(&self) -> &[(u8, u64)] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        self.runs
            .iter()
            .flat_map(|&(b, n)| std::iter::repeat_n(b, n as usize))
    }

    /// Raw `0`/`1` ASCII form.
    pub fn to_bit_string(&self) -> String {
        self.bits().map(|b| if b == 0 { '0' } else { '1' }).collect()
    }

    /// Parses a raw `0`/`1` stream; ASCII whitespace is ignored.
    pub fn parse_bits(text: &str) -> Result<Self> {
        let mut m = Self::empty();
        for (pos, ch) in text.char_indices() {
            match ch {
                '0' => m.push_run(0, 1),
                '1' => m.push_run(1, 1),
                c if c.is_ascii_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected character {c:?} in bit string"),
                    })
                }
            }
        }
        Ok(m)
    }
}

/// Parses run-length text such as `0^{2}1^{3}` or `1^30 0^6`.
///
/// Exponent braces are optional; a bit with no exponent stands for a single
/// bit, so plain `0`/`1` strings parse too. Whitespace and `·` may separate
/// runs.
pub fn parse_rle(text: &str) -> Result<Message> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let mut m = Message::empty();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        let bit = match ch {
            '0' => 0,
            '1' => 1,
            c if c.is_whitespace() || c == '·' => {
                i += 1;
                continue;
            }
            _ => return Err(err(pos, "expected 0 or 1")),
        };
        i += 1;
        if i >= bytes.len() || bytes[i].1 != '^' {
            m.push_run(bit, 1);
            continue;
        }
        i += 1;
        let braced = i < bytes.len() && bytes[i].1 == '{';
        if braced {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].1.is_ascii_digit() {
            i += 1;
        }
        let at = bytes.get(start).map_or(text.len(), |b| b.0);
        if i == start {
            return Err(err(at, "expected exponent digits"));
        }
        let end = bytes.get(i).map_or(text.len(), |b| b.0);
        let len: u64 = text[at..end].parse().map_err(|_| err(at, "exponent out of range"))?;
        if braced {
            if i >= bytes.len() || bytes[i].1 != '}' {
                return Err(err(end, "expected '}'"));
            }
            i += 1;
        }
        m.push_run(bit, len);
    }
    Ok(m)
}

/// Canonical maximal-run form with braces, e.g. `0^{2}1^{3}`; empty for the
/// empty message.
pub fn emit_rle(m: &Message) -> String {
    let mut out = String::new();
    for &(b, n) in &m.runs {
        out.push_str(&format!("{b}^{{{n}}}"));
    }
    out
}

impl FromStr for Message {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rle(s)
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_rle(self))
    }
}

impl fmt::Debug for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Message({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert!(parse_rle("").unwrap().is_empty());
        assert_eq!(parse_rle("0^{2}1^{3}").unwrap().to_bit_string(), "00111");
        assert_eq!(parse_rle("0^2 1^3").unwrap(), parse_rle("00111").unwrap());
        let m = parse_rle("1^{30}").unwrap();
        assert_eq!(m.len(), 30);
        assert!(m.bits().all(|b| b == 1));
        assert!(parse_rle("0^{0}1^{0}").unwrap().is_empty());
        assert_eq!(parse_rle("1^{3} · 0^{4}").unwrap().runs(), &[(1, 3), (0, 4)]);
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(parse_rle("0^{2}2").unwrap_err(), Error::Parse { pos: 5, msg: "expected 0 or 1".into() });
        assert!(matches!(parse_rle("0^{12"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_rle("1^"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn emit_examples() {
        assert_eq!(emit_rle(&Message::empty()), "");
        assert_eq!(emit_rle(&Message::from_bits(&[0, 0, 1, 1, 1])), "0^{2}1^{3}");
        assert_eq!(emit_rle(&parse_rle("0^{2}0^{3}1^{0}").unwrap()), "0^{5}");
    }

    #[test]
    fn repeat_and_concat() {
        let m = parse_rle("01").unwrap();
        assert_eq!(m.repeat(3).to_bit_string(), "010101");
        assert_eq!(Message::run(0, 4).repeat(5), Message::run(0, 20));
        assert!(m.repeat(0).is_empty());
        let a = parse_rle("0^{3}").unwrap();
        assert_eq!(a.concat(&a), Message::run(0, 6));
    }

    #[test]
    fn seeded_round_trips() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for i in 0..10_000 {
            let len = if i % 1000 == 0 { 100_000 } else { rng.gen_range(0..300) };
            let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
            let m = Message::from_bits(&bits);
            assert_eq!(parse_rle(&emit_rle(&m)).unwrap(), m);
            assert_eq!(m.len(), len as u64);
        }
    }

    proptest! {
        #[test]
        fn rle_round_trip(bits in proptest::collection::vec(0u8..2, 0..2000)) {
            let m = Message::from_bits(&bits);
            prop_assert_eq!(parse_rle(&emit_rle(&m)).unwrap(), m.clone());
            prop_assert_eq!(m.bits().collect::<Vec<_>>(), bits);
            prop_assert_eq!(Message::parse_bits(&m.to_bit_string()).unwrap(), m);
        }

        #[test]
        fn text_round_trip(runs in proptest::collection::vec((0u8..2, 1u64..100_000), 0..50)) {
            let mut m = Message::empty();
            for (b, n) in runs {
                m.push_run(b, n);
            }
            let text = emit_rle(&m);
            prop_assert_eq!(emit_rle(&parse_rle(&text).unwrap()), text);
        }

        #[test]
        fn concat_associative(a in "[01]{0,40}", b in "[01]{0,40}", c in "[01]{0,40}") {
            let (a, b, c) = (parse_rle(&a).unwrap(), parse_rle(&b).unwrap(), parse_rle(&c).unwrap());
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
            prop_assert_eq!(a.concat(&Message::empty()), a);
        }
    }
}
