//! Bit strings and the codecs used to pack certificate labels.
//!
//! Labels are raw bit strings; every scheme defines its own layout on top of
//! the primitives here: fixed-width unsigned fields, two's-complement signed
//! fields, Elias gamma codes for self-delimiting values, and gamma-framed
//! sub-labels for composite schemes.

use std::fmt;

/// An immutable-by-convention sequence of bits, most significant first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn push_bit(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// Appends `value` as exactly `width` bits, most significant first.
    /// Panics if the value does not fit; widths are prover-chosen.
    pub fn push_uint(&mut self, value: u64, width: usize) {
        assert!(width >= 64 || value < (1u64 << width), "uint overflow: {value} in {width} bits");
        for i in (0..width).rev() {
            self.bits.push((value >> i) & 1 == 1);
        }
    }

    /// Appends `value` in two's complement using exactly `width` bits.
    pub fn push_int_tc(&mut self, value: i128, width: usize) {
        assert!(width >= 1 && width <= 127);
        let lo = -(1i128 << (width - 1));
        let hi = (1i128 << (width - 1)) - 1;
        assert!(value >= lo && value <= hi, "int overflow: {value} in {width} bits");
        for i in (0..width).rev() {
            self.bits.push((value >> i) & 1 == 1);
        }
    }

    /// Appends the Elias gamma code of `value` (which must be >= 1).
    pub fn push_gamma(&mut self, value: u64) {
        assert!(value >= 1, "gamma codes start at 1");
        let n = 63 - value.leading_zeros() as usize;
        for _ in 0..n {
            self.bits.push(false);
        }
        for i in (0..=n).rev() {
            self.bits.push((value >> i) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    /// Appends `chunk` prefixed with a gamma code of its length, so a reader
    /// can recover the chunk boundary without external context.
    pub fn push_frame(&mut self, chunk: &BitString) {
        self.push_gamma(chunk.len() as u64 + 1);
        self.extend(chunk);
    }

    /// Hex rendering, MSB first, zero-padded to a whole number of nibbles.
    /// The exact bit length is not recoverable from the hex alone.
    pub fn to_hex(&self) -> String {
        if self.bits.is_empty() {
            return "-".to_string();
        }
        let mut out = String::new();
        let mut nibble = 0u8;
        let mut count = 0;
        for (i, &b) in self.bits.iter().enumerate() {
            nibble = (nibble << 1) | u8::from(b);
            count += 1;
            if count == 4 || i + 1 == self.bits.len() {
                nibble <<= 4 - count;
                out.push(char::from_digit(u32::from(nibble), 16).unwrap());
                nibble = 0;
                count = 0;
            }
        }
        out
    }

    /// Parses the hex form produced by [`to_hex`]; `-` denotes the empty string.
    pub fn from_hex(s: &str) -> Option<Self> {
        if s == "-" {
            return Some(Self::new());
        }
        let mut bits = Vec::with_capacity(s.len() * 4);
        for c in s.chars() {
            let v = c.to_digit(16)? as u8;
            for i in (0..4).rev() {
                bits.push((v >> i) & 1 == 1);
            }
        }
        Some(Self { bits })
    }

    pub fn flipped_bit(&self, i: usize) -> BitString {
        let mut bits = self.bits.clone();
        bits[i] = !bits[i];
        Self { bits }
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"")?;
        for b in &self.bits {
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, "\"")
    }
}

/// Minimal two's-complement width for a value.
pub fn tc_width(value: i128) -> usize {
    for w in 1..=127 {
        let lo = -(1i128 << (w - 1));
        let hi = (1i128 << (w - 1)) - 1;
        if value >= lo && value <= hi {
            return w;
        }
    }
    unreachable!()
}

/// Number of bits needed for an unsigned value (at least 1).
pub fn uint_width(value: u64) -> usize {
    (64 - value.leading_zeros() as usize).max(1)
}

/// Cursor over a [`BitString`]; all reads fail cleanly past the end, so
/// verifiers can treat any decode failure as a rejection.
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        Self { bits, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn at_end(&self) -> bool {
        self.remaining() == 0
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let b = self.bits.bit(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn read_uint(&mut self, width: usize) -> Option<u64> {
        if width > 64 || self.remaining() < width {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Some(v)
    }

    pub fn read_int_tc(&mut self, width: usize) -> Option<i128> {
        if width == 0 || width > 127 || self.remaining() < width {
            return None;
        }
        let neg = self.read_bit()?;
        let mut v: i128 = if neg { -1 } else { 0 };
        for _ in 1..width {
            v = (v << 1) | i128::from(self.read_bit()?);
        }
        Some(v)
    }

    pub fn read_gamma(&mut self) -> Option<u64> {
        let mut n = 0usize;
        loop {
            match self.read_bit()? {
                false => n += 1,
                true => break,
            }
            if n > 63 {
                return None;
            }
        }
        let mut v = 1u64;
        for _ in 0..n {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Some(v)
    }

    /// Reads one gamma-framed chunk.
    pub fn read_frame(&mut self) -> Option<BitString> {
        let len = self.read_gamma()? - 1;
        if self.remaining() < len as usize {
            return None;
        }
        let mut chunk = BitString::new();
        for _ in 0..len {
            chunk.push_bit(self.read_bit()?);
        }
        Some(chunk)
    }
}

/// Splits a label into exactly `count` framed chunks with no trailing bits.
pub fn split_frames(bits: &BitString, count: usize) -> Option<Vec<BitString>> {
    let mut r = BitReader::new(bits);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(r.read_frame()?);
    }
    if r.at_end() {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gamma_round_trip_small() {
        for v in 1..=300u64 {
            let mut bs = BitString::new();
            bs.push_gamma(v);
            let mut r = BitReader::new(&bs);
            assert_eq!(r.read_gamma(), Some(v));
            assert!(r.at_end());
        }
    }

    #[test]
    fn hex_empty_is_dash() {
        assert_eq!(BitString::new().to_hex(), "-");
        assert_eq!(BitString::from_hex("-"), Some(BitString::new()));
    }

    #[test]
    fn tc_widths() {
        assert_eq!(tc_width(0), 1);
        assert_eq!(tc_width(-1), 1);
        assert_eq!(tc_width(1), 2);
        assert_eq!(tc_width(-2), 2);
        assert_eq!(tc_width(127), 8);
        assert_eq!(tc_width(-128), 8);
    }

    #[test]
    fn frame_round_trip() {
        let mut inner = BitString::new();
        inner.push_uint(0b1011, 4);
        let mut outer = BitString::new();
        outer.push_frame(&inner);
        outer.push_frame(&BitString::new());
        let frames = split_frames(&outer, 2).unwrap();
        assert_eq!(frames[0], inner);
        assert!(frames[1].is_empty());
        assert!(split_frames(&outer, 1).is_none());
    }

    proptest! {
        #[test]
        fn uint_round_trip(v in 0u64..u64::MAX / 2, extra in 0usize..8) {
            let width = uint_width(v) + extra;
            let mut bs = BitString::new();
            bs.push_uint(v, width.min(64));
            let mut r = BitReader::new(&bs);
            prop_assert_eq!(r.read_uint(width.min(64)), Some(v));
        }

        #[test]
        fn int_tc_round_trip(v in -(1i128 << 62)..(1i128 << 62), extra in 0usize..8) {
            let width = tc_width(v) + extra;
            let mut bs = BitString::new();
            bs.push_int_tc(v, width);
            let mut r = BitReader::new(&bs);
            prop_assert_eq!(r.read_int_tc(width), Some(v));
        }

        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..64)) {
            // hex pads to nibbles, so compare after truncating back
            let bs = BitString::from_bits(bits.clone());
            let parsed = BitString::from_hex(&bs.to_hex()).unwrap();
            prop_assert!(parsed.len() >= bs.len());
            for (i, b) in bits.iter().enumerate() {
                prop_assert_eq!(parsed.bit(i), Some(*b));
            }
            for i in bs.len()..parsed.len() {
                prop_assert_eq!(parsed.bit(i), Some(false));
            }
        }
    }
}
