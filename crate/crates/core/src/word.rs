//! Fixed-width binary words.
//!
//! A [`BinaryWord`] is a vector `(x_1, ..., x_n)` over `F_2`, packed into a
//! `u32` under the canonical encoding `sum x_i * 2^(n-i)`: the first
//! coordinate is the most significant bit. The same type serves as SDS system
//! state, pattern-graph vertex, and codeword, so every module shares one
//! bit-exact convention.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum supported word length.
pub const MAX_LEN: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    len: u8,
    code: u32,
}

impl BinaryWord {
    /// Builds a word of `len` coordinates from its canonical integer encoding.
    pub fn from_code(len: usize, code: u32) -> Self {
        assert!(len >= 1 && len <= MAX_LEN, "word length {len} out of range");
        let mask = Self::mask(len);
        debug_assert!(code & !mask == 0, "code {code:#x} wider than {len} bits");
        BinaryWord {
            len: len as u8,
            code: code & mask,
        }
    }

    /// Builds a word from coordinates `(x_1, ..., x_n)`, each 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(!bits.is_empty() && bits.len() <= MAX_LEN);
        let mut code = 0u32;
        for &b in bits {
            debug_assert!(b <= 1);
            code = (code << 1) | u32::from(b & 1);
        }
        BinaryWord {
            len: bits.len() as u8,
            code,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::from_code(len, 0)
    }

    pub fn ones(len: usize) -> Self {
        Self::from_code(len, Self::mask(len))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    /// Canonical integer encoding (`x_1` most significant).
    pub fn code(&self) -> u32 {
        self.code
    }

    fn mask(len: usize) -> u32 {
        if len == 32 {
            u32::MAX
        } else {
            (1u32 << len) - 1
        }
    }

    /// Coordinate `x_i`, 1-based.
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "coordinate {i} out of range");
        ((self.code >> (self.len() - i)) & 1) as u8
    }

    /// Returns a copy with coordinate `x_i` (1-based) set to `value`.
    pub fn with_bit(&self, i: usize, value: u8) -> Self {
        assert!(i >= 1 && i <= self.len());
        let pos = self.len() - i;
        let cleared = self.code & !(1u32 << pos);
        BinaryWord {
            len: self.len,
            code: cleared | (u32::from(value & 1) << pos),
        }
    }

    /// Coordinate-wise complement.
    pub fn inv(&self) -> Self {
        BinaryWord {
            len: self.len,
            code: !self.code & Self::mask(self.len()),
        }
    }

    /// Coordinate-wise sum over `F_2`.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                got: other.len(),
                expected: self.len(),
            });
        }
        Ok(BinaryWord {
            len: self.len,
            code: self.code ^ other.code,
        })
    }

    /// Number of coordinates equal to 1.
    pub fn weight(&self) -> u32 {
        self.code.count_ones()
    }

    /// Iterator over the coordinates `x_1, ..., x_n`.
    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.len()).map(move |i| self.bit(i))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_LEN {
            return Err(Error::Parse(format!(
                "word must have between 1 and {MAX_LEN} coordinates, got {:?}",
                s
            )));
        }
        let mut code = 0u32;
        for c in s.chars() {
            code = (code << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => {
                        return Err(Error::Parse(format!(
                            "invalid character {other:?} in word {s:?}"
                        )))
                    }
                };
        }
        Ok(BinaryWord {
            len: s.len() as u8,
            code,
        })
    }
}

impl serde::Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_encoding_is_msb_first() {
        let w = BinaryWord::from_bits(&[0, 0, 0, 1]);
        assert_eq!(w.code(), 1);
        let w = BinaryWord::from_bits(&[1, 0, 1, 1]);
        assert_eq!(w.code(), 0b1011);
        assert_eq!(w.to_string(), "1011");
        assert_eq!(w.bit(1), 1);
        assert_eq!(w.bit(2), 0);
        assert_eq!(w.bit(4), 1);
    }

    #[test]
    fn inv_complements_every_coordinate() {
        let w: BinaryWord = "0001".parse().unwrap();
        assert_eq!(w.inv().to_string(), "1110");
        assert_eq!(BinaryWord::zeros(5).inv(), BinaryWord::ones(5));
        for code in 0..16u32 {
            let w = BinaryWord::from_code(4, code);
            assert_eq!(w.inv().inv(), w);
        }
    }

    #[test]
    fn with_bit_touches_only_one_coordinate() {
        let w: BinaryWord = "0101".parse().unwrap();
        assert_eq!(w.with_bit(1, 1).to_string(), "1101");
        assert_eq!(w.with_bit(4, 0).to_string(), "0100");
        assert_eq!(w.with_bit(2, 1), w);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<BinaryWord>().is_err());
        assert!("012".parse::<BinaryWord>().is_err());
        assert!("0101".parse::<BinaryWord>().is_ok());
    }

    #[test]
    fn full_width_words() {
        let w = BinaryWord::ones(32);
        assert_eq!(w.weight(), 32);
        assert_eq!(w.inv(), BinaryWord::zeros(32));
    }
}
