use std::fmt;

use crate::error::{Error, Result};

/// Fixed-length vector over GF(2), packed LSB-first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(len.div_ceil(64), 0);
        let mut v = Self { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        if self.len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &F2Vec) -> F2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the inner product with packed `row` of the same length.
    pub fn dot_words(&self, row: &[u64]) -> bool {
        self.words.iter().zip(row).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Hex with bit `i` holding cell `i`, zero-padded to `ceil(len/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits + 2);
        s.push_str("0x");
        for d in (0..digits).rev() {
            let nib = (self.words.get(d / 16).copied().unwrap_or(0) >> ((d % 16) * 4)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    /// Parses `0x...`; set bits beyond `len` are an error.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .ok_or_else(|| Error::Format(format!("state {s:?} lacks 0x prefix")))?;
        if digits.is_empty() {
            return Err(Error::Format(format!("state {s:?} has no digits")));
        }
        let mut v = Self::zeros(len);
        for (pos, c) in digits.chars().rev().enumerate() {
            let nib = c.to_digit(16).ok_or_else(|| Error::Format(format!("bad hex digit {c:?} in {s:?}")))?;
            for b in 0..4 {
                if (nib >> b) & 1 == 1 {
                    let i = pos * 4 + b;
                    if i >= len {
                        return Err(Error::InvalidState(format!("{s} sets cell {i} beyond {len} cells")));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }

    /// Cells `n-1 .. 1`, a space, then cell 0.
    pub fn cells_display(&self) -> String {
        let mut s = String::with_capacity(self.len + 1);
        for i in (1..self.len).rev() {
            s.push(if self.get(i) { '1' } else { '0' });
        }
        s.push(' ');
        if self.len > 0 {
            s.push(if self.get(0) { '1' } else { '0' });
        }
        s
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vec[")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip_and_bounds() {
        let v = F2Vec::from_hex("0x01", 8).unwrap();
        assert!(v.get(0));
        assert_eq!(v.to_hex(), "0x01");
        assert_eq!(v.cells_display(), "0000000 1");
        let w = F2Vec::from_hex("0x80", 7);
        assert!(matches!(w, Err(Error::InvalidState(_))));
        let big = F2Vec::from_hex("0x8000000000000000000000000000000000000001", 160).unwrap();
        assert_eq!(big.weight(), 2);
        assert!(big.get(159));
        assert_eq!(F2Vec::from_hex(&big.to_hex(), 160).unwrap(), big);
    }
}
