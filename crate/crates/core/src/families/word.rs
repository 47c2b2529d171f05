use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfsm::Lfsm;
use crate::matrix::{BitMatrix, F2Vec};

/// `k x k` block operator. `L` has ones on the superdiagonal, so
/// `(L^s x)_i = x_{i+s}`; `R = L^T`, so `(R^s x)_i = x_{i-s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockOp {
    Identity,
    Left(u32),
    Right(u32),
}

impl BlockOp {
    /// `L^s` for `s > 0`, `R^-s` for `s < 0`, identity for 0.
    pub fn from_shift(s: i32) -> Self {
        match s {
            0 => BlockOp::Identity,
            s if s > 0 => BlockOp::Left(s as u32),
            s => BlockOp::Right(s.unsigned_abs()),
        }
    }

    pub fn matrix(self, k: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(k, k);
        for i in 0..k {
            match self {
                BlockOp::Identity => m.set(i, i, true),
                BlockOp::Left(s) if i + (s as usize) < k => m.set(i, i + s as usize, true),
                BlockOp::Right(s) if i >= s as usize => m.set(i, i - s as usize, true),
                _ => {}
            }
        }
        m
    }

    /// Action on a `k`-bit word with cell `b` at bit `b`.
    pub fn apply(self, w: u64, k: usize) -> u64 {
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        match self {
            BlockOp::Identity => w,
            BlockOp::Left(s) => w.checked_shr(s).unwrap_or(0),
            BlockOp::Right(s) => w.checked_shl(s).unwrap_or(0) & mask,
        }
    }
}

impl fmt::Display for BlockOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockOp::Identity => f.write_str("I"),
            BlockOp::Left(s) => write!(f, "L{s}"),
            BlockOp::Right(s) => write!(f, "R{s}"),
        }
    }
}

impl FromStr for BlockOp {
    type Err = Error;

    /// `I`, `L3`, `R14`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Format(format!("bad block operator {s:?}"));
        if s == "I" {
            return Ok(BlockOp::Identity);
        }
        let (kind, num) = s.split_at(1.min(s.len()));
        let shift: u32 = num.parse().map_err(|_| bad())?;
        match kind {
            "L" => Ok(BlockOp::Left(shift)),
            "R" => Ok(BlockOp::Right(shift)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BlockOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BlockOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordBlock {
    pub row: usize,
    pub col: usize,
    pub op: BlockOp,
}

/// Word-oriented register: `n / k` words of `k` bits; each block adds
/// `op` at block position `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBlockSpec {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<WordBlock>,
}

impl WordBlockSpec {
    pub fn new(n: usize, k: usize, blocks: Vec<WordBlock>) -> Result<Self> {
        if k == 0 || n == 0 || n % k != 0 {
            return Err(Error::InvalidConfig(format!("word size {k} must divide n = {n}")));
        }
        let words = n / k;
        for b in &blocks {
            if b.row >= words || b.col >= words {
                return Err(Error::InvalidConfig(format!("block ({},{}) outside {words} words", b.row, b.col)));
            }
            match b.op {
                BlockOp::Left(s) | BlockOp::Right(s) if s == 0 || s as usize >= k => {
                    return Err(Error::InvalidConfig(format!("shift {s} outside 1..{k}")));
                }
                _ => {}
            }
        }
        Ok(Self { n, k, blocks })
    }

    pub fn words(&self) -> usize {
        self.n / self.k
    }

    /// Word ring skeleton: identity at `(r, r+1 mod n/k)`.
    pub fn ring(n: usize, k: usize) -> Result<Self> {
        let words = n / k.max(1);
        let blocks = (0..words).map(|r| WordBlock { row: r, col: (r + 1) % words, op: BlockOp::Identity }).collect();
        Self::new(n, k, blocks)
    }

    pub fn matrix(&self) -> BitMatrix {
        let mut a = BitMatrix::zeros(self.n, self.n);
        for b in &self.blocks {
            a.xor_block(b.row * self.k, b.col * self.k, &b.op.matrix(self.k));
        }
        a
    }

    pub fn build(&self) -> Result<Lfsm> {
        Lfsm::autonomous(self.matrix())
    }
}

pub fn build_word(spec: &WordBlockSpec) -> Result<Lfsm> {
    spec.build()
}

/// Word-level simulation of a [`WordBlockSpec`] with `k <= 64`: one shift
/// and one xor per block and clock.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordLfsr {
    spec: WordBlockSpec,
    words: Vec<u64>,
}

impl WordLfsr {
    pub fn new(spec: WordBlockSpec) -> Result<Self> {
        if spec.k > 64 {
            return Err(Error::InvalidConfig("word-level stepping needs k <= 64".into()));
        }
        let words = vec![0; spec.words()];
        Ok(Self { spec, words })
    }

    pub fn set_state(&mut self, state: &F2Vec) {
        let k = self.spec.k;
        for (w, word) in self.words.iter_mut().enumerate() {
            *word = (0..k).filter(|&b| state.get(w * k + b)).fold(0, |acc, b| acc | (1 << b));
        }
    }

    pub fn state(&self) -> F2Vec {
        let k = self.spec.k;
        let mut v = F2Vec::zeros(self.spec.n);
        for (w, &word) in self.words.iter().enumerate() {
            for b in 0..k {
                if (word >> b) & 1 == 1 {
                    v.set(w * k + b, true);
                }
            }
        }
        v
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn clock(&mut self) {
        let mut next = vec![0u64; self.words.len()];
        for b in &self.spec.blocks {
            next[b.row] ^= b.op.apply(self.words[b.col], self.spec.k);
        }
        self.words = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn block_operator_shapes() {
        let l = BlockOp::Left(1).matrix(4);
        assert_eq!(l, BitMatrix::from_row_strings(&["0100", "0010", "0001", "0000"]).unwrap());
        assert_eq!(BlockOp::Right(1).matrix(4), l.transpose());
        assert_eq!(BlockOp::Left(3).matrix(8), BlockOp::Left(1).matrix(8).pow(3));
        assert_eq!(BlockOp::from_shift(-2), BlockOp::Right(2));
        assert_eq!("R14".parse::<BlockOp>().unwrap(), BlockOp::Right(14));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(WordBlockSpec::new(40, 7, vec![]).is_err());
        assert!(WordBlockSpec::new(40, 8, vec![WordBlock { row: 5, col: 0, op: BlockOp::Identity }]).is_err());
        assert!(WordBlockSpec::new(40, 8, vec![WordBlock { row: 0, col: 0, op: BlockOp::Left(8) }]).is_err());
    }

    fn spec_strategy() -> impl Strategy<Value = WordBlockSpec> {
        (1usize..6, 2usize..12).prop_flat_map(|(words, k)| {
            let block = (0..words, 0..words, -(k as i32 - 1)..(k as i32))
                .prop_map(|(row, col, s)| WordBlock { row, col, op: BlockOp::from_shift(s) });
            prop::collection::vec(block, 0..8).prop_map(move |extra| {
                let mut spec = WordBlockSpec::ring(words * k, k).unwrap();
                spec.blocks.extend(extra);
                spec
            })
        })
    }

    proptest! {
        #[test]
        fn word_stepping_matches_bit_stepping(spec in spec_strategy(), seed in any::<u64>()) {
            let n = spec.n;
            let bits: Vec<bool> = (0..n).map(|i| (seed.rotate_left(i as u32 % 64) ^ (i as u64)) & 1 == 1).collect();
            let init = F2Vec::from_bools(&bits);
            let mut bit = spec.build().unwrap().with_state(init.clone()).unwrap();
            let mut word = WordLfsr::new(spec).unwrap();
            word.set_state(&init);
            for _ in 0..3 * n {
                prop_assert_eq!(word.state(), bit.state().clone());
                word.clock();
                bit.clock();
            }
        }
    }
}
