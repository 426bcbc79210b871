use std::fmt;

use crate::error::{Error, Result};

/// Bit-packed 3-chain over the bounded atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitChain {
    words: Vec<u64>,
    len: usize,
}

impl BitChain {
    pub fn zeros(len: usize) -> Self {
        BitChain { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut c = BitChain { words: vec![!0; len.div_ceil(64)], len };
        c.mask_tail();
        c
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut c = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            c.set(i, b);
        }
        c
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::zeros(len);
        for i in ones {
            c.set(i, true);
        }
        c
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        let mut c = BitChain { words, len };
        c.mask_tail();
        c
    }

    fn mask_tail(&mut self) {
        if !self.len.is_multiple_of(64) {
            if let Some(w) = self.words.last_mut() {
                *w &= (1u64 << (self.len % 64)) - 1;
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
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Chain coefficients as integers, for products with `d3`.
    pub fn to_i32(&self) -> Vec<i32> {
        (0..self.len).map(|i| i32::from(self.get(i))).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::dim(format!("bit chains of length {} and {}", self.len, other.len)));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check(other)?;
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        Ok(BitChain::from_words(words, self.len))
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn and_not(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn not(&self) -> Self {
        BitChain::from_words(self.words.iter().map(|w| !w).collect(), self.len)
    }
}

impl fmt::Debug for BitChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitChain(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}
