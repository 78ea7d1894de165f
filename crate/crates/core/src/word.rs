//! Finite binary words and the Thue–Morse construction.
//!
//! The sequence is built from blocks `A_0 = 0` and
//! `A_n = complement(A_0 A_1 ⋯ A_{n-1})`, so `|A_n| = 2^(n-1)` for `n ≥ 1` and
//! `ξ = A_0 A_1 A_2 ⋯ = 0 1 10 1001 10010110 ⋯`.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Cap, LabError, Result};

/// A finite word over `{0, 1}`, stored as packed bits.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: BitVec<u64, Lsb0>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn zeros(len: usize) -> Self {
        Word {
            bits: BitVec::repeat(false, len),
        }
    }

    pub fn ones(len: usize) -> Self {
        Word {
            bits: BitVec::repeat(true, len),
        }
    }

    /// Builds a word from symbols; any nonzero value counts as `1`.
    pub fn from_symbols<I: IntoIterator<Item = u8>>(symbols: I) -> Self {
        Word {
            bits: symbols.into_iter().map(|s| s != 0).collect(),
        }
    }

    /// The length-`len` word holding the low `len` bits of `value`, most
    /// significant first.
    pub fn from_int(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        Word::from_symbols((0..len).rev().map(|k| ((value >> k) & 1) as u8))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Symbol at 1-based position `i`.
    ///
    /// Panics when `i` is zero or past the end.
    pub fn symbol(&self, i: usize) -> u8 {
        assert!(
            i >= 1 && i <= self.len(),
            "symbol index {i} out of 1..={}",
            self.len()
        );
        self.bits[i - 1] as u8
    }

    pub fn first(&self) -> Option<u8> {
        self.bits.first().map(|b| *b as u8)
    }

    pub fn last(&self) -> Option<u8> {
        self.bits.last().map(|b| *b as u8)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        self.bits.iter().by_vals().map(u8::from)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn push(&mut self, symbol: u8) {
        self.bits.push(symbol != 0);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.bits.extend_from_bitslice(&other.bits);
    }

    /// Flips every symbol (the bar operation).
    pub fn complement(&self) -> Word {
        Word {
            bits: !self.bits.clone(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `m` copies of `self`, concatenated.
    pub fn power(&self, m: usize) -> Word {
        let mut out = BitVec::with_capacity(self.len() * m);
        for _ in 0..m {
            out.extend_from_bitslice(&self.bits);
        }
        Word { bits: out }
    }

    /// The `len` symbols starting at 1-based position `start`.
    pub fn subword(&self, start: usize, len: usize) -> Word {
        assert!(start >= 1, "subword start is 1-based");
        let from = start - 1;
        Word {
            bits: self.bits[from..from + len].to_bitvec(),
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            bits: self.bits[..len].to_bitvec(),
        }
    }

    /// Drops the first `k` symbols.
    pub fn drop_front(&self, k: usize) -> Word {
        Word {
            bits: self.bits[k.min(self.len())..].to_bitvec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.len() <= other.len() && other.bits[..self.len()] == self.bits
    }

    /// Cyclic left rotation by `k`.
    pub fn rotate_left(&self, k: usize) -> Word {
        let mut bits = self.bits.clone();
        if !bits.is_empty() {
            bits.rotate_left(k % self.len());
        }
        Word { bits }
    }

    pub fn rotate_right(&self, k: usize) -> Word {
        let mut bits = self.bits.clone();
        if !bits.is_empty() {
            bits.rotate_right(k % self.len());
        }
        Word { bits }
    }

    /// Number of ones among the first `len` symbols.
    pub fn count_ones_prefix(&self, len: usize) -> usize {
        self.bits[..len].count_ones()
    }

    pub(crate) fn raw_words(&self) -> &[u64] {
        self.bits.as_raw_slice()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .bits
            .iter()
            .map(|b| if *b { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LabError::Parse(format!(
                    "{other:?} is not a binary symbol in {s:?}"
                ))),
            })
            .collect::<Result<BitVec<u64, Lsb0>>>()
            .map(|bits| Word { bits })
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads one word per line. Lines must be newline-terminated and contain only
/// `0` and `1`.
pub fn read_words<R: BufRead>(reader: R) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut reader = reader;
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader
            .read_line(&mut line)
            .map_err(|e| LabError::Parse(e.to_string()))?;
        if read == 0 {
            return Ok(out);
        }
        let body = line.strip_suffix('\n').ok_or_else(|| {
            LabError::Parse(format!("line {} is not newline-terminated", out.len() + 1))
        })?;
        out.push(body.parse()?);
    }
}

pub fn write_words<W: Write>(mut writer: W, words: &[Word]) -> io::Result<()> {
    for w in words {
        writeln!(writer, "{w}")?;
    }
    Ok(())
}

/// The block `A_n`.
pub fn thue_morse_block(n: usize) -> Word {
    if n == 0 {
        return Word::zeros(1);
    }
    // `acc` holds A_0 ⋯ A_{k-1}; appending A_k = complement(acc) doubles it.
    let mut acc = Word::zeros(1);
    for _ in 1..n {
        let next = acc.complement();
        acc.extend_from(&next);
    }
    acc.complement()
}

/// `ξ_1 ⋯ ξ_len`, built by concatenating blocks and truncating.
pub fn thue_morse_prefix(len: usize, cap: Cap) -> Result<Word> {
    cap.check(len)?;
    let mut acc = Word::new();
    let mut n = 0;
    while acc.len() < len {
        acc.extend_from(&thue_morse_block(n));
        n += 1;
    }
    acc.bits.truncate(len);
    Ok(acc)
}

/// The two shapes a length-`2|A_n|` aligned block of `ξ` can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockForm {
    /// `A_n · complement(A_n)`
    BlockThenComplement,
    /// `complement(A_n) · A_n`
    ComplementThenBlock,
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockForm::BlockThenComplement => f.write_str("A_n·Ā_n"),
            BlockForm::ComplementThenBlock => f.write_str("Ā_n·A_n"),
        }
    }
}

/// Length of `A_n`.
pub fn block_len(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        1 << (n - 1)
    }
}

/// Classifies `ξ_{2j|A_n|+1} ⋯ ξ_{2(j+1)|A_n|}` against the pair
/// `{A_n Ā_n, Ā_n A_n}`, reading symbols from the materialized prefix `xi`.
pub fn classify_block(xi: &Word, n: usize, j: usize) -> Result<BlockForm> {
    if n == 0 {
        return Err(LabError::InvalidParameter(
            "block classification needs n ≥ 1".into(),
        ));
    }
    let half = block_len(n);
    let end = 2 * (j + 1) * half;
    if end > xi.len() {
        return Err(LabError::CapExceeded {
            requested: end,
            cap: xi.len(),
        });
    }
    let block = thue_morse_block(n);
    let from = 2 * j * half;
    let left = &xi.bits[from..from + half];
    let right = &xi.bits[from + half..end];
    let bar = block.complement();
    if left == block.bits && right == bar.bits {
        Ok(BlockForm::BlockThenComplement)
    } else if left == bar.bits && right == block.bits {
        Ok(BlockForm::ComplementThenBlock)
    } else {
        Err(LabError::BlockMismatch { n, j })
    }
}

/// For every period candidate `p ≤ p_max`, the first 1-based index `i ≤ L - p`
/// with `ξ_i ≠ ξ_{i+p}`, where `L = xi.len()`.
pub fn schedule_aperiodicity(xi: &Word, p_max: usize) -> Result<Vec<(usize, usize)>> {
    let len = xi.len();
    if len <= 2 * p_max {
        return Err(LabError::InvalidParameter(format!(
            "aperiodicity scan needs L > 2·p_max (L={len}, p_max={p_max})"
        )));
    }
    (1..=p_max)
        .map(|p| {
            (1..=len - p)
                .find(|&i| xi.bits[i - 1] != xi.bits[i - 1 + p])
                .map(|i| (p, i))
                .ok_or(LabError::NoWitnessFound { p })
        })
        .collect()
}
