//! Bit strings and run extraction.
//!
//! A run of ones is a maximal block of consecutive 1-bits: it is bounded on
//! the left by a zero or the start of the string, and on the right by a zero
//! or the end of the string. Strings are packed MSB-first into 64-bit words,
//! so position 1 is the most significant bit of word 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::count::BigCount;
use crate::error::{Error, Result};

/// Largest length for which strings are addressed by a single-word index.
pub const ENUMERABLE_LIMIT: usize = 63;

const WORD_BITS: usize = 64;

/// Finite binary string, packed MSB-first. Padding bits of the last word are
/// always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a string from already-packed words. Bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        BitString { len, words }
    }

    /// The `n`-bit binary expansion of `index`, most significant bit first.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        if n > ENUMERABLE_LIMIT {
            return Err(Error::AboveEnumerableLimit { n });
        }
        if index >> n != 0 {
            return Err(Error::IndexOutOfRange {
                n,
                index: index.into(),
            });
        }
        if n == 0 {
            return Ok(BitString::zeros(0));
        }
        Ok(BitString {
            len: n,
            words: vec![index << (WORD_BITS - n)],
        })
    }

    /// Inverse of [`BitString::from_index`].
    pub fn to_index(&self) -> Result<u64> {
        if self.len > ENUMERABLE_LIMIT {
            return Err(Error::AboveEnumerableLimit { n: self.len });
        }
        Ok(match self.words.first() {
            Some(&w) => w >> (WORD_BITS - self.len),
            None => 0,
        })
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

    /// Bit at 1-based `position`.
    pub fn bit(&self, position: usize) -> bool {
        assert!(
            (1..=self.len).contains(&position),
            "position {position} outside 1..={}",
            self.len
        );
        let p = position - 1;
        self.words[p / WORD_BITS] >> (WORD_BITS - 1 - p % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, position: usize, value: bool) {
        assert!(
            (1..=self.len).contains(&position),
            "position {position} outside 1..={}",
            self.len
        );
        let p = position - 1;
        let mask = 1u64 << (WORD_BITS - 1 - p % WORD_BITS);
        if value {
            self.words[p / WORD_BITS] |= mask;
        } else {
            self.words[p / WORD_BITS] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut out = BitString::zeros(self.len);
        for p in 1..=self.len {
            if self.bit(p) {
                out.set(self.len + 1 - p, true);
            }
        }
        out
    }

    /// Calls `emit(start, length)` for every maximal run of ones, left to right.
    pub fn for_each_run(&self, mut emit: impl FnMut(usize, usize)) {
        let mut scanner = RunScanner::new();
        for (w, &word) in self.words.iter().enumerate() {
            let valid = (self.len - w * WORD_BITS).min(WORD_BITS) as u32;
            scanner.push_word(word, valid, |end, len| {
                emit((end - len + 1) as usize, len as usize)
            });
        }
        scanner.finish(|end, len| emit((end - len + 1) as usize, len as usize));
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.len {
            f.write_str(if self.bit(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::zeros(s.len());
        for (p, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(p + 1, true),
                other => return Err(Error::InvalidBit(other)),
            }
        }
        Ok(out)
    }
}

fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => u64::MAX,
        r => !(u64::MAX >> r),
    }
}

/// Incremental run detector over MSB-aligned words.
///
/// Carries the length of the open run across word boundaries, so a run split
/// over several words is reported once at its full length. Positions reported
/// to callbacks are 1-based indices of the run's last bit within the scanned
/// sequence.
#[derive(Debug, Default, Clone)]
pub struct RunScanner {
    open: u64,
    seen: u64,
}

impl RunScanner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total bits consumed so far.
    pub fn bits_seen(&self) -> u64 {
        self.seen
    }

    /// Feeds the top `valid` bits of `word`. `emit(end, len)` fires for every
    /// run closed by a zero inside this word.
    pub fn push_word(&mut self, word: u64, valid: u32, mut emit: impl FnMut(u64, u64)) {
        debug_assert!(valid <= 64);
        let mut w = word;
        let mut remaining = valid;
        let start = self.seen;
        while remaining > 0 {
            let ones = w.leading_ones().min(remaining);
            self.open += u64::from(ones);
            w = w.checked_shl(ones).unwrap_or(0);
            remaining -= ones;
            if remaining == 0 {
                break;
            }
            if self.open > 0 {
                let end = start + u64::from(valid - remaining);
                emit(end, self.open);
                self.open = 0;
            }
            let zeros = w.leading_zeros().min(remaining);
            w = w.checked_shl(zeros).unwrap_or(0);
            remaining -= zeros;
        }
        self.seen += u64::from(valid);
    }

    /// Closes the trailing run (terminated by the end of the sequence).
    pub fn finish(self, mut emit: impl FnMut(u64, u64)) {
        if self.open > 0 {
            emit(self.seen, self.open);
        }
    }
}

/// Counts of runs of ones indexed by run length.
///
/// Lengths above the longest stored entry count zero; the stored vector never
/// reaches past `n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunSpectrum {
    n: u64,
    counts: Vec<BigCount>,
}

impl RunSpectrum {
    /// All-zero spectrum for strings of length `n`.
    pub fn empty(n: u64) -> Self {
        RunSpectrum {
            n,
            counts: Vec::new(),
        }
    }

    /// Builds a spectrum from counts where `counts[0]` is the number of runs
    /// of length 1. Trailing zeros are trimmed.
    pub fn from_counts(n: u64, counts: Vec<BigCount>) -> Result<Self> {
        let mut s = RunSpectrum { n, counts };
        s.trim();
        if s.counts.len() as u64 > n {
            return Err(Error::SpectrumTooLong {
                n,
                longest: s.counts.len() as u64,
            });
        }
        Ok(s)
    }

    pub(crate) fn from_small_counts<T: Copy + Into<BigUint>>(n: u64, counts: &[T]) -> Self {
        let counts = counts.iter().map(|&c| BigCount::from(c.into())).collect();
        let mut s = RunSpectrum { n, counts };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.counts.last().is_some_and(BigCount::is_zero) {
            self.counts.pop();
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Runs of exactly length `i`; zero outside `1..=n`.
    pub fn get(&self, i: u64) -> BigCount {
        if i == 0 {
            return BigCount::zero();
        }
        usize::try_from(i - 1)
            .ok()
            .and_then(|k| self.counts.get(k))
            .cloned()
            .unwrap_or_else(BigCount::zero)
    }

    /// Longest run length with a nonzero count, or 0.
    pub fn longest(&self) -> u64 {
        self.counts.len() as u64
    }

    /// `(length, count)` pairs for every length `1..=longest()`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigCount)> {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, c)| (k as u64 + 1, c))
    }

    /// Dense vector `[count(1), ..., count(n)]`, zero-padded to `n`.
    pub fn dense(&self) -> Vec<BigCount> {
        (1..=self.n).map(|i| self.get(i)).collect()
    }

    /// Total number of runs.
    pub fn total(&self) -> BigCount {
        self.counts.iter().sum()
    }

    /// Sum over lengths of `length * count`, i.e. the number of one-bits covered.
    pub fn weighted_total(&self) -> BigCount {
        self.iter()
            .map(|(i, c)| BigCount::from(c.as_biguint() * i))
            .sum()
    }

    /// Component-wise sum. The result's `n` is the larger of the two.
    pub fn merge(&mut self, other: &RunSpectrum) {
        self.n = self.n.max(other.n);
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), BigCount::zero());
        }
        for (dst, src) in self.counts.iter_mut().zip(&other.counts) {
            *dst += src;
        }
    }

    /// Counts as `u64` values, if every count fits.
    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.counts
            .iter()
            .map(|c| c.as_biguint().to_u64())
            .collect()
    }
}

/// Run spectrum of a single string.
pub fn extract_runs(s: &BitString) -> RunSpectrum {
    let mut counts: Vec<u64> = Vec::new();
    s.for_each_run(|_, len| {
        if counts.len() < len {
            counts.resize(len, 0);
        }
        counts[len - 1] += 1;
    });
    RunSpectrum::from_small_counts(s.len() as u64, &counts)
}

/// The binary expansion of `index` on `n` bits. Accepts arbitrary-precision
/// indices but only `n <= 63` is enumerable.
pub fn index_to_string(n: usize, index: &BigCount) -> Result<BitString> {
    if n > ENUMERABLE_LIMIT {
        return Err(Error::AboveEnumerableLimit { n });
    }
    let idx = index
        .as_biguint()
        .to_u64()
        .ok_or_else(|| Error::IndexOutOfRange {
            n,
            index: index.clone(),
        })?;
    BitString::from_index(n, idx)
}

/// 1-based start positions of maximal runs of exactly length `i`.
pub fn run_start_positions(s: &BitString, i: usize) -> Result<Vec<usize>> {
    if i < 1 || i > s.len() {
        return Err(Error::RunLengthOutOfRange {
            i: i as u64,
            n: s.len() as u64,
        });
    }
    let mut starts = Vec::new();
    s.for_each_run(|start, len| {
        if len == i {
            starts.push(start);
        }
    });
    Ok(starts)
}
