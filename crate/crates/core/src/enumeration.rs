//! Exhaustive enumeration of all `2^n` strings, and a streaming analyzer for
//! arbitrary byte input.
//!
//! The index range `[0, 2^n)` is cut into a fixed number of contiguous chunks
//! that depends only on `n`. Partial spectra are summed component-wise, so
//! the aggregate is identical for any worker count.

use std::io::{ErrorKind, Read};

use rayon::prelude::*;

use crate::bits::{BitString, RunScanner, RunSpectrum, ENUMERABLE_LIMIT};
use crate::count::BigCount;
use crate::error::{Error, Result};

/// Largest `n` for which per-string rows may be retained.
pub const KEEP_ROWS_LIMIT: u64 = 16;

const CHUNK_LOG2: u64 = 14;

/// Aggregated (and optionally per-string) run spectra over all `n`-strings.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub n: u64,
    pub aggregate: RunSpectrum,
    /// `(index, spectrum)` in ascending index order, when requested.
    pub per_string: Option<Vec<(u64, RunSpectrum)>>,
}

/// Bit order used when unpacking bytes from a stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum BitOrder {
    #[default]
    #[value(name = "msb")]
    MsbFirst,
    #[value(name = "lsb")]
    LsbFirst,
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if n > ENUMERABLE_LIMIT as u64 {
        return Err(Error::AboveEnumerableLimit { n: n as usize });
    }
    Ok(())
}

/// Adds the runs of the `n`-bit string `index` into `acc` (`acc[i-1]` counts
/// length `i`).
#[inline]
fn accumulate_index(index: u64, n: u64, acc: &mut [u128]) {
    let mut w = index << (64 - n);
    let mut remaining = n as u32;
    while remaining > 0 {
        let zeros = w.leading_zeros().min(remaining);
        w = w.checked_shl(zeros).unwrap_or(0);
        remaining -= zeros;
        if remaining == 0 {
            break;
        }
        let ones = w.leading_ones().min(remaining);
        acc[ones as usize - 1] += 1;
        w = w.checked_shl(ones).unwrap_or(0);
        remaining -= ones;
    }
}

fn chunk_ranges(n: u64) -> Vec<(u64, u64)> {
    let total: u128 = 1u128 << n;
    let size: u128 = 1u128 << CHUNK_LOG2.min(n);
    let chunks = total / size;
    (0..chunks)
        .map(|c| ((c * size) as u64, ((c + 1) * size - 1) as u64))
        .collect()
}

fn range_counts(n: u64, lo: u64, hi: u64) -> Vec<u128> {
    let mut acc = vec![0u128; n as usize];
    for idx in lo..=hi {
        accumulate_index(idx, n, &mut acc);
    }
    acc
}

fn aggregate_counts(n: u64) -> Vec<u128> {
    chunk_ranges(n)
        .into_par_iter()
        .map(|(lo, hi)| range_counts(n, lo, hi))
        .reduce(
            || vec![0u128; n as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Aggregate spectrum of the `n`-strings with indices in `lo..=hi`.
pub fn spectrum_of_range(n: u64, lo: u64, hi: u64) -> Result<RunSpectrum> {
    check_n(n)?;
    if hi >> n != 0 {
        return Err(Error::IndexOutOfRange {
            n: n as usize,
            index: hi.into(),
        });
    }
    if lo > hi {
        return Ok(RunSpectrum::empty(n));
    }
    Ok(RunSpectrum::from_small_counts(n, &range_counts(n, lo, hi)))
}

/// Run spectra of every `n`-string, aggregated. Runs on the current rayon
/// pool; see [`enumerate_table_with_threads`] to cap workers.
pub fn enumerate_table(n: u64, keep_rows: bool) -> Result<SpectrumTable> {
    check_n(n)?;
    if keep_rows && n > KEEP_ROWS_LIMIT {
        return Err(Error::LimitExceeded {
            what: "n with per-string rows",
            value: n,
            limit: KEEP_ROWS_LIMIT,
        });
    }
    let counts = aggregate_counts(n);
    let aggregate = RunSpectrum::from_small_counts(n, &counts);
    let per_string = keep_rows.then(|| {
        (0..1u64 << n)
            .map(|idx| {
                let s = BitString::from_index(n as usize, idx).expect("index below 2^n");
                (idx, crate::bits::extract_runs(&s))
            })
            .collect()
    });
    Ok(SpectrumTable {
        n,
        aggregate,
        per_string,
    })
}

/// [`enumerate_table`] on a dedicated pool of `threads` workers.
pub fn enumerate_table_with_threads(
    n: u64,
    keep_rows: bool,
    threads: usize,
) -> Result<SpectrumTable> {
    with_threads(threads, || enumerate_table(n, keep_rows))
}

pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// `t(n)` computed by enumeration.
pub fn total_runs(n: u64) -> Result<BigCount> {
    Ok(enumerate_table(n, false)?.aggregate.total())
}

/// Every `(string, start)` where a run of exactly length `i` begins, over all
/// `n`-strings, in index order.
pub fn run_occurrences(n: u64, i: u64) -> Result<Vec<(BitString, usize)>> {
    check_n(n)?;
    if i < 1 || i > n {
        return Err(Error::RunLengthOutOfRange { i, n });
    }
    let mut out = Vec::new();
    for idx in 0..1u64 << n {
        let s = BitString::from_index(n as usize, idx)?;
        let mut starts = Vec::new();
        s.for_each_run(|k, len| {
            if len as u64 == i {
                starts.push(k);
            }
        });
        out.extend(starts.into_iter().map(|k| (s.clone(), k)));
    }
    Ok(out)
}

/// `freq[k-1][i-1]` = number of `n`-strings with a run of exactly length `i`
/// starting at position `k`.
pub fn start_frequencies(n: u64) -> Result<Vec<Vec<u64>>> {
    check_n(n)?;
    let n_us = n as usize;
    let mut freq = vec![vec![0u64; n_us]; n_us];
    for idx in 0..1u64 << n {
        BitString::from_index(n_us, idx)?.for_each_run(|k, len| freq[k - 1][len - 1] += 1);
    }
    Ok(freq)
}

/// Run spectrum of the bit sequence read from `source`.
///
/// Runs spanning read or word boundaries count once at full length; the
/// trailing run is closed at end of input.
pub fn analyze_stream<R: Read>(mut source: R, order: BitOrder) -> Result<RunSpectrum> {
    let mut scanner = RunScanner::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut record = |_: u64, len: u64| {
        let len = len as usize;
        if counts.len() < len {
            counts.resize(len, 0);
        }
        counts[len - 1] += 1;
    };
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let read = match source.read(&mut buf) {
            Ok(0) => break,
            Ok(k) => k,
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        };
        for group in buf[..read].chunks(8) {
            let mut word = 0u64;
            for (j, &b) in group.iter().enumerate() {
                let b = match order {
                    BitOrder::MsbFirst => b,
                    BitOrder::LsbFirst => b.reverse_bits(),
                };
                word |= u64::from(b) << (56 - 8 * j);
            }
            scanner.push_word(word, 8 * group.len() as u32, &mut record);
        }
    }
    let n = scanner.bits_seen();
    scanner.finish(&mut record);
    Ok(RunSpectrum::from_small_counts(n, &counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{extract_runs, BitString};
    use proptest::prelude::*;

    fn agg(n: u64) -> Vec<u64> {
        enumerate_table(n, false)
            .unwrap()
            .aggregate
            .dense()
            .iter()
            .map(|c| c.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(agg(1), vec![1]);
        assert_eq!(agg(2), vec![2, 1]);
        assert_eq!(agg(3), vec![5, 2, 1]);
        assert_eq!(agg(4), vec![12, 5, 2, 1]);
    }

    #[test]
    fn rows_follow_index_order() {
        let t = enumerate_table(4, true).unwrap();
        let rows = t.per_string.unwrap();
        assert_eq!(rows.len(), 16);
        assert!(rows
            .iter()
            .enumerate()
            .all(|(k, (idx, _))| *idx == k as u64));
        assert_eq!(rows[13].1, extract_runs(&"1101".parse().unwrap()));
        let mut sum = RunSpectrum::empty(4);
        rows.iter().for_each(|(_, s)| sum.merge(s));
        assert_eq!(sum, t.aggregate);
    }

    #[test]
    fn range_errors() {
        assert!(enumerate_table(0, false).is_err());
        assert!(enumerate_table(64, false).is_err());
        assert!(matches!(
            enumerate_table(17, true),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn totals() {
        assert_eq!(total_runs(4).unwrap(), BigCount::from(20u64));
        assert_eq!(total_runs(1).unwrap(), BigCount::from(1u64));
        assert_eq!(total_runs(16).unwrap(), BigCount::from(278528u64));
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let one = enumerate_table_with_threads(18, false, 1).unwrap();
        let many = enumerate_table_with_threads(18, false, 7).unwrap();
        assert_eq!(one.aggregate, many.aggregate);
    }

    #[test]
    fn stream_examples() {
        let spec = analyze_stream(&[0x00u8][..], BitOrder::MsbFirst).unwrap();
        assert!(spec.total().is_zero());
        assert_eq!(spec.n(), 8);
        let spec = analyze_stream(&[0xFFu8][..], BitOrder::MsbFirst).unwrap();
        assert_eq!(spec.get(8), BigCount::from(1u64));
        assert_eq!(spec.total(), BigCount::from(1u64));
        let spec = analyze_stream(&[0b0110_0000u8, 0b1000_0000][..], BitOrder::MsbFirst).unwrap();
        let expanded: BitString = "0110000010000000".parse().unwrap();
        assert_eq!(spec, extract_runs(&expanded));
        assert_eq!(spec.get(1), BigCount::from(1u64));
        assert_eq!(spec.get(2), BigCount::from(1u64));
    }

    #[test]
    fn empty_stream() {
        let spec = analyze_stream(&[][..], BitOrder::MsbFirst).unwrap();
        assert_eq!(spec.n(), 0);
        assert!(spec.total().is_zero());
    }

    #[test]
    fn lsb_order_reverses_each_byte() {
        let spec = analyze_stream(&[0b0000_0110u8][..], BitOrder::LsbFirst).unwrap();
        let expanded: BitString = "01100000".parse().unwrap();
        assert_eq!(spec, extract_runs(&expanded));
    }

    struct Trickle<'a>(&'a [u8]);

    impl Read for Trickle<'_> {
        fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
            if self.0.is_empty() || buf.is_empty() {
                return Ok(0);
            }
            buf[0] = self.0[0];
            self.0 = &self.0[1..];
            Ok(1)
        }
    }

    #[test]
    fn runs_spanning_reads_count_once() {
        let data = [0x0Fu8, 0xFF, 0xFF, 0xF0, 0x01, 0x80];
        let spec = analyze_stream(Trickle(&data), BitOrder::MsbFirst).unwrap();
        assert_eq!(spec.get(24), BigCount::from(1u64));
        assert_eq!(spec.get(2), BigCount::from(1u64));
        assert_eq!(spec.total(), BigCount::from(2u64));
    }

    #[test]
    fn io_errors_propagate() {
        struct Broken;
        impl Read for Broken {
            fn read(&mut self, _: &mut [u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("boom"))
            }
        }
        assert!(matches!(
            analyze_stream(Broken, BitOrder::MsbFirst),
            Err(Error::Io(_))
        ));
    }

    proptest! {
        #[test]
        fn stream_matches_index_expansion(n in 1u64..=63, raw in any::<u64>()) {
            let idx = raw >> (64 - n);
            let s = BitString::from_index(n as usize, idx).unwrap();
            // Left-align the n bits in a byte buffer, then feed only the whole
            // bytes plus a check of the padded tail separately.
            let bytes = (idx << (64 - n)).to_be_bytes();
            let full = (n / 8) as usize;
            let padded = n.div_ceil(8) as usize;
            let spec = analyze_stream(&bytes[..padded], BitOrder::MsbFirst).unwrap();
            let expected = extract_runs(&s);
            // trailing zero padding cannot add or change runs
            prop_assert_eq!(spec.dense()[..n as usize].to_vec(), expected.dense());
            prop_assert_eq!(spec.total(), expected.total());
            if full == padded {
                prop_assert_eq!(spec, expected);
            }
        }

        #[test]
        fn any_byte_split_gives_same_spectrum(data in proptest::collection::vec(any::<u8>(), 0..64), cut in 0usize..64) {
            let whole = analyze_stream(&data[..], BitOrder::MsbFirst).unwrap();
            let cut = cut.min(data.len());
            let chained = analyze_stream((&data[..cut]).chain(&data[cut..]), BitOrder::MsbFirst).unwrap();
            prop_assert_eq!(whole, chained);
        }
    }
}
