//! Probabilities of run starts in a uniformly random `n`-string, expected run
//! counts, and a reproducible Monte Carlo check of those expectations.
//!
//! Sampling uses SplitMix64 (64-bit state). Samples are split into shards of
//! [`SHARD_SIZE`]; shard `w` draws from a generator whose state is
//! `mix64(seed ^ mix64((w + 1) * GOLDEN))`, where `mix64` is the SplitMix64
//! output function and `GOLDEN = 0x9E3779B97F4A7C15`. Each sample consumes
//! `ceil(n / 64)` outputs, bits packed MSB-first, with the unused low bits of
//! the final word discarded. Shard totals are integers, so the report does not
//! depend on how shards are scheduled.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bits::RunScanner;
use crate::closedform::ExactRational;
use crate::count::BigCount;
use crate::enumeration::with_threads;
use crate::error::{Error, Result};

pub const SHARD_SIZE: u64 = 1 << 16;
/// Longest string accepted by the sampler.
pub const MAX_SAMPLE_BITS: u64 = 1 << 20;
/// Cap on `n * samples`.
pub const MAX_TOTAL_BITS: u64 = 1 << 40;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn pow2_inv(e: u64) -> ExactRational {
    BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << e))
}

fn ratio(num: u64, den: u64) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

fn check_position(n: u64, k: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if k < 1 || k > n {
        return Err(Error::PositionOutOfRange { k, n });
    }
    Ok(())
}

/// Probability that some run of ones starts at position `k`.
pub fn prob_run_starts_at(n: u64, k: u64) -> Result<ExactRational> {
    check_position(n, k)?;
    Ok(if k == 1 { ratio(1, 2) } else { ratio(1, 4) })
}

/// Probability that a run of exactly length `i` starts at position `k`.
pub fn prob_run_of_length_at(n: u64, k: u64, i: u64) -> Result<ExactRational> {
    check_position(n, k)?;
    if i < 1 || i > n {
        return Err(Error::RunLengthOutOfRange { i, n });
    }
    let conditional = if k + i <= n {
        pow2_inv(i)
    } else if k + i == n + 1 {
        pow2_inv(i - 1)
    } else {
        return Ok(BigRational::zero());
    };
    Ok(conditional * prob_run_starts_at(n, k)?)
}

/// `E(T) = (n + 1) / 4`.
pub fn expected_total(n: u64) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    Ok(ratio(n + 1, 4))
}

/// `E(T_i) = (n - i + 3) 2^(-i-2)` for `i < n`, and `2^(-n)` for `i = n`.
pub fn expected_runs_of_length(n: u64, i: u64) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if i < 1 || i > n {
        return Err(Error::RunLengthOutOfRange { i, n });
    }
    if i == n {
        return Ok(pow2_inv(n));
    }
    Ok(BigRational::from_integer((n - i + 3).into()) * pow2_inv(i + 2))
}

/// Large-`n` limit of the fraction of runs having length `i`: `2^(-i)`.
pub fn asymptotic_fraction(i: u64) -> Result<ExactRational> {
    if i < 1 {
        return Err(Error::RunLengthOutOfRange { i, n: u64::MAX });
    }
    Ok(pow2_inv(i))
}

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator state for shard `shard` of a run seeded with `seed`.
pub fn shard_seed(seed: u64, shard: u64) -> u64 {
    mix64(seed ^ mix64(shard.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Generator for shard `shard`.
pub fn shard_rng(seed: u64, shard: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(shard_seed(seed, shard))
}

fn serialize_rational<S: Serializer>(v: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Empirical vs exact mean of the run count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub n: u64,
    pub i: Option<u64>,
    pub samples: u64,
    pub seed: u64,
    /// Sum of the per-sample counts.
    pub observed_total: BigCount,
    pub empirical_mean: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub exact_mean: ExactRational,
    pub abs_error: f64,
    pub rel_error: f64,
}

fn rational_to_f64(r: &ExactRational) -> f64 {
    // Both parts may exceed f64 range for large n; scale them down together.
    let (num, den) = (r.numer(), r.denom());
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let num = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let den = (den >> shift).to_f64().unwrap_or(f64::NAN);
    num / den
}

fn count_shard(n: u64, i: Option<u64>, seed: u64, shard: u64, samples: u64) -> u128 {
    let mut rng = shard_rng(seed, shard);
    let words = n.div_ceil(64);
    let tail = (n - 64 * (words - 1)) as u32;
    let mut total = 0u128;
    for _ in 0..samples {
        let mut scanner = RunScanner::new();
        let mut count = 0u64;
        let mut record = |_: u64, len: u64| {
            if i.is_none_or(|want| want == len) {
                count += 1;
            }
        };
        for w in 0..words {
            let valid = if w + 1 == words { tail } else { 64 };
            scanner.push_word(rng.next_u64(), valid, &mut record);
        }
        scanner.finish(&mut record);
        total += u128::from(count);
    }
    total
}

/// Draws `samples` uniform `n`-strings and compares the mean number of runs
/// (of length `i`, or of any length) with its exact expectation.
pub fn monte_carlo(n: u64, i: Option<u64>, samples: u64, seed: u64) -> Result<SampleReport> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if n > MAX_SAMPLE_BITS {
        return Err(Error::LimitExceeded {
            what: "bits per sample",
            value: n,
            limit: MAX_SAMPLE_BITS,
        });
    }
    if samples < 1 {
        return Err(Error::NoSamples);
    }
    let work = n.saturating_mul(samples);
    if work > MAX_TOTAL_BITS {
        return Err(Error::LimitExceeded {
            what: "total sampled bits",
            value: work,
            limit: MAX_TOTAL_BITS,
        });
    }
    let exact_mean = match i {
        Some(i) => expected_runs_of_length(n, i)?,
        None => expected_total(n)?,
    };

    let shards = samples.div_ceil(SHARD_SIZE);
    let total: u128 = (0..shards)
        .into_par_iter()
        .map(|w| {
            let size = SHARD_SIZE.min(samples - w * SHARD_SIZE);
            count_shard(n, i, seed, w, size)
        })
        .sum();

    let observed = BigRational::new(BigInt::from(total), samples.into());
    let empirical_mean = rational_to_f64(&observed);
    let exact = rational_to_f64(&exact_mean);
    let abs_error = rational_to_f64(&(&observed - &exact_mean).abs());
    let rel_error = abs_error / exact;
    Ok(SampleReport {
        n,
        i,
        samples,
        seed,
        observed_total: BigCount::from(total),
        empirical_mean,
        exact_mean,
        abs_error,
        rel_error,
    })
}

/// [`monte_carlo`] on a dedicated pool of `threads` workers.
pub fn monte_carlo_with_threads(
    n: u64,
    i: Option<u64>,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<SampleReport> {
    with_threads(threads, || monte_carlo(n, i, samples, seed))
}

/// Fills `buf` with bytes from the generator of shard 0 for `seed`, eight
/// bytes per output, big-endian.
pub fn seeded_bytes(seed: u64, buf: &mut [u8]) {
    let mut rng = shard_rng(seed, 0);
    for chunk in buf.chunks_mut(8) {
        let bytes = rng.next_u64().to_be_bytes();
        chunk.copy_from_slice(&bytes[..chunk.len()]);
    }
}
