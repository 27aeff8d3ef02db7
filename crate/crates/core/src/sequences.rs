//! OEIS A045623 and A001792, and their identities with run counts.
//!
//! A045623(j) is the number of 1's in all compositions of `j + 1`;
//! A001792(j) the number of parts in all compositions of `j + 1`. So
//! `r_n(i) = A045623(n - i)` for `i < n` and `t(n) = A001792(n - 1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::closedform::{r_closed, t_closed, RunCountQuery};
use crate::count::BigCount;
use crate::error::{Error, Result};

/// First twenty terms of A045623, offset 0.
pub const A045623_FIXTURE: [u64; 20] = [
    1, 2, 5, 12, 28, 64, 144, 320, 704, 1536, 3328, 7168, 15360, 32768, 69632, 147456, 311296,
    655360, 1376256, 2883584,
];

/// First twenty terms of A001792, offset 0.
pub const A001792_FIXTURE: [u64; 20] = [
    1, 3, 8, 20, 48, 112, 256, 576, 1280, 2816, 6144, 13312, 28672, 61440, 131072, 278528, 589824,
    1245184, 2621440, 5505024,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum SequenceId {
    #[value(name = "A045623")]
    A045623,
    #[value(name = "A001792")]
    A001792,
}

impl SequenceId {
    pub fn term(self, j: i64) -> Result<BigCount> {
        match self {
            SequenceId::A045623 => a045623(j),
            SequenceId::A001792 => a001792(j),
        }
    }

    pub fn fixture(self) -> &'static [u64; 20] {
        match self {
            SequenceId::A045623 => &A045623_FIXTURE,
            SequenceId::A001792 => &A001792_FIXTURE,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceId::A045623 => "A045623",
            SequenceId::A001792 => "A001792",
        })
    }
}

impl FromStr for SequenceId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "A045623" => Ok(SequenceId::A045623),
            "A001792" => Ok(SequenceId::A001792),
            other => Err(format!("unsupported sequence {other}")),
        }
    }
}

/// `(j + 3) 2^(j - 2)` for `j >= 1`, and 1 at `j = 0`.
pub fn a045623(j: i64) -> Result<BigCount> {
    if j < 0 {
        return Err(Error::NegativeIndex(j));
    }
    if j == 0 {
        return Ok(BigCount::one());
    }
    let j = j as u64;
    Ok(((BigUint::from(j + 3) << j) >> 2u32).into())
}

/// `(j + 2) 2^(j - 1)`.
pub fn a001792(j: i64) -> Result<BigCount> {
    if j < 0 {
        return Err(Error::NegativeIndex(j));
    }
    let j = j as u64;
    Ok(((BigUint::from(j + 2) << j) >> 1u32).into())
}

/// Outcome of [`cross_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub n_max: u64,
    pub checked: u64,
    pub first_failure: Option<String>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `r_n(i) = A045623(n - i)` for `1 <= i < n <= n_max` and
/// `t(n) = A001792(n - 1)` for `1 <= n <= n_max`.
pub fn cross_check(n_max: u64) -> Result<CrossCheckReport> {
    if n_max < 2 {
        return Err(Error::LengthTooSmall { n: n_max, min: 2 });
    }
    let mut checked = 0;
    for n in 1..=n_max {
        let t = t_closed(n)?;
        let b = a001792(n as i64 - 1)?;
        checked += 1;
        if t != b {
            return Ok(CrossCheckReport {
                n_max,
                checked,
                first_failure: Some(format!("t({n}) = {t} but A001792({}) = {b}", n - 1)),
            });
        }
        for i in 1..n {
            let r = r_closed(RunCountQuery::new(n, i)?);
            let a = a045623((n - i) as i64)?;
            checked += 1;
            if r != a {
                return Ok(CrossCheckReport {
                    n_max,
                    checked,
                    first_failure: Some(format!("r_{n}({i}) = {r} but A045623({}) = {a}", n - i)),
                });
            }
        }
    }
    Ok(CrossCheckReport {
        n_max,
        checked,
        first_failure: None,
    })
}
