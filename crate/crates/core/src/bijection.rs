//! Constructive correspondences between integer compositions and runs.
//!
//! A composition of `n` with `p` parts, read as alternating blocks, gives two
//! `n`-strings (one starting with ones, one with zeros) that together hold
//! exactly `p` runs of ones. Inserting a run of length `i` into one of the
//! `p + 1` slots of a composition of `n - i` gives a distinguished run of
//! length `i` in an `n`-string; over all compositions and slots this hits
//! every run of length `i` in every `n`-string exactly once.
//!
//! Compositions are enumerated by their bar mask: bit `j` of an `(n-1)`-bit
//! mask set means a bar after position `j + 1`. Masks ascend.

use std::fmt;

use crate::bits::BitString;
use crate::count::BigCount;
use crate::error::{Error, Result};

/// Largest `n` accepted by the counting and listing routines.
pub const ENUMERATION_LIMIT: u64 = 24;

/// Ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::EmptyPart);
        }
        Ok(Composition { parts })
    }

    /// Decodes an `(n-1)`-bit bar mask.
    pub fn from_bar_mask(n: u64, mask: u64) -> Self {
        debug_assert!(n >= 1 && (n == 64 || mask >> (n - 1) == 0));
        let mut parts = Vec::new();
        let mut last = 0u64;
        for j in 0..n - 1 {
            if mask >> j & 1 == 1 {
                parts.push(j + 1 - last);
                last = j + 1;
            }
        }
        parts.push(n - last);
        Composition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All `2^(n-1)` compositions of `n`, in ascending bar-mask order.
pub fn compositions(n: u64) -> Result<impl Iterator<Item = Composition>> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if n > 64 {
        return Err(Error::LimitExceeded {
            what: "composition total",
            value: n,
            limit: 64,
        });
    }
    let last = if n == 64 {
        u64::MAX
    } else {
        (1u64 << (n - 1)) - 1
    };
    Ok((0..=last).map(move |mask| Composition::from_bar_mask(n, mask)))
}

/// Strings built from the parts of `c` as alternating blocks, the first
/// starting with ones and the second with zeros.
pub fn composition_to_alternating_pair(c: &Composition) -> (BitString, BitString) {
    let n = c.total() as usize;
    let mut ones_first = BitString::zeros(n);
    let mut zeros_first = BitString::zeros(n);
    let mut pos = 1;
    for (k, &part) in c.parts.iter().enumerate() {
        let target = if k % 2 == 0 {
            &mut ones_first
        } else {
            &mut zeros_first
        };
        for p in pos..pos + part as usize {
            target.set(p, true);
        }
        pos += part as usize;
    }
    (ones_first, zeros_first)
}

/// A distinguished run of `run_length` ones placed into `slot` of `base`
/// (slot 0 precedes the first part, slot `p` follows the last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunPlacement {
    pub base: Composition,
    pub slot: usize,
    pub run_length: u64,
}

impl RunPlacement {
    pub fn new(base: Composition, slot: usize, run_length: u64) -> Result<Self> {
        if slot > base.len() {
            return Err(Error::SlotOutOfRange {
                slot,
                parts: base.len(),
            });
        }
        if run_length < 1 {
            return Err(Error::RunLengthOutOfRange {
                i: 0,
                n: base.total(),
            });
        }
        Ok(RunPlacement {
            base,
            slot,
            run_length,
        })
    }
}

/// Realizes a placement as an `n`-string and the 1-based start of the
/// distinguished run.
///
/// The parts next to the inserted run become zeros so the run is maximal;
/// further out, parts alternate ones and zeros.
pub fn placement_to_string(rp: &RunPlacement, n: u64) -> Result<(BitString, usize)> {
    let base_total = rp.base.total();
    if base_total + rp.run_length != n {
        return Err(Error::TotalMismatch {
            base: base_total,
            i: rp.run_length,
            n,
        });
    }
    if rp.slot > rp.base.len() {
        return Err(Error::SlotOutOfRange {
            slot: rp.slot,
            parts: rp.base.len(),
        });
    }
    let parts = rp.base.parts();
    let mut s = BitString::zeros(n as usize);
    let mut pos = 1usize;
    let fill = |s: &mut BitString, pos: &mut usize, len: u64, ones: bool| {
        if ones {
            for p in *pos..*pos + len as usize {
                s.set(p, true);
            }
        }
        *pos += len as usize;
    };
    for (j, &part) in parts[..rp.slot].iter().enumerate() {
        let distance = rp.slot - 1 - j;
        fill(&mut s, &mut pos, part, distance % 2 == 1);
    }
    let start = pos;
    fill(&mut s, &mut pos, rp.run_length, true);
    for (d, &part) in parts[rp.slot..].iter().enumerate() {
        fill(&mut s, &mut pos, part, d % 2 == 1);
    }
    Ok((s, start))
}

/// One entry of the placement listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementRow {
    /// `None` only for `i = n`, where the base composition is empty (`p = 0`).
    pub base: Option<Composition>,
    pub slot: usize,
    pub string: BitString,
    pub position: usize,
}

impl PlacementRow {
    /// Number of parts in the base composition.
    pub fn parts(&self) -> usize {
        self.base.as_ref().map_or(0, Composition::len)
    }
}

fn check_pair(n: u64, i: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if i < 1 || i > n {
        return Err(Error::RunLengthOutOfRange { i, n });
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded {
            what: "n",
            value: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Every placement of a length-`i` run into a composition of `n - i`,
/// ordered by bar mask, then slot.
pub fn placement_rows(n: u64, i: u64) -> Result<Vec<PlacementRow>> {
    check_pair(n, i)?;
    if i == n {
        let mut all = BitString::zeros(n as usize);
        (1..=n as usize).for_each(|p| all.set(p, true));
        return Ok(vec![PlacementRow {
            base: None,
            slot: 0,
            string: all,
            position: 1,
        }]);
    }
    let mut rows = Vec::new();
    for base in compositions(n - i)? {
        for slot in 0..=base.len() {
            let rp = RunPlacement {
                base: base.clone(),
                slot,
                run_length: i,
            };
            let (string, position) = placement_to_string(&rp, n)?;
            rows.push(PlacementRow {
                base: Some(base.clone()),
                slot,
                string,
                position,
            });
        }
    }
    Ok(rows)
}

/// The image of the placement bijection: `(string, start)` pairs.
pub fn enumerate_placements(n: u64, i: u64) -> Result<impl Iterator<Item = (BitString, usize)>> {
    Ok(placement_rows(n, i)?
        .into_iter()
        .map(|r| (r.string, r.position)))
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::LimitExceeded {
            what: "n",
            value: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Total number of parts over all compositions of `n`.
pub fn count_parts_in_compositions(n: u64) -> Result<BigCount> {
    check_n(n)?;
    let parts: u64 = compositions(n)?.map(|c| c.len() as u64).sum();
    Ok(parts.into())
}

/// Number of parts equal to `v` over all compositions of `n`.
pub fn count_parts_equal(n: u64, v: u64) -> Result<BigCount> {
    check_n(n)?;
    if v < 1 || v > n {
        return Err(Error::RunLengthOutOfRange { i: v, n });
    }
    let hits: u64 = compositions(n)?
        .map(|c| c.parts().iter().filter(|&&x| x == v).count() as u64)
        .sum();
    Ok(hits.into())
}
