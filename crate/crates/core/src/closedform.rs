//! Exact formulas for run counts over all binary `n`-strings.
//!
//! `r_n(i)` is the number of runs of length `i` summed over all `2^n`
//! strings, `t(n)` the number of runs of any length. Several independent
//! routes are provided so they can be checked against one another:
//!
//! * closed form `(n - i + 3) * 2^(n - i - 2)`, with `r_n(n) = 1`;
//! * recursion on `n`: `r_n(i) = 2 r_{n-1}(i) + 2^(n-i-2)`, base `r_{i+1}(i) = 2`;
//! * recursion on `i`: `r_n(i) = 2 r_n(i+1) + 2^(n-i-2)`, base `r_n(n-1) = 2`;
//! * the unrolled recursion `2^k r_{n-k}(i) + k 2^(n-i-2)`;
//! * the composition sum `sum_p (p + 1) C(n-i-1, p-1)`, started at `p = 0`.
//!
//! Powers of two with a possibly negative exponent are evaluated by
//! multiplying through by 4 and dividing at the end, which is exact wherever
//! the formulas apply.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::count::BigCount;
use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-precision parts.
pub type ExactRational = BigRational;

/// A validated `(n, i)` pair with `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunCountQuery {
    n: u64,
    i: u64,
}

impl RunCountQuery {
    pub fn new(n: u64, i: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::LengthTooSmall { n, min: 1 });
        }
        if i < 1 || i > n {
            return Err(Error::RunLengthOutOfRange { i, n });
        }
        Ok(RunCountQuery { n, i })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn i(&self) -> u64 {
        self.i
    }
}

/// `(factor * 2^exp) / 4`, exact when the caller guarantees divisibility.
fn times_pow2_over_4(factor: u64, exp: u64) -> BigUint {
    let v = BigUint::from(factor) << exp;
    debug_assert!((&v % 4u32).is_zero());
    v >> 2
}

/// `2^(m - 2)` for `m >= 2`.
fn pow2_minus_2(m: u64) -> BigUint {
    BigUint::one() << (m - 2)
}

pub fn r_closed(q: RunCountQuery) -> BigCount {
    let RunCountQuery { n, i } = q;
    if i == n {
        return BigCount::one();
    }
    let d = n - i;
    times_pow2_over_4(d + 3, d).into()
}

pub fn t_closed(n: u64) -> Result<BigCount> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    Ok(times_pow2_over_4(n + 1, n).into())
}

/// Recursion on `n`, evaluated bottom-up from `r_{i+1}(i) = 2`.
pub fn r_recursive(q: RunCountQuery) -> BigCount {
    let RunCountQuery { n, i } = q;
    if i == n {
        return BigCount::one();
    }
    let mut r = BigUint::from(2u32);
    for m in (i + 2)..=n {
        r = (r << 1u32) + pow2_minus_2(m - i);
    }
    r.into()
}

/// `2^k r_{n-k}(i) + k 2^(n-i-2)` for `1 <= i < n - 1` and `0 <= k < n - i`.
/// The value does not depend on `k`.
pub fn r_unrolled(q: RunCountQuery, k: u64) -> Result<BigCount> {
    let RunCountQuery { n, i } = q;
    if i + 1 >= n {
        return Err(Error::RunLengthOutOfRange {
            i,
            n: n.saturating_sub(2),
        });
    }
    if k >= n - i {
        return Err(Error::DepthOutOfRange { k, limit: n - i });
    }
    let residual = r_recursive(RunCountQuery { n: n - k, i }).into_biguint();
    Ok(((residual << k) + pow2_minus_2(n - i) * k).into())
}

/// Recursion on `i`, evaluated downward from `r_n(n-1) = 2`.
pub fn r_recursive_alt(q: RunCountQuery) -> BigCount {
    let RunCountQuery { n, i } = q;
    if i == n {
        return BigCount::one();
    }
    let mut r = BigUint::from(2u32);
    for j in (i..n - 1).rev() {
        r = (r << 1u32) + pow2_minus_2(n - j);
    }
    r.into()
}

/// Binomial coefficient extended to `-1` arguments: `C(-1, -1) = 1` and
/// `C(a, -1) = 0` for `a >= 0`. Other negative arguments are rejected.
pub fn binomial_extended(a: i64, b: i64) -> Result<BigCount> {
    match (a, b) {
        (-1, -1) => Ok(BigCount::one()),
        (a, -1) if a >= 0 => Ok(BigCount::zero()),
        (a, b) if a >= 0 && b >= 0 => {
            if b > a {
                return Ok(BigCount::zero());
            }
            Ok(binomial(a as u64, b as u64).into())
        }
        _ => Err(Error::BinomialDomain { a, b }),
    }
}

fn binomial(a: u64, b: u64) -> BigUint {
    let b = b.min(a - b);
    let mut c = BigUint::one();
    for j in 0..b {
        c = c * (a - j) / (j + 1);
    }
    c
}

/// Row `C(m, 0), ..., C(m, m)` built by the multiplicative recurrence.
fn binomial_row(m: u64) -> impl Iterator<Item = BigUint> {
    let mut c = BigUint::one();
    (0..=m).map(move |j| {
        let out = c.clone();
        if j < m {
            c = &c * (m - j) / (j + 1);
        }
        out
    })
}

/// `sum_{p=1}^{n} p C(n-1, p-1)`.
pub fn t_combinatorial(n: u64) -> Result<BigCount> {
    if n < 1 {
        return Err(Error::LengthTooSmall { n, min: 1 });
    }
    Ok(binomial_row(n - 1)
        .zip(1u64..)
        .map(|(c, p)| c * p)
        .sum::<BigUint>()
        .into())
}

/// `sum_{p=0}^{n-i} (p + 1) C(n-i-1, p-1)`; the `p = 0` term covers `i = n`.
pub fn r_combinatorial(q: RunCountQuery) -> BigCount {
    let RunCountQuery { n, i } = q;
    let m = (n - i) as i64 - 1;
    let mut total = binomial_extended(m, -1)
        .expect("m >= -1 by construction")
        .into_biguint();
    if m >= 0 {
        total += binomial_row(m as u64)
            .zip(1u64..)
            .map(|(c, p)| c * (p + 1))
            .sum::<BigUint>();
    }
    total.into()
}

/// `r_n(i) / t(n)` in lowest terms.
pub fn f_fraction(q: RunCountQuery) -> ExactRational {
    let r = BigInt::from(r_closed(q).into_biguint());
    let t = BigInt::from(t_closed(q.n).expect("n >= 1").into_biguint());
    BigRational::new(r, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, i: u64) -> RunCountQuery {
        RunCountQuery::new(n, i).unwrap()
    }

    fn c(v: u64) -> BigCount {
        BigCount::from(v)
    }

    fn ratio(a: i64, b: i64) -> ExactRational {
        BigRational::new(a.into(), b.into())
    }

    // Brute force over every n-string, counting runs character by character.
    fn brute_r(n: u32, i: usize) -> u64 {
        let mut total = 0u64;
        for idx in 0u64..(1 << n) {
            let s = format!("{idx:0width$b}", width = n as usize);
            total += s.split('0').filter(|block| block.len() == i).count() as u64;
        }
        total
    }

    #[test]
    fn query_validation() {
        assert!(matches!(
            RunCountQuery::new(0, 1),
            Err(Error::LengthTooSmall { .. })
        ));
        assert!(matches!(
            RunCountQuery::new(3, 0),
            Err(Error::RunLengthOutOfRange { .. })
        ));
        assert!(matches!(
            RunCountQuery::new(3, 4),
            Err(Error::RunLengthOutOfRange { .. })
        ));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(r_closed(q(4, 1)), c(12));
        assert_eq!(r_closed(q(4, 4)), c(1));
        assert_eq!(r_closed(q(1, 1)), c(1));
        // i = n - 1 boundary: (4) * 2^{-1} = 2
        assert_eq!(r_closed(q(9, 8)), c(2));
    }

    #[test]
    fn closed_form_against_brute_force_at_twenty() {
        let expected = brute_r(20, 5);
        assert_eq!(expected, 147456);
        assert_eq!(r_closed(q(20, 5)), c(expected));
    }

    #[test]
    fn totals() {
        assert_eq!(t_closed(4).unwrap(), c(20));
        assert_eq!(t_closed(3).unwrap(), c(8));
        assert_eq!(t_closed(1).unwrap(), c(1));
        assert!(t_closed(0).is_err());
        assert_eq!(t_combinatorial(4).unwrap(), c(20));
        assert_eq!(t_combinatorial(2).unwrap(), c(3));
        assert_eq!(t_combinatorial(10).unwrap(), c(2816));
        assert!(t_combinatorial(0).is_err());
    }

    #[test]
    fn recursion_on_n() {
        assert_eq!(r_recursive(q(3, 1)), c(5));
        assert_eq!(r_recursive(q(2, 1)), c(2));
        assert_eq!(r_recursive(q(64, 10)), r_closed(q(64, 10)));
    }

    #[test]
    fn unrolled() {
        assert_eq!(r_unrolled(q(6, 2), 0).unwrap(), c(28));
        assert_eq!(r_unrolled(q(6, 2), 3).unwrap(), c(28));
        assert_eq!(brute_r(5, 1), 28);
        assert_eq!(r_unrolled(q(5, 1), 3).unwrap(), c(28));
        assert!(matches!(
            r_unrolled(q(6, 2), 4),
            Err(Error::DepthOutOfRange { .. })
        ));
        assert!(r_unrolled(q(6, 5), 0).is_err());
        assert!(r_unrolled(q(6, 6), 0).is_err());
    }

    #[test]
    fn recursion_on_i() {
        assert_eq!(r_recursive_alt(q(4, 2)), c(5));
        assert_eq!(r_recursive_alt(q(4, 3)), c(2));
        assert_eq!(r_recursive_alt(q(7, 2)), r_closed(q(7, 2)));
        assert_eq!(r_recursive_alt(q(1, 1)), c(1));
    }

    #[test]
    fn extended_binomial() {
        assert_eq!(binomial_extended(-1, -1).unwrap(), c(1));
        assert_eq!(binomial_extended(5, -1).unwrap(), c(0));
        assert_eq!(binomial_extended(4, 2).unwrap(), c(6));
        assert_eq!(binomial_extended(2, 3).unwrap(), c(0));
        assert_eq!(binomial_extended(0, 0).unwrap(), c(1));
        assert!(binomial_extended(-1, 0).is_err());
        assert!(binomial_extended(-2, -1).is_err());
        assert!(binomial_extended(3, -2).is_err());
    }

    #[test]
    fn binomial_row_matches_pointwise() {
        for m in 0..30u64 {
            for (b, v) in binomial_row(m).enumerate() {
                assert_eq!(v, binomial(m, b as u64));
            }
        }
    }

    #[test]
    fn combinatorial_sum() {
        assert_eq!(r_combinatorial(q(4, 1)), c(12));
        assert_eq!(r_combinatorial(q(4, 2)), c(5));
        assert_eq!(r_combinatorial(q(6, 6)), c(1));
    }

    #[test]
    fn fractions() {
        assert_eq!(f_fraction(q(5, 2)), ratio(1, 4));
        assert_eq!(f_fraction(q(4, 4)), ratio(1, 20));
        assert_eq!(f_fraction(q(4, 1)), ratio(3, 5));
        assert_eq!(f_fraction(q(1, 1)), ratio(1, 1));
    }

    #[test]
    fn row_sums_and_identities() {
        for n in 1..=64u64 {
            let t = t_closed(n).unwrap();
            let row: BigCount = (1..=n).map(|i| r_closed(q(n, i))).sum();
            assert_eq!(row, t);
            let fsum: ExactRational = (1..=n).map(|i| f_fraction(q(n, i))).sum();
            assert!(fsum.is_one());
            if n > 2 {
                assert_eq!(f_fraction(q(n, 2)), ratio(1, 4));
            }
            for i in 2..n {
                if n >= 3 {
                    assert_eq!(r_closed(q(n - 1, i - 1)), r_closed(q(n, i)));
                }
            }
            for i in 1..n.saturating_sub(1) {
                let split = t_closed(n - i).unwrap() + BigCount::pow2(n - i - 1);
                assert_eq!(r_closed(q(n, i)), split);
            }
        }
    }
}
