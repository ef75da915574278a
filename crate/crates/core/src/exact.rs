//! Arbitrary-precision integers and rationals, plus the binomial and
//! Bernoulli numbers every other module is built from.
//!
//! Bernoulli numbers use the convention `B_1 = -1/2`. Faulhaber's polynomial
//! and the power-sum product formulas in [`crate::powersum`] are written for
//! that sign; switching to `B_1 = +1/2` silently breaks them.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Unbounded signed integer.
pub type Integer = BigInt;

/// Exact fraction. Always stored reduced with a positive denominator, so
/// zero is `0/1`.
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// `num/den` reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn rat_from(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

/// Nonnegative least common multiple; zero if either argument is zero.
pub fn lcm(a: &Integer, b: &Integer) -> Integer {
    a.lcm(b)
}

/// gcd of every element; zero for an empty or all-zero input.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Integer>) -> Integer {
    values
        .into_iter()
        .fold(Integer::zero(), |acc, v| acc.gcd(v))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// `B_k` with `B_1 = -1/2`, from
/// `B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j`.
///
/// Values are memoized in a process-wide table, so computing `B_0..=B_K`
/// costs `O(K^2)` rational operations in total. The table only grows under
/// the write lock and readers never see a partially computed entry.
pub fn bernoulli(k: u32) -> Rational {
    let idx = k as usize;
    let table = BERNOULLI.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = table.read().expect("bernoulli cache poisoned").get(idx) {
        return b.clone();
    }
    let mut table = table.write().expect("bernoulli cache poisoned");
    while table.len() <= idx {
        let n = table.len() as u32;
        let sum = (0..n).fold(Rational::zero(), |acc, j| {
            acc + rat_from(binomial(n + 1, j)) * &table[j as usize]
        });
        table.push(-sum / rat_from(Integer::from(n + 1)));
    }
    table[idx].clone()
}

/// `true` when the rational has denominator 1.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// The integer value of an integral rational.
pub fn to_integer(r: &Rational) -> Option<Integer> {
    is_integral(r).then(|| r.numer().clone())
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    s.trim()
        .parse::<Integer>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(rat_from(parse_integer(s)?)),
        Some((p, q)) => {
            let den = parse_integer(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_integer(p)?, den))
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if is_integral(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn pow2(e: u32) -> Integer {
    Integer::one() << e as usize
}
