//! Exact rational scalars.
//!
//! The ground field is `num_rational::BigRational`: numerator and denominator
//! are arbitrary-precision integers, the denominator is kept positive and the
//! fraction is always reduced.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p / q`, reduced. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Small rationals in the order 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2,
/// 1/3, -1/3, 2/3, -2/3, 4, ...
///
/// Every rational appears exactly once, so any search that has to avoid a
/// finite set of forbidden values terminates.
pub fn small_rationals() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain((1i64..).flat_map(|height| {
        let mut level = Vec::new();
        for q in 1..=height {
            for p in 1..=height {
                if p.max(q) != height || p.gcd(&q) != 1 {
                    continue;
                }
                level.push(frac(p, q));
                level.push(frac(-p, q));
            }
        }
        level
    }))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// All positive divisors of `|n|`, ascending. `n` must be nonzero.
pub(crate) fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "divisors of zero requested");
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        let mut exp = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            exp += 1;
        }
        if exp > 0 {
            factors.push((p.clone(), exp));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        factors.push((n, 1));
    }
    let mut divisors = vec![BigInt::one()];
    for (prime, exp) in factors {
        let current = divisors.clone();
        let mut power = BigInt::one();
        for _ in 0..exp {
            power *= &prime;
            divisors.extend(current.iter().map(|d| d * &power));
        }
    }
    divisors.sort();
    divisors
}
