//! Exact edge lengths.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedLength(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Inverse of [`parse_rational`]: integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The smallest positive factor `c` such that every `c * x` is an integer and
/// the resulting integers have no common divisor.
pub(crate) fn integer_scale(values: &[Rational]) -> Rational {
    let lcm = values
        .iter()
        .fold(1i64, |acc, v| acc.lcm(v.denom()));
    let gcd = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm)).to_integer())
        .fold(0i64, |acc, n| acc.gcd(&n));
    if gcd.is_zero() {
        Rational::one()
    } else {
        Rational::new(lcm, gcd)
    }
}
