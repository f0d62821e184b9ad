//! Rational helpers over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SeriesError};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// "p/q", or "p" when the denominator is 1.
pub fn format(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| SeriesError::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| SeriesError::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(SeriesError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    l
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}
