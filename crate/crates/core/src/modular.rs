//! Classical q-expansions: Bernoulli numbers, divisor sums, Eisenstein
//! series, η²⁴, the normalized j-function, f = E₄E₆/η²⁴ and the Yau-Zaslow
//! series ∏(1−qⁿ)⁻²⁴.
//!
//! Every constructor takes `order`, the exclusive truncation of the result.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Pow, Zero};

use crate::error::{Result, SeriesError};
use crate::rat::{self, Rat};
use crate::series::{self, LaurentSeries};

/// A q-expansion tagged with its weight. `quasi` marks E₂, which is only
/// quasi-modular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedForm {
    pub weight: i64,
    pub series: LaurentSeries,
    pub quasi: bool,
}

impl WeightedForm {
    pub fn new(weight: i64, series: LaurentSeries) -> Self {
        WeightedForm { weight, series, quasi: false }
    }
}

pub fn bernoulli(n: u32) -> Rat {
    let mut b: Vec<Rat> = vec![rat::one()];
    for m in 1..=n {
        let mut s = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            s += bk * Rat::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k)));
        }
        b.push(-s / rat::int(m as i64 + 1));
    }
    b.pop().unwrap()
}

pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `σ_k(n)` for `0 ≤ n < len` (entry 0 is unused and set to 0).
pub fn sigma_table(k: u32, len: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); len];
    for d in 1..len {
        let p = BigInt::from(d).pow(k);
        let mut m = d;
        while m < len {
            t[m] += &p;
            m += d;
        }
    }
    t
}

/// `E_{2k} = 1 − (4k/B_{2k}) Σ σ_{2k−1}(n) qⁿ`, including the quasi-modular E₂.
pub fn eisenstein(two_k: u32, order: i64) -> Result<WeightedForm> {
    if two_k < 2 || !two_k.is_multiple_of(2) {
        return Err(SeriesError::InvalidArgument(format!("Eisenstein weight {two_k} must be even and at least 2")));
    }
    if order < 1 {
        return Err(SeriesError::InvalidArgument("order must be at least 1".into()));
    }
    let factor = -rat::int(2 * two_k as i64) / bernoulli(two_k);
    let sig = sigma_table(two_k - 1, order as usize);
    let coeffs = (0..order as usize)
        .map(|n| if n == 0 { rat::one() } else { &factor * Rat::from_integer(sig[n].clone()) })
        .collect();
    let mut f = WeightedForm::new(two_k as i64, LaurentSeries::new(0, coeffs, order));
    f.quasi = two_k == 2;
    Ok(f)
}

/// Shorthand for the series of `E_{2k}`.
pub fn e(two_k: u32, order: i64) -> LaurentSeries {
    eisenstein(two_k, order).expect("valid Eisenstein weight").series
}

/// Coefficients of `∏_{n≥1}(1−qⁿ)^s` below `order`, from the logarithmic
/// derivative `θP/P = −s Σ σ₁(n) qⁿ`.
fn eta_power_coeffs(s: i64, order: usize) -> Vec<Rat> {
    let sig = sigma_table(1, order);
    let mut p: Vec<Rat> = vec![rat::one()];
    for n in 1..order {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &sig[k] * p[n - k].numer();
        }
        // all p_n are integers
        p.push(Rat::new(-acc * BigInt::from(s), BigInt::from(n)));
    }
    p
}

/// `η²⁴ = q ∏(1−qⁿ)²⁴`, weight 12.
pub fn eta24(order: i64) -> Result<WeightedForm> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("eta24 needs order at least 2".into()));
    }
    let c = eta_power_coeffs(24, (order - 1) as usize);
    Ok(WeightedForm::new(12, LaurentSeries::new(1, c, order)))
}

/// `j = E₄³/η²⁴ = q⁻¹ + 744 + 196884q + …`.
pub fn j_norm(order: i64) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(SeriesError::InvalidArgument("j needs order at least 1".into()));
    }
    let w = order + 2;
    let e4 = e(4, w);
    let inv = series::invert(&eta24(w)?.series)?;
    Ok(series::mul(&series::pow_int(&e4, 3)?, &inv).truncate(order))
}

/// `f = E₄E₆/η²⁴ = Σ_{n≥−1} c(n) qⁿ`, weight −2.
pub fn f_series(order: i64) -> Result<WeightedForm> {
    if order < 0 {
        return Err(SeriesError::InvalidArgument("f needs order at least 0".into()));
    }
    let w = order + 2;
    let inv = series::invert(&eta24(w)?.series)?;
    let s = series::mul(&series::mul(&e(4, w), &e(6, w)), &inv).truncate(order);
    Ok(WeightedForm::new(-2, s))
}

/// Coefficients `c(n)` of f for `−1 ≤ n < order`, indexed by `n + 1`.
pub fn f_coefficients(order: i64) -> Result<Vec<Rat>> {
    let f = f_series(order)?.series;
    Ok((-1..order).map(|n| f.coeff(n)).collect())
}

/// `∏(1−qⁿ)⁻²⁴ = Σ r_h q^h`.
pub fn yz_series(order: i64) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(SeriesError::InvalidArgument("yz series needs order at least 1".into()));
    }
    Ok(LaurentSeries::new(0, eta_power_coeffs(-24, order as usize), order))
}

/// Named q-expansions exposed by the command line.
pub const FORM_NAMES: [&str; 8] = ["E2", "E4", "E6", "E10", "eta24", "j", "f", "yz"];

pub fn form_by_name(name: &str, order: i64) -> Result<LaurentSeries> {
    match name {
        "E2" => Ok(eisenstein(2, order)?.series),
        "E4" => Ok(eisenstein(4, order)?.series),
        "E6" => Ok(eisenstein(6, order)?.series),
        "E10" => Ok(eisenstein(10, order)?.series),
        "eta24" => Ok(eta24(order)?.series),
        "j" => j_norm(order),
        "f" => Ok(f_series(order)?.series),
        "yz" => yz_series(order),
        _ => Err(SeriesError::InvalidArgument(format!("unknown form {name:?}"))),
    }
}
