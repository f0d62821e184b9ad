//! Random small series and the kernel identities checked on them.

#![allow(dead_code)]

use proptest::prelude::*;
use qseries::rat;
use qseries::series::{self, LaurentSeries};
use qseries::Rat;

/// A finite series with small integer coefficients and a nonzero leading term.
pub fn small_series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..4, prop::collection::vec(-9i64..10, 1..8), 0i64..4).prop_map(|(val, mut c, extra)| {
        if c[0] == 0 {
            c[0] = 1;
        }
        let trunc = val + c.len() as i64 + extra;
        LaurentSeries::from_ints(val, &c, trunc)
    })
}

/// Constant term 1, valuation 0.
pub fn unit_series() -> impl Strategy<Value = LaurentSeries> {
    (prop::collection::vec(-9i64..10, 0..7), 1i64..4).prop_map(|(c, extra)| {
        let mut v = vec![1];
        v.extend(c);
        let trunc = v.len() as i64 + extra;
        LaurentSeries::from_ints(0, &v, trunc)
    })
}

pub fn exponent() -> impl Strategy<Value = Rat> {
    (prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 3, 4, 5, 7]), 1i64..6).prop_map(|(n, d)| rat::frac(n, d))
}

/// One randomized case covering every kernel identity.
#[derive(Debug, Clone)]
pub struct KernelCase {
    pub a: LaurentSeries,
    pub b: LaurentSeries,
    pub c: LaurentSeries,
    pub u: LaurentSeries,
    pub p: Rat,
}

pub fn kernel_case() -> impl Strategy<Value = KernelCase> {
    (small_series(), small_series(), small_series(), unit_series(), exponent())
        .prop_map(|(a, b, c, u, p)| KernelCase { a, b, c, u, p })
}

fn agree(x: &LaurentSeries, y: &LaurentSeries) -> Result<(), String> {
    let t = x.truncation().min(y.truncation());
    let lo = x.valuation().min(y.valuation()).min(t);
    match x.first_difference(y, lo, t) {
        None => Ok(()),
        Some((e, l, r)) => Err(format!("differ at q^{e}: {l} vs {r}")),
    }
}

pub fn check_kernel_case(k: &KernelCase) -> Result<(), String> {
    let KernelCase { a, b, c, u, p } = k;
    agree(&series::mul(a, b), &series::mul(b, a)).map_err(|e| format!("commutativity: {e}"))?;
    let l = series::mul(&series::mul(a, b), c);
    let r = series::mul(a, &series::mul(b, c));
    agree(&l, &r).map_err(|e| format!("associativity: {e}"))?;
    let lhs = series::theta(&series::mul(a, b));
    let rhs = series::add(&series::mul(&series::theta(a), b), &series::mul(a, &series::theta(b)));
    agree(&lhs, &rhs).map_err(|e| format!("Leibniz: {e}"))?;
    let inv = series::invert(a).map_err(|e| e.to_string())?;
    let one = series::mul(a, &inv);
    agree(&one, &LaurentSeries::one()).map_err(|e| format!("inverse: {e}"))?;
    if one.truncation() != a.truncation() - a.valuation() {
        return Err(format!("inverse truncation {} for {a}", one.truncation()));
    }
    let back = series::pow_rat(&series::pow_rat(u, p).map_err(|e| e.to_string())?, &p.recip()).map_err(|e| e.to_string())?;
    agree(&back, u).map_err(|e| format!("pow_rat round trip: {e}"))?;
    if back.truncation() != u.truncation() {
        return Err("pow_rat lost precision".into());
    }
    if p.is_integer() {
        let n: i64 = p.to_integer().try_into().unwrap();
        let ip = series::pow_int(u, n).map_err(|e| e.to_string())?;
        agree(&ip, &series::pow_rat(u, p).unwrap()).map_err(|e| format!("pow_int vs pow_rat: {e}"))?;
    }
    Ok(())
}
