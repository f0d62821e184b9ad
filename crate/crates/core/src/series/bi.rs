use std::fmt;
use std::ops::Range;

use num_traits::Zero;

use super::laurent::{self as ls, LaurentSeries, EXACT};
use crate::error::{Result, SeriesError};
use crate::rat::Rat;

/// Series in an outer variable `q1` whose coefficients are truncated Laurent
/// series in an inner variable `q2`.
///
/// `rows[i]` is the coefficient of `q1^(valuation + i)`. Every row carries
/// its own inner truncation; rows past the stored ones (and below the outer
/// truncation) are exactly zero. The first stored row is never the exact
/// zero series.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    val: i64,
    rows: Vec<LaurentSeries>,
    trunc: i64,
}

fn is_exact_zero(s: &LaurentSeries) -> bool {
    s.is_zero() && s.is_exact()
}

impl BiSeries {
    pub fn new(val: i64, rows: Vec<LaurentSeries>, trunc: i64) -> Self {
        let mut b = BiSeries { val, rows, trunc: if trunc >= EXACT / 2 { EXACT } else { trunc } };
        b.normalize();
        b
    }

    pub fn zero(trunc: i64) -> Self {
        Self::new(trunc, Vec::new(), trunc)
    }

    pub fn one() -> Self {
        Self::lift_inner(&LaurentSeries::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::lift_inner(&LaurentSeries::constant(c))
    }

    fn normalize(&mut self) {
        if self.trunc < EXACT {
            let keep = (self.trunc - self.val).max(0) as usize;
            self.rows.truncate(keep);
        }
        match self.rows.iter().position(|r| !is_exact_zero(r)) {
            None => {
                self.rows.clear();
                self.val = self.trunc;
            }
            Some(k) => {
                if k > 0 {
                    self.rows.drain(..k);
                    self.val += k as i64;
                }
                while self.rows.last().is_some_and(is_exact_zero) {
                    self.rows.pop();
                }
            }
        }
    }

    /// A one-variable series as a function of the outer variable only.
    pub fn lift_outer(a: &LaurentSeries) -> Self {
        if a.is_zero() {
            return Self::zero(a.truncation());
        }
        let rows = (a.valuation()..a.stored_end())
            .map(|n| LaurentSeries::constant(a.coeff(n)))
            .collect();
        Self::new(a.valuation(), rows, a.truncation())
    }

    /// A one-variable series as a function of the inner variable only.
    pub fn lift_inner(a: &LaurentSeries) -> Self {
        Self::new(0, vec![a.clone()], EXACT)
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn stored_end(&self) -> i64 {
        self.val + self.rows.len() as i64
    }

    /// Inner coefficient of `q1^a`, or `None` beyond the outer truncation.
    pub fn row(&self, a: i64) -> Option<LaurentSeries> {
        if a >= self.trunc {
            return None;
        }
        Some(self.stored(a).cloned().unwrap_or_else(LaurentSeries::exact_zero))
    }

    fn stored(&self, a: i64) -> Option<&LaurentSeries> {
        if a < self.val {
            return None;
        }
        self.rows.get((a - self.val) as usize)
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, &LaurentSeries)> {
        let v = self.val;
        self.rows.iter().enumerate().map(move |(i, r)| (v + i as i64, r))
    }

    /// Coefficient of `q1^a q2^b` when known.
    pub fn get(&self, a: i64, b: i64) -> Option<Rat> {
        if a >= self.trunc {
            return None;
        }
        match self.stored(a) {
            None => Some(Rat::zero()),
            Some(r) => r.get(b),
        }
    }

    pub fn coeff(&self, a: i64, b: i64) -> Rat {
        self.get(a, b)
            .unwrap_or_else(|| panic!("coefficient of q1^{a} q2^{b} is beyond the known range"))
    }

    /// Smallest inner valuation and smallest inner truncation over the stored
    /// rows: every inner exponent in this window is known in every row.
    pub fn inner_window(&self) -> (i64, i64) {
        let lo = self.rows.iter().filter(|r| !r.is_zero()).map(|r| r.valuation()).min().unwrap_or(0);
        let hi = self.rows.iter().map(|r| r.truncation()).min().unwrap_or(EXACT);
        (lo, hi)
    }

    pub fn map_rows(&self, f: impl Fn(i64, &LaurentSeries) -> LaurentSeries) -> Self {
        let rows = self.rows().map(|(a, r)| f(a, r)).collect();
        Self::new(self.val, rows, self.trunc)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map_rows(|_, r| r.scale(c))
    }

    pub fn truncate_outer(&self, order: i64) -> Self {
        if order >= self.trunc {
            return self.clone();
        }
        Self::new(self.val, self.rows.clone(), order)
    }

    pub fn truncate_inner(&self, order: i64) -> Self {
        self.map_rows(|_, r| r.truncate(order))
    }

    /// `q1 d/dq1`.
    pub fn theta_outer(&self) -> Self {
        self.map_rows(|a, r| r.scale(&crate::rat::int(a)))
    }

    /// `q2 d/dq2`.
    pub fn theta_inner(&self) -> Self {
        self.map_rows(|_, r| ls::theta(r))
    }

    /// Multiplication by `q1^k`.
    pub fn shift_outer(&self, k: i64) -> Self {
        let t = self.trunc + k;
        if self.is_zero() {
            return Self::zero(t);
        }
        Self::new(self.val + k, self.rows.clone(), t)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiSeries(outer {}..{})", self.val, self.trunc)?;
        for (a, r) in self.rows() {
            writeln!(f, "  q1^{a}: {r}")?;
        }
        Ok(())
    }
}

pub fn bi_add(a: &BiSeries, b: &BiSeries) -> BiSeries {
    bi_combine(a, b, ls::add)
}

pub fn bi_sub(a: &BiSeries, b: &BiSeries) -> BiSeries {
    bi_combine(a, b, ls::sub)
}

fn bi_combine(a: &BiSeries, b: &BiSeries, op: fn(&LaurentSeries, &LaurentSeries) -> LaurentSeries) -> BiSeries {
    let trunc = a.trunc.min(b.trunc);
    let (lo, hi) = match (a.is_zero(), b.is_zero()) {
        (true, true) => return BiSeries::zero(trunc),
        (true, false) => (b.val, b.stored_end()),
        (false, true) => (a.val, a.stored_end()),
        (false, false) => (a.val.min(b.val), a.stored_end().max(b.stored_end())),
    };
    let hi = hi.min(trunc);
    if hi <= lo {
        return BiSeries::zero(trunc);
    }
    let z = LaurentSeries::exact_zero();
    let rows = (lo..hi)
        .map(|n| op(a.stored(n).unwrap_or(&z), b.stored(n).unwrap_or(&z)))
        .collect();
    BiSeries::new(lo, rows, trunc)
}

pub fn bi_neg(a: &BiSeries) -> BiSeries {
    a.map_rows(|_, r| ls::neg(r))
}

/// Nested product. Outer truncation follows the one-variable rule; each
/// inner coefficient carries whatever precision its summands allow.
pub fn bi_mul(a: &BiSeries, b: &BiSeries) -> BiSeries {
    let trunc = a.val.saturating_add(b.trunc).min(b.val.saturating_add(a.trunc));
    if a.is_zero() || b.is_zero() {
        return BiSeries::zero(trunc);
    }
    let val = a.val + b.val;
    let full = a.rows.len() + b.rows.len() - 1;
    let n = ((trunc - val).max(0) as usize).min(full);
    let mut out: Vec<LaurentSeries> = vec![LaurentSeries::exact_zero(); n];
    for (i, x) in a.rows.iter().enumerate().take(n) {
        if is_exact_zero(x) {
            continue;
        }
        for (j, y) in b.rows.iter().enumerate().take(n - i) {
            if is_exact_zero(y) {
                continue;
            }
            out[i + j] = ls::add(&out[i + j], &ls::mul(x, y));
        }
    }
    BiSeries::new(val, out, trunc)
}

/// Nested inverse. The lowest stored row must be an invertible Laurent
/// series; the outer truncation of the result is `trunc − 2·val`.
pub fn bi_invert(a: &BiSeries) -> Result<BiSeries> {
    if a.is_zero() || a.rows[0].is_zero() {
        return Err(SeriesError::NotInvertible);
    }
    let v = a.val;
    let linv = ls::invert(&a.rows[0])?;
    if a.trunc >= EXACT {
        if a.rows.len() == 1 {
            return Ok(BiSeries::new(-v, vec![linv], EXACT));
        }
        return Err(SeriesError::UnboundedPrecision);
    }
    let trunc = a.trunc - 2 * v;
    let n = (a.trunc - v) as usize;
    let mut out: Vec<LaurentSeries> = Vec::with_capacity(n);
    out.push(linv.clone());
    for k in 1..n {
        let mut s = LaurentSeries::exact_zero();
        for i in 1..=k.min(a.rows.len() - 1) {
            let ai = &a.rows[i];
            if is_exact_zero(ai) {
                continue;
            }
            s = ls::add(&s, &ls::mul(ai, &out[k - i]));
        }
        out.push(ls::neg(&ls::mul(&linv, &s)));
    }
    Ok(BiSeries::new(-v, out, trunc))
}

pub fn bi_div(a: &BiSeries, b: &BiSeries) -> Result<BiSeries> {
    Ok(bi_mul(a, &bi_invert(b)?))
}

pub fn bi_pow(a: &BiSeries, n: u32) -> BiSeries {
    let mut acc = BiSeries::one();
    for _ in 0..n {
        acc = bi_mul(&acc, a);
    }
    acc
}

/// Finds the first coefficient in the window where the two sides differ.
/// Fails when some coefficient of the window is not known on either side.
pub fn bi_first_difference(
    a: &BiSeries,
    b: &BiSeries,
    outer: Range<i64>,
    inner: Range<i64>,
) -> Result<Option<(i64, i64, Rat, Rat)>> {
    for x in outer {
        for y in inner.clone() {
            let l = a.get(x, y);
            let r = b.get(x, y);
            match (l, r) {
                (Some(l), Some(r)) => {
                    if l != r {
                        return Ok(Some((x, y, l, r)));
                    }
                }
                _ => {
                    let outer_known = a.trunc.min(b.trunc);
                    let avail = [a, b]
                        .iter()
                        .map(|s| s.row(x).map_or(s.trunc, |r| r.truncation()))
                        .min()
                        .unwrap_or(outer_known);
                    let needed = if x >= outer_known { x + 1 } else { y + 1 };
                    return Err(SeriesError::InsufficientPrecision { needed, available: avail });
                }
            }
        }
    }
    Ok(None)
}
