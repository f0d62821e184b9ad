use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SeriesError};
use crate::rat::{self, Rat};

/// Truncation value marking a series that is known exactly (a Laurent
/// polynomial). Kept far from `i64::MAX` so sums of a few bounds cannot
/// overflow.
pub const EXACT: i64 = i64::MAX / 8;

/// Any bound this large is treated as exact.
fn clamp(t: i64) -> i64 {
    if t >= EXACT / 2 {
        EXACT
    } else {
        t
    }
}

/// Truncated Laurent series `Σ_{n < truncation} a_n q^n` with exact
/// rational coefficients.
///
/// `coeffs[i]` is the coefficient of `q^(valuation + i)`. Exponents between
/// the last stored coefficient and the truncation are zero. The first stored
/// coefficient is nonzero; the zero series stores nothing and reports its
/// truncation as its valuation.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Rat>,
    trunc: i64,
}

impl LaurentSeries {
    /// Builds `Σ coeffs[i] q^(val+i)` known modulo `q^trunc`. Coefficients at
    /// or beyond the truncation are dropped.
    pub fn new(val: i64, coeffs: Vec<Rat>, trunc: i64) -> Self {
        let mut s = LaurentSeries { val, coeffs, trunc: clamp(trunc) };
        s.normalize();
        s
    }

    pub fn from_ints(val: i64, coeffs: &[i64], trunc: i64) -> Self {
        Self::new(val, coeffs.iter().map(|&c| rat::int(c)).collect(), trunc)
    }

    /// A Laurent polynomial, known exactly.
    pub fn exact(val: i64, coeffs: Vec<Rat>) -> Self {
        Self::new(val, coeffs, EXACT)
    }

    pub fn exact_ints(val: i64, coeffs: &[i64]) -> Self {
        Self::from_ints(val, coeffs, EXACT)
    }

    pub fn zero(trunc: i64) -> Self {
        Self::new(trunc, Vec::new(), trunc)
    }

    pub fn exact_zero() -> Self {
        Self::zero(EXACT)
    }

    pub fn constant(c: Rat) -> Self {
        Self::exact(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(rat::one())
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        Self::exact(e, vec![c])
    }

    /// Series from a coefficient function on `val .. trunc`.
    pub fn from_fn(val: i64, trunc: i64, f: impl Fn(i64) -> Rat) -> Self {
        Self::new(val, (val..trunc).map(f).collect(), trunc)
    }

    fn normalize(&mut self) {
        if self.trunc < EXACT {
            let keep = (self.trunc - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.trunc;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.val += k as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    /// Exponent of the first nonzero coefficient, or the truncation for the
    /// zero series.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= EXACT / 2
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One past the last stored exponent.
    pub fn stored_end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    /// Coefficient of `q^n`, or `None` when `n` is at or beyond the truncation.
    pub fn get(&self, n: i64) -> Option<Rat> {
        if n >= self.trunc {
            return None;
        }
        Some(self.stored(n).cloned().unwrap_or_else(Rat::zero))
    }

    /// Coefficient of `q^n`. Panics when the coefficient is not known.
    pub fn coeff(&self, n: i64) -> Rat {
        self.get(n).unwrap_or_else(|| {
            panic!("coefficient of q^{n} requested beyond truncation {}", self.trunc)
        })
    }

    fn stored(&self, n: i64) -> Option<&Rat> {
        if n < self.val {
            return None;
        }
        self.coeffs.get((n - self.val) as usize)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        let v = self.val;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    /// Same series known only modulo `q^order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.trunc {
            return self.clone();
        }
        Self::new(self.val, self.coeffs.clone(), order)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        let t = clamp(self.trunc + k);
        if self.is_zero() {
            return Self::zero(t);
        }
        Self::new(self.val + k, self.coeffs.clone(), t)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        Self::new(self.val, self.coeffs.iter().map(|x| x * c).collect(), self.trunc)
    }

    pub fn map_coeffs(&self, f: impl Fn(i64, &Rat) -> Rat) -> Self {
        let v = self.val;
        Self::new(
            v,
            self.coeffs.iter().enumerate().map(|(i, c)| f(v + i as i64, c)).collect(),
            self.trunc,
        )
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rat::is_integer)
    }

    /// First exponent below `end` where the two series differ, with both
    /// values. Compares only exponents known in both.
    pub fn first_difference(&self, other: &Self, start: i64, end: i64) -> Option<(i64, Rat, Rat)> {
        let end = end.min(self.trunc).min(other.trunc);
        (start..end).find_map(|n| {
            let a = self.coeff(n);
            let b = other.coeff(n);
            (a != b).then_some((n, a, b))
        })
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let a = c.abs();
            write!(f, "{sep}")?;
            match e {
                0 => write!(f, "{}", rat::format(&a))?,
                _ if a.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{}*q^{e}", rat::format(&a))?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.trunc)?;
        }
        Ok(())
    }
}

pub fn add(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    combine(a, b, |x, y| x + y)
}

pub fn sub(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    combine(a, b, |x, y| x - y)
}

fn combine(a: &LaurentSeries, b: &LaurentSeries, op: impl Fn(&Rat, &Rat) -> Rat) -> LaurentSeries {
    let trunc = a.trunc.min(b.trunc);
    let (lo, hi) = match (a.is_zero(), b.is_zero()) {
        (true, true) => return LaurentSeries::zero(trunc),
        (true, false) => (b.val, b.stored_end()),
        (false, true) => (a.val, a.stored_end()),
        (false, false) => (a.val.min(b.val), a.stored_end().max(b.stored_end())),
    };
    let hi = hi.min(trunc);
    if hi <= lo {
        return LaurentSeries::zero(trunc);
    }
    let z = Rat::zero();
    let coeffs = (lo..hi)
        .map(|n| op(a.stored(n).unwrap_or(&z), b.stored(n).unwrap_or(&z)))
        .collect();
    LaurentSeries::new(lo, coeffs, trunc)
}

pub fn neg(a: &LaurentSeries) -> LaurentSeries {
    LaurentSeries::new(a.val, a.coeffs.iter().map(|c| -c).collect(), a.trunc)
}

/// Integer numerators over a common denominator.
fn integerize(c: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let d = rat::common_denominator(c);
    let v = c.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect();
    (v, d)
}

/// Cauchy product. Valuation adds; truncation is
/// `min(a.val + b.trunc, b.val + a.trunc)`.
pub fn mul(a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
    let trunc = clamp(a.val.saturating_add(b.trunc).min(b.val.saturating_add(a.trunc)));
    if a.is_zero() || b.is_zero() {
        return LaurentSeries::zero(trunc);
    }
    let val = a.val + b.val;
    let full = a.coeffs.len() + b.coeffs.len() - 1;
    let n = ((trunc - val).max(0) as usize).min(full);
    if n == 0 {
        return LaurentSeries::zero(trunc);
    }
    if a.coeffs.len() == 1 {
        return LaurentSeries::new(val, b.coeffs[..n.min(b.coeffs.len())].iter().map(|x| x * &a.coeffs[0]).collect(), trunc);
    }
    if b.coeffs.len() == 1 {
        return LaurentSeries::new(val, a.coeffs[..n.min(a.coeffs.len())].iter().map(|x| x * &b.coeffs[0]).collect(), trunc);
    }
    let (ai, da) = integerize(&a.coeffs);
    let (bi, db) = integerize(&b.coeffs);
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in ai.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bi.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    let den = da * db;
    let coeffs = out.into_iter().map(|c| Rat::new(c, den.clone())).collect();
    LaurentSeries::new(val, coeffs, trunc)
}

/// Multiplicative inverse. The truncation of `1/a` is `a.trunc − 2·a.val`.
pub fn invert(a: &LaurentSeries) -> Result<LaurentSeries> {
    if a.is_zero() {
        return Err(SeriesError::NotInvertible);
    }
    let v = a.val;
    if a.coeffs.len() == 1 {
        let t = if a.is_exact() { EXACT } else { a.trunc - 2 * v };
        return Ok(LaurentSeries::new(-v, vec![a.coeffs[0].recip()], t));
    }
    if a.is_exact() {
        return Err(SeriesError::UnboundedPrecision);
    }
    let trunc = a.trunc - 2 * v;
    let n = (a.trunc - v) as usize;
    let (ai, da) = integerize(&a.coeffs);
    let a0 = ai[0].clone();
    // c_k = b_k·a0^(k+1) stays integral: c_k = −Σ_{i=1..k} a_i c_{k−i} a0^(i−1)
    let mut pw = vec![BigInt::one()];
    for i in 1..n {
        let p = &pw[i - 1] * &a0;
        pw.push(p);
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(n);
    c.push(BigInt::one());
    for k in 1..n {
        let mut s = BigInt::zero();
        for i in 1..=k.min(ai.len() - 1) {
            if !ai[i].is_zero() {
                s += &ai[i] * &c[k - i] * &pw[i - 1];
            }
        }
        c.push(-s);
    }
    let da = Rat::from_integer(da);
    let coeffs = c
        .into_iter()
        .enumerate()
        .map(|(k, ck)| Rat::new(ck, pw[k].clone() * &a0) * &da)
        .collect();
    Ok(LaurentSeries::new(-v, coeffs, trunc))
}

pub fn div(a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
    Ok(mul(a, &invert(b)?))
}

/// Integer power by repeated squaring; negative powers invert first.
pub fn pow_int(a: &LaurentSeries, n: i64) -> Result<LaurentSeries> {
    let base = if n < 0 { invert(a)? } else { a.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = LaurentSeries::one();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul(&sq, &sq);
        }
    }
    Ok(acc)
}

/// `a^p` for rational `p`, on the branch with value 1 at `q = 0`.
/// Requires valuation 0 and constant term 1.
pub fn pow_rat(a: &LaurentSeries, p: &Rat) -> Result<LaurentSeries> {
    if a.val != 0 || !a.coeffs[0].is_one() {
        return Err(SeriesError::BranchAmbiguity);
    }
    if a.coeffs.len() == 1 {
        return Ok(LaurentSeries::new(0, vec![rat::one()], a.trunc));
    }
    if a.is_exact() {
        return Err(SeriesError::UnboundedPrecision);
    }
    let n = a.trunc as usize;
    let z = Rat::zero();
    let ak = |k: usize| a.coeffs.get(k).unwrap_or(&z);
    let p1 = p + rat::one();
    // n·b_n = Σ_{k=1..n} ((p+1)k − n) a_k b_{n−k}
    let mut b: Vec<Rat> = vec![rat::one()];
    for m in 1..n {
        let mut s = Rat::zero();
        for k in 1..=m.min(a.coeffs.len() - 1) {
            let x = ak(k);
            if x.is_zero() {
                continue;
            }
            let w = &p1 * rat::int(k as i64) - rat::int(m as i64);
            s += w * x * &b[m - k];
        }
        b.push(s / rat::int(m as i64));
    }
    Ok(LaurentSeries::new(0, b, a.trunc))
}

/// `q d/dq`.
pub fn theta(a: &LaurentSeries) -> LaurentSeries {
    a.map_coeffs(|e, c| c * rat::int(e))
}

/// Formal derivative `d/dq`.
pub fn derivative(a: &LaurentSeries) -> LaurentSeries {
    let th = theta(a);
    if th.is_zero() {
        let t = if a.is_exact() { EXACT } else { a.trunc - 1 };
        return LaurentSeries::zero(t);
    }
    th.shift(-1)
}

/// Substitution `a(t(q))`. Needs `t.val ≥ 1` and `a.val ≥ 0`.
pub fn compose(a: &LaurentSeries, t: &LaurentSeries) -> Result<LaurentSeries> {
    if t.is_zero() || t.val < 1 {
        return Err(SeriesError::BadSubstitution(t.val));
    }
    if a.val < 0 {
        return Err(SeriesError::NegativeValuation(a.val));
    }
    let tail = if a.is_exact() { EXACT } else { clamp(a.trunc.saturating_mul(t.val)) };
    let mut acc = LaurentSeries::zero(tail);
    let mut power = LaurentSeries::one();
    let mut k = 0i64;
    while k < a.stored_end() && power.val < acc.trunc {
        if let Some(c) = a.stored(k) {
            if !c.is_zero() {
                acc = add(&acc, &power.scale(c));
            }
        }
        power = mul(&power, t);
        k += 1;
    }
    Ok(acc)
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: Self) -> LaurentSeries {
        add(self, rhs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: Self) -> LaurentSeries {
        sub(self, rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: Self) -> LaurentSeries {
        mul(self, rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        neg(self)
    }
}
