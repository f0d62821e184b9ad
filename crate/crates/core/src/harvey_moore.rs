//! The Harvey-Moore identity and its lattice-sum form as nested-series
//! equalities.
//!
//! Two-variable series are expanded in q1 first, with Laurent coefficients
//! in q2, i.e. in the regime |q1| < |q2|. There the pole term is
//! `q1/(q2 − q1) = Σ_{n≥1} q1ⁿ q2⁻ⁿ`.

use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::modular;
use crate::rat::{self, Rat};
use crate::report::{compare_bi, Report};
use crate::series::{self, BiSeries, LaurentSeries};
use crate::weakly_holomorphic::fn_generating_series;

/// `f(τ1)E4(τ2)/(j(τ1) − j(τ2))` with outer truncation `n1 + 1` and inner
/// coefficients known at least through `q2^w`, by nested inversion.
pub fn harvey_moore_lhs(n1: i64, w: i64) -> Result<BiSeries> {
    let inner = w + n1 + 3;
    let j1 = modular::j_norm(n1 + 2)?;
    let j2 = modular::j_norm(inner)?;
    let diff = series::bi_sub(&BiSeries::lift_outer(&j1), &BiSeries::lift_inner(&j2));
    let inv = series::bi_invert(&diff)?;
    let f = modular::f_series(n1 + 1)?.series;
    let e4 = modular::e(4, inner);
    let num = series::bi_mul(&BiSeries::lift_outer(&f), &BiSeries::lift_inner(&e4));
    Ok(series::bi_mul(&num, &inv).truncate_outer(n1 + 1))
}

/// `Σ_{n=1}^{n1} q1ⁿ q2⁻ⁿ` with outer truncation `n1 + 1`.
pub fn polar_term(n1: i64) -> BiSeries {
    let rows = (1..=n1).map(|n| LaurentSeries::monomial(rat::one(), -n)).collect();
    BiSeries::new(1, rows, n1 + 1)
}

/// `q1/(q2−q1) + E4(τ2) − Σ_{k,ℓ,d>0} ℓ³ c(kℓ) q1^{kd} q2^{ℓd}` for outer
/// exponents `0..=n1` and inner exponents below `w + 1`.
pub fn harvey_moore_rhs(n1: i64, w: i64) -> Result<BiSeries> {
    let f = modular::f_series(n1 * w + 1)?.series;
    let mut rows: Vec<LaurentSeries> = Vec::with_capacity(n1 as usize + 1);
    rows.push(modular::e(4, w + 1));
    for a in 1..=n1 {
        let mut coeffs = vec![Rat::zero(); (w + 1) as usize];
        for d in 1..=a {
            if a % d != 0 {
                continue;
            }
            let k = a / d;
            let mut l = 1;
            while l * d <= w {
                coeffs[(l * d) as usize] -= f.coeff(k * l) * rat::int(l * l * l);
                l += 1;
            }
        }
        rows.push(LaurentSeries::new(0, coeffs, w + 1));
    }
    let sum = BiSeries::new(0, rows, n1 + 1);
    Ok(series::bi_add(&sum, &polar_term(n1)))
}

/// Compares both sides for `0 ≤ a ≤ n1`, `−w ≤ b ≤ w`, computing the left
/// side once by nested inversion and once as `Σ F_n(q2) q1ⁿ`.
pub fn verify_harmoo(n1: i64, w: i64) -> Result<Report> {
    if n1 < 1 || w < n1 {
        return Err(SeriesError::InvalidArgument("need n1 >= 1 and window >= n1".into()));
    }
    let rhs = harvey_moore_rhs(n1, w)?;
    let lhs = harvey_moore_lhs(n1, w)?;
    let via_basis = fn_generating_series(n1 as u32, w + 1)?;
    let outer = 0..n1 + 1;
    let inner = -w..w + 1;
    Ok(Report::all(
        "harvey-moore",
        [
            compare_bi("harvey-moore", &lhs, &rhs, outer.clone(), inner.clone())?,
            compare_bi("harvey-moore/basis", &via_basis, &rhs, outer, inner)?,
        ],
    ))
}

/// `Σ_{(d1,d2)∈𝒫} d2³ c(d1,d2) q1^{d1}q2^{d2}/(1 − q1^{d1}q2^{d2})` on the
/// window `0 ≤ a ≤ n1`, `|b| ≤ n2`, where `c(k,l)` is the coefficient of
/// `q^{kl}` in `−2f`. Every monomial of every geometric tower that lands in
/// the window is included.
pub fn lattice_sum(n1: i64, n2: i64) -> Result<BiSeries> {
    let f = modular::f_series(n1 * n2 + 1)?.series;
    let width = (2 * n2 + 1) as usize;
    let mut grid = vec![vec![Rat::zero(); width]; n1 as usize + 1];
    for d1 in 0..=n1 {
        for d2 in -d1.min(n2)..=n2 {
            if (d1, d2) == (0, 0) || d1 * d2 < -1 {
                continue;
            }
            let c = f.coeff(d1 * d2) * rat::int(-2 * d2 * d2 * d2);
            if c.is_zero() {
                continue;
            }
            let mut t = 1;
            while t * d1 <= n1 && (t * d2).abs() <= n2 {
                grid[(t * d1) as usize][(t * d2 + n2) as usize] += &c;
                t += 1;
            }
        }
    }
    let rows = grid.into_iter().map(|r| LaurentSeries::new(-n2, r, n2 + 1)).collect();
    Ok(BiSeries::new(0, rows, n1 + 1))
}

/// The lattice sum against `2Σ F_n(q2) q1ⁿ − 2`, the closed form of
/// `Σ d2³ N q1^{d1} q2^{d2}`.
pub fn verify_ppx(n1: i64, n2: i64) -> Result<Report> {
    if n1 < 1 || n2 < 1 {
        return Err(SeriesError::InvalidArgument("need n1 >= 1 and n2 >= 1".into()));
    }
    let lhs = lattice_sum(n1, n2)?;
    let closed = fn_generating_series(n1 as u32, n2 + 1)?.scale(&rat::int(2));
    let rhs = series::bi_sub(&closed, &BiSeries::constant(rat::int(2)));
    compare_bi("ppx", &lhs, &rhs, 0..n1 + 1, -n2..n2 + 1)
}
