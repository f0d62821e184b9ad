//! The weight-4 weakly holomorphic basis `F_n = q^{−n} + O(q)`, Hecke
//! operators on q-expansions, and the series identities in Zagier's proof of
//! the Harvey-Moore identity.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::modular::{self, WeightedForm};
use crate::rat::{self, Rat};
use crate::report::{compare_bi, compare_series, Report};
use crate::series::{self, BiSeries, LaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhBasisElement {
    pub index: u32,
    pub form: WeightedForm,
    /// Coefficients of `P` (constant term first) with `F_n = E₄·P(j)`.
    pub j_polynomial: Vec<Rat>,
}

/// `F_n`, the unique weight-4 form with expansion `q^{−n} + O(q)` (and
/// `F_0 = E₄`), known modulo `q^order`.
pub fn fn_basis(n: u32, order: i64) -> Result<WhBasisElement> {
    if order < 1 {
        return Err(SeriesError::InvalidArgument("order must be at least 1".into()));
    }
    let n_i = n as i64;
    let w = order + n_i + 1;
    let e4 = modular::e(4, w);
    let j = modular::j_norm(w)?;
    // spans[k] = E₄·j^k, leading term q^{−k}
    let mut spans = vec![e4.clone()];
    let mut jk = LaurentSeries::one();
    for _ in 0..n {
        jk = series::mul(&jk, &j);
        spans.push(series::mul(&e4, &jk).truncate(order));
    }
    spans[0] = spans[0].truncate(order);
    let mut g = spans[n as usize].clone();
    let mut poly = vec![Rat::zero(); n as usize + 1];
    poly[n as usize] = rat::one();
    if n > 0 {
        for e in (-n_i + 1)..=0 {
            let c = g.coeff(e);
            if c.is_zero() {
                continue;
            }
            let k = (-e) as usize;
            g = series::sub(&g, &spans[k].scale(&c));
            poly[k] -= &c;
        }
    }
    Ok(WhBasisElement { index: n, form: WeightedForm::new(4, g), j_polynomial: poly })
}

/// `T_n` on a weight-k expansion: `b(m) = Σ_{d | gcd(m,n)} d^{k−1} a(mn/d²)`.
/// The output is known modulo `q^⌊T/n⌋` for input truncation `T`.
pub fn hecke(form: &WeightedForm, n: u64) -> Result<WeightedForm> {
    if n == 0 {
        return Err(SeriesError::InvalidArgument("Hecke index must be positive".into()));
    }
    let a = &form.series;
    let n_i = n as i64;
    let out_trunc = if a.is_exact() { series::EXACT } else { Integer::div_floor(&a.truncation(), &n_i) };
    if a.is_zero() {
        return Ok(WeightedForm { weight: form.weight, series: LaurentSeries::zero(out_trunc), quasi: form.quasi });
    }
    let v = a.valuation();
    let start = if v < 0 { v * n_i } else { 0 };
    let end = if a.is_exact() { a.stored_end() * n_i } else { out_trunc };
    let k1 = form.weight - 1;
    let coeffs = (start..end)
        .map(|m| {
            let g = if m == 0 { n_i } else { m.gcd(&n_i) };
            let mut s = Rat::zero();
            for d in 1..=g {
                if g % d != 0 {
                    continue;
                }
                let idx = m * n_i / (d * d);
                if (m * n_i) % (d * d) != 0 {
                    continue;
                }
                let c = a.get(idx).expect("Hecke index inside input truncation");
                if !c.is_zero() {
                    s += rat::pow(&rat::int(d), k1) * c;
                }
            }
            s
        })
        .collect();
    Ok(WeightedForm { weight: form.weight, series: LaurentSeries::new(start, coeffs, out_trunc), quasi: form.quasi })
}

/// `T_n` to output truncation `order`; refuses when the input is too short.
pub fn hecke_to(form: &WeightedForm, n: u64, order: i64) -> Result<WeightedForm> {
    let needed = order * n as i64;
    let have = form.series.truncation();
    if have < needed {
        return Err(SeriesError::InsufficientPrecision { needed, available: have });
    }
    let mut out = hecke(form, n)?;
    out.series = out.series.truncate(order);
    Ok(out)
}

/// `F₁|T_n = n³F_n` and the f-coefficient formula for `F_n`, `n ≤ nmax`,
/// modulo `q^order`.
pub fn verify_hecke(nmax: u32, order: i64) -> Result<Report> {
    if nmax < 1 || order < 1 {
        return Err(SeriesError::InvalidArgument("need nmax >= 1 and order >= 1".into()));
    }
    let f1 = fn_basis(1, nmax as i64 * order)?.form;
    let mut parts = Vec::with_capacity(2 * nmax as usize);
    for n in 1..=nmax {
        let lo = -(n as i64);
        let t = hecke_to(&f1, n as u64, order)?.series;
        let b = fn_basis(n, order)?.form.series;
        let cube = rat::int((n as i64).pow(3));
        parts.push(compare_series(&format!("hecke/T{n}"), &t, &b.scale(&cube), lo..order)?);
        let v = fn_via_hecke(n, order)?.series;
        parts.push(compare_series(&format!("hecke/vp2-{n}"), &v, &b, lo..order)?);
    }
    Ok(Report::all("hecke", parts))
}

/// `−θ³f = F₁` to the given order.
pub fn bol_check(order: i64) -> Result<Report> {
    let f = modular::f_series(order)?.series;
    let lhs = series::neg(&series::theta(&series::theta(&series::theta(&f))));
    let rhs = fn_basis(1, order)?.form.series;
    compare_series("bol", &lhs, &rhs, -1..order)
}

/// `F_n = q^{−n} − Σ_{kd=n, ℓ>0} ℓ³ c(kℓ) q^{ℓd}` from the coefficients of f.
pub fn fn_via_hecke(n: u32, order: i64) -> Result<WeightedForm> {
    if n == 0 || order < 1 {
        return Err(SeriesError::InvalidArgument("need n ≥ 1 and order ≥ 1".into()));
    }
    let n_i = n as i64;
    let f = modular::f_series(n_i * order + 1)?.series;
    let mut coeffs = vec![Rat::zero(); (order + n_i) as usize];
    coeffs[0] = rat::one();
    for d in 1..=n_i {
        if n_i % d != 0 {
            continue;
        }
        let k = n_i / d;
        let mut l = 1;
        while l * d < order {
            let c = f.coeff(k * l);
            coeffs[(l * d + n_i) as usize] -= rat::int(l * l * l) * c;
            l += 1;
        }
    }
    Ok(WeightedForm::new(4, LaurentSeries::new(-n_i, coeffs, order)))
}

/// `Σ_{n=0}^{N} F_n(q2) q1ⁿ` with each `F_n` known modulo `q2^inner_order`.
pub fn fn_generating_series(big_n: u32, inner_order: i64) -> Result<BiSeries> {
    let rows = (0..=big_n)
        .map(|n| fn_basis(n, inner_order).map(|b| b.form.series))
        .collect::<Result<Vec<_>>>()?;
    Ok(BiSeries::new(0, rows, big_n as i64 + 1))
}

/// Cleared-denominator form of the expansion of `f(τ1)E4(τ2)/(j(τ1)−j(τ2))`
/// in powers of q1: `f(q1)E4(q2) = (j(q1) − j(q2))·Σ_{n≤N} F_n(q2) q1ⁿ`.
/// Compares outer exponents `−1 .. N−1` (the range the truncated sum
/// determines) and inner exponents in `[−W, W]`.
pub fn expansion_iii_check(big_n: u32, window: i64) -> Result<Report> {
    if big_n < 1 {
        return Err(SeriesError::InvalidArgument("N must be at least 1".into()));
    }
    let inner = window + big_n as i64 + 2;
    let f = modular::f_series(big_n as i64 + 1)?.series;
    let e4 = modular::e(4, inner);
    let j_outer = modular::j_norm(big_n as i64 + 1)?;
    let j_inner = modular::j_norm(inner)?;
    let lhs = series::bi_mul(&BiSeries::lift_outer(&f), &BiSeries::lift_inner(&e4));
    let diff = series::bi_sub(&BiSeries::lift_outer(&j_outer), &BiSeries::lift_inner(&j_inner));
    let rhs = series::bi_mul(&diff, &fn_generating_series(big_n, inner)?);
    compare_bi("expansion-iii", &lhs, &rhs, -1..big_n as i64, -window..window + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_basis_elements() {
        let f0 = fn_basis(0, 10).unwrap();
        assert_eq!(f0.form.series, modular::e(4, 10));
        assert_eq!(f0.j_polynomial, vec![rat::one()]);
        let f1 = fn_basis(1, 10).unwrap();
        assert_eq!(f1.j_polynomial, vec![rat::int(-984), rat::one()]);
        let f2 = fn_basis(2, 10).unwrap();
        assert_eq!(f2.j_polynomial, vec![rat::int(393768), rat::int(-1728), rat::one()]);
    }

    #[test]
    fn hecke_identity_and_leading_term() {
        let f1 = fn_basis(1, 40).unwrap().form;
        assert_eq!(hecke(&f1, 1).unwrap().series, f1.series);
        for n in 2..=5u64 {
            let t = hecke(&f1, n).unwrap().series;
            assert_eq!(t.valuation(), -(n as i64));
            assert_eq!(t.coeff(-(n as i64)), rat::int((n * n * n) as i64));
        }
    }

    #[test]
    fn hecke_refuses_short_input() {
        let f1 = fn_basis(1, 20).unwrap().form;
        assert!(matches!(hecke_to(&f1, 3, 8), Err(SeriesError::InsufficientPrecision { .. })));
        assert!(hecke_to(&f1, 3, 6).is_ok());
    }
}
