//! Genus-0 Gromov-Witten and BPS tables of the STU model and the triangular
//! solve for the reduced K3 invariants `r_{0,m,h}`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::modular;
use crate::noether_lefschetz::{discriminant, RefinedNl};
use crate::rat::{self, Rat};
use crate::report::Report;
use crate::weakly_holomorphic::fn_generating_series;

/// Table keyed by fiber degrees `(d1, d2)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeTable {
    pub entries: BTreeMap<(i64, i64), Rat>,
}

/// Gromov-Witten invariants `N_{0,(d1,d2)}`.
pub type GwTable = DegreeTable;
/// BPS counts `n_{0,(d1,d2)}`.
pub type BpsTable = DegreeTable;

impl DegreeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, d1: i64, d2: i64, v: Rat) {
        self.entries.insert((d1, d2), v);
    }

    pub fn get(&self, d1: i64, d2: i64) -> Result<&Rat> {
        self.entries
            .get(&(d1, d2))
            .ok_or_else(|| SeriesError::MissingEntry(format!("degree ({d1}, {d2})")))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.entries.iter()
    }
}

/// `(d1, d2) ≠ (0,0)` with `d1 ≥ 0` and `d1 ≥ −d2`.
pub fn in_positive_cone(d1: i64, d2: i64) -> bool {
    (d1, d2) != (0, 0) && d1 >= 0 && d1 >= -d2
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors_of_gcd(d1: i64, d2: i64) -> impl Iterator<Item = i64> {
    let g = d1.gcd(&d2);
    (1..=g).filter(move |k| g % k == 0)
}

/// Multiple-cover inversion `n(d) = Σ_{k | d} μ(k)/k³ · N(d/k)`.
pub fn bps_from_gw(gw: &GwTable) -> Result<BpsTable> {
    let mut out = BpsTable::new();
    for (&(d1, d2), _) in gw.iter() {
        let mut s = Rat::zero();
        for k in divisors_of_gcd(d1, d2) {
            let mu = mobius(k as u64);
            if mu != 0 {
                s += gw.get(d1 / k, d2 / k)? * rat::frac(mu, k * k * k);
            }
        }
        out.insert(d1, d2, s);
    }
    Ok(out)
}

/// `N(d) = Σ_{k | d} n(d/k)/k³`.
pub fn gw_from_bps(bps: &BpsTable) -> Result<GwTable> {
    let mut out = GwTable::new();
    for (&(d1, d2), _) in bps.iter() {
        let mut s = Rat::zero();
        for k in divisors_of_gcd(d1, d2) {
            s += bps.get(d1 / k, d2 / k)? * rat::frac(1, k * k * k);
        }
        out.insert(d1, d2, s);
    }
    Ok(out)
}

/// Gromov-Witten invariants `N^X` of the unresolved model from
/// `2 + Σ d2³ N q1^{d1} q2^{d2} = 2 Σ_n F_n(q2) q1ⁿ`, for
/// `0 ≤ d1 ≤ d1max`, `−d1 ≤ d2 ≤ d2max`, `d2 ≠ 0`.
pub fn gw_closed_form(d1max: i64, d2max: i64) -> Result<GwTable> {
    if d1max < 0 || d2max < 1 {
        return Err(SeriesError::InvalidArgument("need d1max >= 0 and d2max >= 1".into()));
    }
    let gen = fn_generating_series(d1max as u32, d2max + 1)?;
    let mut gw = GwTable::new();
    for d1 in 0..=d1max {
        for d2 in -d1..=d2max {
            if d2 == 0 {
                continue;
            }
            let c = gen.coeff(d1, d2) * rat::int(2);
            gw.insert(d1, d2, c / rat::int(d2 * d2 * d2));
        }
    }
    Ok(gw)
}

/// BPS counts `n^X̃ = 2n^X` of the resolved model on the same key range as
/// [`gw_closed_form`].
pub fn bps_closed_form(d1max: i64, d2max: i64) -> Result<BpsTable> {
    let mut bps = bps_from_gw(&gw_closed_form(d1max, d2max)?)?;
    for v in bps.entries.values_mut() {
        *v *= rat::int(2);
    }
    Ok(bps)
}

/// Reduced invariants `r_{0,m,h}` keyed by `(m, h)`. Boundary values and the
/// entries forced to vanish by divisibility are answered without storage.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReducedInvariantTable {
    pub entries: BTreeMap<(i64, i64), Rat>,
}

impl ReducedInvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether `2m²` divides `2h−2`, i.e. a class of divisibility m and norm
    /// `2h−2` exists.
    pub fn admissible(m: i64, h: i64) -> bool {
        (h - 1) % (m * m) == 0
    }

    pub fn get(&self, m: i64, h: i64) -> Result<Rat> {
        if h < 0 || !Self::admissible(m, h) {
            return Ok(Rat::zero());
        }
        if h == 0 {
            return Ok(if m == 1 { rat::one() } else { Rat::zero() });
        }
        self.entries
            .get(&(m, h))
            .cloned()
            .ok_or_else(|| SeriesError::MissingEntry(format!("r(m={m}, h={h})")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.entries.iter()
    }
}

/// The constraint at `(d1, d2) = (m(s−1), m)` with the target term
/// `r_{0,m,h}·NL_{m,h}` left out, where `h = m²(s−1) + 1`.
pub fn assemble_constraint(m: i64, s: i64, r: &ReducedInvariantTable, nl: &mut RefinedNl) -> Result<Rat> {
    if m < 1 || s < 1 {
        return Err(SeriesError::InvalidArgument("need m >= 1 and s >= 1".into()));
    }
    let (d1, d2) = (m * (s - 1), m);
    let h = m * m * (s - 1) + 1;
    let mut total = Rat::zero();
    for mp in 1..=m {
        let mut hp = 0;
        while discriminant(hp, d1, d2) >= 0 {
            if (mp, hp) != (m, h) {
                let c = nl.get(mp, hp, d1, d2)?;
                if !c.is_zero() {
                    if m % mp != 0 || hp > h || (mp == m && hp >= h) {
                        return Err(SeriesError::InvalidArgument(format!(
                            "constraint ({d1}, {d2}) is not triangular at m'={mp}, h'={hp}"
                        )));
                    }
                    total += r.get(mp, hp)? * c;
                }
            }
            hp += 1;
        }
    }
    Ok(total)
}

/// Solves the constraints for `r_{0,m,h}`, `1 ≤ h ≤ hmax`, `1 ≤ m ≤ mmax`,
/// in order of increasing h, then m.
pub fn solve_reduced(hmax: i64, mmax: i64, bps: &BpsTable) -> Result<ReducedInvariantTable> {
    let mut r = ReducedInvariantTable::new();
    let mut nl = RefinedNl::new();
    for h in 1..=hmax {
        for m in 1..=mmax {
            if !ReducedInvariantTable::admissible(m, h) {
                continue;
            }
            let s = (h - 1) / (m * m) + 1;
            let (d1, d2) = (m * (s - 1), m);
            let lead = nl.get(m, h, d1, d2)?;
            if lead.is_zero() {
                return Err(SeriesError::NotInvertible);
            }
            let rest = assemble_constraint(m, s, &r, &mut nl)?;
            let v = (bps.get(d1, d2)? - rest) / lead;
            r.entries.insert((m, h), v);
        }
    }
    Ok(r)
}

/// Solves from the closed-form BPS counts and compares every solved entry
/// with the coefficients of `∏(1−qⁿ)⁻²⁴`.
pub fn verify_yau_zaslow(hmax: i64, mmax: i64) -> Result<(ReducedInvariantTable, Report)> {
    if hmax < 1 || mmax < 1 {
        return Err(SeriesError::InvalidArgument("need hmax >= 1 and mmax >= 1".into()));
    }
    let bps = bps_closed_form((hmax - 1).max(1), mmax)?;
    let r = solve_reduced(hmax, mmax, &bps)?;
    let yz = modular::yz_series(hmax + 1)?;
    for (&(m, h), v) in r.iter() {
        let expected = yz.coeff(h);
        if *v != expected {
            return Ok((r.clone(), Report::fail("yau-zaslow", r.entries.len(), vec![m, h], v.clone(), expected)));
        }
    }
    let n = r.entries.len();
    Ok((r, Report::pass("yau-zaslow", n)))
}
