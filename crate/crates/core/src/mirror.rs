//! Series-level checks of the STU mirror map at `q3 = 0`: the
//! hypergeometric/Fricke identity, the closed-form mirror maps, the Yukawa
//! couplings and the prepotential identity that feeds the BPS closed form.
//!
//! Two-variable series are expanded with `q̂1` as the outer variable and
//! `q̂2` as the inner one, unless a function says otherwise.

use num_traits::Zero;

use crate::error::{Result, SeriesError};
use crate::harvey_moore::harvey_moore_rhs;
use crate::modular;
use crate::rat::{self, Rat};
use crate::report::{compare_bi, compare_series, Report};
use crate::series::{self, bi_add, bi_invert, bi_mul, bi_sub, BiSeries, LaurentSeries, EXACT};

/// `μ = 1728`.
pub const MU: i64 = 1728;

/// One operator of the three-parameter Picard-Fuchs system, in the variables
/// `u_i` with `θ_i = u_i ∂/∂u_i`. The `u_i` factor multiplies on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfOperator {
    pub name: &'static str,
    pub expression: &'static str,
}

/// The system is recorded for reference only; the checks below work with its
/// one-variable reduction in `y = j`.
pub const PICARD_FUCHS: [PfOperator; 3] = [
    PfOperator { name: "L1", expression: "θ1(θ1 − 2θ2 − 2θ3) − 12(6θ1 − 5)(6θ1 − 1)u1" },
    PfOperator { name: "L2", expression: "θ2² − (2θ2 + 2θ3 − θ1 − 2)(2θ2 + 2θ3 − θ1 − 1)u2" },
    PfOperator { name: "L3", expression: "θ3² − (2θ2 + 2θ3 − θ1 − 2)(2θ2 + 2θ3 − θ1 − 1)u3" },
];

/// The reduced operator `(y − μ)y²∂² + (y − μ/2)y∂ − 60`.
pub const REDUCED_OPERATOR: &str = "(y − 1728)y²∂y² + (y − 864)y∂y − 60";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeometricParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HypergeometricParams {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if c.is_integer() && c <= Rat::zero() {
            return Err(SeriesError::InvalidArgument(format!("c = {c} is a nonpositive integer")));
        }
        Ok(HypergeometricParams { a, b, c })
    }

    /// `(1/12, 5/12; 1)`.
    pub fn klein() -> Self {
        HypergeometricParams { a: rat::frac(1, 12), b: rat::frac(5, 12), c: rat::one() }
    }
}

/// `₂F₁(a, b; c; t) = Σ (a)ₙ(b)ₙ/((c)ₙ n!) tⁿ` modulo `t^order`.
pub fn hyp2f1(p: &HypergeometricParams, order: i64) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(SeriesError::InvalidArgument("order must be at least 1".into()));
    }
    let mut coeffs = Vec::with_capacity(order as usize);
    let mut c = rat::one();
    for n in 0..order {
        coeffs.push(c.clone());
        let nr = rat::int(n);
        c = c * (&p.a + &nr) * (&p.b + &nr) / ((&p.c + &nr) * (&nr + rat::one()));
    }
    Ok(LaurentSeries::new(0, coeffs, order))
}

/// `t(1−t)s'' + (c − (1+a+b)t)s' − ab·s`.
pub fn hypergeometric_residual(p: &HypergeometricParams, s: &LaurentSeries) -> LaurentSeries {
    let t = LaurentSeries::exact_ints(1, &[1, -1]);
    let d1 = series::derivative(s);
    let d2 = series::derivative(&d1);
    let lin = LaurentSeries::exact(0, vec![p.c.clone(), -(rat::one() + &p.a + &p.b)]);
    let ab = &p.a * &p.b;
    series::sub(&series::add(&series::mul(&t, &d2), &series::mul(&lin, &d1)), &s.scale(&ab))
}

pub fn verify_hypergeometric(p: &HypergeometricParams, order: i64) -> Result<Report> {
    let s = hyp2f1(p, order + 2)?;
    let r = hypergeometric_residual(p, &s);
    compare_series("hypergeometric-operator", &r, &LaurentSeries::exact_zero(), 0..order)
}

/// `₂F₁(1/12, 5/12; 1; 1728/j) = E4^{1/4}` modulo `q^order`.
pub fn verify_fricke(order: i64) -> Result<Report> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("order must be at least 2".into()));
    }
    let t = series::invert(&modular::j_norm(order)?)?.scale(&rat::int(MU));
    let lhs = series::compose(&hyp2f1(&HypergeometricParams::klein(), order)?, &t)?;
    let rhs = series::pow_rat(&modular::e(4, order), &rat::frac(1, 4))?;
    Ok(Report::all(
        "fricke",
        [
            compare_series("fricke", &lhs, &rhs, 0..order)?,
            verify_hypergeometric(&HypergeometricParams::klein(), order)?,
        ],
    ))
}

/// `∂/∂j` realized on q-series as `E4/(−jE6)·θ`.
fn d_dj(s: &LaurentSeries, factor: &LaurentSeries) -> LaurentSeries {
    series::mul(factor, &series::theta(s))
}

/// The reduced operator applied to `g = E4^{1/4}` vanishes.
pub fn verify_ode_solution(order: i64) -> Result<Report> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("order must be at least 2".into()));
    }
    adaptive(order, |w| {
        let e4 = modular::e(4, w);
        let e6 = modular::e(6, w);
        let j = modular::j_norm(w)?;
        let factor = series::neg(&series::mul(&e4, &series::invert(&series::mul(&j, &e6))?));
        let g = series::pow_rat(&e4, &rat::frac(1, 4))?;
        let dg = d_dj(&g, &factor);
        let d2g = d_dj(&dg, &factor);
        let c = |k: i64| LaurentSeries::constant(rat::int(k));
        let jj = series::mul(&j, &j);
        let t2 = series::mul(&series::mul(&series::sub(&j, &c(MU)), &jj), &d2g);
        let t1 = series::mul(&series::mul(&series::sub(&j, &c(MU / 2)), &j), &dg);
        let res = series::sub(&series::add(&t2, &t1), &g.scale(&rat::int(60)));
        compare_series("ode", &res, &LaurentSeries::exact_zero(), -3..order)
    })
}

/// Retries `f` with a growing working order while the comparison window is
/// not fully known.
fn adaptive(order: i64, mut f: impl FnMut(i64) -> Result<Report>) -> Result<Report> {
    let mut extra = order + 4;
    loop {
        match f(order + extra) {
            Err(SeriesError::InsufficientPrecision { .. }) if extra < 32 * (order + 4) => extra *= 2,
            r => return r,
        }
    }
}

fn pow_r(s: &LaurentSeries, n: i64, d: i64) -> Result<LaurentSeries> {
    series::pow_rat(s, &rat::frac(n, d))
}

fn c(k: i64) -> BiSeries {
    BiSeries::constant(rat::int(k))
}

fn cq(n: i64, d: i64) -> BiSeries {
    BiSeries::constant(rat::frac(n, d))
}

fn m(a: &BiSeries, b: &BiSeries) -> BiSeries {
    bi_mul(a, b)
}

fn m3(a: &BiSeries, b: &BiSeries, c: &BiSeries) -> BiSeries {
    bi_mul(&bi_mul(a, b), c)
}

fn sq(a: &BiSeries) -> BiSeries {
    bi_mul(a, a)
}

/// One-variable ingredients, lifted to the outer (`o`) or inner (`i`) slot.
struct Ingredients {
    e4: [BiSeries; 2],
    e6: [BiSeries; 2],
    /// `E4^{1/2}`, `E4^{3/2}`
    e4_half: [BiSeries; 2],
    e4_3half: [BiSeries; 2],
    /// `E4³ − E6² = 1728η²⁴`
    disc: [BiSeries; 2],
    /// `E6/E4^{3/2}`
    ratio: [BiSeries; 2],
    /// `(E4³ − E6²)·E4^{−5/2}` and `E6·E4^{−3/2}` for the closed derivatives
    du1_parts: [BiSeries; 2],
}

impl Ingredients {
    fn new(outer: i64, inner: i64) -> Result<Self> {
        let one_var = |n: i64| -> Result<[LaurentSeries; 7]> {
            let e4 = modular::e(4, n);
            let e6 = modular::e(6, n);
            let disc = series::sub(&series::pow_int(&e4, 3)?, &series::mul(&e6, &e6));
            let e4_m3h = pow_r(&e4, -3, 2)?;
            let ratio = series::mul(&e6, &e4_m3h);
            let p1 = series::mul(&disc, &pow_r(&e4, -5, 2)?);
            Ok([e4.clone(), e6, pow_r(&e4, 1, 2)?, pow_r(&e4, 3, 2)?, disc, ratio, p1])
        };
        let o = one_var(outer)?.map(|s| BiSeries::lift_outer(&s));
        let i = one_var(inner)?.map(|s| BiSeries::lift_inner(&s));
        let [o0, o1, o2, o3, o4, o5, o6] = o;
        let [i0, i1, i2, i3, i4, i5, _] = i;
        Ok(Ingredients {
            e4: [o0, i0],
            e6: [o1, i1],
            e4_half: [o2, i2],
            e4_3half: [o3, i3],
            disc: [o4, i4],
            du1_parts: [o6, i5.clone()],
            ratio: [o5, i5],
        })
    }

    /// `P − Q = (E4₁E4₂)^{3/2} − E6₁E6₂`.
    fn p_minus_q(&self) -> BiSeries {
        bi_sub(&m(&self.e4_3half[0], &self.e4_3half[1]), &m(&self.e6[0], &self.e6[1]))
    }
}

/// Closed-form mirror maps and their `θ_{q̂1}` derivatives at `q3 = 0`.
#[derive(Debug, Clone)]
pub struct MirrorMaps {
    pub u1: BiSeries,
    pub u2: BiSeries,
    pub du1: BiSeries,
    pub du2: BiSeries,
}

/// `u1 = (1 − E6₁E6₂/(E4₁E4₂)^{3/2})/864` and
/// `u2 = (E4₁³−E6₁²)(E4₂³−E6₂²)/(4(P−Q)²)`, with outer truncation `outer`
/// and inner working order `inner`.
pub fn mirror_maps(outer: i64, inner: i64) -> Result<MirrorMaps> {
    mirror_maps_from(&Ingredients::new(outer, inner)?)
}

fn mirror_maps_from(ing: &Ingredients) -> Result<MirrorMaps> {
    let u1 = m(&bi_sub(&c(1), &m(&ing.ratio[0], &ing.ratio[1])), &cq(1, 864));
    let pq_inv = bi_invert(&ing.p_minus_q())?;
    let pq_inv2 = sq(&pq_inv);
    let discs = m(&ing.disc[0], &ing.disc[1]);
    let u2 = m3(&discs, &pq_inv2, &cq(1, 4));
    let du1 = m3(&ing.du1_parts[0], &ing.du1_parts[1], &cq(1, 1728));
    let skew = bi_sub(&m(&ing.e4_3half[1], &ing.e6[0]), &m(&ing.e4_3half[0], &ing.e6[1]));
    let du2 = m3(&m3(&ing.e4_half[0], &discs, &skew), &m(&pq_inv2, &pq_inv), &cq(1, 4));
    Ok(MirrorMaps { u1, u2, du1, du2 })
}

/// `√(j(j − μ)) = E4^{3/2}E6/η²⁴`, the branch with leading term `+q⁻¹`.
pub fn j_radical(order: i64) -> Result<LaurentSeries> {
    let w = order + 2;
    let e4 = modular::e(4, w);
    let inv = series::invert(&modular::eta24(w)?.series)?;
    Ok(series::mul(&series::mul(&pow_r(&e4, 3, 2)?, &modular::e(6, w)), &inv).truncate(order))
}

/// The mirror maps written through j:
/// `u1 = 2(j1 + j2 − μ)/(j1j2 + S1S2)`,
/// `u2 = (j1j2 + S1S2)²/(4j1j2(j1 + j2 − μ)²)` with `S = √(j(j−μ))`.
pub fn mirror_maps_j(outer: i64, inner: i64) -> Result<(BiSeries, BiSeries)> {
    mirror_maps_j_with_branch(outer, inner, 1)
}

fn mirror_maps_j_with_branch(outer: i64, inner: i64, sign: i64) -> Result<(BiSeries, BiSeries)> {
    let j1 = BiSeries::lift_outer(&modular::j_norm(outer)?);
    let j2 = BiSeries::lift_inner(&modular::j_norm(inner)?);
    let s1 = BiSeries::lift_outer(&j_radical(outer)?);
    let s2 = BiSeries::lift_inner(&j_radical(inner)?.scale(&rat::int(sign)));
    let sum = bi_sub(&bi_add(&j1, &j2), &c(MU));
    let den = bi_add(&m(&j1, &j2), &m(&s1, &s2));
    let u1 = m3(&c(2), &sum, &bi_invert(&den)?);
    let j1j2_inv = bi_invert(&m(&j1, &j2))?;
    let u2 = m3(&sq(&den), &m(&j1j2_inv, &bi_invert(&sq(&sum))?), &cq(1, 4));
    Ok((u1, u2))
}

/// Outer exponents `0..=order`, inner exponents `−order..=order`; `u2`
/// starts with `q̂1/q̂2`, so inner exponents go negative.
fn square_window(order: i64) -> (std::ops::Range<i64>, std::ops::Range<i64>) {
    (0..order + 1, -order..order + 1)
}

/// The j-form and the E4/E6-form of the mirror maps agree on
/// `0 ≤ a ≤ order`, `|b| ≤ order`, together with the one-variable facts they rest on.
pub fn verify_vvh_equivalence(order: i64) -> Result<Report> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("order must be at least 2".into()));
    }
    let n = order + 4;
    let j = modular::j_norm(n)?;
    let e6 = modular::e(6, n + 2);
    let eta_inv = series::invert(&modular::eta24(n + 2)?.series)?;
    let j_minus = series::sub(&j, &LaurentSeries::constant(rat::int(MU)));
    let e6_sq = series::mul(&series::mul(&e6, &e6), &eta_inv);
    let s = j_radical(n)?;
    let s_sq = series::mul(&s, &s);
    let jj = series::mul(&j, &j_minus);
    let one_var = Report::all(
        "vvh/one-variable",
        [compare_series("j-1728", &j_minus, &e6_sq, -1..order)?, compare_series("radical", &s_sq, &jj, -2..order)?],
    );
    let bi = adaptive(order, |w| {
        let (ou, iu) = square_window(order);
        let e = mirror_maps(order + 1, w)?;
        let (u1, u2) = mirror_maps_j(order + 1, w)?;
        Ok(Report::all(
            "vvh",
            [
                compare_bi("vvh/u1", &u1, &e.u1, ou.clone(), iu.clone())?,
                compare_bi("vvh/u2", &u2, &e.u2, ou, iu)?,
            ],
        ))
    })?;
    Ok(Report::all("vvh", [one_var, bi]))
}

/// The closed forms of `θ_{q̂1}u1`, `θ_{q̂1}u2` against differentiating the
/// mirror maps directly.
pub fn verify_mirror_derivatives(order: i64) -> Result<Report> {
    adaptive(order, |w| {
        let (ou, iu) = square_window(order);
        let mm = mirror_maps(order + 1, w)?;
        Ok(Report::all(
            "mirror-derivatives",
            [
                compare_bi("du1", &mm.u1.theta_outer(), &mm.du1, ou.clone(), iu.clone())?,
                compare_bi("du2", &mm.u2.theta_outer(), &mm.du2, ou, iu)?,
            ],
        ))
    })
}

/// The variables `ũ1 = 432u1`, `ũ2 = 4u2`, `ũ3 = 4u3`.
#[derive(Debug, Clone)]
pub struct Moduli {
    pub t: [BiSeries; 3],
}

impl Moduli {
    pub fn new(t1: BiSeries, t2: BiSeries, t3: BiSeries) -> Self {
        Moduli { t: [t1, t2, t3] }
    }

    /// `ũ` from `u1`, `u2` with `ũ3 = 0`.
    pub fn from_maps(u1: &BiSeries, u2: &BiSeries) -> Self {
        Moduli::new(u1.scale(&rat::int(432)), u2.scale(&rat::int(4)), BiSeries::zero(EXACT))
    }

    pub fn constants(t1: Rat, t2: Rat, t3: Rat) -> Self {
        Moduli::new(BiSeries::constant(t1), BiSeries::constant(t2), BiSeries::constant(t3))
    }

    fn one_minus_t1(&self) -> BiSeries {
        bi_sub(&c(1), &self.t[0])
    }
}

/// `Δ1 = (1−ũ1)⁴ − 2(ũ2+ũ3)ũ1²(1−ũ1)² + (ũ2−ũ3)²ũ1⁴`.
pub fn delta1(v: &Moduli) -> BiSeries {
    let [t1, t2, t3] = &v.t;
    let a = sq(&v.one_minus_t1());
    let t1s = sq(t1);
    let mid = m3(&bi_add(t2, t3), &t1s, &a).scale(&rat::int(2));
    bi_add(&bi_sub(&sq(&a), &mid), &m(&sq(&bi_sub(t2, t3)), &sq(&t1s)))
}

/// `Δ2 = (1−ũ2−ũ3)² − 4ũ2ũ3`.
pub fn delta2(v: &Moduli) -> BiSeries {
    let [_, t2, t3] = &v.t;
    bi_sub(&sq(&bi_sub(&bi_sub(&c(1), t2), t3)), &m(t2, t3).scale(&rat::int(4)))
}

/// `A_i = (1 + ũi − ũk)(1−ũ1)² + ũ1²(1 − ũk − 3ũi)(ũi − ũk)` for
/// `(i, k) = (2, 3)` or `(3, 2)`.
fn a_poly(v: &Moduli, i: usize, k: usize) -> BiSeries {
    let (ti, tk) = (&v.t[i], &v.t[k]);
    let first = m(&bi_sub(&bi_add(&c(1), ti), tk), &sq(&v.one_minus_t1()));
    let inner = bi_sub(&bi_sub(&c(1), tk), &ti.scale(&rat::int(3)));
    bi_add(&first, &m3(&sq(&v.t[0]), &inner, &bi_sub(ti, tk)))
}

pub fn a2(v: &Moduli) -> BiSeries {
    a_poly(v, 1, 2)
}

pub fn a3(v: &Moduli) -> BiSeries {
    a_poly(v, 2, 1)
}

/// One Yukawa coupling in the form `ũiũjũk·Y_ijk = N/(Δ1·Δ2^δ)`.
#[derive(Debug, Clone, Copy)]
pub struct Coupling {
    pub indices: [usize; 3],
    pub numerator: fn(&Moduli) -> BiSeries,
    pub over_delta2: bool,
}

/// The ten couplings `Y_ijk`, `i ≤ j ≤ k`, of the mirror family.
#[derive(Debug, Clone)]
pub struct YukawaTable {
    pub name: &'static str,
    pub couplings: [Coupling; 10],
}

fn t(v: &Moduli, i: usize) -> &BiSeries {
    &v.t[i - 1]
}

fn sq1m(v: &Moduli) -> BiSeries {
    sq(&v.one_minus_t1())
}

/// `(1−ũ1)² ± ũ1²(ũ2 − ũ3)`.
fn n112_core(v: &Moduli, swap: bool) -> BiSeries {
    let d = if swap { bi_sub(t(v, 3), t(v, 2)) } else { bi_sub(t(v, 2), t(v, 3)) };
    bi_add(&sq1m(v), &m(&sq(t(v, 1)), &d))
}

/// `2ũ1²ũi(1−ũ1)`
fn n1ii(v: &Moduli, i: usize) -> BiSeries {
    m3(&sq(t(v, 1)), t(v, i), &v.one_minus_t1()).scale(&rat::int(2))
}

/// `s·ũi(1−2ũ1)A/2`
fn n_big(v: &Moduli, i: usize, a: BiSeries, s: i64) -> BiSeries {
    let f = bi_sub(&c(1), &t(v, 1).scale(&rat::int(2)));
    m3(t(v, i), &f, &a).scale(&rat::frac(s, 2))
}

fn n111(v: &Moduli) -> BiSeries {
    v.one_minus_t1().scale(&rat::int(8))
}

fn n123(v: &Moduli) -> BiSeries {
    let inner = bi_sub(&sq1m(v), &m(&bi_add(t(v, 2), t(v, 3)), &sq(t(v, 1))));
    m(&v.one_minus_t1(), &inner)
}

fn n122(v: &Moduli) -> BiSeries {
    n1ii(v, 2)
}

fn n133(v: &Moduli) -> BiSeries {
    n1ii(v, 3)
}

fn d112(v: &Moduli) -> BiSeries {
    n112_core(v, false).scale(&rat::int(2))
}

fn d113(v: &Moduli) -> BiSeries {
    n112_core(v, true).scale(&rat::int(2))
}

fn d222(v: &Moduli) -> BiSeries {
    n_big(v, 2, a2(v), -1)
}

fn d223(v: &Moduli) -> BiSeries {
    n_big(v, 2, a3(v), -1)
}

fn d233(v: &Moduli) -> BiSeries {
    n_big(v, 3, a2(v), -1)
}

fn d333(v: &Moduli) -> BiSeries {
    n_big(v, 3, a3(v), -1)
}

/// `2(1−ũ1)² + ũ1²(ũ2 − ũ3)`, as printed.
fn p112(v: &Moduli) -> BiSeries {
    bi_add(&sq1m(v).scale(&rat::int(2)), &m(&sq(t(v, 1)), &bi_sub(t(v, 2), t(v, 3))))
}

fn p113(v: &Moduli) -> BiSeries {
    bi_add(&sq1m(v).scale(&rat::int(2)), &m(&sq(t(v, 1)), &bi_sub(t(v, 3), t(v, 2))))
}

fn p222(v: &Moduli) -> BiSeries {
    n_big(v, 2, a2(v), 1)
}

fn p223(v: &Moduli) -> BiSeries {
    n_big(v, 2, a3(v), 1)
}

fn p233(v: &Moduli) -> BiSeries {
    n_big(v, 3, a2(v), 1)
}

fn p333(v: &Moduli) -> BiSeries {
    n_big(v, 3, a3(v), 1)
}

const fn cp(indices: [usize; 3], numerator: fn(&Moduli) -> BiSeries, over_delta2: bool) -> Coupling {
    Coupling { indices, numerator, over_delta2 }
}

impl YukawaTable {
    /// Couplings solving the transversality constraints of the Picard-Fuchs
    /// system, normalized by the classical intersections 8, 2, 2, 1.
    pub fn derived() -> Self {
        YukawaTable {
            name: "derived",
            couplings: [
                cp([1, 1, 1], n111, false),
                cp([1, 1, 2], d112, false),
                cp([1, 1, 3], d113, false),
                cp([1, 2, 2], n122, false),
                cp([1, 2, 3], n123, false),
                cp([1, 3, 3], n133, false),
                cp([2, 2, 2], d222, true),
                cp([2, 2, 3], d223, true),
                cp([2, 3, 3], d233, true),
                cp([3, 3, 3], d333, true),
            ],
        }
    }

    /// The table as it is usually printed. It differs from [`Self::derived`]
    /// in `Y112`, `Y113` and the sign of the four couplings over `Δ2`, and it
    /// fails the f3 cancellation.
    pub fn printed() -> Self {
        YukawaTable {
            name: "printed",
            couplings: [
                cp([1, 1, 1], n111, false),
                cp([1, 1, 2], p112, false),
                cp([1, 1, 3], p113, false),
                cp([1, 2, 2], n122, false),
                cp([1, 2, 3], n123, false),
                cp([1, 3, 3], n133, false),
                cp([2, 2, 2], p222, true),
                cp([2, 2, 3], p223, true),
                cp([2, 3, 3], p233, true),
                cp([3, 3, 3], p333, true),
            ],
        }
    }

    pub fn coupling(&self, i: usize, j: usize, k: usize) -> &Coupling {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        self.couplings.iter().find(|c| c.indices == idx).expect("indices in 1..=3")
    }

    /// `N_ijk` with the denominator `Δ1·Δ2^δ` left out.
    pub fn numerator(&self, i: usize, j: usize, k: usize, v: &Moduli) -> BiSeries {
        (self.coupling(i, j, k).numerator)(v)
    }

    /// `ũiũjũk·Y_ijk`, which stays finite where the `ũ` vanish.
    pub fn theta_coupling(&self, i: usize, j: usize, k: usize, v: &Moduli) -> Result<BiSeries> {
        let cpl = self.coupling(i, j, k);
        let mut den = delta1(v);
        if cpl.over_delta2 {
            den = m(&den, &delta2(v));
        }
        Ok(m(&(cpl.numerator)(v), &bi_invert(&den)?))
    }

    /// `Y_ijk` itself; needs every `ũ` involved to be invertible.
    pub fn yukawa(&self, i: usize, j: usize, k: usize, v: &Moduli) -> Result<BiSeries> {
        let mut y = self.theta_coupling(i, j, k, v)?;
        for idx in [i, j, k] {
            y = m(&y, &bi_invert(&v.t[idx - 1])?);
        }
        Ok(y)
    }

    /// `L_ij3 = lim_{ũ3→0} ũ3·Y_ij3` for `i, j ∈ {1, 2}`, as a series in the
    /// remaining variables.
    pub fn limit3(&self, i: usize, j: usize, v: &Moduli) -> Result<BiSeries> {
        let mut y = self.theta_coupling(i, j, 3, v)?;
        for idx in [i, j] {
            y = m(&y, &bi_invert(&v.t[idx - 1])?);
        }
        Ok(y)
    }
}

fn f3_form(table: &YukawaTable, mm: &MirrorMaps) -> BiSeries {
    let v = Moduli::from_maps(&mm.u1, &mm.u2);
    let d2 = delta2(&v);
    let a = m3(&table.numerator(1, 1, 3, &v), &d2, &sq(&m(&mm.du1, &mm.u2)));
    let b = m3(&table.numerator(1, 2, 3, &v), &d2, &m(&m(&mm.du1, &mm.du2), &m(&mm.u1, &mm.u2))).scale(&rat::int(2));
    let cc = m(&table.numerator(2, 2, 3, &v), &sq(&m(&mm.du2, &mm.u1)));
    bi_add(&bi_add(&a, &b), &cc)
}

/// `L113(∂u1)² + 2L123 ∂u1∂u2 + L223(∂u2)² = 0` with `∂ = θ_{q̂1}`, after
/// multiplying through by `Δ1Δ2u1²u2²`, on `0 ≤ a ≤ order`, `|b| ≤ order`.
pub fn verify_f3_cancellation(order: i64) -> Result<Report> {
    verify_f3_cancellation_with(&YukawaTable::derived(), order)
}

pub fn verify_f3_cancellation_with(table: &YukawaTable, order: i64) -> Result<Report> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("order must be at least 2".into()));
    }
    adaptive(order, |w| {
        let (ou, iu) = square_window(order);
        let mm = mirror_maps(order + 1, w)?;
        let form = f3_form(table, &mm);
        compare_bi("f3", &form, &BiSeries::zero(EXACT), ou, iu)
    })
}

/// Both sides of the prepotential identity with every denominator cleared:
/// `Σ mult·N_ijk·Δ2^{1−δ}·(θu)^{…}u^{…}·D` and
/// `−2E4₂E4₁E6₂(E4₁³−E6₁²)·Δ1Δ2u1³u2³·√(E4₁E4₂)` with
/// `D = E4₂³E6₁² − E4₁³E6₂²`.
fn v678_sides(table: &YukawaTable, ing: &Ingredients) -> Result<(BiSeries, BiSeries)> {
    let mm = mirror_maps_from(ing)?;
    let v = Moduli::from_maps(&mm.u1, &mm.u2);
    let (u1, u2, w1, w2) = (&mm.u1, &mm.u2, &mm.du1, &mm.du2);
    let d1 = delta1(&v);
    let d2 = delta2(&v);
    let cube = |x: &BiSeries| m(&sq(x), x);
    let terms = [
        m3(&table.numerator(1, 1, 1, &v), &d2, &m(&cube(w1), &cube(u2))),
        m3(&table.numerator(1, 1, 2, &v), &d2, &m(&m(&sq(w1), w2), &m(u1, &sq(u2)))).scale(&rat::int(3)),
        m3(&table.numerator(1, 2, 2, &v), &d2, &m(&m(w1, &sq(w2)), &m(&sq(u1), u2))).scale(&rat::int(3)),
        m(&table.numerator(2, 2, 2, &v), &m(&cube(w2), &cube(u1))),
    ];
    let sum = terms.iter().fold(BiSeries::zero(EXACT), |acc, x| bi_add(&acc, x));
    let e4c = [cube(&ing.e4[0]), cube(&ing.e4[1])];
    let e6s = [sq(&ing.e6[0]), sq(&ing.e6[1])];
    let den = bi_sub(&m(&e4c[1], &e6s[0]), &m(&e4c[0], &e6s[1]));
    let lhs = m(&sum, &den);
    let num = m(&m3(&ing.e4[1], &ing.e4[0], &ing.e6[1]), &ing.disc[0]).scale(&rat::int(-2));
    let clear = m(&m(&d1, &d2), &m(&cube(u1), &cube(u2)));
    let rhs = m3(&num, &clear, &m(&ing.e4_half[0], &ing.e4_half[1]));
    Ok((lhs, rhs))
}

/// The right side `−2E4(τ2)E4(τ1)E6(τ2)(E4(τ1)³−E6(τ1)²)/(E4(τ2)³E6(τ1)² −
/// E4(τ1)³E6(τ2)²)` with `τ1 ↦ q2` (inner) and `τ2 ↦ q1` (outer), which is
/// the orientation of the fiber degrees.
pub fn v678_rhs_swapped(outer: i64, inner: i64) -> Result<BiSeries> {
    let ing = Ingredients::new(outer, inner)?;
    let cube = |x: &BiSeries| m(&sq(x), x);
    // slot 0 (outer) carries τ2, slot 1 (inner) carries τ1
    let num = m(&m3(&ing.e4[0], &ing.e4[1], &ing.e6[0]), &ing.disc[1]).scale(&rat::int(-2));
    let den = bi_sub(&m(&cube(&ing.e4[0]), &sq(&ing.e6[1])), &m(&cube(&ing.e4[1]), &sq(&ing.e6[0])));
    Ok(m(&num, &bi_invert(&den)?))
}

/// The cleared prepotential identity and its swapped right side against `2f(q1)E4(q2)/(j(q1)−j(q2))` on `0 ≤ a ≤ order`,
/// `|b| ≤ order`, the latter assembled as in the Harvey-Moore check.
pub fn verify_v678(order: i64) -> Result<Report> {
    verify_v678_with(&YukawaTable::derived(), order)
}

pub fn verify_v678_with(table: &YukawaTable, order: i64) -> Result<Report> {
    if order < 2 {
        return Err(SeriesError::InvalidArgument("order must be at least 2".into()));
    }
    let cleared = adaptive(order, |w| {
        let (ou, iu) = square_window(order);
        let (lhs, rhs) = v678_sides(table, &Ingredients::new(order + 1, w)?)?;
        compare_bi("v678", &lhs, &rhs, ou, iu)
    })?;
    let swapped = adaptive(order, |w| {
        let rhs = v678_rhs_swapped(order + 1, w)?;
        let closed = harvey_moore_rhs(order, order)?.scale(&rat::int(2));
        compare_bi("v678/swap", &rhs, &closed, 0..order + 1, -order..order + 1)
    })?;
    Ok(Report::all("v678", [cleared, swapped]))
}

/// Klemm-Lerche-Mayr suite: the reduced ODE, the two forms of the mirror
/// maps and the closed-form derivatives.
pub fn verify_klm(ode_order: i64, bi_order: i64) -> Result<Report> {
    Ok(Report::all(
        "klm",
        [verify_ode_solution(ode_order)?, verify_vvh_equivalence(bi_order)?, verify_mirror_derivatives(bi_order)?],
    ))
}
