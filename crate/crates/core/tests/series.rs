use qseries::modular::{e, eta24, j_norm};
use qseries::rat::{frac, int, one, zero};
use qseries::series::{self, text, BiSeries, LaurentSeries, EXACT};
use qseries::{Rat, SeriesError};

fn s(val: i64, c: &[i64], trunc: i64) -> LaurentSeries {
    LaurentSeries::from_ints(val, c, trunc)
}

/// Reference Cauchy product on dense coefficient vectors.
fn naive_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![zero(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[test]
fn add_cancels_and_takes_min_truncation() {
    let a = s(0, &[1, 1], 5);
    let b = s(0, &[-1, 1], 5);
    assert_eq!(series::add(&a, &b), s(1, &[2], 5));
    let z = LaurentSeries::zero(5);
    assert_eq!(series::add(&a, &z), a);
    let c = series::add(&s(-1, &[1], 3), &s(2, &[1], 2));
    assert_eq!(c, s(-1, &[1], 2));
    assert_eq!(c.truncation(), 2);
}

#[test]
fn zero_keeps_truncation() {
    let a = s(0, &[1, 2, 3], 4);
    let z = series::sub(&a, &a);
    assert!(z.is_zero());
    assert_eq!(z.truncation(), 4);
    assert_eq!(z.get(3), Some(zero()));
    assert_eq!(z.get(4), None);
}

#[test]
fn mul_examples() {
    let q_inv = LaurentSeries::monomial(one(), -1);
    let q = LaurentSeries::monomial(one(), 1);
    assert_eq!(series::mul(&q_inv, &q), LaurentSeries::one());
    let geo = s(0, &[1; 10], 10);
    let one_minus_q = LaurentSeries::exact_ints(0, &[1, -1]);
    assert_eq!(series::mul(&one_minus_q, &geo), LaurentSeries::new(0, vec![one()], 10));
    let p = LaurentSeries::exact_ints(0, &[1, 1]);
    assert_eq!(series::mul(&p, &p), LaurentSeries::exact_ints(0, &[1, 2, 1]));
}

#[test]
fn mul_truncation_rule() {
    let a = s(-2, &[1, 3, 5], 4);
    let b = s(1, &[2, 7], 6);
    let c = series::mul(&a, &b);
    assert_eq!(c.valuation(), -1);
    // min(a.v + b.T, b.v + a.T) = min(−2 + 6, 1 + 4)
    assert_eq!(c.truncation(), 4);
    let dense_a: Vec<Rat> = (-2..4).map(|n| a.coeff(n)).collect();
    let dense_b: Vec<Rat> = (1..6).map(|n| b.coeff(n)).collect();
    let r = naive_mul(&dense_a, &dense_b, 5);
    for (k, x) in r.iter().enumerate() {
        assert_eq!(&c.coeff(-1 + k as i64), x);
    }
}

#[test]
fn mul_with_rational_coefficients() {
    let a = LaurentSeries::new(0, vec![frac(1, 2), frac(-2, 3), frac(5, 7)], 3);
    let b = LaurentSeries::new(0, vec![frac(3, 4), frac(1, 6)], 3);
    let c = series::mul(&a, &b);
    assert_eq!(c.coeff(0), frac(3, 8));
    assert_eq!(c.coeff(1), frac(1, 12) - frac(1, 2));
    assert_eq!(c.coeff(2), frac(15, 28) - frac(1, 9));
}

#[test]
fn invert_examples() {
    let a = s(0, &[1, -1], 4);
    assert_eq!(series::invert(&a).unwrap(), s(0, &[1, 1, 1, 1], 4));
    let q = LaurentSeries::monomial(one(), 1);
    assert_eq!(series::invert(&q).unwrap(), LaurentSeries::monomial(one(), -1));
    assert_eq!(series::invert(&LaurentSeries::zero(5)), Err(SeriesError::NotInvertible));
    assert_eq!(series::invert(&LaurentSeries::exact_ints(0, &[1, -1])), Err(SeriesError::UnboundedPrecision));
}

#[test]
fn invert_eta_product_by_long_division() {
    // q·∏_{n=1}^{3}(1−qⁿ)²⁴ truncated at q^5; its inverse is known to q^3.
    let mut p = LaurentSeries::exact_ints(1, &[1]);
    for n in 1..=3usize {
        let mut v = vec![0i64; n + 1];
        v[0] = 1;
        v[n] = -1;
        p = series::mul(&p, &series::pow_int(&LaurentSeries::exact_ints(0, &v), 24).unwrap());
    }
    let p = p.truncate(5);
    let inv = series::invert(&p).unwrap();
    assert_eq!(inv, s(-1, &[1, 24, 324, 3200], 3));
    // long division oracle: successive subtraction of the leading term
    let mut rem = LaurentSeries::new(0, vec![one()], 4);
    let mut quotient = Vec::new();
    for k in -1..3 {
        let c = rem.coeff(k + 1) / p.coeff(1);
        quotient.push(c.clone());
        let t = LaurentSeries::monomial(c, k);
        rem = series::sub(&rem, &series::mul(&t, &p));
    }
    assert_eq!(LaurentSeries::new(-1, quotient, 3), inv);
}

#[test]
fn invert_with_nonunit_leading_coefficient() {
    let a = LaurentSeries::new(2, vec![int(3), int(5), frac(1, 2), int(-4)], 8);
    let b = series::invert(&a).unwrap();
    assert_eq!(b.valuation(), -2);
    assert_eq!(b.truncation(), 8 - 4);
    let p = series::mul(&a, &b);
    assert_eq!(p, LaurentSeries::new(0, vec![one()], p.truncation()));
    assert_eq!(p.truncation(), 6);
}

#[test]
fn pow_int_examples() {
    let p = LaurentSeries::exact_ints(0, &[1, 1]);
    assert_eq!(series::pow_int(&p, 3).unwrap(), LaurentSeries::exact_ints(0, &[1, 3, 3, 1]));
    let a = s(0, &[2, 5], 6);
    assert_eq!(series::pow_int(&a, 0).unwrap(), LaurentSeries::one());
    let qi = LaurentSeries::monomial(one(), -1);
    assert_eq!(series::pow_int(&qi, 2).unwrap(), LaurentSeries::monomial(one(), -2));
    let b = s(0, &[1, 2, -1], 8);
    let m2 = series::pow_int(&b, -2).unwrap();
    let back = series::mul(&m2, &series::mul(&b, &b));
    assert_eq!(back, LaurentSeries::new(0, vec![one()], 8));
}

#[test]
fn pow_rat_examples() {
    let one_s = LaurentSeries::new(0, vec![one()], 6);
    assert_eq!(series::pow_rat(&one_s, &frac(1, 4)).unwrap(), one_s);
    let e4 = e(4, 20);
    let r = series::pow_rat(&e4, &frac(1, 4)).unwrap();
    assert_eq!(r.coeff(1), int(60));
    assert_eq!(r.coeff(2), int(-4860));
    assert_eq!(series::pow_int(&r, 4).unwrap(), e4);
    let z = s(0, &[1, -4], 10);
    let root = series::pow_rat(&z, &frac(1, 2)).unwrap();
    assert_eq!(root.coeff(1), int(-2));
    assert_eq!(root.coeff(2), int(-2));
    assert_eq!(root.coeff(3), int(-4));
    assert_eq!(series::mul(&root, &root), z);
    assert_eq!(series::pow_rat(&s(0, &[2, 1], 4), &frac(1, 2)), Err(SeriesError::BranchAmbiguity));
    assert_eq!(series::pow_rat(&s(1, &[1], 4), &frac(1, 2)), Err(SeriesError::BranchAmbiguity));
}

#[test]
fn theta_examples() {
    assert!(series::theta(&LaurentSeries::one()).is_zero());
    let qi = LaurentSeries::monomial(one(), -1);
    assert_eq!(series::theta(&qi), LaurentSeries::monomial(int(-1), -1));
    let a = s(-2, &[1, 2, 3, 4], 5);
    let t = series::theta(&a);
    assert_eq!(t.truncation(), 5);
    assert_eq!(t.coeff(-2), int(-2));
    assert_eq!(t.coeff(0), zero());
    assert_eq!(t.coeff(1), int(4));
}

#[test]
fn compose_examples() {
    let geo = s(0, &[1; 8], 8);
    let q2 = LaurentSeries::monomial(one(), 2);
    let c = series::compose(&geo, &q2).unwrap();
    assert_eq!(c.truncation(), 16);
    for n in 0..16 {
        assert_eq!(c.coeff(n), if n % 2 == 0 { one() } else { zero() });
    }
    let a = s(0, &[3, 1, 4, 1, 5], 5);
    let q = LaurentSeries::monomial(one(), 1);
    assert_eq!(series::compose(&a, &q).unwrap(), a);
    assert_eq!(series::compose(&a, &LaurentSeries::one()), Err(SeriesError::BadSubstitution(0)));
    assert!(series::compose(&s(-1, &[1], 3), &q).is_err());
}

#[test]
fn compose_geometric_with_1728_over_j() {
    let n = 12;
    let t = series::invert(&j_norm(n).unwrap()).unwrap().scale(&int(1728));
    let geo = s(0, &vec![1; n as usize], n);
    let c = series::compose(&geo, &t).unwrap();
    // oracle: 1/(1 − t) by direct inversion
    let direct = series::invert(&series::sub(&LaurentSeries::one(), &t)).unwrap();
    assert_eq!(c.coeff(0), one());
    assert_eq!(c.coeff(1), int(1728));
    assert_eq!(c.first_difference(&direct, 0, n), None);
}

#[test]
fn text_round_trip() {
    let a = LaurentSeries::new(-1, vec![int(1), zero(), frac(-7, 3), int(5)], 6);
    let t = text::to_text(&a);
    assert_eq!(t, "-1 6\n-1 1\n1 -7/3\n2 5\n");
    assert_eq!(text::from_text(&t).unwrap(), a);
    let p = LaurentSeries::exact_ints(0, &[1, 2]);
    assert_eq!(text::from_text(&text::to_text(&p)).unwrap(), p);
    let z = LaurentSeries::zero(7);
    assert_eq!(text::from_text(&text::to_text(&z)).unwrap(), z);
    assert!(text::from_text("0 4\n5 1\n").is_err());
    assert!(text::from_text("x 4\n").is_err());
}

#[test]
fn bi_lifts() {
    let q = LaurentSeries::monomial(one(), 1);
    let a = BiSeries::lift_outer(&q);
    assert_eq!(a.coeff(1, 0), one());
    assert_eq!(a.row(1).unwrap(), LaurentSeries::one());
    let b = BiSeries::lift_inner(&q);
    assert_eq!(b.coeff(0, 1), one());
    assert_eq!(b.truncation(), EXACT);
    let j = j_norm(6).unwrap();
    let d = series::bi_sub(&BiSeries::lift_outer(&j), &BiSeries::lift_inner(&j));
    assert_eq!(d.row(-1).unwrap(), LaurentSeries::one());
    let expected = series::sub(&LaurentSeries::constant(int(744)), &j);
    assert_eq!(d.row(0).unwrap(), expected);
    assert_eq!(d.row(1).unwrap(), LaurentSeries::constant(int(196884)));
}

#[test]
fn bi_mul_and_invert_examples() {
    let q1_q2inv = BiSeries::new(1, vec![LaurentSeries::monomial(one(), -1)], EXACT);
    let q2 = BiSeries::lift_inner(&LaurentSeries::monomial(one(), 1));
    let p = series::bi_mul(&q1_q2inv, &q2);
    assert_eq!(p, BiSeries::lift_outer(&LaurentSeries::monomial(one(), 1)));

    // q1^{-1}(1 + q1 q2) inverts to q1(1 − q1q2 + q1²q2² − …)
    let a = BiSeries::new(-1, vec![LaurentSeries::one(), LaurentSeries::monomial(one(), 1)], 5);
    let inv = series::bi_invert(&a).unwrap();
    assert_eq!(inv.valuation(), 1);
    assert_eq!(inv.truncation(), 7);
    for k in 0..6 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(inv.coeff(1 + k, k), int(sign));
    }
    let back = series::bi_mul(&a, &inv);
    assert_eq!(back, BiSeries::new(0, vec![LaurentSeries::one()], back.truncation()));
}

#[test]
fn bi_invert_j_difference_multiplies_back() {
    let w = 14;
    let j = j_norm(w).unwrap();
    let d = series::bi_sub(&BiSeries::lift_outer(&j.truncate(8)), &BiSeries::lift_inner(&j));
    let inv = series::bi_invert(&d).unwrap();
    assert_eq!(inv.valuation(), 1);
    assert_eq!(inv.row(1).unwrap(), LaurentSeries::one());
    let prod = series::bi_mul(&d, &inv);
    for a in 0..prod.truncation() {
        let row = prod.row(a).unwrap();
        let (lo, hi) = (-10, row.truncation().min(20));
        for b in lo..hi {
            let expect = if a == 0 && b == 0 { one() } else { zero() };
            assert_eq!(prod.coeff(a, b), expect, "q1^{a} q2^{b}");
        }
    }
    assert!(series::bi_invert(&BiSeries::zero(5)).is_err());
}

#[test]
fn bi_inner_window_is_conservative() {
    let a = BiSeries::new(
        0,
        vec![s(-1, &[1, 2], 5), s(0, &[3], 3), LaurentSeries::constant(int(2))],
        3,
    );
    assert_eq!(a.inner_window(), (-1, 3));
    assert_eq!(a.get(1, 3), None);
    assert_eq!(a.get(2, 100), Some(zero()));
    assert_eq!(a.get(3, 0), None);
}

#[test]
fn eta24_inverse_matches_yz_shift() {
    let n = 30;
    let inv = series::invert(&eta24(n).unwrap().series).unwrap();
    let yz = qseries::modular::yz_series(n - 1).unwrap();
    assert_eq!(inv, yz.shift(-1));
}
