use qseries::mirror::{
    hyp2f1, j_radical, mirror_maps, mirror_maps_j, verify_f3_cancellation, verify_f3_cancellation_with,
    verify_fricke, verify_hypergeometric, verify_mirror_derivatives, verify_ode_solution, verify_v678,
    verify_vvh_equivalence, HypergeometricParams, YukawaTable,
};
use qseries::rat;
use qseries::series;

#[test]
fn fricke_small() {
    let r = verify_fricke(12).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn quarter_power_head() {
    let s = series::pow_rat(&qseries::modular::e(4, 3), &rat::frac(1, 4)).unwrap();
    assert_eq!(s.coeff(1), rat::int(60));
    assert_eq!(s.coeff(2), rat::int(-4860));
}

#[test]
fn hypergeometric_operator() {
    let p = HypergeometricParams::new(rat::frac(1, 3), rat::frac(2, 7), rat::frac(5, 2)).unwrap();
    assert!(verify_hypergeometric(&p, 15).unwrap().passed());
    assert_eq!(hyp2f1(&p, 1).unwrap().coeff(0), rat::one());
}

#[test]
fn ode_small() {
    let r = verify_ode_solution(10).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn mirror_map_heads() {
    let mm = mirror_maps(3, 6).unwrap();
    assert_eq!(mm.u1.coeff(0, 0), rat::zero());
    assert_eq!(mm.u1.coeff(1, 0), rat::one());
    assert_eq!(mm.u1.coeff(0, 1), rat::one());
    // u2 = q̂1q̂2/(q̂1+q̂2)² + … expanded in q̂1 first
    assert_eq!(mm.u2.valuation(), 1);
    assert_eq!(mm.u2.row(1).unwrap().valuation(), -1);
    assert_eq!(mm.u2.coeff(1, -1), rat::one());
    assert_eq!(mm.u2.coeff(2, -2), rat::int(-2));
    let (u1, _) = mirror_maps_j(3, 8).unwrap();
    assert_eq!(u1.coeff(1, 0), rat::one());
}

#[test]
fn radical_branch() {
    let s = j_radical(4).unwrap();
    assert_eq!(s.valuation(), -1);
    assert_eq!(s.coeff(-1), rat::one());
}

#[test]
fn vvh_small() {
    let r = verify_vvh_equivalence(4).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn derivatives_small() {
    let r = verify_mirror_derivatives(4).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn f3_small() {
    let r = verify_f3_cancellation(4).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn printed_table_fails_f3() {
    let r = verify_f3_cancellation_with(&YukawaTable::printed(), 3).unwrap();
    assert!(!r.passed());
}

#[test]
fn v678_small() {
    let r = verify_v678(3).unwrap();
    assert!(r.passed(), "{r}");
}
