//! Acceptance run: one PASS/FAIL line per criterion, every comparison exact.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::test_runner::{Config, TestRunner};

use qseries::bps::{gw_closed_form, verify_yau_zaslow};
use qseries::harvey_moore::{harvey_moore_rhs, verify_harmoo, verify_ppx};
use qseries::mirror::{verify_f3_cancellation, verify_fricke, verify_ode_solution, verify_v678, verify_vvh_equivalence};
use qseries::noether_lefschetz::{discriminant, nl_number, RefinedNl};
use qseries::rat;
use qseries::weakly_holomorphic::{bol_check, verify_hecke};
use qseries::{Rat, Report};

type Outcome = Result<String, String>;
type Criterion = Box<dyn Fn() -> Outcome>;

fn from_report(r: qseries::error::Result<Report>) -> Outcome {
    match r {
        Ok(r) if r.passed() => Ok(r.to_string()),
        Ok(r) => Err(r.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join("; "))
}

/// `∏_{n<order}(1−qⁿ)⁻²⁴` by repeated multiplication with geometric series.
fn product_oracle(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order];
    c[0] = BigInt::from(1);
    for n in 1..order {
        for _ in 0..24 {
            // multiply by 1/(1 − qⁿ): running sum with stride n
            for k in n..order {
                let prev = c[k - n].clone();
                c[k] += prev;
            }
        }
    }
    c
}

fn yau_zaslow() -> Outcome {
    let (table, report) = verify_yau_zaslow(25, 4).map_err(|e| e.to_string())?;
    let oracle = product_oracle(26);
    for (&(m, h), v) in table.iter() {
        if *v != Rat::from_integer(oracle[h as usize].clone()) {
            return Err(format!("r(m={m}, h={h}) = {v}, product gives {}", oracle[h as usize]));
        }
    }
    let anchors = [(1, 24), (2, 324), (3, 3200)];
    for (h, want) in anchors {
        if table.get(1, h).map_err(|e| e.to_string())? != rat::int(want) {
            return Err(format!("r(1, {h}) != {want}"));
        }
    }
    if !report.passed() {
        return Err(report.to_string());
    }
    Ok(format!("{} solved entries match the product", table.entries.len()))
}

fn nl_anchor() -> Outcome {
    if nl_number(0, 0, 0) != rat::int(1056) {
        return Err(format!("NL(0,0,0) = {}", nl_number(0, 0, 0)));
    }
    let mut zero_keys = 0;
    let mut negative_keys = 0;
    for h in -4..=30 {
        for d1 in -8..=8 {
            for d2 in -8..=8 {
                let delta = discriminant(h, d1, d2);
                let v = nl_number(h, d1, d2);
                if delta == 0 {
                    zero_keys += 1;
                    if v != rat::int(-4) {
                        return Err(format!("Δ = 0 at ({h},{d1},{d2}) gives {v}"));
                    }
                } else if delta < 0 {
                    negative_keys += 1;
                    if !v.is_zero() {
                        return Err(format!("Δ < 0 at ({h},{d1},{d2}) gives {v}"));
                    }
                }
            }
        }
    }
    Ok(format!("1056 at (0,0,0); {zero_keys} keys with Δ = 0; {negative_keys} keys with Δ < 0"))
}

fn refined_sum() -> Outcome {
    let mut nl = RefinedNl::new();
    let mut keys = 0;
    for h in -2..=20 {
        for d1 in -6i64..=6 {
            for d2 in -6i64..=6 {
                if (d1, d2) == (0, 0) || discriminant(h, d1, d2) < 0 {
                    continue;
                }
                let mut s = Rat::zero();
                for m in 1..=d1.abs().max(d2.abs()) {
                    s += nl.get(m, h, d1, d2).map_err(|e| e.to_string())?;
                }
                if s != nl_number(h, d1, d2) {
                    return Err(format!("sum {s} != {} at ({h},{d1},{d2})", nl_number(h, d1, d2)));
                }
                keys += 1;
            }
        }
    }
    Ok(format!("{keys} keys"))
}

fn btxg_loop() -> Outcome {
    let v678 = from_report(verify_v678(6))?;
    // 2·(Harvey-Moore right side) − 2 against Σ d2³ N q1^{d1} q2^{d2}
    let n = 10;
    let hm = harvey_moore_rhs(n, n).map_err(|e| e.to_string())?;
    let gw = gw_closed_form(n, n).map_err(|e| e.to_string())?;
    for a in 0..=n {
        for b in -n..=n {
            let lhs = hm.coeff(a, b) * rat::int(2) - if (a, b) == (0, 0) { rat::int(2) } else { Rat::zero() };
            let rhs = match gw.get(a, b) {
                Ok(v) => v * rat::int(b * b * b),
                Err(_) => Rat::zero(),
            };
            if lhs != rhs {
                return Err(format!("closed form vs d2³N at ({a},{b}): {lhs} vs {rhs}"));
            }
        }
    }
    Ok(format!("{v678}; btxg side = 2 + Σ d2³N on a ≤ {n}, |b| ≤ {n}"))
}

fn kernel_properties() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 500, failure_persistence: None, ..Config::default() });
    let count = std::cell::Cell::new(0);
    runner
        .run(&common::kernel_case(), |k| {
            count.set(count.get() + 1);
            common::check_kernel_case(&k).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} randomized cases", count.get()))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 yau-zaslow reproduction", Box::new(yau_zaslow)),
        ("2 noether-lefschetz anchor", Box::new(nl_anchor)),
        ("3 refined noether-lefschetz sum", Box::new(refined_sum)),
        ("4 harvey-moore identity", Box::new(|| from_report(verify_harmoo(12, 12)))),
        ("5 lattice-sum form", Box::new(|| from_report(verify_ppx(10, 10)))),
        ("6 hecke suite", Box::new(|| from_report(verify_hecke(8, 25)))),
        ("7 bol suite", Box::new(|| from_report(bol_check(30)))),
        (
            "8 fricke/klm suite",
            Box::new(|| {
                all(vec![
                    from_report(verify_fricke(25)),
                    from_report(verify_ode_solution(20)),
                    from_report(verify_vvh_equivalence(8)),
                ])
            }),
        ),
        ("9 f3 cancellation", Box::new(|| from_report(verify_f3_cancellation(8)))),
        ("10 prepotential endpoint", Box::new(btxg_loop)),
        ("11 kernel properties", Box::new(kernel_properties)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {name} ({secs:.2}s): {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
