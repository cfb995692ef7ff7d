//! Recursion against closed formula, coefficient by coefficient.

use klein_poincare::engine::{p_complex_recursive, p_complex_zagier, p_tau_closed, p_tau_recursive, ClosedCase};
use klein_poincare::hn::{degree_violation, KleinTopType, Tau};
use klein_poincare::rational_fn::rf_to_series;

const ORDER: usize = 30;

#[test]
fn complex_case_agrees() {
    for g in 2..=5 {
        for r in 1..=4u32 {
            for d in 0..r as i64 {
                let closed = rf_to_series(&p_complex_zagier(g, r, d).unwrap(), ORDER).unwrap();
                let rec = p_complex_recursive(g, r, d, ORDER).unwrap();
                assert_eq!(rec.first_mismatch(&closed), None, "g={g} r={r} d={d}");
            }
        }
    }
}

fn sweep(filter: impl Fn(ClosedCase) -> bool) -> usize {
    let mut checked = 0;
    for g in 2..=5 {
        for kt in KleinTopType::all_of_genus(g) {
            for tau in [Tau::Real, Tau::Quaternionic] {
                if !filter(ClosedCase::of(&kt, tau)) {
                    continue;
                }
                for r in 1..=4u32 {
                    // every residue class of the degree that the closed formula distinguishes
                    for d in 0..2 * r as i64 {
                        if degree_violation(&kt, tau, r, d).is_some() {
                            continue;
                        }
                        let closed = rf_to_series(&p_tau_closed(&kt, tau, r, d).unwrap(), ORDER).unwrap();
                        let rec = p_tau_recursive(&kt, tau, r, d, ORDER).unwrap();
                        assert_eq!(rec.first_mismatch(&closed), None, "{kt} {tau} r={r} d={d}");
                        checked += 1;
                    }
                }
            }
        }
    }
    checked
}

#[test]
fn real_without_points_agrees() {
    assert!(sweep(|c| c == ClosedCase::RealNoPoints) > 0);
}

#[test]
fn quaternionic_without_points_agrees() {
    assert!(sweep(|c| c == ClosedCase::QuatNoPointsOddGenus) > 0);
    assert!(sweep(|c| c == ClosedCase::QuatNoPointsEvenGenus) > 0);
}

#[test]
fn real_with_points_agrees() {
    assert!(sweep(|c| c == ClosedCase::RealWithPoints) > 0);
}

#[test]
fn quaternionic_with_points_agrees() {
    assert!(sweep(|c| c == ClosedCase::QuatWithPoints) > 0);
}
