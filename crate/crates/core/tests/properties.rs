//! Randomized spec invariants beyond the acceptance criteria.

mod common;

use fracmap::cycles::{
    cubic_thresholds, logistic_cycle_closed_form, parameter_window, solve_period2,
    CycleVerdict, MapFamily,
};
use fracmap::kernel::FractionalOrder;
use fracmap::maps::{MapSpec, Parity};
use fracmap::region::build_region;
use fracmap::simulator::{detect_asymptotic_period2, iterate_direct};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn logistic_window(al: f64) -> (f64, f64) {
    let p = 2f64.powf(al);
    let hi = 1.0
        + (p + 2f64.powf(1.0 + 2.0 * al) - 2f64.powf(1.0 + 1.5 * al) * (al * PI / 4.0).sin())
            .sqrt();
    (1.0 + p, hi)
}

#[test]
fn newton_matches_closed_form_across_the_window() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..50 {
        let al = rng.random_range(0.2..0.95);
        let alpha = order(al);
        let (lo, hi) = logistic_window(al);
        let lambda = lo + (hi - lo) * rng.random_range(0.1..0.9);
        let (u, v) = logistic_cycle_closed_form(lambda, alpha).unwrap();
        let guess = (
            u + rng.random_range(-0.02..0.02),
            v + rng.random_range(-0.02..0.02),
        );
        let cycle = solve_period2(&MapSpec::logistic(lambda), alpha, guess).unwrap();
        assert!(
            (cycle.u - u).abs() < 1e-9 && (cycle.v - v).abs() < 1e-9,
            "lambda={lambda} alpha={al}: newton ({}, {}) vs closed ({u}, {v})",
            cycle.u,
            cycle.v
        );
        assert_eq!(cycle.verdict, CycleVerdict::Stable);
    }
}

#[test]
fn solved_cycles_agree_with_simulation_tails() {
    // (family, parameter, alpha, x0); parameters sit well inside their
    // period-2 windows so the T = 2000 tail has settled to the 1e-2 scale
    let cases: Vec<(MapSpec, f64, f64)> = vec![
        (MapSpec::logistic(2.65), 0.4, 0.3),
        (MapSpec::logistic(2.8), 0.4, 0.3),
        (MapSpec::cubic(-0.20), 0.7, 0.3),
        (MapSpec::cubic(-0.26), 0.7, -0.3),
        (MapSpec::gauss(0.3), 0.6, 0.2),
        (MapSpec::gauss(0.1), 0.6, 0.2),
    ];
    for (map, al, x0) in cases {
        let alpha = order(al);
        let traj = iterate_direct(&map, x0, alpha, 2000).unwrap();
        let (u_sim, v_sim) = detect_asymptotic_period2(&traj, 100, 1e-2)
            .unwrap_or_else(|| panic!("{} no cycle detected", map.kind_name()));
        let cycle = solve_period2(&map, alpha, (u_sim, v_sim)).unwrap();
        assert!(
            (cycle.u - u_sim).abs() < 1e-2 && (cycle.v - v_sim).abs() < 1e-2,
            "{}: solved ({}, {}) vs simulated ({u_sim}, {v_sim})",
            map.kind_name(),
            cycle.u,
            cycle.v
        );
        assert_eq!(cycle.verdict, CycleVerdict::Stable);
    }
}

#[test]
fn eq18_eq20_identities_at_solved_roots() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let al = rng.random_range(0.25..0.9);
        let alpha = order(al);
        let (lo, hi) = logistic_window(al);
        let lambda = lo + (hi - lo) * rng.random_range(0.2..0.8);
        let map = MapSpec::logistic(lambda);
        let (u, v) = logistic_cycle_closed_form(lambda, alpha).unwrap();
        let cycle = solve_period2(&map, alpha, (u + 0.01, v - 0.01)).unwrap();
        let (u, v) = (cycle.u, cycle.v);
        let fu = map.eval(u, Parity::Even).unwrap();
        let fv = map.eval(v, Parity::Odd).unwrap();
        // u - v = -[(f(u)-u) - (f(v)-v)] 2^-alpha
        assert!(
            ((u - v) + ((fu - u) - (fv - v)) * 2f64.powf(-al)).abs() < 1e-10,
            "eq18 at lambda={lambda} alpha={al}"
        );
        // u + v = f(u) + f(v)
        assert!(
            (u + v - (fu + fv)).abs() < 1e-10,
            "eq20 at lambda={lambda} alpha={al}"
        );
    }
}

#[test]
fn region_membership_is_symmetric_for_random_points() {
    let mut rng = StdRng::seed_from_u64(99);
    for al in [0.3, 0.5, 0.8] {
        let region = build_region(order(al), 512).unwrap();
        for _ in 0..200 {
            let a = rng.random_range(-5.0..5.0);
            let b = rng.random_range(-5.0..5.0);
            assert_eq!(
                region.contains(a, b),
                region.contains(b, a),
                "alpha={al} point ({a}, {b})"
            );
        }
    }
}

#[test]
fn region_approaches_classical_limit() {
    // alpha -> 1: the polygon collapses onto |ab| = 1. Sampled one-sided
    // Hausdorff distance of in-window vertices to the classical boundary.
    let region = build_region(order(0.999), 512).unwrap();
    let mut worst: f64 = 0.0;
    for &(a, b) in region.polygon() {
        if a.abs() > 8.0 || b.abs() > 8.0 {
            continue;
        }
        worst = worst.max(common::distance_to_classical_boundary(a, b));
    }
    assert!(worst < 0.05, "worst vertex distance to |ab|=1: {worst}");
}

#[test]
fn window_endpoints_are_sharp_cubic() {
    let alpha = order(0.7);
    let region = build_region(alpha, 512).unwrap();
    let t = cubic_thresholds(alpha).unwrap();
    let eps = 1e-3;
    let stable_cycle_exists = |beta: f64| -> bool {
        fracmap::cycles::cubic_cycle_closed_form(beta, alpha)
            .into_iter()
            .any(|(u, v)| {
                if (u - v).abs() < 1e-8 {
                    return false;
                }
                let map = MapSpec::cubic(beta);
                let a = map.eval_with_derivative(u, Parity::Even).unwrap().derivative;
                let b = map.eval_with_derivative(v, Parity::Odd).unwrap().derivative;
                region.contains(a, b)
            })
    };
    assert!(stable_cycle_exists(t.beta2 + eps), "just inside lower edge");
    assert!(stable_cycle_exists(t.beta1 - eps), "just inside upper edge");
    assert!(!stable_cycle_exists(t.beta2 - eps), "just below lower edge");
    assert!(!stable_cycle_exists(t.beta1 + eps), "just above upper edge");
}

#[test]
fn window_endpoints_are_sharp_logistic_via_public_api() {
    let alpha = order(0.4);
    let region = build_region(alpha, 512).unwrap();
    let (lo, hi) = parameter_window(MapFamily::Logistic, alpha).unwrap();
    let eps = 1e-3;
    let stable_at = |lambda: f64| -> bool {
        match logistic_cycle_closed_form(lambda, alpha) {
            Ok((u, v)) if (u - v).abs() > 1e-8 => {
                let map = MapSpec::logistic(lambda);
                let a = map.eval_with_derivative(u, Parity::Even).unwrap().derivative;
                let b = map.eval_with_derivative(v, Parity::Odd).unwrap().derivative;
                region.contains(a, b)
            }
            _ => false,
        }
    };
    assert!(stable_at(lo + eps));
    assert!(stable_at(hi - eps));
    assert!(!stable_at(lo - eps));
    assert!(!stable_at(hi + eps));
}
