//! Kernel coefficients against an independent log-gamma oracle.

mod common;

use common::kernel_oracle;
use fracmap::kernel::{alternating_kernel_sum, kernel_table, FractionalOrder};

/// Frozen reference values computed with mpmath at 30 significant digits,
/// Gamma(m + a)/(Gamma(a) Gamma(m + 1)) at the exact f64 arguments.
const FROZEN: [(f64, usize, f64); 18] = [
    (0.1, 1, 0.10000000000000000555),
    (0.1, 10, 0.013172835503953125928),
    (0.1, 64, 0.00248766187920533633),
    (0.1, 65, 0.0024532173301086470579),
    (0.1, 1000, 0.00020971996674732134985),
    (0.1, 10000, 0.000026403249016625683081),
    (0.5, 1, 0.5),
    (0.5, 10, 0.176197052001953125),
    (0.5, 64, 0.070386092170015131768),
    (0.5, 65, 0.069844660691784246139),
    (0.5, 1000, 0.01783901114585432073),
    (0.5, 10000, 0.00564182531222042006),
    (0.9, 1, 0.9000000000000000222),
    (0.9, 10, 0.74002289694145317589),
    (0.9, 64, 0.61695067243884525494),
    (0.9, 65, 0.61600151755817010861),
    (0.9, 1000, 0.46897924669495850924),
    (0.9, 10000, 0.37253854244193434555),
];

#[test]
fn oracle_matches_frozen_gamma_values() {
    for &(alpha, m, want) in &FROZEN {
        let got = kernel_oracle(alpha, m);
        let rel = (got - want).abs() / want;
        let budget = if m <= 64 { 1e-12 } else { 1e-13 };
        assert!(
            rel < budget,
            "oracle(alpha={alpha}, m={m}) = {got}, want {want} (rel {rel:.2e})"
        );
    }
}

#[test]
fn recurrence_table_matches_frozen_gamma_values() {
    for &(alpha, m, want) in &FROZEN {
        let table = kernel_table(FractionalOrder::new(alpha).unwrap(), m);
        let got = table.get(m);
        let rel = (got - want).abs() / want;
        assert!(
            rel < 1e-14,
            "k_{m}(alpha={alpha}) = {got}, want {want} (rel {rel:.2e})"
        );
    }
}

#[test]
fn recurrence_agrees_with_oracle_to_1e12_up_to_m_10000() {
    for i in 1..=9u32 {
        let alpha = f64::from(i) / 10.0;
        let table = kernel_table(FractionalOrder::new(alpha).unwrap(), 10_000);
        let mut worst = 0.0f64;
        for m in 0..=10_000 {
            let k = table.get(m);
            let o = kernel_oracle(alpha, m);
            worst = worst.max((k - o).abs() / k);
        }
        assert!(
            worst < 1e-12,
            "alpha={alpha}: worst recurrence/oracle deviation {worst:.2e}"
        );
    }
}

#[test]
fn alternating_sum_reaches_limit_for_all_tested_orders() {
    for i in 1..=9u32 {
        let alpha = f64::from(i) / 10.0;
        let got = alternating_kernel_sum(FractionalOrder::new(alpha).unwrap(), 100_000);
        let want = 2f64.powf(-alpha);
        assert!(
            (got - want).abs() < 1e-4,
            "alpha={alpha}: {got} vs {want}"
        );
    }
}
