//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its maximal residual and elapsed time (visible under
//! `cargo test -- --nocapture`). The negative control lives in the CLI
//! crate, where the fault-injection flag is exercised end to end.

use std::time::{Duration, Instant};

use dn_hierarchy::heisenberg::{
    beta_closed, beta_extract, dual_bases, g_closed, g_extract, labels, HierarchyCoefficients,
};
use dn_hierarchy::hirota::{exp_series, gm_residual, orbit_infinitesimal_check, Generator};
use dn_hierarchy::series::{Family, TruncatedSeries, VarSpace};
use dn_hierarchy::verify;
use dn_hierarchy::C64;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, residual: f64, tolerance: f64, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let status = if residual <= tolerance && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "criterion {criterion}: {status} (max residual {residual:.3e}, tolerance {tolerance:.0e}, elapsed {elapsed:.2?})"
    );
    assert!(
        residual <= tolerance,
        "criterion {criterion}: residual {residual:.3e} exceeds {tolerance:.0e}"
    );
    assert!(
        elapsed <= budget,
        "criterion {criterion}: runtime {elapsed:.2?} exceeds {budget:.2?}"
    );
}

#[test]
fn criterion_1_beta_crosscheck() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let bases = dual_bases(n).unwrap();
        for r in 1..=n {
            for label in labels(n) {
                let extracted = beta_extract(r, label, &bases, 1e-9).unwrap();
                worst = worst.max((extracted - beta_closed(n, r, label)).norm());
            }
        }
    }
    report("1 (beta cross-check)", worst, 1e-9, start, Duration::from_secs(5));
}

#[test]
fn criterion_2_g_crosscheck() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let bases = dual_bases(n).unwrap();
        for r in 1..=n {
            worst = worst.max((g_extract(r, &bases) - g_closed(n, r)).norm());
        }
    }

    // frozen oracle values from the closed form
    let bases4 = dual_bases(4).unwrap();
    for (r, expect) in [0.5, 4.5, 4.5, 4.5].iter().enumerate() {
        worst = worst.max((g_extract(r + 1, &bases4) - C64::new(*expect, 0.0)).norm());
    }
    let bases5 = dual_bases(5).unwrap();
    let s = 4.0 * 2f64.sqrt();
    for (r, expect) in [6.0 - s, 2.0, 6.0 + s, 8.0, 8.0].iter().enumerate() {
        worst = worst.max((g_extract(r + 1, &bases5) - C64::new(*expect, 0.0)).norm());
    }

    report("2 (g cross-check)", worst, 1e-9, start, Duration::from_secs(30));
}

#[test]
fn criterion_3_g_sum_identity() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let bases = dual_bases(n).unwrap();
        let sum: C64 = (1..=n).map(|r| g_extract(r, &bases)).sum();
        let h = 2 * n - 2;
        let target = (n * h * (h + 1)) as f64 / 12.0;
        worst = worst.max((sum - C64::new(target, 0.0)).norm());
    }
    report("3 (g-sum identity)", worst, 1e-9, start, Duration::from_secs(30));
}

#[test]
fn criterion_4_structure_suites() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let m = verify::matrix_algebra_suite(n, 1e-9, 42).unwrap();
        let h = verify::heisenberg_suite(n, 1e-9).unwrap();
        worst = worst.max(m.max_residual).max(h.max_residual);
    }
    report("4 (structure suites)", worst, 1e-9, start, Duration::from_secs(30));
}

#[test]
fn criterion_5_evaluator_equivalence() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [4usize, 5] {
        let kw = HierarchyCoefficients::extracted(n, 1e-9).unwrap();
        let gm = HierarchyCoefficients::closed(n).unwrap();
        let check = verify::evaluator_equivalence(&kw, &gm, 8, 20, 42, 1e-8).unwrap();
        worst = worst.max(check.max_residual);
    }
    report(
        "5 (evaluator equivalence)",
        worst,
        1e-8,
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_tau_checks() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [4usize, 5] {
        let coeffs = HierarchyCoefficients::extracted(n, 1e-9).unwrap();
        let space = VarSpace::new(n, 8, &[Family::T]).unwrap();

        let one = TruncatedSeries::one(&space);
        worst = worst.max(gm_residual(&one, &one, &coeffs).unwrap().max_norm());

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..3 {
            let mut linear = TruncatedSeries::zero(&space);
            for e in space.exponents().to_vec() {
                if e.value() > 3 {
                    continue;
                }
                let c = C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
                linear = linear
                    .add(&TruncatedSeries::variable(&space, Family::T, &e).unwrap().scale(c))
                    .unwrap();
            }
            let tau = exp_series(&linear).unwrap();
            worst = worst.max(gm_residual(&tau, &tau, &coeffs).unwrap().max_norm());
        }

        for e in space.exponents().to_vec() {
            if e.value() > 5 {
                continue;
            }
            let check =
                orbit_infinitesimal_check(Generator::Lowering(e), 2, &coeffs, &space).unwrap();
            worst = worst.max(check.max());
        }
        for r in 1..=n {
            for m in -2i32..=2 {
                let check =
                    orbit_infinitesimal_check(Generator::VertexX { r, m }, 2, &coeffs, &space)
                        .unwrap();
                worst = worst.max(check.max());
            }
        }
    }
    report("6 (tau checks)", worst, 1e-8, start, Duration::from_secs(120));
}
