//! Acceptance gate: the nine headline properties of the toolkit, each as one
//! test printing a single pass/fail line with its measured quantities and
//! wall time. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines for passing criteria too.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logsmooth::closed_forms::realize_lacunary;
use logsmooth::corpus;
use logsmooth::dyadic::{lp_quasi_norm, PeriodicSignal};
use logsmooth::embed::consistency_scan;
use logsmooth::haar::{haar_analyze, haar_synthesize};
use logsmooth::params::{ExtRational as X, SpaceParams};
use logsmooth::rearrange::rearrangement;
use logsmooth::sharpness::{
    demonstrate_divergence, gm_demo, lacunary_demo, Pattern, WitnessSpec,
};
use logsmooth::suites;

/// Panic with a FAIL line unless every check passed; print one PASS line
/// otherwise. Also enforces the stated runtime budget.
fn gate(criterion: &str, started: Instant, budget_s: f64, checks: &[suites::Check]) {
    let elapsed = started.elapsed().as_secs_f64();
    let detail = checks
        .iter()
        .map(|c| format!("{}: {}", c.name, c.measure))
        .collect::<Vec<_>>()
        .join("; ");
    let line = format!("criterion {criterion}: {detail} ({elapsed:.2} s, budget {budget_s} s)");
    assert!(
        checks.iter().all(|c| c.passed),
        "[FAIL] {line}"
    );
    assert!(elapsed < budget_s, "[FAIL] over budget: {line}");
    println!("[PASS] {line}");
}

#[test]
fn criterion_1_lacunary_coincidence() {
    let t0 = Instant::now();
    let c = suites::coincidence_check().unwrap();
    gate("1 (lacunary coincidence)", t0, 1.0, &[c]);
}

#[test]
fn criterion_2_route_equivalence() {
    let t0 = Instant::now();
    let c = suites::route_agreement_check(corpus::bundled()).unwrap();
    gate("2 (route equivalence)", t0, 30.0, &[c]);
}

#[test]
fn criterion_3_embedding_decision_table() {
    let t0 = Instant::now();
    let checks = suites::engine_table_checks();
    assert_eq!(checks.len(), 12);
    gate("3 (embedding decision table)", t0, 0.1, &checks);
}

#[test]
fn criterion_4_hardy_criteria() {
    let t0 = Instant::now();
    let checks = suites::hardy_checks().unwrap();
    gate("4 (hardy criteria)", t0, 0.1, &checks);
}

#[test]
fn criterion_5_witness_divergence() {
    let t0 = Instant::now();
    let mut checks = Vec::new();

    let (ws, src, dst) = lacunary_demo();
    assert_eq!(*ws.truncations.last().unwrap(), 1 << 14);
    let table = demonstrate_divergence(&ws, &src, &dst).unwrap();
    checks.push(suites::Check {
        name: "lacunary-witness".into(),
        measure: format!(
            "src step {:.3}% (< 2%), dst step {:.2}% (> 10%) at truncation 2^14",
            100.0 * table.src_step,
            100.0 * table.dst_step
        ),
        passed: table.verdict == Pattern::Holds,
    });

    let (mut ws, src, dst) = gm_demo();
    ws.truncations = vec![1 << 11, 1 << 12, 1 << 13, 1 << 14];
    let ws = WitnessSpec::new(ws.family, ws.alpha, ws.beta, ws.b, ws.p, ws.q, ws.truncations)
        .unwrap();
    let table = demonstrate_divergence(&ws, &src, &dst).unwrap();
    checks.push(suites::Check {
        name: "general-monotone-witness".into(),
        measure: format!(
            "src step {:.3}% (< 2%), dst step {:.2}% (> 10%) at truncation 2^14",
            100.0 * table.src_step,
            100.0 * table.dst_step
        ),
        passed: table.verdict == Pattern::Holds,
    });

    gate("5 (witness divergence)", t0, 10.0, &checks);
}

#[test]
fn criterion_6_modulus_properties() {
    let t0 = Instant::now();
    let checks = suites::modulus_checks(corpus::bundled()).unwrap();
    assert_eq!(checks.len(), 5);
    gate("6 (modulus properties)", t0, 60.0, &checks);
}

#[test]
fn criterion_7_gm_closed_forms() {
    let t0 = Instant::now();
    let checks = suites::gm_closed_form_checks().unwrap();
    assert_eq!(checks.len(), 2);
    gate("7 (gm closed forms vs signal norms)", t0, 120.0, &checks);
}

#[test]
fn criterion_8_haar_regime() {
    let t0 = Instant::now();
    let checks = suites::haar_checks(corpus::bundled()).unwrap();
    gate("8 (haar regime)", t0, 60.0, &checks);
}

#[test]
fn criterion_9_infrastructure_exactness() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 1 << 10;
    let samples: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let f = PeriodicSignal::new(samples, "random").unwrap();

    let mut checks = Vec::new();

    let back = PeriodicSignal::from_coeffs(f.coeffs(), "fft-back").unwrap();
    let fft_err = f.rel_l2_distance(&back);
    checks.push(suites::Check {
        name: "fft-round-trip".into(),
        measure: format!("relative error {fft_err:.2e} (<= 1e-12)"),
        passed: fft_err <= 1e-12,
    });

    let haar_back = haar_synthesize(&haar_analyze(&f)).unwrap();
    let haar_err = f.rel_l2_distance(&haar_back);
    checks.push(suites::Check {
        name: "haar-round-trip".into(),
        measure: format!("relative error {haar_err:.2e} (<= 1e-12)"),
        passed: haar_err <= 1e-12,
    });

    let time_energy: f64 =
        f.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
    let freq_energy: f64 = f.coeffs().iter().map(|z| z.norm_sqr()).sum();
    let parseval_err = (time_energy / freq_energy - 1.0).abs();
    checks.push(suites::Check {
        name: "parseval".into(),
        measure: format!("relative defect {parseval_err:.2e} (<= 1e-10)"),
        passed: parseval_err <= 1e-10,
    });

    // Rearrangement is measure preserving, so it preserves every L_p norm.
    let real = realize_lacunary(&corpus::bundled().lacunary[0].1, 1 << 10).unwrap();
    let prof = rearrangement(&real);
    let mut worst = 0.0f64;
    for p in [1.0, 2.0, 4.0] {
        let direct = lp_quasi_norm(&real, p).unwrap();
        let rearranged = prof.lp_norm(p);
        worst = worst.max((rearranged / direct - 1.0).abs());
    }
    checks.push(suites::Check {
        name: "rearrangement-preserves-lp".into(),
        measure: format!("worst relative defect {worst:.2e} (<= 1e-9)"),
        passed: worst <= 1e-9,
    });

    let grid = forty_space_grid();
    assert_eq!(grid.len(), 40);
    let conflicts = consistency_scan(&grid);
    checks.push(suites::Check {
        name: "engine-consistency-scan".into(),
        measure: format!("{} conflicts over a 40-space grid (= 0)", conflicts.len()),
        passed: conflicts.is_empty(),
    });

    gate("9 (infrastructure exactness)", t0, 10.0, &checks);
}

fn forty_space_grid() -> Vec<SpaceParams> {
    let mut grid = Vec::new();
    for alpha in [X::frac(1, 4), X::frac(1, 2), X::int(1), X::int(2)] {
        for b in [X::int(1), X::int(2)] {
            for (p, q) in [(X::int(2), X::int(2)), (X::int(3), X::int(2))] {
                grid.push(SpaceParams::lipschitz(alpha, b, p, q));
            }
        }
    }
    for s in [X::frac(1, 4), X::frac(1, 2), X::int(1)] {
        for xi in [X::zero(), X::frac(-1, 2)] {
            for (p, q) in [(X::int(2), X::int(2)), (X::int(3), X::int(3))] {
                grid.push(SpaceParams::besov(s, xi, p, q));
            }
        }
    }
    for p in [X::int(2), X::int(3), X::int(4), X::Infinity] {
        grid.push(SpaceParams::lebesgue(p));
    }
    for xi in [X::frac(-1, 2), X::frac(-1, 4)] {
        grid.push(SpaceParams::lorentz_zygmund(X::int(4), X::int(2), xi));
    }
    for alpha in [X::frac(1, 2), X::int(1)] {
        for p in [X::int(2), X::int(3)] {
            grid.push(SpaceParams::sobolev(alpha, p));
        }
    }
    grid.push(SpaceParams::classical_lip());
    grid.push(SpaceParams::bounded_variation());
    grid
}
