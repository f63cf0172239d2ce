//! Acceptance gate: one test per numbered criterion, each printing a
//! PASS line with the measured margin when it holds. Tolerances are the
//! contract values, pinned here rather than shared with the library so
//! the gate cannot drift with the implementation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use ring_codebook::codebook::Codebook;
use ring_codebook::eval::{
    evaluate, i_max_formula, ratio_formula_c1, ratio_formula_c2, EvalMode, EvalOptions,
};
use ring_codebook::field::{FieldElement, FieldSpec};
use ring_codebook::ring::{
    gauss_sum_closed, gauss_sum_oracle, RingAdditiveCharIndex, RingMultCharIndex,
};
use ring_codebook::selftest;
use ring_codebook::{Construction, MultCharIndex};

const TOL: f64 = 1e-9;

fn field(q: u32) -> FieldSpec {
    let (p, m) = ring_codebook::field::prime_power_decomposition(q).unwrap();
    FieldSpec::build(p, m).unwrap()
}

fn build(construction: Construction, spec: &FieldSpec) -> Codebook {
    match construction {
        Construction::C1 => Codebook::build_c1(spec, MultCharIndex::new(spec, 1)).unwrap(),
        Construction::C2 => Codebook::build_c2(spec, FieldElement::ZERO).unwrap(),
        Construction::C0 => Codebook::build_c0(spec).unwrap(),
    }
}

fn single_threaded() -> EvalOptions {
    EvalOptions {
        parallel: false,
        ..Default::default()
    }
}

/// Shared body of criteria 1 and 2: exhaustive I_max = 1/(q-1).
fn check_i_max(construction: Construction) {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for q in [3u32, 4, 5, 7, 8, 9] {
        let spec = field(q);
        let cb = build(construction, &spec);
        let report = evaluate(&cb, &single_threaded()).unwrap();
        let err = (report.i_max - i_max_formula(q).unwrap()).abs();
        assert!(
            err < TOL,
            "{construction} q={q}: I_max = {} differs from 1/(q-1) by {err:.3e}",
            report.i_max
        );
        worst = worst.max(err);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "took {elapsed:.1}s, budget is 60s");
    println!(
        "criterion {}: PASS - {construction} exhaustive I_max = 1/(q-1) for q in {{3,4,5,7,8,9}}, \
         worst error {worst:.2e}, {elapsed:.2}s single-threaded",
        if construction == Construction::C1 { 1 } else { 2 },
    );
}

#[test]
fn criterion_1_c1_maximal_correlation() {
    check_i_max(Construction::C1);
}

#[test]
fn criterion_2_c2_maximal_correlation() {
    check_i_max(Construction::C2);
}

#[test]
fn criterion_3_gauss_closed_form_equals_enumeration() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut worst: f64 = 0.0;
    for q in [3u32, 4, 5, 7, 9] {
        let spec = field(q);
        let tol = TOL * f64::from(q) * f64::from(q - 1);
        for j in 0..q - 1 {
            for a in spec.elements() {
                let phi = RingMultCharIndex::new(MultCharIndex::new(&spec, j), a);
                for b in spec.elements() {
                    for c in spec.elements() {
                        let lam = RingAdditiveCharIndex::new(b, c);
                        let diff =
                            (gauss_sum_closed(&spec, phi, lam) - gauss_sum_oracle(&spec, phi, lam))
                                .norm();
                        assert!(
                            diff < tol,
                            "q={q} j={j} a={a:?} b={b:?} c={c:?}: |closed - oracle| = {diff:.3e}"
                        );
                        worst = worst.max(diff);
                        checked += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "took {elapsed:.1}s, budget is 30s");
    println!(
        "criterion 3: PASS - ring Gauss sums agree on all {checked} tuples \
         (q in {{3,4,5,7,9}}), worst |closed - oracle| = {worst:.2e}, {elapsed:.2}s"
    );
}

#[test]
fn criterion_4_two_level_spectrum_and_predicted_inner_products() {
    let nearest = |amp: f64, q: u32| {
        let target = 1.0 / f64::from(q - 1);
        amp.min((amp - target).abs())
    };
    let mut pairs_checked = 0u64;
    for construction in [Construction::C1, Construction::C2] {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let spec = field(q);
            let cb = build(construction, &spec);

            // The whole spectrum stays on the two levels.
            let report = evaluate(&cb, &EvalOptions::default()).unwrap();
            assert!(
                report.spectrum_gate(),
                "{construction} q={q}: spectrum leaves {{0, 1/(q-1)}}: {:?}",
                report.spectrum
            );

            // Inner products equal their predictions: every pair for
            // q <= 5, 100000 seeded pairs for q in {7, 8, 9}.
            let n = cb.n() as usize;
            let mut check_pair = |i: usize, k: usize| {
                let actual = cb.inner_product(i, k).unwrap();
                let predicted: Complex64 = cb.predicted_pair(i, k).unwrap().unwrap();
                assert!(
                    (actual - predicted).norm() < TOL,
                    "{construction} q={q} rows ({i},{k}): measured {actual}, predicted {predicted}"
                );
                assert!(
                    nearest(actual.norm(), q) < TOL,
                    "{construction} q={q} rows ({i},{k}): amplitude {} off both levels",
                    actual.norm()
                );
                pairs_checked += 1;
            };
            if q <= 5 {
                for i in 0..n {
                    for k in i + 1..n {
                        check_pair(i, k);
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(42);
                for _ in 0..100_000 {
                    let i = rng.random_range(0..n);
                    let k = loop {
                        let k = rng.random_range(0..n);
                        if k != i {
                            break k;
                        }
                    };
                    check_pair(i, k);
                }
            }
        }
    }
    println!(
        "criterion 4: PASS - spectra on {{0, 1/(q-1)}} and measured = predicted \
         on {pairs_checked} pairs across both families"
    );
}

#[test]
fn criterion_5_welch_ratio_formulas_and_asymptotics() {
    // Measured ratio equals the closed formula wherever we evaluate.
    for q in [3u32, 4, 5, 7, 8, 9] {
        let spec = field(q);
        for (construction, formula) in [
            (Construction::C1, ratio_formula_c1(q).unwrap()),
            (Construction::C2, ratio_formula_c2(q).unwrap()),
        ] {
            let report = evaluate(&build(construction, &spec), &EvalOptions::default()).unwrap();
            let err = (report.ratio - formula).abs();
            assert!(
                err < TOL,
                "{construction} q={q}: measured ratio {} vs formula {formula}",
                report.ratio
            );
        }
    }
    // Asymptotics by formula alone: strictly decreasing toward 1.
    let big = [16u32, 64, 256];
    for formula in [ratio_formula_c1 as fn(u32) -> _, ratio_formula_c2] {
        let vals: Vec<f64> = big.iter().map(|&q| formula(q).unwrap()).collect();
        assert!(
            vals.windows(2).all(|w| w[0] > w[1]) && vals.iter().all(|&v| v > 1.0),
            "ratio not strictly decreasing toward 1: {vals:?}"
        );
    }
    let at64 = ratio_formula_c1(64).unwrap();
    assert!(at64 < 1.02, "c1 ratio at q=64 is {at64}, expected below 1.02");
    println!(
        "criterion 5: PASS - measured ratio = formula for q in {{3..9}}, formulas \
         strictly decreasing on {{16,64,256}}, c1 ratio(64) = {at64:.5} < 1.02"
    );
}

#[test]
fn criterion_6_field_and_character_suites() {
    let start = Instant::now();
    let mut runs = 0u32;
    for (p, m, q) in selftest::prime_powers_up_to(16) {
        let spec = FieldSpec::build(p, m).unwrap();
        selftest::field_axioms(&spec).unwrap_or_else(|e| panic!("field axioms q={q}: {e}"));
        selftest::trace_properties(&spec).unwrap_or_else(|e| panic!("trace q={q}: {e}"));
        selftest::dlog_table(&spec).unwrap_or_else(|e| panic!("dlog q={q}: {e}"));
        runs += 3;
        if q <= 9 {
            selftest::field_characters(&spec)
                .unwrap_or_else(|e| panic!("characters q={q}: {e}"));
            selftest::field_gauss_values(&spec)
                .unwrap_or_else(|e| panic!("Gauss values q={q}: {e}"));
            runs += 2;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.1}s, budget is 10s");
    println!(
        "criterion 6: PASS - {runs} suite runs (axioms/trace/dlog to q=16, \
         characters/Gauss to q=9) in {elapsed:.2}s"
    );
}

#[test]
fn criterion_7_determinism() {
    // Generation: identical bytes on repeated builds.
    let spec = field(4);
    let first = Codebook::build_c1(&spec, MultCharIndex::new(&spec, 1))
        .unwrap()
        .to_json();
    let second = Codebook::build_c1(&field(4), MultCharIndex::new(&spec, 1))
        .unwrap()
        .to_json();
    assert_eq!(first, second, "repeated gen is not byte-identical");

    // Evaluation: parallel and single-worker reports agree bit for bit,
    // in both exhaustive and sampled modes.
    for construction in [Construction::C1, Construction::C2] {
        let cb = build(construction, &field(5));
        let par = evaluate(&cb, &EvalOptions::default()).unwrap();
        let seq = evaluate(&cb, &single_threaded()).unwrap();
        assert!(
            par.same_results(&seq),
            "{construction}: parallel and sequential exhaustive reports differ"
        );
        let mode = EvalMode::Sampled { pairs: 5000, seed: 11 };
        let par = evaluate(&cb, &EvalOptions { mode, ..Default::default() }).unwrap();
        let seq = evaluate(&cb, &EvalOptions { mode, parallel: false, force_exhaustive: false })
            .unwrap();
        assert!(
            par.same_results(&seq),
            "{construction}: parallel and sequential sampled reports differ"
        );
    }
    println!(
        "criterion 7: PASS - byte-identical generation, bit-identical reports \
         across worker counts in both modes"
    );
}
