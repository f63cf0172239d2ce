//! Invariant suites behind the `selftest` subcommand.
//!
//! Each suite checks one layer of the tower (field axioms, characters,
//! ring structure, Gauss sums, codebooks) against properties that must
//! hold for every prime power, on a live [`FieldSpec`] rather than
//! frozen constants. They exist so a user can point the binary at any q
//! and watch the whole stack defend itself.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use crate::characters::{self, AdditiveCharIndex, MultCharIndex};
use crate::codebook::{predicted_inner_product_c1, Codebook};
use crate::error::Result;
use crate::eval::{evaluate, i_max_formula, ratio_formula_c1, ratio_formula_c2, EvalOptions};
use crate::field::{prime_power_decomposition, FieldElement, FieldSpec};
use crate::ring::{self, RingAdditiveCharIndex, RingElement, RingMultCharIndex};

/// Result of one suite run on one field.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub q: u32,
    pub passed: bool,
    /// First counterexample, when failed.
    pub detail: String,
    pub elapsed: f64,
}

/// Prime powers q with 2 <= q <= max, ascending, as (p, m, q).
pub fn prime_powers_up_to(max: u32) -> Vec<(u32, u32, u32)> {
    (2..=max)
        .filter_map(|q| prime_power_decomposition(q).map(|(p, m)| (p, m, q)))
        .collect()
}

type Check = std::result::Result<(), String>;

/// Field axioms over all element triples: commutativity, associativity,
/// distributivity, inverses, and the Lagrange identity x^(q-1) = 1.
pub fn field_axioms(f: &FieldSpec) -> Check {
    let els: Vec<FieldElement> = f.elements().collect();
    for &x in &els {
        for &y in &els {
            if f.add(x, y) != f.add(y, x) {
                return Err(format!("addition not commutative at {x:?}, {y:?}"));
            }
            if f.mul(x, y) != f.mul(y, x) {
                return Err(format!("multiplication not commutative at {x:?}, {y:?}"));
            }
            for &z in &els {
                if f.mul(x, f.mul(y, z)) != f.mul(f.mul(x, y), z) {
                    return Err(format!("multiplication not associative at {x:?}, {y:?}, {z:?}"));
                }
                if f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z)) {
                    return Err(format!("distributivity fails at {x:?}, {y:?}, {z:?}"));
                }
            }
        }
    }
    for &x in &els {
        if !f.add(x, f.neg(x)).is_zero() {
            return Err(format!("additive inverse fails at {x:?}"));
        }
        if x.is_zero() {
            continue;
        }
        let inv = f.inv(x).map_err(|e| e.to_string())?;
        if f.mul(x, inv) != FieldElement::ONE {
            return Err(format!("multiplicative inverse fails at {x:?}"));
        }
        if f.pow(x, u64::from(f.q()) - 1) != FieldElement::ONE {
            return Err(format!("x^(q-1) != 1 at {x:?}"));
        }
    }
    Ok(())
}

/// Trace linearity, Frobenius invariance, and fiber sizes q/p.
pub fn trace_properties(f: &FieldSpec) -> Check {
    let mut fibers = vec![0u32; f.p() as usize];
    for x in f.elements() {
        fibers[f.trace(x) as usize] += 1;
        if f.trace(f.pow(x, u64::from(f.p()))) != f.trace(x) {
            return Err(format!("trace not Frobenius-invariant at {x:?}"));
        }
        for y in f.elements() {
            if f.trace(f.add(x, y)) != (f.trace(x) + f.trace(y)) % f.p() {
                return Err(format!("trace not additive at {x:?}, {y:?}"));
            }
        }
    }
    if fibers.iter().any(|&c| c != f.q() / f.p()) {
        return Err(format!("trace fibers are {fibers:?}, expected all q/p"));
    }
    Ok(())
}

/// The discrete-log table inverts the power map and is a bijection.
pub fn dlog_table(f: &FieldSpec) -> Check {
    let mut seen = vec![false; (f.q() - 1) as usize];
    for x in f.nonzero_elements() {
        let k = f.discrete_log(x).map_err(|e| e.to_string())?;
        if f.g_pow(k) != x {
            return Err(format!("g^dlog({x:?}) != {x:?}"));
        }
        if std::mem::replace(&mut seen[k as usize], true) {
            return Err(format!("dlog value {k} repeated"));
        }
    }
    Ok(())
}

/// Both field character families are homomorphisms and satisfy the
/// orthogonality relations.
pub fn field_characters(f: &FieldSpec) -> Check {
    for b in f.elements() {
        let idx = AdditiveCharIndex::new(b);
        for x in f.elements() {
            for y in f.elements() {
                let lhs = characters::additive_char(f, idx, f.add(x, y));
                let rhs = characters::additive_char(f, idx, x)
                    .mul(characters::additive_char(f, idx, y));
                if lhs != rhs {
                    return Err(format!("χ_{b:?} not multiplicative over + at {x:?}, {y:?}"));
                }
            }
        }
        let sum: Complex64 = f
            .elements()
            .map(|c| characters::additive_char(f, idx, c).to_complex())
            .sum();
        let expect = if b.is_zero() { f64::from(f.q()) } else { 0.0 };
        if (sum - Complex64::new(expect, 0.0)).norm() > 1e-9 {
            return Err(format!("additive orthogonality fails at b = {b:?}: {sum}"));
        }
    }
    for j in 0..f.q() - 1 {
        let idx = MultCharIndex::new(f, j);
        for x in f.nonzero_elements() {
            for y in f.nonzero_elements() {
                let lhs = characters::mult_char(f, idx, f.mul(x, y)).map_err(|e| e.to_string())?;
                let rhs = characters::mult_char(f, idx, x)
                    .map_err(|e| e.to_string())?
                    .mul(characters::mult_char(f, idx, y).map_err(|e| e.to_string())?);
                if lhs != rhs {
                    return Err(format!("ψ_{j} not a homomorphism at {x:?}, {y:?}"));
                }
            }
        }
        let sum: Complex64 = f
            .nonzero_elements()
            .map(|c| characters::mult_char(f, idx, c).unwrap().to_complex())
            .sum();
        let expect = if j == 0 { f64::from(f.q() - 1) } else { 0.0 };
        if (sum - Complex64::new(expect, 0.0)).norm() > 1e-9 {
            return Err(format!("multiplicative orthogonality fails at j = {j}: {sum}"));
        }
    }
    Ok(())
}

/// The classical Gauss sum values over F_q: q - 1, -1, 0, and modulus √q.
pub fn field_gauss_values(f: &FieldSpec) -> Check {
    let q = f64::from(f.q());
    for j in 0..f.q() - 1 {
        let jdx = MultCharIndex::new(f, j);
        for b in f.elements() {
            let g = characters::gauss_sum(f, jdx, AdditiveCharIndex::new(b));
            let fail = match (j == 0, b.is_zero()) {
                (true, true) => (g - Complex64::new(q - 1.0, 0.0)).norm() > 1e-9,
                (true, false) => (g - Complex64::new(-1.0, 0.0)).norm() > 1e-9,
                (false, true) => g.norm() > 1e-9,
                (false, false) => (g.norm() - q.sqrt()).abs() > 1e-9,
            };
            if fail {
                return Err(format!("G(ψ_{j}, χ_{b:?}) = {g} violates the classical value"));
            }
        }
    }
    Ok(())
}

/// Unit counts, the unit factorization roundtrip, and agreement of the
/// two λ forms on units.
pub fn ring_structure(f: &FieldSpec) -> Check {
    let q = f.q();
    if ring::units(f).count() as u32 != q * (q - 1) {
        return Err("unit count is not q(q-1)".into());
    }
    if ring::elements(f).filter(|r| !r.is_unit()).count() as u32 != q {
        return Err("maximal ideal size is not q".into());
    }
    let u2 = ring::mul(f, RingElement::u(), RingElement::u());
    if !u2.is_zero() {
        return Err(format!("u^2 = {u2:?} instead of 0"));
    }
    for t in ring::units(f) {
        let d = ring::unit_decompose(f, t).map_err(|e| e.to_string())?;
        if ring::unit_recompose(f, d) != t {
            return Err(format!("decomposition roundtrip fails at {t:?}"));
        }
        for b in f.elements() {
            for c in f.elements() {
                let idx = RingAdditiveCharIndex::new(b, c);
                if ring::additive_char(f, idx, t) != ring::additive_char_on_unit(f, idx, d) {
                    return Err(format!("λ forms disagree at t = {t:?}, b = {b:?}, c = {c:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Homomorphism laws for the ring characters: λ over sums of elements,
/// φ over products of units. Exhaustive for q <= 5, randomized above.
pub fn ring_characters(f: &FieldSpec) -> Check {
    let check_lambda = |idx: RingAdditiveCharIndex, x: RingElement, y: RingElement| -> Check {
        let lhs = ring::additive_char(f, idx, ring::add(f, x, y));
        let rhs = ring::additive_char(f, idx, x).mul(ring::additive_char(f, idx, y));
        if lhs != rhs {
            return Err(format!("λ not additive at {x:?}, {y:?}"));
        }
        Ok(())
    };
    let check_phi = |idx: RingMultCharIndex, x: RingElement, y: RingElement| -> Check {
        let lhs = ring::mult_char(f, idx, ring::mul(f, x, y)).map_err(|e| e.to_string())?;
        let rhs = ring::mult_char(f, idx, x)
            .map_err(|e| e.to_string())?
            .mul(ring::mult_char(f, idx, y).map_err(|e| e.to_string())?);
        if lhs != rhs {
            return Err(format!("φ not multiplicative at {x:?}, {y:?}"));
        }
        Ok(())
    };

    if f.q() <= 5 {
        for b in f.elements() {
            for c in f.elements() {
                let idx = RingAdditiveCharIndex::new(b, c);
                for x in ring::elements(f) {
                    for y in ring::elements(f) {
                        check_lambda(idx, x, y)?;
                    }
                }
            }
        }
        for j in 0..f.q() - 1 {
            for a in f.elements() {
                let idx = RingMultCharIndex::new(MultCharIndex::new(f, j), a);
                for x in ring::units(f) {
                    for y in ring::units(f) {
                        check_phi(idx, x, y)?;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let any = |rng: &mut ChaCha8Rng| FieldElement(rng.random_range(0..f.q()));
        let nonzero = |rng: &mut ChaCha8Rng| FieldElement(rng.random_range(1..f.q()));
        for _ in 0..10_000 {
            let idx = RingAdditiveCharIndex::new(any(&mut rng), any(&mut rng));
            let x = RingElement::new(any(&mut rng), any(&mut rng));
            let y = RingElement::new(any(&mut rng), any(&mut rng));
            check_lambda(idx, x, y)?;
            let idx = RingMultCharIndex::new(
                MultCharIndex::new(f, rng.random_range(0..f.q() - 1)),
                any(&mut rng),
            );
            let x = RingElement::new(nonzero(&mut rng), any(&mut rng));
            let y = RingElement::new(nonzero(&mut rng), any(&mut rng));
            check_phi(idx, x, y)?;
        }
    }
    Ok(())
}

/// Σ_{r in R} λ(r) vanishes unless λ is trivial.
pub fn ring_orthogonality(f: &FieldSpec) -> Check {
    let q2 = f64::from(f.q()) * f64::from(f.q());
    for b in f.elements() {
        for c in f.elements() {
            let idx = RingAdditiveCharIndex::new(b, c);
            let sum: Complex64 = ring::elements(f)
                .map(|r| ring::additive_char(f, idx, r).to_complex())
                .sum();
            let expect = if idx.is_trivial() { q2 } else { 0.0 };
            if (sum - Complex64::new(expect, 0.0)).norm() > 1e-9 {
                return Err(format!("Σλ = {sum} at b = {b:?}, c = {c:?}"));
            }
        }
    }
    Ok(())
}

/// The closed-form ring Gauss sum agrees with brute-force enumeration
/// over every character pair.
pub fn ring_gauss_agreement(f: &FieldSpec) -> Check {
    let tol = 1e-9 * f64::from(f.q()) * f64::from(f.q() - 1);
    for j in 0..f.q() - 1 {
        for a in f.elements() {
            let phi = RingMultCharIndex::new(MultCharIndex::new(f, j), a);
            for b in f.elements() {
                for c in f.elements() {
                    let lam = RingAdditiveCharIndex::new(b, c);
                    let closed = ring::gauss_sum_closed(f, phi, lam);
                    let oracle = ring::gauss_sum_oracle(f, phi, lam);
                    if (closed - oracle).norm() > tol {
                        return Err(format!(
                            "closed {closed} vs oracle {oracle} at j={j} a={a:?} b={b:?} c={c:?}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Build and exhaustively evaluate both families: predicted inner
/// products, the two-level spectrum, I_max = 1/(q-1), and the ratio
/// formulas. Meant for small q; the caller bounds it.
pub fn codebook_contract(f: &FieldSpec) -> Check {
    let q = f.q();
    for cb in [
        Codebook::build_c1(f, MultCharIndex::new(f, 1)).map_err(|e| e.to_string())?,
        Codebook::build_c2(f, FieldElement::ZERO).map_err(|e| e.to_string())?,
    ] {
        let n = cb.n() as usize;
        for i in 0..n {
            for k in i + 1..n {
                let actual = cb.inner_product(i, k).map_err(|e| e.to_string())?;
                let predicted = cb
                    .predicted_pair(i, k)
                    .map_err(|e| e.to_string())?
                    .expect("c1/c2 predict every pair");
                if (actual - predicted).norm() > 1e-9 {
                    return Err(format!(
                        "{} rows ({i}, {k}): measured {actual}, predicted {predicted}",
                        cb.construction()
                    ));
                }
            }
        }
        let report = evaluate(&cb, &EvalOptions::default()).map_err(|e| e.to_string())?;
        if q > 2 && (report.i_max - i_max_formula(q).unwrap()).abs() > 1e-9 {
            return Err(format!("{} I_max = {}, want 1/(q-1)", cb.construction(), report.i_max));
        }
        if !report.spectrum_gate() {
            return Err(format!("{} spectrum leaves the two-level set", cb.construction()));
        }
        let formula = match cb.construction() {
            crate::codebook::Construction::C1 => ratio_formula_c1(q).unwrap(),
            _ => ratio_formula_c2(q).unwrap(),
        };
        if q > 2 && (report.ratio - formula).abs() > 1e-9 {
            return Err(format!(
                "{} ratio = {}, formula says {formula}",
                cb.construction(),
                report.ratio
            ));
        }
    }
    // Predictions are a genuine second route: tie the c1 table to the
    // ring Gauss sum oracle at a couple of difference tuples.
    let kk = f64::from(q) * f64::from(q - 1);
    for (a, b, c) in [(0u32, 1u32, 0u32), (1, 1, 1), (1, 0, 0)] {
        let (a, b, c) = (FieldElement(a), FieldElement(b), FieldElement(c));
        let phi = RingMultCharIndex::new(MultCharIndex::new(f, 0), a);
        let lam = RingAdditiveCharIndex::new(b, c);
        let via_ring = ring::gauss_sum_oracle(f, phi, lam) / kk;
        let table = predicted_inner_product_c1(f, a, b, c).map_err(|e| e.to_string())?;
        if (via_ring - table).norm() > 1e-9 {
            return Err(format!("prediction table vs ring sum at ({a:?}, {b:?}, {c:?})"));
        }
    }
    Ok(())
}

/// Run every suite on every prime power q <= q_max. Codebook contracts
/// run for q <= 5 only (they are quadratic in N); the rest run everywhere.
pub fn run_all(q_max: u32) -> Result<Vec<SuiteOutcome>> {
    let mut out = Vec::new();
    for (p, m, q) in prime_powers_up_to(q_max) {
        let f = FieldSpec::build_with(p, m, None, q.max(crate::field::DEFAULT_SIZE_GUARD))?;
        let suites: Vec<(&'static str, Box<dyn Fn(&FieldSpec) -> Check>)> = vec![
            ("field axioms", Box::new(field_axioms)),
            ("trace properties", Box::new(trace_properties)),
            ("dlog table", Box::new(dlog_table)),
            ("field characters", Box::new(field_characters)),
            ("field Gauss values", Box::new(field_gauss_values)),
            ("ring structure", Box::new(ring_structure)),
            ("ring characters", Box::new(ring_characters)),
            ("ring orthogonality", Box::new(ring_orthogonality)),
            ("ring Gauss agreement", Box::new(ring_gauss_agreement)),
        ];
        for (name, suite) in suites {
            out.push(run_one(name, q, &f, suite.as_ref()));
        }
        if q <= 5 {
            out.push(run_one("codebook contract", q, &f, &codebook_contract));
        }
    }
    Ok(out)
}

fn run_one(
    suite: &'static str,
    q: u32,
    f: &FieldSpec,
    check: &dyn Fn(&FieldSpec) -> Check,
) -> SuiteOutcome {
    let start = Instant::now();
    let result = check(f);
    SuiteOutcome {
        suite,
        q,
        passed: result.is_ok(),
        detail: result.err().unwrap_or_default(),
        elapsed: start.elapsed().as_secs_f64(),
    }
}

// ----------------------------------------------------------------- tests
