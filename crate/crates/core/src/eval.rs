//! Numerical evaluation of codebooks: maximal cross-correlation, the
//! Welch bound, their ratio, and the amplitude spectrum.
//!
//! For an (N, K) codebook the Welch bound is I_w = sqrt((N - K) /
//! ((N - 1) K)), and a codebook is judged by how close its maximal
//! cross-correlation amplitude I_max comes to it. The two families built in
//! [`crate::codebook`] hit I_max = 1/(q - 1) exactly;
//! [`ratio_formula_c1`] and [`ratio_formula_c2`] give their I_max/I_w in
//! closed form, which tends to 1 as q grows.
//!
//! Evaluation is deterministic by construction: exhaustive mode visits
//! each unordered pair once, sampled mode draws its pair list from a
//! seeded ChaCha stream before any parallelism starts, and the parallel
//! reduction only uses order-independent operations (max, counter
//! merges). A parallel and a sequential run therefore produce
//! bit-identical reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::unity_table;
use crate::codebook::{Codebook, Construction};
use crate::error::{Error, Result};

/// Exhaustive evaluation refuses codebooks with more rows than this
/// unless forced; above it the pair count grows past ~12.5 million.
pub const EXHAUSTIVE_ROW_LIMIT: u64 = 5000;

/// Width of a spectrum bucket: amplitudes are binned at 1e-9 resolution.
pub const AMPLITUDE_BUCKET: f64 = 1e-9;

/// Default number of pairs in sampled mode.
pub const DEFAULT_SAMPLE_PAIRS: u64 = 100_000;

/// How the pair set is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Every unordered pair i < k.
    Exhaustive,
    /// `pairs` unordered pairs drawn from a ChaCha stream seeded with `seed`.
    Sampled { pairs: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub mode: EvalMode,
    /// Spread pair evaluation across a rayon pool.
    pub parallel: bool,
    /// Run exhaustively even past [`EXHAUSTIVE_ROW_LIMIT`].
    pub force_exhaustive: bool,
}

impl Default for EvalOptions {
    fn default() -> EvalOptions {
        EvalOptions {
            mode: EvalMode::Exhaustive,
            parallel: true,
            force_exhaustive: false,
        }
    }
}

/// One amplitude level of the spectrum: the bucket's representative
/// value (bucket index times 1e-9) and how many pairs landed in it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectrumBin {
    pub amplitude: f64,
    pub count: u64,
}

/// The outcome of one evaluation run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub construction: Construction,
    pub q: u32,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    /// Largest cross-correlation amplitude over the visited pairs.
    pub i_max: f64,
    /// The Welch bound for (N, K).
    pub i_w: f64,
    /// i_max / i_w.
    pub ratio: f64,
    /// q = 2 collapses to duplicate rows; flagged rather than hidden.
    pub degenerate: bool,
    pub mode: String,
    /// Number of pairs visited.
    pub pairs: u64,
    pub spectrum: Vec<SpectrumBin>,
    /// Wall-clock seconds; excluded from result comparisons.
    pub elapsed: f64,
}

impl EvalReport {
    /// Bit-exact equality of everything except the timing.
    pub fn same_results(&self, other: &EvalReport) -> bool {
        self.construction == other.construction
            && self.q == other.q
            && self.n == other.n
            && self.k == other.k
            && self.i_max.to_bits() == other.i_max.to_bits()
            && self.i_w.to_bits() == other.i_w.to_bits()
            && self.ratio.to_bits() == other.ratio.to_bits()
            && self.degenerate == other.degenerate
            && self.mode == other.mode
            && self.pairs == other.pairs
            && self.spectrum.len() == other.spectrum.len()
            && self
                .spectrum
                .iter()
                .zip(&other.spectrum)
                .all(|(x, y)| x.amplitude.to_bits() == y.amplitude.to_bits() && x.count == y.count)
    }

    /// True when every spectrum level sits within `tol` of some target.
    pub fn spectrum_within(&self, targets: &[f64], tol: f64) -> bool {
        self.spectrum.iter().all(|bin| {
            targets
                .iter()
                .any(|&t| (bin.amplitude - t).abs() < tol)
        })
    }

    /// The flatness contract of the c1/c2 families: every amplitude is
    /// 0 or 1/(q - 1), to within 1e-9.
    pub fn spectrum_gate(&self) -> bool {
        self.spectrum_within(&[0.0, 1.0 / f64::from(self.q - 1)], 1e-9)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn csv_header() -> &'static str {
        "q,N,K,i_max,i_w,ratio"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.q, self.n, self.k, self.i_max, self.i_w, self.ratio
        )
    }
}

/// sqrt((N - K) / ((N - 1) K)), the Welch lower bound on I_max for N
/// unit vectors in C^K.
pub fn welch_bound(n: u64, k: u64) -> Result<f64> {
    if k == 0 || n < k || n < 2 {
        return Err(Error::WelchDomain { n, k });
    }
    Ok((((n - k) as f64) / (((n - 1) as f64) * (k as f64))).sqrt())
}

/// Closed-form I_max/I_w of the c1 family over F_q:
/// sqrt((q^4 - q^3 - q + 1) / ((q^2 - q + 1)(q - 1)^2)).
pub fn ratio_formula_c1(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::RatioDomain(q));
    }
    let q = u128::from(q);
    let num = q.pow(4) - q.pow(3) - q + 1;
    let den = (q * q - q + 1) * (q - 1) * (q - 1);
    Ok((num as f64 / den as f64).sqrt())
}

/// Closed-form I_max/I_w of the c2 family over F_q:
/// sqrt((q^3 - q^2 - 1) / (q - 1)^3).
pub fn ratio_formula_c2(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::RatioDomain(q));
    }
    let q = u128::from(q);
    let num = q.pow(3) - q.pow(2) - 1;
    let den = (q - 1).pow(3);
    Ok((num as f64 / den as f64).sqrt())
}

/// The I_max both families achieve: 1/(q - 1).
pub fn i_max_formula(q: u32) -> Result<f64> {
    if q < 2 {
        return Err(Error::RatioDomain(q));
    }
    Ok(1.0 / f64::from(q - 1))
}

/// Measure a codebook. See the module docs for the determinism contract.
pub fn evaluate(cb: &Codebook, opts: &EvalOptions) -> Result<EvalReport> {
    let n_rows = cb.n() as usize;
    if n_rows < 2 {
        return Err(Error::TooFewRows(n_rows));
    }
    let start = Instant::now();
    let tab = unity_table(cb.n_root());

    let (i_max, bins, pairs, mode) = match opts.mode {
        EvalMode::Exhaustive => {
            if cb.n() > EXHAUSTIVE_ROW_LIMIT && !opts.force_exhaustive {
                return Err(Error::ExhaustiveTooLarge {
                    rows: n_rows,
                    limit: EXHAUSTIVE_ROW_LIMIT,
                });
            }
            let (i_max, bins) = if opts.parallel {
                exhaustive_parallel(cb, &tab)
            } else {
                exhaustive_sequential(cb, &tab)
            };
            let pairs = cb.n() * (cb.n() - 1) / 2;
            (i_max, bins, pairs, "exhaustive".to_string())
        }
        EvalMode::Sampled { pairs, seed } => {
            let list = sample_pairs(n_rows, pairs, seed);
            let (i_max, bins) = if opts.parallel {
                pair_list_parallel(cb, &tab, &list)
            } else {
                pair_list_sequential(cb, &tab, &list)
            };
            (i_max, bins, pairs, "sampled".to_string())
        }
    };

    let spectrum = bins
        .into_iter()
        .map(|(bucket, count)| SpectrumBin {
            amplitude: bucket as f64 * AMPLITUDE_BUCKET,
            count,
        })
        .collect();
    let i_w = welch_bound(cb.n(), cb.k())?;

    Ok(EvalReport {
        construction: cb.construction(),
        q: cb.q(),
        n: cb.n(),
        k: cb.k(),
        i_max,
        i_w,
        ratio: i_max / i_w,
        degenerate: cb.q() == 2,
        mode,
        pairs,
        spectrum,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

type Bins = BTreeMap<u64, u64>;

fn bucket(amplitude: f64) -> u64 {
    (amplitude / AMPLITUDE_BUCKET).round() as u64
}

fn merge(mut a: (f64, Bins), b: (f64, Bins)) -> (f64, Bins) {
    for (bucket, count) in b.1 {
        *a.1.entry(bucket).or_insert(0) += count;
    }
    (a.0.max(b.0), a.1)
}

fn scan_row(cb: &Codebook, tab: &[num_complex::Complex64], i: usize) -> (f64, Bins) {
    let mut local: (f64, Bins) = (0.0, Bins::new());
    for k in i + 1..cb.n() as usize {
        let amp = cb.inner_product_with(tab, i, k).norm();
        local.0 = local.0.max(amp);
        *local.1.entry(bucket(amp)).or_insert(0) += 1;
    }
    local
}

fn exhaustive_sequential(cb: &Codebook, tab: &[num_complex::Complex64]) -> (f64, Bins) {
    (0..cb.n() as usize).fold((0.0, Bins::new()), |acc, i| merge(acc, scan_row(cb, tab, i)))
}

fn exhaustive_parallel(cb: &Codebook, tab: &[num_complex::Complex64]) -> (f64, Bins) {
    use rayon::prelude::*;
    (0..cb.n() as usize)
        .into_par_iter()
        .map(|i| scan_row(cb, tab, i))
        .reduce(|| (0.0, Bins::new()), merge)
}

fn pair_list_sequential(
    cb: &Codebook,
    tab: &[num_complex::Complex64],
    list: &[(usize, usize)],
) -> (f64, Bins) {
    let mut acc: (f64, Bins) = (0.0, Bins::new());
    for &(i, k) in list {
        let amp = cb.inner_product_with(tab, i, k).norm();
        acc.0 = acc.0.max(amp);
        *acc.1.entry(bucket(amp)).or_insert(0) += 1;
    }
    acc
}

fn pair_list_parallel(
    cb: &Codebook,
    tab: &[num_complex::Complex64],
    list: &[(usize, usize)],
) -> (f64, Bins) {
    use rayon::prelude::*;
    list.par_iter()
        .map(|&(i, k)| {
            let amp = cb.inner_product_with(tab, i, k).norm();
            let mut bins = Bins::new();
            bins.insert(bucket(amp), 1);
            (amp, bins)
        })
        .reduce(|| (0.0, Bins::new()), merge)
}

/// The seeded pair list for sampled mode. Drawn sequentially, so the
/// list (and hence the report) does not depend on the worker count.
fn sample_pairs(n_rows: usize, count: u64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let i = rng.random_range(0..n_rows);
            let k = rng.random_range(0..n_rows);
            if i != k {
                break (i.min(k), i.max(k));
            }
        })
        .collect()
}

// ----------------------------------------------------------------- tests

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::MultCharIndex;
    use crate::field::{FieldElement, FieldSpec};

    fn c1(p: u32, m: u32) -> Codebook {
        let f = FieldSpec::build(p, m).unwrap();
        Codebook::build_c1(&f, MultCharIndex::new(&f, 1)).unwrap()
    }

    fn c2(p: u32, m: u32) -> Codebook {
        let f = FieldSpec::build(p, m).unwrap();
        Codebook::build_c2(&f, FieldElement::ZERO).unwrap()
    }

    #[test]
    fn welch_bound_values() {
        // N = K forces the zero bound.
        assert_eq!(welch_bound(12, 12).unwrap(), 0.0);
        // (N, K) = (64, 12): sqrt(52 / (63 * 12)).
        let w = welch_bound(64, 12).unwrap();
        assert!((w - (52.0f64 / 756.0).sqrt()).abs() < 1e-15);
        assert!(welch_bound(5, 12).is_err());
        assert!(welch_bound(1, 1).is_err());
        assert!(welch_bound(10, 0).is_err());
    }

    #[test]
    fn evaluate_c1_gf4() {
        let report = evaluate(&c1(2, 2), &EvalOptions::default()).unwrap();
        assert_eq!(report.n, 64);
        assert_eq!(report.k, 12);
        assert_eq!(report.pairs, 64 * 63 / 2);
        assert!((report.i_max - 1.0 / 3.0).abs() < 1e-9);
        assert!((report.ratio - ratio_formula_c1(4).unwrap()).abs() < 1e-9);
        assert!(report.spectrum_gate());
        assert!(!report.degenerate);
    }

    #[test]
    fn evaluate_c2_gf5() {
        let report = evaluate(&c2(5, 1), &EvalOptions::default()).unwrap();
        assert_eq!(report.n, 100);
        assert_eq!(report.k, 20);
        assert!((report.i_max - 0.25).abs() < 1e-9);
        assert!((report.ratio - ratio_formula_c2(5).unwrap()).abs() < 1e-9);
        assert!(report.spectrum_gate());
    }

    #[test]
    fn degenerate_q2_is_flagged_not_rejected() {
        let report = evaluate(&c1(2, 1), &EvalOptions::default()).unwrap();
        assert!(report.degenerate);
        // Duplicate rows correlate at amplitude 1 = 1/(q - 1).
        assert!((report.i_max - 1.0).abs() < 1e-9);
        assert!(report.spectrum_gate());
    }

    #[test]
    fn parallel_and_sequential_reports_are_bit_identical() {
        let cb = c1(2, 2);
        let par = evaluate(&cb, &EvalOptions { parallel: true, ..Default::default() }).unwrap();
        let seq = evaluate(&cb, &EvalOptions { parallel: false, ..Default::default() }).unwrap();
        assert!(par.same_results(&seq));
    }

    #[test]
    fn sampled_mode_is_seed_deterministic() {
        let cb = c1(3, 1);
        let mode = EvalMode::Sampled { pairs: 500, seed: 7 };
        let a = evaluate(&cb, &EvalOptions { mode, parallel: true, ..Default::default() }).unwrap();
        let b = evaluate(&cb, &EvalOptions { mode, parallel: false, ..Default::default() }).unwrap();
        assert!(a.same_results(&b));
        let other = EvalMode::Sampled { pairs: 500, seed: 8 };
        let c = evaluate(&cb, &EvalOptions { mode: other, ..Default::default() }).unwrap();
        assert_eq!(c.pairs, 500);
        assert!(c.spectrum_gate());
    }

    #[test]
    fn sampled_spectrum_stays_on_the_two_levels() {
        let report = evaluate(
            &c2(3, 2),
            &EvalOptions {
                mode: EvalMode::Sampled { pairs: 2000, seed: 1 },
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report.spectrum_gate());
        assert!(report.i_max <= 1.0 / 8.0 + 1e-9);
    }

    #[test]
    fn exhaustive_refuses_large_codebooks_without_force() {
        // c2 over GF(17): N = 17^2 * 16 = 4624 is fine; GF(19) c1 has
        // N = 6859 > 5000 and must be refused.
        let f = FieldSpec::build(19, 1).unwrap();
        let cb = Codebook::build_c1(&f, MultCharIndex::new(&f, 1)).unwrap();
        let err = evaluate(&cb, &EvalOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ExhaustiveTooLarge { .. }), "{err}");
        // Sampled mode still works.
        let report = evaluate(
            &cb,
            &EvalOptions {
                mode: EvalMode::Sampled { pairs: 1000, seed: 0 },
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report.spectrum_gate());
    }

    #[test]
    fn ratio_formulas_match_direct_welch_arithmetic() {
        for q in [3u32, 4, 5, 7, 8, 9, 16] {
            let n1 = u64::from(q).pow(3);
            let n2 = u64::from(q) * u64::from(q) * u64::from(q - 1);
            let k = u64::from(q) * u64::from(q - 1);
            let direct_c1 = i_max_formula(q).unwrap() / welch_bound(n1, k).unwrap();
            let direct_c2 = i_max_formula(q).unwrap() / welch_bound(n2, k).unwrap();
            assert!((ratio_formula_c1(q).unwrap() - direct_c1).abs() < 1e-12, "q={q}");
            assert!((ratio_formula_c2(q).unwrap() - direct_c2).abs() < 1e-12, "q={q}");
        }
        assert!(ratio_formula_c1(1).is_err());
        assert!(ratio_formula_c2(0).is_err());
    }

    #[test]
    fn report_json_roundtrip_and_csv_shape() {
        let report = evaluate(&c1(3, 1), &EvalOptions::default()).unwrap();
        let back: EvalReport = serde_json::from_str(&report.to_json()).unwrap();
        assert!(back.same_results(&report));
        let row = report.to_csv_row();
        assert_eq!(row.split(',').count(), EvalReport::csv_header().split(',').count());
        assert!(row.starts_with("3,27,6,"));
    }
}
