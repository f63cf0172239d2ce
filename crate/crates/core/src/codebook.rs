//! Codebook constructions from character sums over R = F_q + uF_q.
//!
//! A codebook here is an N × K matrix of unit-norm rows. Every row is a
//! character of R restricted to the unit group R*, so each entry is an
//! n-th root of unity (n = p(q - 1)) scaled by 1/√K, and the whole matrix
//! is stored exactly as integer exponents.
//!
//! Columns are indexed by the units t = t0(1 + u·t1): t0 runs over F_q*
//! and t1 over F_q, both in encoding order, t1 fastest, so
//! K = q(q - 1) and column(t0, t1) = (enc(t0) - 1)·q + enc(t1).
//!
//! Rows, with g(j, a, b, c; t) = ψ_j(t0) χ_a(t1) χ_b(t0) χ_c(t0·t1):
//!
//! * `c1`: fix j; rows (a, b, c) over F_q^3, so N = q^3;
//! * `c2`: fix b; rows (j, a, c) over [0, q-1) × F_q^2, so N = q^2(q - 1);
//! * `c0`: rows (j, a, b, c), the full N = q^3(q - 1) family the other
//!   two are slices of. No flatness contract is attached to it here; it
//!   is built for inspection only.
//!
//! Row order is lexicographic in the listed tuple, last coordinate
//! fastest, using element encodings (and plain j values).
//!
//! The c1 and c2 families are the interesting ones: their maximal
//! cross-correlation meets 1/(q - 1) while the Welch bound sits just
//! below, so the ratio tends to 1 as q grows. `predicted_inner_product_*`
//! give the exact correlation for each difference tuple; the evaluator in
//! [`crate::eval`] checks them numerically.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{self, unity_table, AdditiveCharIndex, MultCharIndex};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Hard cap on N·K at build time; ~0.5 GiB of exponents.
pub const CODEBOOK_ENTRY_LIMIT: u64 = 1 << 27;

/// Which row family a codebook carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    C0,
    C1,
    C2,
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Construction::C0 => "c0",
            Construction::C1 => "c1",
            Construction::C2 => "c2",
        })
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Construction> {
        match s {
            "c0" => Ok(Construction::C0),
            "c1" => Ok(Construction::C1),
            "c2" => Ok(Construction::C2),
            other => Err(Error::Schema(format!("unknown construction {other:?}"))),
        }
    }
}

/// An N × K codebook over one field realization, stored as exponents of
/// ζ_n. Row i is the codeword (1/√K)·(ζ_n^e_i0, ..., ζ_n^e_i(K-1)).
#[derive(Clone, Debug, PartialEq)]
pub struct Codebook {
    construction: Construction,
    spec: FieldSpec,
    /// j for c1, enc(b) for c2, absent for c0.
    fixed_param: Option<u32>,
    n_root: u32,
    rows: Vec<Vec<u32>>,
}

/// On-disk form. The field tables are rebuilt and revalidated on load.
#[derive(Serialize, Deserialize)]
struct CodebookFile {
    construction: Construction,
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    g: u32,
    fixed_param: Option<u32>,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "K")]
    k: u64,
    n_root: u32,
    rows: Vec<Vec<u32>>,
}

impl Codebook {
    /// The `c1` family: rows (a, b, c) in F_q^3 with the multiplicative
    /// index fixed at j.
    pub fn build_c1(spec: &FieldSpec, j: MultCharIndex) -> Result<Codebook> {
        let q = u64::from(spec.q());
        check_entry_budget(q * q * q, spec)?;
        let coords = unit_coordinates(spec);
        let mut rows = Vec::with_capacity((spec.q().pow(3)) as usize);
        for a in spec.elements() {
            for b in spec.elements() {
                for c in spec.elements() {
                    rows.push(codeword(spec, j, a, b, c, &coords));
                }
            }
        }
        Ok(Codebook {
            construction: Construction::C1,
            spec: spec.clone(),
            fixed_param: Some(j.j()),
            n_root: spec.root_order(),
            rows,
        })
    }

    /// The `c2` family: rows (j, a, c) with the additive parameter fixed
    /// at b.
    pub fn build_c2(spec: &FieldSpec, b: FieldElement) -> Result<Codebook> {
        let q = u64::from(spec.q());
        check_entry_budget(q * q * (q - 1), spec)?;
        let coords = unit_coordinates(spec);
        let mut rows = Vec::with_capacity((spec.q() * spec.q() * (spec.q() - 1)) as usize);
        for j in 0..spec.q() - 1 {
            let j = MultCharIndex::new(spec, j);
            for a in spec.elements() {
                for c in spec.elements() {
                    rows.push(codeword(spec, j, a, b, c, &coords));
                }
            }
        }
        Ok(Codebook {
            construction: Construction::C2,
            spec: spec.clone(),
            fixed_param: Some(b.encoding()),
            n_root: spec.root_order(),
            rows,
        })
    }

    /// The full `c0` family: rows (j, a, b, c), nothing fixed.
    pub fn build_c0(spec: &FieldSpec) -> Result<Codebook> {
        let q = u64::from(spec.q());
        check_entry_budget(q * q * q * (q - 1), spec)?;
        let coords = unit_coordinates(spec);
        let mut rows = Vec::with_capacity((q * q * q * (q - 1)) as usize);
        for j in 0..spec.q() - 1 {
            let j = MultCharIndex::new(spec, j);
            for a in spec.elements() {
                for b in spec.elements() {
                    for c in spec.elements() {
                        rows.push(codeword(spec, j, a, b, c, &coords));
                    }
                }
            }
        }
        Ok(Codebook {
            construction: Construction::C0,
            spec: spec.clone(),
            fixed_param: None,
            n_root: spec.root_order(),
            rows,
        })
    }

    // ---------------------------------------------------------------- data

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    /// Number of rows N.
    pub fn n(&self) -> u64 {
        self.rows.len() as u64
    }

    /// Codeword length K = q(q - 1).
    pub fn k(&self) -> u64 {
        u64::from(self.spec.q()) * u64::from(self.spec.q() - 1)
    }

    /// Order n of the root-of-unity alphabet.
    pub fn n_root(&self) -> u32 {
        self.n_root
    }

    /// j for c1, enc(b) for c2, None for c0.
    pub fn fixed_param(&self) -> Option<u32> {
        self.fixed_param
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    // -------------------------------------------------------- correlations

    /// Exact-exponent inner product ⟨row i, row k⟩ = (1/K) Σ ζ^(e_i - e_k).
    pub fn inner_product(&self, i: usize, k: usize) -> Result<Complex64> {
        self.check_row(i)?;
        self.check_row(k)?;
        let tab = unity_table(self.n_root);
        Ok(self.inner_product_with(&tab, i, k))
    }

    /// Same, reusing a precomputed ζ_n table (the evaluator's hot path).
    pub(crate) fn inner_product_with(&self, tab: &[Complex64], i: usize, k: usize) -> Complex64 {
        let n = self.n_root;
        let sum: Complex64 = self.rows[i]
            .iter()
            .zip(&self.rows[k])
            .map(|(&ei, &ek)| tab[((ei + n - ek) % n) as usize])
            .sum();
        sum / self.k() as f64
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.rows.len() {
            Ok(())
        } else {
            Err(Error::RowIndex {
                index: i,
                rows: self.rows.len(),
            })
        }
    }

    /// Row position of the c1 tuple (a, b, c).
    pub fn row_index_c1(spec: &FieldSpec, a: FieldElement, b: FieldElement, c: FieldElement) -> usize {
        let q = spec.q() as usize;
        (a.encoding() as usize * q + b.encoding() as usize) * q + c.encoding() as usize
    }

    /// The c1 tuple (a, b, c) at a row position.
    pub fn row_tuple_c1(spec: &FieldSpec, row: usize) -> (FieldElement, FieldElement, FieldElement) {
        let q = spec.q() as usize;
        (
            FieldElement((row / (q * q)) as u32),
            FieldElement(((row / q) % q) as u32),
            FieldElement((row % q) as u32),
        )
    }

    /// Row position of the c2 tuple (j, a, c).
    pub fn row_index_c2(spec: &FieldSpec, j: u32, a: FieldElement, c: FieldElement) -> usize {
        let q = spec.q() as usize;
        (j as usize * q + a.encoding() as usize) * q + c.encoding() as usize
    }

    /// The c2 tuple (j, a, c) at a row position.
    pub fn row_tuple_c2(spec: &FieldSpec, row: usize) -> (u32, FieldElement, FieldElement) {
        let q = spec.q() as usize;
        (
            (row / (q * q)) as u32,
            FieldElement(((row / q) % q) as u32),
            FieldElement((row % q) as u32),
        )
    }

    /// The exact inner product the construction promises for rows i ≠ k,
    /// or None for c0 (which carries no such contract).
    pub fn predicted_pair(&self, i: usize, k: usize) -> Result<Option<Complex64>> {
        self.check_row(i)?;
        self.check_row(k)?;
        let spec = &self.spec;
        match self.construction {
            Construction::C1 => {
                let (a1, b1, c1) = Self::row_tuple_c1(spec, i);
                let (a2, b2, c2) = Self::row_tuple_c1(spec, k);
                let (da, db, dc) = (spec.sub(a1, a2), spec.sub(b1, b2), spec.sub(c1, c2));
                predicted_inner_product_c1(spec, da, db, dc).map(Some)
            }
            Construction::C2 => {
                let (j1, a1, c1) = Self::row_tuple_c2(spec, i);
                let (j2, a2, c2) = Self::row_tuple_c2(spec, k);
                let dj = MultCharIndex::new(spec, j1 + (spec.q() - 1) - j2);
                let (da, dc) = (spec.sub(a1, a2), spec.sub(c1, c2));
                predicted_inner_product_c2(spec, dj, da, dc).map(Some)
            }
            Construction::C0 => Ok(None),
        }
    }

    // ------------------------------------------------------------------ io

    /// Deterministic JSON encoding: field order is fixed and rows carry
    /// only integers, so equal codebooks serialize to equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CodebookFile {
            construction: self.construction,
            p: self.spec.p(),
            m: self.spec.m(),
            modulus: self.spec.modulus().to_vec(),
            g: self.spec.g().encoding(),
            fixed_param: self.fixed_param,
            n: self.n(),
            k: self.k(),
            n_root: self.n_root,
            rows: self.rows.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Parse and fully validate a codebook file. The field is rebuilt
    /// from (p, m, modulus, g); shapes, parameters and exponent ranges
    /// are all checked, but row contents are taken at face value (the
    /// evaluator is the detector for corrupted exponents).
    pub fn from_json(text: &str, guard: u32) -> Result<Codebook> {
        let file: CodebookFile = serde_json::from_str(text)?;
        let spec = FieldSpec::from_parts(file.p, file.m, &file.modulus, file.g, guard)?;
        let q = u64::from(spec.q());

        let expect_n = match file.construction {
            Construction::C0 => q * q * q * (q - 1),
            Construction::C1 => q * q * q,
            Construction::C2 => q * q * (q - 1),
        };
        if file.n != expect_n || file.rows.len() as u64 != expect_n {
            return Err(Error::Schema(format!(
                "{} over q = {q} needs N = {expect_n}, file says N = {} with {} rows",
                file.construction,
                file.n,
                file.rows.len()
            )));
        }
        let expect_k = q * (q - 1);
        if file.k != expect_k {
            return Err(Error::Schema(format!(
                "K must be q(q-1) = {expect_k}, file says {}",
                file.k
            )));
        }
        if file.n_root != spec.root_order() {
            return Err(Error::Schema(format!(
                "n_root must be p(q-1) = {}, file says {}",
                spec.root_order(),
                file.n_root
            )));
        }
        match (file.construction, file.fixed_param) {
            (Construction::C0, None) => {}
            (Construction::C0, Some(_)) => {
                return Err(Error::Schema("c0 takes no fixed parameter".into()))
            }
            (Construction::C1, Some(j)) if j < spec.q() - 1 => {}
            (Construction::C1, p) => {
                return Err(Error::Schema(format!(
                    "c1 needs fixed_param = j in [0, q-1), got {p:?}"
                )))
            }
            (Construction::C2, Some(b)) if b < spec.q() => {}
            (Construction::C2, p) => {
                return Err(Error::Schema(format!(
                    "c2 needs fixed_param = enc(b) in [0, q), got {p:?}"
                )))
            }
        }
        for (i, row) in file.rows.iter().enumerate() {
            if row.len() as u64 != expect_k {
                return Err(Error::Schema(format!(
                    "row {i} has {} entries, expected K = {expect_k}",
                    row.len()
                )));
            }
            if let Some(&e) = row.iter().find(|&&e| e >= file.n_root) {
                return Err(Error::Schema(format!(
                    "row {i} holds exponent {e} outside [0, n_root = {})",
                    file.n_root
                )));
            }
        }

        Ok(Codebook {
            construction: file.construction,
            spec,
            fixed_param: file.fixed_param,
            n_root: file.n_root,
            rows: file.rows,
        })
    }

    pub fn read_file(path: &Path, guard: u32) -> Result<Codebook> {
        Codebook::from_json(&std::fs::read_to_string(path)?, guard)
    }
}

/// The K = q(q - 1) unit coordinates (t0, t1), t1 fastest.
fn unit_coordinates(spec: &FieldSpec) -> Vec<(FieldElement, FieldElement)> {
    spec.nonzero_elements()
        .flat_map(|t0| spec.elements().map(move |t1| (t0, t1)))
        .collect()
}

/// Exponent vector of the codeword g(j, a, b, c; ·): at the unit
/// t = t0(1 + u·t1) the entry is ψ_j(t0) χ_a(t1) χ_b(t0) χ_c(t0·t1).
fn codeword(
    spec: &FieldSpec,
    j: MultCharIndex,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    coords: &[(FieldElement, FieldElement)],
) -> Vec<u32> {
    let (ia, ib, ic) = (
        AdditiveCharIndex::new(a),
        AdditiveCharIndex::new(b),
        AdditiveCharIndex::new(c),
    );
    coords
        .iter()
        .map(|&(t0, t1)| {
            characters::mult_char(spec, j, t0)
                .expect("t0 is nonzero")
                .mul(characters::additive_char(spec, ia, t1))
                .mul(characters::additive_char(spec, ib, t0))
                .mul(characters::additive_char(spec, ic, spec.mul(t0, t1)))
                .exponent()
        })
        .collect()
}

fn check_entry_budget(rows: u64, spec: &FieldSpec) -> Result<()> {
    let entries = rows * u64::from(spec.q()) * u64::from(spec.q() - 1);
    if entries > CODEBOOK_ENTRY_LIMIT {
        Err(Error::EntryBudget {
            entries,
            limit: CODEBOOK_ENTRY_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Exact inner product of two distinct c1 rows whose index difference is
/// (a, b, c):
///
/// * a = 0, c = 0 (so b ≠ 0):  -1/(q - 1);
/// * a ≠ 0 and c ≠ 0:          χ_1(-ab/c) / (q - 1);
/// * otherwise:                0.
pub fn predicted_inner_product_c1(
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
) -> Result<Complex64> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::ZeroDifference);
    }
    let scale = 1.0 / f64::from(spec.q() - 1);
    Ok(match (a.is_zero(), c.is_zero()) {
        (true, true) => Complex64::new(-scale, 0.0),
        (false, false) => {
            let x = spec.neg(spec.div(spec.mul(a, b), c).expect("c is nonzero"));
            scale
                * characters::additive_char(spec, AdditiveCharIndex::new(FieldElement::ONE), x)
                    .to_complex()
        }
        _ => Complex64::new(0.0, 0.0),
    })
}

/// Exact inner product of two distinct c2 rows whose index difference is
/// (j, a, c):
///
/// * a ≠ 0 and c ≠ 0:  ψ_j(-a/c) / (q - 1);
/// * otherwise:        0.
pub fn predicted_inner_product_c2(
    spec: &FieldSpec,
    j: MultCharIndex,
    a: FieldElement,
    c: FieldElement,
) -> Result<Complex64> {
    if j.is_trivial() && a.is_zero() && c.is_zero() {
        return Err(Error::ZeroDifference);
    }
    let scale = 1.0 / f64::from(spec.q() - 1);
    Ok(match (a.is_zero(), c.is_zero()) {
        (false, false) => {
            let t0 = spec.neg(spec.div(a, c).expect("c is nonzero"));
            scale * characters::mult_char(spec, j, t0).expect("t0 is nonzero").to_complex()
        }
        _ => Complex64::new(0.0, 0.0),
    })
}

// ----------------------------------------------------------------- tests
