//! Codebooks and exact character sums over the local ring
//! R = F_q + uF_q with u^2 = 0.
//!
//! The crate builds one small tower:
//!
//! * [`field`]: F_q = GF(p^m) with a canonical integer encoding,
//!   deterministic modulus and generator choice, and tabulated trace
//!   and discrete logs;
//! * [`characters`]: additive and multiplicative characters of F_q as
//!   exact roots of unity of order n = p(q - 1), plus the classical
//!   Gauss sum;
//! * [`ring`]: R, its unit factorization t = t0(1 + u·t1), both ring
//!   character families, and the ring Gauss sum in closed form next to
//!   a brute-force oracle;
//! * [`codebook`]: the two asymptotically optimal codebook families
//!   (`c1`: N = q^3, `c2`: N = q^2(q - 1), both K = q(q - 1)) with
//!   exact predicted inner products and a JSON file format;
//! * [`eval`]: maximal cross-correlation, Welch bound, ratio and
//!   spectrum, deterministic across thread counts;
//! * [`selftest`]: the invariant suites behind the `selftest`
//!   subcommand;
//! * [`cli`]: the `ring-codebook` binary.
//!
//! Everything upstream of a final summation is integer arithmetic, so
//! results are exact up to one rounding at the complex boundary; the
//! numeric contracts (I_max = 1/(q - 1), two-level spectra, ratio
//! formulas) hold to 1e-9 tolerances.

pub mod characters;
pub mod cli;
pub mod codebook;
pub mod error;
pub mod eval;
pub mod field;
pub mod ring;
pub mod selftest;

pub use characters::{AdditiveCharIndex, MultCharIndex, RootOfUnity};
pub use codebook::{
    predicted_inner_product_c1, predicted_inner_product_c2, Codebook, Construction,
};
pub use error::{Error, Result};
pub use eval::{
    evaluate, ratio_formula_c1, ratio_formula_c2, welch_bound, EvalMode, EvalOptions, EvalReport,
};
pub use field::{FieldElement, FieldSpec, DEFAULT_SIZE_GUARD};
pub use ring::{RingAdditiveCharIndex, RingElement, RingMultCharIndex, UnitDecomposition};
