//! Characters of F_q as exact roots of unity, plus the classical Gauss sum.
//!
//! Every character value this crate touches is a power of the primitive
//! n-th root of unity with n = p(q - 1). Since gcd(p, q - 1) = 1, we have
//! ζ_p = ζ_n^(q-1) and ζ_(q-1) = ζ_n^p, so both
//!
//! * the additive characters  χ_b(c) = ζ_p^Tr(bc)           (b in F_q), and
//! * the multiplicative ones  ψ_j(g^k) = ζ_(q-1)^(jk)       (0 <= j < q-1)
//!
//! embed faithfully into one cyclic group, and products of character values
//! reduce to exponent addition mod n. Floating point enters only when a sum
//! of character values is actually accumulated.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// An exact n-th root of unity: ζ_n^exponent with 0 <= exponent < n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    /// ζ_order^exponent, with the exponent reduced mod order.
    pub fn new(order: u32, exponent: u32) -> RootOfUnity {
        assert!(order > 0, "the trivial group has no roots of unity");
        RootOfUnity {
            order,
            exponent: exponent % order,
        }
    }

    pub fn one(order: u32) -> RootOfUnity {
        RootOfUnity::new(order, 0)
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_one(self) -> bool {
        self.exponent == 0
    }

    /// Group law: exponents add mod the common order.
    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        assert_eq!(self.order, other.order, "mixed root-of-unity orders");
        RootOfUnity::new(self.order, (self.exponent + other.exponent) % self.order)
    }

    /// Complex conjugate, i.e. the inverse ζ_n^(-e).
    pub fn conj(self) -> RootOfUnity {
        RootOfUnity::new(self.order, (self.order - self.exponent) % self.order)
    }

    /// e^(2πi · exponent/order). The only lossy step in the pipeline.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * f64::from(self.exponent) / f64::from(self.order))
    }
}

/// Table of ζ_n^e for e in [0, n), for summation-heavy inner loops.
pub(crate) fn unity_table(order: u32) -> Vec<Complex64> {
    (0..order)
        .map(|e| Complex64::from_polar(1.0, TAU * f64::from(e) / f64::from(order)))
        .collect()
}

/// Index b of the additive character χ_b(c) = ζ_p^Tr(bc).
///
/// b = 0 is the trivial character; the q characters χ_b exhaust the
/// additive character group of F_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditiveCharIndex {
    pub b: FieldElement,
}

impl AdditiveCharIndex {
    pub fn new(b: FieldElement) -> AdditiveCharIndex {
        AdditiveCharIndex { b }
    }

    pub fn is_trivial(self) -> bool {
        self.b.is_zero()
    }
}

/// Index j of the multiplicative character ψ_j(g^k) = ζ_(q-1)^(jk),
/// stored reduced mod q - 1. j = 0 is the trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultCharIndex {
    j: u32,
}

impl MultCharIndex {
    pub fn new(spec: &FieldSpec, j: u32) -> MultCharIndex {
        MultCharIndex {
            j: j % (spec.q() - 1),
        }
    }

    pub fn j(self) -> u32 {
        self.j
    }

    pub fn is_trivial(self) -> bool {
        self.j == 0
    }
}

/// χ_b(c) = ζ_p^Tr(bc), expressed as ζ_n^(Tr(bc)·(q-1)).
pub fn additive_char(spec: &FieldSpec, idx: AdditiveCharIndex, c: FieldElement) -> RootOfUnity {
    let t = spec.trace(spec.mul(idx.b, c));
    RootOfUnity::new(spec.root_order(), t * (spec.q() - 1))
}

/// ψ_j(c) = ζ_(q-1)^(j·dlog c), expressed as ζ_n^(j·dlog(c)·p).
/// Undefined at c = 0.
pub fn mult_char(spec: &FieldSpec, idx: MultCharIndex, c: FieldElement) -> Result<RootOfUnity> {
    if c.is_zero() {
        return Err(Error::MultCharAtZero);
    }
    let k = spec.discrete_log(c).expect("c is nonzero");
    let q1 = u64::from(spec.q() - 1);
    let e = (u64::from(idx.j) * u64::from(k)) % q1 * u64::from(spec.p());
    Ok(RootOfUnity::new(spec.root_order(), e as u32))
}

/// The Gauss sum G(ψ_j, χ_b) = Σ_{c in F_q*} ψ_j(c) χ_b(c), by direct
/// summation over the q - 1 units.
///
/// Classical values: q - 1 when both characters are trivial, -1 for
/// trivial ψ and nontrivial χ, 0 for nontrivial ψ and trivial χ, and
/// modulus √q when both are nontrivial.
pub fn gauss_sum(spec: &FieldSpec, j: MultCharIndex, b: AdditiveCharIndex) -> Complex64 {
    spec.nonzero_elements()
        .map(|c| {
            mult_char(spec, j, c)
                .expect("c is nonzero")
                .mul(additive_char(spec, b, c))
                .to_complex()
        })
        .sum()
}

// ----------------------------------------------------------------- tests
