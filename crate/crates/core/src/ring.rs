//! The local ring R = F_q + uF_q with u^2 = 0, its characters, and its
//! Gauss sums.
//!
//! An element is written a0 + u·a1 with a0, a1 in F_q. Arithmetic is
//! componentwise addition and (a0 + u·a1)(b0 + u·b1) = a0·b0 + u(a0·b1 +
//! a1·b0). The maximal ideal is M = uF_q, and r is a unit exactly when
//! a0 is nonzero, so |R*| = q(q - 1). Every unit factors uniquely as
//! t = t0(1 + u·t1) with t0 = a0 in F_q* and t1 = a1/a0 in F_q, which
//! identifies R* with F_q* × (1 + M).
//!
//! Characters come in two families, indexed as follows:
//!
//! * additive:        λ_(b,c)(a0 + u·a1) = χ_b(a0) · χ_c(a1);
//!   on units, equivalently λ(t) = χ_b(t0) · χ_c(t0·t1);
//! * multiplicative:  φ_(j,a)(t) = ψ_j(t0) · χ_a(t1), via the unit
//!   factorization above.
//!
//! The ring Gauss sum G_R(φ, λ) = Σ_{t in R*} φ(t) λ(t) collapses to a
//! closed form; [`gauss_sum_closed`] implements it and
//! [`gauss_sum_oracle`] checks it by brute-force enumeration of R*.

use num_complex::Complex64;

use crate::characters::{self, AdditiveCharIndex, MultCharIndex, RootOfUnity};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// a0 + u·a1. Serializes as the two-element array [a0, a1] of encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub a0: FieldElement,
    pub a1: FieldElement,
}

impl serde::Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a0.encoding(), self.a1.encoding()].serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a0, a1] = <[u32; 2]>::deserialize(d)?;
        Ok(RingElement::new(FieldElement(a0), FieldElement(a1)))
    }
}

impl RingElement {
    pub fn new(a0: FieldElement, a1: FieldElement) -> RingElement {
        RingElement { a0, a1 }
    }

    pub fn zero() -> RingElement {
        RingElement::new(FieldElement::ZERO, FieldElement::ZERO)
    }

    pub fn one() -> RingElement {
        RingElement::new(FieldElement::ONE, FieldElement::ZERO)
    }

    /// The nilpotent generator u of the maximal ideal.
    pub fn u() -> RingElement {
        RingElement::new(FieldElement::ZERO, FieldElement::ONE)
    }

    /// Units are exactly the elements outside M = uF_q.
    pub fn is_unit(self) -> bool {
        !self.a0.is_zero()
    }

    pub fn is_zero(self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }
}

/// The factorization t = t0(1 + u·t1) of a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub t0: FieldElement,
    pub t1: FieldElement,
}

pub fn add(spec: &FieldSpec, x: RingElement, y: RingElement) -> RingElement {
    RingElement::new(spec.add(x.a0, y.a0), spec.add(x.a1, y.a1))
}

pub fn neg(spec: &FieldSpec, x: RingElement) -> RingElement {
    RingElement::new(spec.neg(x.a0), spec.neg(x.a1))
}

pub fn sub(spec: &FieldSpec, x: RingElement, y: RingElement) -> RingElement {
    add(spec, x, neg(spec, y))
}

pub fn mul(spec: &FieldSpec, x: RingElement, y: RingElement) -> RingElement {
    RingElement::new(
        spec.mul(x.a0, y.a0),
        spec.add(spec.mul(x.a0, y.a1), spec.mul(x.a1, y.a0)),
    )
}

/// t = a0 + u·a1 = t0(1 + u·t1) with t0 = a0 and t1 = a1/a0.
/// Errors when t is not a unit.
pub fn unit_decompose(spec: &FieldSpec, t: RingElement) -> Result<UnitDecomposition> {
    if !t.is_unit() {
        return Err(Error::NonUnit {
            a0: t.a0.encoding(),
            a1: t.a1.encoding(),
        });
    }
    Ok(UnitDecomposition {
        t0: t.a0,
        t1: spec.div(t.a1, t.a0).expect("a0 is nonzero"),
    })
}

/// Inverse of [`unit_decompose`]: t0(1 + u·t1) = t0 + u·(t0·t1).
pub fn unit_recompose(spec: &FieldSpec, d: UnitDecomposition) -> RingElement {
    RingElement::new(d.t0, spec.mul(d.t0, d.t1))
}

/// All q^2 ring elements, a0 outer and a1 inner, both in encoding order.
pub fn elements(spec: &FieldSpec) -> impl Iterator<Item = RingElement> + '_ {
    spec.elements()
        .flat_map(move |a0| spec.elements().map(move |a1| RingElement::new(a0, a1)))
}

/// All q(q - 1) units, in the same nesting order.
pub fn units(spec: &FieldSpec) -> impl Iterator<Item = RingElement> + '_ {
    spec.nonzero_elements()
        .flat_map(move |a0| spec.elements().map(move |a1| RingElement::new(a0, a1)))
}

// ------------------------------------------------------------- characters

/// Index (b, c) of the additive character λ(a0 + u·a1) = χ_b(a0)·χ_c(a1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingAdditiveCharIndex {
    pub b: FieldElement,
    pub c: FieldElement,
}

impl RingAdditiveCharIndex {
    pub fn new(b: FieldElement, c: FieldElement) -> RingAdditiveCharIndex {
        RingAdditiveCharIndex { b, c }
    }

    pub fn is_trivial(self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }
}

/// Index (j, a) of the multiplicative character φ(t) = ψ_j(t0)·χ_a(t1),
/// defined on units through the factorization t = t0(1 + u·t1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingMultCharIndex {
    pub j: MultCharIndex,
    pub a: FieldElement,
}

impl RingMultCharIndex {
    pub fn new(j: MultCharIndex, a: FieldElement) -> RingMultCharIndex {
        RingMultCharIndex { j, a }
    }

    pub fn is_trivial(self) -> bool {
        self.j.is_trivial() && self.a.is_zero()
    }
}

/// λ_(b,c)(r) = χ_b(a0)·χ_c(a1), defined on all of R.
pub fn additive_char(spec: &FieldSpec, idx: RingAdditiveCharIndex, r: RingElement) -> RootOfUnity {
    characters::additive_char(spec, AdditiveCharIndex::new(idx.b), r.a0)
        .mul(characters::additive_char(spec, AdditiveCharIndex::new(idx.c), r.a1))
}

/// λ on a unit through its factorization: χ_b(t0)·χ_c(t0·t1).
/// Agrees with [`additive_char`] on every unit.
pub fn additive_char_on_unit(
    spec: &FieldSpec,
    idx: RingAdditiveCharIndex,
    d: UnitDecomposition,
) -> RootOfUnity {
    characters::additive_char(spec, AdditiveCharIndex::new(idx.b), d.t0).mul(
        characters::additive_char(spec, AdditiveCharIndex::new(idx.c), spec.mul(d.t0, d.t1)),
    )
}

/// φ_(j,a)(t) = ψ_j(t0)·χ_a(t1). Errors when t is not a unit.
pub fn mult_char(spec: &FieldSpec, idx: RingMultCharIndex, t: RingElement) -> Result<RootOfUnity> {
    Ok(mult_char_on_unit(spec, idx, unit_decompose(spec, t)?))
}

/// φ on an already-factored unit.
pub fn mult_char_on_unit(
    spec: &FieldSpec,
    idx: RingMultCharIndex,
    d: UnitDecomposition,
) -> RootOfUnity {
    characters::mult_char(spec, idx.j, d.t0)
        .expect("t0 is nonzero")
        .mul(characters::additive_char(spec, AdditiveCharIndex::new(idx.a), d.t1))
}

// ------------------------------------------------------------- Gauss sums

/// G_R(φ, λ) = Σ_{t in R*} φ(t) λ(t) by its case-by-case closed form:
///
/// * a = 0, c = 0:  q · G(ψ_j, χ_b)  (the field Gauss sum);
/// * exactly one of a, c zero:  0;
/// * a ≠ 0, c ≠ 0:  q · ψ_j(-a/c) · χ_1(-ab/c).
///
/// In the first case with both ψ_j and χ_b nontrivial, G(ψ_j, χ_b) has
/// no elementary closed value (only its modulus √q is pinned down), so
/// that one factor is evaluated by direct summation over F_q*.
pub fn gauss_sum_closed(
    spec: &FieldSpec,
    phi: RingMultCharIndex,
    lambda: RingAdditiveCharIndex,
) -> Complex64 {
    let q = f64::from(spec.q());
    let a = phi.a;
    let (b, c) = (lambda.b, lambda.c);
    match (a.is_zero(), c.is_zero()) {
        (true, true) => {
            let field_gauss = if phi.j.is_trivial() {
                if b.is_zero() {
                    Complex64::new(q - 1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            } else if b.is_zero() {
                Complex64::new(0.0, 0.0)
            } else {
                characters::gauss_sum(spec, phi.j, AdditiveCharIndex::new(b))
            };
            q * field_gauss
        }
        (true, false) | (false, true) => Complex64::new(0.0, 0.0),
        (false, false) => {
            // t0 = -a/c is the unique stationary point of the t1-sum.
            let t0 = spec.neg(spec.div(a, c).expect("c is nonzero"));
            let x = spec.neg(spec.div(spec.mul(a, b), c).expect("c is nonzero"));
            let val = characters::mult_char(spec, phi.j, t0)
                .expect("t0 is nonzero")
                .mul(characters::additive_char(
                    spec,
                    AdditiveCharIndex::new(FieldElement::ONE),
                    x,
                ));
            q * val.to_complex()
        }
    }
}

/// G_R(φ, λ) by brute force: enumerate all q(q - 1) units, evaluate φ via
/// the unit factorization and λ via the (a0, a1) form, and sum.
pub fn gauss_sum_oracle(
    spec: &FieldSpec,
    phi: RingMultCharIndex,
    lambda: RingAdditiveCharIndex,
) -> Complex64 {
    units(spec)
        .map(|t| {
            let d = unit_decompose(spec, t).expect("t is a unit");
            mult_char_on_unit(spec, phi, d)
                .mul(additive_char(spec, lambda, t))
                .to_complex()
        })
        .sum()
}

// ----------------------------------------------------------------- tests
