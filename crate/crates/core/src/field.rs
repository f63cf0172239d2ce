//! Exact arithmetic in the finite field F_q with q = p^m.
//!
//! Elements are polynomials of degree below m over F_p, stored by their
//! little-endian base-p digit encoding: coefficients c_0, ..., c_{m-1}
//! become the integer c_0 + c_1 p + ... + c_{m-1} p^{m-1} in [0, q).
//! The encoding gives every field a canonical element order, which the
//! codebook file format and the codeword coordinate layout rely on.
//!
//! A [`FieldSpec`] pins down one concrete realization of F_q:
//!
//! * the monic irreducible modulus polynomial (the first one in encoding
//!   order of its low coefficients, unless supplied explicitly),
//! * the primitive element g of smallest encoding (unless supplied),
//! * full power and discrete-log tables for the cyclic group F_q*,
//! * the absolute trace Tr(x) = x + x^p + ... + x^{p^(m-1)}, tabulated.
//!
//! Everything is O(q) memory and built eagerly, so constructing a spec
//! for large q is refused unless the caller raises the size guard.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest q accepted without an explicit override.
pub const DEFAULT_SIZE_GUARD: u32 = 512;

/// An element of F_q, stored as its digit encoding in [0, q).
///
/// Encodings are only meaningful relative to the [`FieldSpec`] that
/// produced them; mixing elements from different specs is a caller bug.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer encoding in [0, q).
    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete realization of F_q = GF(p^m) with precomputed tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, ascending degree, length m + 1, last coefficient 1.
    modulus: Vec<u32>,
    /// Primitive element: a generator of the cyclic group F_q*.
    g: FieldElement,
    /// dlog[enc] = k with g^k = enc, for enc in [1, q); dlog[0] is a sentinel.
    dlog: Vec<u32>,
    /// pow_g[k] = g^k for k in [0, q-1).
    pow_g: Vec<FieldElement>,
    /// trace_tab[enc] = Tr(enc) as a residue in [0, p).
    trace_tab: Vec<u32>,
}

/// On-disk form: the tables are rebuilt on load.
#[derive(Serialize, Deserialize)]
struct FieldSpecFile {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    g: u32,
}

impl FieldSpec {
    /// Build F_q for q = p^m with the default modulus, generator and guard.
    pub fn build(p: u32, m: u32) -> Result<FieldSpec> {
        Self::build_with(p, m, None, DEFAULT_SIZE_GUARD)
    }

    /// Build F_q, optionally with an explicit modulus and a custom size guard.
    ///
    /// The modulus must be monic of degree m (coefficients ascending, so the
    /// last of the m + 1 entries is 1) and irreducible over F_p.
    pub fn build_with(p: u32, m: u32, modulus: Option<&[u32]>, guard: u32) -> Result<FieldSpec> {
        Self::assemble(p, m, modulus, None, guard)
    }

    fn assemble(
        p: u32,
        m: u32,
        modulus: Option<&[u32]>,
        g_request: Option<u32>,
        guard: u32,
    ) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut acc: u64 = 1;
        for _ in 0..m {
            acc *= u64::from(p);
            if acc > u64::from(guard) {
                return Err(Error::SizeGuard { p, m, guard });
            }
        }
        let q = acc as u32;

        let modulus = match modulus {
            Some(given) => {
                let ok = given.len() == m as usize + 1
                    && given.last() == Some(&1)
                    && given.iter().all(|&c| c < p);
                if !ok {
                    return Err(Error::BadModulus {
                        expected: m,
                        got: given.to_vec(),
                    });
                }
                if !poly_is_irreducible(given, p) {
                    return Err(Error::ReducibleModulus(given.to_vec()));
                }
                given.to_vec()
            }
            None => first_irreducible(p, m),
        };

        let g = match g_request {
            Some(enc) => {
                if enc == 0 || enc >= q {
                    return Err(Error::NotPrimitive { g: enc, order: q - 1 });
                }
                if element_order(p, m, &modulus, enc) != q - 1 {
                    return Err(Error::NotPrimitive { g: enc, order: q - 1 });
                }
                enc
            }
            None => (1..q)
                .find(|&enc| element_order(p, m, &modulus, enc) == q - 1)
                .expect("F_q* is cyclic, so a generator exists"),
        };

        // Power and discrete-log tables for the cyclic group of order q - 1.
        let mut pow_g = Vec::with_capacity((q - 1) as usize);
        let mut dlog = vec![u32::MAX; q as usize];
        let mut val = 1u32;
        for k in 0..q - 1 {
            debug_assert_eq!(dlog[val as usize], u32::MAX, "generator order too small");
            pow_g.push(FieldElement(val));
            dlog[val as usize] = k;
            val = mul_enc(p, m, &modulus, val, g);
        }
        debug_assert_eq!(val, 1, "generator order mismatch");

        // Trace table: Tr(x) = sum of the m Frobenius conjugates of x.
        // The sum is fixed by x -> x^p, so it lands in the prime subfield.
        let trace_tab = (0..q)
            .map(|enc| {
                let mut acc = 0u32;
                let mut term = enc;
                for _ in 0..m {
                    acc = add_enc(p, m, acc, term);
                    term = pow_enc(p, m, &modulus, term, u64::from(p));
                }
                debug_assert!(acc < p, "trace escaped the prime subfield");
                acc
            })
            .collect();

        Ok(FieldSpec {
            p,
            m,
            q,
            modulus,
            g: FieldElement(g),
            dlog,
            pow_g,
            trace_tab,
        })
    }

    // ---------------------------------------------------------------- data

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, ascending degree, length m + 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn g(&self) -> FieldElement {
        self.g
    }

    /// Order of the root-of-unity group that holds every character value:
    /// n = p(q - 1). Well defined because gcd(p, q - 1) = 1.
    pub fn root_order(&self) -> u32 {
        debug_assert_eq!(gcd(self.p, self.q - 1), 1);
        self.p * (self.q - 1)
    }

    /// Checked element construction from an encoding.
    pub fn element(&self, encoding: u32) -> Result<FieldElement> {
        if encoding < self.q {
            Ok(FieldElement(encoding))
        } else {
            Err(Error::ElementRange {
                encoding,
                q: self.q,
            })
        }
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The q - 1 nonzero elements in encoding order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    // ---------------------------------------------------------- arithmetic

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(add_enc(self.p, self.m, x.0, y.0))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let digits = digits_base_p(u64::from(x.0), self.p, self.m as usize);
        let neg: Vec<u32> = digits.iter().map(|&d| (self.p - d) % self.p).collect();
        FieldElement(undigits(&neg, self.p))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(mul_enc(self.p, self.m, &self.modulus, x.0, y.0))
    }

    /// x^e by square and multiply, with 0^0 = 1.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        FieldElement(pow_enc(self.p, self.m, &self.modulus, x.0, e))
    }

    /// Multiplicative inverse, via the discrete-log tables.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = self.dlog[x.0 as usize];
        Ok(self.pow_g[((self.q - 1 - k) % (self.q - 1)) as usize])
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// The exponent k in [0, q-1) with g^k = x; errors on x = 0.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::DiscreteLogOfZero);
        }
        Ok(self.dlog[x.0 as usize])
    }

    /// g^k from the power table (k reduced mod q - 1).
    pub fn g_pow(&self, k: u32) -> FieldElement {
        self.pow_g[(k % (self.q - 1)) as usize]
    }

    /// Absolute trace Tr(x) = x + x^p + ... + x^{p^(m-1)}, as a residue
    /// in [0, p).
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace_tab[x.0 as usize]
    }

    // ----------------------------------------------------------------- io

    /// Serialize the defining data (p, m, modulus, g); tables are not stored.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FieldSpecFile {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
            g: self.g.0,
        })
        .expect("plain data serializes")
    }

    /// Rebuild a spec from its defining data, revalidating everything.
    pub fn from_json(text: &str, guard: u32) -> Result<FieldSpec> {
        let file: FieldSpecFile = serde_json::from_str(text)?;
        Self::assemble(file.p, file.m, Some(&file.modulus), Some(file.g), guard)
    }

    /// Rebuild from already-parsed defining data (used by codebook files).
    pub(crate) fn from_parts(p: u32, m: u32, modulus: &[u32], g: u32, guard: u32) -> Result<FieldSpec> {
        Self::assemble(p, m, Some(modulus), Some(g), guard)
    }

    /// Test hook: silently swap the modulus without rebuilding the tables,
    /// leaving the spec internally inconsistent on purpose.
    #[cfg(test)]
    pub(crate) fn corrupt_modulus_for_tests(&mut self, modulus: Vec<u32>) {
        self.modulus = modulus;
    }
}

// ------------------------------------------------------------- prime powers

/// Split q into (p, m) with q = p^m, p prime; None if q is not a prime power.
pub fn prime_power_decomposition(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).find(|&d| q % d == 0).expect("q >= 2 has a prime factor");
    let mut m = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Human-readable factorization like "2^2·3" for error messages.
pub fn factorization_string(mut n: u32) -> String {
    if n < 2 {
        return n.to_string();
    }
    let mut parts = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            parts.push(if e == 1 {
                d.to_string()
            } else {
                format!("{d}^{e}")
            });
        }
        d += 1;
    }
    if n > 1 {
        parts.push(n.to_string());
    }
    parts.join("·")
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ------------------------------------------------- encoded polynomial ops

fn digits_base_p(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % u64::from(p)) as u32);
        v /= u64::from(p);
    }
    debug_assert_eq!(v, 0);
    out
}

fn undigits(digits: &[u32], p: u32) -> u32 {
    digits
        .iter()
        .rev()
        .fold(0u32, |acc, &d| acc * p + d)
}

fn add_enc(p: u32, m: u32, x: u32, y: u32) -> u32 {
    let a = digits_base_p(u64::from(x), p, m as usize);
    let b = digits_base_p(u64::from(y), p, m as usize);
    let sum: Vec<u32> = a.iter().zip(&b).map(|(&u, &v)| (u + v) % p).collect();
    undigits(&sum, p)
}

fn mul_enc(p: u32, m: u32, modulus: &[u32], x: u32, y: u32) -> u32 {
    if x == 0 || y == 0 {
        return 0;
    }
    let a = digits_base_p(u64::from(x), p, m as usize);
    let b = digits_base_p(u64::from(y), p, m as usize);
    let prod = poly_mul(&a, &b, p);
    let rem = poly_rem_monic(prod, modulus, p);
    undigits(&rem, p)
}

fn pow_enc(p: u32, m: u32, modulus: &[u32], x: u32, mut e: u64) -> u32 {
    let mut base = x;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_enc(p, m, modulus, acc, base);
        }
        base = mul_enc(p, m, modulus, base, base);
        e >>= 1;
    }
    acc
}

fn element_order(p: u32, m: u32, modulus: &[u32], x: u32) -> u32 {
    debug_assert_ne!(x, 0);
    let mut k = 1;
    let mut v = x;
    while v != 1 {
        v = mul_enc(p, m, modulus, v, x);
        k += 1;
    }
    k
}

/// Degree of the highest nonzero coefficient, or None for the zero polynomial.
fn poly_deg(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of num by a monic divisor; returns exactly deg(den) digits.
fn poly_rem_monic(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let d = poly_deg(den).expect("divisor must be nonzero");
    debug_assert_eq!(den[d], 1, "divisor must be monic");
    while let Some(nd) = poly_deg(&num) {
        if nd < d {
            break;
        }
        let coef = num[nd];
        let shift = nd - d;
        for (i, &di) in den.iter().enumerate().take(d + 1) {
            let sub = (coef * di) % p;
            num[shift + i] = (num[shift + i] + p - sub) % p;
        }
        debug_assert_eq!(num[nd], 0);
    }
    num.resize(d, 0);
    num
}

/// Irreducibility over F_p by trial division: a reducible polynomial of
/// degree m has a monic factor of degree at most m/2.
fn poly_is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    debug_assert!(poly_deg(poly) == Some(m), "candidate must be monic");
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        let count = (u64::from(p)).pow(d as u32);
        for low in 0..count {
            let mut div = digits_base_p(low, p, d);
            div.push(1);
            if poly_deg(&poly_rem_monic(poly.to_vec(), &div, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible of degree m in encoding order of its
/// low coefficients. For m = 1 this is x itself.
fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (u64::from(p)).pow(m);
    for low in 0..count {
        let mut cand = digits_base_p(low, p, m as usize);
        cand.push(1);
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

// ----------------------------------------------------------------- tests

#[cfg(test)]
mod tests {
    use super::*;

    fn el(x: u32) -> FieldElement {
        FieldElement(x)
    }

    #[test]
    fn gf4_uses_first_irreducible_and_smallest_generator() {
        let f = FieldSpec::build(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2, and the
        // scan must land on it first.
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // g = x (encoding 2): encoding 1 is the identity, so the smallest
        // generator is the next element.
        assert_eq!(f.g(), el(2));
        assert_eq!(f.q(), 4);
    }

    #[test]
    fn gf4_multiplication() {
        let f = FieldSpec::build(2, 2).unwrap();
        // x * x = x + 1 under x^2 + x + 1.
        assert_eq!(f.mul(el(2), el(2)), el(3));
        assert_eq!(f.mul(el(2), el(3)), el(1));
        assert_eq!(f.mul(el(3), el(3)), el(2));
    }

    #[test]
    fn gf4_trace_table() {
        let f = FieldSpec::build(2, 2).unwrap();
        // Tr(x) = x + x^2; by hand: 0, 1+1, x+x+1, (x+1)+x = [0,0,1,1].
        let tab: Vec<u32> = (0..4).map(|e| f.trace(el(e))).collect();
        assert_eq!(tab, vec![0, 0, 1, 1]);
    }

    #[test]
    fn gf5_generator_and_dlog() {
        let f = FieldSpec::build(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        // Orders mod 5: ord(2) = 4, so 2 is the smallest generator.
        assert_eq!(f.g(), el(2));
        // 2^2 = 4.
        assert_eq!(f.discrete_log(el(4)).unwrap(), 2);
        assert_eq!(f.discrete_log(el(1)).unwrap(), 0);
        assert_eq!(f.discrete_log(el(2)).unwrap(), 1);
    }

    #[test]
    fn prime_field_trace_is_identity() {
        let f = FieldSpec::build(7, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.trace(x), x.encoding());
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2.
        let err = FieldSpec::build_with(2, 2, Some(&[1, 0, 1]), DEFAULT_SIZE_GUARD).unwrap_err();
        assert!(matches!(err, Error::ReducibleModulus(_)), "{err}");
    }

    #[test]
    fn malformed_modulus_rejected() {
        // Not monic.
        assert!(FieldSpec::build_with(3, 2, Some(&[1, 1, 2]), 512).is_err());
        // Wrong length.
        assert!(FieldSpec::build_with(3, 2, Some(&[1, 1]), 512).is_err());
        // Coefficient out of range.
        assert!(FieldSpec::build_with(3, 2, Some(&[4, 0, 1]), 512).is_err());
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(FieldSpec::build(4, 1), Err(Error::NonPrime(4))));
        assert!(matches!(FieldSpec::build(1, 3), Err(Error::NonPrime(1))));
    }

    #[test]
    fn size_guard_applies_and_can_be_raised() {
        assert!(matches!(
            FieldSpec::build(2, 10),
            Err(Error::SizeGuard { .. })
        ));
        let f = FieldSpec::build_with(2, 10, None, 1024).unwrap();
        assert_eq!(f.q(), 1024);
        assert_eq!(f.mul(f.g(), f.inv(f.g()).unwrap()), FieldElement::ONE);
    }

    #[test]
    fn inverses_and_dlog_roundtrip() {
        for (p, m) in [(2, 3), (3, 2), (13, 1), (2, 4)] {
            let f = FieldSpec::build(p, m).unwrap();
            for x in f.nonzero_elements() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
                assert_eq!(f.g_pow(f.discrete_log(x).unwrap()), x);
            }
            assert!(f.inv(FieldElement::ZERO).is_err());
            assert!(f.discrete_log(FieldElement::ZERO).is_err());
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = FieldSpec::build(3, 2).unwrap();
        for x in f.elements() {
            let mut acc = FieldElement::ONE;
            for e in 0..20u64 {
                assert_eq!(f.pow(x, e), acc, "x = {x:?}, e = {e}");
                acc = f.mul(acc, x);
            }
        }
        // Lagrange: x^(q-1) = 1 for nonzero x.
        for x in f.nonzero_elements() {
            assert_eq!(f.pow(x, u64::from(f.q()) - 1), FieldElement::ONE);
        }
    }

    #[test]
    fn trace_fibers_and_frobenius() {
        for (p, m) in [(2, 3), (3, 2), (2, 4)] {
            let f = FieldSpec::build(p, m).unwrap();
            // Tr is onto F_p with fibers of size q/p.
            let mut counts = vec![0u32; p as usize];
            for x in f.elements() {
                counts[f.trace(x) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == f.q() / p), "{counts:?}");
            // Tr is Frobenius-invariant.
            for x in f.elements() {
                assert_eq!(f.trace(f.pow(x, u64::from(p))), f.trace(x));
            }
        }
    }

    #[test]
    fn json_roundtrip_preserves_the_realization() {
        let f = FieldSpec::build(3, 2).unwrap();
        let g = FieldSpec::from_json(&f.to_json(), DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn json_load_rejects_a_non_generator() {
        // 4 = 2^2 has order 2 in F_5*, so it cannot be the stored g.
        let text = r#"{"p":5,"m":1,"modulus":[0,1],"g":4}"#;
        let err = FieldSpec::from_json(text, DEFAULT_SIZE_GUARD).unwrap_err();
        assert!(matches!(err, Error::NotPrimitive { g: 4, .. }), "{err}");
    }

    #[test]
    fn prime_power_decomposition_cases() {
        assert_eq!(prime_power_decomposition(8), Some((2, 3)));
        assert_eq!(prime_power_decomposition(9), Some((3, 2)));
        assert_eq!(prime_power_decomposition(7), Some((7, 1)));
        assert_eq!(prime_power_decomposition(6), None);
        assert_eq!(prime_power_decomposition(12), None);
        assert_eq!(prime_power_decomposition(1), None);
        assert_eq!(prime_power_decomposition(0), None);
    }

    #[test]
    fn factorization_strings() {
        assert_eq!(factorization_string(6), "2·3");
        assert_eq!(factorization_string(12), "2^2·3");
        assert_eq!(factorization_string(7), "7");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn specs() -> &'static [FieldSpec] {
            static SPECS: OnceLock<Vec<FieldSpec>> = OnceLock::new();
            SPECS.get_or_init(|| {
                [(2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (2, 4)]
                    .iter()
                    .map(|&(p, m)| FieldSpec::build(p, m).unwrap())
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn field_axioms_hold(idx in 0usize..6, xe: u32, ye: u32, ze: u32) {
                let f = &specs()[idx];
                let x = FieldElement(xe % f.q());
                let y = FieldElement(ye % f.q());
                let z = FieldElement(ze % f.q());
                prop_assert_eq!(f.add(x, y), f.add(y, x));
                prop_assert_eq!(f.mul(x, y), f.mul(y, x));
                prop_assert_eq!(f.mul(x, f.mul(y, z)), f.mul(f.mul(x, y), z));
                prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                prop_assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
                prop_assert_eq!(f.sub(f.add(x, y), y), x);
                // Trace is F_p-linear.
                prop_assert_eq!(f.trace(f.add(x, y)), (f.trace(x) + f.trace(y)) % f.p());
            }
        }
    }
}
