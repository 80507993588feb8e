//! Exact arithmetic in prime fields GF(p) and binary extension fields GF(2^k).
//!
//! Elements are carried as `u64` representatives: a residue in `[0, p)` for
//! prime fields, a polynomial bit-mask of degree `< k` for binary fields. The
//! hot paths (rank computation, tensor construction) work on raw
//! representatives through the methods on [`FieldDescriptor`];
//! [`FieldElement`] is the checked, descriptor-carrying wrapper.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive). Products of two residues
/// then fit in a `u64` without overflow handling.
pub const PRIME_LIMIT: u64 = 1 << 31;

/// Largest supported extension degree for binary fields.
pub const MAX_BINARY_DEGREE: u32 = 63;

/// Low-weight irreducible polynomials over GF(2), indexed by degree - 1.
///
/// Trinomial `x^k + x^a + 1` with the smallest `a` when one exists, otherwise
/// the pentanomial `x^k + x^a + x^b + x^c + 1` with lexicographically smallest
/// `(a, b, c)`. Degree 1 uses `x + 1`.
const IRREDUCIBLES: [u64; 63] = [
    0x3,                // 1: x + 1
    0x7,                // 2: x^2 + x + 1
    0xb,                // 3: x^3 + x + 1
    0x13,               // 4: x^4 + x + 1
    0x25,               // 5: x^5 + x^2 + 1
    0x43,               // 6: x^6 + x + 1
    0x83,               // 7: x^7 + x + 1
    0x11b,              // 8: x^8 + x^4 + x^3 + x + 1
    0x203,              // 9: x^9 + x + 1
    0x409,              // 10: x^10 + x^3 + 1
    0x805,              // 11: x^11 + x^2 + 1
    0x1009,             // 12: x^12 + x^3 + 1
    0x201b,             // 13: x^13 + x^4 + x^3 + x + 1
    0x4021,             // 14: x^14 + x^5 + 1
    0x8003,             // 15: x^15 + x + 1
    0x1002b,            // 16: x^16 + x^5 + x^3 + x + 1
    0x20009,            // 17: x^17 + x^3 + 1
    0x40009,            // 18: x^18 + x^3 + 1
    0x80027,            // 19: x^19 + x^5 + x^2 + x + 1
    0x100009,           // 20: x^20 + x^3 + 1
    0x200005,           // 21: x^21 + x^2 + 1
    0x400003,           // 22: x^22 + x + 1
    0x800021,           // 23: x^23 + x^5 + 1
    0x100001b,          // 24: x^24 + x^4 + x^3 + x + 1
    0x2000009,          // 25: x^25 + x^3 + 1
    0x400001b,          // 26: x^26 + x^4 + x^3 + x + 1
    0x8000027,          // 27: x^27 + x^5 + x^2 + x + 1
    0x10000003,         // 28: x^28 + x + 1
    0x20000005,         // 29: x^29 + x^2 + 1
    0x40000003,         // 30: x^30 + x + 1
    0x80000009,         // 31: x^31 + x^3 + 1
    0x10000008d,        // 32: x^32 + x^7 + x^3 + x^2 + 1
    0x200000401,        // 33: x^33 + x^10 + 1
    0x400000081,        // 34: x^34 + x^7 + 1
    0x800000005,        // 35: x^35 + x^2 + 1
    0x1000000201,       // 36: x^36 + x^9 + 1
    0x2000000053,       // 37: x^37 + x^6 + x^4 + x + 1
    0x4000000063,       // 38: x^38 + x^6 + x^5 + x + 1
    0x8000000011,       // 39: x^39 + x^4 + 1
    0x10000000039,      // 40: x^40 + x^5 + x^4 + x^3 + 1
    0x20000000009,      // 41: x^41 + x^3 + 1
    0x40000000081,      // 42: x^42 + x^7 + 1
    0x80000000059,      // 43: x^43 + x^6 + x^4 + x^3 + 1
    0x100000000021,     // 44: x^44 + x^5 + 1
    0x20000000001b,     // 45: x^45 + x^4 + x^3 + x + 1
    0x400000000003,     // 46: x^46 + x + 1
    0x800000000021,     // 47: x^47 + x^5 + 1
    0x100000000002d,    // 48: x^48 + x^5 + x^3 + x^2 + 1
    0x2000000000201,    // 49: x^49 + x^9 + 1
    0x400000000001d,    // 50: x^50 + x^4 + x^3 + x^2 + 1
    0x800000000004b,    // 51: x^51 + x^6 + x^3 + x + 1
    0x10000000000009,   // 52: x^52 + x^3 + 1
    0x20000000000047,   // 53: x^53 + x^6 + x^2 + x + 1
    0x40000000000201,   // 54: x^54 + x^9 + 1
    0x80000000000081,   // 55: x^55 + x^7 + 1
    0x100000000000095,  // 56: x^56 + x^7 + x^4 + x^2 + 1
    0x200000000000011,  // 57: x^57 + x^4 + 1
    0x400000000080001,  // 58: x^58 + x^19 + 1
    0x800000000000095,  // 59: x^59 + x^7 + x^4 + x^2 + 1
    0x1000000000000003, // 60: x^60 + x + 1
    0x2000000000000027, // 61: x^61 + x^5 + x^2 + x + 1
    0x4000000020000001, // 62: x^62 + x^29 + 1
    0x8000000000000003, // 63: x^63 + x + 1
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} is out of range (must be below 2^31)")]
    PrimeOutOfRange(u64),
    #[error("extension degree {0} is out of range (must be in 1..=63)")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} is not irreducible of degree {k}")]
    NotIrreducible { k: u32, poly: u64 },
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{repr} is not a canonical element of {field}")]
    NotCanonical { repr: u64, field: FieldDescriptor },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    Binary,
}

/// A finite field: GF(p) for a prime `p < 2^31`, or GF(2^k) for `1 <= k <= 63`
/// with an irreducible reduction polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    /// `p` for prime fields, the reduction polynomial (bit `k` set) for binary fields.
    modulus: u64,
    /// 1 for prime fields, `k` for binary fields.
    degree: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Carry-less multiply of two residues of degree `< k`, reduced modulo `poly`.
#[inline]
fn clmul_mod(mut a: u64, mut b: u64, poly: u64, k: u32) -> u64 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> k) & 1 != 0 {
            a ^= poly;
        }
    }
    acc
}

fn poly_degree(a: u64) -> Option<u32> {
    (a != 0).then(|| 63 - a.leading_zeros())
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("division by the zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: a degree-`k` polynomial `f` is irreducible over GF(2) iff
/// `x^(2^k) = x (mod f)` and `gcd(x^(2^(k/q)) - x, f) = 1` for every prime `q | k`.
pub fn is_irreducible(k: u32, poly: u64) -> bool {
    if k == 0 || k > MAX_BINARY_DEGREE || poly_degree(poly) != Some(k) {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = 0b10;
    let frobenius = |times: u32| {
        let mut acc = x;
        for _ in 0..times {
            acc = clmul_mod(acc, acc, poly, k);
        }
        acc
    };
    if frobenius(k) != x {
        return false;
    }
    distinct_prime_factors(k).into_iter().all(|q| poly_gcd(poly, frobenius(k / q) ^ x) == 1)
}

impl FieldDescriptor {
    /// GF(p) for a prime `p < 2^31`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= PRIME_LIMIT {
            return Err(FieldError::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { kind: FieldKind::Prime, modulus: p, degree: 1 })
    }

    /// GF(2^k) with the built-in low-weight irreducible of degree `k`.
    pub fn binary(k: u32) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_BINARY_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        Ok(Self { kind: FieldKind::Binary, modulus: IRREDUCIBLES[(k - 1) as usize], degree: k })
    }

    /// GF(2^k) with a caller-supplied reduction polynomial, verified irreducible.
    pub fn binary_with_poly(k: u32, poly: u64) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_BINARY_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        if !is_irreducible(k, poly) {
            return Err(FieldError::NotIrreducible { k, poly });
        }
        Ok(Self { kind: FieldKind::Binary, modulus: poly, degree: k })
    }

    pub fn gf2() -> Self {
        Self { kind: FieldKind::Prime, modulus: 2, degree: 1 }
    }

    /// The built-in reduction polynomial for degree `k`, if `k` is in range.
    pub fn builtin_poly(k: u32) -> Option<u64> {
        (1..=MAX_BINARY_DEGREE).contains(&k).then(|| IRREDUCIBLES[(k - 1) as usize])
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Prime => self.modulus,
            FieldKind::Binary => 2,
        }
    }

    /// Number of elements. `2^63` is the largest possible value.
    pub fn order(&self) -> u64 {
        match self.kind {
            FieldKind::Prime => self.modulus,
            FieldKind::Binary => 1u64 << self.degree,
        }
    }

    /// Extension degree over the prime subfield (1 for prime fields).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn reduction_poly(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime => None,
            FieldKind::Binary => Some(self.modulus),
        }
    }

    /// True for the two-element field in either representation.
    pub fn is_gf2(&self) -> bool {
        self.order() == 2
    }

    #[inline]
    pub fn contains(&self, repr: u64) -> bool {
        repr < self.order()
    }

    pub fn element(&self, repr: u64) -> Result<FieldElement, FieldError> {
        if !self.contains(repr) {
            return Err(FieldError::NotCanonical { repr, field: *self });
        }
        Ok(FieldElement { repr, field: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { repr: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { repr: 1, field: *self }
    }

    /// Canonical image of an integer: reduction mod `p`, or the low `k` bits
    /// read as a polynomial for binary fields.
    #[inline]
    pub fn reduce(&self, value: u64) -> u64 {
        match self.kind {
            FieldKind::Prime => value % self.modulus,
            FieldKind::Binary => value & (self.order() - 1),
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            FieldKind::Prime => {
                let s = a + b;
                if s >= self.modulus {
                    s - self.modulus
                } else {
                    s
                }
            }
            FieldKind::Binary => a ^ b,
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match self.kind {
            FieldKind::Prime if a != 0 => self.modulus - a,
            _ => a,
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            FieldKind::Prime => a * b % self.modulus,
            FieldKind::Binary => clmul_mod(a, b, self.modulus, self.degree),
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.order() - 2))
    }

    /// All elements in increasing representative order. Only sensible for
    /// small fields.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "GF({})", self.modulus),
            FieldKind::Binary => write!(f, "GF(2^{}; {:#x})", self.degree, self.modulus),
        }
    }
}

/// Wire form: `{"kind":"prime","p":N}` or `{"kind":"binary","k":N}`. A
/// non-default reduction polynomial is carried in an optional `"poly"` field.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FieldWire {
    Prime {
        p: u64,
    },
    Binary {
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        poly: Option<u64>,
    },
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = match self.kind {
            FieldKind::Prime => FieldWire::Prime { p: self.modulus },
            FieldKind::Binary => FieldWire::Binary {
                k: self.degree,
                poly: (Self::builtin_poly(self.degree) != Some(self.modulus)).then_some(self.modulus),
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let field = match FieldWire::deserialize(deserializer)? {
            FieldWire::Prime { p } => FieldDescriptor::prime(p),
            FieldWire::Binary { k, poly: None } => FieldDescriptor::binary(k),
            FieldWire::Binary { k, poly: Some(poly) } => FieldDescriptor::binary_with_poly(k, poly),
        };
        field.map_err(serde::de::Error::custom)
    }
}

/// A field element that knows its field. Arithmetic across different
/// descriptors is an error.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    repr: u64,
    field: FieldDescriptor,
}

impl FieldElement {
    pub fn repr(&self) -> u64 {
        self.repr
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn same_field(&self, other: &Self) -> Result<FieldDescriptor, FieldError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch(self.field, other.field));
        }
        Ok(self.field)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        let field = self.same_field(other)?;
        Ok(Self { repr: field.add(self.repr, other.repr), field })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        let field = self.same_field(other)?;
        Ok(Self { repr: field.sub(self.repr, other.repr), field })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        let field = self.same_field(other)?;
        Ok(Self { repr: field.mul(self.repr, other.repr), field })
    }

    pub fn neg(&self) -> Self {
        Self { repr: self.field.neg(self.repr), field: self.field }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let repr = self.field.inv(self.repr).ok_or(FieldError::ZeroInverse)?;
        Ok(Self { repr, field: self.field })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.repr, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_constructor() {
        assert_eq!(FieldDescriptor::prime(2).unwrap().order(), 2);
        assert_eq!(FieldDescriptor::prime(5).unwrap().order(), 5);
        assert_eq!(FieldDescriptor::prime(6), Err(FieldError::NotPrime(6)));
        assert_eq!(FieldDescriptor::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldDescriptor::prime(0), Err(FieldError::NotPrime(0)));
        assert_eq!(FieldDescriptor::prime(1 << 31), Err(FieldError::PrimeOutOfRange(1 << 31)));
        // 2^31 - 1 is a Mersenne prime and the largest admissible modulus.
        assert!(FieldDescriptor::prime((1 << 31) - 1).is_ok());
    }

    #[test]
    fn binary_constructor() {
        let gf8 = FieldDescriptor::binary(3).unwrap();
        assert_eq!(gf8.reduction_poly(), Some(0b1011));
        assert_eq!(gf8.order(), 8);
        assert_eq!(FieldDescriptor::binary(64), Err(FieldError::DegreeOutOfRange(64)));
        assert_eq!(FieldDescriptor::binary(0), Err(FieldError::DegreeOutOfRange(0)));
        assert_eq!(FieldDescriptor::binary(63).unwrap().order(), 1 << 63);
    }

    #[test]
    fn cubic_has_no_roots_in_gf2() {
        // A cubic is irreducible iff it has no root; evaluate x^3 + x + 1 at 0 and 1.
        for x in 0u64..2 {
            assert_eq!((x * x * x + x + 1) % 2, 1);
        }
        assert!(is_irreducible(3, 0b1011));
        // x^3 + x^2 + x + 1 = (x + 1)^3
        assert!(!is_irreducible(3, 0b1111));
    }

    #[test]
    fn builtin_table_is_irreducible() {
        for k in 1..=MAX_BINARY_DEGREE {
            let poly = FieldDescriptor::builtin_poly(k).unwrap();
            assert!(is_irreducible(k, poly), "degree {k}: {poly:#x}");
            assert!(poly.count_ones() <= 5);
        }
    }

    #[test]
    fn irreducibility_matches_root_free_quartics() {
        // Brute force: a quartic over GF(2) is irreducible iff it has no root
        // and is not the square of the unique irreducible quadratic x^2+x+1.
        for low in 0u64..16 {
            let poly = 0b10000 | low;
            let eval = |x: u64| (0..5).filter(|i| poly >> i & 1 == 1).map(|i| x.pow(i)).sum::<u64>() % 2;
            let rootless = eval(0) == 1 && eval(1) == 1;
            let expected = rootless && poly != 0b10101;
            assert_eq!(is_irreducible(4, poly), expected, "{poly:#b}");
        }
    }

    #[test]
    fn custom_poly_is_checked() {
        assert!(FieldDescriptor::binary_with_poly(3, 0b1101).is_ok());
        assert_eq!(
            FieldDescriptor::binary_with_poly(3, 0b1111),
            Err(FieldError::NotIrreducible { k: 3, poly: 0b1111 })
        );
    }

    #[test]
    fn gf5_inverse_from_table() {
        let f = FieldDescriptor::prime(5).unwrap();
        // exhaustive multiplication table: the x with 2x = 1
        let by_table = (1..5).find(|&x| (2 * x) % 5 == 1).unwrap();
        assert_eq!(by_table, 3);
        assert_eq!(f.inv(2), Some(3));
        let two = f.element(2).unwrap();
        assert_eq!(two.inv().unwrap().repr(), 3);
    }

    #[test]
    fn gf8_product_reduces() {
        let f = FieldDescriptor::binary(3).unwrap();
        // x * x^2 = x^3 = x + 1 (mod x^3 + x + 1)
        assert_eq!(f.mul(0b010, 0b100), 0b011);
        let x = f.element(0b010).unwrap();
        let x2 = f.element(0b100).unwrap();
        assert_eq!(x.mul(&x2).unwrap().repr(), 0b011);
    }

    #[test]
    fn additive_inverse() {
        for f in [FieldDescriptor::prime(7).unwrap(), FieldDescriptor::binary(4).unwrap()] {
            for a in f.elements() {
                let e = f.element(a).unwrap();
                assert!(e.add(&e.neg()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn errors() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = f2.one();
        let b = f3.one();
        assert!(matches!(a.add(&b), Err(FieldError::DescriptorMismatch(..))));
        assert_eq!(f3.zero().inv(), Err(FieldError::ZeroInverse));
        assert!(matches!(f3.element(3), Err(FieldError::NotCanonical { .. })));
    }

    #[test]
    fn gf2_representations_agree() {
        let p = FieldDescriptor::prime(2).unwrap();
        let b = FieldDescriptor::binary(1).unwrap();
        assert!(p.is_gf2() && b.is_gf2());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(p.add(x, y), b.add(x, y));
                assert_eq!(p.mul(x, y), b.mul(x, y));
            }
            assert_eq!(p.neg(x), b.neg(x));
            assert_eq!(p.inv(x), b.inv(x));
        }
    }

    #[test]
    fn wire_format() {
        let p = FieldDescriptor::prime(5).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"kind":"prime","p":5}"#);
        let b = FieldDescriptor::binary(8).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"kind":"binary","k":8}"#);
        let back: FieldDescriptor = serde_json::from_str(r#"{"kind":"binary","k":8}"#).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"kind":"prime","p":9}"#).is_err());
        let custom = FieldDescriptor::binary_with_poly(3, 0b1101).unwrap();
        let text = serde_json::to_string(&custom).unwrap();
        assert_eq!(serde_json::from_str::<FieldDescriptor>(&text).unwrap(), custom);
    }

    fn fields() -> Vec<FieldDescriptor> {
        vec![
            FieldDescriptor::prime(2).unwrap(),
            FieldDescriptor::prime(3).unwrap(),
            FieldDescriptor::prime(5).unwrap(),
            FieldDescriptor::prime(2_147_483_647).unwrap(),
            FieldDescriptor::binary(1).unwrap(),
            FieldDescriptor::binary(3).unwrap(),
            FieldDescriptor::binary(8).unwrap(),
            FieldDescriptor::binary(63).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(idx in 0usize..8, a: u64, b: u64, c: u64) {
            let f = fields()[idx];
            let (a, b, c) = (f.reduce(a), f.reduce(b), f.reduce(c));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            if f.characteristic() == 2 {
                prop_assert_eq!(f.add(a, a), 0);
            }
        }
    }
}
