//! Coefficient domains: integers, rationals and finite fields.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ff::{FieldDescriptor, FieldElement};

/// A commutative coefficient ring. Arithmetic goes through the ring value
/// so that finite-field elements stay plain `Copy` data.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    type Ring: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(ring: &Self::Ring) -> Self;
    fn one(ring: &Self::Ring) -> Self;
    fn from_i64(ring: &Self::Ring, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(ring: &Self::Ring, a: &Self, b: &Self) -> Self;
    fn sub(ring: &Self::Ring, a: &Self, b: &Self) -> Self;
    fn mul(ring: &Self::Ring, a: &Self, b: &Self) -> Self;
    fn neg(ring: &Self::Ring, a: &Self) -> Self;
    /// 0 for characteristic-zero rings.
    fn characteristic(ring: &Self::Ring) -> u32;

    fn is_one(ring: &Self::Ring, a: &Self) -> bool {
        *a == Self::one(ring)
    }

    /// `(is_negative, magnitude text)`; finite-field values are never negative.
    fn format(ring: &Self::Ring, a: &Self) -> (bool, String);
    fn parse(ring: &Self::Ring, text: &str) -> Option<Self>;
}

/// Coefficient rings that are fields.
pub trait FieldCoeff: Coeff {
    fn inv(ring: &Self::Ring, a: &Self) -> Option<Self>;

    fn div(ring: &Self::Ring, a: &Self, b: &Self) -> Option<Self> {
        Self::inv(ring, b).map(|bi| Self::mul(ring, a, &bi))
    }
}

/// The ring of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Coeff for BigInt {
    type Ring = Integers;

    fn zero(_: &Integers) -> Self {
        <BigInt as Zero>::zero()
    }
    fn one(_: &Integers) -> Self {
        <BigInt as One>::one()
    }
    fn from_i64(_: &Integers, v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(_: &Integers, a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(_: &Integers, a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(_: &Integers, a: &Self, b: &Self) -> Self {
        a * b
    }
    fn neg(_: &Integers, a: &Self) -> Self {
        -a
    }
    fn characteristic(_: &Integers) -> u32 {
        0
    }
    fn format(_: &Integers, a: &Self) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn parse(_: &Integers, text: &str) -> Option<Self> {
        text.parse().ok()
    }
}

impl Coeff for BigRational {
    type Ring = Rationals;

    fn zero(_: &Rationals) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &Rationals) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(_: &Rationals, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(_: &Rationals, a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(_: &Rationals, a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(_: &Rationals, a: &Self, b: &Self) -> Self {
        a * b
    }
    fn neg(_: &Rationals, a: &Self) -> Self {
        -a
    }
    fn characteristic(_: &Rationals) -> u32 {
        0
    }
    fn format(_: &Rationals, a: &Self) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn parse(_: &Rationals, text: &str) -> Option<Self> {
        match text.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if Zero::is_zero(&d) {
                    return None;
                }
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
            None => Some(BigRational::from_integer(text.trim().parse().ok()?)),
        }
    }
}

impl FieldCoeff for BigRational {
    fn inv(_: &Rationals, a: &Self) -> Option<Self> {
        (!Zero::is_zero(a)).then(|| a.recip())
    }
}

/// Shared handle to a finite field, used as the coefficient ring of
/// polynomials over `F_q`.
pub type Field = Arc<FieldDescriptor>;

impl Coeff for FieldElement {
    type Ring = Field;

    fn zero(_: &Field) -> Self {
        FieldElement::ZERO
    }
    fn one(f: &Field) -> Self {
        f.one()
    }
    fn from_i64(f: &Field, v: i64) -> Self {
        f.from_int(v)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(f: &Field, a: &Self, b: &Self) -> Self {
        f.add(*a, *b)
    }
    fn sub(f: &Field, a: &Self, b: &Self) -> Self {
        f.sub(*a, *b)
    }
    fn mul(f: &Field, a: &Self, b: &Self) -> Self {
        f.mul(*a, *b)
    }
    fn neg(f: &Field, a: &Self) -> Self {
        f.neg(*a)
    }
    fn characteristic(f: &Field) -> u32 {
        f.characteristic()
    }
    fn format(f: &Field, a: &Self) -> (bool, String) {
        if f.degree() == 1 {
            return (false, a.constant().to_string());
        }
        // Polynomial in the generator `a`, parenthesized.
        let mut parts = Vec::new();
        for i in (0..f.degree()).rev() {
            let c = a.coeffs()[i];
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            });
        }
        if parts.is_empty() {
            return (false, "0".into());
        }
        (false, format!("({})", parts.join("+")))
    }
    fn parse(f: &Field, text: &str) -> Option<Self> {
        let text = text.trim();
        if let Ok(v) = text.parse::<i64>() {
            return Some(f.from_int(v));
        }
        let inner = match text.strip_prefix('(') {
            Some(t) => t.strip_suffix(')')?,
            None => text,
        };
        let mut coeffs = vec![0i64; f.degree()];
        for part in inner.split('+') {
            let part = part.trim();
            let (c, rest) = match part.split_once('*') {
                Some((c, rest)) => (c.trim().parse::<i64>().ok()?, rest.trim()),
                None if part.starts_with('a') => (1, part),
                None => (part.parse::<i64>().ok()?, ""),
            };
            let deg = match rest {
                "" => 0,
                "a" => 1,
                r => r.strip_prefix("a^")?.parse::<usize>().ok()?,
            };
            if deg >= f.degree() {
                return None;
            }
            coeffs[deg] += c;
        }
        Some(f.from_coeffs(&coeffs))
    }
}

impl FieldCoeff for FieldElement {
    fn inv(f: &Field, a: &Self) -> Option<Self> {
        f.inv(*a)
    }
}
