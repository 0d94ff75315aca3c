//! Hilbert symbols over `Q_p` and `R`, written additively in `(1/2)Z/Z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BrauerError;

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "infinity" | "real" => Ok(Place::Real),
            _ => match s.parse::<u64>() {
                Ok(p) if is_prime(p) => Ok(Place::Prime(p)),
                _ => Err(format!("not a place: {s}")),
            },
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `(1/2)Z/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Invariant {
    #[default]
    Zero,
    Half,
}

impl Invariant {
    pub fn from_bit(b: bool) -> Self {
        if b {
            Invariant::Half
        } else {
            Invariant::Zero
        }
    }

    pub fn is_half(self) -> bool {
        self == Invariant::Half
    }
}

impl std::ops::Add for Invariant {
    type Output = Invariant;
    fn add(self, o: Invariant) -> Invariant {
        Invariant::from_bit(self.is_half() != o.is_half())
    }
}

impl std::iter::Sum for Invariant {
    fn sum<I: Iterator<Item = Invariant>>(it: I) -> Invariant {
        it.fold(Invariant::Zero, |a, b| a + b)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_half() { "1/2" } else { "0" })
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Invariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "0" => Ok(Invariant::Zero),
            "1/2" => Ok(Invariant::Half),
            other => Err(serde::de::Error::custom(format!("not an invariant: {other}"))),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d: &u64| d * d <= n).all(|d| n % d != 0)
}

/// Same square class as `a`, as an integer.
fn integral(a: &BigRational) -> BigInt {
    a.numer() * a.denom()
}

/// `a = p^k u` with `p` not dividing `u`.
fn split(a: &BigInt, p: u64) -> (u64, BigInt) {
    let p = BigInt::from(p);
    let mut u = a.clone();
    let mut k = 0;
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (k, u);
        }
        u = q;
        k += 1;
    }
}

/// Legendre symbol `(u / p)` as a bit (`true` for `-1`), `p` odd, `p` not dividing `u`.
fn legendre_is_minus(u: &BigInt, p: u64) -> bool {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    r != BigInt::one()
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().expect("small")
}

/// `inv_v (a, b)`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<Invariant, BrauerError> {
    if a.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroArgument);
    }
    let (a, b) = (integral(a), integral(b));
    Ok(match place {
        Place::Real => Invariant::from_bit(a.is_negative() && b.is_negative()),
        Place::Prime(2) => {
            let (al, u) = split(&a, 2);
            let (be, v) = split(&b, 2);
            let eps = |x: u64| (x - 1) / 2 % 2;
            let omega = |x: u64| (x * x - 1) / 8 % 2;
            let (u8_, v8) = (mod8(&u), mod8(&v));
            let e = eps(u8_) * eps(v8) + al * omega(v8) + be * omega(u8_);
            Invariant::from_bit(e % 2 == 1)
        }
        Place::Prime(p) => {
            let (al, u) = split(&a, p);
            let (be, v) = split(&b, p);
            let mut bit = (al * be % 2 == 1) && ((p - 1) / 2 % 2 == 1);
            if be % 2 == 1 && legendre_is_minus(&u, p) {
                bit = !bit;
            }
            if al % 2 == 1 && legendre_is_minus(&v, p) {
                bit = !bit;
            }
            Invariant::from_bit(bit)
        }
    })
}

/// Prime factors of `|n|` by trial division; `None` when a cofactor above
/// `2^64` survives division by every prime below `2^20`.
pub fn prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return Some(out);
    }
    let mut d = 2u64;
    while d < 1 << 20 {
        let db = BigInt::from(d);
        if &db * &db > n {
            break;
        }
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let rest = n.to_u64()?;
        let mut d = d.max(3) | 1;
        let mut rest = rest;
        while (d as u128) * (d as u128) <= rest as u128 {
            if rest % d == 0 {
                out.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 2;
        }
        if rest > 1 {
            out.push(rest);
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// The real place, `2`, and every prime dividing a numerator or denominator.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>, BrauerError> {
    let mut primes = vec![2u64];
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        primes.extend(prime_factors(n).ok_or_else(|| BrauerError::Unfactorable(n.to_string()))?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Real);
    Ok(places)
}

/// Whether `z^2 = a x^2 + b y^2` has a primitive solution modulo `p^k`.
/// With `a, b` squarefree at `p`, `k = 3` decides the local symbol for odd
/// `p` and `k = 6` for `p = 2`.
pub fn solvable_mod_prime_power(a: &BigInt, b: &BigInt, p: u64, k: u32) -> bool {
    let m = p.pow(k);
    let red = |x: &BigInt| x.mod_floor(&BigInt::from(m)).to_u64().expect("small") as u128;
    let (a, b) = (red(a), red(b));
    let m128 = m as u128;
    let mut any_square = vec![false; m as usize];
    let mut unit_square = vec![false; m as usize];
    for z in 0..m {
        let s = ((z as u128 * z as u128) % m128) as usize;
        any_square[s] = true;
        if z % p != 0 {
            unit_square[s] = true;
        }
    }
    for x in 0..m {
        let ax = a * (x as u128 * x as u128 % m128) % m128;
        for y in 0..m {
            let v = ((ax + b * (y as u128 * y as u128 % m128)) % m128) as usize;
            let unit_xy = x % p != 0 || y % p != 0;
            if if unit_xy { any_square[v] } else { unit_square[v] } {
                return true;
            }
        }
    }
    false
}

/// Removes square factors `p^2` from an integer's `p`-part.
pub fn reduce_at(a: &BigInt, p: u64) -> BigInt {
    let (k, u) = split(a, p);
    if k % 2 == 1 {
        u * BigInt::from(p)
    } else {
        u
    }
}

/// Brute-force local symbol: `0` iff the conic `z^2 = a x^2 + b y^2` has a
/// primitive solution modulo `p^3` (`2^6` for `p = 2`).
pub fn hilbert_symbol_by_search(a: &BigRational, b: &BigRational, p: u64) -> Invariant {
    let (a, b) = (reduce_at(&integral(a), p), reduce_at(&integral(b), p));
    let k = if p == 2 { 6 } else { 3 };
    Invariant::from_bit(!solvable_mod_prime_power(&a, &b, p, k))
}
