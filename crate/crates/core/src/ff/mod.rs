//! Arithmetic in prime fields and their extensions `F_p[X]/(f)` for small `p`.
//!
//! Elements are stored as reduced coefficient vectors of degree `< n`. The
//! descriptor carries the modulus and performs all arithmetic; elements are
//! plain `Copy` values. Bulk-evaluation helpers (power tables, lazily reduced
//! accumulators, discrete-log tables) live in [`tables`].

pub mod tables;

use std::fmt;

use thiserror::Error;

pub use tables::{LogTables, Packing, PowerTables};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Largest supported characteristic; coefficient lanes are bytes.
pub const MAX_CHARACTERISTIC: u32 = 127;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("characteristic {0} is above the supported bound {MAX_CHARACTERISTIC}")]
    CharacteristicTooLarge(u32),
    #[error("extension degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("no irreducible modulus found for p = {p}, n = {n}")]
    NoIrreducible { p: u32, n: usize },
    #[error("square test requested in characteristic 2")]
    EvenCharacteristic,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_{p^n}`: coefficients `c_0 + c_1 X + ... + c_{n-1} X^{n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement {
    coeffs: [u8; MAX_DEGREE],
}

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement { coeffs: [0; MAX_DEGREE] };

    pub fn coeffs(&self) -> &[u8; MAX_DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Constant coefficient; the value of a prime-field element.
    pub fn constant(&self) -> u32 {
        self.coeffs[0] as u32
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "Fe{:?}", &self.coeffs[..=last])
    }
}

/// The field `F_p[X]/(modulus)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    p: u32,
    n: usize,
    /// Monic modulus, lowest degree first, length `n + 1`.
    modulus: Vec<u32>,
    order: u64,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.n, self.modulus)
    }
}

impl FieldDescriptor {
    /// Builds `F_{p^n}` with the sparsest irreducible modulus in the fixed
    /// search order: fewest nonzero coefficients first, then lexicographic
    /// on `(c_0, ..., c_{n-1})`.
    pub fn new(p: u32, n: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(FieldError::BadDegree(n));
        }
        for weight in 1..=n + 1 {
            for candidate in candidates_of_weight(p, n, weight) {
                if is_irreducible(p, &candidate) {
                    return Ok(Self::from_modulus_unchecked(p, candidate));
                }
            }
        }
        Err(FieldError::NoIrreducible { p, n })
    }

    /// Prime field `F_p` (modulus `X`).
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// Uses an explicit monic modulus (lowest degree first). Irreducibility
    /// is checked.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let n = modulus.len().saturating_sub(1);
        if n == 0 || n > MAX_DEGREE || modulus[n] % p != 1 {
            return Err(FieldError::BadDegree(n));
        }
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if !is_irreducible(p, &modulus) {
            return Err(FieldError::NoIrreducible { p, n });
        }
        Ok(Self::from_modulus_unchecked(p, modulus))
    }

    fn from_modulus_unchecked(p: u32, modulus: Vec<u32>) -> Self {
        let n = modulus.len() - 1;
        FieldDescriptor { p, n, modulus, order: (p as u64).pow(n as u32) }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class of `X`, i.e. the root of the modulus (equals `-m_0` when `n = 1`).
    pub fn generator_root(&self) -> FieldElement {
        if self.n == 1 {
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut e = FieldElement::ZERO;
        e.coeffs[1] = 1;
        e
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = FieldElement::ZERO;
        e.coeffs[0] = v.rem_euclid(self.p as i64) as u8;
        e
    }

    /// Builds an element from coefficients (lowest first); extra entries and
    /// out-of-range residues are reduced.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        let mut acc = [0u32; 2 * MAX_DEGREE];
        for (i, &c) in coeffs.iter().enumerate() {
            acc[i] = c.rem_euclid(self.p as i64) as u32;
        }
        self.reduce_wide(&mut acc, coeffs.len().max(1))
    }

    /// Enumeration index `sum c_i p^i` in `[0, q)`.
    pub fn index_of(&self, e: FieldElement) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.n).rev() {
            idx = idx * self.p as u64 + e.coeffs[i] as u64;
        }
        idx
    }

    pub fn element(&self, mut idx: u64) -> FieldElement {
        let mut e = FieldElement::ZERO;
        for i in 0..self.n {
            e.coeffs[i] = (idx % self.p as u64) as u8;
            idx /= self.p as u64;
        }
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        let p = self.p as u16;
        for i in 0..self.n {
            let s = a.coeffs[i] as u16 + b.coeffs[i] as u16;
            r.coeffs[i] = if s >= p { (s - p) as u8 } else { s as u8 };
        }
        r
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let mut r = FieldElement::ZERO;
        for i in 0..self.n {
            if a.coeffs[i] != 0 {
                r.coeffs[i] = (self.p - a.coeffs[i] as u32) as u8;
            }
        }
        r
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: FieldElement, k: u32) -> FieldElement {
        let k = k % self.p;
        let mut r = FieldElement::ZERO;
        for i in 0..self.n {
            r.coeffs[i] = ((a.coeffs[i] as u32 * k) % self.p) as u8;
        }
        r
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = [0u32; 2 * MAX_DEGREE];
        mul_into(&mut acc, &a, &b, self.n);
        self.reduce_wide(&mut acc, 2 * self.n - 1)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Reduces an unreduced polynomial in `X` of length `len` (coefficients
    /// possibly above `p`) modulo the field modulus, dividing inline.
    pub(crate) fn reduce_wide(&self, acc: &mut [u32; 2 * MAX_DEGREE], len: usize) -> FieldElement {
        let p = self.p;
        let n = self.n;
        for d in (n..len).rev() {
            let c = acc[d] % p;
            acc[d] = 0;
            if c == 0 {
                continue;
            }
            let t = p - c;
            for i in 0..n {
                let m = self.modulus[i];
                if m != 0 {
                    acc[d - n + i] = (acc[d - n + i] + t * m) % p;
                }
            }
        }
        let mut r = FieldElement::ZERO;
        for i in 0..n {
            r.coeffs[i] = (acc[i] % p) as u8;
        }
        r
    }

    /// `g^k` by left-to-right (Horner) binary exponentiation; `g^0 = 1`.
    pub fn pow(&self, g: FieldElement, k: u64) -> FieldElement {
        let mut r = self.one();
        if k == 0 {
            return r;
        }
        for bit in (0..64 - k.leading_zeros()).rev() {
            r = self.square(r);
            if (k >> bit) & 1 == 1 {
                r = self.mul(r, g);
            }
        }
        r
    }

    /// Multiplicative inverse via `g^(q-2)`; `None` for zero.
    pub fn inv(&self, g: FieldElement) -> Option<FieldElement> {
        if g.is_zero() {
            None
        } else {
            Some(self.pow(g, self.order - 2))
        }
    }

    pub fn frobenius(&self, g: FieldElement) -> FieldElement {
        self.pow(g, self.p as u64)
    }

    /// `Tr_{F_q/F_p}(g) = g + g^p + ... + g^{p^{n-1}}`.
    pub fn trace(&self, g: FieldElement) -> u32 {
        let mut acc = g;
        let mut cur = g;
        for _ in 1..self.n {
            cur = self.frobenius(cur);
            acc = self.add(acc, cur);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.constant()
    }

    /// Euler's criterion `g^((q-1)/2) = 1`; zero counts as a square.
    pub fn is_square(&self, g: FieldElement) -> Result<bool, FieldError> {
        if self.p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        Ok(g.is_zero() || self.pow(g, (self.order - 1) / 2) == self.one())
    }

    /// Quadratic character with `chi(0) = 0` (odd characteristic only).
    pub fn quadratic_character(&self, g: FieldElement) -> Result<i32, FieldError> {
        if g.is_zero() {
            if self.p == 2 {
                return Err(FieldError::EvenCharacteristic);
            }
            return Ok(0);
        }
        Ok(if self.is_square(g)? { 1 } else { -1 })
    }

    /// Number of `w` in `F_q` with `w^2 + a w + b = 0`.
    pub fn quadratic_solution_count(&self, a: FieldElement, b: FieldElement) -> u32 {
        if self.p == 2 {
            if a.is_zero() {
                return 1;
            }
            let a2 = self.square(a);
            let ratio = self.mul(b, self.pow(a2, self.order - 2));
            if self.trace(ratio) == 0 {
                2
            } else {
                0
            }
        } else {
            let disc = self.sub(self.square(a), self.scale(b, 4));
            (1 + self.quadratic_character(disc).expect("odd characteristic")) as u32
        }
    }

    /// Inverse Frobenius `g^(q/p)`, the unique `p`-th root.
    pub fn pth_root(&self, g: FieldElement) -> FieldElement {
        self.pow(g, self.order / self.p as u64)
    }

    /// A generator of the multiplicative group: the first element in
    /// enumeration order whose order is `q - 1`.
    pub fn primitive_element(&self) -> FieldElement {
        let qm1 = self.order - 1;
        let factors = prime_factors(qm1);
        (1..self.order)
            .map(|i| self.element(i))
            .find(|&g| factors.iter().all(|&r| self.pow(g, qm1 / r) != self.one()))
            .expect("finite field has a primitive element")
    }
}

fn mul_into(acc: &mut [u32; 2 * MAX_DEGREE], a: &FieldElement, b: &FieldElement, n: usize) {
    for i in 0..n {
        let ai = a.coeffs[i] as u32;
        if ai == 0 {
            continue;
        }
        for j in 0..n {
            acc[i + j] += ai * b.coeffs[j] as u32;
        }
    }
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Monic degree-`n` candidates with exactly `weight` nonzero coefficients
/// (the leading 1 included), in lexicographic order of `(c_0, ..., c_{n-1})`.
fn candidates_of_weight(p: u32, n: usize, weight: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(p: u32, pos: usize, left: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = current.len();
        if pos == n {
            if left == 0 {
                let mut m = current.clone();
                m.push(1);
                out.push(m);
            }
            return;
        }
        if n - pos < left {
            return;
        }
        for c in 0..p {
            if c == 0 {
                rec(p, pos + 1, left, current, out);
            } else if left > 0 {
                current[pos] = c;
                rec(p, pos + 1, left - 1, current, out);
                current[pos] = 0;
            }
        }
    }
    rec(p, 0, weight - 1, &mut current, &mut out);
    out
}

// Dense polynomial helpers over F_p for the irreducibility test.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] * lead_inv % p;
        for i in 0..=dm {
            r[d - dm + i] = (r[d - dm + i] + (p - c) * m[i]) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// `X^(p^k) mod m` for `k = 1..=kmax`.
fn frobenius_powers(m: &[u32], p: u32, kmax: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(kmax);
    let mut cur = poly_rem(&[0, 1], m, p);
    for _ in 0..kmax {
        // cur <- cur^p
        let mut r = vec![1u32];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                r = poly_mulmod(&r, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        cur = r;
        out.push(cur.clone());
    }
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `X^(p^n) = X mod m` and `gcd(X^(p^k) - X, m) = 1` for
/// `k <= n/2`.
pub(crate) fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let pows = frobenius_powers(m, p, n);
    let x = poly_rem(&[0, 1], m, p);
    let mut last = pows[n - 1].clone();
    trim(&mut last);
    if last != x {
        return false;
    }
    for k in 1..=n / 2 {
        let mut h = pows[k - 1].clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        let g = poly_gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible_quadratics(p: u32) -> Vec<Vec<u32>> {
        // x^2 + b x + c is irreducible iff it has no root in F_p.
        let mut out = Vec::new();
        for c in 0..p {
            for b in 0..p {
                if (0..p).all(|x| (x * x + b * x + c) % p != 0) {
                    out.push(vec![c, b, 1]);
                }
            }
        }
        out
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldDescriptor::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn f4_modulus() {
        assert_eq!(FieldDescriptor::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn f9_modulus_first_in_search_order() {
        let all = brute_irreducible_quadratics(3);
        assert_eq!(all.len(), 3);
        let weight = |m: &Vec<u32>| m.iter().filter(|&&c| c != 0).count();
        let best = all
            .iter()
            .min_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a[..2].cmp(&b[..2])))
            .unwrap();
        let f = FieldDescriptor::new(3, 2).unwrap();
        assert_eq!(f.modulus(), best.as_slice());
        assert!(weight(best) <= 3);
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(FieldDescriptor::new(4, 1), Err(FieldError::NotPrime(4)));
        assert!(matches!(FieldDescriptor::new(3, 0), Err(FieldError::BadDegree(0))));
    }

    #[test]
    fn moduli_are_irreducible_for_all_supported_degrees() {
        for p in [2, 3, 5] {
            for n in 1..=MAX_DEGREE {
                if p == 5 && n > 8 {
                    continue;
                }
                let f = FieldDescriptor::new(p, n).unwrap();
                assert!(is_irreducible(p, f.modulus()));
                let weight = f.modulus().iter().filter(|&&c| c != 0).count();
                assert!(weight <= 5, "p={p} n={n} modulus {:?}", f.modulus());
            }
        }
    }

    #[test]
    fn pow_edge_cases() {
        let f = FieldDescriptor::new(3, 2).unwrap();
        assert_eq!(f.pow(f.zero(), 5), f.zero());
        for g in f.elements() {
            assert_eq!(f.pow(g, 0), f.one());
            if !g.is_zero() {
                let mut brute = f.one();
                for _ in 0..8 {
                    brute = f.mul(brute, g);
                }
                assert_eq!(brute, f.one());
                assert_eq!(f.pow(g, 8), f.one());
            }
        }
    }

    #[test]
    fn square_examples() {
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        assert!(f3.is_square(f3.zero()).unwrap());
        assert!(!f3.is_square(f3.from_int(2)).unwrap());
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        assert_eq!(f2.is_square(f2.one()), Err(FieldError::EvenCharacteristic));
    }

    #[test]
    fn quadratic_count_examples() {
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        assert_eq!(f2.quadratic_solution_count(f2.one(), f2.zero()), 2);
        for n in 1..=4 {
            let f = FieldDescriptor::new(2, n).unwrap();
            for b in f.elements() {
                assert_eq!(f.quadratic_solution_count(f.zero(), b), 1);
            }
        }
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(f3.quadratic_solution_count(f3.zero(), f3.from_int(-1)), 2);
        assert_eq!(f3.quadratic_solution_count(f3.zero(), f3.from_int(-2)), 0);
    }

    #[test]
    fn trace_examples() {
        let f5 = FieldDescriptor::new(5, 1).unwrap();
        for g in f5.elements() {
            assert_eq!(f5.trace(g), g.constant());
        }
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        assert_eq!(f4.trace(f4.one()), 0);
    }

    #[test]
    fn index_round_trip() {
        let f = FieldDescriptor::new(3, 3).unwrap();
        for i in 0..f.order() {
            assert_eq!(f.index_of(f.element(i)), i);
        }
    }

    #[test]
    fn explicit_modulus_checked() {
        assert!(FieldDescriptor::with_modulus(3, vec![1, 0, 1]).is_ok());
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(FieldDescriptor::with_modulus(3, vec![2, 0, 1]).is_err());
    }
}
