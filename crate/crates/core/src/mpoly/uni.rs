//! Dense univariate polynomials, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{Coeff, FieldCoeff, Integers, Rationals};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<C: Coeff> {
    ring: C::Ring,
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(ring: &C::Ring, coeffs: Vec<C>) -> Self {
        let mut p = UniPoly { ring: ring.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(ring: &C::Ring, coeffs: &[i64]) -> Self {
        Self::new(ring, coeffs.iter().map(|&c| C::from_i64(ring, c)).collect())
    }

    pub fn zero(ring: &C::Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn one(ring: &C::Ring) -> Self {
        Self::new(ring, vec![C::one(ring)])
    }

    /// `t^k`.
    pub fn monomial(ring: &C::Ring, k: usize) -> Self {
        let mut c = vec![C::zero(ring); k + 1];
        c[k] = C::one(ring);
        Self::new(ring, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| C::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| C::is_one(&self.ring, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.ring, (0..n).map(|i| C::add(&self.ring, &self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.ring, (0..n).map(|i| C::sub(&self.ring, &self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(|c| C::neg(&self.ring, c)).collect())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(|c| C::mul(&self.ring, c, k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = vec![C::zero(&self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = C::add(&self.ring, &out[i + j], &C::mul(&self.ring, a, b));
            }
        }
        Self::new(&self.ring, out)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(&self.ring), |acc, c| C::add(&self.ring, &C::mul(&self.ring, &acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| C::mul(&self.ring, c, &C::from_i64(&self.ring, i as i64)))
                .collect(),
        )
    }

    /// Division by a monic divisor; valid over any ring.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(&self.ring), self.clone());
        }
        let mut quot = vec![C::zero(&self.ring); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = C::sub(&self.ring, &rem[k + i], &C::mul(&self.ring, &c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(&self.ring, quot), Self::new(&self.ring, rem))
    }
}

impl<C: FieldCoeff> UniPoly<C> {
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = C::inv(&self.ring, l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let inv = C::inv(&self.ring, lead).expect("nonzero leading coefficient");
        let (q, r) = self.div_rem_monic(&divisor.scale(&inv));
        (q.scale(&inv), r)
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }
}

/// Monic gcd by Euclid's algorithm; `gcd(0, 0) = 0`.
pub fn uni_gcd<C: FieldCoeff>(f: &UniPoly<C>, g: &UniPoly<C>) -> UniPoly<C> {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        a = b;
        b = r;
    }
    a.monic()
}

/// The `m`-th cyclotomic polynomial over the integers, from `t^m - 1`
/// divided by `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic(m: usize) -> UniPoly<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut cache: Vec<Option<UniPoly<BigInt>>> = vec![None; m + 1];
    cyclotomic_cached(m, &mut cache)
}

fn cyclotomic_cached(m: usize, cache: &mut Vec<Option<UniPoly<BigInt>>>) -> UniPoly<BigInt> {
    if let Some(p) = &cache[m] {
        return p.clone();
    }
    let ring = Integers;
    let mut p = UniPoly::monomial(&ring, m).sub(&UniPoly::one(&ring));
    for d in 1..m {
        if m % d == 0 {
            let phi = cyclotomic_cached(d, cache);
            let (q, r) = p.div_rem_monic(&phi);
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    cache[m] = Some(p.clone());
    p
}

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn to_rational(p: &UniPoly<BigInt>) -> UniPoly<BigRational> {
    UniPoly::new(&Rationals, p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

impl<C: Coeff> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = C::format(&self.ring, c);
            if !first || neg {
                write!(f, "{}", if neg { if first { "-" } else { " - " } } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*t")?,
                _ => write!(f, "{mag}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly<BigRational> {
        UniPoly::from_i64s(&Rationals, c)
    }

    #[test]
    fn gcd_examples() {
        let f = q(&[2, 0, 4]);
        assert_eq!(uni_gcd(&f, &UniPoly::zero(&Rationals)), f.monic());
        assert_eq!(uni_gcd(&q(&[-1, 0, 1]), &q(&[-1, 1])), q(&[-1, 1]));
        let phi6 = to_rational(&cyclotomic(6));
        let t6m1 = q(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(uni_gcd(&phi6, &t6m1), phi6);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), UniPoly::from_i64s(&Integers, &[-1, 1]));
        assert_eq!(cyclotomic(6), UniPoly::from_i64s(&Integers, &[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_product_identity_up_to_66() {
        for m in 1..=66usize {
            let mut prod = UniPoly::one(&Integers);
            for d in (1..=m).filter(|d| m % d == 0) {
                prod = prod.mul(&cyclotomic(d));
            }
            let expected = UniPoly::monomial(&Integers, m).sub(&UniPoly::one(&Integers));
            assert_eq!(prod, expected, "m = {m}");
            assert_eq!(cyclotomic(m).degree(), Some(euler_phi(m as u64) as usize));
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = q(&[3, -1, 4, 1, -5, 9]);
        let b = q(&[2, 7, -1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
