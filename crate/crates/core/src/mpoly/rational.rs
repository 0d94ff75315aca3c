//! Rational functions over Q, stored as a pair of integer polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{Integers, Rationals};
use super::multi::MultiPoly;
use super::text::{default_names, parse, to_canonical};
use super::PolyError;

/// `num / den` with integer coefficients, the joint content of numerator
/// and denominator removed, and the grevlex-leading coefficient of the
/// denominator positive. No polynomial gcd is cancelled, so equality is
/// decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly<BigInt>,
    den: MultiPoly<BigInt>,
}

impl RationalFunction {
    pub fn new(num: MultiPoly<BigInt>, den: MultiPoly<BigInt>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(PolyError::MixedArity);
        }
        let mut g = BigInt::zero();
        for (_, c) in num.terms().chain(den.terms()) {
            g = g.gcd(c);
        }
        let negative = den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if negative {
            g = -g;
        }
        let num = num.map_coeffs(&Integers, |c| c / &g);
        let den = den.map_coeffs(&Integers, |c| c / &g);
        Ok(RationalFunction { num, den })
    }

    /// From rational-coefficient polynomials, clearing denominators.
    pub fn from_rational_polys(num: &MultiPoly<BigRational>, den: &MultiPoly<BigRational>) -> Result<Self, PolyError> {
        let mut l = BigInt::one();
        for (_, c) in num.terms().chain(den.terms()) {
            l = l.lcm(c.denom());
        }
        let clear = |p: &MultiPoly<BigRational>| {
            p.map_coeffs(&Integers, |c| (c * BigRational::from_integer(l.clone())).to_integer())
        };
        Self::new(clear(num), clear(den))
    }

    pub fn from_poly(num: MultiPoly<BigInt>) -> Self {
        let one = MultiPoly::one(&Integers, num.nvars());
        Self::new(num, one).expect("unit denominator")
    }

    pub fn numerator(&self) -> &MultiPoly<BigInt> {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly<BigInt> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.num.neg(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        let to_q = |p: &MultiPoly<BigInt>| p.map_coeffs(&Rationals, |c| BigRational::from_integer(c.clone()));
        let d = to_q(&self.den).eval(point)?;
        if d.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(to_q(&self.num).eval(point)? / d)
    }

    /// Canonical text `(num)/(den)`, or just the numerator when the
    /// denominator is 1.
    pub fn to_text(&self) -> String {
        let names = default_names(self.nvars());
        let n = to_canonical(&self.num, &names);
        if self.den == MultiPoly::one(&Integers, self.nvars()) {
            return n;
        }
        format!("({})/({})", n, to_canonical(&self.den, &names))
    }

    pub fn parse(nvars: usize, text: &str) -> Result<Self, PolyError> {
        let names = default_names(nvars);
        let text = text.trim();
        if let Some(rest) = text.strip_prefix('(') {
            if let Some((n, d)) = rest.split_once(")/(") {
                let d = d.strip_suffix(')').ok_or_else(|| PolyError::Parse(text.to_string()))?;
                return Self::new(parse(&Integers, &names, n)?, parse(&Integers, &names, d)?);
            }
        }
        Ok(Self::from_poly(parse(&Integers, &names, text)?))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
