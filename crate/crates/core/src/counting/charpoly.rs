//! Frobenius characteristic polynomials from point counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::mpoly::uni::{cyclotomic, euler_phi, to_rational};
use crate::mpoly::{Rationals, UniPoly};

use super::{CountError, CountSeries};

/// `t_n = N_n - p^{2n} - 1` for `n = 1..=max`.
pub fn traces_from_counts(cs: &CountSeries, max: usize) -> Result<Vec<BigInt>, CountError> {
    let p = BigInt::from(cs.p);
    cs.prefix(max)?
        .into_iter()
        .enumerate()
        .map(|(i, n)| Ok(BigInt::from(n) - p.pow(2 * (i as u32 + 1)) - 1))
        .collect()
}

/// `c_1..c_m` from `-k c_k = t_k + sum_{i<k} c_i t_{k-i}`.
pub fn newton_coefficients(traces: &[BigInt]) -> Result<Vec<BigInt>, CountError> {
    if traces.len() > 22 {
        return Err(CountError::Inconsistent(format!("{} traces given, at most 22 used", traces.len())));
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(traces.len());
    for k in 1..=traces.len() {
        let mut s = traces[k - 1].clone();
        for i in 1..k {
            s += &c[i - 1] * &traces[k - i - 1];
        }
        let (q, r) = (-s).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(CountError::Inconsistent(format!("c_{k} is not an integer")));
        }
        c.push(q);
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilPolynomial {
    pub p: u32,
    /// `c[0] = 1, ..., c[22]`, the coefficient of `t^{22-k}`.
    #[serde(with = "crate::serde_util::as_strings")]
    pub c: Vec<BigInt>,
    pub sign: i8,
}

impl WeilPolynomial {
    /// `c_{22-j} = sign p^{22-2j} c_j` for every `j`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let p = BigInt::from(self.p);
        (0..=22usize).all(|j| {
            let e = 22 - 2 * j as i64;
            let lhs = &self.c[22 - j] * p.pow((-e).max(0) as u32);
            let rhs = BigInt::from(self.sign) * &self.c[j] * p.pow(e.max(0) as u32);
            lhs == rhs
        })
    }

    /// `|c_k| <= C(22, k) p^k`.
    pub fn within_weil_bounds(&self) -> bool {
        let p = BigInt::from(self.p);
        let mut binom = BigInt::one();
        for k in 0..=22u32 {
            if self.c[k as usize].abs() > &binom * p.pow(k) {
                return false;
            }
            binom = binom * (22 - k) / (k + 1);
        }
        true
    }

    /// `p^{-22} f(p t)`, monic with rational coefficients, lowest degree first.
    pub fn normalized(&self) -> UniPoly<BigRational> {
        let p = BigInt::from(self.p);
        let coeffs = (0..=22)
            .map(|d| {
                let k = 22 - d;
                BigRational::new(self.c[k].clone(), p.pow(k as u32))
            })
            .collect();
        UniPoly::new(&Rationals, coeffs)
    }
}

/// Fills `c_13..c_22` from `c_1..c_12` through the functional equation.
pub fn complete_charpoly(head: &[BigInt], p: u32) -> Result<WeilPolynomial, CountError> {
    if head.len() < 12 {
        return Err(CountError::MissingCount(head.len() + 1));
    }
    let pb = BigInt::from(p);
    let mut c = vec![BigInt::one()];
    c.extend(head[..12].iter().cloned());
    let sign: i8 = if !c[11].is_zero() {
        1
    } else if !c[10].is_zero() {
        let den = &c[10] * pb.pow(2);
        let (q, r) = c[12].div_rem(&den);
        if !r.is_zero() || q.abs() != BigInt::one() {
            return Err(CountError::Inconsistent(format!("c_12 / (p^2 c_10) = {}/{den} is not a sign", c[12])));
        }
        if q.is_positive() {
            1
        } else {
            -1
        }
    } else {
        return Err(CountError::Ambiguous("c_10 = c_11 = 0".into()));
    };
    if sign == 1 && !c[12].is_zero() && !c[10].is_zero() && c[12] != &c[10] * pb.pow(2) {
        return Err(CountError::Inconsistent(format!("c_12 = {} contradicts c_10 = {} with sign +1", c[12], c[10])));
    }
    c.resize(23, BigInt::zero());
    for j in 0..=10usize {
        c[22 - j] = BigInt::from(sign) * &c[j] * pb.pow((22 - 2 * j) as u32);
    }
    let w = WeilPolynomial { p, c, sign };
    debug_assert!(w.satisfies_functional_equation());
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardBound {
    pub raw: u32,
    pub parity_adjusted: u32,
}

/// Number of roots of `p^{-22} f(pt)` that are roots of unity, with multiplicity.
pub fn picard_upper_bound(w: &WeilPolynomial) -> PicardBound {
    let mut f = w.normalized();
    let mut raw = 0u32;
    for m in 1..=66u64 {
        if euler_phi(m) > 22 {
            continue;
        }
        let phi = to_rational(&cyclotomic(m as usize));
        let d = phi.degree().unwrap_or(0) as u32;
        while let Some(q) = f.div_exact(&phi) {
            f = q;
            raw += d;
        }
    }
    PicardBound { raw, parity_adjusted: raw - raw % 2 }
}
