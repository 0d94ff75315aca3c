//! Quaternion algebras over Q(x, y, z), Hilbert symbols and the
//! Brauer-Manin evaluation at rational and real points.

mod hilbert;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::K3Surface;
use crate::mpoly::{MultiPoly, PolyError, RationalFunction, Rationals};

pub use hilbert::{
    hilbert_symbol, hilbert_symbol_by_search, prime_factors, reduce_at, relevant_places, solvable_mod_prime_power,
    Invariant, Place,
};

#[derive(Debug, Error)]
pub enum BrauerError {
    #[error("Hilbert symbol of a zero argument")]
    ZeroArgument,
    #[error("representative undefined at point ({0})")]
    Undefined(String),
    #[error("cannot factor {0}")]
    Unfactorable(String),
    #[error("point is not on the surface: {0}")]
    NotOnSurface(String),
    #[error("surface is not of the form w^2 = F over Q")]
    NotDoubleCover,
    #[error("a real point has no invariant at the finite place {0}")]
    WrongPlace(Place),
    #[error("invariants of a rational point sum to 1/2; reciprocity violated")]
    Reciprocity,
    #[error("evaluation out of range for exact search")]
    Overflow,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The class of the quaternion algebra `(alpha, beta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    pub alpha: RationalFunction,
    pub beta: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraText {
    pub alpha: String,
    pub beta: String,
}

impl QuaternionAlgebra {
    pub fn to_text(&self) -> AlgebraText {
        AlgebraText { alpha: self.alpha.to_text(), beta: self.beta.to_text() }
    }

    pub fn from_text(t: &AlgebraText) -> Result<Self, BrauerError> {
        Ok(QuaternionAlgebra { alpha: RationalFunction::parse(3, &t.alpha)?, beta: RationalFunction::parse(3, &t.beta)? })
    }
}

/// A point of `w^2 = F(x, y, z)`: either rational with coprime integer
/// `x, y, z` and `w^2 = F`, or real with rational `x, y, z` and `F >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfacePoint {
    Rational {
        #[serde(with = "crate::serde_util::as_strings")]
        xyz: [BigInt; 3],
        #[serde(with = "crate::serde_util::as_string")]
        w: BigInt,
    },
    Real {
        #[serde(with = "crate::serde_util::as_strings")]
        xyz: [BigRational; 3],
        /// `F(x, y, z)`, the square of `w`.
        #[serde(with = "crate::serde_util::as_string")]
        f_value: BigRational,
    },
}

impl SurfacePoint {
    pub fn xyz(&self) -> [BigRational; 3] {
        match self {
            SurfacePoint::Rational { xyz, .. } => xyz.clone().map(BigRational::from_integer),
            SurfacePoint::Real { xyz, .. } => xyz.clone(),
        }
    }

    /// Checks the defining equation exactly.
    pub fn check(&self, s: &K3Surface) -> Result<(), BrauerError> {
        let f = branch(s)?.map_coeffs(&Rationals, |c| BigRational::from_integer(c.clone()));
        let value = f.eval(&self.xyz())?;
        match self {
            SurfacePoint::Rational { w, .. } if BigRational::from_integer(w * w) == value => Ok(()),
            SurfacePoint::Real { f_value, .. } if *f_value == value && !value.is_negative() => Ok(()),
            _ => Err(BrauerError::NotOnSurface(format!("{self:?}"))),
        }
    }

    pub fn real(s: &K3Surface, xyz: [BigRational; 3]) -> Result<Self, BrauerError> {
        let f = branch(s)?.map_coeffs(&Rationals, |c| BigRational::from_integer(c.clone()));
        let f_value = f.eval(&xyz)?;
        if f_value.is_negative() {
            return Err(BrauerError::NotOnSurface(format!("F < 0 at {xyz:?}")));
        }
        Ok(SurfacePoint::Real { xyz, f_value })
    }
}

fn branch(s: &K3Surface) -> Result<MultiPoly<BigInt>, BrauerError> {
    if s.modulus() != 0 || !s.alpha().is_zero() {
        return Err(BrauerError::NotDoubleCover);
    }
    Ok(s.branch_sextic())
}

/// `(alpha(P), beta(P))`.
pub fn evaluate_algebra(a: &QuaternionAlgebra, p: &SurfacePoint) -> Result<(BigRational, BigRational), BrauerError> {
    let xyz = p.xyz();
    let undefined = || BrauerError::Undefined(xyz.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    let av = a.alpha.eval(&xyz).map_err(|_| undefined())?;
    let bv = a.beta.eval(&xyz).map_err(|_| undefined())?;
    if av.is_zero() || bv.is_zero() {
        return Err(undefined());
    }
    Ok((av, bv))
}

pub fn local_invariant(a: &QuaternionAlgebra, p: &SurfacePoint, place: Place) -> Result<Invariant, BrauerError> {
    if matches!(p, SurfacePoint::Real { .. }) && place != Place::Real {
        return Err(BrauerError::WrongPlace(place));
    }
    let (av, bv) = evaluate_algebra(a, p)?;
    hilbert_symbol(&av, &bv, place)
}

/// One rational point `(x : y : z : +-w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointHit {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub w: String,
    /// `1` when `w = 0`, else `2` (both signs of `w`).
    pub signs: u8,
}

impl PointHit {
    pub fn to_point(&self) -> SurfacePoint {
        SurfacePoint::Rational {
            xyz: [self.x, self.y, self.z].map(BigInt::from),
            w: self.w.parse().expect("integer"),
        }
    }
}

/// Coprime `(x, y, z)` with `max |.| <= h`, first nonzero coordinate
/// positive, and `F(x, y, z)` a perfect square; sorted by `(x, y, z)`.
pub fn search_rational_points(s: &K3Surface, h: u32, workers: usize) -> Result<Vec<PointHit>, BrauerError> {
    let f = branch(s)?;
    let terms: Vec<([u32; 3], i128)> = f
        .terms()
        .map(|(m, c)| {
            let e = m.exponents();
            Ok(([e[0] as u32, e[1] as u32, e[2] as u32], c.to_i128().ok_or(BrauerError::Overflow)?))
        })
        .collect::<Result<_, BrauerError>>()?;
    let bound: i128 = terms.iter().map(|t| t.1.abs()).sum::<i128>() * (h as i128).pow(6);
    if bound > i128::MAX / 4 {
        return Err(BrauerError::Overflow);
    }
    let h = h as i64;
    let slice = |x: i64| -> Vec<PointHit> {
        let mut out = Vec::new();
        for y in -h..=h {
            for z in -h..=h {
                let first_positive = if x != 0 { x > 0 } else if y != 0 { y > 0 } else { z > 0 };
                if !first_positive || x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                let v: i128 = terms
                    .iter()
                    .map(|(e, c)| c * (x as i128).pow(e[0]) * (y as i128).pow(e[1]) * (z as i128).pow(e[2]))
                    .sum();
                if v < 0 {
                    continue;
                }
                let r = (v as u128).sqrt();
                if r * r == v as u128 {
                    out.push(PointHit { x, y, z, w: r.to_string(), signs: if r == 0 { 1 } else { 2 } });
                }
            }
        }
        out
    };
    let run = || (0..=h).into_par_iter().flat_map_iter(slice).collect::<Vec<_>>();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|_| BrauerError::Overflow)?;
    let mut hits = pool.install(run);
    hits.sort_by_key(|p| (p.x, p.y, p.z));
    Ok(hits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub algebra: AlgebraText,
    pub rational_point: SurfacePoint,
    pub real_point: SurfacePoint,
    /// `(alpha, beta)` at the rational and the real point.
    pub rational_values: [String; 2],
    pub real_values: [String; 2],
    /// Local invariants of the algebra at the rational point.
    pub invariants: BTreeMap<Place, Invariant>,
    pub real_point_invariant: Invariant,
    pub rational_sum: Invariant,
    pub hybrid_sum: Invariant,
    pub verdict: Verdict,
}

/// Compares the rational point with the adelic point that agrees with it at
/// every finite place and equals `real_point` at infinity.
pub fn obstruction_verdict(
    a: &QuaternionAlgebra,
    rational_point: &SurfacePoint,
    real_point: &SurfacePoint,
) -> Result<VerdictRecord, BrauerError> {
    let (ra, rb) = evaluate_algebra(a, rational_point)?;
    let mut invariants = BTreeMap::new();
    for place in relevant_places(&ra, &rb)? {
        invariants.insert(place, hilbert_symbol(&ra, &rb, place)?);
    }
    let rational_sum: Invariant = invariants.values().copied().sum();
    if rational_sum.is_half() {
        return Err(BrauerError::Reciprocity);
    }
    let (qa, qb) = evaluate_algebra(a, real_point)?;
    let real_point_invariant = hilbert_symbol(&qa, &qb, Place::Real)?;
    let hybrid_sum = invariants.iter().filter(|(p, _)| **p != Place::Real).map(|(_, v)| *v).sum::<Invariant>()
        + real_point_invariant;
    Ok(VerdictRecord {
        algebra: a.to_text(),
        rational_point: rational_point.clone(),
        real_point: real_point.clone(),
        rational_values: [ra.to_string(), rb.to_string()],
        real_values: [qa.to_string(), qb.to_string()],
        invariants,
        real_point_invariant,
        rational_sum,
        hybrid_sum,
        verdict: if hybrid_sum.is_half() { Verdict::Obstructed } else { Verdict::NotObstructed },
    })
}

#[cfg(test)]
mod tests;
