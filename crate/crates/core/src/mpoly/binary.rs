//! Multiplicity structure of binary forms over finite fields.

use crate::ff::FieldElement;

use super::coeff::Field;
use super::multi::MultiPoly;
use super::uni::{uni_gcd, UniPoly};
use super::PolyError;

/// Squarefree part of `f` over `F_q`, monic. In characteristic `p` the
/// factors whose multiplicity is divisible by `p` are recovered by taking a
/// `p`-th root.
pub fn radical(f: &UniPoly<FieldElement>) -> UniPoly<FieldElement> {
    let field = f.ring().clone();
    if f.degree().unwrap_or(0) == 0 {
        return UniPoly::one(&field);
    }
    let g = uni_gcd(f, &f.derivative());
    let w = f.div_exact(&g).expect("gcd divides f").monic();
    let mut rest = g;
    loop {
        let d = uni_gcd(&rest, &w);
        if d.degree() == Some(0) {
            break;
        }
        rest = rest.div_exact(&d).expect("gcd divides");
    }
    if rest.degree() == Some(0) {
        return w;
    }
    w.mul(&radical(&pth_root(&rest))).monic()
}

/// `h` with `h^p = f`, for `f` with `f' = 0`.
fn pth_root(f: &UniPoly<FieldElement>) -> UniPoly<FieldElement> {
    let field = f.ring();
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs();
    let out = (0..coeffs.len().div_ceil(p))
        .map(|i| {
            debug_assert!((1..p).all(|j| coeffs.get(i * p + j).is_none_or(|c| c.is_zero())));
            field.pth_root(coeffs[i * p])
        })
        .collect();
    UniPoly::new(field, out)
}

/// Splits a binary form `g(s, t)` into `(k, h)` where `t^k` exactly divides
/// `g` and `h(s) = g(s, 1)`.
fn dehomogenize(g: &MultiPoly<FieldElement>) -> Result<(u32, UniPoly<FieldElement>), PolyError> {
    if g.is_zero() {
        return Err(PolyError::ZeroForm);
    }
    if g.nvars() != 2 || g.homogeneous_degree().is_none() {
        return Err(PolyError::NotBinaryForm);
    }
    let field = g.ring();
    let k = g.terms().map(|(m, _)| m.exponent(1)).min().unwrap_or(0);
    let deg = g.terms().map(|(m, _)| m.exponent(0)).max().unwrap_or(0) as usize;
    let mut coeffs = vec![FieldElement::ZERO; deg + 1];
    for (m, c) in g.terms() {
        coeffs[m.exponent(0) as usize] = *c;
    }
    Ok((k, UniPoly::new(field, coeffs)))
}

/// True iff every root of `g` over the algebraic closure has multiplicity
/// at least two.
pub fn even_multiplicity_form(g: &MultiPoly<FieldElement>) -> Result<bool, PolyError> {
    let (k, h) = dehomogenize(g)?;
    if k == 1 {
        return Ok(false);
    }
    let r = radical(&h);
    Ok(r.mul(&r).divides(&h))
}

/// Number of distinct roots of `g` on the projective line over the
/// algebraic closure.
pub fn distinct_root_count(g: &MultiPoly<FieldElement>) -> Result<usize, PolyError> {
    let (k, h) = dehomogenize(g)?;
    Ok(radical(&h).degree().unwrap_or(0) + usize::from(k > 0))
}

/// Binary form over `field` from `(coefficient, s-exponent, t-exponent)`.
pub fn binary_form(field: &Field, terms: &[(FieldElement, u32, u32)]) -> MultiPoly<FieldElement> {
    let mut g = MultiPoly::zero(field, 2);
    for &(c, a, b) in terms {
        g = g.add(&MultiPoly::monomial(field, c, &[a, b]));
    }
    g
}
