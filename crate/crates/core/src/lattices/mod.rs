//! Picard rank lower bounds from explicit curves, and the rank-one test.
//!
//! Two witness shapes are supported. In characteristic 2 a surface
//! `w^2 + alpha w + beta = 0` containing `{l = 0, w = c}` for a linear form
//! `l` and a cubic `c` also contains its image under `w -> w + alpha`; the
//! two curves span a lattice of discriminant `-5`. In odd characteristic a
//! smooth conic meeting the branch sextic only with even contact splits in
//! the double cover into two curves spanning a lattice of discriminant `-32`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{FieldDescriptor, FieldElement, FieldError};
use crate::geometry::{to_field_poly, K3Surface};
use crate::mpoly::{default_names, Coeff, even_multiplicity_form, to_canonical, Field, MultiPoly, PolyError};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("expected characteristic {expected}, surface is over F_{got}")]
    Characteristic { expected: &'static str, got: u32 },
    #[error("surface is not a double cover of the plane (alpha != 0)")]
    NotDoubleCover,
    #[error("conic is singular")]
    SingularConic,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Char2Divisor,
    TangentConic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// The curves `{l = 0, w = cubic}` and `{l = 0, w = companion}`.
    Divisor { linear_form: String, cubic: String, companion: String },
    /// A conic over `F_{p^e}`, coefficients of `x^2, xy, xz, y^2, yz, z^2`.
    Conic { degree: usize, conic: String, coefficients: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCertificate {
    pub p: u32,
    pub kind: CertificateKind,
    pub witness: Witness,
    pub gram: [[i64; 2]; 2],
    pub discriminant: i64,
}

impl LatticeCertificate {
    fn new(p: u32, kind: CertificateKind, witness: Witness) -> Self {
        let off = match kind {
            CertificateKind::Char2Divisor => 3,
            CertificateKind::TangentConic => 6,
        };
        let gram = [[-2, off], [off, -2]];
        LatticeCertificate { p, kind, witness, gram, discriminant: 4 - off * off }
    }
}

fn xyz() -> Vec<String> {
    default_names(3)
}

/// Substitution `l = 0` solved for its last variable with nonzero
/// coefficient; `l` has coefficients in `F_2` as bits `[x, y, z]`.
fn plane_section(field: &Field, l: [u8; 3]) -> Vec<MultiPoly<FieldElement>> {
    let pivot = (0..3).rev().find(|&i| l[i] == 1).expect("nonzero linear form");
    let mut images: Vec<_> = (0..3).map(|i| MultiPoly::var(field, 3, i)).collect();
    let mut sub = MultiPoly::zero(field, 3);
    for i in 0..3 {
        if i != pivot && l[i] == 1 {
            sub = sub.add(&MultiPoly::var(field, 3, i));
        }
    }
    images[pivot] = sub;
    images
}

fn linear_form(field: &Field, l: [u8; 3]) -> MultiPoly<FieldElement> {
    (0..3).filter(|&i| l[i] == 1).fold(MultiPoly::zero(field, 3), |acc, i| acc.add(&MultiPoly::var(field, 3, i)))
}

/// Whether `c^2 + alpha c + beta` vanishes on the plane `l = 0`.
pub fn divisor_condition(s: &K3Surface, l: [u8; 3], c: &MultiPoly<FieldElement>) -> Result<bool, LatticeError> {
    let field: Field = Arc::new(FieldDescriptor::prime(2)?);
    let alpha = to_field_poly(s.alpha(), &field);
    let beta = to_field_poly(s.beta(), &field);
    let images = plane_section(&field, l);
    let lhs = c.mul(c).add(&alpha.mul(c)).add(&beta);
    Ok(lhs.substitute(&images)?.is_zero())
}

/// Searches the seven lines and, on each, the sixteen binary cubics in the
/// two remaining variables.
pub fn find_char2_divisor(s: &K3Surface) -> Result<Option<LatticeCertificate>, LatticeError> {
    if s.modulus() != 2 {
        return Err(LatticeError::Characteristic { expected: "2", got: s.modulus() });
    }
    let field: Field = Arc::new(FieldDescriptor::prime(2)?);
    let alpha = to_field_poly(s.alpha(), &field);
    for bits in 1u8..8 {
        let l = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
        let pivot = (0..3).rev().find(|&i| l[i] == 1).unwrap();
        let (u, v) = match pivot {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for mask in 0u8..16 {
            let mut c = MultiPoly::zero(&field, 3);
            for k in 0..4u32 {
                if mask >> k & 1 == 1 {
                    let mut e = [0u32; 3];
                    e[u] = 3 - k;
                    e[v] = k;
                    c = c.add(&MultiPoly::monomial(&field, field.one(), &e));
                }
            }
            if divisor_condition(s, l, &c)? {
                let companion = c.add(&alpha);
                let witness = Witness::Divisor {
                    linear_form: to_canonical(&linear_form(&field, l), &xyz()),
                    cubic: to_canonical(&c, &xyz()),
                    companion: to_canonical(&companion, &xyz()),
                };
                return Ok(Some(LatticeCertificate::new(2, CertificateKind::Char2Divisor, witness)));
            }
        }
    }
    Ok(None)
}

/// A plane conic `a x^2 + b xy + c xz + d y^2 + e yz + f z^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    pub coeffs: [FieldElement; 6],
}

const CONIC_EXPONENTS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

impl Conic {
    pub fn from_poly(q: &MultiPoly<FieldElement>) -> Self {
        Conic { coeffs: CONIC_EXPONENTS.map(|e| q.coefficient(&e)) }
    }

    pub fn as_poly(&self, field: &Field) -> MultiPoly<FieldElement> {
        CONIC_EXPONENTS
            .iter()
            .zip(&self.coeffs)
            .fold(MultiPoly::zero(field, 3), |acc, (e, c)| acc.add(&MultiPoly::monomial(field, *c, e)))
    }

    fn eval(&self, f: &FieldDescriptor, p: &[FieldElement; 3]) -> FieldElement {
        let mons = [
            f.mul(p[0], p[0]),
            f.mul(p[0], p[1]),
            f.mul(p[0], p[2]),
            f.mul(p[1], p[1]),
            f.mul(p[1], p[2]),
            f.mul(p[2], p[2]),
        ];
        mons.iter().zip(&self.coeffs).fold(f.zero(), |acc, (m, c)| f.add(acc, f.mul(*m, *c)))
    }

    /// `det` of the doubled symmetric matrix; nonzero iff smooth (odd `p`).
    pub fn determinant(&self, f: &FieldDescriptor) -> FieldElement {
        let [a, b, c, d, e, g] = self.coeffs;
        let two = f.from_int(2);
        let m = [[f.mul(two, a), b, c], [b, f.mul(two, d), e], [c, e, f.mul(two, g)]];
        let minor = |i: usize, j: usize, k: usize, l: usize| f.sub(f.mul(m[i][k], m[j][l]), f.mul(m[i][l], m[j][k]));
        let t0 = f.mul(m[0][0], minor(1, 2, 1, 2));
        let t1 = f.mul(m[0][1], minor(1, 2, 0, 2));
        let t2 = f.mul(m[0][2], minor(1, 2, 0, 1));
        f.add(f.sub(t0, t1), t2)
    }

    /// First point in the enumeration order of `P^2(F_q)`.
    pub fn rational_point(&self, f: &FieldDescriptor) -> Option<[FieldElement; 3]> {
        projective_points(f).find(|p| self.eval(f, p).is_zero())
    }

    /// Quadratic forms `(x(s,t), y(s,t), z(s,t))` parametrizing the conic by
    /// the lines through a rational point.
    pub fn parametrization(&self, field: &Field) -> Option<[MultiPoly<FieldElement>; 3]> {
        let f = &**field;
        if self.determinant(f).is_zero() {
            return None;
        }
        let p0 = self.rational_point(f)?;
        let pivot = (0..3).find(|&i| !p0[i].is_zero())?;
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        // D = s e_u + t e_v.
        let s = MultiPoly::var(field, 2, 0);
        let t = MultiPoly::var(field, 2, 1);
        let mut d: [MultiPoly<FieldElement>; 3] = std::array::from_fn(|_| MultiPoly::zero(field, 2));
        d[others[0]] = s;
        d[others[1]] = t;
        let q = self.as_poly(field);
        let qd = q.substitute(&d).ok()?;
        // Polar form B(P0, D) = sum_i D_i dQ/dx_i (P0).
        let mut b = MultiPoly::zero(field, 2);
        for (i, di) in d.iter().enumerate() {
            let g = q.partial_derivative(i).eval(&p0).ok()?;
            b = b.add(&di.scale(&g));
        }
        Some(std::array::from_fn(|i| qd.scale(&p0[i]).sub(&b.mul(&d[i]))))
    }

    pub fn to_text(&self, field: &Field) -> String {
        to_canonical(&self.as_poly(field), &xyz())
    }
}

/// `P^2(F_q)` as `(1, y, z)`, `(0, 1, z)`, `(0, 0, 1)`.
pub fn projective_points(f: &FieldDescriptor) -> impl Iterator<Item = [FieldElement; 3]> + '_ {
    let (zero, one) = (f.zero(), f.one());
    let main = f.elements().flat_map(move |y| f.elements().map(move |z| [one, y, z]));
    let line = f.elements().map(move |z| [zero, one, z]);
    main.chain(line).chain(std::iter::once([zero, zero, one]))
}

/// The branch sextic restricted to the conic, as a binary form of degree 12;
/// `None` for singular conics.
pub fn restricted_sextic(
    sextic: &MultiPoly<FieldElement>,
    conic: &Conic,
) -> Result<Option<MultiPoly<FieldElement>>, LatticeError> {
    let field = sextic.ring().clone();
    match conic.parametrization(&field) {
        None => Ok(None),
        Some(param) => Ok(Some(sextic.substitute(&param)?)),
    }
}

fn branch_over(s: &K3Surface, field: &Field) -> Result<MultiPoly<FieldElement>, LatticeError> {
    if s.modulus() % 2 == 0 || s.modulus() == 0 {
        return Err(LatticeError::Characteristic { expected: "odd", got: s.modulus() });
    }
    if !s.alpha().is_zero() {
        return Err(LatticeError::NotDoubleCover);
    }
    Ok(to_field_poly(&s.branch_sextic(), field))
}

/// Tangency test for one conic: smooth, not contained in the branch curve,
/// and every intersection point of multiplicity at least two.
pub fn conic_is_tangent(s: &K3Surface, field: &Field, conic: &Conic) -> Result<bool, LatticeError> {
    let sextic = branch_over(s, field)?;
    match restricted_sextic(&sextic, conic)? {
        None => Err(LatticeError::SingularConic),
        Some(g) if g.is_zero() => Ok(false),
        Some(g) => Ok(even_multiplicity_form(&g)?),
    }
}

/// Conics over `F_q` up to scalar, first nonzero coefficient `1`, in
/// lexicographic order of coefficient indices.
pub fn normalized_conics(f: &FieldDescriptor) -> impl Iterator<Item = Conic> + '_ {
    let q = f.order();
    (0..6usize).rev().flat_map(move |first| {
        (0..q.pow(5 - first as u32)).map(move |mut idx| {
            let mut coeffs = [f.zero(); 6];
            coeffs[first] = f.one();
            for slot in (first + 1..6).rev() {
                coeffs[slot] = f.element(idx % q);
                idx /= q;
            }
            Conic { coeffs }
        })
    })
}

pub fn tangent_conic_certificate(s: &K3Surface, field: &Field, conic: &Conic) -> LatticeCertificate {
    let coefficients = conic.coeffs.iter().map(|c| <FieldElement as Coeff>::format(field, c).1).collect();
    let witness = Witness::Conic { degree: field.degree(), conic: conic.to_text(field), coefficients };
    LatticeCertificate::new(s.modulus(), CertificateKind::TangentConic, witness)
}

/// Smooth conics over `F_{p^e}` whose contact with the branch sextic is even.
pub fn find_tangent_conic(s: &K3Surface, e: usize) -> Result<Option<(Conic, LatticeCertificate)>, LatticeError> {
    let field: Field = Arc::new(FieldDescriptor::new(s.modulus().max(1), e)?);
    let sextic = branch_over(s, &field)?;
    for conic in normalized_conics(&field) {
        let Some(g) = restricted_sextic(&sextic, &conic)? else { continue };
        if !g.is_zero() && even_multiplicity_form(&g)? {
            let cert = tangent_conic_certificate(s, &field, &conic);
            return Ok(Some((conic, cert)));
        }
    }
    Ok(None)
}

fn is_square(n: &BigInt) -> bool {
    n.sign() != num_bigint::Sign::Minus && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Geometric Picard rank one from two reductions with rank-two upper bounds
/// and lattices in different square classes.
pub fn rank_one_conclusion(a: &LatticeCertificate, b: &LatticeCertificate, ub_a: u32, ub_b: u32) -> bool {
    ub_a == 2
        && ub_b == 2
        && a.discriminant != 0
        && b.discriminant != 0
        && !is_square(&(BigInt::from(a.discriminant) * BigInt::from(b.discriminant)))
}
