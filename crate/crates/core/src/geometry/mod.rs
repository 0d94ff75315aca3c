//! Cubic fourfolds containing the plane `Y1 = Y2 = Y3 = 0`, the degree-2 K3
//! surfaces they determine, the fiber conic and the lift to Q.

pub mod fixtures;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::brauer::QuaternionAlgebra;
use crate::ff::{FieldDescriptor, FieldElement};
use crate::groebner::{projective_empty, IdealBasis};
use crate::mpoly::{default_names, parse, poly_det, Field, Integers, Monomial, MultiPoly, PolyError, RationalFunction};

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("form {name} is not homogeneous of degree {degree}")]
    BadDegree { name: String, degree: u32 },
    #[error("the cubic does not contain the plane Y1 = Y2 = Y3 = 0")]
    PlaneNotContained,
    #[error("the polynomial is not a cubic in six variables")]
    NotCubic,
    #[error("unsupported modulus {0}")]
    BadModulus(u32),
    #[error("operation requires characteristic different from 2")]
    CharacteristicTwo,
    #[error("operation requires a finite field")]
    NotFinite,
    #[error("moduli {0} and {1} do not match the lift")]
    CrtModuli(u32, u32),
    #[error("degenerate conic: its determinant vanishes identically")]
    DegenerateConic,
    #[error("every pivot ordering hits a vanishing pivot")]
    VanishingPivot,
}

pub const FORM_NAMES: [&str; 10] = ["L11", "L12", "L13", "L22", "L23", "L33", "Q14", "Q24", "Q34", "C44"];
const FORM_DEGREES: [u32; 10] = [1, 1, 1, 1, 1, 1, 2, 2, 2, 3];

/// Index pairs `(i, j)` of the `X_i X_j` monomial for each `L` form.
const L_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Reduces integer coefficients into `[0, m)`; `m = 0` keeps them.
pub fn reduce_coeffs(f: &MultiPoly<BigInt>, m: u32) -> MultiPoly<BigInt> {
    if m == 0 {
        return f.clone();
    }
    let m = BigInt::from(m);
    f.map_coeffs(&Integers, |c| c.mod_floor(&m))
}

pub fn to_field_poly(f: &MultiPoly<BigInt>, field: &Field) -> MultiPoly<FieldElement> {
    let p = BigInt::from(field.characteristic());
    f.map_coeffs(field, |c| field.from_int(c.mod_floor(&p).to_i64().expect("small residue")))
}

pub fn prime_field(p: u32) -> Field {
    Arc::new(FieldDescriptor::prime(p).expect("prime"))
}

fn check_modulus(m: u32) -> Result<(), GeometryError> {
    if m == 0 || crate::ff::is_prime(m) {
        Ok(())
    } else {
        Err(GeometryError::BadModulus(m))
    }
}

/// The ten forms `L_ij`, `Q_i4`, `C_44` in `(x, y, z) = (Y1, Y2, Y3)`,
/// over `F_modulus` (or Z when the modulus is 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricBundleData {
    modulus: u32,
    forms: [MultiPoly<BigInt>; 10],
}

impl QuadricBundleData {
    pub fn new(modulus: u32, forms: [MultiPoly<BigInt>; 10]) -> Result<Self, GeometryError> {
        check_modulus(modulus)?;
        let forms = forms.map(|f| reduce_coeffs(&f.with_nvars(3), modulus));
        for (k, f) in forms.iter().enumerate() {
            if !f.is_homogeneous_of_degree(FORM_DEGREES[k]) {
                return Err(GeometryError::BadDegree { name: FORM_NAMES[k].into(), degree: FORM_DEGREES[k] });
            }
        }
        Ok(QuadricBundleData { modulus, forms })
    }

    pub fn from_texts(modulus: u32, texts: &[&str; 10]) -> Result<Self, GeometryError> {
        let names = default_names(3);
        let mut forms: Vec<MultiPoly<BigInt>> = Vec::with_capacity(10);
        for t in texts {
            forms.push(parse(&Integers, &names, t)?);
        }
        Self::new(modulus, forms.try_into().expect("ten forms"))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn forms(&self) -> &[MultiPoly<BigInt>; 10] {
        &self.forms
    }

    pub fn form(&self, name: &str) -> &MultiPoly<BigInt> {
        let i = FORM_NAMES.iter().position(|n| *n == name).expect("known form name");
        &self.forms[i]
    }

    fn l(&self) -> &[MultiPoly<BigInt>] {
        &self.forms[0..6]
    }

    fn q(&self) -> &[MultiPoly<BigInt>] {
        &self.forms[6..9]
    }

    fn c(&self) -> &MultiPoly<BigInt> {
        &self.forms[9]
    }

    pub fn reduce(&self, p: u32) -> Result<Self, GeometryError> {
        Self::new(p, self.forms.clone())
    }

    /// Extracts the forms from a cubic in `X1, X2, X3, Y1, Y2, Y3`.
    pub fn from_fourfold(modulus: u32, f: &MultiPoly<BigInt>) -> Result<Self, GeometryError> {
        if f.nvars() != 6 || !f.is_homogeneous_of_degree(3) {
            return Err(GeometryError::NotCubic);
        }
        let mut forms: [MultiPoly<BigInt>; 10] = std::array::from_fn(|_| MultiPoly::zero(&Integers, 3));
        for (m, c) in f.terms() {
            let e = m.exponents();
            let xs = [e[0] as usize, e[1] as usize, e[2] as usize];
            let ym = Monomial::from_exponents(&[e[3] as u32, e[4] as u32, e[5] as u32]);
            let slot = match xs.iter().sum::<usize>() {
                0 => 9,
                1 => 6 + xs.iter().position(|&v| v == 1).unwrap(),
                2 => {
                    let mut idx = xs.iter().enumerate().flat_map(|(i, &v)| std::iter::repeat_n(i, v));
                    let pair = (idx.next().unwrap(), idx.next().unwrap());
                    L_PAIRS.iter().position(|&q| q == pair).unwrap()
                }
                _ => return Err(GeometryError::PlaneNotContained),
            };
            forms[slot].add_term(ym, c.clone());
        }
        Self::new(modulus, forms)
    }

    /// Parses a fourfold written in `X1, X2, X3, Y1, Y2, Y3`.
    pub fn from_fourfold_text(modulus: u32, text: &str) -> Result<Self, GeometryError> {
        let f = parse(&Integers, &default_names(6), text)?;
        Self::from_fourfold(modulus, &f)
    }
}

/// The cubic `sum L_ij X_i X_j + sum Q_i4 X_i + C_44` in `X1..X3, Y1..Y3`.
pub fn fourfold_equation(d: &QuadricBundleData) -> MultiPoly<BigInt> {
    let lift = |f: &MultiPoly<BigInt>| {
        let y: Vec<MultiPoly<BigInt>> = (3..6).map(|i| MultiPoly::var(&Integers, 6, i)).collect();
        f.substitute(&y).expect("three images")
    };
    let x = |i: usize| MultiPoly::var(&Integers, 6, i);
    let mut r = lift(d.c());
    for (k, &(i, j)) in L_PAIRS.iter().enumerate() {
        r = r.add(&lift(&d.l()[k]).mul(&x(i)).mul(&x(j)));
    }
    for (i, q) in d.q().iter().enumerate() {
        r = r.add(&lift(q).mul(&x(i)));
    }
    reduce_coeffs(&r, d.modulus)
}

/// Jacobian criterion over `F_p`: the cubic and its six partials have no
/// common projective zero.
pub fn fourfold_smooth(d: &QuadricBundleData) -> Result<bool, GeometryError> {
    if d.modulus == 0 {
        return Err(GeometryError::NotFinite);
    }
    let field = prime_field(d.modulus);
    let f = to_field_poly(&fourfold_equation(d), &field);
    let mut gens = vec![f.clone()];
    gens.extend((0..6).map(|i| f.partial_derivative(i)));
    let basis = IdealBasis::new(&field, 6, gens).expect("common arity");
    Ok(projective_empty(&basis, &[1; 6]).expect("homogeneous"))
}

/// The symmetric matrix with diagonal `2L_11, 2L_22, 2L_33, 2C_44`.
pub fn gram_matrix(d: &QuadricBundleData) -> Result<Vec<Vec<MultiPoly<BigInt>>>, GeometryError> {
    if d.modulus == 2 {
        return Err(GeometryError::CharacteristicTwo);
    }
    let two = BigInt::from(2);
    let l = d.l();
    let q = d.q();
    let entry = |i: usize, j: usize| -> MultiPoly<BigInt> {
        let (a, b) = (i.min(j), i.max(j));
        let f = match (a, b) {
            (3, 3) => d.c().scale(&two),
            (a, 3) => q[a].clone(),
            (a, b) => {
                let k = L_PAIRS.iter().position(|&pr| pr == (a, b)).unwrap();
                if a == b {
                    l[k].scale(&two)
                } else {
                    l[k].clone()
                }
            }
        };
        reduce_coeffs(&f, d.modulus)
    };
    Ok((0..4).map(|i| (0..4).map(|j| entry(i, j)).collect()).collect())
}

/// `w^2 + alpha*w + beta = 0` in `P(1,1,1,3)`, over `F_modulus` or Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Surface {
    modulus: u32,
    alpha: MultiPoly<BigInt>,
    beta: MultiPoly<BigInt>,
}

impl K3Surface {
    pub fn new(modulus: u32, alpha: MultiPoly<BigInt>, beta: MultiPoly<BigInt>) -> Result<Self, GeometryError> {
        check_modulus(modulus)?;
        let alpha = reduce_coeffs(&alpha.with_nvars(3), modulus);
        let beta = reduce_coeffs(&beta.with_nvars(3), modulus);
        if !alpha.is_homogeneous_of_degree(3) {
            return Err(GeometryError::BadDegree { name: "alpha".into(), degree: 3 });
        }
        if !beta.is_homogeneous_of_degree(6) {
            return Err(GeometryError::BadDegree { name: "beta".into(), degree: 6 });
        }
        Ok(K3Surface { modulus, alpha, beta })
    }

    /// The double cover `w^2 = f`.
    pub fn double_cover(modulus: u32, f: &MultiPoly<BigInt>) -> Result<Self, GeometryError> {
        Self::new(modulus, MultiPoly::zero(&Integers, 3), f.neg())
    }

    pub fn from_texts(modulus: u32, alpha: &str, beta: &str) -> Result<Self, GeometryError> {
        let names = default_names(3);
        Self::new(modulus, parse(&Integers, &names, alpha)?, parse(&Integers, &names, beta)?)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn alpha(&self) -> &MultiPoly<BigInt> {
        &self.alpha
    }

    pub fn beta(&self) -> &MultiPoly<BigInt> {
        &self.beta
    }

    /// `-beta`, the right-hand side of `w^2 = F` when `alpha = 0`.
    pub fn branch_sextic(&self) -> MultiPoly<BigInt> {
        reduce_coeffs(&self.beta.neg(), self.modulus)
    }

    pub fn reduce(&self, p: u32) -> Result<Self, GeometryError> {
        Self::new(p, self.alpha.clone(), self.beta.clone())
    }

    pub fn over_field(&self, field: &Field) -> (MultiPoly<FieldElement>, MultiPoly<FieldElement>) {
        (to_field_poly(&self.alpha, field), to_field_poly(&self.beta, field))
    }

    /// `w^2 + alpha*w + beta` in `x, y, z, w`.
    pub fn equation(&self) -> MultiPoly<BigInt> {
        let w = MultiPoly::var(&Integers, 4, 3);
        let a = self.alpha.with_nvars(3);
        let lift = |f: &MultiPoly<BigInt>| {
            let imgs: Vec<_> = (0..3).map(|i| MultiPoly::var(&Integers, 4, i)).collect();
            f.substitute(&imgs).expect("three images")
        };
        reduce_coeffs(&w.mul(&w).add(&lift(&a).mul(&w)).add(&lift(&self.beta)), self.modulus)
    }

    /// Stable text used for fingerprints and serialization.
    pub fn canonical_text(&self) -> String {
        let names = default_names(3);
        format!(
            "p={};alpha={};beta={}",
            self.modulus,
            crate::mpoly::to_canonical(&self.alpha, &names),
            crate::mpoly::to_canonical(&self.beta, &names)
        )
    }
}

/// Char not 2: `w^2 = det(gram)`. Char 2: `w^2 + L w + M`.
pub fn k3_from_fourfold(d: &QuadricBundleData) -> Result<K3Surface, GeometryError> {
    if d.modulus == 2 {
        let (l, m) = char2_discriminant(d);
        K3Surface::new(2, l, m)
    } else {
        let det = poly_det(&gram_matrix(d)?)?;
        K3Surface::double_cover(d.modulus, &det)
    }
}

/// The pair `(L, M)` with the signs of the integral formulas.
pub fn char2_discriminant(d: &QuadricBundleData) -> (MultiPoly<BigInt>, MultiPoly<BigInt>) {
    let [l11, l12, l13, l22, l23, l33, q14, q24, q34, c44] = d.forms.clone();
    let prod = |fs: &[&MultiPoly<BigInt>]| fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f));
    let l = prod(&[&l12, &q34]).add(&prod(&[&l13, &q24])).add(&prod(&[&l23, &q14]));
    let first = prod(&[&l12, &l23, &q34, &q14])
        .add(&prod(&[&l13, &l23, &q24, &q14]))
        .add(&prod(&[&l12, &q24, &l13, &q34]));
    let second = prod(&[&l11, &l23, &q24, &q34])
        .add(&prod(&[&l22, &l13, &q34, &q14]))
        .add(&prod(&[&l33, &l12, &q24, &q14]))
        .add(&prod(&[&c44, &l12, &l23, &l13]));
    let third = prod(&[&l11, &l22, &q34, &q34])
        .add(&prod(&[&l11, &l33, &q24, &q24]))
        .add(&prod(&[&l11, &c44, &l23, &l23]))
        .add(&prod(&[&l22, &l33, &q14, &q14]))
        .add(&prod(&[&l22, &c44, &l13, &l13]))
        .add(&prod(&[&l33, &c44, &l12, &l12]));
    let m = second.sub(&first).sub(&third);
    (reduce_coeffs(&l, d.modulus), reduce_coeffs(&m, d.modulus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    Smooth,
    Singular,
    /// Characteristic 2 with `alpha = 0`: the surface is never smooth.
    VanishingAlpha,
}

impl Smoothness {
    pub fn is_smooth(self) -> bool {
        self == Smoothness::Smooth
    }
}

/// Char not 2: smoothness of the branch sextic. Char 2: the weighted
/// Jacobian system of `w^2 + alpha*w + beta` in `P(1,1,1,3)`.
pub fn k3_smoothness(s: &K3Surface) -> Result<Smoothness, GeometryError> {
    if s.modulus == 0 {
        return Err(GeometryError::NotFinite);
    }
    let field = prime_field(s.modulus);
    let empty = if s.modulus == 2 {
        if s.alpha.is_zero() {
            return Ok(Smoothness::VanishingAlpha);
        }
        let g = to_field_poly(&s.equation(), &field);
        let mut gens = vec![g.clone()];
        gens.extend((0..4).map(|i| g.partial_derivative(i)));
        projective_empty(&IdealBasis::new(&field, 4, gens).expect("arity"), &[1, 1, 1, 3]).expect("homogeneous")
    } else {
        let (a, b) = s.over_field(&field);
        // Completing the square: 4*disc = alpha^2 - 4*beta.
        let f = a.mul(&a).sub(&b.scale(&field.from_int(4)));
        let mut gens = vec![f.clone()];
        gens.extend((0..3).map(|i| f.partial_derivative(i)));
        projective_empty(&IdealBasis::new(&field, 3, gens).expect("arity"), &[1, 1, 1]).expect("homogeneous")
    };
    Ok(if empty { Smoothness::Smooth } else { Smoothness::Singular })
}

pub fn k3_smooth(s: &K3Surface) -> Result<bool, GeometryError> {
    Ok(k3_smoothness(s)?.is_smooth())
}

/// `L11 p14^2 + L12 p14 p24 + L13 p14 p34 + L22 p24^2 + L23 p24 p34 + L33 p34^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConic {
    pub coeffs: [MultiPoly<BigInt>; 6],
}

pub fn fiber_conic(d: &QuadricBundleData) -> FiberConic {
    FiberConic { coeffs: std::array::from_fn(|k| d.forms[k].clone()) }
}

impl FiberConic {
    /// The conic as a polynomial in `x, y, z, p14, p24, p34`.
    pub fn as_polynomial(&self) -> MultiPoly<BigInt> {
        let v = |i: usize| MultiPoly::var(&Integers, 6, i);
        let lift = |f: &MultiPoly<BigInt>| f.with_nvars(3).substitute(&[v(0), v(1), v(2)]).expect("arity");
        let mut r = MultiPoly::zero(&Integers, 6);
        for (k, &(i, j)) in L_PAIRS.iter().enumerate() {
            r = r.add(&lift(&self.coeffs[k]).mul(&v(3 + i)).mul(&v(3 + j)));
        }
        r
    }

    /// Twice the symmetric matrix of the form.
    fn doubled_matrix(&self) -> [[MultiPoly<BigInt>; 3]; 3] {
        let two = BigInt::from(2);
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let (a, b) = (i.min(j), i.max(j));
                let k = L_PAIRS.iter().position(|&pr| pr == (a, b)).unwrap();
                if a == b {
                    self.coeffs[k].scale(&two)
                } else {
                    self.coeffs[k].clone()
                }
            })
        })
    }
}

/// A diagonalization `lambda = scale * (P1^2 - alpha P2^2 - beta P3^2)`
/// where `P = U * perm(p14, p24, p34)` with `U` unit upper triangular.
#[derive(Clone, Debug)]
pub struct SquareCompletion {
    pub algebra: QuaternionAlgebra,
    /// `order[k]` is the index of the conic variable placed in position `k`.
    pub order: [usize; 3],
    pub scale: RationalFunction,
    /// Entries `U[0][1], U[0][2], U[1][2]`.
    pub upper: [RationalFunction; 3],
}

impl SquareCompletion {
    /// Checks the defining identity as rational functions in
    /// `x, y, z, p14, p24, p34`.
    pub fn verify(&self, conic: &FiberConic) -> bool {
        let lift = |r: &RationalFunction| {
            let imgs: Vec<_> = (0..3).map(|i| MultiPoly::var(&Integers, 6, i)).collect();
            RationalFunction::new(
                r.numerator().substitute(&imgs).expect("arity"),
                r.denominator().substitute(&imgs).expect("arity"),
            )
            .expect("nonzero")
        };
        let var = |i: usize| RationalFunction::from_poly(MultiPoly::var(&Integers, 6, 3 + self.order[i]));
        let p1 = var(0).add(&lift(&self.upper[0]).mul(&var(1))).add(&lift(&self.upper[1]).mul(&var(2)));
        let p2 = var(1).add(&lift(&self.upper[2]).mul(&var(2)));
        let p3 = var(2);
        let a = lift(&self.algebra.alpha);
        let b = lift(&self.algebra.beta);
        let diag = p1.mul(&p1).sub(&a.mul(&p2).mul(&p2)).sub(&b.mul(&p3).mul(&p3));
        lift(&self.scale).mul(&diag) == RationalFunction::from_poly(conic.as_polynomial())
    }
}

/// Completes squares pivoting on `p14` first, trying the other orderings
/// when a pivot vanishes.
pub fn complete_squares(c: &FiberConic) -> Result<SquareCompletion, GeometryError> {
    let m = c.doubled_matrix();
    let det = poly_det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())?;
    if det.is_zero() {
        return Err(GeometryError::DegenerateConic);
    }
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for order in ORDERS {
        let e = |i: usize, j: usize| m[order[i]][order[j]].clone();
        let a2 = e(0, 0);
        if a2.is_zero() {
            continue;
        }
        let m2 = a2.mul(&e(1, 1)).sub(&e(0, 1).mul(&e(0, 1)));
        if m2.is_zero() {
            continue;
        }
        let rf = |n: MultiPoly<BigInt>, d: MultiPoly<BigInt>| RationalFunction::new(n, d).expect("nonzero pivot");
        // lambda = (a2/2) P1^2 + (m2/(2 a2)) P2^2 + (det/(2 m2)) P3^2.
        let alpha = rf(m2.neg(), a2.mul(&a2));
        let beta = rf(det.neg(), a2.mul(&m2));
        let scale = rf(a2.clone(), MultiPoly::from_i64(&Integers, 3, 2));
        let u01 = rf(e(0, 1), a2.clone());
        let u02 = rf(e(0, 2), a2.clone());
        let u12 = rf(a2.mul(&e(1, 2)).sub(&e(0, 1).mul(&e(0, 2))), m2.clone());
        return Ok(SquareCompletion {
            algebra: QuaternionAlgebra { alpha, beta },
            order,
            scale,
            upper: [u01, u02, u12],
        });
    }
    Err(GeometryError::VanishingPivot)
}

/// Coefficientwise lift to `{0, ..., 5}` from residues mod 2 and mod 3.
pub fn crt_lift(d2: &QuadricBundleData, d3: &QuadricBundleData) -> Result<QuadricBundleData, GeometryError> {
    if d2.modulus != 2 || d3.modulus != 3 {
        return Err(GeometryError::CrtModuli(d2.modulus, d3.modulus));
    }
    let forms: [MultiPoly<BigInt>; 10] = std::array::from_fn(|k| {
        let mut r = MultiPoly::zero(&Integers, 3);
        let mut monos: Vec<Monomial> = d2.forms[k].terms().chain(d3.forms[k].terms()).map(|(m, _)| *m).collect();
        monos.sort();
        monos.dedup();
        for m in monos {
            let e: Vec<u32> = m.exponents().iter().map(|&v| v as u32).collect();
            let a = d2.forms[k].coefficient(&e);
            let b = d3.forms[k].coefficient(&e);
            r.add_term(m, crt_pair(&a, &b));
        }
        r
    });
    QuadricBundleData::new(0, forms)
}

/// The representative in `[0, 6)` of `a mod 2`, `b mod 3`.
pub fn crt_pair(a: &BigInt, b: &BigInt) -> BigInt {
    // 3 = 1 mod 2, 0 mod 3; 4 = 0 mod 2, 1 mod 3.
    (a * BigInt::from(3) + b * BigInt::from(4)).mod_floor(&BigInt::from(6))
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    modulus: u32,
    #[serde(rename = "L11")]
    l11: String,
    #[serde(rename = "L12")]
    l12: String,
    #[serde(rename = "L13")]
    l13: String,
    #[serde(rename = "L22")]
    l22: String,
    #[serde(rename = "L23")]
    l23: String,
    #[serde(rename = "L33")]
    l33: String,
    #[serde(rename = "Q14")]
    q14: String,
    #[serde(rename = "Q24")]
    q24: String,
    #[serde(rename = "Q34")]
    q34: String,
    #[serde(rename = "C44")]
    c44: String,
}

impl Serialize for QuadricBundleData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = default_names(3);
        let t = |k: usize| crate::mpoly::to_canonical(&self.forms[k], &names);
        BundleJson {
            modulus: self.modulus,
            l11: t(0),
            l12: t(1),
            l13: t(2),
            l22: t(3),
            l23: t(4),
            l33: t(5),
            q14: t(6),
            q24: t(7),
            q34: t(8),
            c44: t(9),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadricBundleData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BundleJson::deserialize(d)?;
        let texts = [
            j.l11.as_str(),
            &j.l12,
            &j.l13,
            &j.l22,
            &j.l23,
            &j.l33,
            &j.q14,
            &j.q24,
            &j.q34,
            &j.c44,
        ];
        QuadricBundleData::from_texts(j.modulus, &texts).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    modulus: u32,
    alpha: String,
    beta: String,
}

impl Serialize for K3Surface {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names = default_names(3);
        SurfaceJson {
            modulus: self.modulus,
            alpha: crate::mpoly::to_canonical(&self.alpha, &names),
            beta: crate::mpoly::to_canonical(&self.beta, &names),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for K3Surface {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SurfaceJson::deserialize(d)?;
        K3Surface::from_texts(j.modulus, &j.alpha, &j.beta).map_err(serde::de::Error::custom)
    }
}
