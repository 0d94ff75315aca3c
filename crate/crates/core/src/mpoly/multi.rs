//! Sparse multivariate polynomials in at most [`MAX_VARS`] variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;
use super::PolyError;

pub const MAX_VARS: usize = 8;

/// An exponent vector, ordered by graded reverse lexicographic order with
/// `x_0 > x_1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent fits in u16");
        }
        m
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exponents().iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..self.nvars() {
            m.exps[i] -= self.exps[i];
        }
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// `Some(i)` when the monomial is `x_i^e` with `e > 0`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.nvars()).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    // Smaller exponent in the last differing variable wins.
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// A polynomial over the coefficient ring `C::Ring` with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Coeff> {
    ring: C::Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(ring: &C::Ring, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &C::Ring, nvars: usize, c: C) -> Self {
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_i64(ring: &C::Ring, nvars: usize, v: i64) -> Self {
        Self::constant(ring, nvars, C::from_i64(ring, v))
    }

    pub fn one(ring: &C::Ring, nvars: usize) -> Self {
        Self::from_i64(ring, nvars, 1)
    }

    pub fn var(ring: &C::Ring, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(ring, nvars);
        p.add_term(Monomial::var(nvars, i), C::one(ring));
        p
    }

    pub fn monomial(ring: &C::Ring, c: C, exps: &[u32]) -> Self {
        let mut p = Self::zero(ring, exps.len());
        p.add_term(Monomial::from_exponents(exps), c);
        p
    }

    /// Builds from `(coefficient, exponents)` pairs; like terms are combined.
    pub fn from_terms<I>(ring: &C::Ring, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Vec<u32>)>,
    {
        let mut p = Self::zero(ring, nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::from_exponents(&e), c);
        }
        p
    }

    /// Same as [`from_terms`](Self::from_terms) with small-integer coefficients.
    pub fn from_int_terms(ring: &C::Ring, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(ring, nvars, terms.iter().map(|(c, e)| (C::from_i64(ring, *c), e.to_vec())))
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_else(|| C::zero(&self.ring))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = C::add(&self.ring, existing, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has weighted degree `d`; the zero polynomial
    /// returns `None`.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.weighted_homogeneous_degree(&[1; MAX_VARS])
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, C::neg(&self.ring, c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, C::neg(&self.ring, c));
        }
        r
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut r = Self::zero(&self.ring, self.nvars);
        for (m, c) in &self.terms {
            r.add_term(*m, C::mul(&self.ring, c, k));
        }
        r
    }

    pub fn mul_term(&self, m: &Monomial, k: &C) -> Self {
        let mut r = Self::zero(&self.ring, self.nvars);
        for (mm, c) in &self.terms {
            r.add_term(mm.mul(m), C::mul(&self.ring, c, k));
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(&self.ring, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), C::mul(&self.ring, c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(&self.ring, self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Value at a point with coordinates in the coefficient ring.
    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: point.len() });
        }
        let ring = &self.ring;
        // Power cache per variable.
        let mut powers: Vec<Vec<C>> = point.iter().map(|x| vec![C::one(ring), x.clone()]).collect();
        let mut acc = C::zero(ring);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = C::mul(ring, powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = C::mul(ring, &t, &powers[i][e]);
                }
            }
            acc = C::add(ring, &acc, &t);
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`; exponents
    /// multiply coefficients in the ring, so `d/dx x^p = 0` in characteristic `p`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut r = Self::zero(&self.ring, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.exps[i] -= 1;
            r.add_term(dm, C::mul(&self.ring, c, &C::from_i64(&self.ring, e as i64)));
        }
        r
    }

    /// Replaces variable `i` by `images[i]`; images share a ring and
    /// variable count, which becomes the result's.
    pub fn substitute(&self, images: &[MultiPoly<C>]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: images.len() });
        }
        let target_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.iter().any(|p| p.nvars != target_vars) {
            return Err(PolyError::MixedArity);
        }
        let mut cache: Vec<Vec<MultiPoly<C>>> =
            images.iter().map(|p| vec![Self::one(&self.ring, target_vars), p.clone()]).collect();
        let mut r = Self::zero(&self.ring, target_vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&self.ring, target_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&cache[i][e]);
                }
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Coefficient-wise ring change; zero images are dropped.
    pub fn map_coeffs<D: Coeff>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut r = MultiPoly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            r.add_term(*m, f(c));
        }
        r
    }

    /// Keeps the first `nvars` variables, which must carry all exponents.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        let mut r = Self::zero(&self.ring, nvars);
        for (m, c) in &self.terms {
            let mut mm = Monomial::one(nvars);
            for i in 0..self.nvars {
                if i < nvars {
                    mm.exps[i] = m.exps[i];
                } else {
                    assert_eq!(m.exps[i], 0, "dropped variable carries an exponent");
                }
            }
            r.add_term(mm, c.clone());
        }
        r
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::to_canonical(self, &super::text::default_names(self.nvars)))
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::to_canonical(self, &super::text::default_names(self.nvars)))
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn poly_det<C: Coeff>(m: &[Vec<MultiPoly<C>>]) -> Result<MultiPoly<C>, PolyError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(PolyError::NotSquare);
    }
    if n == 0 {
        return Err(PolyError::NotSquare);
    }
    Ok(det_rec(m, &(0..n).collect::<Vec<_>>(), 0))
}

fn det_rec<C: Coeff>(m: &[Vec<MultiPoly<C>>], cols: &[usize], row: usize) -> MultiPoly<C> {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let ring = m[0][0].ring().clone();
    let nvars = m[0][0].nvars();
    let mut acc = MultiPoly::zero(&ring, nvars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &rest, row + 1);
        let term = entry.mul(&minor);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
