//! Precomputed tables for bulk evaluation.
//!
//! * [`PowerTables`]: `g^k` for `2 <= k <= 6` and every element `g`, plus the
//!   set of squares produced as a by-product.
//! * [`Unreduced`]: products of elements accumulated as polynomials in `X` of
//!   degree `< 2n - 1`, reduced once at the end.
//! * [`LogTables`]: discrete logarithms with respect to a primitive element,
//!   with elements packed into a `u32` so that addition is a handful of bit
//!   operations (`p = 2`: one bit per coefficient, `p = 3`: two bit planes).

use super::{FieldDescriptor, FieldElement, MAX_DEGREE};

/// Square membership is tabled up to this field size.
pub const SQUARE_TABLE_LIMIT: u64 = 1 << 24;
/// Per-element power rows are tabled up to this field size.
pub const POWER_TABLE_LIMIT: u64 = 1 << 20;

pub struct PowerTables {
    field: FieldDescriptor,
    /// `powers[index(g)] = [g^2, ..., g^6]`.
    powers: Vec<[FieldElement; 5]>,
    squares: Option<Vec<u64>>,
}

impl PowerTables {
    pub fn new(field: &FieldDescriptor) -> Self {
        let q = field.order();
        let mut powers = Vec::new();
        let mut squares = (q <= SQUARE_TABLE_LIMIT && field.characteristic() != 2)
            .then(|| vec![0u64; (q as usize).div_ceil(64)]);
        if q <= POWER_TABLE_LIMIT {
            powers.reserve(q as usize);
            for g in field.elements() {
                let mut row = [FieldElement::ZERO; 5];
                let mut cur = g;
                for slot in row.iter_mut() {
                    cur = field.mul(cur, g);
                    *slot = cur;
                }
                if let Some(sq) = squares.as_mut() {
                    let i = field.index_of(row[0]) as usize;
                    sq[i / 64] |= 1 << (i % 64);
                }
                powers.push(row);
            }
        } else if let Some(sq) = squares.as_mut() {
            for g in field.elements() {
                let i = field.index_of(field.square(g)) as usize;
                sq[i / 64] |= 1 << (i % 64);
            }
        }
        PowerTables { field: field.clone(), powers, squares }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn has_power_rows(&self) -> bool {
        !self.powers.is_empty()
    }

    /// `g^k` for any `k`; tabled for `k <= 6`.
    pub fn pow(&self, g: FieldElement, k: u32) -> FieldElement {
        match k {
            0 => self.field.one(),
            1 => g,
            2..=6 if self.has_power_rows() => {
                self.powers[self.field.index_of(g) as usize][k as usize - 2]
            }
            _ => self.field.pow(g, k as u64),
        }
    }

    /// Square membership from the table, falling back to Euler's criterion
    /// for fields too large to table.
    pub fn is_square(&self, g: FieldElement) -> Result<bool, super::FieldError> {
        match &self.squares {
            Some(sq) => {
                let i = self.field.index_of(g) as usize;
                Ok(sq[i / 64] >> (i % 64) & 1 == 1)
            }
            None => self.field.is_square(g),
        }
    }
}

/// A polynomial in `X` with unreduced coefficients, for summing products
/// before a single reduction modulo the field modulus.
#[derive(Clone)]
pub struct Unreduced {
    acc: [u32; 2 * MAX_DEGREE],
    terms: u32,
}

impl Default for Unreduced {
    fn default() -> Self {
        Unreduced { acc: [0; 2 * MAX_DEGREE], terms: 0 }
    }
}

impl Unreduced {
    pub fn new() -> Self {
        Self::default()
    }

    fn headroom(field: &FieldDescriptor) -> u32 {
        let p = field.characteristic();
        let per_term = (field.degree() as u32) * (p - 1) * (p - 1) * (p - 1).max(1);
        (u32::MAX / 2 / per_term.max(1)).max(1)
    }

    fn normalize_if_needed(&mut self, field: &FieldDescriptor) {
        if self.terms >= Self::headroom(field) {
            let p = field.characteristic();
            for c in self.acc.iter_mut() {
                *c %= p;
            }
            self.terms = 0;
        }
    }

    /// Adds `scalar * a * b` without reducing modulo the field modulus.
    pub fn add_product(&mut self, field: &FieldDescriptor, scalar: u32, a: FieldElement, b: FieldElement) {
        self.normalize_if_needed(field);
        let n = field.degree();
        let ac = a.coeffs();
        let bc = b.coeffs();
        for i in 0..n {
            let ai = ac[i] as u32 * scalar;
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                self.acc[i + j] += ai * bc[j] as u32;
            }
        }
        self.terms += 1;
    }

    pub fn add_scaled(&mut self, field: &FieldDescriptor, scalar: u32, a: FieldElement) {
        self.normalize_if_needed(field);
        for (slot, &c) in self.acc.iter_mut().zip(a.coeffs().iter()).take(field.degree()) {
            *slot += c as u32 * scalar;
        }
        self.terms += 1;
    }

    pub fn reduce(mut self, field: &FieldDescriptor) -> FieldElement {
        let len = 2 * field.degree() - 1;
        field.reduce_wide(&mut self.acc, len)
    }
}

/// Addition on packed elements.
pub trait Packing: Copy + Send + Sync {
    fn add(&self, a: u32, b: u32) -> u32;
}

/// `p = 2`: bit `i` is the coefficient of `X^i`.
#[derive(Clone, Copy, Debug)]
pub struct BinaryPacking;

impl Packing for BinaryPacking {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }
}

/// `p = 3`: bits `0..n` flag coefficients equal to 1, bits `n..2n` flag
/// coefficients equal to 2.
#[derive(Clone, Copy, Debug)]
pub struct TernaryPacking {
    shift: u32,
    mask: u32,
}

impl Packing for TernaryPacking {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        let (a1, a2) = (a & self.mask, a >> self.shift);
        let (b1, b2) = (b & self.mask, b >> self.shift);
        let t = (a1 | b2) ^ (a2 | b1);
        let s1 = (a2 | b2) ^ t;
        let s2 = (a1 | b1) ^ t;
        s1 | (s2 << self.shift)
    }
}

/// Any other `p`: the packed value is the enumeration index.
#[derive(Clone, Copy, Debug)]
pub struct DigitPacking {
    p: u32,
    n: u32,
}

impl Packing for DigitPacking {
    fn add(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub enum PackingKind {
    Binary(BinaryPacking),
    Ternary(TernaryPacking),
    Digits(DigitPacking),
}

/// Discrete-log tables for fields with `q <= 2^24`.
pub struct LogTables {
    field: FieldDescriptor,
    generator: FieldElement,
    kind: PackingKind,
    /// `exp[j]` is the packed form of `g^j`, `0 <= j < q - 1`.
    exp: Vec<u32>,
    /// `log[index]` for nonzero elements, `u32::MAX` for zero.
    log: Vec<u32>,
    /// Per-plane weights converting a ternary bit plane to its index
    /// contribution.
    plane_index: Vec<u32>,
    /// Square flags over the packed domain (odd characteristic).
    squares: Vec<u64>,
    /// `p = 2`: bit `i` set iff `Tr(X^i) = 1`.
    trace_mask: u32,
}

impl LogTables {
    pub fn new(field: &FieldDescriptor) -> Option<Self> {
        let q = field.order();
        if q > SQUARE_TABLE_LIMIT || q < 2 {
            return None;
        }
        let p = field.characteristic();
        let n = field.degree() as u32;
        let kind = match p {
            2 => PackingKind::Binary(BinaryPacking),
            3 => PackingKind::Ternary(TernaryPacking { shift: n, mask: (1u32 << n) - 1 }),
            _ => PackingKind::Digits(DigitPacking { p, n }),
        };
        let plane_index = if p == 3 {
            (0..1u32 << n)
                .map(|bits| {
                    let mut idx = 0u32;
                    let mut place = 1u32;
                    for i in 0..n {
                        if bits >> i & 1 == 1 {
                            idx += place;
                        }
                        place *= 3;
                    }
                    idx
                })
                .collect()
        } else {
            Vec::new()
        };
        let generator = field.primitive_element();
        let mut tables = LogTables {
            field: field.clone(),
            generator,
            kind,
            exp: Vec::with_capacity(q as usize - 1),
            log: vec![u32::MAX; q as usize],
            plane_index,
            squares: Vec::new(),
            trace_mask: 0,
        };
        let mut cur = field.one();
        for j in 0..(q - 1) as u32 {
            let packed = tables.pack(cur);
            tables.exp.push(packed);
            tables.log[field.index_of(cur) as usize] = j;
            cur = field.mul(cur, generator);
        }
        debug_assert_eq!(cur, field.one());
        if p == 2 {
            let mut x = field.one();
            for i in 0..n {
                if field.trace(x) == 1 {
                    tables.trace_mask |= 1 << i;
                }
                x = field.mul(x, field.generator_root());
            }
        } else {
            let domain = tables.packed_domain();
            let mut squares = vec![0u64; domain.div_ceil(64)];
            for j in (0..(q - 1) as usize).step_by(2) {
                let v = tables.exp[j] as usize;
                squares[v / 64] |= 1 << (v % 64);
            }
            squares[0] |= 1;
            tables.squares = squares;
        }
        Some(tables)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn kind(&self) -> PackingKind {
        self.kind
    }

    /// Size of the packed value domain.
    pub fn packed_domain(&self) -> usize {
        match self.kind {
            PackingKind::Binary(_) => self.field.order() as usize,
            PackingKind::Ternary(t) => 1usize << (2 * t.shift),
            PackingKind::Digits(_) => self.field.order() as usize,
        }
    }

    pub fn pack(&self, e: FieldElement) -> u32 {
        let n = self.field.degree();
        let c = e.coeffs();
        match self.kind {
            PackingKind::Binary(_) => (0..n).fold(0, |acc, i| acc | (c[i] as u32) << i),
            PackingKind::Ternary(t) => (0..n).fold(0, |acc, i| match c[i] {
                1 => acc | 1 << i,
                2 => acc | 1 << (i as u32 + t.shift),
                _ => acc,
            }),
            PackingKind::Digits(_) => self.field.index_of(e) as u32,
        }
    }

    /// Enumeration index of a packed value.
    #[inline(always)]
    pub fn packed_index(&self, v: u32) -> u32 {
        match self.kind {
            PackingKind::Binary(_) | PackingKind::Digits(_) => v,
            PackingKind::Ternary(t) => {
                self.plane_index[(v & t.mask) as usize] + 2 * self.plane_index[(v >> t.shift) as usize]
            }
        }
    }

    pub fn unpack(&self, v: u32) -> FieldElement {
        self.field.element(self.packed_index(v) as u64)
    }

    /// Packed `g^j` (`j` reduced modulo `q - 1`).
    #[inline(always)]
    pub fn exp(&self, j: u32) -> u32 {
        self.exp[j as usize]
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Discrete log of a nonzero packed value.
    #[inline(always)]
    pub fn log_packed(&self, v: u32) -> Option<u32> {
        let l = self.log[self.packed_index(v) as usize];
        (l != u32::MAX).then_some(l)
    }

    pub fn log(&self, e: FieldElement) -> Option<u32> {
        let l = self.log[self.field.index_of(e) as usize];
        (l != u32::MAX).then_some(l)
    }

    /// Square test on a packed value (zero is a square). Odd characteristic.
    #[inline(always)]
    pub fn is_square_packed(&self, v: u32) -> bool {
        self.squares[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// `Tr_{F_q/F_2}` of a packed value (characteristic 2).
    #[inline(always)]
    pub fn trace_packed(&self, v: u32) -> u32 {
        (v & self.trace_mask).count_ones() & 1
    }

    pub fn add_packed(&self, a: u32, b: u32) -> u32 {
        match self.kind {
            PackingKind::Binary(k) => k.add(a, b),
            PackingKind::Ternary(k) => k.add(a, b),
            PackingKind::Digits(k) => k.add(a, b),
        }
    }
}
