//! Enumeration of `P^2(F_q)` with per-point fiber counts.
//!
//! On the patch `(1, y, z)` the forms become polynomials in `z` whose
//! coefficients depend on `y` only. For fixed `y` the coefficients are
//! stored as discrete logs, so running `z` through `g^0, g^1, ...` turns
//! every monomial update into an index increment.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::ff::tables::{BinaryPacking, LogTables, Packing, PackingKind};
use crate::ff::{FieldDescriptor, FieldElement};
use crate::mpoly::MultiPoly;

use super::CountError;

/// The forms restricted to the patch `(1, y, z)`, as polynomials in `z`
/// with coefficients in `F_p[y]`.
struct PatchForms {
    /// `coeffs[k]` is the coefficient of `z^k`, a dense polynomial in `y`.
    coeffs: Vec<Vec<FieldElement>>,
}

impl PatchForms {
    fn new(field: &FieldDescriptor, f: &MultiPoly<FieldElement>, degree: usize) -> Self {
        let mut coeffs = vec![vec![FieldElement::ZERO; degree + 1]; degree + 1];
        for (m, c) in f.terms() {
            let (b, k) = (m.exponent(1) as usize, m.exponent(2) as usize);
            coeffs[k][b] = field.add(coeffs[k][b], *c);
        }
        PatchForms { coeffs }
    }

    fn at(&self, field: &FieldDescriptor, y: FieldElement) -> Vec<FieldElement> {
        self.coeffs
            .iter()
            .map(|c| c.iter().rev().fold(FieldElement::ZERO, |acc, &a| field.add(field.mul(acc, y), a)))
            .collect()
    }
}

/// What the engine needs from a surface over `F_p`, already in `F_q`.
pub(crate) struct Forms {
    /// Odd characteristic: `alpha^2 - 4 beta`. Characteristic 2: unused.
    pub disc: MultiPoly<FieldElement>,
    pub alpha: MultiPoly<FieldElement>,
    pub beta: MultiPoly<FieldElement>,
}

/// A range of `y` values on the main patch with multiplicities.
#[derive(Clone, Copy)]
pub(crate) enum YSet {
    All,
    /// Representatives of Frobenius orbits, weighted by orbit size.
    Orbits,
}

pub(crate) struct Engine {
    tables: Arc<LogTables>,
    forms: Forms,
    disc_patch: PatchForms,
    alpha_patch: PatchForms,
    beta_patch: PatchForms,
    /// `p = 2`: bit `j` set iff `Tr(g^j) = 1`.
    trace_bits: Vec<u64>,
}

pub(crate) fn orbit_representatives(p: u64, q: u64) -> Vec<(u32, u32)> {
    // Nonzero y = g^i; Frobenius multiplies i by p modulo q - 1.
    let m = q - 1;
    let mut seen = vec![false; m as usize];
    let mut reps = Vec::new();
    for i in 0..m {
        if seen[i as usize] {
            continue;
        }
        let mut j = i;
        let mut size = 0u32;
        loop {
            seen[j as usize] = true;
            size += 1;
            j = j * p % m;
            if j == i {
                break;
            }
        }
        reps.push((i as u32, size));
    }
    reps
}

impl Engine {
    pub fn new(field: &FieldDescriptor, forms: Forms) -> Option<Self> {
        let tables = Arc::new(LogTables::new(field)?);
        let disc_patch = PatchForms::new(field, &forms.disc, 6);
        let alpha_patch = PatchForms::new(field, &forms.alpha, 3);
        let beta_patch = PatchForms::new(field, &forms.beta, 6);
        let m = (field.order() - 1) as usize;
        let mut trace_bits = Vec::new();
        if field.characteristic() == 2 {
            trace_bits = vec![0u64; m.div_ceil(64)];
            for j in 0..m {
                if tables.trace_packed(tables.exp(j as u32)) == 1 {
                    trace_bits[j / 64] |= 1 << (j % 64);
                }
            }
        }
        Some(Engine { tables, forms, disc_patch, alpha_patch, beta_patch, trace_bits })
    }

    fn field(&self) -> &FieldDescriptor {
        self.tables.field()
    }

    /// Fiber count over one base point, straight from the definition.
    fn fiber(&self, x: FieldElement, y: FieldElement, z: FieldElement) -> u64 {
        let f = self.field();
        let pt = [x, y, z];
        let a = self.forms.alpha.eval(&pt).expect("arity");
        let b = self.forms.beta.eval(&pt).expect("arity");
        f.quadratic_solution_count(a, b) as u64
    }

    /// Points over the line `x = 0`.
    fn line_at_infinity(&self) -> u64 {
        let f = self.field();
        let mut total = self.fiber(f.zero(), f.zero(), f.one());
        for z in f.elements() {
            total += self.fiber(f.zero(), f.one(), z);
        }
        total
    }

    pub fn count(&self, ys: YSet, workers: usize, deadline: Option<Instant>) -> Result<u64, CountError> {
        let f = self.field();
        let q = f.order();
        let mut jobs: Vec<(Option<u32>, u64)> = vec![(None, 1)];
        match ys {
            YSet::All => jobs.extend((0..(q - 1) as u32).map(|i| (Some(i), 1))),
            YSet::Orbits => jobs.extend(
                orbit_representatives(f.characteristic() as u64, q).into_iter().map(|(i, s)| (Some(i), s as u64)),
            ),
        }
        let cancelled = AtomicBool::new(false);
        let run = || -> u64 {
            jobs.par_chunks(16)
                .map(|chunk| {
                    if cancelled.load(Ordering::Relaxed) {
                        return 0;
                    }
                    if deadline.is_some_and(|d| Instant::now() > d) {
                        cancelled.store(true, Ordering::Relaxed);
                        return 0;
                    }
                    chunk
                        .iter()
                        .map(|&(log_y, weight)| {
                            let y = match log_y {
                                None => f.zero(),
                                Some(i) => self.tables.unpack(self.tables.exp(i)),
                            };
                            weight * self.row(y)
                        })
                        .sum::<u64>()
                })
                .sum()
        };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| CountError::Pool(e.to_string()))?;
        let main = pool.install(run);
        if cancelled.load(Ordering::Relaxed) {
            return Err(CountError::BudgetExceeded("deadline reached".into()));
        }
        Ok(main + self.line_at_infinity())
    }

    /// Sum of fiber counts over `(1, y, z)` for all `z`.
    fn row(&self, y: FieldElement) -> u64 {
        let t = &*self.tables;
        match t.kind() {
            PackingKind::Binary(k) => self.row_char2(k, y),
            PackingKind::Ternary(k) => self.row_odd(k, y),
            PackingKind::Digits(k) => self.row_odd(k, y),
        }
    }

    /// Exponent/mask/constant setup for a `z`-polynomial at a given `y`.
    fn prepare<const D: usize>(&self, patch: &PatchForms, y: FieldElement) -> (u32, [u32; D], [u32; D]) {
        let t = &*self.tables;
        let c = patch.at(self.field(), y);
        let mut e = [0u32; D];
        let mut mask = [0u32; D];
        for k in 1..=D {
            if let Some(l) = t.log(c[k]) {
                e[k - 1] = l;
                mask[k - 1] = u32::MAX;
            }
        }
        (t.pack(c[0]), e, mask)
    }

    fn row_odd<P: Packing>(&self, pk: P, y: FieldElement) -> u64 {
        let t = &*self.tables;
        let m = (self.field().order() - 1) as u32;
        let exp = t.exp_table();
        let step = steps::<6>(m);
        let (c0, mut e, mask) = self.prepare::<6>(&self.disc_patch, y);
        let count = |v: u32| -> u64 {
            let sq = t.is_square_packed(v) as u64;
            sq + (sq & (v != 0) as u64)
        };
        let mut total = count(c0); // z = 0
        for _ in 0..m {
            let mut v = c0;
            for k in 0..6 {
                v = pk.add(v, exp[e[k] as usize] & mask[k]);
                let next = e[k] + step[k];
                e[k] = if next >= m { next - m } else { next };
            }
            total += count(v);
        }
        total
    }

    fn row_char2(&self, pk: BinaryPacking, y: FieldElement) -> u64 {
        let t = &*self.tables;
        let m = (self.field().order() - 1) as u32;
        let exp = t.exp_table();
        let step = steps::<6>(m);
        let (a0, mut ea, ma) = self.prepare::<3>(&self.alpha_patch, y);
        let (b0, mut eb, mb) = self.prepare::<6>(&self.beta_patch, y);
        let count = |a: u32, b: u32| -> u64 {
            if a == 0 {
                return 1;
            }
            if b == 0 {
                return 2;
            }
            let la = t.log_packed(a).unwrap();
            let lb = t.log_packed(b).unwrap();
            let mut j = lb + 2 * (m - la);
            while j >= m {
                j -= m;
            }
            2 * (1 - (self.trace_bits[(j / 64) as usize] >> (j % 64) & 1))
        };
        let mut total = count(a0, b0);
        for _ in 0..m {
            let mut a = a0;
            for k in 0..3 {
                a = pk.add(a, exp[ea[k] as usize] & ma[k]);
                let next = ea[k] + step[k];
                ea[k] = if next >= m { next - m } else { next };
            }
            let mut b = b0;
            for k in 0..6 {
                b = pk.add(b, exp[eb[k] as usize] & mb[k]);
                let next = eb[k] + step[k];
                eb[k] = if next >= m { next - m } else { next };
            }
            total += count(a, b);
        }
        total
    }
}

/// `z -> g z` advances the log of the `z^k` term by `k`, reduced mod `m`.
fn steps<const D: usize>(m: u32) -> [u32; D] {
    std::array::from_fn(|k| (k as u32 + 1) % m)
}

/// Reference enumeration with plain field arithmetic, for any field size.
pub(crate) fn count_plain(field: &FieldDescriptor, forms: &Forms) -> u64 {
    let mut total = 0u64;
    let fiber = |pt: [FieldElement; 3]| {
        let a = forms.alpha.eval(&pt).expect("arity");
        let b = forms.beta.eval(&pt).expect("arity");
        field.quadratic_solution_count(a, b) as u64
    };
    total += fiber([field.zero(), field.zero(), field.one()]);
    for z in field.elements() {
        total += fiber([field.zero(), field.one(), z]);
        for y in field.elements() {
            total += fiber([field.one(), y, z]);
        }
    }
    total
}
