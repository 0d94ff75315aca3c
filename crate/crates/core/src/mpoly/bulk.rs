//! Evaluation of a fixed polynomial at many points of `F_q`: monomials are
//! assembled from tabled powers and summed before a single reduction.

use crate::ff::tables::{PowerTables, Unreduced};
use crate::ff::FieldElement;

use super::multi::MultiPoly;
use super::PolyError;

pub struct BulkEvaluator<'a> {
    tables: &'a PowerTables,
    nvars: usize,
    /// `(coefficient as integer scalar or element, exponents)`.
    terms: Vec<(Scalar, Vec<u32>)>,
}

#[derive(Clone, Copy)]
enum Scalar {
    Prime(u32),
    Element(FieldElement),
}

impl<'a> BulkEvaluator<'a> {
    /// `f` must have coefficients in the field of `tables`.
    pub fn new(f: &MultiPoly<FieldElement>, tables: &'a PowerTables) -> Self {
        let field = tables.field();
        let terms = f
            .terms()
            .map(|(m, c)| {
                let prime = c.coeffs()[1..field.degree()].iter().all(|&d| d == 0);
                let s = if prime { Scalar::Prime(c.constant()) } else { Scalar::Element(*c) };
                (s, m.exponents().iter().map(|&e| e as u32).collect())
            })
            .collect();
        BulkEvaluator { tables, nvars: f.nvars(), terms }
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: point.len() });
        }
        let field = self.tables.field();
        let mut acc = Unreduced::new();
        let mut factors: Vec<FieldElement> = Vec::with_capacity(self.nvars + 1);
        for (s, exps) in &self.terms {
            factors.clear();
            let scalar = match *s {
                Scalar::Prime(k) => k,
                Scalar::Element(e) => {
                    factors.push(e);
                    1
                }
            };
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    factors.push(self.tables.pow(*x, e));
                }
            }
            // Fold all but the last two factors; the final product stays unreduced.
            while factors.len() > 2 {
                let a = factors.pop().unwrap();
                let b = factors.pop().unwrap();
                factors.push(field.mul(a, b));
            }
            match factors.len() {
                0 => acc.add_scaled(field, scalar, field.one()),
                1 => acc.add_scaled(field, scalar, factors[0]),
                _ => acc.add_product(field, scalar, factors[0], factors[1]),
            }
        }
        Ok(acc.reduce(field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDescriptor;
    use crate::mpoly::text::{default_names, parse};
    use crate::mpoly::Field;
    use std::sync::Arc;

    #[test]
    fn agrees_with_direct_evaluation() {
        for (p, n) in [(2, 3), (3, 2), (3, 3), (5, 2)] {
            let field: Field = Arc::new(FieldDescriptor::new(p, n).unwrap());
            let tables = PowerTables::new(&field);
            let f = parse(&field, &default_names(3), "2*x^5*z + x^4*y*z + (a+1)*x^2*y^3*z + y^6 + 2*x*y*z^4 + z^6 + 1").unwrap();
            let bulk = BulkEvaluator::new(&f, &tables);
            let els: Vec<_> = field.elements().collect();
            for (i, &x) in els.iter().enumerate() {
                for &y in els.iter().skip(i % 3).step_by(3) {
                    let z = els[(i * 7 + 1) % els.len()];
                    assert_eq!(bulk.eval(&[x, y, z]).unwrap(), f.eval(&[x, y, z]).unwrap());
                }
            }
        }
    }
}
