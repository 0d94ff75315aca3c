//! Canonical text form: terms `coef*x^a*y^b` in descending grevlex order,
//! unit coefficients and exponents omitted, joined by ` + ` / ` - `.

use super::coeff::Coeff;
use super::multi::{Monomial, MultiPoly};
use super::PolyError;

pub fn default_names(nvars: usize) -> Vec<String> {
    let fixed: &[&str] = match nvars {
        1 => &["t"],
        2 => &["s", "t"],
        3 => &["x", "y", "z"],
        4 => &["x", "y", "z", "w"],
        6 => &["X1", "X2", "X3", "Y1", "Y2", "Y3"],
        _ => &[],
    };
    if fixed.is_empty() {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    } else {
        fixed.iter().map(|s| s.to_string()).collect()
    }
}

pub fn to_canonical<C: Coeff, S: AsRef<str>>(f: &MultiPoly<C>, names: &[S]) -> String {
    let ring = f.ring();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let (negative, mag) = C::format(ring, c);
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        let is_unit = mag == "1";
        if !is_unit || m.degree() == 0 {
            factors.push(mag);
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].as_ref().to_string()),
                e => factors.push(format!("{}^{}", names[i].as_ref(), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the canonical form (and any reasonable variant with the same
/// grammar: optional spaces, repeated factors, unordered terms).
pub fn parse<C: Coeff, S: AsRef<str>>(ring: &C::Ring, names: &[S], text: &str) -> Result<MultiPoly<C>, PolyError> {
    let nvars = names.len();
    let err = |msg: &str| PolyError::Parse(format!("{msg} in {text:?}"));
    let mut poly = MultiPoly::zero(ring, nvars);
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty input"));
    }
    // Split into signed terms at top-level '+'/'-' (not inside parentheses).
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for (i, &ch) in chars.iter().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if i == 0 {
                    negative = ch == '-';
                    continue;
                }
                if cur.is_empty() {
                    return Err(err("dangling sign"));
                }
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(err("dangling sign"));
    }
    terms.push((negative, cur));

    for (neg, term) in terms {
        let mut coeff = C::one(ring);
        let mut exps = vec![0u32; nvars];
        for factor in split_top_level(&term, '*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            let (base, power) = split_power(&factor).ok_or_else(|| err("bad exponent"))?;
            if let Some(i) = names.iter().position(|n| n.as_ref() == base) {
                exps[i] += power;
            } else {
                // Rationals are written `a/b`, which the '*' split leaves intact.
                let c = C::parse(ring, base).ok_or_else(|| err("bad coefficient"))?;
                for _ in 0..power {
                    coeff = C::mul(ring, &coeff, &c);
                }
            }
        }
        if neg {
            coeff = C::neg(ring, &coeff);
        }
        poly.add_term(Monomial::from_exponents(&exps), coeff);
    }
    Ok(poly)
}

fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

/// `base^e` at top level; a parenthesized base keeps its inner `^`.
fn split_power(factor: &str) -> Option<(&str, u32)> {
    if factor.starts_with('(') {
        let close = factor.rfind(')')?;
        let rest = &factor[close + 1..];
        if rest.is_empty() {
            return Some((factor, 1));
        }
        return Some((&factor[..=close], rest.strip_prefix('^')?.parse().ok()?));
    }
    match factor.split_once('^') {
        Some((b, e)) => Some((b, e.parse().ok()?)),
        None => Some((factor, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FieldDescriptor, FieldElement};
    use crate::mpoly::coeff::{Field, Integers, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn canonical_examples() {
        let names = default_names(3);
        let f: MultiPoly<BigInt> = parse(&Integers, &names, "z^3 - 2*x*y*z + 3*x^2*y + 1").unwrap();
        assert_eq!(to_canonical(&f, &names), "3*x^2*y - 2*x*y*z + z^3 + 1");
        let g: MultiPoly<BigRational> = parse(&Rationals, &names, "-3/4*x + y").unwrap();
        assert_eq!(to_canonical(&g, &names), "-3/4*x + y");
        let zero: MultiPoly<BigInt> = parse(&Integers, &names, "x - x").unwrap();
        assert_eq!(to_canonical(&zero, &names), "0");
    }

    #[test]
    fn rejects_garbage() {
        let names = default_names(3);
        assert!(parse::<BigInt, _>(&Integers, &names, "x + ").is_err());
        assert!(parse::<BigInt, _>(&Integers, &names, "q^2").is_err());
        assert!(parse::<BigInt, _>(&Integers, &names, "").is_err());
    }

    #[test]
    fn extension_field_coefficients() {
        let f: Field = Arc::new(FieldDescriptor::new(3, 2).unwrap());
        let names = default_names(2);
        let p: MultiPoly<FieldElement> = parse(&f, &names, "(2*a+1)*s^2 + a*t + 2").unwrap();
        let text = to_canonical(&p, &names);
        assert_eq!(parse::<FieldElement, _>(&f, &names, &text).unwrap(), p);
    }

    proptest! {
        #[test]
        fn integer_text_round_trip(terms in proptest::collection::vec((-50i64..50, 0u32..4, 0u32..4, 0u32..4, 0u32..3), 0..8)) {
            let names = default_names(4);
            let f = MultiPoly::<BigInt>::from_terms(&Integers, 4, terms.iter().map(|&(c, a, b, d, e)| (BigInt::from(c), vec![a, b, d, e])));
            let text = to_canonical(&f, &names);
            prop_assert_eq!(parse::<BigInt, _>(&Integers, &names, &text).unwrap(), f);
        }

        #[test]
        fn rational_text_round_trip(terms in proptest::collection::vec((-20i64..20, 1i64..9, 0u32..3, 0u32..3, 0u32..3), 0..6)) {
            let names = default_names(3);
            let f = MultiPoly::<BigRational>::from_terms(&Rationals, 3, terms.iter().map(|&(n, d, a, b, c)| (BigRational::new(n.into(), d.into()), vec![a, b, c])));
            let text = to_canonical(&f, &names);
            prop_assert_eq!(parse::<BigRational, _>(&Rationals, &names, &text).unwrap(), f);
        }
    }
}
