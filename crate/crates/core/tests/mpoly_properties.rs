use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use k3_core::ff::FieldDescriptor;
use k3_core::mpoly::{default_names, parse, poly_det, to_canonical, Field, Integers, MultiPoly};

fn int_poly() -> impl Strategy<Value = MultiPoly<BigInt>> {
    prop::collection::vec((-9i64..=9, 0u32..4, 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(&Integers, 3), |acc, (c, a, b, d)| {
            acc.add(&MultiPoly::monomial(&Integers, BigInt::from(c), &[a, b, d]))
        })
    })
}

fn point() -> impl Strategy<Value = [BigInt; 3]> {
    prop::array::uniform3(-5i64..=5).prop_map(|p| p.map(BigInt::from))
}

proptest! {
    #[test]
    fn ring_laws(f in int_poly(), g in int_poly(), h in int_poly()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in int_poly(), g in int_poly(), pt in point()) {
        let (a, b) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!(f.mul(&g).eval(&pt).unwrap(), &a * &b);
        prop_assert_eq!(f.add(&g).eval(&pt).unwrap(), a + b);
    }

    #[test]
    fn canonical_text_round_trips(f in int_poly()) {
        let names = default_names(3);
        let text = to_canonical(&f, &names);
        prop_assert_eq!(parse(&Integers, &names, &text).unwrap(), f);
    }

    #[test]
    fn triangular_determinant(d in prop::collection::vec(int_poly(), 3), u in prop::collection::vec(int_poly(), 3)) {
        let zero = MultiPoly::zero(&Integers, 3);
        let m = vec![
            vec![d[0].clone(), u[0].clone(), u[1].clone()],
            vec![zero.clone(), d[1].clone(), u[2].clone()],
            vec![zero.clone(), zero, d[2].clone()],
        ];
        prop_assert_eq!(poly_det(&m).unwrap(), d[0].mul(&d[1]).mul(&d[2]));
    }

    #[test]
    fn frobenius_over_f9(f in int_poly()) {
        let field: Field = Arc::new(FieldDescriptor::new(3, 2).unwrap());
        let fp = f.map_coeffs(&field, |c| field.from_int(i64::try_from(c).unwrap()));
        // With coefficients in F_3, f^3 = f(x^3, y^3, z^3).
        let cubes: Vec<_> = (0..3).map(|i| MultiPoly::var(&field, 3, i).pow(3)).collect();
        prop_assert_eq!(fp.pow(3), fp.substitute(&cubes).unwrap());
    }
}
