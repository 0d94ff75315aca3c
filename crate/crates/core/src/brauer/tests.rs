use proptest::prelude::*;

use super::*;
use crate::geometry::fixtures::{q_alpha, q_beta, Q_FOURFOLD};
use crate::geometry::{k3_from_fourfold, QuadricBundleData};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    r(n, 1)
}

fn surface() -> K3Surface {
    k3_from_fourfold(&QuadricBundleData::from_fourfold_text(0, Q_FOURFOLD).unwrap()).unwrap()
}

fn algebra() -> QuaternionAlgebra {
    QuaternionAlgebra { alpha: q_alpha(), beta: q_beta() }
}

fn p1() -> SurfacePoint {
    SurfacePoint::Rational { xyz: [15, 15, 16].map(BigInt::from), w: BigInt::from(13752) }
}

fn p2() -> SurfacePoint {
    SurfacePoint::real(&surface(), [int(1), int(0), int(1)]).unwrap()
}

fn all_places_sum(a: &BigRational, b: &BigRational) -> Invariant {
    relevant_places(a, b).unwrap().into_iter().map(|p| hilbert_symbol(a, b, p).unwrap()).sum()
}

#[test]
fn hamilton_quaternions() {
    let m1 = int(-1);
    assert_eq!(hilbert_symbol(&m1, &m1, Place::Real).unwrap(), Invariant::Half);
    assert_eq!(hilbert_symbol(&m1, &m1, Place::Prime(2)).unwrap(), Invariant::Half);
    for p in [3, 5, 7, 11, 13] {
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Prime(p)).unwrap(), Invariant::Zero);
        assert_eq!(hilbert_symbol_by_search(&m1, &m1, p), Invariant::Zero);
    }
    assert_eq!(hilbert_symbol_by_search(&m1, &m1, 2), Invariant::Half);
    assert!(hilbert_symbol(&int(0), &m1, Place::Real).is_err());
}

#[test]
fn small_symbol_table() {
    // (2, 3)_3 = -1, (3, 3)_3 = (-1/3) = -1, (5, 3)_3 = (5/3) = -1, (p, p)_p = (-1/p).
    assert!(hilbert_symbol(&int(2), &int(3), Place::Prime(3)).unwrap().is_half());
    assert!(hilbert_symbol(&int(3), &int(3), Place::Prime(3)).unwrap().is_half());
    assert!(!hilbert_symbol(&int(5), &int(5), Place::Prime(5)).unwrap().is_half());
    assert!(hilbert_symbol(&int(2), &int(5), Place::Prime(2)).unwrap().is_half());
    assert!(!hilbert_symbol(&int(2), &int(7), Place::Prime(2)).unwrap().is_half());
    assert_eq!(prime_factors(&BigInt::from(75852)).unwrap(), vec![2, 3, 7, 43]);
}

#[test]
fn evaluation_at_reference_points() {
    let a = algebra();
    let (x, y) = evaluate_algebra(&a, &p1()).unwrap();
    assert_eq!(x, r(2276, 4 * 91 * 91));
    assert_eq!(y, r(-75852, 91 * 2276));
    let (x, y) = evaluate_algebra(&a, &p2()).unwrap();
    assert_eq!(x, r(-3, 36));
    assert_eq!(y, r(-1, 3));
    assert_eq!(local_invariant(&a, &p1(), Place::Real).unwrap(), Invariant::Zero);
    assert_eq!(local_invariant(&a, &p2(), Place::Real).unwrap(), Invariant::Half);
    assert!(local_invariant(&a, &p2(), Place::Prime(7)).is_err());
    let (x, y) = evaluate_algebra(&a, &p1()).unwrap();
    for p in [2, 3, 5, 7, 11] {
        assert_eq!(local_invariant(&a, &p1(), Place::Prime(p)).unwrap(), hilbert_symbol_by_search(&x, &y, p), "p = {p}");
    }
    let constant = QuaternionAlgebra { alpha: RationalFunction::parse(3, "3").unwrap(), beta: RationalFunction::parse(3, "-5").unwrap() };
    assert_eq!(evaluate_algebra(&constant, &p1()).unwrap(), (int(3), int(-5)));
}

#[test]
fn points_on_the_surface() {
    let s = surface();
    p1().check(&s).unwrap();
    p2().check(&s).unwrap();
    let bad = SurfacePoint::Rational { xyz: [15, 15, 16].map(BigInt::from), w: BigInt::from(13751) };
    assert!(bad.check(&s).is_err());
    assert!(search_rational_points(&s, 0, 1).unwrap().is_empty());
    let hits = search_rational_points(&s, 16, 2).unwrap();
    assert!(hits.iter().any(|h| (h.x, h.y, h.z) == (15, 15, 16) && h.w == "13752" && h.signs == 2));
    for h in &hits {
        h.to_point().check(&s).unwrap();
    }
    assert_eq!(search_rational_points(&s, 16, 1).unwrap(), hits);
    assert!(search_rational_points(&K3Surface::from_texts(0, "x^3", "y^6").unwrap(), 3, 1).is_err());
}

#[test]
fn verdict_on_reference_points() {
    let a = algebra();
    let v = obstruction_verdict(&a, &p1(), &p2()).unwrap();
    assert_eq!(v.verdict, Verdict::Obstructed);
    assert_eq!(v.hybrid_sum, Invariant::Half);
    assert_eq!(v.rational_sum, Invariant::Zero);
    assert_eq!(v.invariants[&Place::Real], Invariant::Zero);
    assert_eq!(v.real_point_invariant, Invariant::Half);
    let same = obstruction_verdict(&a, &p1(), &p1()).unwrap();
    assert_eq!(same.verdict, Verdict::NotObstructed);
    let positive = QuaternionAlgebra { alpha: RationalFunction::parse(3, "2").unwrap(), beta: RationalFunction::parse(3, "7").unwrap() };
    let v2 = obstruction_verdict(&positive, &p1(), &p2()).unwrap();
    assert_eq!(v2.real_point_invariant, Invariant::Zero);
    assert_eq!(v2.verdict, Verdict::NotObstructed);
    let json = serde_json::to_string(&v).unwrap();
    let back: VerdictRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, v);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["verdict"], "OBSTRUCTED");
    assert_eq!(value["hybrid_sum"], "1/2");
    assert_eq!(value["invariants"]["inf"], "0");
    assert_eq!(QuaternionAlgebra::from_text(&v.algebra).unwrap(), a);
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-400i64..400, 1i64..60).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| r(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]
    #[test]
    fn symbol_laws(a in arb_rational(), a2 in arb_rational(), b in arb_rational(), k in arb_rational()) {
        prop_assert_eq!(all_places_sum(&a, &b), Invariant::Zero);
        let mut places = relevant_places(&(&a * &a2), &b).unwrap();
        places.extend(relevant_places(&a, &b).unwrap());
        places.extend([Place::Prime(3), Place::Prime(5)]);
        for p in places {
            let s = |x: &BigRational, y: &BigRational| hilbert_symbol(x, y, p).unwrap();
            prop_assert_eq!(s(&a, &b), s(&b, &a));
            prop_assert_eq!(s(&(&a * &a2), &b), s(&a, &b) + s(&a2, &b));
            prop_assert_eq!(s(&a, &-a.clone()), Invariant::Zero);
            prop_assert_eq!(s(&(&a * &k * &k), &b), s(&a, &b));
        }
    }

    #[test]
    fn symbol_matches_solvability_search(a in arb_rational(), b in arb_rational(), pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        prop_assert_eq!(hilbert_symbol(&a, &b, Place::Prime(p)).unwrap(), hilbert_symbol_by_search(&a, &b, p));
    }
}

#[test]
fn invariant_arithmetic() {
    assert_eq!(Invariant::Half + Invariant::Half, Invariant::Zero);
    assert_eq!([Invariant::Half, Invariant::Zero, Invariant::Half, Invariant::Half].into_iter().sum::<Invariant>(), Invariant::Half);
    assert_eq!("inf".parse::<Place>().unwrap(), Place::Real);
    assert!("9".parse::<Place>().is_err());
}
