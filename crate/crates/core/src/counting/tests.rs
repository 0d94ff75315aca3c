use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::{prop_assert_eq, prop_oneof, proptest, ProptestConfig};
use proptest::strategy::Strategy as Gen;

use super::*;
use crate::mpoly::MultiPoly;
use crate::geometry::fixtures::{int_poly, C2_ALPHA, C2_BETA, C3_SEXTIC};

fn eq14() -> K3Surface {
    K3Surface::from_texts(2, C2_ALPHA, C2_BETA).unwrap()
}

fn eq15() -> K3Surface {
    K3Surface::double_cover(3, &int_poly(3, C3_SEXTIC)).unwrap()
}

fn cfg(workers: usize) -> CountConfig {
    CountConfig { workers, ..CountConfig::default() }
}

/// Affine solutions of `w^2 + alpha w + beta` in `F_q^4` minus the origin,
/// divided by the size of the weighted `F_q^*` orbits.
fn naive(s: &K3Surface, n: usize) -> u64 {
    let field: Field = Arc::new(FieldDescriptor::new(s.modulus(), n).unwrap());
    let eq = to_field_poly(&s.equation(), &field);
    let els: Vec<_> = field.elements().collect();
    let mut hits = 0u64;
    for &x in &els {
        for &y in &els {
            for &z in &els {
                for &w in &els {
                    if eq.eval(&[x, y, z, w]).unwrap().is_zero() {
                        hits += 1;
                    }
                }
            }
        }
    }
    (hits - 1) / (field.order() - 1)
}

#[test]
fn small_counts_match_naive_enumeration() {
    for s in [eq14(), eq15()] {
        let max_n = if s.modulus() == 2 { 3 } else { 2 };
        for n in 1..=max_n {
            let expected = naive(&s, n);
            assert_eq!(count_points(&s, n, &cfg(1)).unwrap(), expected, "p = {}, n = {n}", s.modulus());
            assert_eq!(count_points_plain(&s, n).unwrap(), expected);
        }
    }
}

#[test]
fn published_small_counts() {
    assert_eq!(count_points(&eq14(), 1, &cfg(1)).unwrap(), 7);
    assert_eq!(count_points(&eq14(), 4, &cfg(2)).unwrap(), 249);
    assert_eq!(count_points(&eq15(), 2, &cfg(1)).unwrap(), 119);
}

#[test]
fn engine_matches_plain_and_is_partition_independent() {
    for (s, ns) in [(eq14(), 1..=6), (eq15(), 1..=4)] {
        for n in ns {
            let plain = count_points_plain(&s, n).unwrap();
            for w in [1, 2, 8] {
                assert_eq!(count_points(&s, n, &cfg(w)).unwrap(), plain, "p = {}, n = {n}, workers = {w}", s.modulus());
            }
            let orbits = CountConfig { strategy: Strategy::GaloisOrbits, ..cfg(2) };
            assert_eq!(count_points(&s, n, &orbits).unwrap(), plain);
        }
    }
}

#[test]
fn budget_is_enforced_without_partial_results() {
    let capped = CountConfig { max_points: Some(100), ..cfg(1) };
    assert!(matches!(count_points(&eq14(), 8, &capped), Err(CountError::BudgetExceeded(_))));
    let timed = CountConfig { time_limit: Some(Duration::ZERO), ..cfg(1) };
    assert!(matches!(count_points(&eq15(), 8, &timed), Err(CountError::BudgetExceeded(_))));
}

#[test]
fn traces_and_weil_bounds() {
    let mut cache = CountCache::in_memory();
    for s in [eq14(), eq15()] {
        let series = count_series(&s, 5, &cfg(1), Some(&mut cache)).unwrap();
        let t = traces_from_counts(&series, 5).unwrap();
        let p = BigInt::from(s.modulus());
        for (i, ti) in t.iter().enumerate() {
            assert!(ti.abs() <= BigInt::from(22) * p.pow(i as u32 + 1));
        }
        assert!(traces_from_counts(&series, 6).is_err());
    }
    assert_eq!(cache.entries().len(), 10);
    let t = traces_from_counts(&count_series(&eq14(), 2, &cfg(1), Some(&mut cache)).unwrap(), 2).unwrap();
    assert_eq!(t, vec![BigInt::from(2), BigInt::from(8)]);
    let t = traces_from_counts(&count_series(&eq15(), 1, &cfg(1), None).unwrap(), 1).unwrap();
    assert_eq!(t, vec![BigInt::from(1)]);
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("k3-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.json");
    let _ = std::fs::remove_file(&path);
    {
        let mut c = CountCache::open(&path).unwrap();
        count_series(&eq14(), 3, &cfg(1), Some(&mut c)).unwrap();
    }
    let mut c = CountCache::open(&path).unwrap();
    let fp = fingerprint(&eq14());
    assert_eq!(c.get(&fp, 3), Some(73));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"N\": 25") && text.contains("wall_seconds"));
    let bad = CacheEntry { fingerprint: fp, p: 2, n: 3, count: 74, wall_seconds: 0.0 };
    assert!(matches!(c.insert(bad), Err(CountError::Inconsistent(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn orbit_sizes_partition_units() {
    for (p, n) in [(2u64, 6u32), (3, 4), (5, 2)] {
        let q = p.pow(n);
        let reps = engine::orbit_representatives(p, q);
        assert_eq!(reps.iter().map(|r| r.1 as u64).sum::<u64>(), q - 1);
        assert!(reps.iter().all(|r| n % r.1 == 0));
    }
}

fn arb_surface(p: u32) -> impl Gen<Value = K3Surface> {
    let alpha = proptest::collection::vec(0..p as i64, 10);
    let beta = proptest::collection::vec(0..p as i64, 28);
    (alpha, beta).prop_map(move |(a, b)| {
        let mono = |d: u32| -> Vec<[u32; 3]> {
            let mut v = Vec::new();
            for i in 0..=d {
                for j in 0..=d - i {
                    v.push([i, j, d - i - j]);
                }
            }
            v
        };
        let build = |d: u32, cs: &[i64]| {
            let terms = mono(d).into_iter().zip(cs).map(|(e, &c)| (BigInt::from(c), e.to_vec())).collect::<Vec<_>>();
            MultiPoly::from_terms(&crate::mpoly::Integers, 3, terms)
        };
        let alpha = if p == 2 { build(3, &a) } else { MultiPoly::zero(&crate::mpoly::Integers, 3) };
        K3Surface::new(p, alpha, build(6, &b)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_surfaces_engine_vs_plain(s in prop_oneof![arb_surface(2), arb_surface(3), arb_surface(5)]) {
        let n = if s.modulus() == 2 { 3 } else { 2 };
        let plain = count_points_plain(&s, n).unwrap();
        prop_assert_eq!(count_points(&s, n, &cfg(2)).unwrap(), plain);
        if s.modulus() < 5 {
            prop_assert_eq!(naive(&s, 1), count_points(&s, 1, &cfg(1)).unwrap());
        }
    }
}
