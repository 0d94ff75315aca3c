use super::*;
use crate::brauer::Verdict;
use crate::counting::{fingerprint, CacheEntry};
use crate::geometry::fixtures::Q_FOURFOLD;

const N2: [u64; 12] = [7, 25, 73, 249, 1137, 4273, 16737, 65313, 264385, 1047745, 4203393, 16767105];
const N3: [u64; 12] = [
    11, 119, 758, 6707, 58421, 529472, 4784357, 43059323, 387449246, 3486568169, 31380849731, 282429079832,
];

/// A cache holding `N_5..N_12` so tests only count the small degrees.
fn seeded_cache(tag: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("k3-pipeline-{tag}-{}.json", std::process::id()));
    let _ = std::fs::remove_file(&path);
    let mut cache = CountCache::open(&path).unwrap();
    for (p, counts) in [(2u32, N2), (3, N3)] {
        let fp = fingerprint(&k3_from_fourfold(&fixture_data(p).unwrap()).unwrap());
        for n in 5..=12 {
            cache.insert(CacheEntry { fingerprint: fp.clone(), p, n, count: counts[n - 1], wall_seconds: 0.0 }).unwrap();
        }
    }
    path
}

fn certified(p: u32, cache: &PathBuf) -> PrimeRecord {
    let cfg = CertifyConfig { cache: Some(cache.clone()), ..CertifyConfig::for_prime(p, true) };
    certify(&fixture_data(p).unwrap(), &cfg).unwrap()
}

#[test]
fn generate_is_deterministic() {
    let a = generate(2, 7, DEFAULT_RETRY_CAP).unwrap();
    let b = generate(2, 7, DEFAULT_RETRY_CAP).unwrap();
    assert_eq!(a, b);
    assert!(!k3_from_fourfold(&a.data).unwrap().alpha().is_zero());
    assert!(matches!(generate(5, 7, 10), Err(PipelineError::UnsupportedPrime(5))));
    assert!(matches!(generate(3, 1, 0), Err(PipelineError::RetryCapExceeded(0))));
}

#[test]
fn fixture_records_certify() {
    let cache = seeded_cache("certify");
    let r2 = certified(2, &cache);
    assert_eq!(r2.status, CertifyStatus::Certified);
    assert_eq!(r2.certificate.as_ref().unwrap().discriminant, -5);
    assert_eq!(r2.bound, Some(PicardBound { raw: 2, parity_adjusted: 2 }));
    assert_eq!(r2.counts.prefix(12).unwrap(), N2.to_vec());
    let r3 = certified(3, &cache);
    assert_eq!(r3.status, CertifyStatus::Certified);
    assert_eq!(r3.certificate.as_ref().unwrap().discriminant, -32);
    assert_eq!(r3.charpoly.as_ref().unwrap().sign, -1);
    assert_eq!(r3.coefficients[11], BigInt::from(-1062882));

    let short = certify(&fixture_data(3).unwrap(), &CertifyConfig { max_n: 4, ..CertifyConfig::for_prime(3, false) }).unwrap();
    assert_eq!(short.status, CertifyStatus::NeedsMoreCounts);
    assert_eq!(short.coefficients.len(), 4);

    let rec = assemble(&r2, &r3, 16, 1).unwrap();
    assert_eq!(rec.data.reduce(2).unwrap(), fixture_data(2).unwrap());
    assert_eq!(rec.data.reduce(3).unwrap(), fixture_data(3).unwrap());
    assert_eq!(rec.data, QuadricBundleData::from_fourfold_text(0, Q_FOURFOLD).unwrap());
    let v = rec.verdict.as_ref().unwrap();
    assert_eq!(v.verdict, Verdict::Obstructed);
    assert_eq!(verify(&rec).unwrap(), *v);
    let json = serde_json::to_string(&rec).unwrap();
    let back: PipelineRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rec);

    let none = assemble(&r2, &r3, 0, 1).unwrap();
    assert!(none.verdict.is_none());
    assert!(none.note.unwrap().contains("no rational point"));
    assert!(matches!(assemble(&r2, &short, 16, 1), Err(PipelineError::NotCertified(_))));
    std::fs::remove_file(&cache).unwrap();
}

#[test]
fn generate_then_certify_is_reproducible() {
    let run = || {
        let g = generate(2, 2024, DEFAULT_RETRY_CAP).unwrap();
        let cfg = CertifyConfig { max_n: 6, ..CertifyConfig::for_prime(2, false) };
        (g.clone(), certify(&g.data, &cfg).unwrap().without_timings())
    };
    let (a, b) = (run(), run());
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a.1).unwrap(), serde_json::to_string(&b.1).unwrap());
}
