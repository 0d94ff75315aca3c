//! The end-to-end driver: random fourfolds over `F_2` and `F_3`, Picard
//! rank certification at each prime, the lift to `Q`, and the Brauer-Manin
//! verdict.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brauer::{
    evaluate_algebra, QuaternionAlgebra, hilbert_symbol, obstruction_verdict, search_rational_points, AlgebraText, BrauerError, Place,
    PointHit, SurfacePoint, VerdictRecord,
};
use crate::counting::{
    complete_charpoly, count_series, newton_coefficients, picard_upper_bound, traces_from_counts, CountCache,
    CountConfig, CountError, CountSeries, PicardBound, Strategy, WeilPolynomial,
};
use crate::geometry::fixtures::{C2_FOURFOLD, C3_FOURFOLD};
use crate::geometry::{
    complete_squares, crt_lift, fiber_conic, fourfold_equation, fourfold_smooth, k3_from_fourfold, k3_smooth,
    GeometryError, K3Surface, QuadricBundleData, FORM_NAMES,
};
use crate::lattices::{find_char2_divisor, find_tangent_conic, rank_one_conclusion, LatticeCertificate, LatticeError};
use crate::mpoly::{default_names, to_canonical, Integers, MultiPoly};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("prime {0} is outside the pipeline (2 or 3 only)")]
    UnsupportedPrime(u32),
    #[error("no smooth candidate after {0} draws")]
    RetryCapExceeded(u64),
    #[error("records do not certify Picard rank one: {0}")]
    NotCertified(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

pub const DEFAULT_RETRY_CAP: u64 = 10_000;
pub const DEFAULT_HEIGHT: u32 = 64;

/// Default count budget: `n <= 12` at `p = 2`, `n <= 10` at `p = 3`
/// unless the long run is requested.
pub fn default_max_n(p: u32, long_run: bool) -> usize {
    if p == 3 && !long_run {
        10
    } else {
        12
    }
}

/// The fourfold data of the worked example at `p = 2` or `3`.
pub fn fixture_data(p: u32) -> Result<QuadricBundleData, PipelineError> {
    let text = match p {
        2 => C2_FOURFOLD,
        3 => C3_FOURFOLD,
        _ => return Err(PipelineError::UnsupportedPrime(p)),
    };
    Ok(QuadricBundleData::from_fourfold_text(p, text)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generated {
    pub seed: u64,
    pub retries: u64,
    pub data: QuadricBundleData,
}

fn random_form(rng: &mut ChaCha8Rng, p: u32, degree: u32) -> MultiPoly<BigInt> {
    let mut f = MultiPoly::zero(&Integers, 3);
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            let c = rng.gen_range(0..p);
            if c != 0 {
                f = f.add(&MultiPoly::monomial(&Integers, BigInt::from(c), &[i, j, degree - i - j]));
            }
        }
    }
    f
}

/// Draws the ten forms uniformly from a seeded stream until both the
/// fourfold and its K3 surface are smooth.
pub fn generate(p: u32, seed: u64, retry_cap: u64) -> Result<Generated, PipelineError> {
    if p != 2 && p != 3 {
        return Err(PipelineError::UnsupportedPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for retries in 0..retry_cap {
        let forms: [MultiPoly<BigInt>; 10] = std::array::from_fn(|k| {
            let degree = match FORM_NAMES[k].as_bytes()[0] {
                b'L' => 1,
                b'Q' => 2,
                _ => 3,
            };
            random_form(&mut rng, p, degree)
        });
        let data = QuadricBundleData::new(p, forms)?;
        let surface = k3_from_fourfold(&data)?;
        if k3_smooth(&surface)? && fourfold_smooth(&data)? {
            log::info!("p = {p}: smooth candidate after {retries} rejections");
            return Ok(Generated { seed, retries, data });
        }
    }
    Err(PipelineError::RetryCapExceeded(retry_cap))
}

#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub max_n: usize,
    pub workers: usize,
    pub cache: Option<PathBuf>,
    /// Degree of the field of definition searched for tangent conics.
    pub conic_degree: usize,
    pub strategy: Strategy,
    pub time_limit: Option<Duration>,
}

impl CertifyConfig {
    pub fn for_prime(p: u32, long_run: bool) -> Self {
        CertifyConfig {
            max_n: default_max_n(p, long_run),
            workers: 1,
            cache: None,
            conic_degree: 1,
            strategy: Strategy::GaloisOrbits,
            time_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyStatus {
    /// Lower bound found and upper bound 2.
    Certified,
    NoLowerBound,
    /// Counts do not determine the characteristic polynomial.
    NeedsMoreCounts,
    UpperBoundAboveTwo,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u32,
    pub data: QuadricBundleData,
    pub surface: K3Surface,
    pub certificate: Option<LatticeCertificate>,
    pub counts: CountSeries,
    /// `c_1, ..., c_m` from the available counts.
    #[serde(with = "crate::serde_util::as_strings")]
    pub coefficients: Vec<BigInt>,
    pub charpoly: Option<WeilPolynomial>,
    pub bound: Option<PicardBound>,
    pub status: CertifyStatus,
    pub note: Option<String>,
    /// Wall-clock seconds per stage; not part of the deterministic content.
    pub timings: BTreeMap<String, f64>,
}

impl PrimeRecord {
    /// The record with timings cleared, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        PrimeRecord { timings: BTreeMap::new(), ..self.clone() }
    }
}

/// Lower-bound search, point counts, characteristic polynomial and upper bound.
pub fn certify(data: &QuadricBundleData, cfg: &CertifyConfig) -> Result<PrimeRecord, PipelineError> {
    let p = data.modulus();
    if p != 2 && p != 3 {
        return Err(PipelineError::UnsupportedPrime(p));
    }
    let mut timings = BTreeMap::new();
    let surface = k3_from_fourfold(data)?;

    let start = Instant::now();
    let certificate = if p == 2 {
        find_char2_divisor(&surface)?
    } else {
        find_tangent_conic(&surface, cfg.conic_degree)?.map(|(_, c)| c)
    };
    timings.insert("lower_bound".to_string(), start.elapsed().as_secs_f64());

    let start = Instant::now();
    let mut cache = cfg.cache.as_deref().map(CountCache::open).transpose()?;
    let count_cfg =
        CountConfig { workers: cfg.workers, max_points: None, time_limit: cfg.time_limit, strategy: cfg.strategy };
    let counts = count_series(&surface, cfg.max_n, &count_cfg, cache.as_mut())?;
    timings.insert("counting".to_string(), start.elapsed().as_secs_f64());

    let coefficients = newton_coefficients(&traces_from_counts(&counts, cfg.max_n.min(22))?)?;
    let (charpoly, bound, mut note) = if coefficients.len() >= 12 {
        match complete_charpoly(&coefficients, p) {
            Ok(w) => {
                let b = picard_upper_bound(&w);
                (Some(w), Some(b), None)
            }
            Err(CountError::Ambiguous(msg)) => (None, None, Some(msg)),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None, Some(format!("{} counts; twelve are needed", coefficients.len())))
    };
    let status = if certificate.is_none() {
        CertifyStatus::NoLowerBound
    } else if let Some(b) = bound {
        if b.parity_adjusted == 2 {
            CertifyStatus::Certified
        } else {
            CertifyStatus::UpperBoundAboveTwo
        }
    } else {
        CertifyStatus::NeedsMoreCounts
    };
    if status == CertifyStatus::NoLowerBound {
        note.get_or_insert_with(|| "no curve of the required type; draw another candidate".to_string());
    }
    Ok(PrimeRecord { p, data: data.clone(), surface, certificate, counts, coefficients, charpoly, bound, status, note, timings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub height: u32,
    pub points_found: usize,
    /// Points where the representative `(alpha, beta)` has a zero or pole.
    pub excluded: usize,
    pub rational_point: Option<PointHit>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineRecord {
    pub seed: Option<u64>,
    pub primes: Vec<PrimeRecord>,
    pub rank_one: bool,
    pub fourfold: String,
    pub data: QuadricBundleData,
    pub surface: K3Surface,
    pub sextic: String,
    pub algebra: AlgebraText,
    pub search: SearchReport,
    pub verdict: Option<VerdictRecord>,
    pub note: Option<String>,
    pub timings: BTreeMap<String, f64>,
}

impl PipelineRecord {
    pub fn without_timings(&self) -> Self {
        PipelineRecord {
            primes: self.primes.iter().map(PrimeRecord::without_timings).collect(),
            timings: BTreeMap::new(),
            ..self.clone()
        }
    }
}

/// Small integer points of the real locus, by height then lexicographically.
fn real_candidates(bound: i64) -> Vec<[i64; 3]> {
    let mut v = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            for z in -bound..=bound {
                let first_positive = if x != 0 { x > 0 } else if y != 0 { y > 0 } else { z > 0 };
                if first_positive {
                    v.push([x, y, z]);
                }
            }
        }
    }
    v.sort_by_key(|p| (p.iter().map(|c| c.abs()).max(), *p));
    v
}

/// CRT lift, surface and algebra over `Q`, point search and verdict.
pub fn assemble(
    r2: &PrimeRecord,
    r3: &PrimeRecord,
    height: u32,
    workers: usize,
) -> Result<PipelineRecord, PipelineError> {
    let certified = match (&r2.certificate, &r3.certificate, r2.bound, r3.bound) {
        (Some(c2), Some(c3), Some(b2), Some(b3)) => {
            r2.p == 2 && r3.p == 3 && rank_one_conclusion(c2, c3, b2.parity_adjusted, b3.parity_adjusted)
        }
        _ => false,
    };
    if !certified {
        return Err(PipelineError::NotCertified(format!(
            "statuses {:?} at p = {}, {:?} at p = {}",
            r2.status, r2.p, r3.status, r3.p
        )));
    }
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let data = crt_lift(&r2.data, &r3.data)?;
    let surface = k3_from_fourfold(&data)?;
    let algebra = complete_squares(&fiber_conic(&data))?.algebra;
    timings.insert("lift".to_string(), start.elapsed().as_secs_f64());

    let start = Instant::now();
    let hits = search_rational_points(&surface, height, workers)?;
    timings.insert("search".to_string(), start.elapsed().as_secs_f64());
    let mut excluded = 0;
    let mut chosen = None;
    for h in &hits {
        match evaluate_algebra(&algebra, &h.to_point()) {
            Ok(_) if chosen.is_none() => chosen = Some(h.clone()),
            Ok(_) => {}
            Err(BrauerError::Undefined(_)) => excluded += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let search = SearchReport { height, points_found: hits.len(), excluded, rational_point: chosen.clone() };

    let (verdict, note) = match &chosen {
        None => (None, Some(format!("no rational point found up to height {height}"))),
        Some(h) => {
            let rational = h.to_point();
            let (a, b) = evaluate_algebra(&algebra, &rational)?;
            let inv_rational = hilbert_symbol(&a, &b, Place::Real)?;
            // Prefer a real point whose invariant differs from the rational one.
            let mut fallback = None;
            let mut real = None;
            for c in real_candidates(3) {
                let xyz = c.map(|v| BigRational::from_integer(BigInt::from(v)));
                let Ok(pt) = SurfacePoint::real(&surface, xyz) else { continue };
                let Ok((a, b)) = evaluate_algebra(&algebra, &pt) else { continue };
                if hilbert_symbol(&a, &b, Place::Real)? != inv_rational {
                    real = Some(pt);
                    break;
                }
                fallback.get_or_insert(pt);
            }
            let real = real.or(fallback).unwrap_or_else(|| rational.clone());
            (Some(obstruction_verdict(&algebra, &rational, &real)?), None)
        }
    };
    Ok(PipelineRecord {
        seed: None,
        primes: vec![r2.clone(), r3.clone()],
        rank_one: true,
        fourfold: to_canonical(&fourfold_equation(&data), &default_names(6)),
        sextic: to_canonical(&surface.branch_sextic(), &default_names(3)),
        data,
        surface,
        algebra: algebra.to_text(),
        search,
        verdict,
        note,
        timings,
    })
}

/// Recomputes the verdict from the algebra and points stored in a record.
pub fn verify(record: &PipelineRecord) -> Result<VerdictRecord, PipelineError> {
    let v = record.verdict.as_ref().ok_or_else(|| PipelineError::NotCertified("record has no verdict".into()))?;
    let algebra = QuaternionAlgebra::from_text(&record.algebra)?;
    v.rational_point.check(&record.surface)?;
    v.real_point.check(&record.surface)?;
    Ok(obstruction_verdict(&algebra, &v.rational_point, &v.real_point)?)
}

#[cfg(test)]
mod tests;
