//! Point counts over `F_{p^n}`, Frobenius characteristic polynomials and
//! the resulting Picard rank bounds.

mod cache;
mod charpoly;
mod engine;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ff::FieldDescriptor;
use crate::geometry::{to_field_poly, K3Surface};
use crate::mpoly::Field;

pub use cache::{CacheEntry, CountCache};
pub use charpoly::{
    complete_charpoly, newton_coefficients, picard_upper_bound, traces_from_counts, PicardBound, WeilPolynomial,
};

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("surface must be over a finite prime field")]
    NotFinite,
    #[error("extension degree {0} unsupported")]
    BadDegree(usize),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("missing count for n = {0}")]
    MissingCount(usize),
    #[error("inconsistent counts: {0}")]
    Inconsistent(String),
    #[error("functional-equation sign undetermined: {0}")]
    Ambiguous(String),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every base point is visited.
    #[default]
    Direct,
    /// One `y` per Frobenius orbit, weighted by orbit size; valid because
    /// the surface is defined over the prime field.
    GaloisOrbits,
}

#[derive(Clone, Debug)]
pub struct CountConfig {
    pub workers: usize,
    /// Refuse to start when `q^2 + q + 1` exceeds this many base points.
    pub max_points: Option<u64>,
    pub time_limit: Option<Duration>,
    pub strategy: Strategy,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { workers: 1, max_points: None, time_limit: None, strategy: Strategy::Direct }
    }
}

/// SHA-256 of the surface's canonical text.
pub fn fingerprint(s: &K3Surface) -> String {
    hex::encode(Sha256::digest(s.canonical_text().as_bytes()))
}

fn forms_over(s: &K3Surface, field: &Field) -> engine::Forms {
    let alpha = to_field_poly(s.alpha(), field);
    let beta = to_field_poly(s.beta(), field);
    let disc = alpha.mul(&alpha).sub(&beta.scale(&field.from_int(4)));
    engine::Forms { disc, alpha, beta }
}

/// `#X(F_{p^n})` for `X: w^2 + alpha w + beta = 0` in `P(1,1,1,3)`.
pub fn count_points(s: &K3Surface, n: usize, cfg: &CountConfig) -> Result<u64, CountError> {
    let p = s.modulus();
    if p == 0 {
        return Err(CountError::NotFinite);
    }
    let field: Field = Arc::new(FieldDescriptor::new(p, n).map_err(|_| CountError::BadDegree(n))?);
    let q = field.order();
    let points = q.saturating_mul(q).saturating_add(q + 1);
    if let Some(cap) = cfg.max_points {
        if points > cap {
            return Err(CountError::BudgetExceeded(format!("{points} base points over F_{p}^{n} exceed the cap {cap}")));
        }
    }
    let deadline = cfg.time_limit.map(|d| Instant::now() + d);
    let forms = forms_over(s, &field);
    match engine::Engine::new(&field, forms) {
        Some(e) => {
            let ys = match cfg.strategy {
                Strategy::Direct => engine::YSet::All,
                Strategy::GaloisOrbits => engine::YSet::Orbits,
            };
            e.count(ys, cfg.workers, deadline)
        }
        None => Ok(engine::count_plain(&field, &forms_over(s, &field))),
    }
}

/// Straight enumeration with field arithmetic only; the reference the
/// table-driven engine is tested against.
pub fn count_points_plain(s: &K3Surface, n: usize) -> Result<u64, CountError> {
    let p = s.modulus();
    if p == 0 {
        return Err(CountError::NotFinite);
    }
    let field: Field = Arc::new(FieldDescriptor::new(p, n).map_err(|_| CountError::BadDegree(n))?);
    Ok(engine::count_plain(&field, &forms_over(s, &field)))
}

/// Counts `N_n` indexed by `n`, tied to a surface by fingerprint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub p: u32,
    pub fingerprint: String,
    pub counts: BTreeMap<usize, u64>,
}

impl CountSeries {
    pub fn new(s: &K3Surface) -> Self {
        CountSeries { p: s.modulus(), fingerprint: fingerprint(s), counts: BTreeMap::new() }
    }

    /// `N_1..N_max` in order, failing on the first gap.
    pub fn prefix(&self, max: usize) -> Result<Vec<u64>, CountError> {
        (1..=max).map(|n| self.counts.get(&n).copied().ok_or(CountError::MissingCount(n))).collect()
    }
}

/// Counts `N_1..N_max_n`, reading and writing the cache when given.
pub fn count_series(
    s: &K3Surface,
    max_n: usize,
    cfg: &CountConfig,
    mut cache: Option<&mut CountCache>,
) -> Result<CountSeries, CountError> {
    let mut series = CountSeries::new(s);
    for n in 1..=max_n {
        if let Some(hit) = cache.as_ref().and_then(|c| c.get(&series.fingerprint, n)) {
            series.counts.insert(n, hit);
            continue;
        }
        let start = Instant::now();
        let cfg_n = CountConfig {
            strategy: if n == 1 { Strategy::Direct } else { cfg.strategy },
            ..cfg.clone()
        };
        let value = count_points(s, n, &cfg_n)?;
        let secs = start.elapsed().as_secs_f64();
        log::info!("N_{n} = {value} over F_{}^{n} in {secs:.2}s", s.modulus());
        if let Some(c) = cache.as_mut() {
            c.insert(CacheEntry { fingerprint: series.fingerprint.clone(), p: s.modulus(), n, count: value, wall_seconds: secs })?;
        }
        series.counts.insert(n, value);
    }
    Ok(series)
}

#[cfg(test)]
mod tests;
