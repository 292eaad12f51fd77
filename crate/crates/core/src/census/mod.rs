//! Prime sweeps: per-prime censuses of periodic points, streamed in prime
//! order, with summary statistics.

mod preset;
mod sieve;
pub mod store;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{rational_string, BigRational};
use crate::dynamics::build_graph;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::{RationalMapQ, ReducedMap};
use crate::par::Execution;

pub use preset::{preset, Expectation, Preset, PRESET_NAMES};
pub use sieve::primes_in;

/// Primes per work unit.
pub const CHUNK: usize = 64;
/// Work units per flushed batch.
const BATCH_CHUNKS: usize = 64;

/// `p = residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    pub modulus: u64,
    pub residue: u64,
}

impl Congruence {
    pub fn new(modulus: u64, residue: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("congruence modulus must be positive".into()));
        }
        Ok(Congruence { modulus, residue: residue.rem_euclid(modulus as i64) as u64 })
    }

    pub fn admits(&self, p: u64) -> bool {
        p % self.modulus == self.residue
    }
}

impl FromStr for Congruence {
    type Err = Error;

    /// `m:r`, e.g. `27:1` or `4:-1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("bad congruence '{s}' (expected m:r)"));
        let (m, r) = s.split_once(':').ok_or_else(bad)?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        Congruence::new(m, r)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.modulus, self.residue)
    }
}

/// First 16 hex digits of the SHA-256 of the canonical rendering.
pub fn map_hash(map: &RationalMapQ) -> String {
    Sha256::digest(map.render().as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Census of one prime. Statistics are absent at primes of bad reduction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub map_hash: String,
    pub p: u64,
    pub good_reduction: bool,
    pub n_points: u64,
    pub n_periodic: Option<u64>,
    /// Exact `n_periodic / n_points` as `num/den`.
    pub proportion: Option<String>,
    /// Rounded to six places.
    pub proportion_decimal: Option<f64>,
    /// `#phi^k(P^1(F_p))` for `k = 1..=nmax`.
    pub image_sizes: Vec<u64>,
    pub max_tail: Option<u32>,
    pub max_cycle: Option<u32>,
    /// `p mod m`, keyed by `m`.
    pub residues: BTreeMap<u64, u64>,
}

impl SweepRecord {
    pub fn exact_proportion(&self) -> Option<BigRational> {
        self.proportion.as_deref().and_then(crate::algebra::parse_rational)
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Full census of `phi_p`. Fails with [`Error::Invariant`] if some image is
/// smaller than the periodic set.
pub fn census_prime(
    map: &RationalMapQ,
    hash: &str,
    p: u64,
    nmax: usize,
    moduli: &[u64],
    limits: &Limits,
) -> Result<SweepRecord> {
    let residues = moduli.iter().map(|&m| (m, p % m)).collect();
    let red = match ReducedMap::new(map, p) {
        Ok(r) => r,
        Err(Error::BadReduction { .. }) => {
            return Ok(SweepRecord {
                map_hash: hash.to_string(),
                p,
                good_reduction: false,
                n_points: p + 1,
                n_periodic: None,
                proportion: None,
                proportion_decimal: None,
                image_sizes: Vec::new(),
                max_tail: None,
                max_cycle: None,
                residues,
            })
        }
        Err(e) => return Err(e),
    };
    let graph = build_graph(&red, limits)?;
    let n_periodic = graph.periodic_count() as u64;
    let image_sizes: Vec<u64> = graph.image_iterate(nmax).into_iter().map(|s| s as u64).collect();
    if image_sizes.iter().any(|&s| s < n_periodic) {
        return Err(Error::Invariant(format!("an image is smaller than the periodic set at p = {p}")));
    }
    let stats = graph.orbit_stats();
    let prop = BigRational::new(n_periodic.into(), (p + 1).into());
    Ok(SweepRecord {
        map_hash: hash.to_string(),
        p,
        good_reduction: true,
        n_points: p + 1,
        n_periodic: Some(n_periodic),
        proportion_decimal: Some(round6(prop.to_f64().unwrap_or(f64::NAN))),
        proportion: Some(rational_string(&prop)),
        image_sizes,
        max_tail: Some(stats.max_tail),
        max_cycle: Some(stats.max_cycle),
        residues,
    })
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub map: RationalMapQ,
    pub lo: u64,
    pub hi: u64,
    pub filters: Vec<Congruence>,
    /// Moduli for the per-class breakdown and the record annotations; the
    /// filter moduli are always included.
    pub moduli: Vec<u64>,
    pub nmax: usize,
    pub exec: Execution,
    pub limits: Limits,
}

impl SweepConfig {
    pub fn new(map: RationalMapQ, lo: u64, hi: u64) -> Self {
        SweepConfig {
            map,
            lo,
            hi,
            filters: Vec::new(),
            moduli: Vec::new(),
            nmax: 3,
            exec: Execution::default(),
            limits: Limits::default(),
        }
    }

    pub fn all_moduli(&self) -> Vec<u64> {
        let mut m: Vec<u64> = self.filters.iter().map(|c| c.modulus).chain(self.moduli.iter().copied()).collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    /// Primes in range passing every filter, ascending.
    pub fn primes(&self) -> Result<Vec<u64>> {
        if self.lo < 2 {
            return Err(Error::Domain(format!("prime range must start at 2 or above, got {}", self.lo)));
        }
        if self.hi > self.limits.max_graph_prime {
            return Err(Error::Resource { cap: "functional graph prime", limit: self.limits.max_graph_prime as u128 });
        }
        Ok(primes_in(self.lo, self.hi)
            .into_iter()
            .filter(|&p| self.filters.iter().all(|c| c.admits(p)))
            .collect())
    }
}

/// Runs the sweep, handing records to `sink` in ascending prime order.
/// Primes in `skip` are not recomputed. Returns the records produced.
pub fn run_sweep(
    cfg: &SweepConfig,
    skip: &HashSet<u64>,
    mut sink: impl FnMut(&SweepRecord) -> Result<()>,
) -> Result<Vec<SweepRecord>> {
    if cfg.nmax == 0 {
        return Err(Error::Domain("nmax must be at least 1".into()));
    }
    let hash = map_hash(&cfg.map);
    let moduli = cfg.all_moduli();
    let todo: Vec<u64> = cfg.primes()?.into_iter().filter(|p| !skip.contains(p)).collect();
    let mut out = Vec::with_capacity(todo.len());
    for batch in todo.chunks(CHUNK * BATCH_CHUNKS) {
        let chunks: Vec<&[u64]> = batch.chunks(CHUNK).collect();
        let results = cfg.exec.map(&chunks, |chunk| {
            chunk
                .iter()
                .map(|&p| census_prime(&cfg.map, &hash, p, cfg.nmax, &moduli, &cfg.limits))
                .collect::<Result<Vec<_>>>()
        });
        for chunk in results {
            for rec in chunk? {
                sink(&rec)?;
                out.push(rec);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub p: u64,
    pub value: String,
    pub decimal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassStats {
    pub modulus: u64,
    pub residue: u64,
    pub count: usize,
    pub min: String,
    pub mean: String,
    pub max: String,
    pub min_decimal: f64,
    pub mean_decimal: f64,
    pub max_decimal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub map_hash: String,
    pub records: usize,
    pub good: usize,
    pub bad_reduction: usize,
    pub min: Option<String>,
    pub min_decimal: Option<f64>,
    pub argmin_p: Option<u64>,
    pub mean: Option<String>,
    pub mean_decimal: Option<f64>,
    pub max: Option<String>,
    pub max_decimal: Option<f64>,
    pub argmax_p: Option<u64>,
    /// `x -> min { proportion(p) : p >= x }` at the primes where it changes.
    pub liminf_trace: Vec<TracePoint>,
    pub classes: Vec<ClassStats>,
    pub notice: Option<String>,
}

fn dec(r: &BigRational) -> f64 {
    round6(r.to_f64().unwrap_or(f64::NAN))
}

/// Suffix minima of `(p, value)` pairs sorted by `p`, kept where they change.
pub fn liminf_trace(points: &[(u64, BigRational)]) -> Vec<(u64, BigRational)> {
    let mut suffix: Vec<(u64, BigRational)> = Vec::with_capacity(points.len());
    let mut cur: Option<BigRational> = None;
    for (p, v) in points.iter().rev() {
        let m = match &cur {
            Some(c) if c <= v => c.clone(),
            _ => v.clone(),
        };
        cur = Some(m.clone());
        suffix.push((*p, m));
    }
    suffix.reverse();
    let mut out: Vec<(u64, BigRational)> = Vec::new();
    for (p, v) in suffix {
        if out.last().is_none_or(|(_, last)| *last != v) {
            out.push((p, v));
        }
    }
    out
}

pub fn summarize(hash: &str, records: &[SweepRecord], moduli: &[u64]) -> SweepSummary {
    let mut recs: Vec<&SweepRecord> = records.iter().filter(|r| r.map_hash == hash).collect();
    recs.sort_by_key(|r| r.p);
    let good: Vec<(u64, BigRational, &SweepRecord)> = recs
        .iter()
        .filter_map(|r| r.exact_proportion().map(|v| (r.p, v, *r)))
        .collect();
    let bad = recs.len() - good.len();
    let mut summary = SweepSummary {
        map_hash: hash.to_string(),
        records: recs.len(),
        good: good.len(),
        bad_reduction: bad,
        min: None,
        min_decimal: None,
        argmin_p: None,
        mean: None,
        mean_decimal: None,
        max: None,
        max_decimal: None,
        argmax_p: None,
        liminf_trace: Vec::new(),
        classes: Vec::new(),
        notice: None,
    };
    if good.is_empty() {
        summary.notice = Some(if recs.is_empty() {
            "no primes in range after filtering".to_string()
        } else {
            "no prime of good reduction in range".to_string()
        });
        return summary;
    }
    let (mut min_i, mut max_i) = (0, 0);
    let mut total = BigRational::zero();
    for (i, (_, v, _)) in good.iter().enumerate() {
        if *v < good[min_i].1 {
            min_i = i;
        }
        if *v > good[max_i].1 {
            max_i = i;
        }
        total += v;
    }
    let mean = total / BigRational::from_integer(good.len().into());
    summary.min = Some(rational_string(&good[min_i].1));
    summary.min_decimal = Some(dec(&good[min_i].1));
    summary.argmin_p = Some(good[min_i].0);
    summary.max = Some(rational_string(&good[max_i].1));
    summary.max_decimal = Some(dec(&good[max_i].1));
    summary.argmax_p = Some(good[max_i].0);
    summary.mean_decimal = Some(dec(&mean));
    summary.mean = Some(rational_string(&mean));
    let pairs: Vec<(u64, BigRational)> = good.iter().map(|(p, v, _)| (*p, v.clone())).collect();
    summary.liminf_trace = liminf_trace(&pairs)
        .into_iter()
        .map(|(p, v)| TracePoint { p, decimal: dec(&v), value: rational_string(&v) })
        .collect();
    for &m in moduli {
        let mut by_class: BTreeMap<u64, Vec<&BigRational>> = BTreeMap::new();
        for (p, v, _) in &good {
            by_class.entry(p % m).or_default().push(v);
        }
        for (residue, vals) in by_class {
            let min = vals.iter().min().copied().unwrap().clone();
            let max = vals.iter().max().copied().unwrap().clone();
            let mean = vals.iter().fold(BigRational::zero(), |a, v| a + *v)
                / BigRational::from_integer(vals.len().into());
            summary.classes.push(ClassStats {
                modulus: m,
                residue,
                count: vals.len(),
                min_decimal: dec(&min),
                mean_decimal: dec(&mean),
                max_decimal: dec(&max),
                min: rational_string(&min),
                mean: rational_string(&mean),
                max: rational_string(&max),
            });
        }
    }
    summary
}
