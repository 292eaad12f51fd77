//! Frobenius cycle types on the fibers `p_n(x) - a q_n(x) = 0` over `F_p`
//! and the empirical fixed-point proportion they give.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{count_distinct_roots, distinct_degree_factor, is_squarefree, BigRational, DegreePattern, PolyFp};
use crate::dynamics::build_graph;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::{RationalMapQ, ReducedMap};
use crate::par::Execution;
use crate::wreath::{fix_distribution, total_variation, FixedPointSpectrum};

/// Primes up to this size are swept over every `a` by default.
pub const EXHAUSTIVE_LIMIT: u64 = 50_000;

/// Below this many unramified samples the report carries a warning.
pub const MIN_SAMPLES: usize = 30;

/// The family of fibers of `phi_p^n`.
#[derive(Clone, Debug)]
pub struct FiberFamily {
    p: u64,
    n: usize,
    degree: usize,
    num: PolyFp,
    den: PolyFp,
}

impl FiberFamily {
    pub fn new(map: &RationalMapQ, p: u64, n: usize, limits: &Limits) -> Result<Self> {
        let red = ReducedMap::new(map, p)?;
        let it = red.iterate(n, limits)?;
        Ok(FiberFamily { p, n, degree: it.degree, num: it.num, den: it.den })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Formal degree `d^n`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `p_n(x) - a q_n(x)` over `F_p`.
    pub fn fiber(&self, a: u64) -> PolyFp {
        self.num.sub_unchecked(&self.den.scale(a))
    }

    fn classify(&self, a: u64) -> (PolyFp, bool, bool) {
        let f = self.fiber(a);
        let dropped = f.degree() != Some(self.degree);
        let ramified = dropped || !is_squarefree(&f);
        (f, dropped, ramified)
    }

    /// Cycle type of Frobenius at `t = a`.
    pub fn cycle_type(&self, a: u64) -> CycleTypeSample {
        let a = a % self.p;
        let (f, degree_drop, ramified) = self.classify(a);
        let pattern = if ramified { None } else { distinct_degree_factor(&f).ok() };
        let linear_count = match &pattern {
            Some(pat) => pat.count(1),
            None => count_distinct_roots(&f),
        };
        CycleTypeSample { a, pattern, linear_count, ramified, degree_drop }
    }

    /// Just the root count and ramification, without the full factorization.
    pub fn root_count(&self, a: u64) -> (usize, bool) {
        let (f, _, ramified) = self.classify(a % self.p);
        (count_distinct_roots(&f), ramified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTypeSample {
    pub a: u64,
    /// Degrees of the irreducible factors with their counts; `None` when
    /// ramified.
    pub pattern: Option<DegreePattern>,
    /// Distinct roots in `F_p`.
    pub linear_count: usize,
    pub ramified: bool,
    /// The fiber has a point at infinity, so the affine polynomial has lower
    /// degree than `d^n`.
    pub degree_drop: bool,
}

pub fn frobenius_cycle_type(map: &RationalMapQ, p: u64, n: usize, a: u64, limits: &Limits) -> Result<CycleTypeSample> {
    Ok(FiberFamily::new(map, p, n, limits)?.cycle_type(a))
}

/// How to choose the specializations `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    /// `size` draws of `a`, uniform with replacement, from a seeded ChaCha
    /// stream.
    Random { size: usize, seed: u64 },
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`], random above.
    Auto { size: usize, seed: u64 },
}

impl Sampling {
    fn resolve(self, p: u64) -> Sampling {
        match self {
            Sampling::Auto { .. } if p <= EXHAUSTIVE_LIMIT => Sampling::Exhaustive,
            Sampling::Auto { size, seed } => Sampling::Random { size, seed },
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobReport {
    pub p: u64,
    pub n: usize,
    pub degree: usize,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub sampled: usize,
    pub unramified: usize,
    pub ramified: usize,
    /// Unramified `a` whose fiber has an `F_p`-point.
    pub with_root: usize,
    /// `with_root / unramified`: the proportion of Frobenius elements with a
    /// fixed point.
    pub empirical_fpp: BigRational,
    /// Fraction of all sampled `a`, ramified included, with an affine root.
    pub affine_fpp: BigRational,
    /// Unramified `a` by number of distinct roots.
    pub histogram: BTreeMap<usize, u64>,
    /// `#phi^n(P^1(F_p)) / (p + 1)`, when the functional graph is in budget.
    pub image_proportion: Option<BigRational>,
    /// `|empirical_fpp - image_proportion| <= (ramified + 2)/p`; only
    /// meaningful for exhaustive runs.
    pub image_agrees: Option<bool>,
    pub warnings: Vec<String>,
}

impl FrobReport {
    /// Empirical distribution of the root count, indexed by count.
    pub fn distribution(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.degree + 1];
        if self.unramified == 0 {
            return out;
        }
        let total = BigRational::from_integer(self.unramified.into());
        for (&k, &c) in &self.histogram {
            if k < out.len() {
                out[k] = BigRational::from_integer(c.into()) / &total;
            }
        }
        out
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    if b == 0 {
        BigRational::zero()
    } else {
        BigRational::new(a.into(), b.into())
    }
}

/// Samples fibers of `phi_p^n` and tallies which have `F_p`-points.
pub fn empirical_fpp(
    map: &RationalMapQ,
    p: u64,
    n: usize,
    sampling: Sampling,
    exec: Execution,
    limits: &Limits,
) -> Result<FrobReport> {
    let family = FiberFamily::new(map, p, n, limits)?;
    let sampling = sampling.resolve(p);
    let (points, exhaustive, seed): (Vec<u64>, bool, Option<u64>) = match sampling {
        Sampling::Exhaustive => {
            if p > limits.max_graph_prime {
                return Err(Error::Resource { cap: "exhaustive fiber sweep prime", limit: limits.max_graph_prime as u128 });
            }
            ((0..p).collect(), true, None)
        }
        Sampling::Random { size, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ((0..size).map(|_| rng.random_range(0..p)).collect(), false, Some(seed))
        }
        Sampling::Auto { .. } => unreachable!("resolved above"),
    };
    let results = exec.map(&points, |&a| family.root_count(a));

    let mut histogram = BTreeMap::new();
    let (mut ramified, mut with_root, mut affine) = (0usize, 0usize, 0usize);
    for &(roots, ram) in &results {
        if roots > 0 {
            affine += 1;
        }
        if ram {
            ramified += 1;
        } else {
            *histogram.entry(roots).or_insert(0u64) += 1;
            if roots > 0 {
                with_root += 1;
            }
        }
    }
    let unramified = points.len() - ramified;
    let empirical = if n == 0 { BigRational::one() } else { ratio(with_root, unramified) };

    let mut warnings = Vec::new();
    if unramified < MIN_SAMPLES {
        warnings.push(format!("only {unramified} unramified samples; statistics are too small to trust"));
    }
    let (image_proportion, image_agrees) = if exhaustive && p <= limits.max_graph_prime {
        let graph = build_graph(&ReducedMap::new(map, p)?, limits)?;
        let size = if n == 0 { graph.len() } else { graph.image_iterate(n)[n - 1] };
        let img = ratio(size, graph.len());
        let gap = if empirical > img { &empirical - &img } else { &img - &empirical };
        let ok = gap <= ratio(ramified + 2, p as usize);
        if !ok {
            warnings.push(format!("empirical FPP differs from the image proportion by {gap}"));
        }
        (Some(img), Some(ok))
    } else {
        (None, None)
    };

    Ok(FrobReport {
        p,
        n,
        degree: family.degree,
        exhaustive,
        seed,
        sampled: points.len(),
        unramified,
        ramified,
        with_root,
        empirical_fpp: empirical,
        affine_fpp: ratio(affine, points.len()),
        histogram,
        image_proportion,
        image_agrees,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub predicted_fpp: BigRational,
    pub empirical_fpp: BigRational,
    pub predicted: Vec<BigRational>,
    pub empirical: Vec<BigRational>,
    /// Total-variation distance between the root-count histogram and the
    /// fixed-point distribution of `[G]^n`.
    pub tv_distance: BigRational,
}

pub fn compare_to_prediction(report: &FrobReport, spec: &FixedPointSpectrum, limits: &Limits) -> Result<Comparison> {
    let expected = spec.degree().checked_pow(report.n as u32);
    if expected != Some(report.degree) {
        return Err(Error::Domain(format!(
            "spectrum on {} points does not match fibers of degree {}",
            spec.degree(),
            report.degree
        )));
    }
    let predicted: Vec<BigRational> = if report.n == 0 {
        vec![BigRational::zero(), BigRational::one()]
    } else {
        fix_distribution(spec, report.n, limits)?.coeffs().to_vec()
    };
    let empirical = report.distribution();
    let tv_distance = total_variation(&predicted, &empirical);
    let predicted_fpp = BigRational::one() - predicted.first().cloned().unwrap_or_default();
    Ok(Comparison { predicted_fpp, empirical_fpp: report.empirical_fpp.clone(), predicted, empirical, tv_distance })
}
