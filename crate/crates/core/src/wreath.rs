//! Fixed-point statistics of permutation groups and of their iterated
//! wreath products `[G]^n`.
//!
//! The fixed-point proportion of `[G]^n` depends only on the fixed-point
//! spectrum of `G`: if `g(x) = (1/|G|) sum_pi x^fix(pi)`, then the
//! fixed-point count of `[G]^n` has generating polynomial `g∘g∘…∘g` (`n`
//! times), and `FPP([G]^n) = 1 - g_n(0)`. That gives the recursion
//! `q_(m+1) = 1 - g(1 - q_m)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{BigRational, PolyQ};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::par::Execution;

/// Counts of group elements by number of fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSpectrum {
    degree: usize,
    counts: BTreeMap<usize, u64>,
}

impl FixedPointSpectrum {
    pub fn new(degree: usize, counts: BTreeMap<usize, u64>) -> Result<Self> {
        let counts: BTreeMap<usize, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        if degree == 0 {
            return Err(Error::Domain("spectrum on an empty set".into()));
        }
        if let Some((&k, _)) = counts.iter().find(|(&k, _)| k > degree) {
            return Err(Error::Domain(format!("{k} fixed points on a set of size {degree}")));
        }
        if counts.get(&degree).copied().unwrap_or(0) == 0 {
            return Err(Error::Domain("spectrum lacks the identity (count at k = d)".into()));
        }
        if counts.get(&(degree - 1)).is_some_and(|_| degree >= 2) {
            // A permutation cannot fix all but one point.
            return Err(Error::Domain(format!("no permutation fixes exactly {} points", degree - 1)));
        }
        Ok(FixedPointSpectrum { degree, counts })
    }

    /// `S_d` acting naturally: `C(d, k) * D(d - k)` elements fix exactly `k`
    /// points, with `D` the derangement numbers.
    pub fn symmetric(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("symmetric group needs d >= 2, got {d}")));
        }
        if d > 20 {
            return Err(Error::Resource { cap: "symmetric group degree", limit: 20 });
        }
        let mut der = vec![1u64, 0];
        for m in 2..=d as u64 {
            let next = (m - 1) * (der[m as usize - 1] + der[m as usize - 2]);
            der.push(next);
        }
        let mut binom = vec![1u64; d + 1];
        for k in 1..=d {
            binom[k] = binom[k - 1] * (d - k + 1) as u64 / k as u64;
        }
        let counts = (0..=d).map(|k| (k, binom[k] * der[d - k])).collect();
        Self::new(d, counts)
    }

    /// `C_d` acting regularly by rotations.
    pub fn cyclic(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("cyclic group needs d >= 2, got {d}")));
        }
        Self::new(d, BTreeMap::from([(0, d as u64 - 1), (d, 1)]))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn order(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Burnside: the action is transitive iff the mean number of fixed
    /// points is one.
    pub fn is_transitive(&self) -> bool {
        let fixed: u128 = self.counts.iter().map(|(&k, &c)| k as u128 * c as u128).sum();
        fixed == self.order() as u128
    }

    pub fn fpp(&self) -> BigRational {
        BigRational::one() - BigRational::new(self.count(0).into(), self.order().into())
    }

    pub fn gen_poly(&self) -> FixGenPoly {
        let order = BigInt::from(self.order());
        let mut coeffs = vec![BigRational::zero(); self.degree + 1];
        for (&k, &c) in &self.counts {
            coeffs[k] = BigRational::new(c.into(), order.clone());
        }
        FixGenPoly(PolyQ::new(coeffs))
    }

    /// Parses `S:d`, `C:d` or a literal `d=3;0:2,1:3,3:1`.
    pub fn parse_group(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let size = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Domain(format!("bad group size in '{spec}'")))
        };
        if let Some(rest) = s.strip_prefix("S:") {
            return Self::symmetric(size(rest)?);
        }
        if let Some(rest) = s.strip_prefix("C:") {
            return Self::cyclic(size(rest)?);
        }
        s.parse()
    }
}

impl FromStr for FixedPointSpectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("bad spectrum literal '{s}' (expected d=3;0:2,1:3,3:1)"));
        let (head, body) = s.trim().split_once(';').ok_or_else(bad)?;
        let degree: usize = head
            .trim()
            .strip_prefix("d=")
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let mut counts = BTreeMap::new();
        for entry in body.split(',').filter(|e| !e.trim().is_empty()) {
            let (k, c) = entry.split_once(':').ok_or_else(bad)?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            let c: u64 = c.trim().parse().map_err(|_| bad())?;
            if counts.insert(k, c).is_some() {
                return Err(Error::Domain(format!("duplicate key {k} in '{s}'")));
            }
        }
        Self::new(degree, counts)
    }
}

impl fmt::Display for FixedPointSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.counts.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        write!(f, "d={};{}", self.degree, body.join(","))
    }
}

/// `g(x) = (1/|G|) sum_pi x^fix(pi)`: the distribution of the fixed-point
/// count of a uniformly random group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixGenPoly(pub PolyQ);

impl FixGenPoly {
    pub fn coeffs(&self) -> &[BigRational] {
        self.0.coeffs()
    }

    /// Probability of exactly `k` fixed points.
    pub fn prob(&self, k: usize) -> BigRational {
        self.0.coeff(k)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.eval(x)
    }

    pub fn total(&self) -> BigRational {
        self.0.coeffs().iter().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn fpp(&self) -> BigRational {
        BigRational::one() - self.0.coeff(0)
    }

    /// Expected number of fixed points, `g'(1)`.
    pub fn mean(&self) -> BigRational {
        self.0.derivative().eval(&BigRational::one())
    }
}

fn check_bits(r: &BigRational, limits: &Limits) -> Result<()> {
    if r.denom().bits() > limits.max_fpp_bits {
        return Err(Error::Resource { cap: "exact FPP denominator bits", limit: limits.max_fpp_bits as u128 });
    }
    Ok(())
}

fn step(spec: &FixedPointSpectrum, q: &BigRational) -> BigRational {
    let order = BigRational::from_integer(spec.order().into());
    let base = BigRational::one() - q;
    let mut pows = vec![BigRational::one()];
    for k in 1..=spec.degree {
        let next = &pows[k - 1] * &base;
        pows.push(next);
    }
    let s = spec
        .counts
        .iter()
        .fold(BigRational::zero(), |acc, (&k, &c)| acc + BigRational::from_integer(c.into()) * &pows[k]);
    BigRational::one() - s / order
}

/// Exact `q_1, …, q_n` with `q_m = FPP([G]^m)`.
///
/// Denominators grow geometrically with `m`; the recursion stops with a
/// resource error once they exceed `limits.max_fpp_bits`.
pub fn iterate_fpp(spec: &FixedPointSpectrum, n: usize, limits: &Limits) -> Result<Vec<BigRational>> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let mut q = spec.fpp();
    out.push(q.clone());
    for _ in 1..n {
        q = step(spec, &q);
        check_bits(&q, limits)?;
        out.push(q.clone());
    }
    Ok(out)
}

/// Floating-point version of [`iterate_fpp`], for reporting only.
pub fn iterate_fpp_f64(spec: &FixedPointSpectrum, n: usize) -> Vec<f64> {
    let order = spec.order() as f64;
    let mut q = 1.0 - spec.count(0) as f64 / order;
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        if m > 0 {
            let base = 1.0 - q;
            let s: f64 = spec.counts.iter().map(|(&k, &c)| c as f64 * base.powi(k as i32)).sum();
            q = 1.0 - s / order;
        }
        out.push(q);
    }
    out
}

/// Certified enclosure of an exact FPP value by dyadic rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FppInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl FppInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn round_dyadic(x: &BigRational, bits: u64, up: bool) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let y = x * &scale;
    let r = if up { y.ceil() } else { y.floor() };
    r / scale
}

/// Intervals `[lo_m, hi_m]` containing `q_m` for `m = 1..=n`, for `n` far
/// beyond the reach of exact arithmetic.
///
/// `q -> 1 - g(1 - q)` is nondecreasing on `[0, 1]` because `g` has
/// nonnegative coefficients, so propagating both endpoints and rounding them
/// outward to `precision_bits` keeps the exact value enclosed.
pub fn iterate_fpp_bounds(spec: &FixedPointSpectrum, n: usize, precision_bits: u64) -> Vec<FppInterval> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let q1 = spec.fpp();
    let mut cur = FppInterval {
        lo: round_dyadic(&q1, precision_bits, false),
        hi: round_dyadic(&q1, precision_bits, true),
    };
    out.push(cur.clone());
    for _ in 1..n {
        cur = FppInterval {
            lo: round_dyadic(&step(spec, &cur.lo), precision_bits, false),
            hi: round_dyadic(&step(spec, &cur.hi), precision_bits, true),
        };
        out.push(cur.clone());
    }
    out
}

/// Generating polynomial of the fixed-point count of `[G]^n`.
pub fn fix_distribution(spec: &FixedPointSpectrum, n: usize, limits: &Limits) -> Result<FixGenPoly> {
    if n == 0 {
        return Err(Error::Domain("fix_distribution needs n >= 1".into()));
    }
    let deg = (1..n).try_fold(spec.degree, |acc, _| {
        acc.checked_mul(spec.degree).filter(|&v| v <= limits.max_fix_degree)
    });
    if deg.is_none_or(|d| d > limits.max_fix_degree) {
        return Err(Error::Resource { cap: "fix distribution degree", limit: limits.max_fix_degree as u128 });
    }
    let g = spec.gen_poly();
    let mut cur = g.0.clone();
    for _ in 1..n {
        cur = g.0.compose(&cur);
    }
    Ok(FixGenPoly(cur))
}

/// A permutation group listed element by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGroup {
    degree: usize,
    perms: Vec<Vec<usize>>,
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn invert_perm(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

impl ExplicitGroup {
    /// Validates that the list is a permutation group: identity present,
    /// closed under composition and inverse. Duplicates are removed.
    pub fn new(degree: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut uniq = Vec::new();
        for p in perms {
            if p.len() != degree {
                return Err(Error::Domain(format!("permutation of length {} on {degree} points", p.len())));
            }
            let mut hit = vec![false; degree];
            for &i in &p {
                if i >= degree || std::mem::replace(&mut hit[i], true) {
                    return Err(Error::Domain(format!("{p:?} is not a permutation")));
                }
            }
            if seen.insert(p.clone()) {
                uniq.push(p);
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        if !seen.contains(&id) {
            return Err(Error::Domain("group lacks the identity".into()));
        }
        for a in &uniq {
            if !seen.contains(&invert_perm(a)) {
                return Err(Error::Domain("not closed under inverse".into()));
            }
            for b in &uniq {
                if !seen.contains(&compose_perm(a, b)) {
                    return Err(Error::Domain("not closed under composition".into()));
                }
            }
        }
        Ok(ExplicitGroup { degree, perms: uniq })
    }

    pub fn symmetric(d: usize) -> Result<Self> {
        if !(1..=8).contains(&d) {
            return Err(Error::Domain(format!("explicit symmetric group needs 1 <= d <= 8, got {d}")));
        }
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..d).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        Self::new(d, perms)
    }

    pub fn cyclic(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("cyclic group on an empty set".into()));
        }
        Self::new(d, (0..d).map(|s| (0..d).map(|i| (i + s) % d).collect()).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn spectrum(&self) -> Result<FixedPointSpectrum> {
        let mut counts = BTreeMap::new();
        for p in &self.perms {
            let fix = p.iter().enumerate().filter(|&(i, &j)| i == j).count();
            *counts.entry(fix).or_insert(0u64) += 1;
        }
        FixedPointSpectrum::new(self.degree, counts)
    }
}

/// `|G|^((d^n - 1)/(d - 1))`, the order of `[G]^n`, or `None` on overflow.
fn wreath_order(order: usize, d: usize, n: usize) -> Option<u128> {
    let mut exp: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..n {
        exp = exp.checked_add(pow)?;
        pow = pow.checked_mul(d as u128)?;
    }
    let exp = u32::try_from(exp).ok()?;
    (order as u128).checked_pow(exp)
}

/// Calls `f` on every element of `top[G]`, built from the action rule
/// `sigma(i, j) = (pi(i), tau_i(j))` with point `(i, j)` stored at `i*d + j`.
fn for_each_wreath_element(top: &[usize], g: &ExplicitGroup, mut f: impl FnMut(&[usize])) {
    let d = g.degree;
    let m = top.len();
    let mut choice = vec![0usize; m];
    let mut sigma = vec![0usize; m * d];
    loop {
        for i in 0..m {
            let tau = &g.perms[choice[i]];
            for j in 0..d {
                sigma[i * d + j] = top[i] * d + tau[j];
            }
        }
        f(&sigma);
        // odometer over the bottom choices
        let mut pos = 0;
        loop {
            if pos == m {
                return;
            }
            choice[pos] += 1;
            if choice[pos] < g.perms.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn wreath_levels(g: &ExplicitGroup, n: usize) -> Vec<Vec<usize>> {
    let mut level = g.perms.clone();
    for _ in 1..n {
        let mut next = Vec::new();
        for top in &level {
            for_each_wreath_element(top, g, |s| next.push(s.to_vec()));
        }
        level = next;
    }
    level
}

/// Fixed-point spectrum of `[G]^n` by enumerating every element as an
/// explicit permutation of `d^n` points.
pub fn enumerate_wreath(g: &ExplicitGroup, n: usize, limits: &Limits, exec: Execution) -> Result<FixedPointSpectrum> {
    if n == 0 {
        return Err(Error::Domain("enumerate_wreath needs n >= 1".into()));
    }
    match wreath_order(g.order(), g.degree, n) {
        Some(size) if size <= limits.wreath_budget => {}
        _ => return Err(Error::Resource { cap: "wreath enumeration budget", limit: limits.wreath_budget }),
    }
    if n == 1 {
        return g.spectrum();
    }
    let tops = wreath_levels(g, n - 1);
    let partials = exec.map(&tops, |top| {
        let mut counts = BTreeMap::new();
        for_each_wreath_element(top, g, |sigma| {
            let fix = sigma.iter().enumerate().filter(|&(i, &j)| i == j).count();
            *counts.entry(fix).or_insert(0u64) += 1;
        });
        counts
    });
    let mut counts = BTreeMap::new();
    for part in partials {
        for (k, c) in part {
            *counts.entry(k).or_insert(0) += c;
        }
    }
    FixedPointSpectrum::new(g.degree.pow(n as u32), counts)
}

/// `[G]^n` materialized as an [`ExplicitGroup`]; construction re-checks the
/// group axioms, so this is only for tiny cases.
pub fn wreath_group(g: &ExplicitGroup, n: usize, limits: &Limits) -> Result<ExplicitGroup> {
    match wreath_order(g.order(), g.degree, n) {
        Some(size) if size <= limits.wreath_budget.min(5_000) => {}
        _ => return Err(Error::Resource { cap: "explicit wreath group size", limit: limits.wreath_budget.min(5_000) }),
    }
    ExplicitGroup::new(g.degree.pow(n as u32), wreath_levels(g, n))
}

/// Total-variation distance `1/2 sum_k |a_k - b_k|` between two finite
/// distributions indexed by `k`.
pub fn total_variation(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let s = (0..n).fold(BigRational::zero(), |acc, k| {
        acc + (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).abs()
    });
    s / BigRational::from_integer(2.into())
}

/// Decimal approximation helper for reports.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest `n` with `q_n <= target` according to the certified upper
/// bounds, searching up to `max_n`.
pub fn depth_for_fpp(spec: &FixedPointSpectrum, target: &BigRational, max_n: usize) -> Option<usize> {
    iterate_fpp_bounds(spec, max_n, 128)
        .iter()
        .position(|iv| &iv.hi <= target)
        .map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn symmetric_and_cyclic_spectra() {
        let s3 = FixedPointSpectrum::symmetric(3).unwrap();
        assert_eq!(s3.counts(), &BTreeMap::from([(0, 2), (1, 3), (3, 1)]));
        assert_eq!(s3.fpp(), r(2, 3));
        let c4 = FixedPointSpectrum::cyclic(4).unwrap();
        assert_eq!(c4.counts(), &BTreeMap::from([(0, 3), (4, 1)]));
        assert_eq!(c4.fpp(), r(1, 4));
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        assert_eq!(s2.counts(), &BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(s2.fpp(), r(1, 2));
        assert!(FixedPointSpectrum::symmetric(1).is_err());
        assert!(FixedPointSpectrum::cyclic(1).is_err());
    }

    #[test]
    fn symmetric_spectrum_matches_enumeration() {
        for d in 2..=6 {
            let by_formula = FixedPointSpectrum::symmetric(d).unwrap();
            let by_listing = ExplicitGroup::symmetric(d).unwrap().spectrum().unwrap();
            assert_eq!(by_formula, by_listing);
            assert!(by_formula.is_transitive());
        }
    }

    #[test]
    fn literal_round_trip_and_errors() {
        let s: FixedPointSpectrum = "d=3;0:2,1:3,3:1".parse().unwrap();
        assert_eq!(s, FixedPointSpectrum::symmetric(3).unwrap());
        assert_eq!(s.to_string(), "d=3;0:2,1:3,3:1");
        assert!("d=3;0:2,1:3".parse::<FixedPointSpectrum>().is_err());
        assert!("d=3;0:2,4:1,3:1".parse::<FixedPointSpectrum>().is_err());
        assert!("3;0:2".parse::<FixedPointSpectrum>().is_err());
        assert!("d=3;0:2,2:1,3:1".parse::<FixedPointSpectrum>().is_err());
        assert_eq!(FixedPointSpectrum::parse_group("C:4").unwrap().order(), 4);
        assert_eq!(FixedPointSpectrum::parse_group("S:4").unwrap().order(), 24);
    }

    #[test]
    fn trivial_spectrum_stays_at_one() {
        let t: FixedPointSpectrum = "d=1;1:1".parse().unwrap();
        let q = iterate_fpp(&t, 10, &Limits::default()).unwrap();
        assert!(q.iter().all(|v| v.is_one()));
    }

    #[test]
    fn s2_fpp_sequence() {
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        let q = iterate_fpp(&s2, 3, &Limits::default()).unwrap();
        assert_eq!(q, vec![r(1, 2), r(3, 8), r(39, 128)]);
    }

    #[test]
    fn s3_second_level() {
        let s3 = FixedPointSpectrum::symmetric(3).unwrap();
        let q = iterate_fpp(&s3, 2, &Limits::default()).unwrap();
        assert_eq!(q[1], r(40, 81));
    }

    #[test]
    fn exact_recursion_hits_bit_cap() {
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        let lim = Limits { max_fpp_bits: 1000, ..Limits::default() };
        assert!(matches!(iterate_fpp(&s2, 40, &lim), Err(Error::Resource { .. })));
    }

    #[test]
    fn fix_distribution_s2_level_two() {
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        let g2 = fix_distribution(&s2, 2, &Limits::default()).unwrap();
        assert_eq!(g2.coeffs(), &[r(5, 8), r(0, 1), r(2, 8), r(0, 1), r(1, 8)]);
        let c2 = FixedPointSpectrum::cyclic(2).unwrap();
        for n in 1..=4 {
            assert_eq!(
                fix_distribution(&c2, n, &Limits::default()).unwrap(),
                fix_distribution(&s2, n, &Limits::default()).unwrap()
            );
        }
    }

    #[test]
    fn fix_distribution_degree_cap() {
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        let lim = Limits { max_fix_degree: 64, ..Limits::default() };
        assert!(fix_distribution(&s2, 6, &lim).is_ok());
        assert!(matches!(fix_distribution(&s2, 7, &lim), Err(Error::Resource { .. })));
    }

    #[test]
    fn explicit_group_validation() {
        assert!(ExplicitGroup::new(3, vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert!(ExplicitGroup::new(3, vec![vec![1, 0, 2]]).is_err());
        assert!(ExplicitGroup::new(2, vec![vec![0, 0]]).is_err());
        assert_eq!(ExplicitGroup::cyclic(5).unwrap().order(), 5);
    }

    #[test]
    fn wreath_of_s2_is_a_group_of_order_8() {
        let g = ExplicitGroup::symmetric(2).unwrap();
        let w = wreath_group(&g, 2, &Limits::default()).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.degree(), 4);
    }

    #[test]
    fn enumeration_budget() {
        let g = ExplicitGroup::symmetric(3).unwrap();
        assert!(matches!(
            enumerate_wreath(&g, 3, &Limits::default(), Execution::Serial),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn tv_distance_of_identical_distributions_is_zero() {
        let s3 = FixedPointSpectrum::symmetric(3).unwrap();
        let g = fix_distribution(&s3, 2, &Limits::default()).unwrap();
        assert!(total_variation(g.coeffs(), g.coeffs()).is_zero());
        assert_eq!(total_variation(&[r(1, 1)], &[r(0, 1), r(1, 1)]), r(1, 1));
    }
}
