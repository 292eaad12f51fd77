//! Critical points, critical orbits and the discriminant of `p_n - t q_n`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::roots::{rational_roots, root_multiplicity};
use crate::algebra::{resultant_qt_formal, BigRational, PolyFp, PolyQ, PolyQt};
use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::{ProjValue, RationalMapQ, ReducedMap};

/// Largest prime for which critical points mod `p` are found by exhaustive
/// root search.
pub const MAX_MOD_ROOT_SEARCH: u64 = 1 << 20;

/// Largest Sylvester matrix used for discriminants of iterates.
const MAX_DISC_MATRIX: usize = 256;

/// Where a critical point sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CritLocus {
    Rational(BigRational),
    Infinity,
    /// The roots of a monic irreducible-over-`Q`-or-not factor without
    /// rational roots, all sharing one ramification index.
    Irrational(PolyQ),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub locus: CritLocus,
    /// Local degree `e >= 2` of the map at the point.
    pub ramification: usize,
}

impl CriticalPoint {
    /// Number of geometric points this entry stands for.
    pub fn count(&self) -> usize {
        match &self.locus {
            CritLocus::Irrational(f) => f.degree().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn as_proj(&self) -> Option<ProjValue> {
        match &self.locus {
            CritLocus::Rational(r) => Some(ProjValue::Finite(r.clone())),
            CritLocus::Infinity => Some(ProjValue::Infinity),
            CritLocus::Irrational(_) => None,
        }
    }
}

impl fmt::Display for CriticalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.locus {
            CritLocus::Rational(r) => write!(f, "{r} (e={})", self.ramification),
            CritLocus::Infinity => write!(f, "inf (e={})", self.ramification),
            CritLocus::Irrational(g) => write!(f, "roots of {} (e={})", g.render("x"), self.ramification),
        }
    }
}

/// `p' q - p q'`, whose zeros are the finite critical points of `p/q`.
pub fn wronskian(p: &PolyQ, q: &PolyQ) -> PolyQ {
    &(&p.derivative() * q) - &(p * &q.derivative())
}

/// All critical points of the map. Finite ones come from the squarefree
/// decomposition of the Wronskian, `infinity` from the conjugate
/// `1/phi(1/x)`.
pub fn critical_points(map: &RationalMapQ) -> Vec<CriticalPoint> {
    let mut rational = Vec::new();
    let mut irrational = Vec::new();
    let w = wronskian(map.num(), map.den());
    for (factor, mult) in w.squarefree_decomposition() {
        let e = mult + 1;
        let roots = rational_roots(&factor).unwrap_or_default();
        let mut residual = factor.clone();
        for r in &roots {
            residual = residual
                .div_exact(&PolyQ::new(vec![-r.clone(), BigRational::one()]))
                .expect("rational root divides its factor");
            rational.push(CriticalPoint { locus: CritLocus::Rational(r.clone()), ramification: e });
        }
        if residual.degree().unwrap_or(0) > 0 {
            irrational.push(CriticalPoint { locus: CritLocus::Irrational(residual.monic()), ramification: e });
        }
    }
    rational.sort_by(|a, b| match (&a.locus, &b.locus) {
        (CritLocus::Rational(x), CritLocus::Rational(y)) => x.cmp(y),
        _ => std::cmp::Ordering::Equal,
    });
    let d = map.degree();
    let (rp, rq) = (map.num().reverse(d), map.den().reverse(d));
    let at_inf = root_multiplicity(&wronskian(&rq, &rp), &BigRational::zero());
    let mut out = rational;
    out.extend(irrational);
    if at_inf > 0 {
        out.push(CriticalPoint { locus: CritLocus::Infinity, ramification: at_inf + 1 });
    }
    out
}

/// `sum (e - 1)` over critical points, counted geometrically. Equals
/// `2d - 2` in characteristic zero.
pub fn riemann_hurwitz_tally(points: &[CriticalPoint]) -> usize {
    points.iter().map(|c| c.count() * (c.ramification - 1)).sum()
}

/// The rational critical points used for collision testing by default.
/// `infinity` is dropped for polynomials, where it is a fixed critical point
/// and collides with itself trivially.
pub fn default_collision_set(map: &RationalMapQ) -> Result<Vec<ProjValue>> {
    let mut out = Vec::new();
    for cp in critical_points(map) {
        match cp.as_proj() {
            Some(ProjValue::Infinity) if map.is_polynomial() => {}
            Some(v) => out.push(v),
            None => {
                return Err(Error::UnsupportedPoint(format!(
                    "critical point {cp} is irrational; use the modular collision test"
                )))
            }
        }
    }
    Ok(out)
}

/// An equality `phi^m(a) = phi^n(b)` with `(a, m) != (b, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision<P> {
    pub a: P,
    pub b: P,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalOrbitReport {
    pub depth: usize,
    pub points: Vec<ProjValue>,
    /// `orbits[i][m - 1] = phi^m(points[i])`.
    pub orbits: Vec<Vec<ProjValue>>,
    /// First collision in lexicographic order of `(a, m, b, n)`.
    pub violation: Option<Collision<ProjValue>>,
}

impl CriticalOrbitReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn first_collision<P: Clone + PartialEq>(points: &[P], orbits: &[Vec<P>]) -> Option<Collision<P>> {
    for (ia, oa) in orbits.iter().enumerate() {
        for (m, va) in oa.iter().enumerate() {
            for (ib, ob) in orbits.iter().enumerate().skip(ia) {
                let start = if ib == ia { m + 1 } else { 0 };
                for (n, vb) in ob.iter().enumerate().skip(start) {
                    if va == vb {
                        return Some(Collision { a: points[ia].clone(), b: points[ib].clone(), m: m + 1, n: n + 1 });
                    }
                }
            }
        }
    }
    None
}

fn value_bits(v: &ProjValue) -> u64 {
    match v {
        ProjValue::Finite(r) => r.numer().bits().max(r.denom().bits()),
        ProjValue::Infinity => 0,
    }
}

/// Iterates each point `depth` times exactly over `Q` and looks for
/// `phi^m(a) = phi^n(b)`, `1 <= m, n <= depth`, `(a, m) != (b, n)`.
pub fn collision_test(
    map: &RationalMapQ,
    depth: usize,
    points: &[ProjValue],
    limits: &Limits,
) -> Result<CriticalOrbitReport> {
    if depth == 0 {
        return Err(Error::Domain("collision depth must be at least 1".into()));
    }
    let mut orbits = Vec::with_capacity(points.len());
    for a in points {
        let mut orbit = Vec::with_capacity(depth);
        let mut z = a.clone();
        for _ in 0..depth {
            z = map.eval(&z);
            if value_bits(&z) > limits.max_coeff_bits {
                return Err(Error::Resource { cap: "orbit height bits", limit: limits.max_coeff_bits as u128 });
            }
            orbit.push(z.clone());
        }
        orbits.push(orbit);
    }
    let violation = first_collision(points, &orbits);
    Ok(CriticalOrbitReport { depth, points: points.to_vec(), orbits, violation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModVerdict {
    /// Some tested prime shows no collision (or none was tested).
    NoObstructionFound,
    /// Every tested prime shows a collision among reduced critical orbits.
    CollisionAtEveryPrime,
}

impl fmt::Display for ModVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModVerdict::NoObstructionFound => "no obstruction found",
            ModVerdict::CollisionAtEveryPrime => "collision mod p at every tested prime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCollision {
    pub p: u64,
    /// Critical points of the reduction in `P^1(F_p)` index form.
    pub critical: Vec<ProjPoint>,
    pub collision: Option<Collision<ProjPoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModCollisionReport {
    pub depth: usize,
    pub tested: Vec<PrimeCollision>,
    /// Primes skipped with the reason.
    pub skipped: Vec<(u64, String)>,
    pub verdict: ModVerdict,
}

fn wronskian_fp(p: &PolyFp, q: &PolyFp) -> PolyFp {
    p.derivative().mul_unchecked(q).sub_unchecked(&p.mul_unchecked(&q.derivative()))
}

/// Collision evidence from the reductions of the map. Only refutes: a
/// collision at every tested prime suggests one over `Q`, the absence of
/// collisions certifies nothing.
pub fn collision_test_mod(map: &RationalMapQ, depth: usize, primes: &[u64]) -> Result<ModCollisionReport> {
    if depth == 0 {
        return Err(Error::Domain("collision depth must be at least 1".into()));
    }
    let d = map.degree();
    let mut tested = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        if p <= d as u64 {
            skipped.push((p, "p <= degree".to_string()));
            continue;
        }
        if p > MAX_MOD_ROOT_SEARCH {
            skipped.push((p, "too large for root search".to_string()));
            continue;
        }
        let red = match ReducedMap::new(map, p) {
            Ok(r) => r,
            Err(Error::BadReduction { .. }) => {
                skipped.push((p, "bad reduction".to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let w = wronskian_fp(&red.num(), &red.den());
        if w.is_zero() {
            skipped.push((p, "derivative vanishes mod p".to_string()));
            continue;
        }
        let mut critical: Vec<ProjPoint> = w.roots_brute_force().into_iter().map(ProjPoint::finite).collect();
        if !map.is_polynomial() && w.degree().unwrap_or(0) < 2 * d - 2 {
            critical.push(ProjPoint::infinity(p));
        }
        let mut orbits = Vec::with_capacity(critical.len());
        for &a in &critical {
            let mut z = a;
            let mut orbit = Vec::with_capacity(depth);
            for _ in 0..depth {
                z = red.eval_point(z)?;
                orbit.push(z);
            }
            orbits.push(orbit);
        }
        let collision = first_collision(&critical, &orbits);
        tested.push(PrimeCollision { p, critical, collision });
    }
    let verdict = if !tested.is_empty() && tested.iter().all(|t| t.collision.is_some()) {
        ModVerdict::CollisionAtEveryPrime
    } else {
        ModVerdict::NoObstructionFound
    };
    Ok(ModCollisionReport { depth, tested, skipped, verdict })
}

/// Decides whether `0` is preperiodic under `x^d + c`.
///
/// Stops on a repeat (preperiodic), on `|z| > |c| + 2` (the orbit escapes to
/// infinity in the real topology), or on `den(z)^d` not dividing `den(c)`
/// (some prime `l` has `d v_l(z) < v_l(c)`, and the `l`-adic valuation then
/// decreases forever). Orbits avoiding all three lie in a finite set.
pub fn preperiodic_unicritical(d: usize, c: &BigRational) -> Result<bool> {
    if d < 2 {
        return Err(Error::Domain(format!("unicritical degree must be at least 2, got {d}")));
    }
    let bound = c.abs() + BigRational::from_integer(2.into());
    let cden = c.denom().clone();
    let mut seen = HashSet::new();
    let mut z = BigRational::zero();
    loop {
        if !seen.insert(z.clone()) {
            return Ok(true);
        }
        if z.abs() > bound {
            return Ok(false);
        }
        if !(&cden % z.denom().pow(d as u32)).is_zero() {
            return Ok(false);
        }
        z = num_traits::pow(z, d) + c;
    }
}

/// Discriminant data for `p_n(x) - t q_n(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub n: usize,
    /// `Res_x(p_n' q_n - p_n q_n', p_n - t q_n)` taken at formal degrees
    /// `2 d^n - 2` and `d^n`.
    pub resultant: PolyQ,
    /// Leading coefficient of `resultant`.
    pub constant: BigRational,
    pub monic: PolyQ,
    /// `prod (phi^m(a) - t)^(d^(n-m) (e_a - 1))` over critical `a` and
    /// `1 <= m <= n` with finite `phi^m(a)`; present when every critical
    /// point is rational or infinity.
    pub product: Option<PolyQ>,
    /// `resultant / product` when that is a constant.
    pub product_constant: Option<BigRational>,
}

impl DiscriminantReport {
    pub fn proportional(&self) -> Option<bool> {
        self.product.as_ref().map(|_| self.product_constant.is_some())
    }
}

fn critical_orbit_values(
    map: &RationalMapQ,
    points: &[CriticalPoint],
    n: usize,
) -> Option<Vec<(BigRational, u64)>> {
    let d = map.degree() as u64;
    let mut out = Vec::new();
    for cp in points {
        let mut z = cp.as_proj()?;
        for m in 1..=n {
            z = map.eval(&z);
            if let ProjValue::Finite(v) = &z {
                out.push((v.clone(), d.pow((n - m) as u32) * (cp.ramification as u64 - 1)));
            }
        }
    }
    Some(out)
}

pub fn discriminant_iterate(map: &RationalMapQ, n: usize, limits: &Limits) -> Result<DiscriminantReport> {
    if n == 0 {
        return Err(Error::Domain("discriminant needs n >= 1".into()));
    }
    let it = map.iterate(n, limits)?;
    let big_d = it.degree;
    if 3 * big_d - 2 > MAX_DISC_MATRIX {
        return Err(Error::Resource { cap: "discriminant matrix size", limit: MAX_DISC_MATRIX as u128 });
    }
    let w = wronskian(&it.num, &it.den);
    if w.is_zero() {
        return Err(Error::Inseparable);
    }
    let fiber = PolyQt::fiber(&it.num, &it.den);
    let resultant = resultant_qt_formal(&PolyQt::from_x_poly(&w), 2 * big_d - 2, &fiber, big_d)?;
    if resultant.is_zero() {
        return Err(Error::Inseparable);
    }
    let constant = resultant.lead().cloned().expect("nonzero");
    let monic = resultant.monic();

    let crit = critical_points(map);
    let product = critical_orbit_values(map, &crit, n).map(|vals| {
        vals.iter().fold(PolyQ::one(), |acc, (v, k)| {
            &acc * &PolyQ::new(vec![v.clone(), -BigRational::one()]).pow(*k as usize)
        })
    });
    let product_constant = product.as_ref().and_then(|prod| {
        let c = resultant.lead().cloned().unwrap() / prod.lead().cloned().unwrap();
        (prod.scale(&c) == resultant).then_some(c)
    });
    Ok(DiscriminantReport { n, resultant, constant, monic, product, product_constant })
}

/// A finite specialization point `t = value` over which `phi^n` ramifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedValue {
    pub value: BigRational,
    /// Exponent of `(value - t)` in the discriminant.
    pub exponent: u64,
}

/// Ramification over the orbit of an irrational critical factor: the
/// values `phi^m(alpha)` for the roots `alpha` of `factor` are the roots of
/// `t_poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicRamification {
    pub factor: PolyQ,
    pub ramification: usize,
    pub m: usize,
    pub exponent: u64,
    pub t_poly: PolyQ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    pub n: usize,
    /// Rational values, ascending, exponents merged.
    pub values: Vec<RamifiedValue>,
    pub symbolic: Vec<SymbolicRamification>,
}

/// The finite `t`-values `phi^m(a)`, `a` critical, `1 <= m <= n`, where the
/// fiber of `phi^n` ramifies, with exponent `d^(n-m) (e_a - 1)`.
pub fn ramified_primes(map: &RationalMapQ, n: usize, limits: &Limits) -> Result<RamificationData> {
    if n == 0 {
        return Err(Error::Domain("ramified_primes needs n >= 1".into()));
    }
    if n > limits.max_iterate_q {
        return Err(Error::Resource { cap: "iterate count over Q", limit: limits.max_iterate_q as u128 });
    }
    let crit = critical_points(map);
    let (rat, irr): (Vec<_>, Vec<_>) = crit.into_iter().partition(|c| c.as_proj().is_some());
    let mut merged: BTreeMap<BigRational, u64> = BTreeMap::new();
    for (v, k) in critical_orbit_values(map, &rat, n).expect("rational points") {
        *merged.entry(v).or_insert(0) += k;
    }
    let d = map.degree() as u64;
    let mut symbolic = Vec::new();
    if !irr.is_empty() {
        for m in 1..=n {
            let it = map.iterate(m, limits)?;
            let fiber = PolyQt::fiber(&it.num, &it.den);
            for cp in &irr {
                let CritLocus::Irrational(f) = &cp.locus else { unreachable!() };
                let k = f.degree().unwrap_or(0);
                let t_poly = resultant_qt_formal(&PolyQt::from_x_poly(f), k, &fiber, it.degree)?;
                symbolic.push(SymbolicRamification {
                    factor: f.clone(),
                    ramification: cp.ramification,
                    m,
                    exponent: d.pow((n - m) as u32) * (cp.ramification as u64 - 1),
                    t_poly: t_poly.monic(),
                });
            }
        }
    }
    Ok(RamificationData {
        n,
        values: merged.into_iter().map(|(value, exponent)| RamifiedValue { value, exponent }).collect(),
        symbolic,
    })
}
