use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::RationalMapQ;
use crate::algebra::modp::{add_mod, inv_mod, mul_mod, MAX_MODULUS};
use crate::algebra::PolyFp;
use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// The reduction `phi_p` of a map with good reduction at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMap {
    p: u64,
    degree: usize,
    hom_num: Vec<u64>,
    hom_den: Vec<u64>,
    /// Precomputed inverse of the denominator when it is a nonzero constant.
    const_den_inv: Option<u64>,
}

/// `(p_n, q_n)` modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratePairFp {
    pub n: usize,
    pub degree: usize,
    pub num: PolyFp,
    pub den: PolyFp,
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn horner(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| add_mod(mul_mod(acc, x, p), a, p))
}

impl ReducedMap {
    /// Reduces `map` modulo the prime `p`; fails at primes of bad reduction.
    pub fn new(map: &RationalMapQ, p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_MODULUS {
            return Err(Error::Domain(format!("modulus {p} outside [2, 2^63)")));
        }
        if !map.good_reduction(p) {
            return Err(Error::BadReduction { prime: p });
        }
        let hom_num: Vec<u64> = map.hom_num().iter().map(|c| reduce_bigint(c, p)).collect();
        let hom_den: Vec<u64> = map.hom_den().iter().map(|c| reduce_bigint(c, p)).collect();
        let const_den_inv = if hom_den[1..].iter().all(|&c| c == 0) {
            inv_mod(hom_den[0], p)
        } else {
            None
        };
        Ok(ReducedMap { p, degree: map.degree(), hom_num, hom_den, const_den_inv })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num(&self) -> PolyFp {
        PolyFp::new(self.p, self.hom_num.clone())
    }

    pub fn den(&self) -> PolyFp {
        PolyFp::new(self.p, self.hom_den.clone())
    }

    /// `[P(X,Y) : Q(X,Y)]`, normalized.
    pub fn eval_point(&self, pt: ProjPoint) -> Result<ProjPoint> {
        let p = self.p;
        let idx = pt.index();
        let (pv, qv) = if idx == p {
            (self.hom_num[self.degree], self.hom_den[self.degree])
        } else if idx < p {
            if let Some(inv) = self.const_den_inv {
                return Ok(ProjPoint::finite(mul_mod(horner(&self.hom_num, idx, p), inv, p)));
            }
            (horner(&self.hom_num, idx, p), horner(&self.hom_den, idx, p))
        } else {
            return Err(Error::Domain(format!("point index {idx} outside P^1(F_{p})")));
        };
        match (pv, qv) {
            (0, 0) => Err(Error::Invariant(format!(
                "both coordinates vanish at point {idx} mod {p}; good reduction was violated"
            ))),
            (_, 0) => Ok(ProjPoint::infinity(p)),
            (a, b) => Ok(ProjPoint::finite(mul_mod(a, inv_mod(b, p).expect("nonzero"), p))),
        }
    }

    /// `phi_p^n` as polynomials mod `p`, via the homogeneous recursion.
    pub fn iterate(&self, n: usize, limits: &Limits) -> Result<IteratePairFp> {
        if n > limits.max_iterate_fp {
            return Err(Error::Resource { cap: "iterate count mod p", limit: limits.max_iterate_fp as u128 });
        }
        let degree = (0..n).try_fold(1usize, |acc, _| {
            acc.checked_mul(self.degree).filter(|&v| v <= limits.max_iterate_degree)
        });
        if degree.is_none() {
            return Err(Error::Resource { cap: "iterate degree mod p", limit: limits.max_iterate_degree as u128 });
        }
        let p = self.p;
        let mut cur = IteratePairFp { n: 0, degree: 1, num: PolyFp::x(p), den: PolyFp::one(p) };
        for _ in 0..n {
            let mut a_pows = vec![PolyFp::one(p)];
            let mut b_pows = vec![PolyFp::one(p)];
            for k in 1..=self.degree {
                a_pows.push(a_pows[k - 1].mul_unchecked(&cur.num));
                b_pows.push(b_pows[k - 1].mul_unchecked(&cur.den));
            }
            let sub = |c: &[u64]| {
                c.iter().enumerate().fold(PolyFp::zero(p), |acc, (i, &ci)| {
                    if ci == 0 {
                        acc
                    } else {
                        acc.add_unchecked(&a_pows[i].mul_unchecked(&b_pows[self.degree - i]).scale(ci))
                    }
                })
            };
            cur = IteratePairFp {
                n: cur.n + 1,
                degree: cur.degree * self.degree,
                num: sub(&self.hom_num),
                den: sub(&self.hom_den),
            };
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples_mod_5() {
        let m = RationalMapQ::parse("(x^2+1)/x").unwrap();
        let r = ReducedMap::new(&m, 5).unwrap();
        assert_eq!(r.eval_point(ProjPoint::finite(0)).unwrap(), ProjPoint::infinity(5));
        assert_eq!(r.eval_point(ProjPoint::infinity(5)).unwrap(), ProjPoint::infinity(5));
        assert_eq!(r.eval_point(ProjPoint::finite(2)).unwrap(), ProjPoint::finite(0));
    }

    #[test]
    fn bad_reduction_refused() {
        let m = RationalMapQ::parse("(x^2-1)/(2*x)").unwrap();
        assert_eq!(ReducedMap::new(&m, 2), Err(Error::BadReduction { prime: 2 }));
        assert!(ReducedMap::new(&m, 3).is_ok());
    }

    #[test]
    fn iterate_mod_p_matches_reduced_iterate_over_q() {
        let lim = Limits::default();
        for expr in ["x^2+1", "(x^2+1)/x", "1/x^2", "(x^4 - 8*x)/(4*x^3 + 4)", "(2*x^3 + x + 1)/(x^2 + 3)"] {
            let m = RationalMapQ::parse(expr).unwrap();
            for p in [5u64, 7, 11, 101] {
                let Ok(r) = ReducedMap::new(&m, p) else { continue };
                for n in 0..=3 {
                    let over_q = m.iterate(n, &lim).unwrap();
                    let red = |f: &crate::algebra::PolyQ| {
                        PolyFp::new(
                            p,
                            f.coeffs().iter().map(|c| {
                                assert!(c.is_integer());
                                reduce_bigint(&c.to_integer(), p)
                            }).collect(),
                        )
                    };
                    let fp = r.iterate(n, &lim).unwrap();
                    assert_eq!(fp.num, red(&over_q.num), "{expr} p={p} n={n}");
                    assert_eq!(fp.den, red(&over_q.den), "{expr} p={p} n={n}");
                }
            }
        }
    }

    #[test]
    fn iterate_degree_cap() {
        let m = RationalMapQ::parse("x^16 + 1").unwrap();
        let r = ReducedMap::new(&m, 7).unwrap();
        assert!(matches!(r.iterate(4, &Limits::default()), Err(Error::Resource { .. })));
    }
}
