use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expr::parse_rational_function;
use crate::algebra::{resultant_homogeneous, BigRational, PolyQ};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A point of `P^1(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjValue {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for ProjValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjValue::Finite(r) => write!(f, "{r}"),
            ProjValue::Infinity => f.write_str("inf"),
        }
    }
}

/// A rational map of degree `d >= 2` over `Q`, stored as coprime integer
/// polynomials with joint content one and positive leading coefficient of
/// the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapQ {
    num: PolyQ,
    den: PolyQ,
    degree: usize,
    /// Coefficients of `X^i Y^(d-i)` in `P(X, Y) = Y^d p(X/Y)`.
    hom_num: Vec<BigInt>,
    hom_den: Vec<BigInt>,
    resultant: BigInt,
}

/// `(p_n, q_n)` with `phi^n = p_n / q_n`, built from the homogeneous
/// recursion `P_n = P(P_{n-1}, Q_{n-1})`, `Q_n = Q(P_{n-1}, Q_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratePair {
    pub n: usize,
    /// Formal degree `d^n` of the homogenized pair.
    pub degree: usize,
    pub num: PolyQ,
    pub den: PolyQ,
}

impl IteratePair {
    /// The pair for `outer ∘ inner`, with `outer` taken at its formal degree.
    pub fn compose(&self, inner: &IteratePair) -> IteratePair {
        IteratePair {
            n: self.n + inner.n,
            degree: self.degree * inner.degree,
            num: homogeneous_substitute(self.num.coeffs(), self.degree, &inner.num, &inner.den),
            den: homogeneous_substitute(self.den.coeffs(), self.degree, &inner.num, &inner.den),
        }
    }
}

/// `sum_i c_i a^i b^(D-i)` for a form of formal degree `D`.
fn homogeneous_substitute(c: &[BigRational], formal: usize, a: &PolyQ, b: &PolyQ) -> PolyQ {
    let mut a_pows = vec![PolyQ::one()];
    let mut b_pows = vec![PolyQ::one()];
    for k in 1..=formal {
        a_pows.push(&a_pows[k - 1] * a);
        b_pows.push(&b_pows[k - 1] * b);
    }
    let mut acc = PolyQ::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        acc = &acc + &(&a_pows[i] * &b_pows[formal - i]).scale(ci);
    }
    acc
}

fn max_coeff_bits(p: &PolyQ) -> u64 {
    p.coeffs()
        .iter()
        .map(|c| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

impl RationalMapQ {
    /// Builds a normalized map from a numerator and denominator over `Q`.
    pub fn from_parts(num: PolyQ, den: PolyQ, limits: &Limits) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("zero denominator polynomial".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let degree = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if degree < 2 || num.is_zero() {
            return Err(Error::NotDynamical { degree: if num.is_zero() { 0 } else { degree } });
        }
        if degree > limits.max_map_degree {
            return Err(Error::Resource { cap: "map degree", limit: limits.max_map_degree as u128 });
        }

        // Clear denominators jointly, then divide out the joint content.
        let lcm = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |p: &PolyQ| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        };
        let (mut ni, mut di) = (to_int(&num), to_int(&den));
        let mut content = ni.iter().chain(&di).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if di.last().is_some_and(Signed::is_negative) {
            content = -content;
        }
        ni.iter_mut().for_each(|c| *c /= &content);
        di.iter_mut().for_each(|c| *c /= &content);

        let pad = |v: &[BigInt]| {
            let mut h = v.to_vec();
            h.resize(degree + 1, BigInt::zero());
            h
        };
        let (hom_num, hom_den) = (pad(&ni), pad(&di));
        let resultant = resultant_homogeneous(&hom_num, &hom_den, degree);
        if resultant.is_zero() {
            return Err(Error::Invariant("coprime forms with zero resultant".into()));
        }
        Ok(RationalMapQ {
            num: PolyQ::from_bigints(&ni),
            den: PolyQ::from_bigints(&di),
            degree,
            hom_num,
            hom_den,
            resultant,
        })
    }

    /// Parses a map expression in `x` (see [`super::expr`]).
    pub fn parse(expr: &str) -> Result<Self> {
        Self::parse_with(expr, &Limits::default())
    }

    pub fn parse_with(expr: &str, limits: &Limits) -> Result<Self> {
        let f = parse_rational_function(expr, limits.max_parse_exponent)?;
        Self::from_parts(f.num, f.den, limits)
    }

    /// The map from duplication on `y^2 = x^3 + a x + b`:
    /// `(x^4 - 2a x^2 - 8b x + a^2) / (4(x^3 + a x + b))`.
    pub fn lattes2(a: &BigRational, b: &BigRational) -> Result<Self> {
        let four = BigRational::from_integer(4.into());
        let disc = &four * a * a * a + BigRational::from_integer(27.into()) * b * b;
        if disc.is_zero() {
            return Err(Error::InvalidCurve);
        }
        let num = PolyQ::new(vec![
            a * a,
            -BigRational::from_integer(8.into()) * b,
            -BigRational::from_integer(2.into()) * a,
            BigRational::zero(),
            BigRational::one(),
        ]);
        let den = PolyQ::new(vec![&four * b, &four * a, BigRational::zero(), four]);
        Self::from_parts(num, den, &Limits::default())
    }

    /// Dickson polynomial `D_d` with `D_d(x + 1/x) = x^d + x^(-d)`.
    pub fn chebyshev(d: usize) -> Result<Self> {
        let mut prev = PolyQ::from_ints(&[2]);
        let mut cur = PolyQ::x();
        for _ in 1..d {
            let next = &(&PolyQ::x() * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        Self::from_parts(cur, PolyQ::one(), &Limits::default())
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn hom_num(&self) -> &[BigInt] {
        &self.hom_num
    }

    pub fn hom_den(&self) -> &[BigInt] {
        &self.hom_den
    }

    /// Resultant of the integer-normalized homogeneous forms `P`, `Q`.
    pub fn resultant(&self) -> &BigInt {
        &self.resultant
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Whether the reduction mod `p` is a degree-`d` self-map of `P^1(F_p)`.
    ///
    /// With integer forms of content one, `max(|P(a,1)|_p, |Q(a,1)|_p) = 1`
    /// for every `a` in the algebraic closure exactly when the reduced forms
    /// have no common zero on `P^1`, which is the statement that `p` does not
    /// divide `Res(P, Q)`.
    pub fn good_reduction(&self, p: u64) -> bool {
        !(&self.resultant % BigInt::from(p)).is_zero()
    }

    /// `phi^n` as a pair `(p_n, q_n)`; `n = 0` gives the identity `(x, 1)`.
    pub fn iterate(&self, n: usize, limits: &Limits) -> Result<IteratePair> {
        if n > limits.max_iterate_q {
            return Err(Error::Resource { cap: "iterate count over Q", limit: limits.max_iterate_q as u128 });
        }
        let mut cur = IteratePair { n: 0, degree: 1, num: PolyQ::x(), den: PolyQ::one() };
        let one_step = self.as_iterate();
        for _ in 0..n {
            cur = one_step.compose(&cur);
            let bits = max_coeff_bits(&cur.num).max(max_coeff_bits(&cur.den));
            if bits > limits.max_coeff_bits {
                return Err(Error::Resource { cap: "coefficient bit size", limit: limits.max_coeff_bits as u128 });
            }
        }
        Ok(cur)
    }

    pub fn as_iterate(&self) -> IteratePair {
        IteratePair { n: 1, degree: self.degree, num: self.num.clone(), den: self.den.clone() }
    }

    /// Evaluates the map on `P^1(Q)`.
    pub fn eval(&self, pt: &ProjValue) -> ProjValue {
        let (pv, qv) = match pt {
            ProjValue::Finite(a) => (self.num.eval(a), self.den.eval(a)),
            ProjValue::Infinity => (
                BigRational::from_integer(self.hom_num[self.degree].clone()),
                BigRational::from_integer(self.hom_den[self.degree].clone()),
            ),
        };
        if qv.is_zero() {
            ProjValue::Infinity
        } else {
            ProjValue::Finite(pv / qv)
        }
    }

    /// Canonical text, re-parseable to an identical map: `<num>` for monic
    /// denominators of degree zero, `(<num>)/(<den>)` otherwise.
    pub fn render(&self) -> String {
        if self.den == PolyQ::one() {
            self.num.render("x")
        } else {
            format!("({})/({})", self.num.render("x"), self.den.render("x"))
        }
    }

    /// Ascending coefficient dump.
    pub fn render_debug(&self) -> String {
        let dump = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        format!(
            "num=[{}] den=[{}] d={} res={}",
            dump(&self.hom_num[..self.num.coeffs().len()]),
            dump(&self.hom_den[..self.den.coeffs().len()]),
            self.degree,
            self.resultant
        )
    }
}

impl fmt::Display for RationalMapQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> PolyQ {
        PolyQ::from_ints(v)
    }

    #[test]
    fn parse_examples() {
        let m = RationalMapQ::parse("x^2+1").unwrap();
        assert_eq!((m.num(), m.den(), m.degree()), (&ints(&[1, 0, 1]), &ints(&[1]), 2));
        let m = RationalMapQ::parse("(x^2+1)/x").unwrap();
        assert_eq!((m.num(), m.den(), m.degree()), (&ints(&[1, 0, 1]), &ints(&[0, 1]), 2));
        let m = RationalMapQ::parse("x^3 - 3*x").unwrap();
        assert_eq!((m.num(), m.den(), m.degree()), (&ints(&[0, -3, 0, 1]), &ints(&[1]), 3));
    }

    #[test]
    fn low_degree_is_rejected() {
        assert_eq!(RationalMapQ::parse("3*x + 1"), Err(Error::NotDynamical { degree: 1 }));
        assert_eq!(RationalMapQ::parse("x^2/x"), Err(Error::NotDynamical { degree: 1 }));
        assert_eq!(RationalMapQ::parse("0*x^2"), Err(Error::NotDynamical { degree: 0 }));
        assert!(matches!(RationalMapQ::parse("x^17"), Err(Error::Resource { .. })));
    }

    #[test]
    fn normalization_clears_denominators() {
        let m = RationalMapQ::parse("(x^2/2 - 1/2)/x").unwrap();
        assert_eq!(m.num(), &ints(&[-1, 0, 1]));
        assert_eq!(m.den(), &ints(&[0, 2]));
        let m2 = RationalMapQ::parse("(-3*x^2 + 3)/(-6*x)").unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn good_reduction_examples() {
        let m = RationalMapQ::parse("x^2+1").unwrap();
        assert_eq!(m.resultant(), &BigInt::from(1));
        assert!([2u64, 3, 5, 7, 1_000_003].iter().all(|&p| m.good_reduction(p)));
        let m = RationalMapQ::parse("(x^2-1)/(2*x)").unwrap();
        assert_eq!(m.resultant().magnitude(), &4u32.into());
        assert!(!m.good_reduction(2));
        assert!([3u64, 5, 7, 11].iter().all(|&p| m.good_reduction(p)));
    }

    #[test]
    fn iterate_examples() {
        let lim = Limits::default();
        let m = RationalMapQ::parse("x^2+1").unwrap();
        let it = m.iterate(2, &lim).unwrap();
        assert_eq!((it.num, it.den), (ints(&[2, 0, 2, 0, 1]), ints(&[1])));

        let m = RationalMapQ::parse("1/x^2").unwrap();
        let it = m.iterate(2, &lim).unwrap();
        assert_eq!((it.num, it.den), (ints(&[0, 0, 0, 0, 1]), ints(&[1])));

        let m = RationalMapQ::parse("(x^2+1)/x").unwrap();
        let it = m.iterate(2, &lim).unwrap();
        let p = ints(&[1, 0, 1]);
        assert_eq!(it.num, &p.pow(2) + &ints(&[0, 0, 1]));
        assert_eq!(it.den, &ints(&[0, 1]) * &p);
        assert_eq!(it.degree, 4);
    }

    #[test]
    fn iterate_caps() {
        let m = RationalMapQ::parse("x^2+1").unwrap();
        assert!(matches!(m.iterate(7, &Limits::default()), Err(Error::Resource { .. })));
        let tight = Limits { max_coeff_bits: 8, ..Limits::default() };
        assert!(matches!(m.iterate(5, &tight), Err(Error::Resource { cap: "coefficient bit size", .. })));
    }

    #[test]
    fn lattes_examples() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let m = RationalMapQ::lattes2(&q(0), &q(1)).unwrap();
        assert_eq!(m, RationalMapQ::parse("(x^4 - 8*x)/(4*x^3 + 4)").unwrap());
        assert_eq!(m.degree(), 4);
        let m = RationalMapQ::lattes2(&q(-1), &q(0)).unwrap();
        assert_eq!(m, RationalMapQ::parse("(x^4 + 2*x^2 + 1)/(4*x^3 - 4*x)").unwrap());
        assert_eq!(RationalMapQ::lattes2(&q(0), &q(0)), Err(Error::InvalidCurve));
    }

    #[test]
    fn chebyshev_polynomials() {
        assert_eq!(RationalMapQ::chebyshev(2).unwrap(), RationalMapQ::parse("x^2 - 2").unwrap());
        assert_eq!(RationalMapQ::chebyshev(3).unwrap(), RationalMapQ::parse("x^3 - 3*x").unwrap());
        assert_eq!(
            RationalMapQ::chebyshev(6).unwrap(),
            RationalMapQ::parse("x^6 - 6*x^4 + 9*x^2 - 2").unwrap()
        );
    }

    #[test]
    fn eval_on_projective_line() {
        let m = RationalMapQ::parse("(x^2+1)/x").unwrap();
        assert_eq!(m.eval(&ProjValue::Finite(BigRational::zero())), ProjValue::Infinity);
        assert_eq!(m.eval(&ProjValue::Infinity), ProjValue::Infinity);
        let m = RationalMapQ::parse("1/x^2").unwrap();
        assert_eq!(m.eval(&ProjValue::Infinity), ProjValue::Finite(BigRational::zero()));
        let m = RationalMapQ::parse("(2*x^2+1)/(x^2+3)").unwrap();
        assert_eq!(m.eval(&ProjValue::Infinity), ProjValue::Finite(BigRational::from_integer(2.into())));
    }

    #[test]
    fn render_debug_dump() {
        let m = RationalMapQ::parse("(x^2+1)/x").unwrap();
        assert_eq!(m.render(), "(x^2 + 1)/(x)");
        assert!(m.render_debug().starts_with("num=[1, 0, 1] den=[0, 1] d=2"));
    }
}
