use std::fmt;

use super::modp::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod};
use super::{reduce_rational, PolyQ};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `F_p`, coefficients in ascending degree
/// and reduced into `[0, p)`. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = PolyFp {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    /// Reduction of a rational polynomial; `None` if `p` divides a
    /// coefficient denominator.
    pub fn from_poly_q(f: &PolyQ, p: u64) -> Option<Self> {
        let coeffs = f.coeffs().iter().map(|c| reduce_rational(c, p)).collect::<Option<Vec<u64>>>()?;
        Some(Self::new(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &PolyFp) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(inv_mod(l, self.p).expect("nonzero residue is invertible")),
        }
    }

    pub fn add(&self, rhs: &PolyFp) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn sub(&self, rhs: &PolyFp) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.sub_unchecked(rhs))
    }

    pub fn mul(&self, rhs: &PolyFp) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    /// Euclidean division; errors on a zero divisor or mismatched moduli.
    pub fn div_rem(&self, divisor: &PolyFp) -> Result<(Self, Self)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Degenerate("division by the zero polynomial".into()));
        }
        Ok(self.div_rem_unchecked(divisor))
    }

    pub fn rem(&self, divisor: &PolyFp) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &PolyFp) -> Result<Self> {
        self.check(other)?;
        Ok(self.gcd_unchecked(other))
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn powmod(&self, exp: u128, modulus: &PolyFp) -> Result<Self> {
        self.check(modulus)?;
        if modulus.is_zero() {
            return Err(Error::Degenerate("reduction modulo the zero polynomial".into()));
        }
        Ok(self.powmod_unchecked(exp, modulus))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &PolyFp) -> Result<Self> {
        self.check(inner)?;
        let p = self.p;
        Ok(self.coeffs.iter().rev().fold(Self::zero(p), |acc, &c| {
            acc.mul_unchecked(inner).add_unchecked(&Self::new(p, vec![c]))
        }))
    }

    pub(crate) fn add_unchecked(&self, rhs: &PolyFp) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(p, (0..n).map(|i| add_mod(self.coeff(i), rhs.coeff(i), p)).collect())
    }

    pub(crate) fn sub_unchecked(&self, rhs: &PolyFp) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(p, (0..n).map(|i| sub_mod(self.coeff(i), rhs.coeff(i), p)).collect())
    }

    pub(crate) fn mul_unchecked(&self, rhs: &PolyFp) -> Self {
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(p);
        }
        // Accumulate in u128 and reduce once per output coefficient; the
        // bound below keeps the sum from overflowing.
        let terms = self.coeffs.len().min(rhs.coeffs.len()) as u128;
        let pp = (p as u128 - 1) * (p as u128 - 1);
        if pp.checked_mul(terms).is_some() {
            let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    acc[i + j] += a as u128 * b as u128;
                }
            }
            return Self::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect());
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub(crate) fn div_rem_unchecked(&self, divisor: &PolyFp) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("nonzero divisor");
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = inv_mod(divisor.coeffs[dd], p).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, p);
            if c != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = sub_mod(rem[i + j], mul_mod(c, dc, p), p);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub(crate) fn rem_unchecked(&self, divisor: &PolyFp) -> Self {
        self.div_rem_unchecked(divisor).1
    }

    pub(crate) fn gcd_unchecked(&self, other: &PolyFp) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem_unchecked(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub(crate) fn powmod_unchecked(&self, mut exp: u128, modulus: &PolyFp) -> Self {
        let mut acc = Self::one(self.p).rem_unchecked(modulus);
        let mut base = self.rem_unchecked(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem_unchecked(modulus);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base).rem_unchecked(modulus);
            }
        }
        acc
    }

    /// Roots in `F_p` by exhaustive evaluation. Only sensible for small `p`.
    pub fn roots_brute_force(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp<{}>{:?}", self.p, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_moduli_are_rejected() {
        let a = PolyFp::from_i64(5, &[1, 1]);
        let b = PolyFp::from_i64(7, &[1, 1]);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch { left: 5, right: 7 }));
        assert!(a.mul(&b).is_err());
        assert!(a.gcd(&b).is_err());
        assert!(a.compose(&b).is_err());
        assert!(a.powmod(3, &b).is_err());
    }

    #[test]
    fn normalization_reduces_and_trims() {
        let a = PolyFp::from_i64(5, &[-1, 7, 5, 10]);
        assert_eq!(a.coeffs(), &[4, 2]);
        assert_eq!(a.degree(), Some(1));
    }

    #[test]
    fn division_identity_mod_p() {
        let p = 13;
        let a = PolyFp::from_i64(p, &[3, 0, 7, 1, 12, 5, 9]);
        let b = PolyFp::from_i64(p, &[2, 11, 4]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn fermat_for_polynomials() {
        // x^p = x in F_p[x]/(x^2 + 1) when -1 is a square, i.e. x^2 + 1 splits.
        let f = PolyFp::from_i64(5, &[1, 0, 1]);
        assert_eq!(PolyFp::x(5).powmod(5, &f).unwrap(), PolyFp::x(5));
        let g = PolyFp::from_i64(7, &[1, 0, 1]);
        assert_ne!(PolyFp::x(7).powmod(7, &g).unwrap(), PolyFp::x(7));
        assert_eq!(PolyFp::x(7).powmod(49, &g).unwrap(), PolyFp::x(7));
    }

    #[test]
    fn large_modulus_multiplication() {
        let p = (1u64 << 61) - 1;
        let a = PolyFp::new(p, vec![p - 1, p - 1, p - 1]);
        let sq = a.mul_unchecked(&a);
        assert_eq!(sq.coeffs(), &[1, 2, 3, 2, 1]);
    }

    #[test]
    fn compose_and_derivative() {
        let f = PolyFp::from_i64(5, &[1, 0, 1]);
        assert_eq!(f.compose(&f).unwrap(), PolyFp::from_i64(5, &[2, 0, 2, 0, 1]));
        assert_eq!(f.derivative(), PolyFp::from_i64(5, &[0, 2]));
        // x^5 has zero derivative mod 5
        assert!(PolyFp::from_i64(5, &[0, 0, 0, 0, 0, 1]).derivative().is_zero());
    }
}
