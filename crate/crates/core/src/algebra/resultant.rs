//! Resultants as Sylvester determinants, evaluated by Bareiss fraction-free
//! elimination over any integral domain with exact division.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp::{inv_mod, mul_mod, neg_mod, sub_mod};
use super::{BigRational, PolyFp, PolyQ, PolyQt};
use crate::error::{Error, Result};

/// Ring operations needed by Bareiss elimination. `div_exact` is only ever
/// called where the quotient is known to be exact.
pub trait BareissRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, rhs: &Self) -> Self;
    fn sub_elem(&self, rhs: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    fn div_exact_elem(&self, rhs: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero());
        self / rhs
    }
}

impl BareissRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl BareissRing for PolyQ {
    fn zero_like(&self) -> Self {
        PolyQ::zero()
    }
    fn one_like(&self) -> Self {
        PolyQ::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, rhs: &Self) -> Self {
        self.div_exact(rhs)
            .expect("Bareiss division is exact in an integral domain")
    }
}

/// A residue modulo a word-size prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub value: u64,
    pub p: u64,
}

impl BareissRing for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.p, p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.value == 0
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        Fp { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        Fp { value: sub_mod(self.value, rhs.value, self.p), p: self.p }
    }
    fn neg_elem(&self) -> Self {
        Fp { value: neg_mod(self.value, self.p), p: self.p }
    }
    fn div_exact_elem(&self, rhs: &Self) -> Self {
        let inv = inv_mod(rhs.value, self.p).expect("nonzero pivot");
        Fp { value: mul_mod(self.value, inv, self.p), p: self.p }
    }
}

/// Sylvester matrix of `f` (formal degree `m`) and `g` (formal degree `n`),
/// both given in ascending order and zero-padded as needed. Rows hold
/// descending coefficients.
pub fn sylvester_matrix<T: BareissRing>(f: &[T], m: usize, g: &[T], n: usize, zero: &T) -> Vec<Vec<T>> {
    let size = m + n;
    let pad = |c: &[T], deg: usize| -> Vec<T> {
        (0..=deg).rev().map(|i| c.get(i).cloned().unwrap_or_else(|| zero.clone())).collect()
    };
    let fd = pad(f, m);
    let gd = pad(g, n);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + m + 1].clone_from_slice(&fd);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + n + 1].clone_from_slice(&gd);
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss elimination with row pivoting. The empty matrix
/// has determinant `one`.
pub fn bareiss_det<T: BareissRing>(mut a: Vec<Vec<T>>, one: &T) -> T {
    let n = a.len();
    if n == 0 {
        return one.clone();
    }
    let mut negate = false;
    let mut prev = one.clone();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return one.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul_elem(&a[k][k]).sub_elem(&a[i][k].mul_elem(&a[k][j]));
                a[i][j] = v.div_exact_elem(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg_elem()
    } else {
        det
    }
}

/// Resultant in `x` of two elements of `Q[t][x]`, a polynomial in `t`.
pub fn resultant_qt(f: &PolyQt, g: &PolyQt) -> Result<PolyQ> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::Degenerate("resultant of the zero polynomial".into()));
    };
    let zero = PolyQ::zero();
    let mat = sylvester_matrix(f.coeffs(), m, g.coeffs(), n, &zero);
    Ok(bareiss_det(mat, &PolyQ::one()))
}

/// Resultant in `x` with respect to formal degrees `m >= deg f`, `n >= deg g`,
/// i.e. the resultant of the binary forms of those degrees.
pub fn resultant_qt_formal(f: &PolyQt, m: usize, g: &PolyQt, n: usize) -> Result<PolyQ> {
    if f.degree().is_none_or(|k| k > m) || g.degree().is_none_or(|k| k > n) {
        return Err(Error::Degenerate("formal degree below the true degree or zero input".into()));
    }
    let zero = PolyQ::zero();
    let mat = sylvester_matrix(f.coeffs(), m, g.coeffs(), n, &zero);
    Ok(bareiss_det(mat, &PolyQ::one()))
}

/// Resultant of two rational polynomials with respect to their true degrees.
pub fn resultant_q(f: &PolyQ, g: &PolyQ) -> Result<BigRational> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::Degenerate("resultant of the zero polynomial".into()));
    };
    let zero = BigRational::zero();
    let mat = sylvester_matrix(f.coeffs(), m, g.coeffs(), n, &zero);
    Ok(bareiss_det(mat, &BigRational::one()))
}

/// Resultant of two binary forms of common degree `d` with integer
/// coefficients, given as coefficient lists of `X^i Y^(d-i)`.
pub fn resultant_homogeneous(f: &[BigInt], g: &[BigInt], d: usize) -> BigInt {
    let zero = BigInt::zero();
    let mat = sylvester_matrix(f, d, g, d, &zero);
    bareiss_det(mat, &BigInt::one())
}

/// Resultant over `F_p` with respect to formal degrees `m >= deg f`,
/// `n >= deg g`.
pub fn resultant_fp_formal(f: &PolyFp, m: usize, g: &PolyFp, n: usize) -> Result<u64> {
    if f.modulus() != g.modulus() {
        return Err(Error::ModulusMismatch { left: f.modulus(), right: g.modulus() });
    }
    let p = f.modulus();
    let lift = |c: &[u64]| c.iter().map(|&value| Fp { value, p }).collect::<Vec<_>>();
    let zero = Fp { value: 0, p };
    let mat = sylvester_matrix(&lift(f.coeffs()), m, &lift(g.coeffs()), n, &zero);
    Ok(bareiss_det(mat, &Fp { value: 1 % p, p }).value)
}

/// Resultant over `F_p` with respect to true degrees.
pub fn resultant_fp(f: &PolyFp, g: &PolyFp) -> Result<u64> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(Error::Degenerate("resultant of the zero polynomial".into()));
    };
    resultant_fp_formal(f, m, g, n)
}
