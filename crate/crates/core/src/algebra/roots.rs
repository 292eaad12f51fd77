//! Rational roots of rational polynomials by the rational root theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{is_prime, mul_mod};
use super::{BigRational, PolyQ};

/// Give up when the candidate set `divisors(a_0) x divisors(a_n)` is larger.
const MAX_CANDIDATES: usize = 1 << 20;

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of `n >= 1` as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in 2u64..1000 {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let base = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// `sum a_i u^i v^(n-i)`, which vanishes iff `u/v` is a root.
fn eval_homogeneous(a: &[BigInt], u: &BigInt, v: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    for (i, c) in a.iter().enumerate().rev() {
        acc = acc * u + c * &vpow;
        if i > 0 {
            vpow *= v;
        }
    }
    acc
}

/// Distinct rational roots of `f`, sorted ascending. `None` if the
/// constant or leading coefficient is too large to enumerate divisors.
pub fn rational_roots(f: &PolyQ) -> Option<Vec<BigRational>> {
    if f.degree().unwrap_or(0) == 0 {
        return Some(Vec::new());
    }
    let (_, prim) = f.primitive_part();
    let shift = prim.iter().position(|c| !c.is_zero()).unwrap();
    let a: Vec<BigInt> = prim[shift..].to_vec();
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    if a.len() > 1 {
        let a0 = a[0].abs().to_u64()?;
        let an = a[a.len() - 1].abs().to_u64()?;
        let nums = divisors_u64(a0);
        let dens = divisors_u64(an);
        if nums.len().saturating_mul(dens.len()) > MAX_CANDIDATES {
            return None;
        }
        for &v in &dens {
            for &u in &nums {
                if u.gcd(&v) != 1 {
                    continue;
                }
                let (ub, vb) = (BigInt::from(u), BigInt::from(v));
                for s in [ub.clone(), -ub] {
                    if eval_homogeneous(&a, &s, &vb).is_zero() {
                        roots.push(BigRational::new(s, vb.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Multiplicity of `r` as a root of `f` (zero if not a root).
pub fn root_multiplicity(f: &PolyQ, r: &BigRational) -> usize {
    let lin = PolyQ::new(vec![-r.clone(), BigRational::one()]);
    let mut g = f.clone();
    let mut k = 0;
    while !g.is_zero() {
        match g.div_exact(&lin) {
            Some(q) => {
                g = q;
                k += 1;
            }
            None => break,
        }
    }
    k
}
