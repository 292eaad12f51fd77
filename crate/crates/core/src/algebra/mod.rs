//! Exact arithmetic: rationals, dense polynomials over `Q`, `F_p` and
//! `Q[t]`, resultants and distinct-degree factorization.

pub mod ddf;
pub mod modp;
mod poly_fp;
mod poly_q;
mod poly_qt;
pub mod resultant;
pub mod roots;

pub use ddf::{count_distinct_roots, distinct_degree_factor, is_squarefree, DegreePattern};
pub use poly_fp::PolyFp;
pub use poly_q::PolyQ;
pub use poly_qt::PolyQt;
pub use resultant::{resultant_fp, resultant_fp_formal, resultant_homogeneous, resultant_q, resultant_qt, resultant_qt_formal};

/// Arbitrary-precision rational number.
pub type BigRational = num_rational::BigRational;

/// Renders a rational as `num/den`, always including the denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Best-effort conversion to `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(r: &BigRational, p: u64) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let red = |v: &BigInt| (((v % &pb) + &pb) % &pb).to_u64().expect("residue fits in u64");
    let inv = modp::inv_mod(red(r.denom()), p)?;
    Some(modp::mul_mod(red(r.numer()), inv, p))
}

/// Parses `a`, `a/b` or a decimal such as `-0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(digits, scale);
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("0.01"), Some(r(1, 100)));
        assert_eq!(parse_rational("-3/6"), Some(r(-1, 2)));
        assert_eq!(parse_rational("7"), Some(r(7, 1)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(reduce_rational(&r(1, 2), 7), Some(4));
        assert_eq!(reduce_rational(&r(1, 7), 7), None);
        assert_eq!(rational_string(&r(3, 1)), "3/1");
    }
}
