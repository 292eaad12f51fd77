//! Effective Chebotarev arithmetic: the interval for the number of degree
//! one places with a given Frobenius class, the genus bound, the resulting
//! upper bound on the periodic proportion, and the threshold prime.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::BigRational;
use crate::error::{Error, Result};
use crate::wreath::FixedPointSpectrum;

/// Which error term to use in the interval.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MsVariant {
    /// `E = 2 g r + #R`.
    #[default]
    Plain,
    /// `E = 2 g sqrt(q) r + #R`, with `sqrt(q)` rounded up to an integer so
    /// that the interval only grows.
    SqrtQ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    /// Size of the residue field.
    pub q: BigInt,
    pub genus: BigInt,
    /// `#C / #G`, in `(0, 1]`.
    pub ratio: BigRational,
    pub ramified: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsInterval {
    pub variant: MsVariant,
    pub center: BigRational,
    pub error: BigRational,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl MsInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `[(q+1) r - E, (q+1) r + E]`, clamped below at zero.
pub fn ms_interval(inputs: &BoundInputs, variant: MsVariant) -> Result<MsInterval> {
    if inputs.q.is_negative() || inputs.genus.is_negative() {
        return Err(Error::Domain("q and genus must be nonnegative".into()));
    }
    if !inputs.ratio.is_positive() || inputs.ratio > BigRational::one() {
        return Err(Error::Domain(format!("class ratio {} outside (0, 1]", inputs.ratio)));
    }
    let center = int(&inputs.q + 1) * &inputs.ratio;
    let weight = match variant {
        MsVariant::Plain => BigInt::one(),
        MsVariant::SqrtQ => {
            let s = inputs.q.sqrt();
            if &s * &s == inputs.q {
                s
            } else {
                s + 1
            }
        }
    };
    let error = int(2) * int(inputs.genus.clone() * weight) * &inputs.ratio + int(inputs.ramified);
    let lo = (&center - &error).max(BigRational::zero());
    let hi = &center + &error;
    Ok(MsInterval { variant, center, error, lo, hi })
}

/// `|G_n| n (2d - 2)`.
pub fn genus_bound(order: &BigInt, n: usize, d: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::Domain(format!("degree must be at least 2, got {d}")));
    }
    Ok(order * BigInt::from(n) * BigInt::from(2 * d - 2))
}

/// `fpp + #G g / (q + 1) + 2 #R / (q + 1)`.
pub fn proportion_bound(q: &BigInt, fpp: &BigRational, order: &BigInt, genus: &BigInt, ramified: u64) -> BigRational {
    let q1 = int(q + 1);
    fpp + int(order * genus) / &q1 + int(2 * ramified) / &q1
}

/// Smallest `q >= 0` with `(#G g + 2 #R)/(q + 1) <= delta`.
pub fn min_prime_for(delta: &BigRational, order_times_genus: &BigInt, ramified: u64) -> Result<BigInt> {
    if !delta.is_positive() {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let total: BigInt = order_times_genus + BigInt::from(2 * ramified);
    let need: BigInt = (int(total) / delta).ceil().to_integer() - 1;
    Ok(need.max(BigInt::zero()))
}

/// `|G|^((d^n - 1)/(d - 1))`, the order of `[G]^n`.
pub fn wreath_order(spec: &FixedPointSpectrum, n: usize) -> BigInt {
    let d = BigInt::from(spec.degree());
    let mut exp = BigInt::zero();
    let mut pow = BigInt::one();
    for _ in 0..n {
        exp += &pow;
        pow *= &d;
    }
    let exp: u32 = u32::try_from(exp).expect("exponent fits in u32 for any representable order");
    num_traits::pow(BigInt::from(spec.order()), exp as usize)
}

/// Everything the bounds report needs for one `(q, [G]^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub q: BigInt,
    pub n: usize,
    pub d: usize,
    pub fpp: BigRational,
    pub order: BigInt,
    pub genus: BigInt,
    pub ramified: u64,
    pub proportion_bound: BigRational,
    /// The bound exceeds one and says nothing.
    pub vacuous: bool,
}

pub fn bounds_report(
    q: &BigInt,
    n: usize,
    d: usize,
    fpp: &BigRational,
    order: &BigInt,
    ramified: u64,
) -> Result<BoundsReport> {
    let genus = genus_bound(order, n, d)?;
    let pb = proportion_bound(q, fpp, order, &genus, ramified);
    Ok(BoundsReport {
        q: q.clone(),
        n,
        d,
        fpp: fpp.clone(),
        order: order.clone(),
        genus,
        ramified,
        vacuous: pb > BigRational::one(),
        proportion_bound: pb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn inputs(q: i64, g: i64, ratio: BigRational, ram: u64) -> BoundInputs {
        BoundInputs { q: q.into(), genus: g.into(), ratio, ramified: ram }
    }

    #[test]
    fn interval_examples() {
        let iv = ms_interval(&inputs(13, 0, r(1, 2), 0), MsVariant::Plain).unwrap();
        assert_eq!((iv.lo.clone(), iv.hi.clone()), (r(7, 1), r(7, 1)));
        let iv = ms_interval(&inputs(13, 0, r(1, 2), 2), MsVariant::Plain).unwrap();
        assert_eq!((iv.lo.clone(), iv.hi.clone()), (r(5, 1), r(9, 1)));
        assert!(iv.contains(&r(6, 1)));
        let iv = ms_interval(&inputs(101, 0, r(1, 1), 0), MsVariant::SqrtQ).unwrap();
        assert_eq!((iv.lo, iv.hi), (r(102, 1), r(102, 1)));
        assert!(ms_interval(&inputs(13, 0, r(0, 1), 0), MsVariant::Plain).is_err());
    }

    #[test]
    fn interval_width_and_clamp() {
        let iv = ms_interval(&inputs(13, 3, r(1, 4), 1), MsVariant::Plain).unwrap();
        assert_eq!(iv.error, r(5, 2));
        assert_eq!(iv.width(), r(5, 1));
        let iv = ms_interval(&inputs(13, 100, r(1, 4), 1), MsVariant::Plain).unwrap();
        assert!(iv.lo.is_zero());
        // sqrt(13) rounds up to 4
        let iv = ms_interval(&inputs(13, 3, r(1, 4), 1), MsVariant::SqrtQ).unwrap();
        assert_eq!(iv.error, r(7, 1));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_bound(&2.into(), 1, 2).unwrap(), 4.into());
        assert_eq!(genus_bound(&128.into(), 3, 2).unwrap(), 768.into());
        assert_eq!(genus_bound(&128.into(), 0, 2).unwrap(), 0.into());
        assert!(genus_bound(&2.into(), 1, 1).is_err());
    }

    #[test]
    fn proportion_examples() {
        let q = BigInt::from(1_000_003);
        let v = proportion_bound(&q, &r(39, 128), &128.into(), &768.into(), 6);
        assert_eq!(v, r(39, 128) + r(98_316, 1_000_004));
        assert!((v.to_f64().unwrap() - 0.4031).abs() < 2e-4);
        assert_eq!(proportion_bound(&q, &r(39, 128), &128.into(), &0.into(), 0), r(39, 128));
        let mut prev = None;
        for k in 3..=9 {
            let q = num_traits::pow(BigInt::from(10), k);
            let v = proportion_bound(&q, &r(39, 128), &128.into(), &768.into(), 6);
            if let Some(p) = prev {
                assert!(v <= p);
            }
            prev = Some(v);
        }
        assert!((prev.unwrap().to_f64().unwrap() - 39.0 / 128.0).abs() < 1e-3);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(min_prime_for(&r(1, 100), &98_304.into(), 6).unwrap(), 9_831_599.into());
        assert_eq!(min_prime_for(&r(1, 1), &0.into(), 0).unwrap(), 0.into());
        assert_eq!(min_prime_for(&r(1, 2), &4.into(), 2).unwrap(), 15.into());
        assert!(min_prime_for(&r(0, 1), &4.into(), 2).is_err());
    }

    #[test]
    fn wreath_orders() {
        let s2 = FixedPointSpectrum::symmetric(2).unwrap();
        assert_eq!(wreath_order(&s2, 3), 128.into());
        let s3 = FixedPointSpectrum::symmetric(3).unwrap();
        assert_eq!(wreath_order(&s3, 2), 1296.into());
        let rep = bounds_report(&1009.into(), 1, 2, &r(1, 2), &2.into(), 2).unwrap();
        assert_eq!(rep.genus, 4.into());
        assert!(!rep.vacuous);
        let rep = bounds_report(&13.into(), 3, 2, &r(39, 128), &128.into(), 6).unwrap();
        assert!(rep.vacuous);
    }

    #[test]
    fn class_ratios_sum_to_field_size() {
        // conjugacy classes of S_3: sizes 1, 3, 2
        let q = BigInt::from(1009);
        let total = [r(1, 6), r(3, 6), r(2, 6)]
            .into_iter()
            .map(|ratio| ms_interval(&BoundInputs { q: q.clone(), genus: 5.into(), ratio, ramified: 3 }, MsVariant::Plain).unwrap().center)
            .fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(total, r(1010, 1));
    }
}
