//! Named sweeps with the expected asymptotic behavior attached.

use std::fmt;

use crate::algebra::{parse_rational, BigRational};
use crate::error::{Error, Result};
use crate::map::RationalMapQ;

use super::{Congruence, SweepConfig};

pub const PRESET_NAMES: &[&str] = &[
    "powering-<d>[-<r>]",
    "chebyshev-2",
    "chebyshev-odd-<l>",
    "chebyshev-composite[-<d>]",
    "unicritical-generic",
    "lattes2-<a>-<b>",
];

/// What the proportion is expected to do as `p` grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Every record satisfies `proportion <= 1/modulus + 2/(p+1)`.
    PerPrimeBound { modulus: u64 },
    Liminf(BigRational),
    /// Tracks the fixed point proportion of `[G]^n`, which tends to zero.
    WreathDecay { group: String },
}

impl Expectation {
    /// Checks a single record where the expectation is pointwise.
    pub fn check(&self, p: u64, proportion: &BigRational) -> Option<bool> {
        match self {
            Expectation::PerPrimeBound { modulus } => Some(
                *proportion
                    <= BigRational::new(1.into(), (*modulus).into()) + BigRational::new(2.into(), (p + 1).into()),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::PerPrimeBound { modulus } => write!(f, "proportion <= 1/{modulus} + 2/(p+1)"),
            Expectation::Liminf(v) => write!(f, "liminf {v}"),
            Expectation::WreathDecay { group } => write!(f, "FPP([{group}]^n) -> 0"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub config: SweepConfig,
    pub expectation: Expectation,
}

impl Preset {
    pub fn annotation(&self) -> String {
        self.expectation.to_string()
    }
}

const DEFAULT_LO: u64 = 3;
const DEFAULT_HI: u64 = 20_000;

fn num(s: &str, name: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::UnknownPreset(name.to_string()))
}

/// Splits `a-b` where either side may carry a leading minus.
fn signed_pair(rest: &str) -> Option<(BigRational, BigRational)> {
    rest.char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '-')
        .find_map(|(i, _)| Some((parse_rational(&rest[..i])?, parse_rational(&rest[i + 1..])?)))
}

/// Resolves a preset name to its sweep over the default range `[3, 20000]`.
pub fn preset(name: &str) -> Result<Preset> {
    let unknown = || Error::UnknownPreset(name.to_string());
    let (map, filters, expectation) = if let Some(rest) = name.strip_prefix("powering-") {
        let (d, r) = match rest.split_once('-') {
            Some((d, r)) => (num(d, name)?, num(r, name)? as u32),
            None => (num(rest, name)?, 1),
        };
        if d < 2 || r == 0 {
            return Err(unknown());
        }
        let modulus = d.checked_pow(r).filter(|&m| m <= 1 << 40).ok_or_else(unknown)?;
        let map = RationalMapQ::parse(&format!("x^{d}"))?;
        (map, vec![Congruence::new(modulus, 1)?], Expectation::PerPrimeBound { modulus })
    } else if name == "chebyshev-2" {
        (RationalMapQ::chebyshev(2)?, Vec::new(), Expectation::Liminf(BigRational::new(1.into(), 4.into())))
    } else if let Some(l) = name.strip_prefix("chebyshev-odd-") {
        let l = num(l, name)?;
        if l < 3 || l % 2 == 0 || !is_prime(l) {
            return Err(unknown());
        }
        (
            RationalMapQ::chebyshev(l as usize)?,
            Vec::new(),
            Expectation::Liminf(BigRational::new(1.into(), 2.into())),
        )
    } else if let Some(rest) = name.strip_prefix("chebyshev-composite") {
        let d = match rest.strip_prefix('-') {
            Some(d) => num(d, name)?,
            None if rest.is_empty() => 6,
            None => return Err(unknown()),
        };
        if d < 4 || is_prime(d) {
            return Err(unknown());
        }
        (RationalMapQ::chebyshev(d as usize)?, Vec::new(), Expectation::Liminf(BigRational::from_integer(0.into())))
    } else if name == "unicritical-generic" {
        (RationalMapQ::parse("x^2+1")?, Vec::new(), Expectation::WreathDecay { group: "S2".into() })
    } else if let Some(rest) = name.strip_prefix("lattes2-") {
        let (a, b) = signed_pair(rest).ok_or_else(unknown)?;
        (
            RationalMapQ::lattes2(&a, &b)?,
            Vec::new(),
            Expectation::Liminf(BigRational::from_integer(0.into())),
        )
    } else {
        return Err(unknown());
    };
    let mut config = SweepConfig::new(map, DEFAULT_LO, DEFAULT_HI);
    config.filters = filters;
    Ok(Preset { name: name.to_string(), config, expectation })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}
