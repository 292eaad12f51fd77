use std::collections::BTreeMap;

use super::PolyFp;
use crate::error::{Error, Result};

/// Degree pattern of a squarefree polynomial: for each degree `i`, the number
/// of monic irreducible factors of degree `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreePattern(pub BTreeMap<usize, usize>);

impl DegreePattern {
    pub fn count(&self, degree: usize) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    /// Sum of `degree * count`, which equals the degree of the factored
    /// polynomial.
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.iter().map(|(&d, &c)| (d, c)).collect()
    }
}

pub fn is_squarefree(f: &PolyFp) -> bool {
    let g = f.gcd_unchecked(&f.derivative());
    g.degree() == Some(0)
}

/// Distinct-degree factorization via the ladder `gcd(f, x^(p^i) - x)`.
///
/// The input must be squarefree of degree at least one; a repeated factor is
/// reported as [`Error::NotSquarefree`] rather than miscounted.
pub fn distinct_degree_factor(f: &PolyFp) -> Result<DegreePattern> {
    let p = f.modulus();
    match f.degree() {
        None | Some(0) => {
            return Err(Error::Degenerate("distinct-degree factorization of a constant".into()))
        }
        Some(_) => {}
    }
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree { prime: p });
    }
    let mut rest = f.monic();
    let x = PolyFp::x(p);
    let mut h = x.rem_unchecked(&rest);
    let mut out = BTreeMap::new();
    let mut i = 1;
    while let Some(deg) = rest.degree() {
        if deg < 2 * i {
            if deg > 0 {
                *out.entry(deg).or_insert(0) += 1;
            }
            break;
        }
        h = h.powmod_unchecked(p as u128, &rest);
        let g = h.sub_unchecked(&x).gcd_unchecked(&rest);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            out.insert(i, gd / i);
            rest = rest.div_rem_unchecked(&g).0;
            h = h.rem_unchecked(&rest);
        }
        i += 1;
    }
    Ok(DegreePattern(out))
}

/// Number of distinct roots of `f` in `F_p`: `deg gcd(f, x^p - x)`. Works for
/// any nonzero `f`, squarefree or not.
pub fn count_distinct_roots(f: &PolyFp) -> usize {
    let p = f.modulus();
    match f.degree() {
        None => return p as usize,
        Some(0) => return 0,
        Some(_) => {}
    }
    let x = PolyFp::x(p);
    let xp = x.powmod_unchecked(p as u128, f);
    xp.sub_unchecked(&x).gcd_unchecked(f).degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_1_splits_mod_5() {
        let f = PolyFp::from_i64(5, &[1, 0, 1]);
        assert_eq!(distinct_degree_factor(&f).unwrap().pairs(), vec![(1, 2)]);
    }

    #[test]
    fn x2_plus_1_irreducible_mod_7() {
        let f = PolyFp::from_i64(7, &[1, 0, 1]);
        assert_eq!(distinct_degree_factor(&f).unwrap().pairs(), vec![(2, 1)]);
    }

    #[test]
    fn repeated_factor_is_refused() {
        let f = PolyFp::from_i64(13, &[0, 0, 1]);
        assert_eq!(distinct_degree_factor(&f), Err(Error::NotSquarefree { prime: 13 }));
    }

    #[test]
    fn constant_is_degenerate() {
        assert!(distinct_degree_factor(&PolyFp::one(7)).is_err());
    }

    #[test]
    fn non_monic_input() {
        // 3(x - 1)(x - 2)(x^2 + 1) over F_7
        let f = PolyFp::from_i64(7, &[3])
            .mul(&PolyFp::from_i64(7, &[-1, 1]))
            .and_then(|g| g.mul(&PolyFp::from_i64(7, &[-2, 1])))
            .and_then(|g| g.mul(&PolyFp::from_i64(7, &[1, 0, 1])))
            .unwrap();
        assert_eq!(distinct_degree_factor(&f).unwrap().pairs(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn root_count_ignores_multiplicity() {
        let f = PolyFp::from_i64(13, &[0, 0, 1]);
        assert_eq!(count_distinct_roots(&f), 1);
        assert_eq!(count_distinct_roots(&PolyFp::from_i64(7, &[1, 0, 1])), 0);
    }
}
