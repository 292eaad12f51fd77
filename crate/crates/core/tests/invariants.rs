use std::collections::HashSet;

use proptest::prelude::*;

use dynper::algebra::roots::rational_roots;
use dynper::algebra::{
    count_distinct_roots, distinct_degree_factor, is_squarefree, parse_rational, rational_string, resultant_fp,
    BigRational, PolyFp, PolyQ,
};
use dynper::census::{liminf_trace, primes_in, run_sweep, summarize, Congruence, SweepConfig};
use dynper::dynamics::build_graph;
use dynper::map::{RationalMapQ, ReducedMap};
use dynper::wreath::{fix_distribution, iterate_fpp, iterate_fpp_bounds, FixedPointSpectrum};
use dynper::Limits;

const P: u64 = 101;

fn poly_fp(max_deg: usize) -> impl Strategy<Value = PolyFp> {
    prop::collection::vec(0..P, 2..=max_deg + 1).prop_map(|c| PolyFp::new(P, c))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_vanishes_iff_common_factor(f in poly_fp(6), g in poly_fp(6)) {
        prop_assume!(f.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
        let res = resultant_fp(&f, &g).unwrap();
        let common = f.gcd(&g).unwrap().degree().unwrap_or(0) >= 1;
        prop_assert_eq!(res == 0, common);
    }

    #[test]
    fn degree_pattern_accounts_for_every_root(f in poly_fp(9)) {
        prop_assume!(f.degree().unwrap_or(0) >= 1 && is_squarefree(&f));
        let pat = distinct_degree_factor(&f.monic()).unwrap();
        prop_assert_eq!(pat.total_degree(), f.degree().unwrap());
        prop_assert_eq!(pat.count(1), count_distinct_roots(&f));
        prop_assert_eq!(pat.count(1), f.roots_brute_force().len());
    }

    #[test]
    fn planted_rational_roots_are_found(roots in prop::collection::vec((-20i64..=20, 1i64..=6), 1..4)) {
        let mut f = PolyQ::one();
        for &(a, b) in &roots {
            f = &f * &PolyQ::from_ints(&[-a, b]);
        }
        let found = rational_roots(&f).unwrap();
        for &(a, b) in &roots {
            prop_assert!(found.contains(&BigRational::new(a.into(), b.into())));
        }
        prop_assert!(found.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rational_strings_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = BigRational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&rational_string(&x)), Some(x));
    }

    #[test]
    fn periodic_points_are_the_stable_image(
        coeffs in prop::collection::vec(-5i64..=5, 3..=4),
        den in prop::option::of(prop::collection::vec(-3i64..=3, 1..=2)),
        idx in 0usize..24,
    ) {
        let mut num = coeffs.clone();
        *num.last_mut().unwrap() = 1;
        let num = PolyQ::from_ints(&num);
        let den = den.map(|d| PolyQ::from_ints(&d)).filter(|d| !d.is_zero()).unwrap_or_else(PolyQ::one);
        let Ok(m) = RationalMapQ::from_parts(num, den, &Limits::default()) else { return Ok(()) };
        let p = primes_in(3, 100)[idx];
        prop_assume!(m.good_reduction(p));
        let g = build_graph(&ReducedMap::new(&m, p).unwrap(), &Limits::default()).unwrap();
        let (stable, steps) = g.stabilized_image();
        prop_assert_eq!(&stable[..], g.periodic_mask());
        let sizes = g.image_iterate(steps + 2);
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(*sizes.last().unwrap(), g.periodic_count());
        let succ = g.successors();
        for (i, &per) in g.periodic_mask().iter().enumerate() {
            if per {
                prop_assert!(g.periodic_mask()[succ[i] as usize]);
            }
        }
    }

    #[test]
    fn sieve_matches_trial_division(lo in 0u64..5000, len in 0u64..3000) {
        let want: Vec<u64> = (lo..=lo + len).filter(|&n| is_prime(n)).collect();
        prop_assert_eq!(primes_in(lo, lo + len), want);
    }

    #[test]
    fn congruences_round_trip(m in 1u64..1000, r in -2000i64..2000) {
        let c: Congruence = format!("{m}:{r}").parse().unwrap();
        prop_assert!(c.residue < m);
        prop_assert_eq!(c.to_string().parse::<Congruence>().unwrap(), c);
    }

    #[test]
    fn trace_is_nondecreasing_suffix_minimum(vals in prop::collection::vec((1i64..50, 1i64..50), 1..40)) {
        let pts: Vec<(u64, BigRational)> = vals
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (i as u64, BigRational::new(a.into(), (a + b).into())))
            .collect();
        let trace = liminf_trace(&pts);
        prop_assert!(trace.windows(2).all(|w| w[0].1 < w[1].1 && w[0].0 < w[1].0));
        for (p, v) in &trace {
            let suffix_min = pts.iter().filter(|(q, _)| q >= p).map(|(_, x)| x).min().unwrap();
            prop_assert_eq!(v, suffix_min);
        }
        prop_assert_eq!(&trace[0].1, pts.iter().map(|(_, x)| x).min().unwrap());
    }

    #[test]
    fn exact_fpp_lies_in_certified_bounds(d in 2usize..=6, cyclic in any::<bool>(), n in 1usize..=7) {
        let spec = if cyclic { FixedPointSpectrum::cyclic(d) } else { FixedPointSpectrum::symmetric(d) }.unwrap();
        let exact = iterate_fpp(&spec, n, &Limits::default()).unwrap();
        let bounds = iterate_fpp_bounds(&spec, n, 64);
        for (q, iv) in exact.iter().zip(&bounds) {
            prop_assert!(iv.contains(q));
        }
        prop_assert!(exact.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn generating_polynomial_agrees_with_recursion(d in 2usize..=4, n in 1usize..=4) {
        let spec = FixedPointSpectrum::symmetric(d).unwrap();
        let g = fix_distribution(&spec, n, &Limits::default()).unwrap();
        prop_assert_eq!(g.total(), BigRational::from_integer(1.into()));
        prop_assert_eq!(g.fpp(), iterate_fpp(&spec, n, &Limits::default()).unwrap()[n - 1].clone());
        // a transitive action fixes one point on average
        prop_assert_eq!(g.mean(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn spectrum_literals_round_trip(d in 2usize..=7) {
        for spec in [FixedPointSpectrum::symmetric(d).unwrap(), FixedPointSpectrum::cyclic(d).unwrap()] {
            prop_assert_eq!(spec.to_string().parse::<FixedPointSpectrum>().unwrap(), spec);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn summaries_are_ordered(c in -4i64..=4, hi in 50u64..400) {
        let m = RationalMapQ::parse(&format!("x^2+{c}")).unwrap();
        let recs = run_sweep(&SweepConfig::new(m, 3, hi), &HashSet::new(), |_| Ok(())).unwrap();
        let s = summarize(&recs[0].map_hash, &recs, &[3, 4]);
        prop_assert!(s.min_decimal.unwrap() <= s.mean_decimal.unwrap());
        prop_assert!(s.mean_decimal.unwrap() <= s.max_decimal.unwrap());
        prop_assert_eq!(s.classes.iter().filter(|k| k.modulus == 4).map(|k| k.count).sum::<usize>(), s.good);
        for rec in &recs {
            if let Some(per) = rec.n_periodic {
                prop_assert!(rec.image_sizes.iter().all(|&k| k >= per));
            }
        }
    }
}
