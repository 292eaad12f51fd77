//! Frozen values from exhaustive runs, and brute force against recursion.

use std::collections::{BTreeMap, HashSet};

use dynper::algebra::BigRational;
use dynper::census::{map_hash, run_sweep, summarize, SweepConfig};
use dynper::frobenius::{compare_to_prediction, empirical_fpp, Sampling};
use dynper::map::RationalMapQ;
use dynper::par::Execution;
use dynper::wreath::{enumerate_wreath, iterate_fpp, wreath_group, ExplicitGroup, FixedPointSpectrum};
use dynper::Limits;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn map(expr: &str) -> RationalMapQ {
    RationalMapQ::parse(expr).unwrap()
}

#[test]
fn enumeration_matches_recursion() {
    let limits = Limits::default();
    let groups = [
        ExplicitGroup::symmetric(2).unwrap(),
        ExplicitGroup::symmetric(3).unwrap(),
        ExplicitGroup::cyclic(3).unwrap(),
        ExplicitGroup::cyclic(4).unwrap(),
    ];
    let depths = [3, 2, 2, 2];
    for (g, &depth) in groups.iter().zip(&depths) {
        let spec = g.spectrum().unwrap();
        let rec = iterate_fpp(&spec, depth, &limits).unwrap();
        for n in 1..=depth {
            let brute = enumerate_wreath(g, n, &limits, Execution::default()).unwrap();
            assert_eq!(brute.fpp(), rec[n - 1], "degree {} n = {n}", g.degree());
            let serial = enumerate_wreath(g, n, &limits, Execution::Serial).unwrap();
            assert_eq!(brute, serial);
        }
    }
}

#[test]
fn explicit_wreath_groups() {
    let limits = Limits::default();
    let s2 = ExplicitGroup::symmetric(2).unwrap();
    let sizes: Vec<usize> = (1..=3).map(|n| wreath_group(&s2, n, &limits).unwrap().order()).collect();
    assert_eq!(sizes, vec![2, 8, 128]);
    let g3 = wreath_group(&s2, 3, &limits).unwrap();
    assert_eq!(g3.spectrum().unwrap().fpp(), r(39, 128));
    assert_eq!(g3.degree(), 8);
    let s3 = enumerate_wreath(&ExplicitGroup::symmetric(3).unwrap(), 2, &limits, Execution::default()).unwrap();
    assert_eq!((s3.order(), s3.fpp()), (1296, r(40, 81)));
}

#[test]
fn frobenius_baselines_at_10007() {
    let limits = Limits::default();
    let s2 = FixedPointSpectrum::symmetric(2).unwrap();
    let cases = [
        ("x^2+1", r(3029, 10004), 3, vec![(0, 6975), (2, 1546), (4, 1088), (6, 299), (8, 96)], r(591, 160064)),
        ("x^2-2", r(1042, 3335), 2, vec![(0, 6879), (2, 2501), (8, 625)], r(63341, 426880)),
    ];
    for (expr, fpp, ramified, hist, tv) in cases {
        let rep = empirical_fpp(&map(expr), 10007, 3, Sampling::Exhaustive, Execution::default(), &limits).unwrap();
        assert_eq!(rep.empirical_fpp, fpp, "{expr}");
        assert_eq!(rep.ramified, ramified, "{expr}");
        assert_eq!(rep.histogram, hist.into_iter().collect::<BTreeMap<usize, u64>>(), "{expr}");
        assert_eq!(compare_to_prediction(&rep, &s2, &limits).unwrap().tv_distance, tv, "{expr}");
        assert!(rep.warnings.is_empty());
    }
}

#[test]
fn random_sampling_is_seeded() {
    let limits = Limits::default();
    let m = map("x^2+1");
    let run = |seed| {
        empirical_fpp(&m, 1_000_003, 2, Sampling::Auto { size: 2000, seed }, Execution::default(), &limits).unwrap()
    };
    let (a, b, c) = (run(7), run(7), run(8));
    assert!(!a.exhaustive);
    assert_eq!(a, b);
    assert_ne!(a.histogram, c.histogram);
    // q_2(S2) = 3/8, sampled
    let x = dynper::wreath::to_f64(&a.empirical_fpp);
    assert!((x - 0.375).abs() < 0.05, "{x}");
}

#[test]
fn quadratic_image_mean_is_frozen() {
    let mut cfg = SweepConfig::new(map("x^2+1"), 10_000, 20_000);
    cfg.nmax = 5;
    let recs = run_sweep(&cfg, &HashSet::new(), |_| Ok(())).unwrap();
    assert_eq!(recs.len(), 1033);
    assert_eq!(recs.iter().map(|r| r.image_sizes[4]).sum::<u64>(), 3_471_990);
    let mean = recs.iter().map(|r| r.image_sizes[4] as f64 / (r.p + 1) as f64).sum::<f64>() / recs.len() as f64;
    assert!((mean - 0.224_924_352_702_772).abs() < 1e-12, "{mean}");
}

#[test]
fn hashes_are_frozen() {
    assert_eq!(map_hash(&map("x^2+1")), "ba96a490d05076d8");
    assert_eq!(RationalMapQ::chebyshev(6).unwrap().render(), "x^6 - 6*x^4 + 9*x^2 - 2");
}

#[test]
fn chebyshev_two_summary() {
    let cfg = SweepConfig::new(map("x^2-2"), 3, 2000);
    let recs = run_sweep(&cfg, &HashSet::new(), |_| Ok(())).unwrap();
    let s = summarize(&recs[0].map_hash, &recs, &[4]);
    assert_eq!(s.bad_reduction, 0);
    assert!(s.min_decimal.unwrap() >= 0.25);
    let last = s.liminf_trace.last().unwrap();
    assert_eq!(Some(&last.value), recs.last().unwrap().proportion.as_ref());
    assert_eq!(s.liminf_trace[0].value, s.min.clone().unwrap());
}
