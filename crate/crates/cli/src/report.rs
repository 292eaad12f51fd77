//! Report commands and their text/JSON/CSV rendering.

use std::process::ExitCode;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dynper::algebra::{distinct_degree_factor, is_squarefree, rational_string, rational_to_f64, BigRational, PolyFp};
use dynper::bounds::{bounds_report, min_prime_for, ms_interval, wreath_order, BoundInputs, MsVariant};
use dynper::census::store::Format;
use dynper::census::{primes_in, SweepSummary};
use dynper::critical::{
    collision_test, collision_test_mod, critical_points, default_collision_set, discriminant_iterate, ramified_primes,
    Collision,
};
use dynper::dynamics::ProjPoint;
use dynper::frobenius::{compare_to_prediction, empirical_fpp, Sampling};
use dynper::map::RationalMapQ;
use dynper::par::Execution;
use dynper::wreath::{iterate_fpp, iterate_fpp_bounds, FixedPointSpectrum};
use dynper::{Error, Limits};

/// Largest denominator printed exactly in FPP tables.
const EXACT_FPP_BITS: u64 = 128;
/// Primes tried when a map has irrational critical points.
const FALLBACK_PRIMES: (u64, u64) = (3, 1000);

type Row = Vec<(&'static str, Value)>;

fn q(r: &BigRational) -> Value {
    Value::String(rational_string(r))
}

fn dec(r: &BigRational) -> Value {
    json!((rational_to_f64(r) * 1e6).round() / 1e6)
}

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// Buffers rows and prints them in the requested format.
pub struct Emitter {
    format: Format,
    rows: Vec<Row>,
}

impl Emitter {
    pub fn new(format: Format) -> Self {
        Emitter { format, rows: Vec::new() }
    }

    pub fn row(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn finish(self) -> Result<()> {
        let text = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".to_string(),
            other => other.to_string(),
        };
        match self.format {
            Format::Json => {
                for row in &self.rows {
                    let obj: serde_json::Map<String, Value> =
                        row.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                    println!("{}", serde_json::to_string(&obj)?);
                }
            }
            Format::Csv => {
                let mut last: Option<Vec<&str>> = None;
                for row in &self.rows {
                    let keys: Vec<&str> = row.iter().map(|(k, _)| *k).collect();
                    if last.as_ref() != Some(&keys) {
                        println!("{}", keys.join(","));
                    }
                    println!("{}", row.iter().map(|(_, v)| text(v).replace(',', ";")).collect::<Vec<_>>().join(","));
                    last = Some(keys);
                }
            }
            Format::Table => {
                let uniform = self.rows.len() > 1
                    && self.rows.windows(2).all(|w| {
                        w[0].iter().map(|(k, _)| k).eq(w[1].iter().map(|(k, _)| k))
                    });
                if uniform {
                    let keys: Vec<&str> = self.rows[0].iter().map(|(k, _)| *k).collect();
                    let cells: Vec<Vec<String>> =
                        self.rows.iter().map(|r| r.iter().map(|(_, v)| text(v)).collect()).collect();
                    let widths: Vec<usize> = (0..keys.len())
                        .map(|i| cells.iter().map(|c| c[i].len()).chain([keys[i].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |cols: Vec<String>| {
                        cols.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                    };
                    println!("{}", line(keys.iter().map(|k| k.to_string()).collect()));
                    for c in cells {
                        println!("{}", line(c));
                    }
                } else {
                    for (i, row) in self.rows.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        let w = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                        for (k, v) in row {
                            println!("{k:<w$}  {}", text(v));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn fpp(group: &str, n: usize, format: Format) -> Result<ExitCode> {
    let spec = FixedPointSpectrum::parse_group(group)?;
    let limits = Limits::default();
    let exact = match iterate_fpp(&spec, n, &limits) {
        Ok(v) => v,
        Err(Error::Resource { .. }) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let bounds = iterate_fpp_bounds(&spec, n, 160);
    let mut em = Emitter::new(format);
    for (m, iv) in bounds.iter().enumerate() {
        let shown = exact.get(m).filter(|v| v.denom().bits() <= EXACT_FPP_BITS);
        let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(2.into());
        em.row(vec![
            ("n", json!(m + 1)),
            ("fpp", shown.map(q).unwrap_or(Value::Null)),
            ("fpp_decimal", json!(rational_to_f64(shown.unwrap_or(&mid)))),
        ]);
    }
    em.finish()?;
    if !spec.is_transitive() {
        eprintln!("note: {spec} is not transitive");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn interval(em: &mut Emitter, q_: &BigInt, genus: &BigInt, ratio: &BigRational, ramified: u64, sqrt_q: bool) -> Result<()> {
    let variant = if sqrt_q { MsVariant::SqrtQ } else { MsVariant::Plain };
    let iv = ms_interval(&BoundInputs { q: q_.clone(), genus: genus.clone(), ratio: ratio.clone(), ramified }, variant)?;
    em.row(vec![
        ("report", json!("interval")),
        ("variant", json!(if sqrt_q { "sqrt_q" } else { "plain" })),
        ("q", big(q_)),
        ("genus", big(genus)),
        ("ratio", q(ratio)),
        ("ramified", json!(ramified)),
        ("center", q(&iv.center)),
        ("error", q(&iv.error)),
        ("lo", q(&iv.lo)),
        ("hi", q(&iv.hi)),
    ]);
    Ok(())
}

pub fn proportion(
    em: &mut Emitter,
    q_: &BigInt,
    spec: &FixedPointSpectrum,
    n: usize,
    ramified: u64,
    delta: Option<&BigRational>,
) -> Result<()> {
    let order = wreath_order(spec, n);
    let fpp = iterate_fpp(spec, n, &Limits::default())?
        .pop()
        .context("depth must be at least 1")?;
    let rep = bounds_report(q_, n, spec.degree(), &fpp, &order, ramified)?;
    let mut row = vec![
        ("report", json!("proportion")),
        ("q", big(q_)),
        ("n", json!(n)),
        ("group_order", big(&rep.order)),
        ("genus_bound", big(&rep.genus)),
        ("ramified", json!(ramified)),
        ("fpp", q(&rep.fpp)),
        ("proportion_bound", q(&rep.proportion_bound)),
        ("proportion_bound_decimal", dec(&rep.proportion_bound)),
        ("vacuous", json!(rep.vacuous)),
    ];
    if let Some(delta) = delta {
        let min_q = min_prime_for(delta, &(&rep.order * &rep.genus), ramified)?;
        row.push(("delta", q(delta)));
        row.push(("min_q", big(&min_q)));
    }
    em.row(row);
    Ok(())
}

pub fn disc(map: &RationalMapQ, n: usize, format: Format) -> Result<ExitCode> {
    let limits = Limits::default();
    let rep = discriminant_iterate(map, n, &limits)?;
    let ram = ramified_primes(map, n, &limits)?;
    let product = match rep.proportional() {
        Some(true) => "proportional",
        Some(false) => "not proportional",
        None => "unavailable",
    };
    let values: Vec<String> = ram.values.iter().map(|v| format!("{}^{}", v.value, v.exponent)).collect();
    let symbolic: Vec<String> = ram
        .symbolic
        .iter()
        .map(|s| format!("roots of {} (m={}, exp={})", s.t_poly.render("t"), s.m, s.exponent))
        .collect();
    let mut em = Emitter::new(format);
    em.row(vec![
        ("map", json!(map.render())),
        ("n", json!(n)),
        ("degree", json!(rep.resultant.degree())),
        ("constant", q(&rep.constant)),
        ("monic", json!(rep.monic.render("t"))),
        ("product_form", json!(product)),
        ("product_constant", rep.product_constant.as_ref().map(q).unwrap_or(Value::Null)),
        ("ramified_values", json!(values.join(" "))),
        ("ramified_symbolic", json!(symbolic.join("; "))),
    ]);
    em.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn point_mod(pt: ProjPoint, p: u64) -> String {
    if pt.is_infinity(p) {
        "inf".into()
    } else {
        pt.index().to_string()
    }
}

pub fn collide(map: &RationalMapQ, depth: usize, primes: Option<(u64, u64)>, format: Format) -> Result<ExitCode> {
    let crit: Vec<String> = critical_points(map).iter().map(ToString::to_string).collect();
    let mut em = Emitter::new(format);
    let over_q = match primes {
        Some(_) => None,
        None => match default_collision_set(map) {
            Ok(points) => Some(points),
            Err(Error::UnsupportedPoint(why)) => {
                eprintln!("{why}; testing reductions modulo primes in {}..{}", FALLBACK_PRIMES.0, FALLBACK_PRIMES.1);
                None
            }
            Err(e) => return Err(e.into()),
        },
    };
    if let Some(points) = over_q {
        let rep = collision_test(map, depth, &points, &Limits::default())?;
        let verdict = match &rep.violation {
            None => "holds".to_string(),
            Some(Collision { a, b, m, n }) => format!("violation phi^{m}({a}) = phi^{n}({b})"),
        };
        let violation = rep.violation.as_ref().map(|c| json!([c.a.to_string(), c.m, c.b.to_string(), c.n]));
        em.row(vec![
            ("map", json!(map.render())),
            ("critical_points", json!(crit.join(", "))),
            ("depth", json!(depth)),
            ("verdict", json!(verdict)),
            ("violation", violation.unwrap_or(Value::Null)),
        ]);
    } else {
        let (lo, hi) = primes.unwrap_or(FALLBACK_PRIMES);
        let rep = collision_test_mod(map, depth, &primes_in(lo, hi))?;
        for t in &rep.tested {
            let collision = t.collision.as_ref().map(|c| {
                format!("phi^{}({}) = phi^{}({})", c.m, point_mod(c.a, t.p), c.n, point_mod(c.b, t.p))
            });
            em.row(vec![
                ("p", json!(t.p)),
                ("critical", json!(t.critical.iter().map(|&c| point_mod(c, t.p)).collect::<Vec<_>>().join(" "))),
                ("collision", collision.map(Value::String).unwrap_or(Value::Null)),
            ]);
        }
        em.finish()?;
        eprintln!("critical points over Q: {}", crit.join(", "));
        eprintln!("tested {} primes, skipped {}", rep.tested.len(), rep.skipped.len());
        eprintln!("verdict: {}", rep.verdict);
        return Ok(ExitCode::SUCCESS);
    }
    em.finish()?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn frob(
    map: &RationalMapQ,
    p: u64,
    n: usize,
    group: Option<&FixedPointSpectrum>,
    samples: usize,
    seed: u64,
    exec: Execution,
    format: Format,
) -> Result<ExitCode> {
    let limits = Limits::default();
    let rep = empirical_fpp(map, p, n, Sampling::Auto { size: samples, seed }, exec, &limits)?;
    let hist: Vec<String> = rep.histogram.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    let mut row = vec![
        ("p", json!(p)),
        ("n", json!(n)),
        ("degree", json!(rep.degree)),
        ("exhaustive", json!(rep.exhaustive)),
        ("seed", rep.seed.map(|s| json!(s)).unwrap_or(Value::Null)),
        ("sampled", json!(rep.sampled)),
        ("unramified", json!(rep.unramified)),
        ("ramified", json!(rep.ramified)),
        ("with_root", json!(rep.with_root)),
        ("empirical_fpp", q(&rep.empirical_fpp)),
        ("empirical_fpp_decimal", dec(&rep.empirical_fpp)),
        ("affine_fpp", q(&rep.affine_fpp)),
        ("histogram", json!(hist.join(" "))),
        ("image_proportion", rep.image_proportion.as_ref().map(q).unwrap_or(Value::Null)),
        ("image_agrees", rep.image_agrees.map(Value::Bool).unwrap_or(Value::Null)),
    ];
    if let Some(spec) = group {
        let cmp = compare_to_prediction(&rep, spec, &limits)?;
        row.push(("predicted_fpp", q(&cmp.predicted_fpp)));
        row.push(("predicted_fpp_decimal", dec(&cmp.predicted_fpp)));
        row.push(("tv_distance", q(&cmp.tv_distance)));
        row.push(("tv_distance_decimal", dec(&cmp.tv_distance)));
    }
    let mut em = Emitter::new(format);
    em.row(row);
    em.finish()?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn factor(f: &PolyFp, format: Format) -> Result<ExitCode> {
    let p = f.modulus();
    let mut em = Emitter::new(format);
    let squarefree = is_squarefree(f);
    let pattern = if squarefree && f.degree().unwrap_or(0) > 0 {
        let pat = distinct_degree_factor(&f.monic())?;
        Value::String(pat.pairs().iter().map(|(d, c)| format!("{d}^{c}")).collect::<Vec<_>>().join(" "))
    } else {
        Value::Null
    };
    em.row(vec![
        ("p", json!(p)),
        ("degree", json!(f.degree())),
        ("squarefree", json!(squarefree)),
        ("pattern", pattern),
        ("distinct_roots", json!(dynper::algebra::count_distinct_roots(f))),
    ]);
    em.finish()?;
    if !squarefree {
        eprintln!("not squarefree mod {p}: no degree pattern");
    }
    Ok(ExitCode::SUCCESS)
}

pub fn print_summary(s: &SweepSummary) {
    if let Some(notice) = &s.notice {
        eprintln!("{notice} ({} records)", s.records);
        return;
    }
    eprintln!("map {}: {} primes, {} of bad reduction", s.map_hash, s.records, s.bad_reduction);
    let pair = |v: &Option<String>, d: Option<f64>| format!("{} ({:.6})", v.as_deref().unwrap_or("-"), d.unwrap_or(f64::NAN));
    eprintln!("min  {} at p = {}", pair(&s.min, s.min_decimal), s.argmin_p.unwrap_or(0));
    eprintln!("mean {:.6}", s.mean_decimal.unwrap_or(f64::NAN));
    eprintln!("max  {} at p = {}", pair(&s.max, s.max_decimal), s.argmax_p.unwrap_or(0));
    let tail: Vec<String> = s.liminf_trace.iter().rev().take(8).rev().map(|t| format!("{}:{:.6}", t.p, t.decimal)).collect();
    eprintln!("liminf trace (last {}): {}", tail.len(), tail.join(" "));
    for c in &s.classes {
        eprintln!(
            "  p = {} mod {}: {} primes, min {:.6}, mean {:.6}, max {:.6}",
            c.residue, c.modulus, c.count, c.min_decimal, c.mean_decimal, c.max_decimal
        );
    }
}
