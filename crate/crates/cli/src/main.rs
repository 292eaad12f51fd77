mod report;

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use dynper::algebra::{parse_rational, BigRational, PolyFp};
use dynper::census::store::{open_for_resume, Format, RecordWriter};
use dynper::census::{map_hash, preset, run_sweep, summarize, Congruence, Expectation, SweepConfig, SweepRecord};
use dynper::map::expr::parse_rational_function;
use dynper::map::RationalMapQ;
use dynper::par::Execution;
use dynper::Limits;

use report::Emitter;

#[derive(Parser)]
#[command(name = "dynper", version, about = "Periodic points of rational maps over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Census of periodic points over a range of primes.
    Sweep(SweepArgs),
    /// A named sweep with its expected behavior.
    Preset(PresetArgs),
    /// Fixed point proportions of iterated wreath products.
    Fpp(FppArgs),
    /// Effective Chebotarev intervals and proportion bounds.
    Bounds(BoundsArgs),
    /// Discriminant of the n-th iterate in the specialization variable.
    Disc(DiscArgs),
    /// Collisions among critical orbits.
    Collide(CollideArgs),
    /// Frobenius fixed-point statistics from fibers of the n-th iterate.
    Frob(FrobArgs),
    /// Degree pattern of a polynomial modulo p.
    Factor(FactorArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Inclusive prime range `A..B`.
    #[arg(long, value_parser = parse_range)]
    primes: Option<(u64, u64)>,
    /// Keep only primes with `p = r (mod m)`; repeatable.
    #[arg(long = "mod", value_name = "m:r")]
    filters: Vec<Congruence>,
    /// Extra moduli for residue annotations and the per-class summary.
    #[arg(long = "class", value_name = "m")]
    classes: Vec<u64>,
    /// Number of image sizes recorded per prime.
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Skip primes already in `--out` and append the rest.
    #[arg(long)]
    resume: bool,
    /// Worker threads; 1 runs serially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Print the summary as JSON.
    #[arg(long)]
    summary_json: bool,
    /// Dump the normalized map coefficients to stderr.
    #[arg(long)]
    debug: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    map: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct PresetArgs {
    /// powering-<d>[-<r>], chebyshev-2, chebyshev-odd-<l>,
    /// chebyshev-composite[-<d>], unicritical-generic, lattes2-<a>-<b>
    name: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct FppArgs {
    /// `S:d`, `C:d` or a literal such as `d=3;0:2,1:3,3:1`.
    group: String,
    /// Depth.
    n: usize,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Residue field size.
    #[arg(long)]
    q: String,
    /// Class ratio `#C/#G`; selects the interval report.
    #[arg(long)]
    ratio: Option<String>,
    #[arg(long, default_value = "0")]
    genus: String,
    /// Use the error term scaled by `sqrt(q)`.
    #[arg(long)]
    sqrt_q: bool,
    /// Group for the proportion bound (`S:2`, ...).
    #[arg(long)]
    group: Option<String>,
    /// Depth for the proportion bound.
    #[arg(long)]
    n: Option<usize>,
    /// Number of ramified places.
    #[arg(long, default_value_t = 0)]
    ramified: u64,
    /// Also report the smallest q making the error at most delta.
    #[arg(long)]
    delta: Option<String>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct DiscArgs {
    #[arg(long)]
    map: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct CollideArgs {
    #[arg(long)]
    map: String,
    /// Orbit depth.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Test reductions modulo primes in `A..B` instead of working over Q.
    #[arg(long, value_parser = parse_range)]
    primes: Option<(u64, u64)>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct FrobArgs {
    #[arg(long)]
    map: String,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Compare against the fixed-point distribution of `[G]^n`.
    #[arg(long)]
    group: Option<String>,
    /// Sample size when p is too large to enumerate.
    #[arg(long, default_value_t = 20_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial in x with rational coefficients.
    #[arg(long)]
    poly: String,
    #[arg(long)]
    p: u64,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end '{b}'"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: dynper::Error| e.to_string())
}

fn rational(s: &str, what: &str) -> Result<BigRational> {
    parse_rational(s).with_context(|| format!("bad {what} '{s}'"))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep(a) => {
            let map = RationalMapQ::parse(&a.map)?;
            let (lo, hi) = a.run.primes.unwrap_or((3, 1000));
            sweep(SweepConfig::new(map, lo, hi), &a.run, None)
        }
        Command::Preset(a) => {
            let p = preset(&a.name)?;
            eprintln!("preset {}: {}", p.name, p.config.map.render());
            eprintln!("expected: {}", p.annotation());
            let mut cfg = p.config.clone();
            if let Some((lo, hi)) = a.run.primes {
                cfg.lo = lo;
                cfg.hi = hi;
            }
            sweep(cfg, &a.run, Some(&p.expectation))
        }
        Command::Fpp(a) => report::fpp(&a.group, a.n, a.format.unwrap_or(Format::Table)),
        Command::Bounds(a) => bounds(a),
        Command::Disc(a) => {
            let map = RationalMapQ::parse(&a.map)?;
            report::disc(&map, a.n, a.format.unwrap_or(Format::Table))
        }
        Command::Collide(a) => {
            let map = RationalMapQ::parse(&a.map)?;
            report::collide(&map, a.n, a.primes, a.format.unwrap_or(Format::Table))
        }
        Command::Frob(a) => {
            let map = RationalMapQ::parse(&a.map)?;
            let group = a.group.as_deref().map(dynper::wreath::FixedPointSpectrum::parse_group).transpose()?;
            report::frob(
                &map,
                a.p,
                a.n,
                group.as_ref(),
                a.samples,
                a.seed,
                Execution::from_jobs(a.jobs),
                a.format.unwrap_or(Format::Table),
            )
        }
        Command::Factor(a) => {
            let f = parse_rational_function(&a.poly, Limits::default().max_parse_exponent)?;
            if f.den.degree() != Some(0) {
                bail!("'{}' is not a polynomial", a.poly);
            }
            let g = f.num.scale(&f.den.coeff(0).recip());
            let g = PolyFp::from_poly_q(&g, a.p).with_context(|| format!("a coefficient has p = {} in its denominator", a.p))?;
            report::factor(&g, a.format.unwrap_or(Format::Table))
        }
    }
}

fn bounds(a: BoundsArgs) -> Result<ExitCode> {
    let fmt = a.format.unwrap_or(Format::Table);
    let q = rational(&a.q, "q")?;
    if !q.is_integer() {
        bail!("q must be an integer");
    }
    let q = q.to_integer();
    let delta = a.delta.as_deref().map(|d| rational(d, "delta")).transpose()?;
    let mut em = Emitter::new(fmt);
    if let Some(ratio) = &a.ratio {
        let genus = rational(&a.genus, "genus")?;
        if !genus.is_integer() {
            bail!("genus must be an integer");
        }
        report::interval(&mut em, &q, &genus.to_integer(), &rational(ratio, "ratio")?, a.ramified, a.sqrt_q)?;
    }
    if let Some(g) = &a.group {
        let n = a.n.context("--group needs --n")?;
        let spec = dynper::wreath::FixedPointSpectrum::parse_group(g)?;
        // tame ramification only
        if q <= spec.degree().into() {
            bail!("q must exceed the group degree {}", spec.degree());
        }
        report::proportion(&mut em, &q, &spec, n, a.ramified, delta.as_ref())?;
    } else if a.ratio.is_none() {
        bail!("give --ratio for an interval or --group/--n for a proportion bound");
    }
    em.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn sweep(mut cfg: SweepConfig, run: &RunArgs, expect: Option<&Expectation>) -> Result<ExitCode> {
    cfg.filters.extend(run.filters.iter().copied());
    cfg.moduli.extend(run.classes.iter().copied());
    cfg.nmax = run.nmax;
    cfg.exec = Execution::from_jobs(run.jobs);
    let format = run.format.unwrap_or_default();
    let hash = map_hash(&cfg.map);
    if run.debug {
        eprintln!("map {hash}: {}", cfg.map.render_debug());
    }

    let mut previous: Vec<SweepRecord> = Vec::new();
    let mut skip = HashSet::new();
    let sink: Box<dyn Write> = match (&run.out, run.resume) {
        (Some(path), true) => {
            if format != Format::Json {
                bail!("--resume needs JSON-lines output");
            }
            let (file, state) = open_for_resume(path, &hash).with_context(|| format!("opening {}", path.display()))?;
            if state.truncated > 0 {
                eprintln!("dropped {} bytes of an interrupted record", state.truncated);
            }
            skip = state.done;
            previous = state.records;
            Box::new(file)
        }
        (Some(path), false) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        (None, true) => bail!("--resume needs --out"),
        (None, false) => Box::new(io::stdout().lock()),
    };
    let mut writer = RecordWriter::new(BufWriter::new(sink), format);
    if !skip.is_empty() {
        eprintln!("resuming: {} primes already stored", skip.len());
    }
    let mut violations = Vec::new();
    let fresh = run_sweep(&cfg, &skip, |rec| {
        if let (Some(e), Some(v)) = (expect, rec.exact_proportion()) {
            if e.check(rec.p, &v) == Some(false) {
                violations.push(rec.p);
            }
        }
        writer.write(rec)?;
        writer.flush()
    })?;
    writer.flush()?;

    previous.extend(fresh);
    let mut moduli = cfg.all_moduli();
    moduli.sort_unstable();
    let summary = summarize(&hash, &previous, &moduli);
    if run.summary_json {
        eprintln!("{}", serde_json::to_string(&summary)?);
    } else {
        report::print_summary(&summary);
    }
    if let Some(e) = expect {
        if matches!(e, Expectation::PerPrimeBound { .. }) {
            if violations.is_empty() {
                eprintln!("bound holds at every prime");
            } else {
                eprintln!("bound fails at {} primes: {:?}", violations.len(), violations);
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
