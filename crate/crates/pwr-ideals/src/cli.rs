//! Command-line front end. One subcommand per library capability, JSON or
//! plain-text output, CSV export for the tabular commands.
//!
//! All integers in JSON and CSV output are decimal strings: family members
//! routinely exceed every native width. Exit codes: 0 success, 2 invalid
//! arguments, 3 budget exceeded, 4 internal invariant violation.

use std::fs::File;
use std::io::{self, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::arith::{Effort, SquarefreeStatus, SquarefreeVerdict};
use crate::error::{Error, Result};
use crate::experiments::{bigdemo, scan_stats, scatter_export, ScanStats};
use crate::generate::{
    alg1, alg2, alg3, cf_density, prime_pwr_search, GenTuple, ParityClass, PrimePwrHit,
    PrimePwrTag,
};
use crate::pell::{
    fundamental_unit, is_principal_cycle, solve_gpell, solve_gpell_convergents, pell_bounds,
    FundamentalUnit, PellSolution, PeriodBudget,
};
use crate::quadfield::{canonical_ideal, IdealRep, QuadField, QuadInt};
use crate::wrideal::{
    build_pwr_ideals, enumerate_wr, generator_from_pell, split_candidates, PwrPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    #[value(name = "3mod4")]
    Mod3,
    #[value(name = "1mod4-odd")]
    Mod1Odd,
    #[value(name = "1mod4-even")]
    Mod1Even,
}

impl From<ClassArg> for ParityClass {
    fn from(c: ClassArg) -> ParityClass {
        match c {
            ClassArg::Mod3 => ParityClass::Mod3,
            ClassArg::Mod1Odd => ParityClass::Mod1Odd,
            ClassArg::Mod1Even => ParityClass::Mod1Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EffortArg {
    Fast,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "pwr", version, about = "Principal well-rounded ideals of real quadratic fields")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write CSV to this path (scatter and prime only).
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Seed for the randomized factoring attempts. Verdicts below the
    /// deterministic threshold do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Factoring effort for squarefree verdicts on large integers.
    #[arg(long, global = true, value_enum, default_value_t = EffortArg::Fast)]
    effort: EffortArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one family member with algorithm 1, 2 or 3.
    Gen {
        #[arg(long)]
        k: BigUint,
        /// Second parameter; defaults to k + 2.
        #[arg(long)]
        l: Option<BigUint>,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Largest family index to try.
        #[arg(long, default_value_t = 64)]
        nmax: u64,
    },
    /// Audit a field d, or one split (d1, d2): principality of both pair
    /// ideals, Pell solvability, and their agreement.
    Verify { d1: u64, d2: Option<u64> },
    /// Enumerate the well-rounded ideals of Q(sqrt d).
    Wr { d: u64 },
    /// Solve k^2 d2 - l^2 d1 = t for the split (d1, d2).
    Pell { d1: u64, d2: u64 },
    /// Fundamental unit of Q(sqrt d) by continued fractions.
    Unit { d: u64 },
    /// Decide principality of the canonical ideal (a, b, m) in Q(sqrt d).
    Principal {
        d: u64,
        a: u64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// First-index statistics over all valid (k, l) with k < kmax.
    Scan {
        #[arg(long, default_value_t = 2000)]
        kmax: u64,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Exhaustive (d1, d2, k, l, t) dataset for small d1, as CSV.
    Scatter {
        #[arg(long, default_value_t = 200)]
        d1max: u64,
        #[arg(long, default_value_t = 800)]
        klmax: u64,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Fields with a principal well-rounded ideal of prime norm p <= limit.
    Prime {
        #[arg(long, default_value_t = 200)]
        limit: u64,
    },
    /// Squarefree density constant of the (k, l) family.
    Density {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        /// Truncation bound of the prime product.
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// The two large families at k = 10^digits - 1, with timings.
    Bigdemo {
        #[arg(long)]
        digits: u32,
    },
}

/// Parse arguments, run, and map the outcome to the documented exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match catch_unwind(AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(4)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    if cli.csv.is_some() && !matches!(cli.command, Command::Scatter { .. } | Command::Prime { .. })
    {
        return Err(Error::BadL(
            "--csv only applies to the scatter and prime subcommands".into(),
        ));
    }
    let effort = match cli.effort {
        EffortArg::Fast => Effort::fast(),
        EffortArg::Full => Effort::full(),
    }
    .with_seed(cli.seed);
    let out = io::stdout();
    let mut out = out.lock();
    match &cli.command {
        Command::Gen { k, l, class, nmax } => {
            let class = ParityClass::from(*class);
            let t = match class {
                ParityClass::Mod3 => alg1(k, l.as_ref(), *nmax, &effort)?,
                ParityClass::Mod1Odd => alg2(k, l.as_ref(), *nmax, &effort)?,
                ParityClass::Mod1Even => alg3(k, l.as_ref(), *nmax, &effort)?,
            };
            if cli.json {
                writeln!(out, "{}", gen_json(&t))?;
            } else {
                writeln!(
                    out,
                    "class={} k={} l={} n={} t={}\nd1 = {}\nd2 = {}",
                    t.parity_class,
                    t.k,
                    t.l,
                    t.n,
                    t.t(),
                    t.d1,
                    t.d2
                )?;
                writeln!(
                    out,
                    "squarefree: d1 {}, d2 {}",
                    verdict_text(&t.squarefree_status.0),
                    verdict_text(&t.squarefree_status.1)
                )?;
            }
        }
        Command::Verify { d1, d2 } => run_verify(cli, &mut out, *d1, *d2)?,
        Command::Wr { d } => {
            let field = QuadField::new(*d)?;
            let list = enumerate_wr(field);
            for ideal in list.entries() {
                if cli.json {
                    writeln!(
                        out,
                        "{}",
                        json!({
                            "d": d.to_string(),
                            "a": ideal.a().to_string(),
                            "b": ideal.b().to_string(),
                            "norm": ideal.norm().to_string(),
                        })
                    )?;
                } else {
                    writeln!(out, "{} norm {}", ideal, ideal.norm())?;
                }
            }
            if !cli.json && list.entries().is_empty() {
                writeln!(out, "no well-rounded ideals in Q(sqrt {d})")?;
            }
        }
        Command::Pell { d1, d2 } => {
            let pair = PwrPair::new(*d1, *d2)?;
            let sol = solve_gpell_convergents(&pair, &PeriodBudget::default())?;
            match sol {
                Some(s) => {
                    if cli.json {
                        writeln!(out, "{}", pell_json(&s))?;
                    } else {
                        writeln!(out, "k = {}\nl = {}\nt = {}", s.k, s.l, s.t)?;
                    }
                }
                None => {
                    if cli.json {
                        writeln!(out, "{}", json!({ "solution": Value::Null }))?;
                    } else {
                        writeln!(out, "no solution: ({d1}, {d2}) is not a PWR split")?;
                    }
                }
            }
        }
        Command::Unit { d } => {
            let field = QuadField::new(*d)?;
            let unit = fundamental_unit(field)?;
            if cli.json {
                writeln!(out, "{}", unit_json(*d, &unit))?;
            } else {
                let field = QuadField::new(*d)?;
                writeln!(
                    out,
                    "epsilon = {} (norm {}, period {})",
                    unit.element(field),
                    unit.unit_norm,
                    unit.period
                )?;
            }
        }
        Command::Principal { d, a, b, m } => {
            let field = QuadField::new(*d)?;
            let ideal = canonical_ideal(field, *a, *b, *m)?;
            let principal = is_principal_cycle(&ideal, &PeriodBudget::default())?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({ "ideal": ideal_json(&ideal), "principal": principal })
                )?;
            } else {
                writeln!(
                    out,
                    "{} is {}",
                    ideal,
                    if principal { "principal" } else { "not principal" }
                )?;
            }
        }
        Command::Scan { kmax, class } => {
            let stats = scan_stats(*kmax, ParityClass::from(*class))?;
            if cli.json {
                writeln!(out, "{}", scan_json(&stats))?;
            } else {
                writeln!(
                    out,
                    "class={} k_max={} pairs={} max_n={}",
                    stats.class, stats.k_max, stats.total, stats.max_n
                )?;
                for (n, count) in &stats.histogram {
                    writeln!(out, "  n={n}: {count}")?;
                }
                writeln!(
                    out,
                    "n=0 fraction {} ({:.4}), n=1 fraction {} ({:.4})",
                    stats.fraction_n0,
                    ratio_f64(&stats.fraction_n0),
                    stats.fraction_n1,
                    ratio_f64(&stats.fraction_n1)
                )?;
            }
        }
        Command::Scatter {
            d1max,
            klmax,
            class,
        } => {
            let class = ParityClass::from(*class);
            let rows = match &cli.csv {
                Some(path) => {
                    let mut file = File::create(path)?;
                    scatter_export(*d1max, *klmax, class, &mut file)?
                }
                None => scatter_export(*d1max, *klmax, class, &mut out)?,
            };
            if let Some(path) = &cli.csv {
                if cli.json {
                    writeln!(out, "{}", json!({ "rows": rows.to_string() }))?;
                } else {
                    writeln!(out, "{rows} rows written to {}", path.display())?;
                }
            }
        }
        Command::Prime { limit } => {
            let hits = prime_pwr_search(*limit)?;
            if let Some(path) = &cli.csv {
                let mut file = File::create(path)?;
                writeln!(file, "d1,d2,k,l,t")?;
                for h in &hits {
                    writeln!(
                        file,
                        "{},{},{},{},{}",
                        h.pair.d1(),
                        h.pair.d2(),
                        h.witness.k,
                        h.witness.l,
                        h.witness.t
                    )?;
                }
                if cli.json {
                    writeln!(out, "{}", json!({ "rows": hits.len().to_string() }))?;
                } else {
                    writeln!(out, "{} rows written to {}", hits.len(), path.display())?;
                }
            } else {
                for h in &hits {
                    if cli.json {
                        writeln!(out, "{}", prime_json(h))?;
                    } else {
                        writeln!(
                            out,
                            "p={} d={} split=({}, {}) witness (k={}, l={}, t={}) [{}]",
                            h.p,
                            h.pair.d(),
                            h.pair.d1(),
                            h.pair.d2(),
                            h.witness.k,
                            h.witness.l,
                            h.witness.t,
                            tag_name(h.tag)
                        )?;
                    }
                }
            }
        }
        Command::Density { k, l, bound } => {
            let r = cf_density(*k, *l, *bound)?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "k": r.k.to_string(),
                        "l": r.l.to_string(),
                        "prime_bound": r.prime_bound.to_string(),
                        "constant_part": r.constant_part,
                        "correction": {
                            "numer": r.correction.numer().to_string(),
                            "denom": r.correction.denom().to_string(),
                        },
                        "c_f": r.c_f,
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "c_f ~= {:.6} (universal part {:.6}, correction {})",
                    r.c_f, r.constant_part, r.correction
                )?;
            }
        }
        Command::Bigdemo { digits } => {
            let demo = bigdemo(*digits, &effort)?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "digits": digits.to_string(),
                        "mod3": gen_json(&demo.mod3),
                        "mod3_millis": demo.mod3_millis.to_string(),
                        "mod1odd": gen_json(&demo.mod1odd),
                        "mod1odd_millis": demo.mod1odd_millis.to_string(),
                    })
                )?;
            } else {
                for (t, ms) in [(&demo.mod3, demo.mod3_millis), (&demo.mod1odd, demo.mod1odd_millis)] {
                    writeln!(
                        out,
                        "class={} n={} t={} ({} ms)\nd1 = {}\nd2 = {}\nd2 - d1 = {}",
                        t.parity_class,
                        t.n,
                        t.t(),
                        ms,
                        t.d1,
                        t.d2,
                        &t.d2 - &t.d1
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// The full audit of one field or one split, shared by `verify d` and
/// `verify d1 d2`.
fn run_verify(cli: &Cli, out: &mut impl Write, d1: u64, d2: Option<u64>) -> Result<()> {
    let budget = PeriodBudget::default();
    let (d, splits) = match d2 {
        Some(d2) => {
            let pair = PwrPair::new(d1, d2)?;
            (pair.d(), vec![pair])
        }
        None => (d1, split_candidates(d1)?),
    };
    let field = QuadField::new(d)?;
    let unit = fundamental_unit(field)?;
    let mut reports = Vec::new();
    let mut has_pwr = false;
    for pair in &splits {
        let (i1, i2) = build_pwr_ideals(pair);
        let p1 = is_principal_cycle(&i1, &budget)?;
        let p2 = is_principal_cycle(&i2, &budget)?;
        let (bound, _) = pell_bounds(pair, &unit);
        let sol = solve_gpell(pair, &bound);
        assert_eq!(
            sol.is_some(),
            p1,
            "solvability and principality must agree on ({}, {})",
            pair.d1(),
            pair.d2()
        );
        assert_eq!(p1, p2, "the two pair ideals must agree on principality");
        let generator = sol.as_ref().map(|s| generator_from_pell(pair, s)).transpose()?;
        has_pwr |= sol.is_some();
        reports.push((pair, i1, i2, p1, sol, generator));
    }
    if cli.json {
        let split_values: Vec<Value> = reports
            .iter()
            .map(|(pair, i1, i2, principal, sol, generator)| {
                json!({
                    "d1": pair.d1().to_string(),
                    "d2": pair.d2().to_string(),
                    "i1": ideal_json(i1),
                    "i2": ideal_json(i2),
                    "principal": principal,
                    "solution": sol.as_ref().map(|s| pell_json(s)).unwrap_or(Value::Null),
                    "generator": generator.as_ref().map(quadint_json).unwrap_or(Value::Null),
                    "generator_norm": generator
                        .as_ref()
                        .map(|g| Value::String(g.norm().to_string()))
                        .unwrap_or(Value::Null),
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            json!({ "d": d.to_string(), "splits": split_values, "has_pwr": has_pwr })
        )?;
    } else {
        if splits.is_empty() {
            writeln!(out, "d = {d}: no split candidates, no PWR ideals")?;
        }
        for (pair, i1, i2, principal, sol, generator) in &reports {
            writeln!(
                out,
                "split ({}, {}): I1 = {}, I2 = {}",
                pair.d1(),
                pair.d2(),
                i1,
                i2
            )?;
            match (sol, generator) {
                (Some(s), Some(g)) => {
                    writeln!(
                        out,
                        "  solvable: k={} l={} t={}; generator {} of norm {}; principal: {}",
                        s.k,
                        s.l,
                        s.t,
                        g,
                        g.norm(),
                        principal
                    )?;
                }
                _ => {
                    writeln!(out, "  not solvable; principal: {principal}")?;
                }
            }
        }
        writeln!(
            out,
            "d = {d}: {}",
            if has_pwr {
                "PWR ideals exist"
            } else {
                "no PWR ideals"
            }
        )?;
    }
    Ok(())
}

fn ratio_f64(r: &num_rational::Ratio<u64>) -> f64 {
    *r.numer() as f64 / (*r.denom()).max(1) as f64
}

fn verdict_text(v: &SquarefreeVerdict) -> &'static str {
    match v.status {
        SquarefreeStatus::Squarefree => "squarefree",
        SquarefreeStatus::ProbablySquarefree => "probably squarefree",
        SquarefreeStatus::NotSquarefree => "not squarefree",
    }
}

fn tag_name(tag: PrimePwrTag) -> &'static str {
    match tag {
        PrimePwrTag::SpecialD3 => "special-d3",
        PrimePwrTag::PPlus4 => "p-plus-4",
        PrimePwrTag::PMinus4 => "p-minus-4",
        PrimePwrTag::PrimePair33 => "prime-pair-33",
    }
}

fn quadint_json(e: &QuadInt) -> Value {
    json!({ "x": e.x().to_string(), "y": e.y().to_string() })
}

fn ideal_json(ideal: &IdealRep) -> Value {
    json!({
        "d": ideal.field().d().to_string(),
        "m": ideal.m().to_string(),
        "a": ideal.a().to_string(),
        "b": ideal.b().to_string(),
    })
}

fn pell_json(s: &PellSolution) -> Value {
    json!({
        "k": s.k.to_string(),
        "l": s.l.to_string(),
        "t": s.t.to_string(),
    })
}

fn unit_json(d: u64, u: &FundamentalUnit) -> Value {
    json!({
        "d": d.to_string(),
        "x": u.x.to_string(),
        "y": u.y.to_string(),
        "norm": u.unit_norm.to_string(),
        "period": u.period.to_string(),
    })
}

fn verdict_json(v: &SquarefreeVerdict) -> Value {
    json!({
        "status": verdict_text(v),
        "witness": v
            .witness
            .as_ref()
            .map(|w| Value::String(w.to_string()))
            .unwrap_or(Value::Null),
    })
}

fn gen_json(t: &GenTuple) -> Value {
    json!({
        "class": t.parity_class.to_string(),
        "k": t.k.to_string(),
        "l": t.l.to_string(),
        "n": t.n.to_string(),
        "d1": t.d1.to_string(),
        "d2": t.d2.to_string(),
        "t": t.t().to_string(),
        "stride1": t.stride1().to_string(),
        "stride2": t.stride2().to_string(),
        "squarefree_d1": verdict_json(&t.squarefree_status.0),
        "squarefree_d2": verdict_json(&t.squarefree_status.1),
    })
}

fn scan_json(s: &ScanStats) -> Value {
    let histogram: serde_json::Map<String, Value> = s
        .histogram
        .iter()
        .map(|(n, count)| (n.to_string(), Value::String(count.to_string())))
        .collect();
    json!({
        "class": s.class.to_string(),
        "k_max": s.k_max.to_string(),
        "total": s.total.to_string(),
        "histogram": histogram,
        "fraction_n0": {
            "numer": s.fraction_n0.numer().to_string(),
            "denom": s.fraction_n0.denom().to_string(),
            "approx": ratio_f64(&s.fraction_n0),
        },
        "fraction_n1": {
            "numer": s.fraction_n1.numer().to_string(),
            "denom": s.fraction_n1.denom().to_string(),
            "approx": ratio_f64(&s.fraction_n1),
        },
        "max_n": s.max_n.to_string(),
    })
}

fn prime_json(h: &PrimePwrHit) -> Value {
    json!({
        "p": h.p.to_string(),
        "d": h.pair.d().to_string(),
        "d1": h.pair.d1().to_string(),
        "d2": h.pair.d2().to_string(),
        "witness": pell_json(&h.witness),
        "tag": tag_name(h.tag),
    })
}
