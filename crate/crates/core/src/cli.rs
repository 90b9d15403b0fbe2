//! Command-line front end. Every command produces a list of records and an
//! optional summary; the emitter writes them as JSON lines, CSV or a plain
//! table.
//!
//! Exit codes: 0 success, 1 counterexample or failed check, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith;
use crate::compositum::{
    candidate_search, common_prime_certificate, common_roots_mod, gcd_chain_replay, lehmer_f1,
    lehmer_f2, shanks_core, DEFAULT_CONGRUENCES,
};
use crate::error::Error;
use crate::families::{
    lemma51_records, meets_claim, verify_theorem_with, Lemma51Report, Reading, Theorem, TheoremCase,
};
use crate::polya::{polya_order_biquad_with, polya_order_quad_with, BiquadField};
use crate::quadratic::{fundamental_unit, QuadCache};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    #[default]
    Literal,
    Hoisted,
    Both,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "polya-fields", version, about = "Polya groups of real quadratic and bi-quadratic fields")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fundamental unit of Q(sqrt d)
    Unit {
        #[arg(required = true)]
        d: Vec<u64>,
    },
    /// Polya group order of Q(sqrt m) or Q(sqrt m, sqrt n)
    Polya {
        #[arg(required = true, num_args = 1..=2)]
        radicands: Vec<u64>,
    },
    /// Check the [a2] decision tree on all admissible (q, r, s)
    Lemma51 {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Check theorem cases on all prime quadruples up to a bound
    Verify(VerifyArgs),
    /// Exact-sequence sweep over all bi-quadratic Q(sqrt m, sqrt n), m < n <= bound
    Sweep {
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Resultant certificates and the CRT prime search
    Compositum {
        #[arg(long, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Theorem id, 1.1 to 1.7 (default: all)
    #[arg(long, value_parser = parse_theorem)]
    pub theorem: Option<Theorem>,
    /// Sub-case label or prefix, e.g. C2, ii, C4
    #[arg(long, requires = "theorem")]
    pub case: Option<String>,
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    /// Placement of the (2/p) != (2/q) clause in 1.5 C5 and C7
    #[arg(long, value_enum, default_value_t = ReadingArg::Literal)]
    pub reading: ReadingArg,
}

fn parse_theorem(s: &str) -> std::result::Result<Theorem, String> {
    s.parse::<Theorem>().map_err(|e| e.to_string())
}

/// What a command hands to the emitter.
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<Value>,
    pub summary: Option<Value>,
    pub failed: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn cmd_unit(ds: &[u64]) -> crate::Result<Output> {
    let records = ds
        .iter()
        .map(|&d| fundamental_unit(d).map(|u| to_value(&u)))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(Output {
        records,
        ..Output::default()
    })
}

fn cmd_polya(radicands: &[u64]) -> crate::Result<Output> {
    let cache = QuadCache::new();
    let report = match *radicands {
        [d] => polya_order_quad_with(d, &cache)?,
        [m, n] => polya_order_biquad_with(&BiquadField::new(m, n)?, &cache)?,
        _ => unreachable!("clap enforces one or two radicands"),
    };
    Ok(Output {
        records: vec![to_value(&report)],
        ..Output::default()
    })
}

fn cmd_lemma51(bound: u64) -> crate::Result<Output> {
    let cache = QuadCache::new();
    let recs = lemma51_records(bound, &cache)?;
    let report = Lemma51Report::from_records(bound, &recs)?;
    let records = recs.iter().map(to_value).collect();
    let summary = json!({
        "kind": "summary",
        "bound": report.bound,
        "triples": report.triples,
        "failures": report.failures,
        "by_qrs_mod8": report.by_qrs_mod8,
        "half_integer_units": report.half_integer_units,
        "cube_mismatches": report.cube_mismatches,
        "outcomes": report.outcomes,
        "failed": report.failed,
        "verified": report.verified,
    });
    Ok(Output {
        records,
        summary: Some(summary),
        failed: !report.verified,
    })
}

/// Cases selected by the `verify` flags.
pub fn selected_cases(args: &VerifyArgs) -> crate::Result<Vec<TheoremCase>> {
    let base = match args.theorem {
        Some(t) => TheoremCase::select(t, args.case.as_deref())?,
        None => TheoremCase::all(),
    };
    let mut out = Vec::new();
    for c in base {
        match args.reading {
            ReadingArg::Literal => out.push(c),
            ReadingArg::Hoisted => out.push(c.with_reading(Reading::Hoisted)),
            ReadingArg::Both => {
                let sensitive = c.reading_sensitive();
                out.push(c.clone());
                if sensitive {
                    out.push(c.with_reading(Reading::Hoisted));
                }
            }
        }
    }
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs) -> crate::Result<Output> {
    let cache = QuadCache::new();
    let mut records = Vec::new();
    let mut cases_summary = Vec::new();
    let mut total_witnesses = 0;
    let mut counterexamples = Vec::new();
    for case in selected_cases(args)? {
        let report = verify_theorem_with(&case, args.bound, &cache)?;
        let reports = report
            .witnesses
            .par_iter()
            .map(|t| polya_order_biquad_with(&case.field.field(t)?, &cache))
            .collect::<crate::Result<Vec<_>>>()?;
        for (t, r) in report.witnesses.iter().zip(&reports) {
            records.push(json!({
                "kind": "witness",
                "theorem": case.theorem,
                "case": case.label,
                "reading": case.reading,
                "tuple": t,
                "m": r.radicands[0],
                "n": r.radicands[1],
                "h1_order": r.h1_order,
                "polya_order": r.polya_order,
                "ramified": r.ramified.len(),
                "ok": meets_claim(r),
            }));
        }
        total_witnesses += report.witnesses.len();
        counterexamples.extend(report.counterexamples.iter().map(|c| {
            json!({
                "theorem": case.theorem,
                "case": case.label,
                "reading": case.reading,
                "tuple": c.tuple,
                "polya_order": c.report.polya_order,
                "ramified": c.report.ramified.len(),
            })
        }));
        cases_summary.push(json!({
            "theorem": case.theorem,
            "case": case.label,
            "reading": case.reading,
            "witnesses": report.witnesses.len(),
            "counterexamples": report.counterexamples.len(),
        }));
    }
    let failed = !counterexamples.is_empty();
    let summary = json!({
        "kind": "summary",
        "bound": args.bound,
        "cases": cases_summary,
        "witnesses": total_witnesses,
        "counterexamples": counterexamples.len(),
        "counterexample_list": counterexamples,
        "verified": !failed,
    });
    Ok(Output {
        records,
        summary: Some(summary),
        failed,
    })
}

fn squarefree_from_two(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&d| arith::is_squarefree(d as u128)).collect()
}

fn cmd_sweep(bound: u64) -> crate::Result<Output> {
    let cache = QuadCache::new();
    let ds = squarefree_from_two(bound);
    let pairs: Vec<(u64, u64)> = ds
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| ds[i + 1..].iter().map(move |&n| (m, n)))
        .collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(m, n)| BiquadField::new(m, n).and_then(|k| polya_order_biquad_with(&k, &cache)))
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut integrity_failures = Vec::new();
    let (mut non_polya, mut doubled) = (0u64, 0u64);
    let mut first_non_polya = None;
    for (&(m, n), r) in pairs.iter().zip(results) {
        match r {
            Ok(r) => {
                non_polya += u64::from(!r.is_polya);
                doubled += u64::from(r.setzer_doubled);
                if !r.is_polya && first_non_polya.is_none() {
                    first_non_polya = Some([m, n]);
                }
                records.push(json!({
                    "m": m,
                    "n": n,
                    "d3": r.subfields[2],
                    "two_index": r.two_index().unwrap_or(1),
                    "ramified": r.ramified.len(),
                    "h1_two_torsion_order": r.h1_two_torsion_order,
                    "setzer_doubled": r.setzer_doubled,
                    "h1_order": r.h1_order,
                    "edge_product": r.edge_product,
                    "polya_order": r.polya_order,
                }));
            }
            Err(Error::Integrity(msg)) => integrity_failures.push(json!({"m": m, "n": n, "error": msg})),
            Err(e) => return Err(e),
        }
    }
    let failed = !integrity_failures.is_empty();
    let summary = json!({
        "kind": "summary",
        "bound": bound,
        "fields": pairs.len(),
        "non_polya": non_polya,
        "first_non_polya": first_non_polya,
        "setzer_doubled": doubled,
        "integrity_failures": integrity_failures.len(),
        "integrity_failure_list": integrity_failures,
    });
    Ok(Output {
        records,
        summary: Some(summary),
        failed,
    })
}

fn cmd_compositum(limit: u64) -> crate::Result<Output> {
    let mut records = Vec::new();
    let chain = gcd_chain_replay();
    let chain_ok = chain.iter().all(|s| s.holds);
    for (i, step) in chain.iter().enumerate() {
        records.push(json!({
            "kind": "chain_step",
            "step": i + 1,
            "expression": step.expression,
            "result": step.result,
            "holds": step.holds,
        }));
    }
    let core = shanks_core();
    let mut certificates_ok = true;
    for (name, other, expected) in [("f1", lehmer_f1(), 181u64), ("f2", lehmer_f2(), 541)] {
        let primes = common_prime_certificate(&core, &other)?;
        let roots = common_roots_mod(&core, &other, expected);
        certificates_ok &= primes == [expected] && !roots.is_empty();
        records.push(json!({
            "kind": "resultant",
            "pair": format!("core,{name}"),
            "primes": primes,
            "common_roots": roots,
            "modulus": expected,
        }));
    }
    let report = candidate_search(limit, &DEFAULT_CONGRUENCES)?;
    for hit in &report.hits {
        let mut v = to_value(hit);
        v.as_object_mut()
            .expect("certificate is an object")
            .insert("kind".into(), json!("certificate"));
        records.push(v);
    }
    let failed = !(chain_ok && certificates_ok && report.reverified);
    let summary = json!({
        "kind": "summary",
        "limit": limit,
        "residue": report.residue.to_string(),
        "modulus": report.modulus.to_string(),
        "scanned": report.scanned,
        "primes": report.primes,
        "rejected_gcd": report.rejected_gcd,
        "rejected_zylinski": report.rejected_zylinski,
        "zylinski_offenders": report.zylinski_offenders,
        "certified": report.hits.len(),
        "empty": report.empty,
        "reverified": report.reverified,
        "chain_ok": chain_ok,
        "resultants_ok": certificates_ok,
    });
    Ok(Output {
        records,
        summary: Some(summary),
        failed,
    })
}

/// Runs one parsed command on the current thread pool.
pub fn execute(config: &RunConfig) -> crate::Result<Output> {
    match &config.command {
        Command::Unit { d } => cmd_unit(d),
        Command::Polya { radicands } => cmd_polya(radicands),
        Command::Lemma51 { bound } => cmd_lemma51(*bound),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep { bound } => cmd_sweep(*bound),
        Command::Compositum { limit } => cmd_compositum(*limit),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(records: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in records {
        if let Some(obj) = r.as_object() {
            for k in obj.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

/// Writes `output` in `format`. CSV and table output carry the records;
/// the summary follows as one JSON line (CSV writes it to `summary_sink`).
pub fn emit(
    output: &Output,
    format: Format,
    w: &mut dyn Write,
    summary_sink: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            for r in output.records.iter().chain(&output.summary) {
                serde_json::to_writer(&mut *w, r)?;
                writeln!(w)?;
            }
        }
        Format::Csv => {
            let cols = columns(&output.records);
            let mut csv = csv::Writer::from_writer(&mut *w);
            if !cols.is_empty() {
                csv.write_record(&cols)?;
            }
            for r in &output.records {
                csv.write_record(cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()))?;
            }
            csv.flush()?;
            if let Some(s) = &output.summary {
                serde_json::to_writer(&mut *summary_sink, s)?;
                writeln!(summary_sink)?;
            }
        }
        Format::Table => {
            let cols = columns(&output.records);
            let rows: Vec<Vec<String>> = output
                .records
                .iter()
                .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| rows.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
                .collect();
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &wd)| format!("{c:<wd$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            if !cols.is_empty() {
                writeln!(w, "{}", line(&cols))?;
            }
            for r in &rows {
                writeln!(w, "{}", line(r))?;
            }
            if let Some(Value::Object(s)) = &output.summary {
                for (k, v) in s {
                    writeln!(w, "{k}: {}", cell(v))?;
                }
            }
        }
    }
    w.flush()
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0) as usize)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let output = match pool.install(|| execute(&config)) {
        Ok(o) => o,
        Err(e @ Error::Integrity(_)) => {
            eprintln!("error: {e}");
            return EXIT_COUNTEREXAMPLE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &config.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit(&output, config.format, &mut w, &mut io::stderr())
        }),
        None => emit(&output, config.format, &mut io::stdout().lock(), &mut io::stderr()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if output.failed {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}
