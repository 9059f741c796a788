//! Command-line interface: sequence listings, point evaluation, level
//! tables, and the verification suites, rendered as text, CSV, or JSON.
//!
//! Exit codes: 0 success; 1 a verification suite failed or an internal
//! consistency check tripped; 2 usage error; 3 exactness violation (a
//! non-dyadic point was requested with tolerance omitted or zero).
//!
//! stdout carries data only, diagnostics go to stderr, and `--out FILE`
//! duplicates the exact stdout bytes into a file. Settings resolve as
//! command-line flags over config-file keys over the
//! `FABIUS_CACHE_LIMIT` environment variable.

use std::io::Write;
use std::path::PathBuf;
use std::{env, fs};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{from_canonical_string, pow2, ratio, to_canonical_string, ExactRational};
use crate::audit::{run_named_suite, VerificationReport, SUITE_NAMES};
use crate::error::Error;
use crate::eval::{f_eval, DyadicPoint};
use crate::sequences::{c_seq, d_seq, f_seq, g_seq, r_seq, SequenceCache};
use crate::Result;

const DEFAULT_DIGITS: u32 = 30;
const DEFAULT_TABLE_MAX_LEVEL: u32 = 14;
/// Hard bound on exponents accepted in point syntax (`2^k`, `1e-k`),
/// protecting against accidental multi-gigabyte numbers.
const MAX_INPUT_EXPONENT: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "fabius",
    version,
    about = "Exact rational values of the Fabius function at dyadic points, \
             its coefficient sequences, level tables, and verification suites"
)]
struct Cli {
    /// Output format (default: text; verify defaults to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Duplicate the stdout bytes into this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// TOML config file (keys: jobs, table_max_level, cache_limit)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a coefficient sequence prefix
    Seq {
        /// Which sequence: c, d, F, G, or R (case-sensitive)
        #[arg(value_parser = parse_seq_name)]
        name: SeqName,
        /// Largest index to print (R starts at index 1)
        #[arg(long)]
        max: u32,
    },
    /// Evaluate F(x)
    Eval {
        /// The point: "p/q", an integer, a decimal like 0.375 or 1e-30, or "2^-7"
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Tolerance for non-dyadic points (same syntax as --x; 0 demands exactness)
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        /// Decimal digits to render (default 30)
        #[arg(long)]
        digits: Option<u32>,
    },
    /// The new dyadic values at one level (odd numerators) and their common denominator
    Table {
        /// Level n: values F(a/2^n) for odd a
        #[arg(long)]
        level: u32,
    },
    /// Run verification suites
    Verify {
        /// reshetnikov, valuation, parity, cross, eval, denominators, conjecture, or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest index to check (per-suite defaults otherwise)
        #[arg(long)]
        max: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SeqName {
    C,
    D,
    F,
    G,
    R,
}

impl SeqName {
    fn as_str(&self) -> &'static str {
        match self {
            SeqName::C => "c",
            SeqName::D => "d",
            SeqName::F => "F",
            SeqName::G => "G",
            SeqName::R => "R",
        }
    }
}

fn parse_seq_name(text: &str) -> std::result::Result<SeqName, String> {
    match text {
        "c" => Ok(SeqName::C),
        "d" => Ok(SeqName::D),
        "F" => Ok(SeqName::F),
        "G" => Ok(SeqName::G),
        "R" => Ok(SeqName::R),
        other => Err(format!(
            "unknown sequence {other:?}; expected c, d, F, G, or R (case-sensitive)"
        )),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    jobs: Option<usize>,
    table_max_level: Option<u32>,
    cache_limit: Option<u32>,
}

struct Output {
    payload: String,
    verification_failed: bool,
}

impl Output {
    fn data(payload: String) -> Self {
        Output {
            payload,
            verification_failed: false,
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Prints help/usage itself and exits 0 (help) or 2 (bad usage).
        Err(err) => err.exit(),
    };
    let out = cli.out.clone();
    match execute(cli) {
        Ok(output) => {
            if let Some(path) = out {
                if let Err(err) = fs::write(&path, output.payload.as_bytes()) {
                    eprintln!("error: {}: cannot write output: {err}", path.display());
                    return 2;
                }
            }
            print!("{}", output.payload);
            let _ = std::io::stdout().flush();
            u8::from(output.verification_failed)
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonDyadicExact(_) => 3,
        Error::Inconsistency(_) => 1,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<Output> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => FileConfig::default(),
    };
    let cache_limit = resolve_cache_limit(&config)?;
    let table_max_level = config.table_max_level.unwrap_or(DEFAULT_TABLE_MAX_LEVEL);
    if let Some(jobs) = cli.jobs.or(config.jobs) {
        // A global pool can only be installed once per process; a
        // repeat install attempt is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let format = cli.format.unwrap_or(match cli.command {
        Command::Verify { .. } => Format::Json,
        _ => Format::Text,
    });
    let cache = SequenceCache::new();
    match cli.command {
        Command::Seq { name, max } => {
            enforce_cache_limit(max, cache_limit)?;
            handle_seq(name, max, format, &cache)
        }
        Command::Eval { x, eps, digits } => handle_eval(&x, eps.as_deref(), digits, format, &cache),
        Command::Table { level } => {
            enforce_cache_limit(level, cache_limit)?;
            handle_table(level, table_max_level, format, &cache)
        }
        Command::Verify { suite, max } => handle_verify(&suite, max, cache_limit, format, &cache),
    }
}

fn load_config(path: &PathBuf) -> Result<FileConfig> {
    let text = fs::read_to_string(path).map_err(|err| Error::Io {
        path: path.display().to_string(),
        message: format!("cannot read config: {err}"),
    })?;
    toml::from_str(&text).map_err(|err| Error::Io {
        path: path.display().to_string(),
        message: format!("invalid config: {err}"),
    })
}

fn resolve_cache_limit(config: &FileConfig) -> Result<Option<u32>> {
    if let Some(limit) = config.cache_limit {
        return Ok(Some(limit));
    }
    match env::var("FABIUS_CACHE_LIMIT") {
        Ok(text) => {
            let limit = text.trim().parse().map_err(|_| Error::Parse {
                input: text.clone(),
                expected: "a nonnegative integer in FABIUS_CACHE_LIMIT",
            })?;
            Ok(Some(limit))
        }
        Err(env::VarError::NotPresent) => Ok(None),
        Err(err) => Err(Error::Parse {
            input: err.to_string(),
            expected: "unicode text in FABIUS_CACHE_LIMIT",
        }),
    }
}

fn enforce_cache_limit(requested: u32, limit: Option<u32>) -> Result<()> {
    match limit {
        Some(limit) if requested > limit => Err(Error::LimitExceeded { requested, limit }),
        _ => Ok(()),
    }
}

/// Parse the point syntax shared by `--x` and `--eps`: `p/q`, an
/// integer, a decimal (optionally with exponent), or a power of two
/// written `2^k`.
pub fn parse_rational_input(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(parse_error(text));
    }
    if let Some(exponent) = s.strip_prefix("2^") {
        let e: i64 = exponent.parse().map_err(|_| parse_error(text))?;
        if e.unsigned_abs() > MAX_INPUT_EXPONENT {
            return Err(parse_error(text));
        }
        return Ok(pow2(e));
    }
    if s.contains(['.', 'e', 'E']) {
        return parse_decimal_text(s).ok_or_else(|| parse_error(text));
    }
    from_canonical_string(s).map_err(|_| parse_error(text))
}

fn parse_error(text: &str) -> Error {
    Error::Parse {
        input: text.to_string(),
        expected: "a rational: p/q, an integer, a decimal like 0.375 or 1e-30, or 2^k",
    }
}

fn parse_decimal_text(s: &str) -> Option<ExactRational> {
    let (mantissa, exp_text) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, Some(e)),
        None => (s, None),
    };
    let exponent: i64 = match exp_text {
        Some(e) => e.parse().ok()?,
        None => 0,
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let mut numer: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    if negative {
        numer = -numer;
    }
    let shift = exponent.checked_sub(i64::try_from(frac_part.len()).ok()?)?;
    if shift.unsigned_abs() > MAX_INPUT_EXPONENT {
        return None;
    }
    let scale = BigInt::from(10).pow(u32::try_from(shift.unsigned_abs()).ok()?);
    Some(if shift >= 0 {
        ExactRational::from_integer(numer * scale)
    } else {
        ratio(numer, scale)
    })
}

/// Render `value` with `digits` places after the point, rounding to
/// nearest with ties away from zero.
fn decimal_string(value: &ExactRational, digits: u32) -> String {
    let scaled_numer = value.numer().abs() * BigInt::from(10).pow(digits);
    let (mut q, r) = scaled_numer.div_rem(value.denom());
    if BigInt::from(2) * r >= *value.denom() {
        q += 1;
    }
    let sign = if value.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    let text = q.to_string();
    if digits == 0 {
        return format!("{sign}{text}");
    }
    let digits = digits as usize;
    let padded = format!("{text:0>width$}", width = digits + 1);
    let split = padded.len() - digits;
    format!("{sign}{}.{}", &padded[..split], &padded[split..])
}

#[derive(Serialize)]
struct SeqEnvelope {
    command: &'static str,
    params: SeqParams,
    rows: Vec<SeqRow>,
    version: &'static str,
}

#[derive(Serialize)]
struct SeqParams {
    name: &'static str,
    max: u32,
}

#[derive(Serialize)]
struct SeqRow {
    n: u32,
    value: String,
}

fn handle_seq(name: SeqName, max: u32, format: Format, cache: &SequenceCache) -> Result<Output> {
    let max_index = max as usize;
    let rational_rows = |values: Vec<ExactRational>| -> Vec<SeqRow> {
        values
            .iter()
            .enumerate()
            .map(|(n, v)| SeqRow {
                n: n as u32,
                value: to_canonical_string(v),
            })
            .collect()
    };
    let integer_rows = |values: Vec<BigInt>, first_index: u32| -> Vec<SeqRow> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| SeqRow {
                n: first_index + i as u32,
                value: v.to_string(),
            })
            .collect()
    };
    let rows = match name {
        SeqName::C => rational_rows(c_seq(max_index, cache)),
        SeqName::D => rational_rows(d_seq(max_index, cache)),
        SeqName::F => integer_rows(f_seq(max_index, cache)?, 0),
        SeqName::G => integer_rows(g_seq(max_index, cache)?, 0),
        SeqName::R => integer_rows(r_seq(max_index, cache)?, 1),
    };
    let payload = match format {
        Format::Text => rows
            .iter()
            .map(|r| format!("{} {}\n", r.n, r.value))
            .collect(),
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for r in &rows {
                out.push_str(&format!("{},{}\n", r.n, r.value));
            }
            out
        }
        Format::Json => json_line(&SeqEnvelope {
            command: "seq",
            params: SeqParams {
                name: name.as_str(),
                max,
            },
            rows,
            version: env!("CARGO_PKG_VERSION"),
        }),
    };
    Ok(Output::data(payload))
}

#[derive(Serialize)]
struct EvalEnvelope {
    command: &'static str,
    params: EvalParams,
    rows: Vec<EvalRow>,
    version: &'static str,
}

#[derive(Serialize)]
struct EvalParams {
    x: String,
    eps: Option<String>,
    digits: u32,
}

#[derive(Serialize)]
struct EvalRow {
    x: String,
    value: String,
    error_bound: String,
    method: &'static str,
    decimal: String,
}

fn handle_eval(
    x_text: &str,
    eps_text: Option<&str>,
    digits: Option<u32>,
    format: Format,
    cache: &SequenceCache,
) -> Result<Output> {
    let x = parse_rational_input(x_text)?;
    let eps = eps_text.map(parse_rational_input).transpose()?;
    let eps_value = eps.clone().unwrap_or_else(ExactRational::zero);
    let result = f_eval(&x, &eps_value, cache)?;
    let shown_digits = digits.unwrap_or(DEFAULT_DIGITS);
    let decimal = decimal_string(&result.value, shown_digits);
    let value = to_canonical_string(&result.value);
    let bound = to_canonical_string(&result.error_bound);
    let exact = result.error_bound.is_zero();

    let payload = match format {
        Format::Text => match (exact, digits) {
            (true, None) => format!("{value}\n"),
            (true, Some(_)) => format!("{decimal}\nexact {value}\n"),
            (false, _) => format!("{decimal}\nerror <= {bound}\n"),
        },
        Format::Csv => format!(
            "x,value,error_bound,method,decimal\n{},{value},{bound},{},{decimal}\n",
            to_canonical_string(&x),
            result.method.as_str(),
        ),
        Format::Json => json_line(&EvalEnvelope {
            command: "eval",
            params: EvalParams {
                x: to_canonical_string(&x),
                eps: eps.as_ref().map(to_canonical_string),
                digits: shown_digits,
            },
            rows: vec![EvalRow {
                x: to_canonical_string(&x),
                value,
                error_bound: bound,
                method: result.method.as_str(),
                decimal,
            }],
            version: env!("CARGO_PKG_VERSION"),
        }),
    };
    Ok(Output::data(payload))
}

#[derive(Serialize)]
struct TableEnvelope {
    command: &'static str,
    params: TableParams,
    rows: Vec<TableRow>,
    lcm: String,
    version: &'static str,
}

#[derive(Serialize)]
struct TableParams {
    level: u32,
}

#[derive(Serialize)]
struct TableRow {
    a: u64,
    value: String,
}

fn handle_table(
    level: u32,
    table_max_level: u32,
    format: Format,
    cache: &SequenceCache,
) -> Result<Output> {
    if level == 0 {
        return Err(Error::IndexRange { got: 0, min: 1 });
    }
    if level > table_max_level {
        return Err(Error::LimitExceeded {
            requested: level,
            limit: table_max_level,
        });
    }
    // Past this, 2^(level-1) numerators no longer fit in memory anyway.
    if level > 62 {
        return Err(Error::LimitExceeded {
            requested: level,
            limit: 62,
        });
    }
    let zero = ExactRational::zero();
    let values: Vec<(u64, ExactRational)> = (0..1u64 << (level - 1))
        .into_par_iter()
        .map(|k| {
            let a = 2 * k + 1;
            let x = DyadicPoint::new(a as i64, level).value();
            f_eval(&x, &zero, cache).map(|r| (a, r.value))
        })
        .collect::<Result<_>>()?;
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let rows: Vec<TableRow> = values
        .iter()
        .map(|(a, v)| TableRow {
            a: *a,
            value: to_canonical_string(v),
        })
        .collect();

    let payload = match format {
        Format::Text => {
            let mut out: String = rows
                .iter()
                .map(|r| format!("{} {}\n", r.a, r.value))
                .collect();
            out.push_str(&format!("D {lcm}\n"));
            out
        }
        Format::Csv => {
            let mut out = String::from("a,value\n");
            for r in &rows {
                out.push_str(&format!("{},{}\n", r.a, r.value));
            }
            out.push_str(&format!("D,{lcm}\n"));
            out
        }
        Format::Json => json_line(&TableEnvelope {
            command: "table",
            params: TableParams { level },
            rows,
            lcm: lcm.to_string(),
            version: env!("CARGO_PKG_VERSION"),
        }),
    };
    Ok(Output::data(payload))
}

#[derive(Serialize)]
struct VerifyEnvelope {
    command: &'static str,
    params: VerifyParams,
    report: Vec<VerificationReport>,
    version: &'static str,
}

#[derive(Serialize)]
struct VerifyParams {
    suite: String,
    max: Option<u32>,
}

fn suite_default_max(name: &str) -> u32 {
    match name {
        "reshetnikov" | "valuation" | "parity" => 200,
        "cross" => 50,
        "eval" => 8,
        // denominators, conjecture
        _ => 10,
    }
}

/// Caps applied only under `--suite all`, where a single `--max` spans
/// suites whose cost grows exponentially in the index.
fn suite_all_cap(name: &str, requested: u32) -> u32 {
    match name {
        "eval" => requested.min(8),
        "denominators" | "conjecture" => requested.min(10),
        _ => requested,
    }
}

fn handle_verify(
    suite: &str,
    max: Option<u32>,
    cache_limit: Option<u32>,
    format: Format,
    cache: &SequenceCache,
) -> Result<Output> {
    let names: Vec<&'static str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        match SUITE_NAMES.iter().find(|s| **s == suite) {
            Some(name) => vec![name],
            None => {
                return Err(Error::Parse {
                    input: suite.to_string(),
                    expected: "a suite: reshetnikov, valuation, parity, cross, eval, \
                               denominators, conjecture, or all",
                })
            }
        }
    };
    let mut reports = Vec::with_capacity(names.len());
    for name in names {
        let resolved = match max {
            Some(m) if suite == "all" => suite_all_cap(name, m),
            Some(m) => m,
            None => suite_default_max(name),
        };
        enforce_cache_limit(resolved, cache_limit)?;
        reports.push(run_named_suite(name, resolved, cache)?);
    }
    let verification_failed = reports.iter().any(|r| !r.passed());

    let payload = match format {
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!(
                    "{} {}..={} {} ({} ms)\n",
                    r.suite,
                    r.n_min,
                    r.n_max,
                    if r.passed() { "pass" } else { "fail" },
                    r.elapsed_ms,
                ));
                if let Some(f) = &r.first_failure {
                    out.push_str(&format!(
                        "first failure n={}: expected {}; actual {}\n",
                        f.n, f.expected, f.actual
                    ));
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("suite,n_min,n_max,outcome,failure_n,elapsed_ms\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.suite,
                    r.n_min,
                    r.n_max,
                    if r.passed() { "pass" } else { "fail" },
                    r.first_failure
                        .as_ref()
                        .map(|f| f.n.to_string())
                        .unwrap_or_default(),
                    r.elapsed_ms,
                ));
            }
            out
        }
        Format::Json => json_line(&VerifyEnvelope {
            command: "verify",
            params: VerifyParams {
                suite: suite.to_string(),
                max,
            },
            report: reports,
            version: env!("CARGO_PKG_VERSION"),
        }),
    };
    Ok(Output {
        payload,
        verification_failed,
    })
}

fn json_line<T: Serialize>(envelope: &T) -> String {
    let mut line = serde_json::to_string(envelope).expect("serializable envelope");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> ExactRational {
        from_canonical_string(s).unwrap()
    }

    #[test]
    fn cli_declaration_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn rational_input_forms() {
        assert_eq!(parse_rational_input("3/8").unwrap(), rat("3/8"));
        assert_eq!(parse_rational_input("6/16").unwrap(), rat("3/8"));
        assert_eq!(parse_rational_input("-7").unwrap(), rat("-7"));
        assert_eq!(parse_rational_input("0.375").unwrap(), rat("3/8"));
        assert_eq!(parse_rational_input(".5").unwrap(), rat("1/2"));
        assert_eq!(parse_rational_input("-0.5").unwrap(), rat("-1/2"));
        assert_eq!(parse_rational_input("1e-3").unwrap(), rat("1/1000"));
        assert_eq!(parse_rational_input("2.5E2").unwrap(), rat("250"));
        assert_eq!(parse_rational_input("2^-7").unwrap(), rat("1/128"));
        assert_eq!(parse_rational_input("2^5").unwrap(), rat("32"));
        assert_eq!(parse_rational_input(" 1/3 ").unwrap(), rat("1/3"));
        for bad in [
            "",
            "x",
            "2^",
            "2^x",
            "1.2.3",
            "1e",
            "--5",
            "1/0",
            "2^9999999999",
        ] {
            assert!(parse_rational_input(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn decimal_rendering_rounds_ties_away() {
        assert_eq!(decimal_string(&rat("73/288"), 6), "0.253472");
        assert_eq!(decimal_string(&rat("73/288"), 4), "0.2535");
        assert_eq!(decimal_string(&rat("1/8"), 2), "0.13");
        assert_eq!(decimal_string(&rat("-1/8"), 2), "-0.13");
        assert_eq!(decimal_string(&rat("1/2"), 0), "1");
        assert_eq!(decimal_string(&rat("-1/2"), 0), "-1");
        assert_eq!(decimal_string(&rat("-1/1000"), 1), "0.0");
        assert_eq!(decimal_string(&rat("5"), 3), "5.000");
        assert_eq!(decimal_string(&rat("1/3"), 8), "0.33333333");
    }

    #[test]
    fn suite_max_resolution() {
        assert_eq!(suite_default_max("parity"), 200);
        assert_eq!(suite_default_max("cross"), 50);
        assert_eq!(suite_default_max("eval"), 8);
        assert_eq!(suite_default_max("conjecture"), 10);
        assert_eq!(suite_all_cap("eval", 200), 8);
        assert_eq!(suite_all_cap("denominators", 200), 10);
        assert_eq!(suite_all_cap("parity", 200), 200);
        assert_eq!(suite_all_cap("eval", 3), 3);
    }

    #[test]
    fn cache_limit_enforcement() {
        assert!(enforce_cache_limit(10, None).is_ok());
        assert!(enforce_cache_limit(10, Some(10)).is_ok());
        assert!(matches!(
            enforce_cache_limit(11, Some(10)),
            Err(Error::LimitExceeded {
                requested: 11,
                limit: 10
            })
        ));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let parsed: std::result::Result<FileConfig, _> = toml::from_str("jobs = 2");
        assert_eq!(parsed.unwrap().jobs, Some(2));
        let bad: std::result::Result<FileConfig, _> = toml::from_str("jbos = 2");
        assert!(bad.is_err());
    }
}
