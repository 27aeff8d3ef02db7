//! Command-line front end.
//!
//! stdout carries data only; diagnostics go to stderr. Exit codes: 0 success,
//! 1 verification mismatch, 2 usage or precondition failure, 3 I/O failure.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bijection::{self, PlacementRow};
use crate::bits::{RunSpectrum, ENUMERABLE_LIMIT};
use crate::closedform::{self, RunCountQuery};
use crate::count::BigCount;
use crate::enumeration::{self, with_threads, BitOrder, KEEP_ROWS_LIMIT};
use crate::error::Error;
use crate::sequences::{self, SequenceId};
use crate::stochastic;

pub const SCHEMA: &str = "runspectrum/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "runspectrum",
    version,
    about = "Exact run-length statistics of binary strings"
)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    /// Upper bound on worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print r_n(i) for i = 1..n and the total t(n).
    Table {
        n: u64,
        /// Count by exhaustive enumeration instead of the closed form (n <= 63).
        #[arg(long)]
        oracle: bool,
        /// Also print the spectrum of every n-string (n <= 16).
        #[arg(long)]
        per_string: bool,
    },
    /// Cross-check every counting route up to n_max.
    Verify { n_max: u64 },
    /// List the placements realizing every run of length i in n-strings.
    Bijection { n: u64, i: u64 },
    /// Monte Carlo estimate of the expected number of runs.
    Sample {
        n: u64,
        /// Count only runs of this length.
        #[arg(long = "i")]
        i: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Run spectrum of a file or stdin (`-`).
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BitOrder::MsbFirst)]
        bit_order: BitOrder,
    },
    /// Print terms of A045623 and A001792, or check their identities.
    Oeis {
        #[arg(long, default_value_t = 20)]
        terms: u64,
        #[arg(long)]
        sequence: Option<SequenceId>,
        /// Check the run-count identities up to this n instead of printing terms.
        #[arg(long)]
        check: Option<u64>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut (dyn Write + Send) = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let result = match cli.threads {
        Some(0) => Err(CliError::usage("--threads must be at least 1")),
        Some(t) => with_threads(t, || dispatch(cli, &mut *out, &mut *err)),
        None => dispatch(cli, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Table {
            n,
            oracle,
            per_string,
        } => cmd_table(*n, *oracle, *per_string, fmt, out),
        Command::Verify { n_max } => cmd_verify(*n_max, fmt, out, err),
        Command::Bijection { n, i } => cmd_bijection(*n, *i, fmt, out),
        Command::Sample { n, i, samples } => cmd_sample(*n, *i, *samples, cli.seed, fmt, out),
        Command::Analyze { input, bit_order } => cmd_analyze(input, *bit_order, fmt, out),
        Command::Oeis {
            terms,
            sequence,
            check,
        } => cmd_oeis(*terms, *sequence, *check, fmt, out),
    }
}

fn emit_json(out: &mut (dyn Write + Send), mut doc: Value) -> io::Result<()> {
    if let Value::Object(map) = &mut doc {
        map.insert("schema".into(), Value::from(SCHEMA));
    }
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)
}

fn counts_json(counts: &[BigCount]) -> Vec<String> {
    counts.iter().map(ToString::to_string).collect()
}

pub fn cmd_table(
    n: u64,
    oracle: bool,
    per_string: bool,
    fmt: OutputFormat,
    out: &mut (dyn Write + Send),
) -> CliResult {
    if n < 1 {
        return Err(CliError::usage("n must be at least 1"));
    }
    if oracle && n > ENUMERABLE_LIMIT as u64 {
        return Err(CliError::usage(format!(
            "--oracle needs n <= {ENUMERABLE_LIMIT}, got {n}"
        )));
    }
    if per_string && n > KEEP_ROWS_LIMIT {
        return Err(CliError::usage(format!(
            "--per-string needs n <= {KEEP_ROWS_LIMIT}, got {n}"
        )));
    }
    let (route, counts, rows) = if oracle || per_string {
        let table = enumeration::enumerate_table(n, per_string)?;
        (
            if oracle { "oracle" } else { "formula" },
            if oracle {
                table.aggregate.dense()
            } else {
                formula_row(n)?
            },
            table.per_string,
        )
    } else {
        ("formula", formula_row(n)?, None)
    };
    let total: BigCount = if route == "oracle" {
        counts.iter().sum()
    } else {
        closedform::t_closed(n)?
    };

    match fmt {
        OutputFormat::Plain => {
            writeln!(out, "# n={n} route={route}")?;
            if let Some(rows) = &rows {
                write_matrix(out, n, rows, &counts)?;
            } else {
                writeln!(out, "i\tr_n(i)")?;
                for (i, c) in counts.iter().enumerate() {
                    writeln!(out, "{}\t{c}", i + 1)?;
                }
            }
            writeln!(out, "total\t{total}")?;
        }
        OutputFormat::Csv => {
            writeln!(out, "n,i,count")?;
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{n},{},{c}", i + 1)?;
            }
            writeln!(out, "{n},total,{total}")?;
        }
        OutputFormat::Json => {
            let mut doc = json!({
                "command": "table",
                "n": n,
                "route": route,
                "rows": counts.iter().enumerate().map(|(i, c)| json!({"i": i + 1, "count": c})).collect::<Vec<_>>(),
                "total": total,
            });
            if let Some(rows) = &rows {
                doc["per_string"] = rows
                    .iter()
                    .map(|(idx, s)| {
                        json!({
                            "index": idx,
                            "string": format!("{idx:0width$b}", width = n as usize),
                            "counts": counts_json(&s.dense()),
                        })
                    })
                    .collect();
            }
            emit_json(out, doc)?;
        }
    }
    Ok(EXIT_OK)
}

fn formula_row(n: u64) -> Result<Vec<BigCount>, Error> {
    (1..=n)
        .map(|i| RunCountQuery::new(n, i).map(closedform::r_closed))
        .collect()
}

fn write_matrix(
    out: &mut (dyn Write + Send),
    n: u64,
    rows: &[(u64, RunSpectrum)],
    counts: &[BigCount],
) -> io::Result<()> {
    let width = n as usize;
    write!(out, "{:<6}", "i")?;
    for (idx, _) in rows {
        write!(out, " {idx:0width$b}")?;
    }
    writeln!(out, " | r_n(i)")?;
    for i in 1..=n {
        write!(out, "{:<6}", i)?;
        for (_, s) in rows {
            write!(out, " {:>width$}", s.get(i).to_string())?;
        }
        writeln!(out, " | {}", counts[i as usize - 1])?;
    }
    Ok(())
}

/// One line of verification output; `None` detail means success.
struct Check {
    section: &'static str,
    line: String,
    failure: Option<String>,
}

fn check(section: &'static str, line: String, failure: Option<String>) -> Check {
    Check {
        section,
        line,
        failure,
    }
}

fn as_int(c: &BigCount) -> BigInt {
    BigInt::from(c.as_biguint().clone())
}

fn verify_checks(n_max: u64, report: &mut dyn FnMut(Check) -> bool) -> Result<(), Error> {
    let q = RunCountQuery::new;

    // Oracle against closed form.
    for n in 1..=n_max.min(16) {
        let table = enumeration::enumerate_table(n, false)?;
        let oracle = table.aggregate.dense();
        let mut failure = None;
        for i in 1..=n {
            let closed = closedform::r_closed(q(n, i)?);
            if closed != oracle[i as usize - 1] {
                failure = Some(format!(
                    "r_{n}({i}): enumeration {} vs closed form {closed}",
                    oracle[i as usize - 1]
                ));
                break;
            }
        }
        let values: Vec<String> = oracle.iter().map(ToString::to_string).collect();
        if !report(check(
            "oracle",
            format!("n={n}: {}", values.join(" ")),
            failure,
        )) {
            return Ok(());
        }
    }

    // Four routes and the unrolled recursion.
    let mut failure = None;
    'routes: for n in 1..=n_max {
        for i in 1..=n {
            let qq = q(n, i)?;
            let closed = closedform::r_closed(qq);
            let others = [
                ("recursive", closedform::r_recursive(qq)),
                ("recursive_alt", closedform::r_recursive_alt(qq)),
                ("combinatorial", closedform::r_combinatorial(qq)),
            ];
            if let Some((name, v)) = others.iter().find(|(_, v)| *v != closed) {
                failure = Some(format!("r_{n}({i}): closed {closed} vs {name} {v}"));
                break 'routes;
            }
            if n <= 64 && i + 1 < n {
                for k in 0..n - i {
                    let v = closedform::r_unrolled(qq, k)?;
                    if v != closed {
                        failure = Some(format!("r_{n}({i}) unrolled at k={k}: {v} vs {closed}"));
                        break 'routes;
                    }
                }
            }
        }
    }
    if !report(check("routes", format!("n<={n_max}: closed = recursive = recursive_alt = combinatorial, unrolled k-independent"), failure)) {
        return Ok(());
    }

    // Totals.
    let mut failure = None;
    for n in 1..=n_max {
        let t = closedform::t_closed(n)?;
        let row: BigCount = formula_row(n)?.iter().sum();
        let comb = closedform::t_combinatorial(n)?;
        if row != t || comb != t {
            failure = Some(format!(
                "t({n}): closed {t}, row sum {row}, combinatorial {comb}"
            ));
            break;
        }
        if n <= bijection::ENUMERATION_LIMIT.min(n_max) {
            let parts = bijection::count_parts_in_compositions(n)?;
            if parts != t {
                failure = Some(format!("t({n}) = {t} but compositions hold {parts} parts"));
                break;
            }
            for v in 1..=n {
                let ones = bijection::count_parts_equal(n, v)?;
                let r = closedform::r_closed(q(n, v)?);
                if ones != r {
                    failure = Some(format!("r_{n}({v}) = {r} but {ones} parts equal {v}"));
                    break;
                }
            }
            if failure.is_some() {
                break;
            }
        }
    }
    if !report(check(
        "totals",
        format!("n<={n_max}: row sums, combinatorial totals and composition part counts agree"),
        failure,
    )) {
        return Ok(());
    }

    // Bijection completeness.
    for n in 1..=n_max.min(12) {
        let mut failure = None;
        for i in 1..=n {
            let mut image: Vec<_> = bijection::enumerate_placements(n, i)?.collect();
            let mut oracle = enumeration::run_occurrences(n, i)?;
            image.sort();
            oracle.sort();
            let before = image.len();
            image.dedup();
            if image.len() != before {
                failure = Some(format!(
                    "n={n} i={i}: placements repeat a (string, position) pair"
                ));
                break;
            }
            if image != oracle {
                failure = Some(format!(
                    "n={n} i={i}: {} placements vs {} run occurrences",
                    image.len(),
                    oracle.len()
                ));
                break;
            }
        }
        if !report(check(
            "bijection",
            format!("n={n}: placements = run occurrences"),
            failure,
        )) {
            return Ok(());
        }
    }

    // Probabilities.
    let mut failure = None;
    'prob: for n in 1..=n_max {
        let scale = BigRational::from_integer(as_int(&BigCount::pow2(n)));
        let t = closedform::t_closed(n)?;
        if stochastic::expected_total(n)? * &scale != BigRational::from_integer(as_int(&t)) {
            failure = Some(format!("E(T) * 2^{n} != t({n})"));
            break;
        }
        for i in 1..=n {
            let e = stochastic::expected_runs_of_length(n, i)?;
            let sum: closedform::ExactRational = (1..=n)
                .map(|k| stochastic::prob_run_of_length_at(n, k, i))
                .sum::<Result<_, _>>()?;
            let r = closedform::r_closed(q(n, i)?);
            if sum != e || &e * &scale != BigRational::from_integer(as_int(&r)) {
                failure = Some(format!(
                    "E(T_{i}) for n={n} disagrees with r_n(i)/2^n or the indicator sum"
                ));
                break 'prob;
            }
        }
        if n <= 12 {
            let freq = enumeration::start_frequencies(n)?;
            for k in 1..=n {
                for i in 1..=n {
                    let observed = BigRational::new(
                        freq[k as usize - 1][i as usize - 1].into(),
                        (1u64 << n).into(),
                    );
                    if observed != stochastic::prob_run_of_length_at(n, k, i)? {
                        failure = Some(format!("n={n} k={k} i={i}: frequency {observed}"));
                        break 'prob;
                    }
                }
            }
        }
    }
    if !report(check(
        "probability",
        format!("n<={n_max}: indicator sums, normalisation and exhaustive frequencies agree"),
        failure,
    )) {
        return Ok(());
    }

    // OEIS identities.
    let cc = sequences::cross_check(n_max)?;
    report(check(
        "oeis",
        format!(
            "n<={n_max}: r_n(i) = A045623(n-i), t(n) = A001792(n-1) ({} identities)",
            cc.checked
        ),
        cc.first_failure,
    ));
    Ok(())
}

pub fn cmd_verify(
    n_max: u64,
    fmt: OutputFormat,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> CliResult {
    if n_max < 2 {
        return Err(CliError::usage(format!(
            "verify needs n_max >= 2, got {n_max}"
        )));
    }
    let mut checks = Vec::new();
    let mut failed = false;
    verify_checks(n_max, &mut |c: Check| {
        failed |= c.failure.is_some();
        checks.push(c);
        !failed
    })?;

    match fmt {
        OutputFormat::Plain => {
            let mut section = "";
            for c in &checks {
                if c.section != section {
                    section = c.section;
                    writeln!(out, "[{section}]")?;
                }
                match &c.failure {
                    None => writeln!(out, "{} OK", c.line)?,
                    Some(f) => writeln!(out, "{} FAIL: {f}", c.line)?,
                }
            }
            writeln!(
                out,
                "{}",
                if failed {
                    "verification FAILED"
                } else {
                    "all checks passed"
                }
            )?;
        }
        OutputFormat::Csv => {
            writeln!(out, "section,check,status,detail")?;
            for c in &checks {
                let status = if c.failure.is_some() { "FAIL" } else { "OK" };
                writeln!(
                    out,
                    "{},{},{status},{}",
                    c.section,
                    csv_field(&c.line),
                    csv_field(c.failure.as_deref().unwrap_or(""))
                )?;
            }
        }
        OutputFormat::Json => emit_json(
            out,
            json!({
                "command": "verify",
                "n_max": n_max,
                "passed": !failed,
                "checks": checks.iter().map(|c| json!({
                    "section": c.section,
                    "check": c.line,
                    "ok": c.failure.is_none(),
                    "detail": c.failure,
                })).collect::<Vec<_>>(),
            }),
        )?,
    }
    if let Some(c) = checks.iter().find(|c| c.failure.is_some()) {
        writeln!(
            err,
            "mismatch: {}",
            c.failure.as_deref().unwrap_or_default()
        )?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_bijection(n: u64, i: u64, fmt: OutputFormat, out: &mut (dyn Write + Send)) -> CliResult {
    if n > 12 {
        return Err(CliError::usage(format!(
            "bijection listing needs n <= 12, got {n}"
        )));
    }
    let mut rows = bijection::placement_rows(n, i)?;
    rows.sort_by_key(PlacementRow::parts);
    let base = |r: &PlacementRow| {
        r.base
            .as_ref()
            .map_or("()".to_string(), ToString::to_string)
    };

    match fmt {
        OutputFormat::Plain => {
            writeln!(out, "# n={n} i={i} placements={}", rows.len())?;
            let mut current = None;
            for r in &rows {
                if current != Some(r.parts()) {
                    current = Some(r.parts());
                    writeln!(out, "p={}", r.parts())?;
                }
                writeln!(
                    out,
                    "  {} slot={} {} pos={}",
                    base(r),
                    r.slot,
                    r.string,
                    r.position
                )?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "p,composition,slot,string,position")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.parts(),
                    csv_field(&base(r)),
                    r.slot,
                    r.string,
                    r.position
                )?;
            }
        }
        OutputFormat::Json => emit_json(
            out,
            json!({
                "command": "bijection",
                "n": n,
                "i": i,
                "placements": rows.iter().map(|r| json!({
                    "p": r.parts(),
                    "composition": r.base.as_ref().map_or(vec![], |c| c.parts().to_vec()),
                    "slot": r.slot,
                    "string": r.string.to_string(),
                    "position": r.position,
                })).collect::<Vec<_>>(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_sample(
    n: u64,
    i: Option<u64>,
    samples: u64,
    seed: u64,
    fmt: OutputFormat,
    out: &mut (dyn Write + Send),
) -> CliResult {
    let r = stochastic::monte_carlo(n, i, samples, seed)?;
    let exact_f = r.exact_mean.numer().to_f64().unwrap_or(f64::NAN)
        / r.exact_mean.denom().to_f64().unwrap_or(f64::NAN);
    let i_text = r.i.map_or("all".to_string(), |v| v.to_string());
    match fmt {
        OutputFormat::Plain => {
            writeln!(
                out,
                "n={} i={i_text} samples={} seed={}",
                r.n, r.samples, r.seed
            )?;
            writeln!(out, "observed_total\t{}", r.observed_total)?;
            writeln!(out, "empirical_mean\t{}", r.empirical_mean)?;
            writeln!(out, "exact_mean\t{} ({exact_f})", r.exact_mean)?;
            writeln!(out, "abs_error\t{}", r.abs_error)?;
            writeln!(out, "rel_error\t{}", r.rel_error)?;
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "n,i,samples,seed,observed_total,empirical_mean,exact_mean,abs_error,rel_error"
            )?;
            writeln!(
                out,
                "{},{i_text},{},{},{},{},{},{},{}",
                r.n,
                r.samples,
                r.seed,
                r.observed_total,
                r.empirical_mean,
                r.exact_mean,
                r.abs_error,
                r.rel_error
            )?;
        }
        OutputFormat::Json => {
            let mut doc = serde_json::to_value(&r).map_err(io::Error::from)?;
            doc["command"] = Value::from("sample");
            emit_json(out, doc)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_analyze(
    input: &std::path::Path,
    order: BitOrder,
    fmt: OutputFormat,
    out: &mut (dyn Write + Send),
) -> CliResult {
    let source: Box<dyn Read> = if input.as_os_str() == "-" {
        Box::new(io::stdin().lock())
    } else {
        Box::new(BufReader::new(File::open(input).map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("{}: {e}", input.display()),
        })?))
    };
    let spectrum = enumeration::analyze_stream(source, order)?;
    let runs = spectrum.total();
    let runs_f = runs.as_biguint().to_f64().unwrap_or(f64::NAN);
    let rows: Vec<(u64, BigCount, f64, f64)> = spectrum
        .iter()
        .map(|(i, c)| {
            let observed = c.as_biguint().to_f64().unwrap_or(f64::NAN) / runs_f;
            let reference = 0.5f64.powi(i.min(i32::MAX as u64) as i32);
            (i, c.clone(), observed, reference)
        })
        .collect();
    match fmt {
        OutputFormat::Plain => {
            writeln!(out, "# bits={} runs={runs}", spectrum.n())?;
            writeln!(out, "i\tcount\tobserved_fraction\treference_2^-i")?;
            for (i, c, obs, reference) in &rows {
                writeln!(out, "{i}\t{c}\t{obs:.6}\t{reference:.6}")?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "i,count,observed_fraction,reference")?;
            for (i, c, obs, reference) in &rows {
                writeln!(out, "{i},{c},{obs},{reference}")?;
            }
        }
        OutputFormat::Json => emit_json(
            out,
            json!({
                "command": "analyze",
                "bits": spectrum.n(),
                "runs": runs,
                "rows": rows.iter().map(|(i, c, obs, _)| json!({
                    "i": i,
                    "count": c,
                    "observed_fraction": obs,
                    "reference": stochastic::asymptotic_fraction(*i).map(|r| r.to_string()).unwrap_or_default(),
                })).collect::<Vec<_>>(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_oeis(
    terms: u64,
    sequence: Option<SequenceId>,
    check: Option<u64>,
    fmt: OutputFormat,
    out: &mut (dyn Write + Send),
) -> CliResult {
    if let Some(n_max) = check {
        let report = sequences::cross_check(n_max)?;
        let fixtures_ok = [SequenceId::A045623, SequenceId::A001792].iter().all(|id| {
            id.fixture()
                .iter()
                .enumerate()
                .all(|(j, &v)| id.term(j as i64).is_ok_and(|t| t == BigCount::from(v)))
        });
        let passed = report.passed() && fixtures_ok;
        match fmt {
            OutputFormat::Json => emit_json(
                out,
                json!({
                    "command": "oeis",
                    "n_max": n_max,
                    "checked": report.checked,
                    "fixtures_ok": fixtures_ok,
                    "passed": passed,
                    "failure": report.first_failure,
                }),
            )?,
            OutputFormat::Csv => {
                writeln!(out, "n_max,checked,fixtures_ok,passed")?;
                writeln!(out, "{n_max},{},{fixtures_ok},{passed}", report.checked)?;
            }
            OutputFormat::Plain => {
                writeln!(
                    out,
                    "identities checked up to n={n_max}: {}",
                    report.checked
                )?;
                writeln!(out, "fixtures {}", if fixtures_ok { "OK" } else { "FAIL" })?;
                match &report.first_failure {
                    None => writeln!(out, "all identities hold")?,
                    Some(f) => writeln!(out, "FAIL: {f}")?,
                }
            }
        }
        return Ok(if passed { EXIT_OK } else { EXIT_MISMATCH });
    }

    let ids: Vec<SequenceId> = match sequence {
        Some(id) => vec![id],
        None => vec![SequenceId::A045623, SequenceId::A001792],
    };
    let table: Vec<(u64, Vec<BigCount>)> = (0..terms)
        .map(|j| {
            let vals = ids
                .iter()
                .map(|id| id.term(j as i64))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((j, vals))
        })
        .collect::<Result<_, Error>>()?;
    match fmt {
        OutputFormat::Plain | OutputFormat::Csv => {
            let sep = if fmt == OutputFormat::Csv { "," } else { "\t" };
            let header: Vec<String> = ids.iter().map(ToString::to_string).collect();
            writeln!(out, "j{sep}{}", header.join(sep))?;
            for (j, vals) in &table {
                let vals: Vec<String> = vals.iter().map(ToString::to_string).collect();
                writeln!(out, "{j}{sep}{}", vals.join(sep))?;
            }
        }
        OutputFormat::Json => {
            let mut doc = json!({ "command": "oeis", "terms": terms });
            for (k, id) in ids.iter().enumerate() {
                doc[id.to_string()] = table.iter().map(|(_, v)| v[k].to_string()).collect();
            }
            emit_json(out, doc)?;
        }
    }
    Ok(EXIT_OK)
}
