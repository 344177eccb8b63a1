//! Command-line front end: `seq`, `validate`, `sum`, `estimate`, `verify`.
//!
//! Settings are layered: built-in defaults, then `--preset`, then the
//! `--config` JSON file, then individual flags.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 hypotheses not satisfied, 4 summation or estimate failure.

pub mod config;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::asymptotics::{estimate, Family};
use crate::error::Error;
use crate::harness::{decay_fit, round_identity_scan, verify_row, verify_run_concurrent, VerificationRow};
use crate::quadratic::{spectral, validity_check, RationalInterval};
use crate::recurrence::w_range;
use crate::series::{inverse_enclosure, sum_enclosure, SumSpec};

pub use config::{parse_rational, preset, ConfigError, FamilyKind, OutputFormat, Preset, RunConfig, PRESETS};

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const INVALID: i32 = 3;
    pub const SERIES: i32 = 4;
}

/// Header of the `verify` table.
pub const VERIFY_HEADER: [&str; 8] = ["n", "sum_lo", "sum_hi", "inv_lo", "inv_hi", "estimate", "err_lo", "err_hi"];

#[derive(Parser, Debug)]
#[command(name = "horadam", version, about = "Reciprocal sums of generalized Fibonacci sub-sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n,W_n for n in [--from, --to].
    Seq(Flags),
    /// Check the hypotheses exactly; exit 0 iff they all hold.
    Validate(Flags),
    /// Enclose S_n and 1/S_n for --n.
    Sum(Flags),
    /// Evaluate the closed-form estimate B_n for --n.
    Estimate(Flags),
    /// Convergence table for n in [--from, --to] plus a JSON footer.
    Verify(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long)]
    m: Option<u64>,
    /// Comma-separated weights, e.g. 1,1
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<u64>>,
    /// Comma-separated offsets, e.g. 0,1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    l: Option<Vec<i64>>,
    #[arg(long)]
    alternating: bool,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    from: Option<u64>,
    #[arg(long)]
    to: Option<u64>,
    /// Target enclosure width, as an exact decimal such as 1e-20
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fractional digits in decimal renderings
    #[arg(long)]
    digits: Option<u32>,
    /// Worker threads for verify rows
    #[arg(long)]
    threads: Option<usize>,
    /// Write the verify footer here instead of stderr
    #[arg(long)]
    footer: Option<PathBuf>,
    /// Print the merged configuration as JSON and exit
    #[arg(long)]
    emit_config: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(exit::CONFIG, e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(exit::IO, e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(exit::IO, e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::InvalidParams(_) | Error::InvalidSelector(_) => exit::CONFIG,
            Error::NonPositiveDiscriminant(_) | Error::AlphaEqualsOne => exit::INVALID,
            _ => exit::SERIES,
        };
        Failure::new(code, e.to_string())
    }
}

fn merge(flags: &Flags) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(name) = &flags.preset {
        cfg.apply_preset(preset(name)?);
    }
    if let Some(path) = &flags.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(exit::CONFIG, format!("cannot read {}: {e}", path.display())))?;
        let file: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::new(exit::CONFIG, format!("bad config {}: {e}", path.display())))?;
        // overlay the file's fields on what we have so far
        let mut base = serde_json::to_value(&cfg).expect("serializable");
        match (base.as_object_mut(), file) {
            (Some(base), Value::Object(fields)) => base.extend(fields),
            _ => return Err(Failure::new(exit::CONFIG, "config file must hold a JSON object")),
        }
        cfg = serde_json::from_value(base)
            .map_err(|e| Failure::new(exit::CONFIG, format!("bad config {}: {e}", path.display())))?;
    }
    macro_rules! overlay {
        ($($flag:ident => $field:ident),* $(,)?) => {
            $(if let Some(v) = &flags.$flag { cfg.$field = v.clone(); })*
        };
    }
    overlay!(a => a, b => b, p => p, q => q, m => m, s => s, l => l, family => family,
             from => n_start, to => n_end, eps => eps, format => output,
             digits => display_digits, threads => threads);
    if flags.n.is_some() {
        cfg.n = flags.n;
    }
    if flags.alternating {
        cfg.alternating = true;
    }
    Ok(cfg)
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let result = dispatch(&cli.command, out, err);
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let flags = match command {
        Command::Seq(f)
        | Command::Validate(f)
        | Command::Sum(f)
        | Command::Estimate(f)
        | Command::Verify(f) => f,
    };
    let cfg = merge(flags)?;
    if flags.emit_config {
        writeln!(out, "{}", serde_json::to_string_pretty(&cfg).expect("serializable"))?;
        return Ok(exit::OK);
    }
    match command {
        Command::Seq(_) => cmd_seq(&cfg, out),
        Command::Validate(_) => cmd_validate(&cfg, out),
        Command::Sum(_) => cmd_sum(&cfg, out),
        Command::Estimate(_) => cmd_estimate(&cfg, out),
        Command::Verify(f) => cmd_verify(&cfg, f.footer.as_ref(), out, err),
    }
}

fn cmd_seq(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let params = cfg.params()?;
    let (lo, hi) = cfg.range()?;
    let values = w_range(&params, lo, hi);
    match cfg.output {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "W_n"])?;
            for (n, v) in (lo..=hi).zip(&values) {
                w.write_record([n.to_string(), v.to_string()])?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = (lo..=hi)
                .zip(&values)
                .map(|(n, v)| json!({ "n": n, "w": v.to_string() }))
                .collect();
            writeln!(out, "{}", Value::Array(rows))?;
        }
    }
    Ok(exit::OK)
}

fn cmd_validate(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = validity_check(&cfg.params()?, &cfg.selector()?);
    writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    Ok(if report.overall { exit::OK } else { exit::INVALID })
}

/// Validated params and selector, failing with exit code 3 on bad hypotheses.
fn checked_inputs(cfg: &RunConfig) -> Result<(crate::RecurrenceParams, crate::WeightedSelector), Failure> {
    let params = cfg.params()?;
    let sel = cfg.selector()?;
    let report = validity_check(&params, &sel);
    if !report.overall {
        return Err(Failure::new(
            exit::INVALID,
            format!("hypotheses fail: {}", serde_json::to_string(&report).expect("serializable")),
        ));
    }
    Ok((params, sel))
}

fn interval_json(iv: &RationalInterval, digits: u32) -> Value {
    json!({
        "lo": render::rational(iv.lo()),
        "hi": render::rational(iv.hi()),
        "approx": render::decimal(&iv.midpoint(), digits),
    })
}

fn cmd_sum(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let n = cfg.point()?;
    if n == 0 {
        return Err(ConfigError("--n must be >= 1".into()).into());
    }
    let eps = cfg.eps()?;
    let (params, sel) = checked_inputs(cfg)?;
    let spec = SumSpec::new(params, sel, cfg.alternating, n)?;
    let tail = sum_enclosure(&spec, &eps)?;
    let inverse = inverse_enclosure(&tail)?;
    let digits = cfg.display_digits;
    match cfg.output {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "sum_lo", "sum_hi", "inv_lo", "inv_hi", "sum_approx", "inv_approx", "terms_used"])?;
            w.write_record([
                n.to_string(),
                render::rational(tail.interval.lo()),
                render::rational(tail.interval.hi()),
                render::rational(inverse.lo()),
                render::rational(inverse.hi()),
                render::decimal(&tail.interval.midpoint(), digits),
                render::decimal(&inverse.midpoint(), digits),
                tail.terms_used.to_string(),
            ])?;
            w.flush()?;
        }
        OutputFormat::Json => {
            let v = json!({
                "n": n,
                "alternating": cfg.alternating,
                "sum": interval_json(&tail.interval, digits),
                "inverse": interval_json(&inverse, digits),
                "terms_used": tail.terms_used,
            });
            writeln!(out, "{v}")?;
        }
    }
    Ok(exit::OK)
}

fn cmd_estimate(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let n = cfg.point()?;
    if n < 2 {
        return Err(ConfigError("--n must be >= 2 for estimates".into()).into());
    }
    let (params, sel) = checked_inputs(cfg)?;
    let family = cfg.estimate_family();
    if family.is_block() && sel.block_length().is_none() {
        return Err(ConfigError("block family needs s = 1,..,1 and l = 0,..,t".into()).into());
    }
    let value = estimate(&params, &sel, family, n)?;
    let text = render::estimate(&value, cfg.display_digits);
    match cfg.output {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "family", "estimate"])?;
            w.write_record([n.to_string(), family.to_string(), text])?;
            w.flush()?;
        }
        OutputFormat::Json => {
            writeln!(out, "{}", json!({ "n": n, "family": family.name(), "estimate": text }))?;
        }
    }
    Ok(exit::OK)
}

fn row_record(row: &VerificationRow, digits: u32) -> [String; 8] {
    [
        row.n.to_string(),
        render::rational(row.sum.lo()),
        render::rational(row.sum.hi()),
        render::rational(row.inverse.lo()),
        render::rational(row.inverse.hi()),
        render::estimate(&row.estimate, digits),
        render::rational(row.error.lo()),
        render::rational(row.error.hi()),
    ]
}

fn row_json(row: &VerificationRow, digits: u32) -> Value {
    let record = row_record(row, digits);
    let mut map = serde_json::Map::new();
    for (key, value) in VERIFY_HEADER.iter().zip(record) {
        map.insert((*key).to_string(), Value::String(value));
    }
    map.insert("n".into(), json!(row.n));
    map.insert("err_approx".into(), json!(render::decimal(&row.error.midpoint(), digits)));
    Value::Object(map)
}

fn footer(cfg: &RunConfig, rows: &[VerificationRow], family: Family) -> Value {
    let eps = cfg.eps().expect("validated");
    let decay = match (cfg.params().ok().map(|p| spectral(&p)), rows.is_empty()) {
        (Some(Ok(sp)), false) => match decay_fit(rows, &sp, cfg.m) {
            Ok(fit) => json!({
                "ratio_estimate": render::decimal(&fit.ratio_estimate, 12),
                "predicted_ratio": interval_json(&fit.predicted_ratio, 12),
                "r_squared": render::decimal(&fit.r_squared, 12),
                "rows_used": fit.rows_used,
            }),
            Err(e) => json!({ "error": e.to_string() }),
        },
        _ => json!({ "error": "no rows" }),
    };
    let round = if family.is_block() {
        json!({ "error": "estimate is not integer-valued" })
    } else {
        match round_identity_scan(
            &cfg.params().expect("validated"),
            &cfg.selector().expect("validated"),
            family,
            cfg.n_end,
            &eps,
        ) {
            Ok(r) => serde_json::to_value(r).expect("serializable"),
            Err(e) => json!({ "error": e.to_string() }),
        }
    };
    json!({ "family": family.name(), "rows": rows.len(), "decay_fit": decay, "round_identity": round })
}

/// Streams one verify row in CSV mode so earlier rows survive a later failure.
fn emit_row<W: Write>(
    cfg: &RunConfig,
    rows: &mut Vec<VerificationRow>,
    row: VerificationRow,
    w: &mut csv::Writer<W>,
) -> Result<(), Failure> {
    if cfg.output == OutputFormat::Csv {
        w.write_record(row_record(&row, cfg.display_digits))?;
        w.flush()?;
    }
    rows.push(row);
    Ok(())
}

fn cmd_verify(
    cfg: &RunConfig,
    footer_path: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let (lo, hi) = cfg.range()?;
    if lo < 2 {
        return Err(ConfigError("verify needs --from >= 2".into()).into());
    }
    let eps = cfg.eps()?;
    let (params, sel) = checked_inputs(cfg)?;
    let family = cfg.estimate_family();
    if family.is_block() && sel.block_length().is_none() {
        return Err(ConfigError("block family needs s = 1,..,1 and l = 0,..,t".into()).into());
    }
    let digits = cfg.display_digits;

    let mut rows = Vec::new();
    let mut failure = None;
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        if cfg.output == OutputFormat::Csv {
            w.write_record(VERIFY_HEADER)?;
        }
        if cfg.threads > 1 {
            match verify_run_concurrent(&params, &sel, family, lo..=hi, &eps, cfg.threads) {
                Ok(all) => {
                    for row in all {
                        emit_row(cfg, &mut rows, row, &mut w)?;
                    }
                }
                Err(e) => failure = Some(e),
            }
        } else {
            for n in lo..=hi {
                match verify_row(&params, &sel, family, n, &eps) {
                    Ok(row) => emit_row(cfg, &mut rows, row, &mut w)?,
                    Err(e) => {
                        failure = Some(Error::AtRow { n, source: Box::new(e) });
                        break;
                    }
                }
            }
        }
        w.flush()?;
    }
    if cfg.output == OutputFormat::Json {
        let table: Vec<Value> = rows.iter().map(|r| row_json(r, digits)).collect();
        writeln!(out, "{}", Value::Array(table))?;
    }
    out.flush()?;
    if let Some(e) = failure {
        return Err(e.into());
    }

    let foot = serde_json::to_string_pretty(&footer(cfg, &rows, family)).expect("serializable");
    match footer_path {
        Some(path) => std::fs::write(path, foot + "\n")?,
        None => writeln!(err, "{foot}")?,
    }
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["horadam"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn flags_override_presets() {
        let (code, out, _) = run_args(&["seq", "--preset", "pell", "--p", "3", "--emit-config"]);
        assert_eq!(code, 0);
        let cfg: RunConfig = serde_json::from_str(&out).unwrap();
        assert_eq!((cfg.a, cfg.b, cfg.p, cfg.q), (0, 1, 3, 1));
    }

    #[test]
    fn negative_offsets_parse() {
        let (code, out, _) = run_args(&["validate", "--m", "3", "--l", "-1", "--q", "1"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn estimate_block_renders_field_value() {
        let (code, out, _) = run_args(&["estimate", "--family", "block", "--s", "1,1", "--l", "0,1", "--n", "6"]);
        assert_eq!(code, 0);
        // 5 alpha = 5/2 + 5/2 sqrt(5) = 8.0901699...
        assert!(out.contains("5/2+5/2*sqrt(5)~8.09016994"), "{out}");
    }

    #[test]
    fn missing_n_is_config_error() {
        let (code, _, err) = run_args(&["sum"]);
        assert_eq!(code, exit::CONFIG);
        assert!(err.contains("--n"));
    }
}
