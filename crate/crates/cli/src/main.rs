//! Command line front end over the `ostrowski` library.
//!
//! Every subcommand prints JSON by default; `--output table` switches to a
//! plain-text layout with numeration digits printed most significant first.
//! Exit codes: 0 success, 1 verify-suite failure, 2 parse error,
//! 3 precision exhausted, 4 domain or admissibility error.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use ostrowski::kernel::DEFAULT_MAX_BITS;
use ostrowski::numeration::decode_integer_with;
use ostrowski::{
    audit, classify, convergents, decode_counting, encode_counting, encode_integer,
    expand_absolute, expand_alternating, expand_real_absolute, expand_real_alternating, golden,
    is_normal, parse_number, parse_real, range_set, series_partials, silver, solve,
    ApproximateTerm, AuditClaim, AuditReport, Certificate, CfStream, ConvergentTable,
    DigitString, Error, ExpansionResult, ExpansionStatus, ParsedNumber, RealValue, Result,
    RightMode, SeriesKind, Side, SolveVariant, TailVerdict, Verdict, Witness,
};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::io::Write;

/// Fractional digits in JSON decimal fields.
const JSON_FRAC: usize = 40;
/// Fractional digits in table-mode decimals.
const TABLE_FRAC: usize = 12;

/// Prints one line, exiting quietly when the reader has closed the pipe.
fn outln_impl(args: std::fmt::Arguments) {
    let mut o = std::io::stdout().lock();
    if writeln!(o, "{args}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { outln_impl(format_args!($($t)*)) };
}

#[derive(Parser)]
#[command(
    name = "ostrowski",
    version,
    about = "Irrational-base numeration, real expansions, and best linear \
             Diophantine approximation, in exact arithmetic"
)]
struct Cli {
    /// Refinement budget in bits for inexact arithmetic
    /// (falls back to OSTROWSKI_MAX_BITS, then 65536).
    #[arg(long, global = true)]
    max_bits: Option<u32>,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Continued fraction digits of the slope.
    Cf {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// How many digits to extract; finite expansions may yield fewer.
        #[arg(long)]
        digits: usize,
    },
    /// Convergents p_k/q_k with their linear approximation coefficients.
    Convergents {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Last row index to print (rows 0..=terms).
        #[arg(long)]
        terms: usize,
    },
    /// Partial sums of the telescoping digit series against closed forms.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, value_enum)]
        kind: SeriesArg,
        /// Starting index, used by the tail kinds only.
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long)]
        terms: usize,
        /// Agreement tolerance in bits for inexact slopes.
        #[arg(long, default_value_t = 100)]
        tol_bits: u32,
    },
    /// Base-alpha counting digits of a natural number.
    Encode {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Value of a left-admissible counting digit string.
    Decode {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Comma-separated digits, least significant first.
        #[arg(long, allow_hyphen_values = true)]
        digits_le: String,
    },
    /// Base-(-alpha) digits of an integer.
    EncodeInt {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Value of a right-admissible integer digit string.
    DecodeInt {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Comma-separated digits, least significant first.
        #[arg(long, allow_hyphen_values = true)]
        digits_le: String,
        /// Adjacency rule to validate against.
        #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
        mode: ModeArg,
    },
    /// Integer range representable with index at most n in base -alpha.
    Range {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long)]
        index: usize,
    },
    /// Absolute-weight expansion of an intercept in [0, 1).
    ExpandAbs {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        intercept: String,
        /// Digit budget.
        #[arg(long)]
        digits: usize,
    },
    /// Alternating-weight expansion of an intercept in [-alpha, 1-alpha).
    ExpandAlt {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        intercept: String,
        /// Digit budget.
        #[arg(long)]
        digits: usize,
    },
    /// Absolute-weight expansion of an arbitrary real.
    ExpandRealAbs {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        intercept: String,
        /// Digit budget.
        #[arg(long)]
        digits: usize,
    },
    /// Alternating-weight expansion of an arbitrary real.
    ExpandRealAlt {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        intercept: String,
        /// Digit budget.
        #[arg(long)]
        digits: usize,
    },
    /// Best-approximation solution sequences with optional certificates.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Required for the inhomogeneous variants; reduced mod 1.
        #[arg(long, allow_hyphen_values = true)]
        intercept: Option<String>,
        #[arg(long)]
        terms: usize,
        /// Include the per-index certificate in the output.
        #[arg(long)]
        certify: bool,
    },
    /// Side, error, and normality of a single approximate m.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        intercept: String,
    },
    /// Exhaustive audit suites over the sample slopes.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum SeriesArg {
    Abs,
    Alt,
    SelfEven,
    UnityOdd,
    AbsTail,
    AltTail,
}

#[derive(ValueEnum, Clone, Copy)]
enum VariantArg {
    TotalUnder,
    TotalOver,
    Forward,
    Backward,
    HomPositive,
    HomNegative,
    HomSignedOver,
    HomSignedUnder,
}

impl From<VariantArg> for SolveVariant {
    fn from(v: VariantArg) -> SolveVariant {
        match v {
            VariantArg::TotalUnder => SolveVariant::TotalUnder,
            VariantArg::TotalOver => SolveVariant::TotalOver,
            VariantArg::Forward => SolveVariant::Forward,
            VariantArg::Backward => SolveVariant::Backward,
            VariantArg::HomPositive => SolveVariant::HomPositive,
            VariantArg::HomNegative => SolveVariant::HomNegative,
            VariantArg::HomSignedOver => SolveVariant::HomSignedOver,
            VariantArg::HomSignedUnder => SolveVariant::HomSignedUnder,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Corrected,
    AsPrinted,
}

impl From<ModeArg> for RightMode {
    fn from(m: ModeArg) -> RightMode {
        match m {
            ModeArg::Corrected => RightMode::Corrected,
            ModeArg::AsPrinted => RightMode::AsPrinted,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum SuiteArg {
    Tables,
    Bijection,
    Minimality,
    Normality,
    Series,
    Solutions,
    All,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::PrecisionExhausted(_) | Error::InsufficientDigits { .. } => 3,
        Error::OutOfDomain(_) | Error::NotAdmissible(_) => 4,
    }
}

fn run(cli: Cli) -> Result<i32> {
    let bits = cli
        .max_bits
        .or_else(|| {
            std::env::var("OSTROWSKI_MAX_BITS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(DEFAULT_MAX_BITS)
        .max(1);
    let out = cli.output;
    match cli.cmd {
        Cmd::Cf { slope, digits } => {
            let cf = parse_slope(&slope, bits)?;
            let mut ds: Vec<BigInt> = Vec::new();
            for k in 1..=digits {
                match cf.digit(k)? {
                    Some(a) => ds.push(a),
                    None => break,
                }
            }
            match out {
                Output::Json => emit_json(&json!({
                    "slope": slope,
                    "requested": digits,
                    "digits": ds.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                })),
                Output::Table => {
                    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                    outln!("\u{27e8}{}\u{27e9}", parts.join(","));
                }
            }
            Ok(0)
        }
        Cmd::Convergents { slope, terms } => {
            let cf = parse_slope(&slope, bits)?;
            let rows = convergents(&cf, terms)?;
            match out {
                Output::Json => {
                    let mut arr = Vec::with_capacity(rows.len());
                    for r in &rows {
                        arr.push(json!({
                            "k": r.k,
                            "a": r.a.as_ref().map(|a| a.to_string()),
                            "p": r.p.to_string(),
                            "q": r.q.to_string(),
                            "p_star": r.p_star.to_string(),
                            "q_star": r.q_star.to_string(),
                            "theta": real_json(&r.theta)?,
                            "abs_theta": real_json(&r.abs_theta)?,
                        }));
                    }
                    emit_json(&json!({ "slope": slope, "rows": arr }));
                }
                Output::Table => {
                    let mut body = Vec::with_capacity(rows.len());
                    for r in &rows {
                        body.push(vec![
                            r.k.to_string(),
                            r.a.as_ref().map_or("-".into(), |a| a.to_string()),
                            r.p.to_string(),
                            r.q.to_string(),
                            r.theta.decimal_string(TABLE_FRAC)?,
                        ]);
                    }
                    print_table(&["k", "a", "p", "q", "theta"], &body);
                }
            }
            Ok(0)
        }
        Cmd::Series { slope, kind, from, terms, tol_bits } => {
            let cf = parse_slope(&slope, bits)?;
            let rep = series_partials(&cf, series_kind(kind, from), terms)?;
            let matched = rep.matches(tol_bits)?;
            match out {
                Output::Json => emit_json(&json!({
                    "slope": slope,
                    "kind": kind_name(kind),
                    "from": from,
                    "upto": rep.upto,
                    "telescoped": real_json(&rep.telescoped)?,
                    "closed": real_json(&rep.closed)?,
                    "tol_bits": tol_bits,
                    "matches": matched,
                })),
                Output::Table => {
                    outln!(
                        "{} up to {}: telescoped {} closed {} {}",
                        kind_name(kind),
                        rep.upto,
                        rep.telescoped.decimal_string(TABLE_FRAC)?,
                        rep.closed.decimal_string(TABLE_FRAC)?,
                        if matched { "agree" } else { "DISAGREE" },
                    );
                }
            }
            Ok(0)
        }
        Cmd::Encode { slope, value } => {
            let cf = parse_slope(&slope, bits)?;
            let s = parse_bigint(&value, "--value")?;
            let ds = encode_counting(&s, &cf)?;
            print_digits(out, &ds, Some(("value", s.to_string())));
            Ok(0)
        }
        Cmd::Decode { slope, digits_le } => {
            let cf = parse_slope(&slope, bits)?;
            let ds = DigitString::left(parse_digits_le(&digits_le)?);
            let v = decode_counting(&ds, &cf)?;
            print_value(out, &ds, &v);
            Ok(0)
        }
        Cmd::EncodeInt { slope, value } => {
            let cf = parse_slope(&slope, bits)?;
            let t = parse_bigint(&value, "--value")?;
            let ds = encode_integer(&t, &cf)?;
            print_digits(out, &ds, Some(("value", t.to_string())));
            Ok(0)
        }
        Cmd::DecodeInt { slope, digits_le, mode } => {
            let cf = parse_slope(&slope, bits)?;
            let ds = DigitString::right(parse_digits_le(&digits_le)?);
            let v = decode_integer_with(&ds, &cf, mode.into())?;
            print_value(out, &ds, &v);
            Ok(0)
        }
        Cmd::Range { slope, index } => {
            let cf = parse_slope(&slope, bits)?;
            let rs = range_set(index, &cf)?;
            match out {
                Output::Json => emit_json(&json!({
                    "slope": slope,
                    "n": index,
                    "lo": rs.lo.to_string(),
                    "hi": rs.hi.to_string(),
                    "len": rs.len().to_string(),
                })),
                Output::Table => outln!("[{}, {}] ({} integers)", rs.lo, rs.hi, rs.len()),
            }
            Ok(0)
        }
        Cmd::ExpandAbs { slope, intercept, digits } => {
            let cf = parse_slope(&slope, bits)?;
            let beta = parse_real(&intercept, bits)?;
            let res = expand_absolute(&beta, &cf, digits)?;
            print_expansion(out, &res)?;
            Ok(0)
        }
        Cmd::ExpandAlt { slope, intercept, digits } => {
            let cf = parse_slope(&slope, bits)?;
            let gamma = parse_real(&intercept, bits)?;
            let res = expand_alternating(&gamma, &cf, digits)?;
            print_expansion(out, &res)?;
            Ok(0)
        }
        Cmd::ExpandRealAbs { slope, intercept, digits } => {
            let cf = parse_slope(&slope, bits)?;
            let r = parse_real(&intercept, bits)?;
            let res = expand_real_absolute(&r, &cf, digits)?;
            print_expansion(out, &res)?;
            Ok(0)
        }
        Cmd::ExpandRealAlt { slope, intercept, digits } => {
            let cf = parse_slope(&slope, bits)?;
            let r = parse_real(&intercept, bits)?;
            let res = expand_real_alternating(&r, &cf, digits)?;
            print_expansion(out, &res)?;
            Ok(0)
        }
        Cmd::Solve { slope, variant, intercept, terms, certify } => {
            let cf = parse_slope(&slope, bits)?;
            let beta = match &intercept {
                Some(s) => Some(parse_real(s, bits)?),
                None => None,
            };
            let res = solve(&cf, variant.into(), beta.as_ref(), terms)?;
            match out {
                Output::Json => {
                    let mut terms_json = Vec::with_capacity(res.terms.len());
                    for t in &res.terms {
                        terms_json.push(term_json(t)?);
                    }
                    let mut obj = json!({
                        "variant": res.variant.name(),
                        "beta": real_json(&res.beta)?,
                        "terms": terms_json,
                        "exact_hit": res.exact_hit,
                        "source_digits": res.source_digits.as_ref().map(|ds| json!({
                            "digits": digits_le_json(ds),
                            "order": "little-endian",
                        })),
                    });
                    if certify {
                        obj["certificate"] = certificate_json(&res.certificate);
                    }
                    emit_json(&obj);
                }
                Output::Table => {
                    let mut body = Vec::with_capacity(res.terms.len());
                    for t in &res.terms {
                        body.push(vec![
                            t.n.to_string(),
                            t.a.to_string(),
                            side_name(t.side).into(),
                            t.error.decimal_string(TABLE_FRAC)?,
                            flag(t.bound_ok),
                            flag(t.error_ok),
                        ]);
                    }
                    print_table(&["n", "A_n", "side", "error", "bound", "window"], &body);
                    if certify {
                        outln!(
                            "certificate: {} tail={}",
                            flag(res.certificate.ok),
                            tail_name(&res.certificate.tail),
                        );
                    }
                }
            }
            Ok(0)
        }
        Cmd::Classify { slope, m, intercept } => {
            let cf = parse_slope(&slope, bits)?;
            let m = parse_bigint(&m, "--m")?;
            let beta = parse_real(&intercept, bits)?.mod1()?;
            let term = classify(&m, &cf, &beta)?;
            let normality = if m.is_zero() {
                None
            } else {
                Some(is_normal(&m, &cf)?)
            };
            match out {
                Output::Json => emit_json(&json!({
                    "m": m.to_string(),
                    "side": side_name(term.side),
                    "iterate": real_json(&term.iterate)?,
                    "error": real_json(&term.error)?,
                    "normal": normality.as_ref().map(|(n, _)| *n),
                    "quality": match &normality {
                        Some((_, q)) => real_json(q)?,
                        None => Value::Null,
                    },
                })),
                Output::Table => {
                    let tail = match &normality {
                        Some((n, q)) => format!(
                            ", |m|*||m alpha|| = {} ({})",
                            q.decimal_string(TABLE_FRAC)?,
                            if *n { "normal" } else { "not normal" },
                        ),
                        None => String::new(),
                    };
                    outln!(
                        "m = {} is {} the intercept, error {}{}",
                        m,
                        side_name(term.side),
                        term.error.decimal_string(TABLE_FRAC)?,
                        tail,
                    );
                }
            }
            Ok(0)
        }
        Cmd::Verify { suite } => run_verify(suite, out),
    }
}

fn parse_slope(spec: &str, bits: u32) -> Result<CfStream> {
    match parse_number(spec, bits)? {
        ParsedNumber::Value(v) => CfStream::from_real(&v.mod1()?),
        other => CfStream::from_parsed(&other),
    }
}

fn parse_bigint(s: &str, what: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected an integer, got {s:?}")))
}

fn parse_digits_le(s: &str) -> Result<Vec<BigInt>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|d| parse_bigint(d, "digit")).collect()
}

fn emit_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("value serialization"));
}

fn real_json(v: &RealValue) -> Result<Value> {
    Ok(json!({
        "decimal": v.decimal_string(JSON_FRAC)?,
        "radius": radius_string(v)?,
        "exact": v.exact_form(),
    }))
}

/// Short decimal form of the enclosure radius; "0" for exact values.
fn radius_string(v: &RealValue) -> Result<String> {
    let r = v.radius_estimate()?;
    if r.is_zero() {
        return Ok("0".into());
    }
    let x = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    Ok(format!("{x:.3e}"))
}

fn digits_le_json(ds: &DigitString) -> Value {
    Value::Array(
        ds.digits
            .iter()
            .map(|d| Value::String(d.to_string()))
            .collect(),
    )
}

fn digits_msb_line(ds: &DigitString) -> String {
    if ds.digits.is_empty() {
        "\u{2205}".into()
    } else {
        let parts: Vec<String> = ds.digits.iter().rev().map(|d| d.to_string()).collect();
        parts.join(" ")
    }
}

fn print_digits(out: Output, ds: &DigitString, echo: Option<(&str, String)>) {
    match out {
        Output::Json => {
            let mut obj = json!({
                "digits": digits_le_json(ds),
                "order": "little-endian",
                "n": ds.n(),
            });
            if let Some((key, val)) = echo {
                obj[key] = Value::String(val);
            }
            emit_json(&obj);
        }
        Output::Table => outln!("{}", digits_msb_line(ds)),
    }
}

fn print_value(out: Output, ds: &DigitString, v: &BigInt) {
    match out {
        Output::Json => emit_json(&json!({
            "digits": digits_le_json(ds),
            "order": "little-endian",
            "value": v.to_string(),
        })),
        Output::Table => outln!("{v}"),
    }
}

fn print_expansion(out: Output, res: &ExpansionResult) -> Result<()> {
    match out {
        Output::Json => {
            let (status, remainder) = match &res.status {
                ExpansionStatus::TerminatedExact { l } => {
                    (json!({ "kind": "terminated-exact", "length": l }), Value::Null)
                }
                ExpansionStatus::Truncated { n, remainder } => (
                    json!({ "kind": "truncated", "digits_consumed": n }),
                    real_json(remainder)?,
                ),
            };
            emit_json(&json!({
                "integer_part": res.integer_part.to_string(),
                "digits": digits_le_json(&res.digits),
                "order": "little-endian",
                "status": status,
                "remainder_enclosure": remainder,
            }));
        }
        Output::Table => {
            outln!("integer part  {}", res.integer_part);
            outln!("digits (msb)  {}", digits_msb_line(&res.digits));
            match &res.status {
                ExpansionStatus::TerminatedExact { l } => {
                    outln!("status        terminated exactly after {l} digits");
                }
                ExpansionStatus::Truncated { n, remainder } => {
                    outln!(
                        "status        truncated after {n} digits, remainder {}",
                        remainder.decimal_string(TABLE_FRAC)?,
                    );
                }
            }
        }
    }
    Ok(())
}

fn term_json(t: &ApproximateTerm) -> Result<Value> {
    Ok(json!({
        "n": t.n,
        "a": t.a.to_string(),
        "iterate": real_json(&t.iterate)?,
        "error": real_json(&t.error)?,
        "side": side_name(t.side),
        "bound_ok": t.bound_ok,
        "error_ok": t.error_ok,
    }))
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "ok": c.ok,
        "tail": match &c.tail {
            TailVerdict::ExactZero { l } => json!({ "kind": "exact-zero", "length": l }),
            TailVerdict::LimitImplied => json!({ "kind": "limit-implied" }),
            TailVerdict::Failed => json!({ "kind": "failed" }),
        },
        "lines": c.lines.iter().map(|l| json!({
            "n": l.n,
            "bound_ok": l.bound_ok,
            "error_ok": l.error_ok,
        })).collect::<Vec<_>>(),
    })
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Over => "over",
        Side::Under => "under",
    }
}

fn tail_name(t: &TailVerdict) -> String {
    match t {
        TailVerdict::ExactZero { l } => format!("exact-zero@{l}"),
        TailVerdict::LimitImplied => "limit-implied".into(),
        TailVerdict::Failed => "failed".into(),
    }
}

fn flag(b: bool) -> String {
    if b { "ok".into() } else { "FAIL".into() }
}

fn series_kind(arg: SeriesArg, from: usize) -> SeriesKind {
    match arg {
        SeriesArg::Abs => SeriesKind::AbsPartial,
        SeriesArg::Alt => SeriesKind::AltPartial,
        SeriesArg::SelfEven => SeriesKind::SelfEven,
        SeriesArg::UnityOdd => SeriesKind::UnityOdd,
        SeriesArg::AbsTail => SeriesKind::AbsTail { from },
        SeriesArg::AltTail => SeriesKind::AltTail { from },
    }
}

fn kind_name(arg: SeriesArg) -> &'static str {
    match arg {
        SeriesArg::Abs => "abs",
        SeriesArg::Alt => "alt",
        SeriesArg::SelfEven => "self-even",
        SeriesArg::UnityOdd => "unity-odd",
        SeriesArg::AbsTail => "abs-tail",
        SeriesArg::AltTail => "alt-tail",
    }
}

fn print_table(head: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = head.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let render = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:>w$}", c, w = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    outln!("{}", render(head.to_vec()));
    for row in rows {
        outln!("{}", render(row.iter().map(|s| s.as_str()).collect()));
    }
}

// ---- verify suites ----------------------------------------------------

struct ClaimOutcome {
    suite: &'static str,
    claim: String,
    slope: String,
    verdict: &'static str,
    expected: &'static str,
    witnesses: Vec<Witness>,
    note: Option<String>,
    ok: bool,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "confirmed",
        Verdict::CounterexampleFound => "counterexample-found",
    }
}

fn from_audit(
    suite: &'static str,
    slope: &str,
    report: AuditReport,
    expected: Verdict,
) -> ClaimOutcome {
    let ok = report.verdict == expected;
    ClaimOutcome {
        suite,
        claim: format!("{}({})", report.claim, report.parameters),
        slope: slope.into(),
        verdict: verdict_name(report.verdict),
        expected: verdict_name(expected),
        witnesses: report.witnesses,
        note: None,
        ok,
    }
}

fn sample_slopes() -> Result<Vec<(&'static str, CfStream)>> {
    Ok(vec![
        ("golden", CfStream::from_real(&golden())?),
        ("silver", CfStream::from_real(&silver())?),
        ("rule:a_k=k", CfStream::from_rule(|k: u64| BigInt::from(k))),
    ])
}

fn suite_tables() -> Result<Vec<ClaimOutcome>> {
    let cf = CfStream::from_real(&silver())?;
    let report = audit(&cf, &AuditClaim::TableConformance)?;
    let documented = ["integer row T = -21", "range row n = 4"];
    let undocumented: usize = report
        .witnesses
        .iter()
        .filter(|w| !documented.contains(&w.input.as_str()))
        .count();
    let missing: usize = documented
        .iter()
        .filter(|d| !report.witnesses.iter().any(|w| w.input == **d))
        .count();
    let ok = report.verdict == Verdict::CounterexampleFound && undocumented == 0 && missing == 0;
    let note = if ok {
        "both documented misprints reproduced, nothing else deviates".into()
    } else {
        format!("{undocumented} undocumented deviations, {missing} documented ones absent")
    };
    let mut outcome = from_audit("tables", "silver", report, Verdict::CounterexampleFound);
    outcome.note = Some(note);
    outcome.ok = ok;
    Ok(vec![outcome])
}

fn suite_bijection() -> Result<Vec<ClaimOutcome>> {
    let mut out = Vec::new();
    for (name, cf) in sample_slopes()? {
        let claim = AuditClaim::Bijection { max_index: 6, mode: RightMode::Corrected };
        out.push(from_audit("bijection", name, audit(&cf, &claim)?, Verdict::Confirmed));
    }
    let silver_cf = CfStream::from_real(&silver())?;
    let claim = AuditClaim::Bijection { max_index: 6, mode: RightMode::AsPrinted };
    let mut printed = from_audit(
        "bijection",
        "silver",
        audit(&silver_cf, &claim)?,
        Verdict::CounterexampleFound,
    );
    printed.note = Some("the as-printed adjacency rule admits a colliding string".into());
    out.push(printed);
    Ok(out)
}

fn suite_minimality() -> Result<Vec<ClaimOutcome>> {
    let mut out = Vec::new();
    for (name, cf) in sample_slopes()?.into_iter().take(2) {
        let claim = AuditClaim::Minimality { max_index: 5, samples: 6, seed: 17 };
        out.push(from_audit("minimality", name, audit(&cf, &claim)?, Verdict::Confirmed));
    }
    Ok(out)
}

fn suite_normality() -> Result<Vec<ClaimOutcome>> {
    let mut out = Vec::new();
    let one = RealValue::one();
    for (name, cf) in sample_slopes()? {
        let table = ConvergentTable::new(&cf);
        let mut witnesses = Vec::new();
        for k in 1..=30i64 {
            let product = RealValue::from(table.q(k)?).mul(&table.abs_theta(k)?);
            if product.cmp_exact(&one)? != Ordering::Less {
                witnesses.push(Witness {
                    input: format!("k = {k}"),
                    expected: "q_k * ||q_k alpha|| < 1".into(),
                    actual: product.decimal_string(TABLE_FRAC)?,
                });
            }
        }
        let ok = witnesses.is_empty();
        out.push(ClaimOutcome {
            suite: "normality",
            claim: "special-sequence-normal(k <= 30)".into(),
            slope: name.into(),
            verdict: if ok { "confirmed" } else { "counterexample-found" },
            expected: "confirmed",
            witnesses,
            note: None,
            ok,
        });
    }
    let silver_cf = CfStream::from_real(&silver())?;
    let claim = AuditClaim::NormalityConverse { max_m: 50 };
    let mut converse = from_audit(
        "normality",
        "silver",
        audit(&silver_cf, &claim)?,
        Verdict::CounterexampleFound,
    );
    converse.note = Some("normal multipliers that are not denominators exist".into());
    out.push(converse);
    Ok(out)
}

fn suite_series() -> Result<Vec<ClaimOutcome>> {
    let kinds = [
        ("abs", SeriesKind::AbsPartial),
        ("alt", SeriesKind::AltPartial),
        ("self-even", SeriesKind::SelfEven),
        ("unity-odd", SeriesKind::UnityOdd),
    ];
    let mut out = Vec::new();
    for (name, cf) in sample_slopes()? {
        for (kname, kind) in kinds {
            let rep = series_partials(&cf, kind, 40)?;
            let ok = rep.matches(100)?;
            let witnesses = if ok {
                Vec::new()
            } else {
                vec![Witness {
                    input: format!("series {kname} at n = 40"),
                    expected: rep.closed.decimal_string(TABLE_FRAC)?,
                    actual: rep.telescoped.decimal_string(TABLE_FRAC)?,
                }]
            };
            out.push(ClaimOutcome {
                suite: "series",
                claim: format!("series-{kname}(n = 40, tol = 2^-100)"),
                slope: name.into(),
                verdict: if ok { "confirmed" } else { "counterexample-found" },
                expected: "confirmed",
                witnesses,
                note: None,
                ok,
            });
        }
    }
    Ok(out)
}

fn suite_solutions() -> Result<Vec<ClaimOutcome>> {
    let inhomogeneous = [
        SolveVariant::TotalUnder,
        SolveVariant::TotalOver,
        SolveVariant::Forward,
        SolveVariant::Backward,
    ];
    let mut out = Vec::new();
    let mut push = |name: &str, label: String, res: &ostrowski::SolveOutput, want_hit: bool| {
        let cert_ok = res.certificate.ok && (!want_hit || res.exact_hit.is_some());
        let witnesses = if cert_ok {
            Vec::new()
        } else {
            res.certificate
                .lines
                .iter()
                .filter(|l| !l.bound_ok || l.error_ok == Some(false))
                .take(3)
                .map(|l| Witness {
                    input: format!("n = {}", l.n),
                    expected: "bound and window conditions".into(),
                    actual: format!("bound_ok = {}, error_ok = {:?}", l.bound_ok, l.error_ok),
                })
                .collect()
        };
        out.push(ClaimOutcome {
            suite: "solutions",
            claim: label,
            slope: name.into(),
            verdict: if cert_ok { "confirmed" } else { "counterexample-found" },
            expected: "confirmed",
            witnesses,
            note: None,
            ok: cert_ok,
        });
    };
    for (name, value) in [("golden", golden()), ("silver", silver())] {
        let cf = CfStream::from_real(&value)?;
        for beta_spec in ["rat:1/3", "rat:9/10"] {
            let beta = parse_real(beta_spec, DEFAULT_MAX_BITS)?;
            for variant in inhomogeneous {
                let res = solve(&cf, variant, Some(&beta), 12)?;
                push(
                    name,
                    format!("{}(beta = {beta_spec}, n <= 12)", variant.name()),
                    &res,
                    false,
                );
            }
        }
        let alpha = cf.slope().clone();
        let res = solve(&cf, SolveVariant::Forward, Some(&alpha), 12)?;
        push(name, "forward(beta = alpha, exact hit)".into(), &res, true);
        let double = alpha.add(&alpha).mod1()?;
        let res = solve(&cf, SolveVariant::TotalUnder, Some(&double), 12)?;
        push(name, "total-under(beta = 2 alpha mod 1, exact hit)".into(), &res, true);
    }
    Ok(out)
}

fn run_verify(suite: SuiteArg, out: Output) -> Result<i32> {
    let chosen: Vec<SuiteArg> = match suite {
        SuiteArg::All => vec![
            SuiteArg::Tables,
            SuiteArg::Bijection,
            SuiteArg::Minimality,
            SuiteArg::Normality,
            SuiteArg::Series,
            SuiteArg::Solutions,
        ],
        s => vec![s],
    };
    let mut results = Vec::new();
    for s in chosen {
        results.extend(match s {
            SuiteArg::Tables => suite_tables()?,
            SuiteArg::Bijection => suite_bijection()?,
            SuiteArg::Minimality => suite_minimality()?,
            SuiteArg::Normality => suite_normality()?,
            SuiteArg::Series => suite_series()?,
            SuiteArg::Solutions => suite_solutions()?,
            SuiteArg::All => unreachable!(),
        });
    }
    let failures = results.iter().filter(|r| !r.ok).count();
    match out {
        Output::Json => {
            let claims: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "claim": r.claim,
                        "slope": r.slope,
                        "verdict": r.verdict,
                        "expected": r.expected,
                        "ok": r.ok,
                        "note": r.note,
                        "witnesses": r.witnesses.iter().map(|w| json!({
                            "input": w.input,
                            "expected": w.expected,
                            "actual": w.actual,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            emit_json(&json!({
                "claims": claims,
                "total": results.len(),
                "failures": failures,
            }));
        }
        Output::Table => {
            for r in &results {
                outln!(
                    "[{}] {} slope={} verdict={} expected={} {}{}",
                    r.suite,
                    r.claim,
                    r.slope,
                    r.verdict,
                    r.expected,
                    if r.ok { "ok" } else { "FAIL" },
                    r.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default(),
                );
                if !r.ok {
                    for w in r.witnesses.iter().take(3) {
                        outln!("    at {}: expected {}, got {}", w.input, w.expected, w.actual);
                    }
                }
            }
            outln!("verify: {} claims, {} failures", results.len(), failures);
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}
