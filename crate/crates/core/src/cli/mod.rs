//! Command-line front end. Every successful command writes one JSON line per
//! record to stdout:
//!
//! ```text
//! {"schemaVersion":"1","command":...,"inputs":{...},"result":{...},"timingMs":...}
//! ```
//!
//! Failures write `{"schemaVersion":"1","command":...,"error":{"code","message"}}`
//! to stderr. Exit status is 0 on success, 1 on domain errors and 2 on usage
//! errors. Integers are always emitted as decimal strings.

mod parse;
mod pipeline;

pub use parse::{parse_poly, render};
pub use pipeline::{expand, verify, Expansion, Route, VerifyReport};

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::analysis::{self, decimal};
use crate::error::{Error, Result};
use crate::families::{self, FamilyClass, FamilyKind};
use crate::polycore::guard::set_max_coeff_words;
use crate::polycore::Poly;
use crate::specialize::{product_value, rational_to_regular};

pub const SCHEMA_VERSION: &str = "1";
pub const MAX_COEFF_WORDS_ENV: &str = "PRODFRAC_MAX_COEFF_WORDS";

/// Default cap on n for deg f ≥ 3, where degrees grow like (deg f)ⁿ.
pub const N_CAP: usize = 6;
/// Default cap on n for deg f ≤ 2.
pub const N_CAP_LOW_DEGREE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "prodfrac", version, about = "Continued fractions of iterated-polynomial products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct NArgs {
    /// Truncation index n of ∏ᵢ₌₀ⁿ(1 + 1/fᵢ).
    #[arg(long)]
    n: usize,
    /// Lift the default cap on n (the coefficient-size guard still applies).
    #[arg(long)]
    unsafe_n: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every family the polynomial belongs to.
    Classify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Expansion of the truncated product, symbolic or specialized at x = M.
    Expand {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        n: NArgs,
        /// Use this family's construction instead of the first match.
        #[arg(long)]
        family: Option<String>,
        /// Print the quotients as polynomials in x (the default).
        #[arg(long, conflicts_with = "at")]
        symbolic: bool,
        /// Specialize at x = M and regularize.
        #[arg(long, value_name = "M", allow_hyphen_values = true, value_parser = parse_bigint)]
        at: Option<BigInt>,
        /// Replace the polynomial by T_L, which must agree with it modulo x(x²−1).
        #[arg(long, value_name = "L")]
        chebyshev_compose: Option<u32>,
    },
    /// Regular continued fraction of the product at x = M, cross-checked
    /// against the exact product value.
    Specialize {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Integer point x = M.
        #[arg(long, value_name = "M", allow_hyphen_values = true, value_parser = parse_bigint)]
        at: BigInt,
        #[command(flatten)]
        n: NArgs,
    },
    /// Check constructions against the Euclidean oracle for every n up to N.
    Verify {
        #[arg(allow_hyphen_values = true, required_unless_present = "all_families")]
        poly: Option<String>,
        #[command(flatten)]
        n: NArgs,
        /// Also verify one representative of every family, concurrently.
        #[arg(long)]
        all_families: bool,
    },
    /// Numeric irrationality-exponent evidence (not a proof).
    Evidence {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Integer point x = M.
        #[arg(long, value_name = "M", allow_hyphen_values = true, value_parser = parse_bigint)]
        at: BigInt,
        /// Largest truncation index measured.
        #[arg(long, value_name = "D")]
        depth: usize,
        /// Margin over exponent 2, as p/q, a decimal or an integer.
        #[arg(long, value_name = "E", value_parser = parse_rational)]
        epsilon: BigRational,
    },
    /// Closed-form identities.
    Identities {
        /// Check the alternating binomial sum for m = 0..=M.
        #[arg(long, value_name = "M", default_value_t = 50)]
        wz_max: u32,
        /// Compute the integral cofactor h_t for t = 0..=T.
        #[arg(long, value_name = "T", default_value_t = 20)]
        eq2_max: u32,
    },
    /// Chebyshev polynomial T_L, optionally evaluated at M.
    Chebyshev {
        /// Index L ≥ 1.
        #[arg(long, value_name = "L")]
        l: u32,
        /// Also evaluate T_L(M).
        #[arg(long, value_name = "M", allow_hyphen_values = true, value_parser = parse_bigint)]
        at: Option<BigInt>,
    },
    /// Product for f = 4x³+6x²−3/2 against √((2M+3)/(2M−1)).
    NearException {
        /// Integer point x = M, not 0 or −1.
        #[arg(long, value_name = "M", allow_hyphen_values = true, value_parser = parse_bigint)]
        at: BigInt,
        /// Number of factors after the first.
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Expand { .. } => "expand",
            Command::Specialize { .. } => "specialize",
            Command::Verify { .. } => "verify",
            Command::Evidence { .. } => "evidence",
            Command::Identities { .. } => "identities",
            Command::Chebyshev { .. } => "chebyshev",
            Command::NearException { .. } => "near-exception",
        }
    }
}

fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s}"))
}

/// "p/q", an integer, or a decimal such as "0.5".
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("not a rational number: {s}");
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            i => i.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = BigRational::from_integer(BigInt::from(int.magnitude().clone()))
            + BigRational::new(frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

fn check_n(f: &Poly, n: &NArgs) -> Result<()> {
    let cap = if f.degree().unwrap_or(0) >= 3 {
        N_CAP
    } else {
        N_CAP_LOW_DEGREE
    };
    if n.n > cap && !n.unsafe_n {
        return Err(Error::InvalidArgument(format!(
            "n = {} exceeds the default cap {cap} for this degree; pass --unsafe-n to lift it",
            n.n
        )));
    }
    Ok(())
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|t| t.to_string()).collect()
}

pub(crate) fn class_json(c: &FamilyClass) -> Value {
    json!({
        "class": c.kind.as_str(),
        "witnessName": c.kind.witness_name().filter(|_| c.witness.is_some()),
        "witness": c.witness.as_ref().map(render),
        "k": c.k.map(|k| k.to_string()),
    })
}

fn rational_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn record(command: &str, inputs: Value, result: Value, start: Instant) -> Value {
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "timingMs": start.elapsed().as_secs_f64() * 1e3,
    })
}

fn error_json(command: Option<&str>, code: &str, message: &str) -> Value {
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "error": { "code": code, "message": message },
    })
}

/// Failure of a command: a library error or a failed verification.
enum Failure {
    Lib(Error),
    Verification(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parse `args` (including the program name), run the command and return
/// the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.render().to_string();
            let _ = writeln!(err, "{}", error_json(None, "USAGE", msg.trim()));
            return 2;
        }
    };
    let name = cli.command.name();
    if let Ok(v) = std::env::var(MAX_COEFF_WORDS_ENV) {
        match v.trim().parse::<u64>() {
            Ok(limit) if limit > 0 => set_max_coeff_words(limit),
            _ => {
                let msg = format!("{MAX_COEFF_WORDS_ENV} must be a positive integer, got {v:?}");
                let _ = writeln!(err, "{}", error_json(Some(name), "USAGE", &msg));
                return 2;
            }
        }
    }
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "{}", error_json(Some(name), e.code(), &e.to_string()));
            if e.is_usage() {
                2
            } else {
                1
            }
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "{}", error_json(Some(name), "VERIFICATION_FAILED", &msg));
            1
        }
        // a closed downstream pipe is not an error of ours
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "{}", error_json(Some(name), "IO", &e.to_string()));
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(out: &mut dyn Write, v: &Value) -> std::result::Result<(), Failure> {
    writeln!(out, "{v}").map_err(Failure::Io)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let start = Instant::now();
    let name = cmd.name();
    match cmd {
        Command::Classify { poly } => {
            let f = parse_poly(&poly)?;
            let classes = families::classify(&f)?;
            let result = json!({
                "poly": render(&f),
                "degree": f.degree().unwrap_or(0).to_string(),
                "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
            });
            emit(out, &record(name, json!({ "poly": poly }), result, start))?;
        }
        Command::Expand { poly, n, family, symbolic: _, at, chebyshev_compose } => {
            let mut f = parse_poly(&poly)?;
            if let Some(l) = chebyshev_compose {
                f = analysis::chebyshev_compose(&f, l)?;
            }
            check_n(&f, &n)?;
            let family = family
                .map(|s| s.parse::<FamilyKind>().map_err(|e| Error::InvalidArgument(e.to_string())))
                .transpose()?;
            let e = expand(&f, n.n, family)?;
            let mut result = json!({
                "poly": render(&f),
                "n": n.n.to_string(),
                "route": e.route.label(),
                "family": e.route.class().map(class_json),
                "specializable": e.first_non_integral.is_none(),
                "firstNonIntegral": e.first_non_integral.map(|i| i.to_string()),
                "quotients": strings(e.cf.quotients()),
            });
            if let Some(m) = &at {
                let (raw, reg) = e.specialize(&f, m)?;
                result["at"] = json!(m.to_string());
                result["specialized"] = json!(strings(&raw.terms));
                result["regular"] = json!(strings(reg.terms()));
            }
            let inputs = json!({
                "poly": poly,
                "n": n.n.to_string(),
                "family": family.map(|k| k.as_str()),
                "at": at.map(|m| m.to_string()),
                "chebyshevCompose": chebyshev_compose.map(|l| l.to_string()),
            });
            emit(out, &record(name, inputs, result, start))?;
        }
        Command::Specialize { poly, at, n } => {
            let f = parse_poly(&poly)?;
            check_n(&f, &n)?;
            let e = expand(&f, n.n, None)?;
            let (_, reg) = e.specialize(&f, &at)?;
            let value = product_value(&f, &at, n.n)?;
            let oracle = rational_to_regular(&value);
            if oracle != reg {
                return Err(Error::Internal(format!(
                    "regularized expansion {reg} differs from the product value's expansion {oracle}"
                ))
                .into());
            }
            let result = json!({
                "poly": render(&f),
                "route": e.route.label(),
                "family": e.route.class().map(class_json),
                "regular": strings(reg.terms()),
                "value": rational_json(&value),
                "matchesProductValue": true,
            });
            let inputs = json!({ "poly": poly, "at": at.to_string(), "n": n.n.to_string() });
            emit(out, &record(name, inputs, result, start))?;
        }
        Command::Verify { poly, n, all_families } => {
            let mut targets = Vec::new();
            if let Some(p) = &poly {
                let f = parse_poly(p)?;
                check_n(&f, &n)?;
                targets.push(f);
            }
            if all_families {
                check_n(&Poly::monomial(1, 3), &n)?;
                targets.extend(families::representatives().into_iter().map(|(_, f)| f));
                targets.extend(families::degree_two_set());
            }
            let reports = std::thread::scope(|s| {
                let handles: Vec<_> = targets
                    .iter()
                    .map(|f| s.spawn(move || verify(f, n.n)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("verification thread panicked"))
                    .collect::<Vec<_>>()
            });
            let mut failed = Vec::new();
            for (f, report) in targets.iter().zip(reports) {
                let report = report?;
                if !report.passed() {
                    failed.push(render(f));
                }
                let inputs = json!({
                    "poly": render(f),
                    "n": n.n.to_string(),
                    "allFamilies": all_families,
                });
                emit(out, &record(name, inputs, report.to_json(), start))?;
            }
            if !failed.is_empty() {
                return Err(Failure::Verification(format!("checks failed for {}", failed.join("; "))));
            }
        }
        Command::Evidence { poly, at, depth, epsilon } => {
            let f = parse_poly(&poly)?;
            let ev = analysis::approx_exponent(&f, &at, depth, &epsilon)?;
            let records: Vec<Value> = ev
                .records
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n.to_string(),
                        "qDigits": r.q_digits.to_string(),
                        "gap": decimal::scientific(&r.gap, 20),
                        "gapLo": decimal::scientific(&r.gap_lo, 20),
                        "gapHi": decimal::scientific(&r.gap_hi, 20),
                        "exponent": r.exponent,
                        "exponentLo": r.exponent_lo,
                        "exponentHi": r.exponent_hi,
                        "warmUp": r.n <= analysis::WARM_UP,
                    })
                })
                .collect();
            let result = json!({
                "poly": render(&f),
                "family": class_json(&ev.class),
                "records": records,
                "threshold": ev.threshold(),
                "verdict": ev.verdict,
                "status": if ev.records.is_empty() { "insufficient depth" } else { "ok" },
                "note": "finite-depth numeric evidence only; not a proof of transcendence",
            });
            let inputs = json!({
                "poly": poly,
                "at": at.to_string(),
                "depth": depth.to_string(),
                "epsilon": epsilon.to_string(),
            });
            emit(out, &record(name, inputs, result, start))?;
        }
        Command::Identities { wz_max, eq2_max } => {
            let wz: Vec<Value> = (0..=wz_max)
                .map(|m| {
                    let v = families::wz_sum(m);
                    let sign = if m % 2 == 0 { -1 } else { 1 };
                    let expected = BigInt::from(sign) * BigInt::from(m + 1);
                    json!({ "m": m.to_string(), "value": v.to_string(), "holds": v == expected })
                })
                .collect();
            let eq2 = (0..=eq2_max)
                .map(|t| {
                    let q = families::eq2_quotient(t)?;
                    Ok(json!({ "t": t.to_string(), "quotient": render(&q) }))
                })
                .collect::<Result<Vec<_>>>()?;
            let holds = wz.iter().all(|v| v["holds"] == json!(true));
            let result = json!({ "wz": wz, "eq2": eq2, "allHold": holds });
            let inputs = json!({ "wzMax": wz_max.to_string(), "eq2Max": eq2_max.to_string() });
            emit(out, &record(name, inputs, result, start))?;
            if !holds {
                return Err(Failure::Verification("wz identity failed".into()));
            }
        }
        Command::Chebyshev { l, at } => {
            let t = analysis::chebyshev(l)?;
            let result = json!({
                "poly": render(&t),
                "residue": render(&analysis::residue_mod_cubic(&t)),
                "value": at.as_ref().map(|m| t.eval(m).to_string()),
            });
            let inputs = json!({ "l": l.to_string(), "at": at.map(|m| m.to_string()) });
            emit(out, &record(name, inputs, result, start))?;
        }
        Command::NearException { at, n } => {
            let r = analysis::near_exception(&at, n)?;
            let result = json!({
                "lhs": r.lhs,
                "rhs": r.rhs,
                "agreeDigits": r.agree_digits.to_string(),
                "precision": r.precision.to_string(),
            });
            let inputs = json!({ "at": at.to_string(), "n": n.to_string() });
            emit(out, &record(name, inputs, result, start))?;
        }
    }
    Ok(())
}
