//! Command-line definitions and dispatch. `run` never touches the process
//! streams directly so that it can be driven from tests.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use biquad_core::classify::{certify, enumerate_diagonal_auts, enumerate_swap_auts, order_menu, quotient_genus};
use biquad_core::families::FamilySpec;
use biquad_core::smooth::{corner_report, genus, is_smooth};
use biquad_core::{BiPoly, CycloScalar, Error, FamilyId, InvarianceCertificate};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::analysis::CertAnalysis;
use crate::parse::{parse_aut, parse_bipoly, parse_scalar};
use crate::report::{self, Report};
use crate::verify::{check_family, run_sweep, SweepConfig};

pub const MAX_CONDUCTOR_ENV: &str = "BIQUAD_MAX_CONDUCTOR";

#[derive(Debug, Parser)]
#[command(
    name = "biquad",
    version,
    about = "Automorphisms of smooth curves of bidegree (a,b) on P1 x P1, in exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolyInput {
    /// Polynomial text, e.g. 'X0^4*Y0^5 + X1^4*Y1^5 + ...'. Read from stdin
    /// when neither --poly nor --file is given.
    #[arg(long)]
    pub poly: Option<String>,
    /// UTF-8 file holding one polynomial.
    #[arg(long, conflicts_with = "poly")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Echo the canonical form, bidegree and support.
    Parse(PolyInput),
    /// Which corners lie on the curve, and the corner polynomials.
    Corners(PolyInput),
    /// Exact smoothness test with a checkable witness.
    Smooth(PolyInput),
    /// Genus (a-1)(b-1) of a smooth curve.
    Genus { a: u32, b: u32 },
    /// Values every automorphism order divides a member of.
    OrderMenu { a: u32, b: u32 },
    /// Diagonal and swap-type automorphisms found by enumeration.
    Auts {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        max_conductor: Option<u32>,
    },
    /// Case analysis, Galois criterion and quotient genus per certificate.
    Classify {
        #[command(flatten)]
        input: PolyInput,
        /// Only this automorphism, e.g. 'diag(20; 5, 4)'.
        #[arg(long)]
        aut: Option<String>,
        #[arg(long)]
        max_conductor: Option<u32>,
    },
    /// Riemann-Hurwitz for the quotient by one automorphism.
    QuotientGenus {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        aut: String,
    },
    /// Build and validate a member of a maximal-order family.
    Family {
        /// max-ab, max-a1b, max-ab1, plus-one-a or plus-one-b.
        id: FamilyId,
        a: u32,
        b: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        s2: Option<String>,
    },
    /// Seeded sweep over random smooth curves and all family instances.
    Verify {
        /// Inclusive, e.g. 3..5.
        #[arg(long, value_parser = parse_range)]
        a_range: (u32, u32),
        #[arg(long, value_parser = parse_range)]
        b_range: (u32, u32),
        #[arg(long, default_value_t = 25)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_conductor: Option<u32>,
        /// Skip the family instances.
        #[arg(long)]
        no_families: bool,
    },
}

/// `lo..hi` or `lo..=hi`, both inclusive, or a single value.
pub fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected lo..hi, got {:?}", s);
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(format!("empty range {:?}", s));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<crate::parse::ParseError> for Usage {
    fn from(e: crate::parse::ParseError) -> Self {
        Usage(e.to_string())
    }
}

fn read_poly(input: &PolyInput, stdin: &mut dyn Read) -> Result<(BiPoly, String), Usage> {
    let text = match (&input.poly, &input.file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Usage(format!("cannot read {}: {}", path.display(), e)))?,
        (None, None) => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Usage(format!("cannot read stdin: {}", e)))?;
            s
        }
    };
    let parsed = parse_bipoly(text.trim())?;
    Ok((parsed.poly, text.trim().to_string()))
}

fn max_conductor(flag: Option<u32>, a: u32, b: u32) -> Result<u32, Usage> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_CONDUCTOR_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Usage(format!("{} must be a positive integer, got {:?}", MAX_CONDUCTOR_ENV, v))),
        Err(_) => Ok((a * b).max(1)),
    }
}

fn admissibility(a: u32, b: u32) -> impl Fn(u64) -> Option<bool> {
    move |order| biquad_core::classify::order_is_admissible(order, a, b).ok()
}

fn dispatch(cmd: Command, stdin: &mut dyn Read) -> Result<Report, Usage> {
    Ok(match cmd {
        Command::Parse(input) => {
            let (f, src) = read_poly(&input, stdin)?;
            let mut r = Report::new("parse");
            r.input("poly", src)
                .result("canonical", f.to_string())
                .result("poly", report::poly(&f))
                .result("terms", f.terms().len());
            r
        }
        Command::Corners(input) => {
            let (f, src) = read_poly(&input, stdin)?;
            let mut r = Report::new("corners");
            r.input("poly", src).result("corners", report::corners(&corner_report(&f)?));
            r
        }
        Command::Smooth(input) => {
            let (f, src) = read_poly(&input, stdin)?;
            let v = is_smooth(&f)?;
            let mut r = Report::new("smooth");
            r.input("poly", src).results = match report::smoothness(&v, &f) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            r
        }
        Command::Genus { a, b } => {
            let mut r = Report::new("genus");
            r.input("a", a).input("b", b).result("genus", genus(a, b));
            r
        }
        Command::OrderMenu { a, b } => {
            let menu: Vec<u64> = order_menu(a, b)?.into_iter().collect();
            let text = format!(
                "{{{}}}",
                menu.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            );
            let mut r = Report::new("order-menu");
            r.input("a", a).input("b", b).result("menu", menu).result("text", text);
            r
        }
        Command::Auts { input, max_conductor: flag } => {
            let (f, src) = read_poly(&input, stdin)?;
            let (a, b) = f.bidegree();
            let n_max = max_conductor(flag, a, b)?;
            let en = enumerate_diagonal_auts(&f, n_max)?;
            let ok = admissibility(a, b);
            let swaps = if a == b {
                let s = enumerate_swap_auts(&f, n_max)?;
                Value::Array(s.iter().map(|c| report::certificate(c, ok(c.order))).collect())
            } else {
                Value::Null
            };
            let mut r = Report::new("auts");
            r.input("poly", src)
                .input("max_conductor", n_max)
                .result("diagonal", report::enumeration(&en, &ok))
                .result("swap", swaps);
            r
        }
        Command::Classify {
            input,
            aut,
            max_conductor: flag,
        } => {
            let (f, src) = read_poly(&input, stdin)?;
            let (a, b) = f.bidegree();
            let mut r = Report::new("classify");
            r.input("poly", src);
            let v = is_smooth(&f)?;
            r.result("smooth", v.smooth);
            let certs: Vec<InvarianceCertificate> = match &aut {
                Some(text) => {
                    r.input("aut", text.clone());
                    let g = parse_aut(text)?;
                    vec![certify(&f, &g).ok_or_else(|| Usage(format!("F is not invariant under {} or the order is infinite", g)))?]
                }
                None => {
                    let n_max = max_conductor(flag, a, b)?;
                    r.input("max_conductor", n_max);
                    let mut c = enumerate_diagonal_auts(&f, n_max)?.certificates;
                    if a == b {
                        c.extend(enumerate_swap_auts(&f, n_max)?);
                    }
                    c
                }
            };
            if !v.smooth {
                r.result("note", "the curve is singular; the case analysis applies to smooth curves only")
                    .result("certificates", Vec::<Value>::new());
                return Ok(r);
            }
            let mut out = Vec::new();
            for cert in &certs {
                let an = CertAnalysis::run(&f, cert)?;
                out.push(an.to_json());
                r.violations.extend(an.checks(&f).into_iter().filter_map(|(_, v)| v));
            }
            r.result("certificates", out);
            r
        }
        Command::QuotientGenus { input, aut } => {
            let (f, src) = read_poly(&input, stdin)?;
            let g = parse_aut(&aut)?;
            let cert = certify(&f, &g)
                .ok_or_else(|| Usage(format!("F is not invariant under {} or the order is infinite", g)))?;
            let mut r = Report::new("quotient-genus");
            r.input("poly", src).input("aut", aut);
            r.result("certificate", report::certificate(&cert, None));
            match quotient_genus(&f, &cert) {
                Ok(q) => {
                    r.result("quotient", report::quotient(&q))
                        .result("quotient_genus", q.quotient_genus);
                }
                Err(e @ Error::NonIntegralGenus { .. }) => {
                    let replay = match &e {
                        Error::NonIntegralGenus { replay, .. } => replay.join("; "),
                        _ => unreachable!(),
                    };
                    r.violations
                        .push(report::assertion("Riemann-Hurwitz integrality", e.to_string(), replay));
                }
                Err(Error::TheoremViolation(v)) => r.violations.push(report::violation(&v)),
                Err(e) => return Err(e.into()),
            }
            r
        }
        Command::Family { id, a, b, s, s2 } => {
            let sv = parse_scalar(&s)?;
            let s2v = match &s2 {
                Some(t) => parse_scalar(t)?,
                None if id.has_second_param() => {
                    return Err(Usage(format!("{} needs --s2", id)));
                }
                None => CycloScalar::one(),
            };
            let spec = FamilySpec::new(id, a, b, sv, s2v);
            spec.check()?;
            let out = check_family(&spec);
            let mut r = Report::new("family");
            r.input("family", id.name()).input("a", a).input("b", b).input("s", spec.s.to_string());
            if id.has_second_param() {
                r.input("s2", spec.s2.to_string());
            }
            if let Value::Object(m) = out.value {
                r.results = m;
            }
            r.result("degenerate", out.degenerate);
            r.violations.extend(out.violation);
            r
        }
        Command::Verify {
            a_range,
            b_range,
            trials,
            seed,
            max_conductor: flag,
            no_families,
        } => {
            if a_range.0 < 3 || b_range.0 < 3 {
                return Err(Usage("verify needs a, b >= 3".into()));
            }
            let env = match flag {
                Some(n) => Some(n),
                None => std::env::var(MAX_CONDUCTOR_ENV).ok().map(|_| max_conductor(None, 1, 1)).transpose()?,
            };
            let cfg = SweepConfig {
                a_range,
                b_range,
                trials,
                seed,
                max_conductor: env,
                families: !no_families,
            };
            run_sweep(&cfg).to_report()
        }
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(r) => Outcome {
            code: if r.violations.is_empty() { 0 } else { 1 },
            stdout: r.render(),
            stderr: String::new(),
        },
        Err(Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n\nFor more information, try '--help'.\n", msg),
        },
    }
}

/// Exit code implied by a rendered report.
pub fn exit_code_of(report: &Value) -> i32 {
    match report.get("violations").and_then(Value::as_array) {
        Some(v) if !v.is_empty() => 1,
        _ => 0,
    }
}
