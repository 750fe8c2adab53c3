//! The `bidiff` command line.
//!
//! Exit codes: 0 success, 1 no solution (or a failed `verify`), 2 usage,
//! parse or invalid-input errors, 3 exhausted numeric precision.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::bipoly::BiPoly;
use crate::difffield::DiffField;
use crate::error::Error;
use crate::parse::{parse_expr, parse_rational};
use crate::qfield::Rat;
use crate::report::{BoundJson, Report, SpreadJson, Status, StripJson};
use crate::solver::{d_star, default_cap, solve_full, solve_homogeneous, support_set_with, verify_solution, SolveOptions};
use crate::spread::{spread_set, strip_with, DEFAULT_MAX_SHIFT};
use crate::telescope::{telescope_sum, Recurrence, DEFAULT_VERIFY_TERMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bidiff", version, about = "Polynomial solutions of a*sigma(g) + b*g = f over order-two recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Recurrence coefficient u in s(n+2) = u*s(n) + v*s(n+1).
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Largest shift examined when computing spreads.
    #[arg(long, default_value_t = DEFAULT_MAX_SHIFT)]
    spread_bound: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a*sigma(g) + b*g = f.
    Solve {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        f: String,
        /// Highest kernel degree searched.
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        component_pruning: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Closed form for sum_{n=n0}^{m} f(s(n), s(n+1)).
    Sum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        s1: String,
        #[arg(long, default_value_t = 0)]
        n0: u32,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TERMS)]
        verify_terms: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Spread sets of a and b in both directions, and the strip of (a, b).
    Spread {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Degree bounds for the kernel and a particular solution.
    Bound {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check a candidate g by substitution.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    msg: String,
    field: Option<Box<DiffField>>,
}

impl Failure {
    fn new(e: Error, field: Option<&DiffField>) -> Failure {
        let code = match e {
            Error::PrecisionExhausted(_) => EXIT_PRECISION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
            field: field.cloned().map(Box::new),
        }
    }
}

fn poly(name: &str, text: &str) -> Result<BiPoly, Failure> {
    parse_expr(text).map_err(|e| Failure {
        code: EXIT_USAGE,
        msg: format!("--{name}: {e}"),
        field: None,
    })
}

fn rational(name: &str, text: &str) -> Result<Rat, Failure> {
    parse_rational(text).map_err(|e| Failure {
        code: EXIT_USAGE,
        msg: format!("--{name}: {e}"),
        field: None,
    })
}

fn field(args: &FieldArgs) -> Result<DiffField, Failure> {
    DiffField::new(rational("u", &args.u)?, rational("v", &args.v)?).map_err(|e| Failure::new(e, None))
}

fn exit_code(r: &Report) -> i32 {
    match (r.status, r.verified) {
        (_, Some(false)) | (Status::NoParticular, _) => EXIT_NO_SOLUTION,
        (Status::Error, _) => EXIT_USAGE,
        _ => EXIT_OK,
    }
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Solve {
            field: fa,
            a,
            b,
            f,
            cap,
            component_pruning,
            common,
        } => {
            let fld = field(fa)?;
            let (a, b, f) = (poly("a", a)?, poly("b", b)?, poly("f", f)?);
            let opts = SolveOptions {
                cap: *cap,
                component_pruning: *component_pruning,
                max_shift: common.spread_bound,
            };
            let homogeneous = f.is_zero();
            let sol = if homogeneous {
                solve_homogeneous(&a, &b, &fld, &opts)
            } else {
                solve_full(&a, &b, &f, &fld, &opts)
            }
            .map_err(|e| Failure::new(e, Some(&fld)))?;
            Ok(Report::from_solution(&fld, &sol, homogeneous))
        }
        Command::Sum {
            field: fa,
            s0,
            s1,
            n0,
            f,
            cap,
            verify_terms,
            common,
        } => {
            let rec = Recurrence::new(
                rational("u", &fa.u)?,
                rational("v", &fa.v)?,
                rational("s0", s0)?,
                rational("s1", s1)?,
                *n0,
            );
            let f = poly("f", f)?;
            let opts = SolveOptions {
                cap: *cap,
                component_pruning: false,
                max_shift: common.spread_bound,
            };
            let fld = rec.field().map_err(|e| Failure::new(e, None))?;
            let res = telescope_sum(&rec, &f, &opts, *verify_terms).map_err(|e| Failure::new(e, Some(&fld)))?;
            let report = Report::from_solution(&res.field, &res.solution, false);
            Ok(match &res.identity {
                Some(id) => report.with_identity(id),
                None => report,
            })
        }
        Command::Spread { field: fa, a, b, common } => {
            let fld = field(fa)?;
            let (a, b) = (poly("a", a)?, poly("b", b)?);
            let fail = |e| Failure::new(e, Some(&fld));
            let forward = spread_set(&a, &b, &fld, common.spread_bound).map_err(fail)?;
            let backward = spread_set(&b, &a, &fld, common.spread_bound).map_err(fail)?;
            let s = strip_with(&a, &b, &fld, common.spread_bound).map_err(fail)?;
            let mut r = Report::new(Status::Solved, Some(&fld));
            r.spread = Some(SpreadJson {
                forward: forward.into_iter().collect(),
                backward: backward.into_iter().collect(),
            });
            r.strip = Some(StripJson::from(&s));
            r.diagnostics = s
                .steps
                .iter()
                .map(|st| format!("{} step: shift {} removes {}", format!("{:?}", st.side).to_lowercase(), st.shift, st.factor))
                .collect();
            Ok(r)
        }
        Command::Bound {
            field: fa,
            a,
            b,
            f,
            common,
        } => {
            let fld = field(fa)?;
            let (a, b, f) = (poly("a", a)?, poly("b", b)?, poly("f", f)?);
            if a.is_zero() || b.is_zero() {
                return Err(Failure::new(Error::ZeroPolynomial, Some(&fld)));
            }
            let ds = d_star(&a, &b, &f);
            let mut r = Report::new(Status::Solved, Some(&fld));
            if a.degree() != b.degree() {
                r.bound = Some(BoundJson {
                    d_star: ds,
                    kernel_degree_bound: None,
                    unbounded: false,
                });
                r.diagnostics.push("deg a != deg b, so the kernel is {0}".into());
                return Ok(r);
            }
            let (support, s) = support_set_with(&a.leading_form(), &b.leading_form(), &fld, common.spread_bound)
                .map_err(|e| Failure::new(e, Some(&fld)))?;
            r.support = (&support).into();
            r.strip = Some(StripJson::from(&s));
            r.bound = Some(BoundJson {
                d_star: ds,
                kernel_degree_bound: if support.progression.is_some() {
                    None
                } else {
                    support.finite.last().copied()
                },
                unbounded: support.progression.is_some(),
            });
            r.diagnostics
                .push(format!("default search cap: {}", default_cap(&support, ds)));
            Ok(r)
        }
        Command::Verify {
            field: fa,
            a,
            b,
            f,
            g,
            ..
        } => {
            let fld = field(fa)?;
            let (a, b, f, g) = (poly("a", a)?, poly("b", b)?, poly("f", f)?, poly("g", g)?);
            let ok = verify_solution(&a, &b, &f, &g, &fld);
            let mut r = Report::new(Status::Solved, Some(&fld));
            r.verified = Some(ok);
            if !ok {
                let residual = &(&a * &fld.apply_sigma(&g, 1)) + &(&(&b * &g) - &f);
                r.diagnostics.push(format!("residual a*sigma(g) + b*g - f = {residual}"));
            }
            Ok(r)
        }
    }
}

fn wants_json(cmd: &Command) -> bool {
    match cmd {
        Command::Solve { common, .. }
        | Command::Sum { common, .. }
        | Command::Spread { common, .. }
        | Command::Bound { common, .. } => common.json,
        Command::Verify { json, .. } => *json,
    }
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json = wants_json(&cli.command);
    let (report, code) = match execute(&cli.command) {
        Ok(r) => {
            let code = exit_code(&r);
            (r, code)
        }
        Err(fail) => {
            if !json {
                let _ = writeln!(err, "error: {}", fail.msg);
                return fail.code;
            }
            (Report::error(fail.msg, fail.field.as_deref()), fail.code)
        }
    };
    let text = if json { report.to_json() } else { report.to_text() };
    let _ = writeln!(out, "{text}");
    code
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
