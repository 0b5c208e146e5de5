//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 solver or cap error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tame_core::commutant::default_degree_bound;
use tame_core::jordan::{certify, matrix_spectrum};
use tame_core::operators::{commute_check, generator_subspace, is_locally_nilpotent};
use tame_core::{exp_derivation, jordan_decompose, Caps, Derivation, Endomorphism, Operator, ShapeKind};

use crate::parser::{parse_derivation, parse_endomorphism, parse_operator, parse_poly, ParseError};
use crate::registry::{make_normal_form, parse_params, Family, InvalidParams};
use crate::report::{describe_component, JordanJson, SolutionSetJson, VerificationReportJson};
use crate::verify::{distinct_flags, verify_all, verify_form, Options, Status, VerificationReport, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tame", version, about = "Exact isotropy computations for derivations of K[X,Y]")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum total degree of intermediate polynomials.
    #[arg(long, global = true, default_value_t = Caps::default().deg_cap)]
    deg_cap: u32,
    /// Maximum dimension of invariant subspaces.
    #[arg(long, global = true, default_value_t = Caps::default().dim_cap)]
    dim_cap: usize,
    /// Seed for the random soundness samples.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include per-stage timings in verification reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Deriv,
    Exp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Rho,
    Theta,
}

impl From<Shape> for ShapeKind {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Rho => ShapeKind::Rho,
            Shape::Theta => ShapeKind::Theta,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a derivation or endomorphism to a polynomial.
    Apply {
        #[arg(long)]
        op: String,
        #[arg(long)]
        poly: String,
    },
    /// Lie bracket [D1, D2].
    Bracket { lhs: String, rhs: String },
    /// Local finiteness and nilpotency of a derivation.
    LfdCheck {
        #[arg(long)]
        d: String,
    },
    /// Jordan–Chevalley decomposition with certificates.
    Jordan {
        #[arg(long)]
        d: String,
    },
    /// exp(D) of a locally finite derivation.
    Exp {
        #[arg(long)]
        d: String,
    },
    /// Whether two operators commute.
    Commute { lhs: String, rhs: String },
    /// Elementary automorphisms commuting with D or exp(D), or with an endomorphism.
    IsotropySolve {
        #[arg(long, required_unless_present = "phi", conflicts_with = "phi")]
        d: Option<String>,
        /// Endomorphism target instead of a derivation.
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, value_enum, default_value = "deriv")]
        target: Target,
        #[arg(long, value_enum, default_value = "rho")]
        shape: Shape,
        /// Degree bound; defaults to max(8, 2·(1 + degree of the target)).
        #[arg(long)]
        deg: Option<usize>,
    },
    /// Verify one normal form.
    Verify {
        #[arg(long)]
        family: String,
        /// e.g. `a=2,b=1` or `f=X^2+1`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = crate::verify::DEFAULT_DEGREE)]
        deg: usize,
    },
    /// Verify the full standard registry.
    VerifyAll {
        #[arg(long, default_value_t = crate::verify::DEFAULT_DEGREE)]
        deg: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Params(#[from] InvalidParams),
    #[error(transparent)]
    Core(#[from] tame_core::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Params(_) => EXIT_USAGE,
            CliError::Core(_) => EXIT_SOLVER,
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn tuple(e: &Endomorphism) -> String {
    format!("({} ; {})", e.im_x, e.im_y)
}

/// Runs the CLI on `args` (including the program name).
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = execute(&cli);
    match result {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, output.text.as_bytes()),
                None => out.write_all(output.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let caps = Caps { deg_cap: cli.deg_cap, dim_cap: cli.dim_cap };
    match &cli.command {
        Command::Apply { op, poly } => {
            let p = parse_poly(poly)?;
            let r = match parse_operator(op)? {
                Operator::Derivation(d) => d.apply(&p, &caps)?,
                Operator::Endomorphism(e) => e.apply(&p, &caps)?,
            };
            Ok(Output::ok(if cli.json { json(&serde_json::json!({ "result": r.to_string() })) } else { format!("{r}\n") }))
        }
        Command::Bracket { lhs, rhs } => {
            let r = parse_derivation(lhs)?.bracket(&parse_derivation(rhs)?, &caps)?;
            Ok(Output::ok(if cli.json { json(&serde_json::json!({ "bracket": r.to_string() })) } else { format!("{r}\n") }))
        }
        Command::LfdCheck { d } => {
            let d = parse_derivation(d)?;
            let space = generator_subspace(&d, &caps);
            let lnd = is_locally_nilpotent(&d, &caps);
            #[derive(Serialize)]
            struct Lfd {
                locally_finite: bool,
                locally_nilpotent: bool,
                dimension: Option<usize>,
                basis: Vec<String>,
                reason: Option<String>,
            }
            let report = Lfd {
                locally_finite: space.is_ok(),
                locally_nilpotent: lnd,
                dimension: space.as_ref().ok().map(|s| s.dim()),
                basis: space.as_ref().map(|s| s.basis.iter().map(ToString::to_string).collect()).unwrap_or_default(),
                reason: space.as_ref().err().map(ToString::to_string),
            };
            let text = if cli.json {
                json(&report)
            } else {
                let mut t = format!("locally finite: {}\nlocally nilpotent: {}\n", report.locally_finite, lnd);
                match (&report.dimension, &report.reason) {
                    (Some(n), _) => t += &format!("invariant subspace: dim {n}, basis [{}]\n", report.basis.join(", ")),
                    (None, Some(r)) => t += &format!("reason: {r}\n"),
                    _ => {}
                }
                t
            };
            Ok(Output::ok(text))
        }
        Command::Jordan { d } => {
            let d = parse_derivation(d)?;
            let pair = jordan_decompose(&d, &caps)?;
            let cert = certify(&d, &pair, &caps)?;
            let spectrum = matrix_spectrum(&generator_subspace(&d, &caps)?.matrix)?;
            let report = JordanJson::new(
                d.to_string(),
                pair.semisimple.to_string(),
                pair.nilpotent.to_string(),
                &spectrum,
                &cert,
            );
            let text = if cli.json {
                json(&report)
            } else {
                let spec: Vec<String> = report.spectrum.iter().map(|s| format!("{} (x{})", s.eigenvalue, s.multiplicity)).collect();
                format!(
                    "D_s: {}\nD_n: {}\nspectrum: {}\nsum matches: {}\nbracket zero: {}\nD_n locally nilpotent: {}\nS diagonalizable: {}\n",
                    report.semisimple,
                    report.nilpotent,
                    spec.join(", "),
                    cert.sum_matches,
                    cert.bracket_zero,
                    cert.nilpotent_part_lnd,
                    cert.semisimple_diagonalizable
                )
            };
            Ok(Output { text, code: if cert.all() { EXIT_OK } else { EXIT_VERIFICATION } })
        }
        Command::Exp { d } => {
            let d = parse_derivation(d)?;
            let r = exp_derivation(&d, &caps)?;
            let text = if cli.json {
                json(&serde_json::json!({
                    "derivation": d.to_string(),
                    "exp": r.automorphism.to_string(),
                    "inverse_checked": r.certificate.inverse_checked,
                    "lnd_path_used": r.certificate.lnd_path_used,
                }))
            } else {
                format!("{}\n", tuple(&r.automorphism))
            };
            let code = if r.certificate.inverse_checked { EXIT_OK } else { EXIT_VERIFICATION };
            Ok(Output { text, code })
        }
        Command::Commute { lhs, rhs } => {
            let holds = commute_check(&parse_operator(lhs)?, &parse_operator(rhs)?, &caps)?;
            Ok(Output::ok(if cli.json { json(&serde_json::json!({ "commute": holds })) } else { format!("{holds}\n") }))
        }
        Command::IsotropySolve { d, phi, target, shape, deg } => {
            let target = match (d, phi) {
                (_, Some(phi)) => Operator::Endomorphism(parse_endomorphism(phi)?),
                (Some(d), None) => {
                    let d: Derivation = parse_derivation(d)?;
                    match target {
                        Target::Deriv => Operator::Derivation(d),
                        Target::Exp => Operator::Endomorphism(exp_derivation(&d, &caps)?.automorphism),
                    }
                }
                (None, None) => return Err(CliError::Usage("one of --d or --phi is required".into())),
            };
            let deg = deg.unwrap_or_else(|| default_degree_bound(&target));
            let opts = Options { degree_bound: deg, caps, seed: cli.seed };
            let set = opts.solve(&target, (*shape).into())?;
            let text = if cli.json {
                json(&SolutionSetJson::from(&set))
            } else {
                let mut t = format!("target: {target}\nshape: {:?}, degree bound {deg}\n", set.shape.kind);
                for c in &set.components {
                    t += &format!("  {}  unit: {:?}\n", describe_component(&set.shape, c), c.unit_constraint);
                }
                if let Some(r) = &set.residual {
                    t += &format!("  unresolved: {}\n", r.equations.join("; "));
                }
                t
            };
            let code = if set.is_complete() { EXIT_OK } else { EXIT_SOLVER };
            Ok(Output { text, code })
        }
        Command::Verify { family, params, deg } => {
            let family: Family = family.parse().map_err(CliError::Usage)?;
            let params = parse_params(family, params).map_err(CliError::Usage)?;
            let form = make_normal_form(family, params)?;
            let opts = Options { degree_bound: *deg, caps, seed: cli.seed };
            let report = verify_form(&form, &opts);
            let text = if cli.json {
                json(&VerificationReportJson::new(&report, cli.timings))
            } else {
                human_report(&report, cli.timings)
            };
            Ok(Output { text, code: exit_code(std::slice::from_ref(&report)) })
        }
        Command::VerifyAll { deg } => {
            let opts = Options { degree_bound: *deg, caps, seed: cli.seed };
            let reports = verify_all(&opts);
            let text = if cli.json {
                let all: Vec<VerificationReportJson> =
                    reports.iter().map(|r| VerificationReportJson::new(r, cli.timings)).collect();
                json(&all)
            } else {
                let mut t = String::new();
                for r in &reports {
                    let mut line = format!("{:<34} equal={:<5} status={:?}", r.form.label(), r.equal, r.status());
                    if cli.timings {
                        let total = r.timings.exp_ms + r.timings.d_side_ms + r.timings.exp_side_ms + r.timings.checks_ms;
                        line += &format!(" ({total:.1} ms)");
                    }
                    t += &line;
                    t.push('\n');
                }
                let flags = distinct_flags(&reports);
                t += &format!("discrepancy flags ({}):\n", flags.len());
                for f in flags {
                    t += &format!("  - {f}\n");
                }
                t
            };
            Ok(Output { text, code: exit_code(&reports) })
        }
    }
}

fn exit_code(reports: &[VerificationReport]) -> i32 {
    let statuses: Vec<Status> = reports.iter().map(VerificationReport::status).collect();
    if statuses.contains(&Status::Error) {
        EXIT_SOLVER
    } else if statuses.contains(&Status::Failed) {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    }
}

fn human_report(r: &VerificationReport, timings: bool) -> String {
    let mut t = format!("{}\n  D = {}\n", r.form.label(), r.form.derivation);
    if let Some(e) = &r.exp_automorphism {
        t += &format!("  exp(D) = {}\n", tuple(e));
    }
    for (name, side) in [("D", &r.d_side), ("exp(D)", &r.exp_side)] {
        if let Some(pair) = side {
            for set in [&pair.rho, &pair.theta] {
                let members: Vec<String> = set.components.iter().map(|c| describe_component(&set.shape, c)).collect();
                t += &format!("  {name} {:?}: {}\n", set.shape.kind, members.join(" | "));
            }
        }
    }
    t += &format!("  equal: {}\n", r.equal);
    for c in &r.expected_family_checks {
        t += &format!("  [{:?}] {} ({}/{} commute)\n", c.outcome, c.description, c.commuting, c.instances.len());
    }
    for f in &r.discrepancy_flags {
        t += &format!("  flag: {f}\n");
    }
    if let Some(e) = &r.error {
        t += &format!("  error: {e}\n");
    }
    if timings {
        let tm = &r.timings;
        t += &format!(
            "  timings: exp {:.1} ms, D side {:.1} ms, exp side {:.1} ms, checks {:.1} ms\n",
            tm.exp_ms, tm.d_side_ms, tm.exp_side_ms, tm.checks_ms
        );
    }
    t += &format!("  status: {:?}\n", r.status());
    t
}
