use std::path::PathBuf;
use std::process::ExitCode;

use appell_f4::checks::{CheckRegistry, Context, VerificationReport};
use appell_f4::cohomology::{build_library, pfaff_certificates};
use appell_f4::connection::{
    build_intersection, build_xi, build_xi_hat, build_xi_tilde_printed, printed, ConnectionSystem,
    DivisorLabel, ParameterDictionary,
};
use appell_f4::forms::FMatrix;
use appell_f4::numeric::{
    default_base, flatness_defect, monodromy, parse_rational, MonodromyOptions, MonodromyResult,
    NumericError, NumericParams, Orientation, ParamError,
};
use appell_f4::parallel::Execution;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// `println!` that stops quietly when stdout is closed.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARAMS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "f4pfaff",
    version,
    about = "Exact checks and numeric monodromy for the Appell F4 Pfaffian system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact checks: `all` or a single check id.
    Verify {
        #[arg(default_value = "all")]
        selector: String,
        #[arg(long)]
        json: bool,
        /// Run checks one after another on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
    /// List the registered checks.
    List,
    /// Print a matrix object.
    Emit {
        matrix: MatrixName,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Monodromy around one divisor (or `all`) by numeric continuation.
    Monodromy {
        divisor: String,
        #[command(flatten)]
        numeric: NumericArgs,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        clockwise: bool,
        #[arg(long)]
        json: bool,
    },
    /// Transport defect around a small contractible loop at the base point.
    Flatness {
        #[command(flatten)]
        numeric: NumericArgs,
        #[arg(long)]
        json: bool,
    },
    /// Dump the certificate library, and the reduced row certificates of Ξ, as JSON.
    Certificates,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixName {
    #[value(name = "xi")]
    Xi,
    #[value(name = "xitilde")]
    XiTilde,
    #[value(name = "xihat")]
    XiHat,
    #[value(name = "C")]
    C,
    #[value(name = "Chat")]
    Chat,
    #[value(name = "C1")]
    C1,
    #[value(name = "C2")]
    C2,
    #[value(name = "Gpartial")]
    GPartial,
}

#[derive(Args, Clone, Default)]
struct NumericArgs {
    /// JSON file with any of a, b, c1, c2 ("p/q" strings), tol, radius, precision_bits.
    #[arg(long)]
    params_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    precision_bits: Option<u32>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    a: Option<String>,
    b: Option<String>,
    c1: Option<String>,
    c2: Option<String>,
    tol: Option<f64>,
    radius: Option<f64>,
    precision_bits: Option<u32>,
}

enum Failure {
    Usage(String),
    Params(ParamError),
    Numeric(NumericError),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Usage(m) => {
                eprintln!("error: {m}");
                ExitCode::from(EXIT_USAGE)
            }
            Failure::Params(e) => {
                eprintln!("invalid parameters: {e}");
                ExitCode::from(EXIT_PARAMS)
            }
            Failure::Numeric(NumericError::Param(e)) => Failure::Params(e).report(),
            Failure::Numeric(e) => {
                eprintln!("numeric failure: {e}");
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}

struct Resolved {
    params: NumericParams,
    tol: f64,
    radius: Option<f64>,
    precision_bits: u32,
}

fn resolve(args: &NumericArgs, radius: Option<f64>) -> Result<Resolved, Failure> {
    let file = match &args.params_file {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str::<ParamsFile>(&text)
                .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", p.display())))?
        }
        None => ParamsFile::default(),
    };
    let defaults = NumericParams::default();
    let pick = |flag: &Option<String>,
                from_file: &Option<String>,
                fallback: &appell_f4::algebra::Rational| {
        match flag.as_ref().or(from_file.as_ref()) {
            Some(s) => parse_rational(s),
            None => Ok(fallback.clone()),
        }
    };
    let a = pick(&args.a, &file.a, &defaults.a).map_err(Failure::Params)?;
    let b = pick(&args.b, &file.b, &defaults.b).map_err(Failure::Params)?;
    let c1 = pick(&args.c1, &file.c1, &defaults.c1).map_err(Failure::Params)?;
    let c2 = pick(&args.c2, &file.c2, &defaults.c2).map_err(Failure::Params)?;
    let params = NumericParams::unchecked(a, b, c1, c2);
    params.validate_nonresonant().map_err(Failure::Params)?;
    let base = MonodromyOptions::default();
    Ok(Resolved {
        params,
        tol: args.tol.or(file.tol).unwrap_or(base.tol),
        radius: radius.or(file.radius),
        precision_bits: args
            .precision_bits
            .or(file.precision_bits)
            .unwrap_or(base.precision_bits),
    })
}

fn print_report(r: &VerificationReport, json: bool) {
    if json {
        outln!(
            "{}",
            serde_json::to_string_pretty(r).expect("report serializes")
        );
        return;
    }
    for c in &r.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        outln!("{mark}  {:<28} [{}]  {}", c.id, c.anchor, c.detail);
    }
    outln!("{} passed, {} failed", r.summary.passed, r.summary.failed);
}

fn cmd_verify(selector: &str, json: bool, sequential: bool) -> Result<ExitCode, Failure> {
    let reg = CheckRegistry::standard();
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let ctx = Context::new();
    let report = reg
        .run(&ctx, selector, exec)
        .map_err(|e| Failure::Usage(format!("{e}; run `f4pfaff list` for the available ids")))?;
    print_report(&report, json);
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn cmd_list() -> ExitCode {
    for c in CheckRegistry::standard().iter() {
        outln!("{:<28} [{}]  {}", c.id, c.anchor, c.description);
    }
    ExitCode::SUCCESS
}

fn latex_named(name: &str, m: &FMatrix) -> String {
    format!("{name} = {}", m.latex())
}

fn latex_one_form(names: [&str; 2], sys: &ConnectionSystem) -> String {
    format!(
        "{}\n\n{}",
        latex_named(names[0], &sys.form.parts[0]),
        latex_named(names[1], &sys.form.parts[1])
    )
}

fn divisor_latex(d: DivisorLabel) -> &'static str {
    match d {
        DivisorLabel::Y1 => "y_1",
        DivisorLabel::Y2 => "y_2",
        DivisorLabel::Y1m1 => "y_1-1",
        DivisorLabel::Y2m1 => "y_2-1",
        DivisorLabel::Line => "y_1+y_2-1",
    }
}

fn emit(matrix: MatrixName, format: Format) -> String {
    let dict = ParameterDictionary;
    let data = build_intersection(&dict);
    let plain = |name: &str, m: FMatrix| match format {
        Format::Json => serde_json::to_string_pretty(&m).expect("matrix serializes"),
        Format::Latex => latex_named(name, &m),
    };
    match matrix {
        MatrixName::Xi | MatrixName::XiTilde => {
            let (sys, names) = if matches!(matrix, MatrixName::Xi) {
                (build_xi(&dict), ["\\Xi^1", "\\Xi^2"])
            } else {
                (
                    build_xi_tilde_printed(&dict),
                    ["\\tilde\\Xi^1", "\\tilde\\Xi^2"],
                )
            };
            match format {
                Format::Json => serde_json::to_string_pretty(&sys.form).expect("form serializes"),
                Format::Latex => latex_one_form(names, &sys),
            }
        }
        MatrixName::XiHat => {
            let sys = build_xi_hat(&dict);
            match format {
                Format::Json => serde_json::to_string_pretty(&sys).expect("system serializes"),
                Format::Latex => {
                    let terms: Vec<String> = sys
                        .divisors
                        .iter()
                        .map(|t| {
                            let d = divisor_latex(t.label);
                            format!(
                                "% residue along {d} = 0\n{} \\, d\\log({d})",
                                t.residue.latex()
                            )
                        })
                        .collect();
                    format!("\\hat\\Xi =\n{}", terms.join("\n+\n"))
                }
            }
        }
        MatrixName::C => plain("C", data.c),
        MatrixName::Chat => plain("\\hat C", data.chat),
        MatrixName::C1 => plain("\\hat C_1", data.c1),
        MatrixName::C2 => plain("\\hat C_2", data.c2),
        MatrixName::GPartial => plain("G_\\partial", printed::g_partial()),
    }
}

#[derive(Serialize)]
struct CertificateDump {
    library: appell_f4::cohomology::CertificateLibrary,
    pfaff_rows: Vec<appell_f4::cohomology::Certificate>,
}

fn cmd_certificates() -> Result<ExitCode, Failure> {
    let lib = build_library(&ParameterDictionary);
    let rows = pfaff_certificates(&lib).map_err(|e| Failure::Usage(e.to_string()))?;
    let dump = CertificateDump {
        library: lib,
        pfaff_rows: rows,
    };
    outln!(
        "{}",
        serde_json::to_string_pretty(&dump).expect("certificates serialize")
    );
    Ok(ExitCode::SUCCESS)
}

fn fmt_c(z: &num_complex::Complex<f64>) -> String {
    format!("{:+.10}{:+.10}i", z.re, z.im)
}

fn print_monodromy(r: &MonodromyResult) {
    let list =
        |v: &[num_complex::Complex<f64>]| v.iter().map(fmt_c).collect::<Vec<_>>().join(",  ");
    let orientation = match r.orientation {
        Orientation::Counterclockwise => "counterclockwise",
        Orientation::Clockwise => "clockwise",
    };
    outln!("divisor       {} ({orientation})", r.divisor);
    outln!("exponents     {}", r.exponents.join(", "));
    outln!("eigenvalues   {}", list(&r.eigenvalues));
    outln!("expected      {}", list(&r.expected));
    outln!("max deviation {:.3e}", r.max_deviation);
    outln!("det defect    {:.3e}", r.det_defect);
    outln!("steps {}, precision {} bits", r.steps, r.precision_bits);
    if let Some(w) = &r.resonance_warning {
        outln!("warning: {w}");
    }
}

fn cmd_monodromy(
    divisor: &str,
    numeric: &NumericArgs,
    radius: Option<f64>,
    clockwise: bool,
    json: bool,
) -> Result<ExitCode, Failure> {
    let labels: Vec<DivisorLabel> = if divisor == "all" {
        DivisorLabel::ALL.to_vec()
    } else {
        vec![DivisorLabel::parse(divisor).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown divisor {divisor}; expected y1, y2, y1m1, y2m1, line or all"
            ))
        })?]
    };
    let r = resolve(numeric, radius)?;
    let opts = MonodromyOptions {
        base: default_base(),
        radius: r.radius,
        tol: r.tol,
        precision_bits: r.precision_bits,
        orientation: if clockwise {
            Orientation::Clockwise
        } else {
            Orientation::Counterclockwise
        },
    };
    let sys = build_xi_hat(&ParameterDictionary);
    let results: Vec<MonodromyResult> =
        appell_f4::parallel::map(&labels, |d| monodromy(&sys, &r.params, *d, &opts))
            .into_iter()
            .collect::<Result<_, _>>()
            .map_err(Failure::Numeric)?;
    if json {
        let out = if results.len() == 1 {
            serde_json::to_string_pretty(&results[0])
        } else {
            serde_json::to_string_pretty(&results)
        };
        outln!("{}", out.expect("result serializes"));
    } else {
        outln!("parameters  {}", r.params);
        for res in &results {
            print_monodromy(res);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FlatnessReport {
    params: NumericParams,
    tol: f64,
    precision_bits: u32,
    defect: f64,
}

fn cmd_flatness(numeric: &NumericArgs, json: bool) -> Result<ExitCode, Failure> {
    let r = resolve(numeric, None)?;
    let sys = build_xi_hat(&ParameterDictionary);
    let defect = flatness_defect(&sys, &r.params, default_base(), r.tol, r.precision_bits)
        .map_err(Failure::Numeric)?;
    let rep = FlatnessReport {
        params: r.params,
        tol: r.tol,
        precision_bits: r.precision_bits,
        defect,
    };
    if json {
        outln!(
            "{}",
            serde_json::to_string_pretty(&rep).expect("report serializes")
        );
    } else {
        outln!(
            "flatness defect {:.3e} (tol {:.1e}, {} bits)",
            rep.defect,
            rep.tol,
            rep.precision_bits
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Verify {
            selector,
            json,
            sequential,
        } => cmd_verify(selector, *json, *sequential),
        Command::List => Ok(cmd_list()),
        Command::Emit { matrix, format } => {
            outln!("{}", emit(*matrix, *format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Monodromy {
            divisor,
            numeric,
            radius,
            clockwise,
            json,
        } => cmd_monodromy(divisor, numeric, *radius, *clockwise, *json),
        Command::Flatness { numeric, json } => cmd_flatness(numeric, *json),
        Command::Certificates => cmd_certificates(),
    };
    out.unwrap_or_else(Failure::report)
}
