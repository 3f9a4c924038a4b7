use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use cyclomat::cli::{
    self, ClaimSelection, MatrixArgs, MatrixFamily, RSelection, ReportFormat, SumArgs, SumKind,
    SweepConfig,
};
use cyclomat::report::Backend;
use cyclomat::theorems::VerifyOpts;
use cyclomat::{effective_precision, Error, FiniteField};

/// Character sums over finite fields and the determinant identities of the
/// associated cyclotomic matrices, verified exactly and numerically.
#[derive(Parser)]
#[command(name = "cyclomat", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic (an odd prime).
    #[arg(long)]
    p: u64,
    /// Extension degree: the field has q = p^n elements.
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Args)]
struct OutputArgs {
    /// Print machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Bit precision for the numeric backend (env CYCLOMAT_PRECISION
    /// overrides the built-in default of 192).
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a character sum.
    Sums {
        #[command(subcommand)]
        which: SumsCmd,
    },
    /// Build one of the cyclotomic matrices or compute its determinant.
    Matrix {
        #[command(subcommand)]
        which: MatrixCmd,
    },
    /// Run one claim's verifier against one field.
    Verify {
        /// Claim id (see `cyclomat claims`).
        claim: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Character exponents: "all" or a comma list.
        #[arg(long, default_value = "all")]
        r: String,
        /// Restrict the k-divisor enumeration (comma list).
        #[arg(long)]
        k: Option<String>,
        /// Restrict the character-order enumeration of lemma 2.1.
        #[arg(long)]
        m: Option<String>,
        /// First exponent for lemma 2.2 / lemma 3.1 single checks.
        #[arg(long)]
        a: Option<u64>,
        /// Second exponent for lemma 2.2 / lemma 3.1 single checks.
        #[arg(long)]
        b: Option<u64>,
        /// psi exponents for the Carlitz/Hasse-Davenport checks.
        #[arg(long)]
        psi: Option<String>,
        /// Value backend: exact, numeric or both.
        #[arg(long, default_value = "both")]
        backend: String,
        /// Write the report JSON here in addition to the text summary.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the bulk verification sweep described by a JSON config file.
    Sweep {
        /// Path to the sweep configuration.
        #[arg(long)]
        config: PathBuf,
    },
    /// List the known claim ids.
    Claims,
}

#[derive(Subcommand)]
enum SumsCmd {
    /// Gauss sum G_q(chi^r).
    Gauss {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Also compute the exact value in Q(zeta_lcm(p, q-1)).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Jacobi sum J_q(chi^a, chi^b).
    Jacobi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Greene binomial coefficient (chi^a over chi^b).
    Binomial {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gaussian hypergeometric value 2F1(chi^a, chi^b; chi^c | lambda).
    Hyp2f1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        /// Argument as an integer mapped into the prime subfield.
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct MatrixParams {
    #[command(flatten)]
    field: FieldArgs,
    /// Residue order k for the B/T families.
    #[arg(long, default_value_t = 2)]
    k: u64,
    /// Character exponent r.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    r: i64,
    /// psi exponent for the Carlitz family.
    #[arg(long, default_value_t = 1)]
    psi: i64,
    /// Family: B, T, M, N or carlitz.
    #[arg(long)]
    family: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Print the matrix entries.
    Build {
        #[command(flatten)]
        params: MatrixParams,
    },
    /// Print the determinant.
    Det {
        #[command(flatten)]
        params: MatrixParams,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> cyclomat::Result<ExitCode> {
    match cli.cmd {
        Cmd::Sums { which } => {
            let (kind, out, args) = match which {
                SumsCmd::Gauss { field, r, exact, out } => {
                    let args = sum_args(&field, &out);
                    (SumKind::Gauss, out, SumArgs { r, exact_gauss: exact, ..args })
                }
                SumsCmd::Jacobi { field, a, b, out } => {
                    let args = sum_args(&field, &out);
                    (SumKind::Jacobi, out, SumArgs { a, b, ..args })
                }
                SumsCmd::Binomial { field, a, b, out } => {
                    let args = sum_args(&field, &out);
                    (SumKind::Binomial, out, SumArgs { a, b, ..args })
                }
                SumsCmd::Hyp2f1 { field, a, b, c, lambda, out } => {
                    let args = sum_args(&field, &out);
                    (SumKind::Hyp2f1, out, SumArgs { a, b, c, lambda, ..args })
                }
            };
            let (text, json) = cli::cmd_sums(kind, &args)?;
            if out.json {
                println!("{}", serde_json::to_string_pretty(&json)?);
            } else {
                println!("{text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Matrix { which } => {
            let (build, params) = match which {
                MatrixCmd::Build { params } => (true, params),
                MatrixCmd::Det { params } => (false, params),
            };
            let family = MatrixFamily::parse(&params.family)?;
            let args = MatrixArgs {
                p: params.field.p,
                n: params.field.n,
                k: params.k,
                r: params.r,
                psi: params.psi,
                precision: effective_precision(params.out.precision),
            };
            let (text, json) = if build {
                cli::cmd_matrix_build(family, &args)?
            } else {
                cli::cmd_matrix_det(family, &args)?
            };
            if params.out.json {
                println!("{}", serde_json::to_string_pretty(&json)?);
            } else {
                println!("{text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { claim, field, r, k, m, a, b, psi, backend, output, out } => {
            let opts = VerifyOpts {
                precision: effective_precision(out.precision),
                tolerance: cyclomat::DEFAULT_TOLERANCE,
                backend: parse_backend(&backend)?,
            };
            let sel = ClaimSelection {
                r: RSelection::parse(&r)?,
                k: parse_list(k.as_deref())?,
                m: parse_list(m.as_deref())?,
                a,
                b,
                psi: parse_list(psi.as_deref())?,
            };
            let f = FiniteField::new(field.p, field.n)?;
            let reports = cli::run_claim(&claim, &f, &sel, &opts)?;
            let summary = cli::summarize(&reports);
            let sweep = cli::SweepReport {
                version: env!("CARGO_PKG_VERSION").to_string(),
                config: single_claim_config(&claim, &f, &opts),
                reports,
                summary,
            };
            if let Some(path) = output {
                std::fs::write(&path, cli::render_report(&sweep, ReportFormat::Json)?)?;
            }
            let format = if out.json { ReportFormat::Json } else { ReportFormat::Text };
            print!("{}", cli::render_report(&sweep, format)?);
            Ok(if summary.fail > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Sweep { config } => {
            let raw = std::fs::read_to_string(&config)?;
            let parsed: SweepConfig = serde_json::from_str(&raw)
                .map_err(|e| Error::Config(format!("config parse: {e}")))?;
            parsed.validate()?;
            let report = cli::run_sweep(&parsed)?;
            let rendered = cli::render_report(&report, parsed.format)?;
            match &parsed.output {
                Some(path) => {
                    std::fs::write(path, &rendered)?;
                    println!(
                        "wrote {} reports to {} ({} pass, {} fail, {} skipped)",
                        report.reports.len(),
                        path.display(),
                        report.summary.pass,
                        report.summary.fail,
                        report.summary.skipped
                    );
                }
                None => print!("{rendered}"),
            }
            Ok(if report.summary.fail > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Cmd::Claims => {
            for c in cli::ALL_CLAIMS {
                println!("{c}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn sum_args(field: &FieldArgs, out: &OutputArgs) -> SumArgs {
    SumArgs {
        p: field.p,
        n: field.n,
        a: 0,
        b: 0,
        c: 0,
        r: 0,
        lambda: 0,
        precision: effective_precision(out.precision),
        exact_gauss: false,
    }
}

fn parse_backend(s: &str) -> cyclomat::Result<Backend> {
    match s.to_ascii_lowercase().as_str() {
        "exact" => Ok(Backend::Exact),
        "numeric" => Ok(Backend::Numeric),
        "both" => Ok(Backend::Both),
        other => Err(Error::Config(format!("unknown backend '{other}'"))),
    }
}

fn parse_list<T: std::str::FromStr>(s: Option<&str>) -> cyclomat::Result<Option<Vec<T>>>
where
    T::Err: std::fmt::Display,
{
    match s {
        None => Ok(None),
        Some(s) => s
            .split(',')
            .map(|t| t.trim().parse::<T>().map_err(|e| Error::Config(format!("bad list: {e}"))))
            .collect::<cyclomat::Result<Vec<T>>>()
            .map(Some),
    }
}

fn single_claim_config(claim: &str, field: &FiniteField, opts: &VerifyOpts) -> SweepConfig {
    SweepConfig {
        q_min: field.q(),
        q_max: field.q(),
        q_mod: None,
        r: RSelection::default(),
        claims: vec![claim.to_string()],
        backend: opts.backend,
        precision_bits: opts.precision,
        parallelism: 0,
        format: ReportFormat::Json,
        output: None,
    }
}
