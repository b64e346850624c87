use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jacobian_profiles::catalog::{cross_check_p3, full_report, p3_catalog};
use jacobian_profiles::exact_arith::{format_rational, parse_rational};
use jacobian_profiles::sweep::{kernel_structure, verify_instance};
use jacobian_profiles::{
    build_curve, conv_by_j_matrix, kernel_basis, solve_b, validate_instance, BranchProfile, Error,
    MultiplicityProfile, RealizabilityVerdict, Result,
};

#[derive(Parser)]
#[command(
    name = "jacprof",
    version,
    about = "Jacobian compatibility of prime-order automorphism profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every admissible profile for (p, g).
    Classify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        g: i64,
        /// Build a curve for each compatible profile and check the Lefschetz identity.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List all branch profiles b producing the multiplicity profile a.
    SolveB {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        g: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Build the superelliptic model for a branch profile.
    BuildCurve {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        g: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        /// Distinct branch points (rationals such as 3 or -1/2).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Option<Vec<String>>,
        /// Print the equation instead of JSON.
        #[arg(long)]
        equation: bool,
    },
    /// Run the full invariant suite for (p, g).
    Verify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        g: i64,
    },
    /// Closed-form p = 3 catalog for g = 1..=g-max, cross-checked against the solver.
    Catalog {
        #[arg(long, default_value_t = 3)]
        p: i64,
        #[arg(long)]
        g_max: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Kernel of convolution by j on functions on (Z/pZ)^*.
    Kernel {
        #[arg(long)]
        p: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Classify {
            p,
            g,
            verify,
            format,
            out,
        } => {
            let instance = validate_instance(p, g)?;
            let report = full_report(&instance, verify)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Table => report.to_table(),
            };
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            if !report.all_verified_hold() {
                return Err(Error::Internal("Lefschetz identity failed".into()));
            }
        }
        Command::SolveB { p, g, a } => {
            let instance = validate_instance(p, g)?;
            let a = MultiplicityProfile::new(instance, a)?;
            let witnesses = solve_b(&a)?;
            println!("{}", to_json(&RealizabilityVerdict::new(a, witnesses)?));
        }
        Command::BuildCurve {
            p,
            g,
            b,
            alphas,
            equation,
        } => {
            let instance = validate_instance(p, g)?;
            let b = BranchProfile::new(instance, b)?;
            let alphas = alphas
                .map(|xs| {
                    xs.iter()
                        .map(|x| parse_rational(x))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            let curve = build_curve(&b, alphas.as_deref())?;
            if equation {
                println!("{}", curve.equation());
            } else {
                println!("{}", to_json(&curve));
            }
        }
        Command::Verify { p, g } => {
            let instance = validate_instance(p, g)?;
            let summary = verify_instance(&instance)?;
            println!("{}", to_json(&summary));
            if !summary.passed() {
                return Err(Error::Internal(format!(
                    "{} invariant check(s) failed",
                    summary.failures.len()
                )));
            }
        }
        Command::Catalog { p, g_max, format } => {
            if p != 3 {
                return Err(Error::InvalidInput(format!(
                    "a closed-form catalog exists only for p = 3, got {p}"
                )));
            }
            if g_max < 1 {
                return Err(Error::InvalidInput("--g-max must be at least 1".into()));
            }
            let rows: Vec<_> = (1..=g_max).flat_map(p3_catalog).collect();
            match format {
                Format::Json => println!("{}", to_json(&rows)),
                Format::Csv => {
                    println!("g,k,d,b_1,b_2,a_1,a_2");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{}",
                            r.g, r.k, r.d, r.b.0, r.b.1, r.a.0, r.a.1
                        );
                    }
                }
                Format::Table => {
                    for r in &rows {
                        println!(
                            "g={:<3} k={:<3} d={:<3} b=({},{}) a=({},{})",
                            r.g, r.k, r.d, r.b.0, r.b.1, r.a.0, r.a.1
                        );
                    }
                }
            }
            if !cross_check_p3(g_max)? {
                return Err(Error::Internal(
                    "closed-form catalog disagrees with the solver".into(),
                ));
            }
            eprintln!("cross-check against solver: ok for g = 1..={g_max}");
        }
        Command::Kernel { p } => {
            let p = u32::try_from(p).map_err(|_| Error::InvalidPrime(p))?;
            let m = conv_by_j_matrix(p)?;
            let basis = kernel_basis(&m);
            let expected = (p as usize - 3) / 2;
            println!(
                "p = {p}: kernel dimension {} (expected {expected})",
                basis.len()
            );
            for v in &basis {
                let cells: Vec<_> = v.iter().map(format_rational).collect();
                println!("  [{}]", cells.join(", "));
            }
            if kernel_structure(p)? != Some(expected) {
                return Err(Error::Internal(
                    "kernel is not an even mean-zero space of dimension (p-3)/2".into(),
                ));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
