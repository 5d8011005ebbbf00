//! Command-line interface: verify, classify, construct and tabulate
//! 4-dimensional metric Lie algebras given by structure constants.
//!
//! Exit codes: 0 success, 1 mathematical failure (defects above tolerance,
//! unmet constraints, degenerate plane, failed table cell), 2 I/O or schema
//! errors, 3 algebra not in adapted normal form.

mod format;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use format::{AlgebraFile, Metadata, ScalarsMode};
use lieclass_core::classify::classify;
use lieclass_core::families::{adapted_params, FamilyId, FamilyParams};
use lieclass_core::lie::{levi_civita, sectional_curvature};
use lieclass_core::linalg::Vec4;
use lieclass_core::{LieAlgebra4, Rational, Scalar};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "lieclass",
    version,
    about = "Riemannian and almost Hermitian invariants of 4-dimensional metric Lie algebras"
)]
struct Cli {
    /// Zero threshold for float-mode comparisons (exact mode ignores it).
    #[arg(
        long,
        global = true,
        env = "LIECLASS_TOLERANCE",
        default_value_t = 1e-9
    )]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify antisymmetry and the Jacobi identity of an algebra file.
    Check { path: PathBuf },

    /// Classify an algebra file: foliation flags, d_omega, the Nijenhuis
    /// tensor, the projection decomposition of nabla_omega, and matching
    /// families. The three classification routes are printed side by side.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },

    /// Print a family instance's bracket table; optionally write it as an
    /// algebra file.
    Family {
        /// Family identifier, g1 through g20.
        id: String,
        /// Comma-separated parameters, e.g. alpha=1,beta=0,w1=0,w2=0.
        #[arg(long)]
        params: String,
        /// Scalar mode of the emitted file.
        #[arg(long, value_enum, default_value_t = ScalarsArg::Rational)]
        scalars: ScalarsArg,
        /// Write the instance as an algebra file.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Reproduce the family classification table by seeded sampling; every
    /// cell runs the three classification routes and reports agreement.
    Table {
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Sectional curvature of the plane spanned by two basis labels.
    Curvature {
        path: PathBuf,
        label_a: String,
        label_b: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalarsArg {
    Rational,
    Float,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn math(message: String) -> Self {
        Failure { code: 1, message }
    }

    fn schema(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn not_adapted(message: String) -> Self {
        Failure { code: 3, message }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_file(path: &Path) -> Result<AlgebraFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?;
    AlgebraFile::parse(&text).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = cli.tolerance;
    match cli.command {
        Command::Check { path } => {
            let file = read_file(&path)?;
            match file.scalars {
                ScalarsMode::Rational => check::<Rational>(&file, tol),
                ScalarsMode::Float => check::<f64>(&file, tol),
            }
        }
        Command::Classify { path, format } => {
            let file = read_file(&path)?;
            match file.scalars {
                ScalarsMode::Rational => run_classify::<Rational>(&file, format, tol),
                ScalarsMode::Float => run_classify::<f64>(&file, format, tol),
            }
        }
        Command::Family {
            id,
            params,
            scalars,
            out,
        } => match scalars {
            ScalarsArg::Rational => {
                family::<Rational>(&id, &params, ScalarsMode::Rational, out, tol)
            }
            ScalarsArg::Float => family::<f64>(&id, &params, ScalarsMode::Float, out, tol),
        },
        Command::Table {
            samples,
            seed,
            format,
            out,
        } => table(samples, seed, format, out, tol),
        Command::Curvature {
            path,
            label_a,
            label_b,
        } => {
            let file = read_file(&path)?;
            match file.scalars {
                ScalarsMode::Rational => curvature::<Rational>(&file, &label_a, &label_b, tol),
                ScalarsMode::Float => curvature::<f64>(&file, &label_a, &label_b, tol),
            }
        }
    }
}

fn check<S: Scalar>(file: &AlgebraFile, tol: f64) -> Result<(), Failure> {
    let alg: LieAlgebra4<S> = file.to_algebra(tol).map_err(Failure::schema)?;
    let anti = alg.antisymmetry_defect();
    let jacobi = alg.jacobi_defect();
    println!("antisymmetry defect: {}", anti.render());
    println!("jacobi defect:       {}", jacobi.render());
    if anti.is_negligible(tol) && jacobi.is_negligible(tol) {
        println!("ok: structure constants define a Lie algebra");
        Ok(())
    } else {
        Err(Failure::math(format!(
            "defect above tolerance (antisymmetry {}, jacobi {})",
            anti.render(),
            jacobi.render()
        )))
    }
}

fn run_classify<S: Scalar>(file: &AlgebraFile, format: Format, tol: f64) -> Result<(), Failure> {
    let alg: LieAlgebra4<S> = file.to_algebra(tol).map_err(Failure::schema)?;
    let jacobi = alg.jacobi_defect();
    if !jacobi.is_negligible(tol) {
        return Err(Failure::math(format!(
            "jacobi defect {} above tolerance; not a Lie algebra",
            jacobi.render()
        )));
    }
    let c = classify(&alg, tol).map_err(|e| Failure::not_adapted(e.to_string()))?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report::classification_json(&c, &alg, tol))
                .expect("report serializes")
        ),
        Format::Csv => print!("{}", report::classification_csv(&c, &alg, tol)),
        Format::Md => print!("{}", report::classification_text(&c, &alg, tol)),
    }
    if c.routes_agree {
        Ok(())
    } else {
        Err(Failure::math("classification routes disagree".to_string()))
    }
}

fn parse_params<S: Scalar>(text: &str) -> Result<FamilyParams<S>, Failure> {
    let mut pairs: Vec<(String, S)> = Vec::new();
    for chunk in text.split(',') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (name, value) = chunk
            .split_once('=')
            .ok_or_else(|| Failure::schema(format!("expected name=value, found `{chunk}`")))?;
        let value = S::parse_literal(value.trim())
            .map_err(|e| Failure::schema(format!("parameter {name}: {e}")))?;
        pairs.push((name.trim().to_string(), value));
    }
    FamilyParams::from_pairs(pairs).map_err(|e| Failure::schema(e.to_string()))
}

fn family<S: Scalar>(
    id: &str,
    params: &str,
    scalars: ScalarsMode,
    out: Option<PathBuf>,
    tol: f64,
) -> Result<(), Failure> {
    let id = FamilyId::from_str(id).map_err(|e| Failure::schema(e.to_string()))?;
    let p: FamilyParams<S> = parse_params(params)?;
    let adapted = adapted_params(id, &p, tol).map_err(|e| Failure::math(e.to_string()))?;
    let alg = adapted.to_algebra();

    let rendered: Vec<String> = p
        .ordered(id)
        .into_iter()
        .map(|(name, v)| format!("{name}={}", v.render()))
        .collect();
    println!("{id}({}) [{}]", rendered.join(", "), id.structure_note());
    for line in report::bracket_lines(&alg, tol) {
        println!("{line}");
    }

    if let Some(path) = out {
        let metadata = Metadata {
            name: Some(format!("{id}({})", rendered.join(", "))),
            family: Some(id.to_string()),
            params: Some(
                p.ordered(id)
                    .into_iter()
                    .map(|(name, v)| (name.to_string(), v.render()))
                    .collect::<BTreeMap<String, String>>(),
            ),
        };
        let file = AlgebraFile::from_algebra(&alg, scalars, Some(metadata), tol);
        std::fs::write(&path, file.to_json() + "\n")
            .map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn table(
    samples: u64,
    seed: u64,
    format: Format,
    out: Option<PathBuf>,
    tol: f64,
) -> Result<(), Failure> {
    if samples == 0 {
        return Err(Failure::schema("--samples must be at least 1".to_string()));
    }
    let cells = report::run_table(samples, seed, tol);
    let rendered = match format {
        Format::Md => report::table_markdown(&cells),
        Format::Csv => report::table_csv(&cells),
        Format::Json => report::table_json(&cells),
    };
    match out {
        Some(path) => std::fs::write(&path, &rendered)
            .map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    if cells.iter().all(|c| c.pass()) {
        Ok(())
    } else {
        Err(Failure::math("one or more table cells failed".to_string()))
    }
}

fn curvature<S: Scalar>(
    file: &AlgebraFile,
    label_a: &str,
    label_b: &str,
    tol: f64,
) -> Result<(), Failure> {
    let alg: LieAlgebra4<S> = file.to_algebra(tol).map_err(Failure::schema)?;
    let index = |label: &str| {
        file.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Failure::schema(format!("unknown basis label `{label}`")))
    };
    let i = index(label_a)?;
    let j = index(label_b)?;
    let jacobi = alg.jacobi_defect();
    if !jacobi.is_negligible(tol) {
        // Curvature is still formally computable, so warn instead of
        // failing.
        eprintln!(
            "warning: jacobi defect {} above tolerance; not a Lie algebra",
            jacobi.render()
        );
    }
    let conn = levi_civita(&alg);
    let k = sectional_curvature(&conn, &alg, &Vec4::<S>::basis(i), &Vec4::basis(j), tol)
        .map_err(|e| Failure::math(e.to_string()))?;
    println!("K(span{{{label_a},{label_b}}}) = {}", k.render());
    Ok(())
}
