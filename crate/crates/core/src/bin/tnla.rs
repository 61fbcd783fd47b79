use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tnla::baseline::{dense_eig_sym, dense_svd, lu_solve};
use tnla::bd::{neville_bd, tn_determinant, tn_expand, tn_inverse_expand, tn_solve, BdMatrix};
use tnla::classic::bp_dual_solve;
use tnla::error::{Error, Result};
use tnla::experiment::run_experiments;
use tnla::generators::{
    cauchy_bd, hilbert_bd, pascal_bd, random_tn_bd, vandermonde_bd, NodeVector,
};
use tnla::io::{
    format_f64, parse_bd, parse_matrix, parse_vector, write_bd, write_matrix, write_vector,
    FloatFormat,
};
use tnla::matrix::DenseMatrix;
use tnla::oracle::{
    exact, exact_expand, exact_inverse, exact_solve, hp_spectrum, oracle_bits,
    rel_err_2, rel_err_componentwise, rel_err_scalar, rel_err_spectral, RationalMatrix,
};
use tnla::spectral::{cond2, tn_eigenvalues_sym, tn_singular_values, Spectrum, SpectrumKind};

/// Accurate linear algebra for totally nonnegative matrices given by their
/// bidiagonal decomposition.
#[derive(Parser)]
#[command(name = "tnla", version)]
struct Cli {
    /// Write results as exact hexadecimal floats.
    #[arg(long, global = true)]
    hex: bool,

    /// Write results to this file instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the decomposition of a structured matrix.
    Gen(GenArgs),
    /// Compute the decomposition of a dense totally nonnegative matrix.
    Bd {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Multiply out a decomposition.
    Expand {
        #[arg(long)]
        bd: PathBuf,
    },
    /// Solve A x = b (or A^T x = b).
    Solve(SolveArgs),
    /// Eigenvalues of a symmetric matrix.
    Eig(SpectrumArgs),
    /// Singular values.
    Svd(SpectrumArgs),
    /// Explicit inverse.
    Inv(SpectrumArgs),
    /// Determinant.
    Det(InputArgs),
    /// 2-norm condition number.
    Cond(InputArgs),
    /// Reproduce the accuracy experiments and print a CSV report.
    Experiment {
        /// vand7, hilb7, hilb10-eig, pascal10-svd, durer-inv, vand4-bd or all.
        selector: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Vandermonde,
    Cauchy,
    Hilbert,
    Pascal,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Order; may be omitted when nodes are given.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated nodes (default 1..n for Vandermonde, 0..n-1 for Cauchy).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nodes: Option<Vec<f64>>,
    /// Comma-separated second node set for Cauchy (default 1..n).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y_nodes: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    lo: f64,
    #[arg(long, default_value_t = 2.0)]
    hi: f64,
    /// Also write the decomposition here.
    #[arg(long)]
    out_bd: Option<PathBuf>,
    /// Also write the expanded matrix here.
    #[arg(long)]
    out_matrix: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Input decomposition.
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    bd: Option<PathBuf>,
    /// Input dense matrix; its decomposition is computed first.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bd,
    Bp,
    Baseline,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    rhs: PathBuf,
    #[arg(long)]
    transpose: bool,
    #[arg(long, value_enum, default_value = "bd")]
    method: Method,
    /// Interpolation nodes for `--method bp` (default: second column of the matrix).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nodes: Option<Vec<f64>>,
    #[arg(long)]
    compare_oracle: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "bd")]
    method: Method,
    #[arg(long)]
    compare_oracle: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A loaded input: the decomposition, and the dense matrix when one was given.
struct Input {
    bd: BdMatrix,
    dense: Option<DenseMatrix>,
}

impl Input {
    fn load(args: &InputArgs) -> Result<Self> {
        match (&args.bd, &args.matrix) {
            (Some(p), _) => Ok(Input {
                bd: parse_bd(&read(p)?)?,
                dense: None,
            }),
            (None, Some(p)) => {
                let a = parse_matrix(&read(p)?)?;
                Ok(Input {
                    bd: neville_bd(&a)?,
                    dense: Some(a),
                })
            }
            (None, None) => Err(Error::Usage("one of --bd or --matrix is required".into())),
        }
    }

    fn dense(&self) -> Result<DenseMatrix> {
        match &self.dense {
            Some(a) => Ok(a.clone()),
            None => tn_expand(&self.bd),
        }
    }

    /// An expanded symmetric grid is symmetric only up to rounding, so the
    /// lower triangle is mirrored, as a dense symmetric solver would read it.
    fn symmetric_dense(&self) -> Result<DenseMatrix> {
        let a = self.dense()?;
        if self.dense.is_some() || !self.bd.is_symmetric() {
            return Ok(a);
        }
        Ok(DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i.max(j), i.min(j))]))
    }

    /// The exact matrix the input stands for.
    fn exact(&self) -> Result<RationalMatrix> {
        match &self.dense {
            Some(a) => Ok(RationalMatrix::from_dense(a)),
            None => exact_expand(&RationalMatrix::from_bd(&self.bd)),
        }
    }
}

fn gen(args: &GenArgs, fmt: FloatFormat) -> Result<String> {
    let need_n = || args.n.ok_or_else(|| Error::Usage("--n is required for this kind".into()));
    let nodes = |v: &Option<Vec<f64>>, start: i64| -> Result<NodeVector> {
        match v {
            Some(v) => NodeVector::new(v.clone()),
            None => Ok(NodeVector::range(start, need_n()?)),
        }
    };
    let b = match args.kind {
        Kind::Vandermonde => vandermonde_bd(&nodes(&args.nodes, 1)?)?,
        Kind::Cauchy => {
            let x = nodes(&args.nodes, 0)?;
            let y = nodes(&args.y_nodes, 1)?;
            if x.len() != y.len() {
                return Err(Error::DimensionMismatch {
                    expected: format!("{} y-nodes", x.len()),
                    found: y.len().to_string(),
                });
            }
            cauchy_bd(&x, &y)?
        }
        Kind::Hilbert => hilbert_bd(need_n()?),
        Kind::Pascal => pascal_bd(need_n()?),
        Kind::Random => random_tn_bd(need_n()?, args.seed, args.lo, args.hi)?,
    };
    if let Some(n) = args.n {
        if n != b.rows() {
            return Err(Error::DimensionMismatch {
                expected: format!("{n} nodes"),
                found: b.rows().to_string(),
            });
        }
    }
    let text = write_bd(&b, fmt);
    if let Some(p) = &args.out_bd {
        write(p, &text)?;
    }
    if let Some(p) = &args.out_matrix {
        write(p, &write_matrix(&tn_expand(&b)?, fmt))?;
    }
    if args.out_bd.is_some() || args.out_matrix.is_some() {
        Ok(String::new())
    } else {
        Ok(text)
    }
}

fn solve(args: &SolveArgs, fmt: FloatFormat) -> Result<String> {
    let input = Input::load(&args.input)?;
    let rhs = parse_vector(&read(&args.rhs)?)?;
    let x = match args.method {
        Method::Bd => tn_solve(&input.bd, &rhs, args.transpose)?,
        Method::Bp => {
            if args.transpose {
                return Err(Error::Usage("--method bp solves the interpolation system only".into()));
            }
            let nodes = match &args.nodes {
                Some(v) => v.clone(),
                None => {
                    let a = input.dense()?;
                    (0..a.rows()).map(|i| if a.cols() > 1 { a[(i, 1)] } else { 0.0 }).collect()
                }
            };
            bp_dual_solve(&nodes, &rhs)?
        }
        Method::Baseline => {
            let a = input.dense()?;
            lu_solve(&if args.transpose { a.transpose() } else { a }, &rhs)?
        }
    };
    let mut out = write_vector(&x, fmt);
    if args.compare_oracle {
        let mut a = input.exact()?;
        if args.transpose {
            a = a.transpose();
        }
        let b: Vec<_> = rhs.iter().map(|&v| exact(v)).collect();
        let e = exact_solve(&a, &b)?;
        out.push_str(&format!("# rel_err_2 {}\n", sci(rel_err_2(&x, &e))));
        out.push_str(&format!("# rel_err_componentwise {}\n", sci(rel_err_componentwise(&x, &e))));
    }
    Ok(out)
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn spectrum(args: &SpectrumArgs, kind: SpectrumKind, fmt: FloatFormat) -> Result<String> {
    let input = Input::load(&args.input)?;
    let s: Spectrum = match (args.method, kind) {
        (Method::Bd, SpectrumKind::Eigen) => tn_eigenvalues_sym(&input.bd)?,
        (Method::Bd, SpectrumKind::Singular) => tn_singular_values(&input.bd)?,
        (Method::Baseline, SpectrumKind::Eigen) => dense_eig_sym(&input.symmetric_dense()?)?,
        (Method::Baseline, SpectrumKind::Singular) => dense_svd(&input.dense()?)?,
        (Method::Bp, _) => return Err(Error::Usage("--method bp applies to solve only".into())),
    };
    let mut out = write_vector(&s.values, fmt);
    if args.compare_oracle {
        let reference = hp_spectrum(&input.exact()?, kind, oracle_bits())?;
        out.push_str("# index rel_err\n");
        for (i, (v, r)) in s.values.iter().zip(&reference).enumerate() {
            out.push_str(&format!("# {} {}\n", i + 1, sci(rel_err_scalar(*v, r))));
        }
        if let (Some(v), Some(r)) = (s.values.last(), reference.last()) {
            out.push_str(&format!("# min rel_err {}\n", sci(rel_err_scalar(*v, r))));
        }
    }
    Ok(out)
}

fn inverse(args: &SpectrumArgs, fmt: FloatFormat) -> Result<String> {
    let input = Input::load(&args.input)?;
    let inv = match args.method {
        Method::Bd => tn_inverse_expand(&input.bd)?,
        Method::Baseline => {
            let a = input.dense()?;
            let n = a.rows();
            let mut inv = DenseMatrix::zeros(n, n);
            for j in 0..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                for (i, v) in lu_solve(&a, &e)?.into_iter().enumerate() {
                    inv[(i, j)] = v;
                }
            }
            inv
        }
        Method::Bp => return Err(Error::Usage("--method bp applies to solve only".into())),
    };
    let mut out = write_matrix(&inv, fmt);
    if args.compare_oracle {
        let e = exact_inverse(&input.exact()?)?;
        out.push_str(&format!("# rel_err_spectral {}\n", sci(rel_err_spectral(&inv, &e)?)));
    }
    Ok(out)
}

fn experiment(selector: &str, out: Option<&Path>) -> Result<String> {
    let report = run_experiments(selector)?;
    let csv = report.to_csv();
    if report.all_passed() {
        return Ok(csv);
    }
    // The report is still emitted when a gate fails.
    emit(out, &csv)?;
    for row in report.failed() {
        eprintln!("FAIL {}: {}", row.case_id, row.failures.join("; "));
    }
    let ids: Vec<_> = report.failed().map(|r| r.case_id.as_str()).collect();
    Err(Error::GateFailure(ids.join(", ")))
}

fn run(cli: &Cli) -> Result<String> {
    let fmt = if cli.hex { FloatFormat::Hex } else { FloatFormat::Decimal };
    match &cli.command {
        Command::Gen(a) => gen(a, fmt),
        Command::Bd { matrix } => Ok(write_bd(&neville_bd(&parse_matrix(&read(matrix)?)?)?, fmt)),
        Command::Expand { bd } => Ok(write_matrix(&tn_expand(&parse_bd(&read(bd)?)?)?, fmt)),
        Command::Solve(a) => solve(a, fmt),
        Command::Eig(a) => spectrum(a, SpectrumKind::Eigen, fmt),
        Command::Svd(a) => spectrum(a, SpectrumKind::Singular, fmt),
        Command::Inv(a) => inverse(a, fmt),
        Command::Det(a) => Ok(format!("{}\n", format_f64(tn_determinant(&Input::load(a)?.bd)?, fmt))),
        Command::Cond(a) => Ok(format!("{}\n", format_f64(cond2(&Input::load(a)?.bd)?, fmt))),
        Command::Experiment { selector } => experiment(selector, cli.out.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|text| emit(cli.out.as_deref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tnla: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
