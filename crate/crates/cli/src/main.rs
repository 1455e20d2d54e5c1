use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lie_split::backends::{
    collapse_middle, expm, norm2, sc_validate, Matrix, Precision, Real, ScAlgebra,
};
use lie_split::convergence::{converges_with_window, crude_r_sequence, DEFAULT_TAIL_WINDOW};
use lie_split::engine::{psi_std, psi_sym, sym_terms};
use lie_split::experiments::verify::{all_passed, run_verify, VerifyMode};
use lie_split::experiments::{
    boundary_csv, fig2_csv, fig3_csv, run_boundary, run_examples, run_fig2, run_fig3, write_output,
    ExperimentConfig, ExperimentId,
};
use lie_split::lie_symbolic::{expand_assoc, FreeLie, LieCombo};
use twofloat::TwoFloat;

#[derive(Parser)]
#[command(
    name = "lie-split",
    version,
    about = "Symmetric Zassenhaus factorization toolkit"
)]
struct Cli {
    /// Seed for the random matrix pairs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scalar precision for matrix computations: double or extended.
    #[arg(long, global = true)]
    precision: Option<Precision>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with experiment parameters; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric exponents over the free Lie algebra on X, Y.
    Terms {
        #[arg(long, default_value_t = 9)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the number of collected commutators per degree instead.
        #[arg(long)]
        check_counts: bool,
    },
    /// Expand a Lie polynomial into words: the symmetric exponent of the
    /// given degree, or a JSON term list read from a file (`-` for stdin).
    Expand {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        degree: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Truncated product for two matrices given as CSV files.
    EvalMatrix {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Use the standard (non-symmetric) product.
        #[arg(long)]
        standard: bool,
    },
    /// Convergence test at a point, domain boundary scan, or the crude
    /// constants.
    Convergence {
        #[arg(long, num_args = 2, value_names = ["X_NORM", "Y_NORM"], allow_negative_numbers = true)]
        point: Option<Vec<f64>>,
        /// Grid `x0:x1:steps`.
        #[arg(long, conflicts_with = "point")]
        scan: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        mirror: bool,
        #[arg(long, conflicts_with_all = ["point", "scan"])]
        crude: bool,
    },
    /// Validate a structure-constant file and optionally compute exponents
    /// over it; `--examples` checks the bundled algebras.
    Structconst {
        path: Option<PathBuf>,
        #[arg(long, requires = "second")]
        first: Option<String>,
        #[arg(long, requires = "first")]
        second: Option<String>,
        #[arg(long, default_value_t = 7)]
        degree: usize,
        #[arg(long, conflicts_with = "path")]
        examples: bool,
    },
    /// Errors of both products for random matrix pairs.
    Fig2 {
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        dimension: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        norms: Option<Vec<f64>>,
    },
    /// Errors over λ for the commuting-exponential pair.
    Fig3 {
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Check the reference values; exits with 2 if any check fails.
    Verify {
        /// Skip the slow checks.
        #[arg(long)]
        quick: bool,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 1,
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => Ok(write_output(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base_config(cli: &Cli, id: ExperimentId) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.experiment = id;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    Ok(cfg)
}

fn parse_scan(s: &str) -> Result<(f64, f64, usize), Failure> {
    let bad = || invalid(format!("scan must look like x0:x1:steps, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        a.parse().map_err(|_| bad())?,
        b.parse().map_err(|_| bad())?,
        n.parse().map_err(|_| bad())?,
    ))
}

fn terms(cli: &Cli, max_degree: usize, format: Format, check_counts: bool) -> Outcome {
    let t = sym_terms(&FreeLie, &LieCombo::x(), &LieCombo::y(), max_degree)?;
    let text = if check_counts {
        t.iter()
            .map(|(k, c)| format!("C{k} {}\n", c.len()))
            .collect()
    } else {
        match format {
            Format::Text => t.iter().map(|(k, c)| format!("C{k} = {c}\n")).collect(),
            Format::Json => {
                let terms: Vec<_> = t
                    .iter()
                    .map(|(k, c)| json!({"degree": k, "terms": c.to_json()}))
                    .collect();
                let doc = json!({"max_degree": max_degree, "terms": terms});
                format!("{}\n", serde_json::to_string_pretty(&doc)?)
            }
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn expand(cli: &Cli, degree: Option<usize>, input: Option<&Path>) -> Outcome {
    let combo = match (degree, input) {
        (Some(k), _) => {
            let t = sym_terms(&FreeLie, &LieCombo::x(), &LieCombo::y(), k.max(3))?;
            t.get(k).cloned().unwrap_or_else(LieCombo::zero)
        }
        (None, Some(path)) => {
            let mut text = String::new();
            if path == Path::new("-") {
                std::io::stdin().read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            }
            let v: serde_json::Value = serde_json::from_str(&text)?;
            LieCombo::from_json(&v).ok_or_else(|| invalid("input is not a JSON term list"))?
        }
        (None, None) => return Err(invalid("give --degree or --input")),
    };
    emit(cli.out.as_deref(), &format!("{}\n", expand_assoc(&combo)))
}

fn eval_typed<S: Real>(
    x: &Matrix<f64>,
    y: &Matrix<f64>,
    degree: usize,
    lambda: f64,
    standard: bool,
) -> Result<(Matrix<f64>, f64), Failure> {
    let (x, y) = (Matrix::<S>::from_f64(x), Matrix::<S>::from_f64(y));
    let l = S::from_f64(lambda);
    let p = if standard {
        psi_std(&x, &y, l, degree)?
    } else {
        psi_sym(&x, &y, l, degree)?
    };
    let exact = expm(&x.add(&y).scale(l))?;
    let err = norm2(&p.sub(&exact).to_f64());
    Ok((p.to_f64(), err))
}

fn eval_matrix(
    cli: &Cli,
    x: &Path,
    y: &Path,
    degree: usize,
    lambda: f64,
    standard: bool,
) -> Outcome {
    let x = Matrix::load_csv(x)?;
    let y = Matrix::load_csv(y)?;
    let (p, err) = match cli.precision.unwrap_or_default() {
        Precision::Double => eval_typed::<f64>(&x, &y, degree, lambda, standard)?,
        Precision::Extended => eval_typed::<TwoFloat>(&x, &y, degree, lambda, standard)?,
    };
    eprintln!("error={err:e}");
    emit(cli.out.as_deref(), &p.to_csv())
}

fn convergence(
    cli: &Cli,
    point: Option<&[f64]>,
    scan: Option<&str>,
    depth: Option<usize>,
    mirror: bool,
    crude: bool,
) -> Outcome {
    if crude {
        let c = crude_r_sequence(depth.unwrap_or(lie_split::experiments::CRUDE_DEPTH))?;
        println!("r_limit={} threshold={}", c.r_limit, c.threshold);
        return Ok(());
    }
    if let Some(&[x, y]) = point {
        let v = converges_with_window(x, y, depth.unwrap_or(401), DEFAULT_TAIL_WINDOW)?;
        println!("converges={} ratio_tail={}", v.converges, v.ratio_tail);
        return Ok(());
    }
    let mut cfg = base_config(cli, ExperimentId::Boundary)?;
    if let Some(s) = scan {
        cfg.scan = parse_scan(s)?;
    }
    if let Some(d) = depth {
        cfg.depth = d;
    }
    cfg.mirror |= mirror;
    let report = run_boundary(&cfg)?;
    emit(cfg.out.as_deref(), &boundary_csv(&cfg, &report))
}

fn structconst(
    cli: &Cli,
    path: Option<&Path>,
    pair: Option<(&str, &str)>,
    degree: usize,
    examples: bool,
) -> Outcome {
    if examples {
        let r = run_examples()?;
        print!("{r}");
        return if r.all_passed() {
            Ok(())
        } else {
            Err(invalid("bundled examples do not match"))
        };
    }
    let path = path.ok_or_else(|| invalid("give a structure-constant file or --examples"))?;
    let l = ScAlgebra::load(path)?;
    sc_validate(&l)?;
    let Some((first, second)) = pair else {
        println!("ok: {} basis elements", l.dim());
        return Ok(());
    };
    for label in [first, second] {
        if l.index_of(label).is_none() {
            return Err(invalid(format!("basis has no element {label}")));
        }
    }
    let t = sym_terms(&l, &l.element(first), &l.element(second), degree)?;
    let mut text = String::new();
    for (k, c) in t.iter() {
        let parts: Vec<String> = c
            .support()
            .into_iter()
            .map(|i| format!("({}) {}", c.coeff(i), l.labels()[i]))
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        text.push_str(&format!("C{k} = {body}\n"));
    }
    if let Some(m) = collapse_middle(&l, &t) {
        text.push_str(&format!("middle = ({}) {}\n", m.doubled_sum, m.label));
    }
    emit(cli.out.as_deref(), &text)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Terms {
            max_degree,
            format,
            check_counts,
        } => terms(cli, *max_degree, *format, *check_counts),
        Command::Expand { degree, input } => expand(cli, *degree, input.as_deref()),
        Command::EvalMatrix {
            x,
            y,
            degree,
            lambda,
            standard,
        } => eval_matrix(cli, x, y, *degree, *lambda, *standard),
        Command::Convergence {
            point,
            scan,
            depth,
            mirror,
            crude,
        } => convergence(
            cli,
            point.as_deref(),
            scan.as_deref(),
            *depth,
            *mirror,
            *crude,
        ),
        Command::Structconst {
            path,
            first,
            second,
            degree,
            examples,
        } => {
            let pair = first.as_deref().zip(second.as_deref());
            structconst(cli, path.as_deref(), pair, *degree, *examples)
        }
        Command::Fig2 {
            trials,
            max_degree,
            dimension,
            norms,
        } => {
            let mut cfg = base_config(cli, ExperimentId::Fig2)?;
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.max_degree = max_degree.unwrap_or(cfg.max_degree);
            cfg.dimension = dimension.unwrap_or(cfg.dimension);
            if let Some(n) = norms {
                cfg.norms = n.clone();
            }
            let rows = run_fig2(&cfg)?;
            emit(cfg.out.as_deref(), &fig2_csv(&cfg, &rows))
        }
        Command::Fig3 {
            lambdas,
            n_list,
            alpha,
        } => {
            let mut cfg = base_config(cli, ExperimentId::Fig3)?;
            if let Some(l) = lambdas {
                cfg.lambdas = l.clone();
            }
            if let Some(n) = n_list {
                cfg.n_list = n.clone();
            }
            if let Some(a) = alpha {
                cfg.alpha = a.clone();
            }
            let rows = run_fig3(&cfg)?;
            emit(cfg.out.as_deref(), &fig3_csv(&cfg, &rows))
        }
        Command::Verify { quick } => {
            let mode = if *quick {
                VerifyMode::Quick
            } else {
                VerifyMode::Full
            };
            let outcomes = run_verify(mode);
            for o in &outcomes {
                println!("{o}");
            }
            if all_passed(&outcomes) {
                Ok(())
            } else {
                Err(Failure {
                    code: 2,
                    msg: "some checks failed".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
