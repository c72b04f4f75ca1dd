use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use powersquare::solvers::{DEFAULT_POWER_MAX_ITER, DEFAULT_SQUARED_MAX_ITER};
use powersquare::{
    random_matrix, top_k_eigenpairs_with, Algorithm, Complex64, DenseMatrix, EnsembleSpec, Scalar,
    SolverConfig, TopKOptions,
};
use powersquare_bench::suite::start_seed;
use powersquare_bench::{
    histogram, parse_sizes, read_csv, run_suite, summarize, write_csv, Alg, Mode, Scale,
    SuiteConfig, DESK_SCALE, FULL_SCALE,
};

/// Dominant eigenpairs by power iteration and by repeated squaring.
#[derive(Parser, Debug)]
#[command(name = "powersquare", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeSel {
    Real,
    Complex,
    Both,
}

impl ModeSel {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeSel::Real => vec![Mode::Real],
            ModeSel::Complex => vec![Mode::Complex],
            ModeSel::Both => vec![Mode::Real, Mode::Complex],
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one random self-adjoint matrix.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "real")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "squared")]
        alg: Alg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Defaults to 1000000 for power, 64 for squared.
        #[arg(long)]
        max_iter: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Top-k eigenpairs of one random self-adjoint matrix by deflation.
    Topk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "real")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "squared")]
        alg: Alg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Re-orthogonalize each vector against earlier ones before deflating.
        #[arg(long)]
        reorthogonalize: bool,
    },
    /// Time both solvers over seeded ensembles and emit one CSV row per solve.
    Bench {
        /// Comma-separated n:count pairs. Defaults to 50:100,100:50,200:10.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long, value_enum, default_value = "real")]
        mode: ModeSel,
        /// Algorithms to run; repeat or comma-separate.
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["power", "squared"])]
        alg: Vec<Alg>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Records CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Use 100:300,1000:5,3000:1,5000:1 (hours of runtime for power iteration).
        #[arg(long, conflicts_with = "sizes")]
        full_scale: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Largest n that gets a Jacobi reference eigenvalue.
        #[arg(long, default_value_t = 200)]
        oracle_cutoff: usize,
    },
    /// Iteration-count histogram from a records CSV.
    Hist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        alg: Alg,
        #[arg(long, value_enum, default_value = "linear")]
        scale: Scale,
        /// Histogram CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn solve<S: Scalar>(n: usize, alg: Alg, cfg: &SolverConfig, seed: u64) -> Result<()> {
    let a: DenseMatrix<S> = random_matrix(EnsembleSpec::new(n, seed))?;
    let est = Algorithm::from(alg).solve(&a, cfg)?;
    println!("eigenvalue: {:?}", est.value.re());
    if S::IS_COMPLEX {
        println!("eigenvalue_imag: {:?}", est.value.im());
    }
    println!("iterations: {}", est.iterations);
    println!("residual: {:?}", est.residual);
    println!("converged: {}", est.converged);
    Ok(())
}

fn topk<S: Scalar>(n: usize, k: usize, alg: Alg, seed: u64, opts: TopKOptions) -> Result<()> {
    let a: DenseMatrix<S> = random_matrix(EnsembleSpec::new(n, seed))?;
    let algorithm = Algorithm::from(alg);
    let cfg = algorithm.default_config(start_seed(seed));
    let spectrum = top_k_eigenpairs_with(&a, k, &cfg, algorithm, opts)?;
    for (i, p) in spectrum.pairs.iter().enumerate() {
        println!("lambda_{}: {:?}", i + 1, p.value);
    }
    println!("max_overlap: {:e}", spectrum.max_overlap());
    if let Some(f) = &spectrum.failure {
        match &f.error {
            Some(e) => println!("stopped: round {} failed: {e}", f.round),
            None => println!(
                "stopped: round {} did not converge in {} iterations",
                f.round, f.iterations
            ),
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            n,
            mode,
            alg,
            tol,
            max_iter,
            seed,
        } => {
            let max_iter = max_iter.unwrap_or(match alg {
                Alg::Power => DEFAULT_POWER_MAX_ITER,
                Alg::Squared => DEFAULT_SQUARED_MAX_ITER,
            });
            let cfg = SolverConfig {
                tol,
                max_iter,
                seed: start_seed(seed),
            };
            match mode {
                Mode::Real => solve::<f64>(n, alg, &cfg, seed),
                Mode::Complex => solve::<Complex64>(n, alg, &cfg, seed),
            }
        }
        Command::Topk {
            n,
            k,
            mode,
            alg,
            seed,
            reorthogonalize,
        } => {
            let opts = TopKOptions { reorthogonalize };
            match mode {
                Mode::Real => topk::<f64>(n, k, alg, seed, opts),
                Mode::Complex => topk::<Complex64>(n, k, alg, seed, opts),
            }
        }
        Command::Bench {
            sizes,
            mode,
            alg,
            tol,
            seed,
            out,
            summary,
            full_scale,
            workers,
            oracle_cutoff,
        } => {
            let sizes = match (sizes, full_scale) {
                (_, true) => FULL_SCALE.to_vec(),
                (Some(s), false) => parse_sizes(&s)?,
                (None, false) => DESK_SCALE.to_vec(),
            };
            if tol.is_nan() || tol <= 0.0 {
                bail!("tolerance must be positive");
            }
            let cfg = SuiteConfig {
                tol,
                workers,
                oracle_cutoff,
                ..SuiteConfig::default()
            };
            let mut records = Vec::new();
            for m in mode.modes() {
                records.extend(run_suite(&sizes, m, &alg, &cfg, seed)?);
            }
            write_csv(&records, output(&out)?)?;

            let s = summarize(&records, workers);
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            eprint!("{}", s.render());
            if let Some(path) = summary {
                let f = File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                serde_json::to_writer_pretty(BufWriter::new(f), &s)?;
            }
            Ok(())
        }
        Command::Hist {
            input,
            alg,
            scale,
            out,
        } => {
            let f =
                File::open(&input).with_context(|| format!("cannot open {}", input.display()))?;
            let records = read_csv(BufReader::new(f))?;
            let h = histogram(&records, alg, scale)?;
            h.write_csv(output(&out)?)?;
            Ok(())
        }
    }
}
