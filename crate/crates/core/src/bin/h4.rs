use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use h4::banks::BankT;
use h4::geometry::compose_half_turns;
use h4::isometry::{classify, reference_parabolic, sqrt2_hyperbolic};
use h4::json::*;
use h4::linker::{counterexample_pair, link_with, LinkOptions};
use h4::{Ctx, Error};

#[derive(Parser)]
#[command(name = "h4", about = "Half-turn factorization of isometries of hyperbolic 4-space", version)]
struct Cli {
    /// Relative rank and sign tolerance.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Sine tolerance for incidence and bank membership.
    #[arg(long, global = true)]
    membership_tol: Option<f64>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Class and fixed data of a matrix.
    Classify { matrix: PathBuf },
    /// H_P H_Q with the class predicted from the plane configuration.
    Compose {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Planes k1, k2 with H_k1 H_k = M = H_k H_k2.
    Factor {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        k: PathBuf,
    },
    /// Bank membership of a plane, with a witness.
    Bank {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        k: PathBuf,
    },
    /// Looks for a plane linking two isometries.
    Link {
        #[arg(long, required_unless_present = "pair")]
        a: Option<PathBuf>,
        #[arg(long, required_unless_present = "pair")]
        b: Option<PathBuf>,
        /// File holding {"a": ..., "b": ...}.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        pair: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Reference objects.
    Examples {
        #[arg(long, value_enum)]
        name: Example,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    P2,
    P3,
    P4,
    #[value(name = "sqrt2-hyperbolic")]
    Sqrt2Hyperbolic,
    #[value(name = "linked-pair")]
    LinkedPair,
}

enum Failure {
    Io(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read<T: DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit<S: Serialize>(v: &S) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Io(e.to_string()))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut ctx = Ctx::<f64>::default();
    if let Some(t) = cli.tau {
        ctx.tau = t;
    }
    if let Some(t) = cli.membership_tol {
        ctx.membership_tol = t;
    }
    let ctx = &ctx;
    match &cli.verb {
        Verb::Classify { matrix } => {
            let m = read::<MatrixInput>(matrix)?.isometry(ctx)?;
            emit(&SummaryJson::of(&classify(&m, ctx)?))
        }
        Verb::Compose { p, q } => {
            let p = read::<PlaneInput>(p)?.plane(ctx)?;
            let q = read::<PlaneInput>(q)?.plane(ctx)?;
            let (prod, predicted) = compose_half_turns(&p, &q, ctx)?;
            emit(&ComposeJson { product: MatrixJson::of(prod.matrix()).matrix, predicted: SummaryJson::of(&predicted) })
        }
        Verb::Factor { m, k } => {
            let m = read::<MatrixInput>(m)?.isometry(ctx)?;
            let k = read::<PlaneInput>(k)?.plane(ctx)?;
            let f = BankT::new(&m, ctx)?.factor_about(&k, ctx)?;
            emit(&FactorJson { k1: PlaneJson::of(&f.k1), k2: PlaneJson::of(&f.k2), residuals: [f.residuals.0, f.residuals.1] })
        }
        Verb::Bank { m, k } => {
            let m = read::<MatrixInput>(m)?.isometry(ctx)?;
            let k = read::<PlaneInput>(k)?.plane(ctx)?;
            emit(&BankJson::of(&BankT::new(&m, ctx)?, &k, ctx)?)
        }
        Verb::Link { a, b, pair, seed, samples } => {
            let (a, b) = match (pair, a, b) {
                (Some(p), _, _) => {
                    let pi = read::<PairInput>(p)?;
                    (pi.a, pi.b)
                }
                (None, Some(a), Some(b)) => (read::<MatrixInput>(a)?, read::<MatrixInput>(b)?),
                _ => return Err(Failure::Io("link needs --a and --b, or --pair".into())),
            };
            let (a, b) = (a.isometry(ctx)?, b.isometry(ctx)?);
            let opts = LinkOptions { seed: *seed, samples: *samples, ..LinkOptions::default() };
            emit(&LinkJson::of(&link_with(&a, &b, &opts, ctx)?))
        }
        Verb::Examples { name } => match name {
            Example::P2 | Example::P3 | Example::P4 => {
                let (n, params): (usize, Vec<f64>) = match name {
                    Example::P2 => (2, vec![1.0]),
                    Example::P3 => (3, vec![3.0, 4.0]),
                    _ => (4, vec![1.0, 2.0, 2.0]),
                };
                let r = reference_parabolic(n, &params)?;
                let rows: Vec<Vec<f64>> = r.p.row_iter().map(|row| row.iter().copied().collect()).collect();
                emit(&serde_json::json!({ "matrix": rows, "fixed": r.fixed }))
            }
            Example::Sqrt2Hyperbolic => emit(&MatrixJson::of(sqrt2_hyperbolic::<f64>().matrix())),
            Example::LinkedPair => {
                let (a, b, beta) = counterexample_pair(ctx)?;
                emit(&PairJson { a: MatrixJson::of(a.matrix()), b: MatrixJson::of(b.matrix()), beta: PlaneJson::of(&beta) })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match writeln!(std::io::stdout().lock(), "{out}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => ExitCode::from(1),
            _ => ExitCode::SUCCESS,
        },
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            println!("{}", serde_json::to_string(&ErrorJson::of(&e)).unwrap_or_default());
            ExitCode::from(2)
        }
    }
}
