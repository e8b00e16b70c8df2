use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use circulant::bench::{run_benchmark, write_csv, BenchConfig};
use circulant::bigint::{ssa_mul, BigNumber};
use circulant::poly::{poly_mul_with, Backend, Engine, PolyMulOptions};
use circulant::text::{format_polynomial, parse_polynomials};
use circulant::CirculantConfig;

#[derive(Parser)]
#[command(
    name = "circulant",
    version,
    about = "FFT-free polynomial and integer multiplication"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two polynomials given one per line, low-order coefficient first.
    Polymul {
        #[arg(long, value_enum, default_value_t = EngineArg::Circulant)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = RingArg::Auto)]
        ring: RingArg,
        /// Allow Mersenne results modulo p instead of failing on overflow.
        #[arg(long)]
        no_exact_check: bool,
        /// Read input from FILE instead of stdin.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Multiply two non-negative decimal integers.
    Bigmul { x: String, y: String },
    /// Time classic and circulant polynomial multiplication.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64, 128, 256, 512])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        batch: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write CSV here instead of stdout.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Circulant sizes at or below this use the quadratic product.
        #[arg(long, default_value_t = 1)]
        threshold: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Circulant,
    Classic,
    Schoolbook,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Circulant => Engine::Circulant,
            EngineArg::Classic => Engine::Classic,
            EngineArg::Schoolbook => Engine::Schoolbook,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Auto,
    Mersenne,
    Fermat,
}

impl From<RingArg> for Backend {
    fn from(r: RingArg) -> Backend {
        match r {
            RingArg::Auto => Backend::Auto,
            RingArg::Mersenne => Backend::Mersenne,
            RingArg::Fermat => Backend::Fermat,
        }
    }
}

fn polymul(opts: PolyMulOptions, input: Option<PathBuf>) -> Result<String> {
    let text = match &input {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    let polys = parse_polynomials(&text)?;
    let [p, q] = polys.as_slice() else {
        bail!(
            "expected exactly two polynomial lines, found {}",
            polys.len()
        );
    };
    Ok(format_polynomial(&poly_mul_with(p, q, &opts)?))
}

fn bigmul(x: &str, y: &str) -> Result<String> {
    let x: BigNumber = x.parse().context("first operand")?;
    let y: BigNumber = y.parse().context("second operand")?;
    Ok(ssa_mul(&x, &y).to_decimal())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Polymul {
            engine,
            ring,
            no_exact_check,
            input,
        } => {
            let opts = PolyMulOptions {
                engine: engine.into(),
                backend: ring.into(),
                exact_check: !no_exact_check,
                ..Default::default()
            };
            println!("{}", polymul(opts, input)?);
        }
        Command::Bigmul { x, y } => println!("{}", bigmul(&x, &y)?),
        Command::Bench {
            sizes,
            batch,
            reps,
            seed,
            csv,
            threshold,
        } => {
            if threshold == 0 {
                bail!("--threshold must be at least 1");
            }
            let config = BenchConfig {
                sizes,
                batch,
                reps,
                seed,
                circulant: CirculantConfig {
                    base_threshold: threshold,
                    ..Default::default()
                },
            };
            let rows = run_benchmark(&config)?;
            match csv {
                Some(path) => {
                    let file = File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    let mut out = BufWriter::new(file);
                    write_csv(&rows, &mut out)?;
                    out.flush()?;
                }
                None => write_csv(&rows, io::stdout().lock())?,
            }
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
