//! Classic-versus-circulant polynomial multiplication timings.
//!
//! For each length `n`, `batch` random pairs of length-`n` polynomials with
//! coefficients uniform in `[0, p)` are multiplied by both engines over one
//! shared Mersenne root table. Both pad to `2n` the same way. Each engine's
//! time is the smallest batch time over `reps` runs.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::{cyclic_convolution, CirculantConfig, ProductStats};
use crate::error::{Error, Result};
use crate::fft::{cyclic_convolve, TransformPlan};
use crate::mersenne::{build_root_context, Fp, Fp2, MersenneRoots, P};
use crate::poly::Engine;

pub const CSV_HEADER: &str =
    "n,classic_ms,circulant_ms,ratio,classic_mults,circulant_mults,mult_ratio";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub batch: usize,
    pub reps: usize,
    pub seed: u64,
    pub circulant: CirculantConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: (3..=9).map(|k| 1 << k).collect(),
            batch: 1000,
            reps: 5,
            seed: 0,
            circulant: CirculantConfig::default(),
        }
    }
}

/// One engine at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub engine: Engine,
    /// Minimum over repetitions of the time for the whole batch.
    pub wall_time: Duration,
    /// General ring multiplications for a single product.
    pub ring_mults: u64,
    pub repetitions: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub classic: BenchRecord,
    pub circulant: BenchRecord,
}

impl BenchRow {
    pub fn n(&self) -> usize {
        self.classic.n
    }

    /// Classic time over circulant time.
    pub fn ratio(&self) -> f64 {
        self.classic.wall_time.as_secs_f64() / self.circulant.wall_time.as_secs_f64().max(1e-12)
    }

    pub fn mult_ratio(&self) -> f64 {
        self.classic.ring_mults as f64 / self.circulant.ring_mults as f64
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Vec<Fp2> {
    (0..n)
        .map(|_| Fp2::from_fp(Fp::new(rng.gen_range(0..P as u64))))
        .collect()
}

fn padded(x: &[Fp2], len: usize) -> Vec<Fp2> {
    let mut v = Vec::with_capacity(len);
    v.extend_from_slice(x);
    v.resize(len, Fp2::ZERO);
    v
}

fn time_batch(reps: usize, mut run: impl FnMut()) -> Duration {
    (0..reps)
        .map(|_| {
            let start = Instant::now();
            run();
            start.elapsed()
        })
        .min()
        .unwrap_or_default()
}

pub fn bench_size(n: usize, config: &BenchConfig) -> Result<BenchRow> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "benchmark sizes must be powers of two, got {n}"
        )));
    }
    let len = 2 * n;
    let ctx: MersenneRoots = build_root_context(len.trailing_zeros())?;
    let plan = TransformPlan::new(&ctx, len)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (n as u64).rotate_left(32));
    let pairs: Vec<(Vec<Fp2>, Vec<Fp2>)> = (0..config.batch.max(1))
        .map(|_| (random_poly(&mut rng, n), random_poly(&mut rng, n)))
        .collect();

    let classic = |a: &[Fp2], b: &[Fp2], stats: &mut ProductStats| {
        cyclic_convolve(&padded(a, len), &padded(b, len), &plan, stats)
    };
    let circulant = |a: &[Fp2], b: &[Fp2], stats: &mut ProductStats| {
        cyclic_convolution(
            &ctx,
            &padded(a, len),
            &padded(b, len),
            &config.circulant,
            stats,
        )
    };

    let (a0, b0) = &pairs[0];
    let (mut s_classic, mut s_circ) = (ProductStats::default(), ProductStats::default());
    let check = classic(a0, b0, &mut s_classic)?;
    if check != circulant(a0, b0, &mut s_circ)? {
        return Err(Error::Dimension(format!("engines disagree at n = {n}")));
    }

    let reps = config.reps.max(1);
    let t_classic = time_batch(reps, || {
        for (a, b) in &pairs {
            black_box(classic(a, b, &mut ProductStats::default()).unwrap());
        }
    });
    let t_circ = time_batch(reps, || {
        for (a, b) in &pairs {
            black_box(circulant(a, b, &mut ProductStats::default()).unwrap());
        }
    });
    let record = |engine, wall_time, stats: ProductStats| BenchRecord {
        n,
        engine,
        wall_time,
        ring_mults: stats.ring_mults,
        repetitions: reps,
    };
    Ok(BenchRow {
        classic: record(Engine::Classic, t_classic, s_classic),
        circulant: record(Engine::Circulant, t_circ, s_circ),
    })
}

pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    config
        .sizes
        .iter()
        .map(|&n| bench_size(n, config))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.3},{:.3},{:.3},{},{},{:.4}",
            r.n(),
            r.classic.wall_time.as_secs_f64() * 1e3,
            r.circulant.wall_time.as_secs_f64() * 1e3,
            r.ratio(),
            r.classic.ring_mults,
            r.circulant.ring_mults,
            r.mult_ratio(),
        )?;
    }
    Ok(())
}
