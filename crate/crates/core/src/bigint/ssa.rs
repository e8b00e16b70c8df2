use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::Arc;

use num_integer::Roots;

use super::BigNumber;
use crate::circulant::{cyclic_convolution, CirculantConfig, ProductStats};
use crate::fermat::{FermatElem, FermatRing, FermatRoots};
use crate::limbs;

/// Combined operand size (in 64-bit words) below which products go straight
/// to schoolbook multiplication.
pub const DEFAULT_THRESHOLD_WORDS: usize = 64;

// Below four words the ring chosen for a split is as large as the input and
// the recursion would not shrink.
const MIN_THRESHOLD_WORDS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SsaConfig {
    pub threshold_words: usize,
}

impl Default for SsaConfig {
    fn default() -> Self {
        SsaConfig {
            threshold_words: DEFAULT_THRESHOLD_WORDS,
        }
    }
}

/// Split parameters: `parts` pieces of `part_bits` bits, convolved modulo
/// `2^k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SsaParams {
    pub parts: usize,
    pub part_bits: u64,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsaPlan {
    Schoolbook,
    Split(SsaParams),
}

impl SsaParams {
    pub fn log_parts(&self) -> u32 {
        self.parts.trailing_zeros()
    }

    /// Checks that roots of order `parts` exist as powers of two and that
    /// every convolution coefficient is below the modulus.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.parts as u64;
        let two_k = 2 * self.k as u64;
        if !self.parts.is_power_of_two() || self.parts < 2 {
            return Err(format!(
                "part count {} is not a power of two >= 2",
                self.parts
            ));
        }
        if two_k < n || !two_k.is_multiple_of(n) {
            return Err(format!("{n} does not divide 2K = {two_k}"));
        }
        // N·(2^b)^2 = 2^(2b + log N) < 2^K + 1  <=>  K >= 2b + log N
        if (self.k as u64) < 2 * self.part_bits + self.log_parts() as u64 {
            return Err(format!(
                "coefficients up to 2^{} do not fit modulo 2^{} + 1",
                2 * self.part_bits + self.log_parts() as u64,
                self.k
            ));
        }
        Ok(())
    }
}

impl SsaConfig {
    fn threshold(&self) -> usize {
        self.threshold_words.max(MIN_THRESHOLD_WORDS)
    }

    /// Parameters for a product whose operands total `total_bits` bits.
    ///
    /// `N` is `√total_bits` rounded up to a power of two. Each part holds
    /// `ceil(total_bits / (N - 1))` bits, which keeps the part counts of the
    /// two operands summing to at most `N` so the length-`N` cyclic
    /// convolution never wraps. `K` is the smallest multiple of
    /// `max(N/2, 64)` with room for the largest coefficient.
    pub fn choose_params(&self, total_bits: u64) -> SsaPlan {
        if total_bits == 0 || (total_bits.div_ceil(64) as usize) < self.threshold() {
            return SsaPlan::Schoolbook;
        }
        let mut root = total_bits.sqrt();
        if root * root < total_bits {
            root += 1;
        }
        let parts = (root as usize).next_power_of_two().max(4);
        let part_bits = total_bits.div_ceil(parts as u64 - 1);
        let align = (parts as u64 / 2).max(64);
        let min_k = 2 * part_bits + parts.trailing_zeros() as u64;
        let k = min_k.div_ceil(align) * align;
        let params = SsaParams {
            parts,
            part_bits,
            k: u32::try_from(k).expect("Fermat exponent exceeds u32"),
        };
        debug_assert_eq!(params.validate(), Ok(()));
        SsaPlan::Split(params)
    }
}

pub fn choose_params(total_bits: u64) -> SsaPlan {
    SsaConfig::default().choose_params(total_bits)
}

/// Recursion statistics of one top-level product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SsaTrace {
    /// Deepest nesting of split multiplications; 0 means schoolbook only.
    pub max_depth: u32,
    pub splits: u64,
}

pub(crate) struct SsaRuntime {
    config: SsaConfig,
    max_depth: AtomicU32,
    splits: AtomicU64,
}

impl SsaRuntime {
    fn new(config: SsaConfig) -> Self {
        SsaRuntime {
            config,
            max_depth: AtomicU32::new(0),
            splits: AtomicU64::new(0),
        }
    }

    fn trace(&self) -> SsaTrace {
        SsaTrace {
            max_depth: self.max_depth.load(Ordering::Relaxed),
            splits: self.splits.load(Ordering::Relaxed),
        }
    }

    /// Product of two magnitudes at recursion depth `depth`.
    pub(crate) fn mul_limbs(self: &Arc<Self>, a: &[u64], b: &[u64], depth: u32) -> Vec<u64> {
        let (a, b) = (limbs::trimmed(a), limbs::trimmed(b));
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len().min(b.len()) < 2 {
            return limbs::mul_schoolbook(a, b);
        }
        match self
            .config
            .choose_params(limbs::bit_len(a) + limbs::bit_len(b))
        {
            SsaPlan::Schoolbook => limbs::mul_schoolbook(a, b),
            SsaPlan::Split(params) => self.split_mul(a, b, &params, depth + 1),
        }
    }

    fn split_mul(
        self: &Arc<Self>,
        a: &[u64],
        b: &[u64],
        params: &SsaParams,
        depth: u32,
    ) -> Vec<u64> {
        self.max_depth.fetch_max(depth, Ordering::Relaxed);
        self.splits.fetch_add(1, Ordering::Relaxed);

        let ring = FermatRing::with_runtime(params.k, Arc::clone(self), depth);
        let ctx = FermatRoots::new(ring, params.log_parts()).expect("validated parameters");
        let split = |x: &[u64]| -> Vec<FermatElem> {
            (0..params.parts as u64)
                .map(|i| {
                    let part = limbs::extract_bits(x, i * params.part_bits, params.part_bits);
                    FermatElem::from_limbs(params.k, &part)
                })
                .collect()
        };
        let (xa, ya) = (split(a), split(b));
        let mut stats = ProductStats::default();
        let coeffs = cyclic_convolution(&ctx, &xa, &ya, &CirculantConfig::default(), &mut stats)
            .expect("validated parameters");
        // Coefficients are below the modulus, so canonical residues are exact.
        let lifted: Vec<BigNumber> = coeffs
            .iter()
            .map(|c| BigNumber::from_limbs(c.limbs().to_vec()))
            .collect();
        carry_propagate(&lifted, params.part_bits).limbs
    }
}

/// `Σ coeffs[i] · 2^{i·part_bits}`.
pub fn carry_propagate(coeffs: &[BigNumber], part_bits: u64) -> BigNumber {
    let mut acc = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        limbs::add_shifted(&mut acc, c.limbs(), i as u64 * part_bits);
    }
    BigNumber::from_limbs(acc)
}

pub fn ssa_mul(x: &BigNumber, y: &BigNumber) -> BigNumber {
    ssa_mul_with(x, y, &SsaConfig::default())
}

pub fn ssa_mul_with(x: &BigNumber, y: &BigNumber, config: &SsaConfig) -> BigNumber {
    ssa_mul_traced(x, y, config).0
}

pub fn ssa_mul_traced(x: &BigNumber, y: &BigNumber, config: &SsaConfig) -> (BigNumber, SsaTrace) {
    let runtime = Arc::new(SsaRuntime::new(*config));
    let limbs = runtime.mul_limbs(x.limbs(), y.limbs(), 0);
    (BigNumber::from_limbs(limbs), runtime.trace())
}
