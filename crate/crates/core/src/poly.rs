//! Exact integer polynomial multiplication.
//!
//! Both inputs are zero-padded to the smallest power of two `L` that holds
//! the product, so the length-`L` cyclic convolution equals the linear one.
//! The convolution runs in one of two rings:
//!
//! * `F_{p²}` (only the `F_p` component is used) when every output
//!   coefficient is guaranteed to fit the field;
//! * `Z/(2^K + 1)` with `K` chosen from the coefficient bound, which is
//!   always exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::circulant::{cyclic_convolution, CirculantConfig, ProductStats};
use crate::error::{Error, Result};
use crate::fermat::{FermatElem, FermatRing, FermatRoots};
use crate::fft::{cyclic_convolve, TransformPlan};
use crate::mersenne::{build_root_context, Fp, Fp2, P};
use crate::ring::{ElemOf, Ring, RootContext};

/// Coefficients low-order first. Trailing zeros are kept; the empty sequence
/// is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Number of stored coefficients, `degree + 1` for nonempty input.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `len - 1`, counting trailing zeros.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Copy without trailing zero coefficients.
    pub fn trimmed(&self) -> Polynomial {
        let end = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1);
        Polynomial::new(self.coeffs[..end].to_vec())
    }

    /// Largest absolute coefficient, zero for the empty polynomial.
    pub fn max_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl From<Vec<i64>> for Polynomial {
    fn from(v: Vec<i64>) -> Self {
        Polynomial::from_i64s(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Circulant,
    Classic,
    Schoolbook,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Circulant, Engine::Classic, Engine::Schoolbook];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Circulant => "circulant",
            Engine::Classic => "classic",
            Engine::Schoolbook => "schoolbook",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                format!("unknown engine {s:?}, expected circulant, classic or schoolbook")
            })
    }
}

/// Coefficient ring for the ring-backed engines.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    /// The Mersenne field when the bound allows an exact result, otherwise
    /// the Fermat ring.
    #[default]
    Auto,
    Mersenne,
    Fermat,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Backend::Auto),
            "mersenne" => Ok(Backend::Mersenne),
            "fermat" => Ok(Backend::Fermat),
            _ => Err(format!(
                "unknown ring {s:?}, expected auto, mersenne or fermat"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyMulOptions {
    pub engine: Engine,
    pub backend: Backend,
    /// Refuse Mersenne products whose coefficients may not fit. When off,
    /// results are the symmetric representatives modulo `p`.
    pub exact_check: bool,
    pub circulant: CirculantConfig,
}

impl Default for PolyMulOptions {
    fn default() -> Self {
        PolyMulOptions {
            engine: Engine::Circulant,
            backend: Backend::Auto,
            exact_check: true,
            circulant: CirculantConfig::default(),
        }
    }
}

impl PolyMulOptions {
    pub fn engine(engine: Engine) -> Self {
        PolyMulOptions {
            engine,
            ..Default::default()
        }
    }
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial, engine: Engine) -> Result<Polynomial> {
    poly_mul_with(p, q, &PolyMulOptions::engine(engine))
}

/// `min(len p, len q) · max|p_i| · max|q_j|`, an upper bound on every
/// output coefficient.
pub fn coefficient_bound(p: &Polynomial, q: &Polynomial) -> BigInt {
    BigInt::from(p.len().min(q.len())) * p.max_abs() * q.max_abs()
}

/// Largest bound the Mersenne field reproduces exactly: residues are lifted
/// to `[0, p)` when no input is negative and to `(-p/2, p/2)` otherwise.
pub fn mersenne_limit(nonnegative: bool) -> u64 {
    let p = P as u64;
    if nonnegative {
        p - 1
    } else {
        (p - 1) / 2
    }
}

pub fn poly_mul_with(p: &Polynomial, q: &Polynomial, opts: &PolyMulOptions) -> Result<Polynomial> {
    if p.is_empty() || q.is_empty() {
        return Ok(Polynomial::zero());
    }
    if opts.engine == Engine::Schoolbook {
        return Ok(poly_mul_schoolbook(p, q));
    }
    let bound = coefficient_bound(p, q);
    let nonnegative = !p.coeffs.iter().chain(&q.coeffs).any(Signed::is_negative);
    let limit = mersenne_limit(nonnegative);
    let fits = bound <= BigInt::from(limit);
    let backend = match opts.backend {
        Backend::Auto if fits => Backend::Mersenne,
        Backend::Auto => Backend::Fermat,
        b => b,
    };
    match backend {
        Backend::Mersenne => {
            if !fits && opts.exact_check {
                return Err(Error::CoefficientOverflow {
                    bound: bound.to_string(),
                    limit: limit.to_string(),
                });
            }
            mul_mersenne(p, q, opts, fits && nonnegative)
        }
        _ => mul_fermat(p, q, opts, &bound),
    }
}

fn padded_len(p: &Polynomial, q: &Polynomial) -> usize {
    (p.len() + q.len() - 1).next_power_of_two()
}

fn mul_mersenne(
    p: &Polynomial,
    q: &Polynomial,
    opts: &PolyMulOptions,
    unsigned: bool,
) -> Result<Polynomial> {
    let len = padded_len(p, q);
    let ctx = build_root_context(len.trailing_zeros())?;
    let modulus = BigInt::from(P);
    let embed = |c: &BigInt| {
        let r = c.mod_floor(&modulus).to_u64().expect("residue below p");
        Fp2::from_fp(Fp::new(r))
    };
    let a: Vec<Fp2> = p.coeffs.iter().map(embed).collect();
    let b: Vec<Fp2> = q.coeffs.iter().map(embed).collect();
    let c = linear_convolution(
        &ctx,
        &a,
        &b,
        opts.engine,
        &opts.circulant,
        &mut ProductStats::default(),
    )?;
    let lift = |x: &Fp2| {
        debug_assert!(x.is_base());
        if unsigned {
            BigInt::from(x.a.value())
        } else {
            BigInt::from(x.a.symmetric())
        }
    };
    Ok(Polynomial::new(c.iter().map(lift).collect()))
}

/// Smallest `K` that is a multiple of `max(len/2, 64)` and leaves a sign
/// bit above `bound`.
pub fn fermat_exponent(bound: &BigInt, len: usize) -> u32 {
    let align = (len as u64 / 2).max(64);
    let need = bound.bits() + 2;
    u32::try_from(need.div_ceil(align) * align).expect("Fermat exponent exceeds u32")
}

fn mul_fermat(
    p: &Polynomial,
    q: &Polynomial,
    opts: &PolyMulOptions,
    bound: &BigInt,
) -> Result<Polynomial> {
    let len = padded_len(p, q);
    let k = fermat_exponent(bound, len);
    let ring = FermatRing::new(k)?;
    let ctx = FermatRoots::new(ring.clone(), len.trailing_zeros())?;
    let embed = |c: &BigInt| {
        let e = FermatElem::from_limbs(k, &c.magnitude().to_u64_digits());
        if c.is_negative() {
            ring.neg(&e)
        } else {
            e
        }
    };
    let a: Vec<FermatElem> = p.coeffs.iter().map(embed).collect();
    let b: Vec<FermatElem> = q.coeffs.iter().map(embed).collect();
    let c = linear_convolution(
        &ctx,
        &a,
        &b,
        opts.engine,
        &opts.circulant,
        &mut ProductStats::default(),
    )?;
    let modulus = (BigUint::from(1u8) << k) + 1u8;
    let half = BigUint::from(1u8) << (k - 1);
    let lift = |x: &FermatElem| {
        let v = BigUint::new(
            x.limbs()
                .iter()
                .flat_map(|&w| [w as u32, (w >> 32) as u32])
                .collect(),
        );
        if v > half {
            BigInt::from_biguint(Sign::Minus, &modulus - v)
        } else {
            BigInt::from_biguint(Sign::Plus, v)
        }
    };
    Ok(Polynomial::new(c.iter().map(lift).collect()))
}

/// Linear convolution of two ring sequences, `len a + len b - 1` entries.
///
/// Both are zero-padded to the next power of two and convolved cyclically by
/// the chosen engine; [`Engine::Schoolbook`] convolves directly in the ring.
pub fn linear_convolution<C: RootContext>(
    ctx: &C,
    a: &[ElemOf<C>],
    b: &[ElemOf<C>],
    engine: Engine,
    config: &CirculantConfig,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let ring = ctx.ring();
    let out_len = a.len() + b.len() - 1;
    if engine == Engine::Schoolbook {
        let mut out = vec![ring.zero(); out_len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
            }
        }
        stats.ring_mults += (a.len() * b.len()) as u64;
        stats.ring_adds += (a.len() * b.len()) as u64;
        return Ok(out);
    }
    let len = out_len.next_power_of_two();
    let pad = |x: &[ElemOf<C>]| {
        let mut v = x.to_vec();
        v.resize(len, ring.zero());
        v
    };
    let (a, b) = (pad(a), pad(b));
    let mut out = match engine {
        Engine::Circulant => cyclic_convolution(ctx, &a, &b, config, stats)?,
        _ => cyclic_convolve(&a, &b, &TransformPlan::new(ctx, len)?, stats)?,
    };
    out.truncate(out_len);
    Ok(out)
}

/// Exact `O(len p · len q)` product with unbounded intermediate width.
pub fn poly_mul_schoolbook(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_empty() || q.is_empty() {
        return Polynomial::zero();
    }
    let out_len = p.len() + q.len() - 1;
    let bits = |x: &Polynomial| x.max_abs().bits();
    let len_bits = (p.len().min(q.len()) as u64).ilog2() as u64 + 1;
    if bits(p) + bits(q) + len_bits < 127 {
        let narrow = |x: &Polynomial| -> Vec<i128> {
            x.coeffs.iter().map(|c| c.to_i128().unwrap()).collect()
        };
        let (a, b) = (narrow(p), narrow(q));
        let mut out = vec![0i128; out_len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        return Polynomial::new(out.into_iter().map(BigInt::from).collect());
    }
    let mut out = vec![BigInt::zero(); out_len];
    for (i, x) in p.coeffs.iter().enumerate() {
        for (j, y) in q.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}
