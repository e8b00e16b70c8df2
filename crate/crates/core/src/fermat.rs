//! Arithmetic in `Z/(2^K + 1)`.
//!
//! `2^K ≡ -1`, so `2` is a root of unity of order `2K` and multiplying by any
//! power of two is a shift, a split at bit `K`, and a subtraction. Elements
//! are stored as little-endian limbs wide enough to hold `2^K` exactly; the
//! canonical range is `[0, 2^K]`, with `2^K` itself standing for `-1`.

use std::fmt;
use std::sync::Arc;

use crate::bigint::SsaRuntime;
use crate::error::{Error, Result};
use crate::limbs;
use crate::ring::{FExponent, Ring, RootContext};

/// Residue modulo `2^K + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FermatElem {
    k: u32,
    limbs: Vec<u64>,
}

fn width(k: u32) -> usize {
    k as usize / 64 + 1
}

impl FermatElem {
    /// Panics if `k == 0`.
    pub fn zero(k: u32) -> FermatElem {
        assert!(k > 0, "Fermat exponent K must be positive");
        FermatElem {
            k,
            limbs: vec![0; width(k)],
        }
    }

    pub fn one(k: u32) -> FermatElem {
        let mut e = FermatElem::zero(k);
        e.limbs[0] = 1;
        e
    }

    /// `2^K`, the canonical representative of `-1`.
    pub fn minus_one(k: u32) -> FermatElem {
        let mut e = FermatElem::zero(k);
        e.limbs[k as usize / 64] = 1u64 << (k % 64);
        e
    }

    pub fn from_u64(k: u32, v: u64) -> FermatElem {
        FermatElem::from_limbs(k, &[v])
    }

    /// Reduces an arbitrary little-endian magnitude modulo `2^K + 1`.
    pub fn from_limbs(k: u32, value: &[u64]) -> FermatElem {
        let bits = limbs::bit_len(value);
        if bits <= k as u64 {
            let mut out = FermatElem::zero(k);
            let v = limbs::trimmed(value);
            out.limbs[..v.len()].copy_from_slice(v);
            return out;
        }
        // value = Σ c_i 2^{iK} ≡ Σ (-1)^i c_i
        let mut acc = FermatElem::zero(k);
        let chunks = bits.div_ceil(k as u64);
        for i in 0..chunks {
            let mut chunk = limbs::extract_bits(value, i * k as u64, k as u64);
            chunk.resize(width(k), 0);
            let c = FermatElem { k, limbs: chunk };
            acc = if i % 2 == 0 {
                acc.add_raw(&c)
            } else {
                acc.sub_raw(&c)
            };
        }
        acc
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Canonical value as limbs (not trimmed).
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &FermatElem) -> Result<()> {
        if self.k != other.k {
            return Err(Error::FermatMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    fn modulus(k: u32) -> Vec<u64> {
        let mut m = FermatElem::minus_one(k).limbs;
        m[0] |= 1;
        m
    }

    // Brings a value in [0, 2^{K+1}] back into [0, 2^K].
    fn normalize(k: u32, mut v: Vec<u64>) -> FermatElem {
        let m = FermatElem::modulus(k);
        if limbs::cmp(&v, &m) != std::cmp::Ordering::Less {
            let borrow = limbs::sub_assign(&mut v, &m);
            debug_assert!(!borrow);
        }
        v.resize(width(k), 0);
        debug_assert!(limbs::bit_len(&v) <= k as u64 + 1);
        FermatElem { k, limbs: v }
    }

    pub(crate) fn add_raw(&self, other: &FermatElem) -> FermatElem {
        let mut s = self.limbs.clone();
        limbs::add_assign(&mut s, &other.limbs);
        FermatElem::normalize(self.k, s)
    }

    pub(crate) fn sub_raw(&self, other: &FermatElem) -> FermatElem {
        let mut d = self.limbs.clone();
        if limbs::cmp(&d, &other.limbs) == std::cmp::Ordering::Less {
            limbs::add_assign(&mut d, &FermatElem::modulus(self.k));
        }
        let borrow = limbs::sub_assign(&mut d, &other.limbs);
        debug_assert!(!borrow);
        FermatElem::normalize(self.k, d)
    }

    pub(crate) fn neg_raw(&self) -> FermatElem {
        if self.is_zero() {
            return self.clone();
        }
        let mut m = FermatElem::modulus(self.k);
        limbs::sub_assign(&mut m, &self.limbs);
        FermatElem::normalize(self.k, m)
    }

    fn mul_with(&self, other: &FermatElem, runtime: Option<&(Arc<SsaRuntime>, u32)>) -> FermatElem {
        let (a, b) = (limbs::trimmed(&self.limbs), limbs::trimmed(&other.limbs));
        if a.is_empty() || b.is_empty() {
            return FermatElem::zero(self.k);
        }
        let product = match runtime {
            Some((rt, depth)) => rt.mul_limbs(a, b, *depth),
            None => limbs::mul_schoolbook(a, b),
        };
        FermatElem::from_limbs(self.k, &product)
    }

    pub fn try_add(&self, other: &FermatElem) -> Result<FermatElem> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn try_sub(&self, other: &FermatElem) -> Result<FermatElem> {
        self.check(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn try_mul(&self, other: &FermatElem) -> Result<FermatElem> {
        self.check(other)?;
        Ok(self.mul_with(other, None))
    }

    /// `x · 2^e` for any integer `e`, using only shifts and one subtraction.
    pub fn mul_pow2(&self, e: i64) -> FermatElem {
        let k = self.k as i64;
        let e = e.rem_euclid(2 * k);
        let (negate, s) = if e >= k { (true, e - k) } else { (false, e) };
        let out = if s == 0 {
            self.clone()
        } else {
            // x ≤ 2^K, so x·2^s = high·2^K + low with high ≤ 2^s < 2^K.
            let shifted = limbs::shl(&self.limbs, s as u64);
            let mut low = limbs::extract_bits(&shifted, 0, k as u64);
            let mut high = limbs::extract_bits(&shifted, k as u64, s as u64 + 1);
            low.resize(width(self.k), 0);
            high.resize(width(self.k), 0);
            FermatElem {
                k: self.k,
                limbs: low,
            }
            .sub_raw(&FermatElem {
                k: self.k,
                limbs: high,
            })
        };
        if negate {
            out.neg_raw()
        } else {
            out
        }
    }
}

impl fmt::Debug for FermatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = limbs::trimmed(&self.limbs);
        if v.len() <= 1 {
            write!(f, "{}", v.first().copied().unwrap_or(0))?;
        } else {
            write!(f, "0x")?;
            for (i, x) in v.iter().rev().enumerate() {
                if i == 0 {
                    write!(f, "{x:x}")?;
                } else {
                    write!(f, "{x:016x}")?;
                }
            }
        }
        write!(f, " (mod 2^{}+1)", self.k)
    }
}

pub fn fermat_add(x: &FermatElem, y: &FermatElem) -> Result<FermatElem> {
    x.try_add(y)
}

pub fn fermat_sub(x: &FermatElem, y: &FermatElem) -> Result<FermatElem> {
    x.try_sub(y)
}

pub fn fermat_mul(x: &FermatElem, y: &FermatElem) -> Result<FermatElem> {
    x.try_mul(y)
}

pub fn mul_pow2(x: &FermatElem, e: i64) -> FermatElem {
    x.mul_pow2(e)
}

/// `Z/(2^K + 1)` as a [`Ring`].
///
/// General products go through schoolbook limb multiplication, or back into
/// the split multiplier when the ring was created by it.
#[derive(Clone)]
pub struct FermatRing {
    k: u32,
    runtime: Option<(Arc<SsaRuntime>, u32)>,
}

impl fmt::Debug for FermatRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FermatRing").field("k", &self.k).finish()
    }
}

impl FermatRing {
    pub fn new(k: u32) -> Result<FermatRing> {
        if k == 0 {
            return Err(Error::UnsupportedTransformSize("K must be positive".into()));
        }
        Ok(FermatRing { k, runtime: None })
    }

    pub(crate) fn with_runtime(k: u32, runtime: Arc<SsaRuntime>, depth: u32) -> FermatRing {
        FermatRing {
            k,
            runtime: Some((runtime, depth)),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

impl Ring for FermatRing {
    type Elem = FermatElem;

    fn zero(&self) -> FermatElem {
        FermatElem::zero(self.k)
    }

    fn one(&self) -> FermatElem {
        FermatElem::one(self.k)
    }

    fn add(&self, x: &FermatElem, y: &FermatElem) -> FermatElem {
        debug_assert_eq!(x.k, y.k);
        x.add_raw(y)
    }

    fn sub(&self, x: &FermatElem, y: &FermatElem) -> FermatElem {
        debug_assert_eq!(x.k, y.k);
        x.sub_raw(y)
    }

    fn mul(&self, x: &FermatElem, y: &FermatElem) -> FermatElem {
        debug_assert_eq!(x.k, y.k);
        x.mul_with(y, self.runtime.as_ref())
    }

    fn neg(&self, x: &FermatElem) -> FermatElem {
        x.neg_raw()
    }

    fn from_u64(&self, v: u64) -> FermatElem {
        FermatElem::from_u64(self.k, v)
    }

    fn is_zero(&self, x: &FermatElem) -> bool {
        x.is_zero()
    }
}

/// Roots of unity in `Z/(2^K + 1)`: `ω_{2^j}^e = 2^{e·2K/2^j}`. Nothing is
/// tabulated; a root is its shift count.
#[derive(Clone, Debug)]
pub struct FermatRoots {
    ring: FermatRing,
    depth: u32,
}

/// Root context for transforms up to length `2^depth`; requires `2^depth | 2K`.
pub fn build_fermat_root_context(k: u32, depth: u32) -> Result<FermatRoots> {
    FermatRoots::new(FermatRing::new(k)?, depth)
}

impl FermatRoots {
    pub fn new(ring: FermatRing, depth: u32) -> Result<FermatRoots> {
        let order = 2 * ring.k as u64;
        if depth >= 64 || !order.is_multiple_of(1u64 << depth) {
            return Err(Error::UnsupportedTransformSize(format!(
                "2^{depth} does not divide 2K = {order}"
            )));
        }
        Ok(FermatRoots { ring, depth })
    }

    fn shift(&self, at: FExponent) -> u64 {
        debug_assert!(at.level() <= self.depth);
        at.index() * ((2 * self.ring.k as u64) >> at.level())
    }
}

impl RootContext for FermatRoots {
    type Ring = FermatRing;
    type Scalar = i64;

    fn ring(&self) -> &FermatRing {
        &self.ring
    }

    fn depth_max(&self) -> u32 {
        self.depth
    }

    fn root(&self, at: FExponent) -> FermatElem {
        FermatElem::one(self.ring.k).mul_pow2(self.shift(at) as i64)
    }

    fn inv2(&self) -> FermatElem {
        FermatElem::one(self.ring.k).mul_pow2(-1)
    }

    fn scalar(&self, at: FExponent) -> i64 {
        self.shift(at) as i64
    }

    fn scalar_inv(&self, at: FExponent) -> i64 {
        -(self.shift(at) as i64)
    }

    fn mul_scalar(&self, x: &FermatElem, s: &i64) -> FermatElem {
        x.mul_pow2(*s)
    }

    fn halve(&self, x: &FermatElem) -> FermatElem {
        x.mul_pow2(-1)
    }
}
