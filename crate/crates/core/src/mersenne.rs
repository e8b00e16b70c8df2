//! Arithmetic modulo the Mersenne prime `p = 2^31 - 1` and in the quadratic
//! extension `F_p[√3]`.
//!
//! `p + 1 = 2^31`, so the norm-one subgroup of `F_p[√3]^*` has order `2^31`
//! and contains every power-of-two root of unity up to `2^31`. `2 + √3` has
//! norm `4 - 3 = 1` and generates that subgroup; `ω_N = (2 + √3)^((p+1)/N)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{ElemOf, FExponent, Ring, RootContext};

/// The Mersenne prime `2^31 - 1`.
pub const P: u32 = 0x7fff_ffff;

const P64: u64 = P as u64;

/// Largest supported root-table depth: `2^31` divides `p + 1`.
pub const MAX_DEPTH: u32 = 31;

/// Reduces any `u64` modulo `p` by folding `x = (x & p) + (x >> 31)`.
///
/// Two folds bring any 64-bit value to at most `p + 6`; one conditional
/// subtraction finishes.
#[inline(always)]
pub const fn fp_reduce(x: u64) -> Fp {
    let x = (x & P64) + (x >> 31);
    let x = (x & P64) + (x >> 31);
    let x = if x >= P64 { x - P64 } else { x };
    Fp(x as u32)
}

/// Element of `F_p`, always in canonical form `[0, p)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub const fn new(v: u64) -> Fp {
        fp_reduce(v)
    }

    #[inline(always)]
    pub const fn value(self) -> u32 {
        self.0
    }

    /// `x · 2^{-1} = x · 2^30`: a one-bit rotation of the 31-bit residue.
    #[inline(always)]
    pub fn halve(self) -> Fp {
        Fp((self.0 >> 1) | ((self.0 & 1) << 30))
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P64 as i64
        } else {
            self.0 as i64
        }
    }
}

impl Add for Fp {
    type Output = Fp;

    #[inline(always)]
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;

    #[inline(always)]
    fn sub(self, rhs: Fp) -> Fp {
        let (d, borrow) = self.0.overflowing_sub(rhs.0);
        Fp(if borrow { d.wrapping_add(P) } else { d })
    }
}

impl Neg for Fp {
    type Output = Fp;

    #[inline(always)]
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;

    #[inline(always)]
    fn mul(self, rhs: Fp) -> Fp {
        fp_reduce(self.0 as u64 * rhs.0 as u64)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `a + b√3` in `F_p[√3]`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: Fp,
    pub b: Fp,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 {
        a: Fp::ZERO,
        b: Fp::ZERO,
    };
    pub const ONE: Fp2 = Fp2 {
        a: Fp::ONE,
        b: Fp::ZERO,
    };
    /// The generator `2 + √3` of the order-`2^31` subgroup.
    pub const GENERATOR: Fp2 = Fp2 { a: Fp(2), b: Fp(1) };

    pub const fn new(a: Fp, b: Fp) -> Fp2 {
        Fp2 { a, b }
    }

    pub const fn from_fp(a: Fp) -> Fp2 {
        Fp2 { a, b: Fp::ZERO }
    }

    /// True when the `√3` component is zero, i.e. the element lies in `F_p`.
    pub fn is_base(self) -> bool {
        self.b == Fp::ZERO
    }

    #[inline(always)]
    pub fn halve(self) -> Fp2 {
        Fp2 {
            a: self.a.halve(),
            b: self.b.halve(),
        }
    }

    /// `a - b√3`.
    pub fn conj(self) -> Fp2 {
        Fp2 {
            a: self.a,
            b: self.b.neg(),
        }
    }

    /// `a^2 - 3b^2`.
    pub fn norm(self) -> Fp {
        self.a.mul(self.a).sub(Fp(3).mul(self.b.mul(self.b)))
    }

    /// Square-and-multiply; `x^0 = 1`.
    pub fn pow(self, mut e: u64) -> Fp2 {
        let mut base = self;
        let mut acc = Fp2::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
}

impl Add for Fp2 {
    type Output = Fp2;

    #[inline(always)]
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a.add(rhs.a),
            b: self.b.add(rhs.b),
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;

    #[inline(always)]
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            a: self.a.sub(rhs.a),
            b: self.b.sub(rhs.b),
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;

    #[inline(always)]
    fn neg(self) -> Fp2 {
        Fp2 {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;

    /// `(a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3`.
    #[inline(always)]
    fn mul(self, rhs: Fp2) -> Fp2 {
        let (a, b) = (self.a.0 as u64, self.b.0 as u64);
        let (c, d) = (rhs.a.0 as u64, rhs.b.0 as u64);
        let bd = fp_reduce(b * d).0 as u64;
        // ac < 2^62 - 2^33 and 3·bd < 3·2^31, so the sum stays below 2^62.
        let re = fp_reduce(a * c + 3 * bd);
        // ad + bc < 2^63; the double fold handles any u64.
        let im = fp_reduce(a * d + b * c);
        Fp2 { a: re, b: im }
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}√3", self.a.0, self.b.0)
    }
}

pub fn fp2_mul(x: Fp2, y: Fp2) -> Fp2 {
    x.mul(y)
}

pub fn fp2_pow(x: Fp2, e: u64) -> Fp2 {
    x.pow(e)
}

/// `F_p[√3]` as a [`Ring`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Fp2Ring;

impl Ring for Fp2Ring {
    type Elem = Fp2;

    #[inline(always)]
    fn zero(&self) -> Fp2 {
        Fp2::ZERO
    }

    #[inline(always)]
    fn one(&self) -> Fp2 {
        Fp2::ONE
    }

    #[inline(always)]
    fn add(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        x.add(*y)
    }

    #[inline(always)]
    fn sub(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        x.sub(*y)
    }

    #[inline(always)]
    fn mul(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        x.mul(*y)
    }

    #[inline(always)]
    fn neg(&self, x: &Fp2) -> Fp2 {
        x.neg()
    }

    fn from_u64(&self, v: u64) -> Fp2 {
        Fp2::from_fp(Fp::new(v))
    }
}

/// Table of `ω^e` for the deepest root `ω = ω_{2^depth}`; every shallower
/// root is a strided lookup into it.
#[derive(Clone, Debug)]
pub struct MersenneRoots {
    depth: u32,
    powers: Vec<Fp2>,
}

/// Builds the root table for transforms up to length `2^depth`.
///
/// One pass of `2^depth` multiplications; inverses are complement lookups
/// into the same table.
pub fn build_root_context(depth: u32) -> Result<MersenneRoots> {
    if depth > MAX_DEPTH {
        return Err(Error::UnsupportedTransformSize(format!(
            "2^{depth} does not divide p + 1 = 2^31"
        )));
    }
    let size = 1usize << depth;
    let omega = Fp2::GENERATOR.pow((P64 + 1) >> depth);
    let mut powers = Vec::with_capacity(size);
    let mut acc = Fp2::ONE;
    for _ in 0..size {
        powers.push(acc);
        acc = acc.mul(omega);
    }
    Ok(MersenneRoots { depth, powers })
}

impl MersenneRoots {
    #[inline(always)]
    fn lookup(&self, at: FExponent) -> Fp2 {
        debug_assert!(at.level() <= self.depth);
        self.powers[(at.index() << (self.depth - at.level())) as usize]
    }
}

impl RootContext for MersenneRoots {
    type Ring = Fp2Ring;
    type Scalar = Fp2;

    fn ring(&self) -> &Fp2Ring {
        &Fp2Ring
    }

    fn depth_max(&self) -> u32 {
        self.depth
    }

    fn root(&self, at: FExponent) -> Fp2 {
        self.lookup(at)
    }

    fn inv2(&self) -> Fp2 {
        Fp2::from_fp(Fp(1 << 30))
    }

    #[inline(always)]
    fn scalar(&self, at: FExponent) -> Fp2 {
        self.lookup(at)
    }

    #[inline(always)]
    fn mul_scalar(&self, x: &Fp2, s: &Fp2) -> Fp2 {
        x.mul(*s)
    }

    #[inline(always)]
    fn halve(&self, x: &ElemOf<Self>) -> Fp2 {
        x.halve()
    }
}
