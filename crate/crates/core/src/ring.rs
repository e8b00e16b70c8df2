//! Ring and root-of-unity contracts.
//!
//! Everything above this module (the circulant recursion, the radix-2
//! transform, polynomial and integer multiplication) is generic over a
//! [`RootContext`]: a ring together with a table of power-of-two roots of
//! unity, their inverses and the inverse of two.
//!
//! The scalar `f` of an f-circulant matrix is never a free ring element here.
//! It is always some root `ω_{2^k}^e`, carried symbolically as an
//! [`FExponent`], so that taking `√f` is index arithmetic:
//!
//! ```text
//! √(ω_{2^k}^e)  := ω_{2^(k+1)}^e
//! -√(ω_{2^k}^e)  = ω_{2^(k+1)}^(e + 2^k)
//! ```

use std::fmt::Debug;

use crate::error::{Error, Result};

/// A commutative ring with unity.
///
/// Implementors are lightweight descriptors (a modulus, a bit width); the
/// elements themselves are the associated [`Ring::Elem`] values.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    /// Image of a machine integer under the canonical map `Z -> R`.
    #[allow(clippy::wrong_self_convention)]
    fn from_u64(&self, v: u64) -> Self::Elem;

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

/// Shorthand for the element type of a root context's ring.
pub type ElemOf<C> = <<C as RootContext>::Ring as Ring>::Elem;

/// Symbolic root of unity `ω_{2^level}^index`, with `index < 2^level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FExponent {
    level: u32,
    index: u64,
}

impl FExponent {
    /// `f = 1`, the top of every ordinary (1-circulant) recursion.
    pub const ONE: FExponent = FExponent { level: 0, index: 0 };

    /// `f = -1`, the negacyclic case.
    pub const MINUS_ONE: FExponent = FExponent { level: 1, index: 1 };

    pub fn new(level: u32, index: u64) -> Result<Self> {
        if level >= 64 || index >> level != 0 {
            return Err(Error::InvalidExponent { level, index });
        }
        Ok(FExponent { level, index })
    }

    pub(crate) const fn new_unchecked(level: u32, index: u64) -> Self {
        FExponent { level, index }
    }

    pub fn level(self) -> u32 {
        self.level
    }

    pub fn index(self) -> u64 {
        self.index
    }

    /// The two square roots `(√f, -√f)` one level down, without checking
    /// them against any table.
    pub fn sqrt_pair(self) -> (FExponent, FExponent) {
        let level = self.level + 1;
        (
            FExponent::new_unchecked(level, self.index),
            FExponent::new_unchecked(level, self.index + (1u64 << self.level)),
        )
    }

    /// Exponent of the multiplicative inverse: `ω^e · ω^(2^k - e) = 1`.
    pub fn inverse(self) -> FExponent {
        let size = 1u64 << self.level;
        FExponent::new_unchecked(self.level, (size - self.index) & (size - 1))
    }

    /// The same root expressed at a deeper level (`ω_{2^k}^e = ω_{2^(k+j)}^(e·2^j)`).
    pub fn lift_to(self, level: u32) -> FExponent {
        debug_assert!(level >= self.level);
        FExponent::new_unchecked(level, self.index << (level - self.level))
    }
}

/// A ring together with its precomputed power-of-two roots of unity.
///
/// `Scalar` is the resolved form of a root used in bulk multiplication: a
/// ring element for table-backed rings, a shift count for rings where the
/// roots are powers of two. Resolution happens once, multiplication many
/// times.
pub trait RootContext: Send + Sync {
    type Ring: Ring;
    type Scalar: Clone + Debug + Send + Sync;

    fn ring(&self) -> &Self::Ring;

    /// Deepest level `k` for which `ω_{2^k}` is available.
    fn depth_max(&self) -> u32;

    /// The element `ω_{2^k}^e`. Callers must have checked the level.
    fn root(&self, at: FExponent) -> ElemOf<Self>;

    fn root_inv(&self, at: FExponent) -> ElemOf<Self> {
        self.root(at.inverse())
    }

    fn inv2(&self) -> ElemOf<Self>;

    fn scalar(&self, at: FExponent) -> Self::Scalar;

    fn scalar_inv(&self, at: FExponent) -> Self::Scalar {
        self.scalar(at.inverse())
    }

    fn mul_scalar(&self, x: &ElemOf<Self>, s: &Self::Scalar) -> ElemOf<Self>;

    /// `x · 2^{-1}`.
    fn halve(&self, x: &ElemOf<Self>) -> ElemOf<Self> {
        self.ring().mul(x, &self.inv2())
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if level > self.depth_max() {
            return Err(Error::RootTableExhausted {
                level,
                depth_max: self.depth_max(),
            });
        }
        Ok(())
    }

    /// `(√f, -√f)` as exponents, checked against the table depth.
    fn sqrt_f(&self, f: FExponent) -> Result<(FExponent, FExponent)> {
        self.check_level(f.level() + 1)?;
        Ok(f.sqrt_pair())
    }
}

/// Which root identity a [`check_root_identities`] run found broken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootIdentity {
    RootZeroIsOne,
    RootTimesInverse,
    SquareChain,
    HalfTurnIsMinusOne,
    InverseByComplement,
    TwoTimesInv2,
    Halving,
}

/// Exhaustively checks the root-table identities for every entry up to
/// `max_level`:
///
/// * `ω_{2^k}^0 = 1`
/// * `ω_{2^k}^e · (ω_{2^k}^e)^{-1} = 1`
/// * `(ω_{2^(k+1)}^e)^2 = ω_{2^k}^e`
/// * `ω_{2^k}^{2^(k-1)} = -1`
/// * `ω_{2^k}^e · ω_{2^k}^{2^k - e} = 1`
/// * `2 · inv2 = 1` and `halve(x)` agrees with multiplication by `inv2`
///
/// Returns the first violation as `(identity, level, index)`.
pub fn check_root_identities<C: RootContext>(
    ctx: &C,
    max_level: u32,
) -> std::result::Result<(), (RootIdentity, u32, u64)> {
    let ring = ctx.ring();
    let one = ring.one();
    let inv2 = ctx.inv2();
    if ring.add(&inv2, &inv2) != one {
        return Err((RootIdentity::TwoTimesInv2, 0, 0));
    }
    let probe = ring.from_u64(0x1234_5678_9abc);
    if ctx.halve(&probe) != ring.mul(&probe, &inv2) {
        return Err((RootIdentity::Halving, 0, 0));
    }
    let minus_one = ring.neg(&one);
    for k in 0..=max_level.min(ctx.depth_max()) {
        let size = 1u64 << k;
        if ctx.root(FExponent::new_unchecked(k, 0)) != one {
            return Err((RootIdentity::RootZeroIsOne, k, 0));
        }
        if k >= 1 && ctx.root(FExponent::new_unchecked(k, size / 2)) != minus_one {
            return Err((RootIdentity::HalfTurnIsMinusOne, k, size / 2));
        }
        for e in 0..size {
            let at = FExponent::new_unchecked(k, e);
            let r = ctx.root(at);
            if ring.mul(&r, &ctx.root_inv(at)) != one {
                return Err((RootIdentity::RootTimesInverse, k, e));
            }
            if ctx.mul_scalar(&ctx.mul_scalar(&one, &ctx.scalar(at)), &ctx.scalar_inv(at)) != one {
                return Err((RootIdentity::RootTimesInverse, k, e));
            }
            if e > 0 {
                let complement = ctx.root(FExponent::new_unchecked(k, size - e));
                if ring.mul(&r, &complement) != one {
                    return Err((RootIdentity::InverseByComplement, k, e));
                }
            }
            if k < ctx.depth_max() && k < max_level {
                let (sqrt, neg_sqrt) = at.sqrt_pair();
                let s = ctx.root(sqrt);
                if ring.mul(&s, &s) != r {
                    return Err((RootIdentity::SquareChain, k, e));
                }
                if ctx.root(neg_sqrt) != ring.neg(&s) {
                    return Err((RootIdentity::SquareChain, k, e));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_pair_of_one_is_plus_minus_one() {
        let (s, ns) = FExponent::ONE.sqrt_pair();
        assert_eq!((s.level(), s.index()), (1, 0));
        assert_eq!((ns.level(), ns.index()), (1, 1));
    }

    #[test]
    fn sqrt_pair_of_minus_one_is_plus_minus_i() {
        let (s, ns) = FExponent::MINUS_ONE.sqrt_pair();
        assert_eq!((s.level(), s.index()), (2, 1));
        assert_eq!((ns.level(), ns.index()), (2, 3));
    }

    #[test]
    fn sqrt_pair_level_two() {
        let (s, ns) = FExponent::new(2, 1).unwrap().sqrt_pair();
        assert_eq!((s.level(), s.index()), (3, 1));
        assert_eq!((ns.level(), ns.index()), (3, 5));
    }

    #[test]
    fn exponent_bounds() {
        assert!(FExponent::new(0, 1).is_err());
        assert!(FExponent::new(3, 8).is_err());
        assert!(FExponent::new(3, 7).is_ok());
        assert!(FExponent::new(64, 0).is_err());
    }

    #[test]
    fn inverse_by_complement() {
        assert_eq!(
            FExponent::new(3, 3).unwrap().inverse(),
            FExponent::new(3, 5).unwrap()
        );
        assert_eq!(
            FExponent::new(3, 0).unwrap().inverse(),
            FExponent::new(3, 0).unwrap()
        );
        assert_eq!(FExponent::ONE.inverse(), FExponent::ONE);
    }

    #[test]
    fn lift_keeps_the_root() {
        let at = FExponent::new(2, 3).unwrap();
        assert_eq!(at.lift_to(5), FExponent::new(5, 24).unwrap());
    }
}
