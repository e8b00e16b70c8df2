//! Radix-2 Cooley–Tukey transform over a [`RootContext`] ring, and the
//! classic three-transform circulant product built on it.
//!
//! This is the baseline the circulant recursion is measured against; both
//! read their roots from the same context.

use crate::circulant::{cyclic_reverse, ProductStats};
use crate::error::{Error, Result};
use crate::ring::{ElemOf, FExponent, Ring, RootContext};

/// Transform of one power-of-two length over a shared root context.
pub struct TransformPlan<'a, C: RootContext> {
    ctx: &'a C,
    n: usize,
    log_n: u32,
    inv_n: ElemOf<C>,
}

impl<'a, C: RootContext> TransformPlan<'a, C> {
    pub fn new(ctx: &'a C, n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "transform length must be a power of two, got {n}"
            )));
        }
        let log_n = n.trailing_zeros();
        ctx.check_level(log_n)?;
        let mut inv_n = ctx.ring().one();
        for _ in 0..log_n {
            inv_n = ctx.halve(&inv_n);
        }
        Ok(TransformPlan {
            ctx,
            n,
            log_n,
            inv_n,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn context(&self) -> &'a C {
        self.ctx
    }

    /// `ω_n`.
    pub fn forward_root(&self) -> ElemOf<C> {
        self.ctx
            .root(FExponent::new_unchecked(self.log_n, 1 % self.n as u64))
    }

    /// `ω_n^{-1}`.
    pub fn inverse_root(&self) -> ElemOf<C> {
        self.ctx
            .root_inv(FExponent::new_unchecked(self.log_n, 1 % self.n as u64))
    }

    pub fn inv_n(&self) -> &ElemOf<C> {
        &self.inv_n
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::Dimension(format!(
                "plan has length {} but input has length {len}",
                self.n
            )));
        }
        Ok(())
    }

    /// In place `y[k] = Σ_j x[j]·ω_n^{jk}`.
    pub fn forward_in_place(&self, x: &mut [ElemOf<C>], stats: &mut ProductStats) -> Result<()> {
        self.check(x.len())?;
        self.butterflies(x, false, stats);
        Ok(())
    }

    /// In place inverse of [`forward_in_place`](Self::forward_in_place),
    /// including the `1/n` scaling.
    pub fn inverse_in_place(&self, x: &mut [ElemOf<C>], stats: &mut ProductStats) -> Result<()> {
        self.check(x.len())?;
        self.butterflies(x, true, stats);
        let ring = self.ctx.ring();
        for v in x.iter_mut() {
            *v = ring.mul(v, &self.inv_n);
        }
        stats.ring_mults += self.n as u64;
        Ok(())
    }

    fn butterflies(&self, x: &mut [ElemOf<C>], inverse: bool, stats: &mut ProductStats) {
        let n = self.n;
        let ring = self.ctx.ring();
        bit_reverse_permute(x);
        for s in 1..=self.log_n {
            let len = 1usize << s;
            let half = len / 2;
            for j in 0..half {
                let at = FExponent::new_unchecked(s, j as u64);
                let w = if inverse {
                    self.ctx.scalar_inv(at)
                } else {
                    self.ctx.scalar(at)
                };
                for start in (0..n).step_by(len) {
                    let t = self.ctx.mul_scalar(&x[start + j + half], &w);
                    let u = x[start + j].clone();
                    x[start + j + half] = ring.sub(&u, &t);
                    x[start + j] = ring.add(&u, &t);
                }
            }
        }
        stats.ring_mults += (n / 2) as u64 * self.log_n as u64;
        stats.ring_adds += n as u64 * self.log_n as u64;
    }
}

fn bit_reverse_permute<E>(x: &mut [E]) {
    let n = x.len();
    if n <= 2 {
        return;
    }
    let shift = usize::BITS - n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if i < j {
            x.swap(i, j);
        }
    }
}

pub fn fft_forward<C: RootContext>(
    x: &[ElemOf<C>],
    plan: &TransformPlan<'_, C>,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    let mut y = x.to_vec();
    plan.forward_in_place(&mut y, stats)?;
    Ok(y)
}

pub fn fft_inverse<C: RootContext>(
    y: &[ElemOf<C>],
    plan: &TransformPlan<'_, C>,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    let mut x = y.to_vec();
    plan.inverse_in_place(&mut x, stats)?;
    Ok(x)
}

/// Cyclic convolution by three transforms and a pointwise product.
pub fn cyclic_convolve<C: RootContext>(
    a: &[ElemOf<C>],
    b: &[ElemOf<C>],
    plan: &TransformPlan<'_, C>,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    plan.check(b.len())?;
    let ring = plan.ctx.ring();
    let mut fa = fft_forward(a, plan, stats)?;
    let fb = fft_forward(b, plan, stats)?;
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = ring.mul(x, y);
    }
    stats.ring_mults += plan.n as u64;
    plan.inverse_in_place(&mut fa, stats)?;
    Ok(fa)
}

/// Circulant product `A·b` for the row-identified matrix
/// `A[i][j] = a[(j - i) mod n]`.
///
/// The diagonalization `A = F⁻¹ diag(F a) F` holds for the column-identified
/// circulant, whose first column is `a`. Our `A` has first column
/// `a[(-i) mod n]`, so the transform is applied to the cyclic reversal of `a`:
/// `(A·b)[i] = Σ_j a[(j-i) mod n]·b[j] = (rev(a) ⊛ b)[i]`.
pub fn circulant_mul_classic<C: RootContext>(
    a: &[ElemOf<C>],
    b: &[ElemOf<C>],
    plan: &TransformPlan<'_, C>,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    plan.check(a.len())?;
    cyclic_convolve(&cyclic_reverse(a), b, plan, stats)
}
