//! f-circulant matrices and their FFT-free matrix-vector product.
//!
//! A matrix is identified by its first row `a` and the scalar `f`. Entry
//! `(i, j)` (0-indexed) is `a[(j - i) mod n]`, multiplied by `f` when the
//! index wrapped (`j < i`). For `n = 3`:
//!
//! ```text
//! [ a0    a1    a2 ]
//! [ f·a2  a0    a1 ]
//! [ f·a1  f·a2  a0 ]
//! ```
//!
//! Writing `A = [[A1, A2], [f·A2, A1]]` in half-size blocks and `s = √f`,
//!
//! ```text
//! M1 = (A1 + s·A2)(s·b1 + b2) = s·c1 + c2
//! M2 = (A1 - s·A2)(s·b1 - b2) = s·c1 - c2
//! ```
//!
//! where `A1 + s·A2` is itself s-circulant and `A1 - s·A2` is (-s)-circulant,
//! both with half-size rows `a1 ± s·a2`. Hence `c1 = (M1 + M2)/(2s)`,
//! `c2 = (M1 - M2)/2`, and the recursion costs `O(n log n)` ring operations.

use crate::error::{Error, Result};
use crate::ring::{ElemOf, FExponent, Ring, RootContext};

/// An f-circulant matrix stored as its first row.
#[derive(Clone, Debug, PartialEq)]
pub struct FCirculant<E> {
    row: Vec<E>,
    f: FExponent,
}

impl<E: Clone> FCirculant<E> {
    pub fn new(row: Vec<E>, f: FExponent) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::Dimension(
                "f-circulant matrix needs a non-empty row".into(),
            ));
        }
        Ok(FCirculant { row, f })
    }

    /// Ordinary circulant (`f = 1`).
    pub fn circulant(row: Vec<E>) -> Result<Self> {
        FCirculant::new(row, FExponent::ONE)
    }

    pub fn row(&self) -> &[E] {
        &self.row
    }

    pub fn f(&self) -> FExponent {
        self.f
    }

    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    pub fn into_row(self) -> Vec<E> {
        self.row
    }

    /// Entry `(i, j)` of the implied matrix.
    pub fn entry<C>(&self, ctx: &C, i: usize, j: usize) -> E
    where
        C: RootContext,
        C::Ring: Ring<Elem = E>,
    {
        let n = self.row.len();
        let a = &self.row[(j + n - i) % n];
        if j < i {
            ctx.ring().mul(&ctx.root(self.f), a)
        } else {
            a.clone()
        }
    }

    pub fn to_dense<C>(&self, ctx: &C) -> Result<Vec<Vec<E>>>
    where
        C: RootContext,
        C::Ring: Ring<Elem = E>,
    {
        ctx.check_level(self.f.level())?;
        let n = self.row.len();
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.entry(ctx, i, j)).collect())
            .collect())
    }

    /// The two half-size matrices `A1 + √f·A2` (√f-circulant) and
    /// `A1 - √f·A2` (-√f-circulant) of one recursion step.
    pub fn split_halves<C>(&self, ctx: &C) -> Result<(FCirculant<E>, FCirculant<E>)>
    where
        C: RootContext,
        C::Ring: Ring<Elem = E>,
    {
        let n = self.row.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "cannot halve a matrix of size {n}"
            )));
        }
        let (s, neg_s) = ctx.sqrt_f(self.f)?;
        let ring = ctx.ring();
        let sv = ctx.scalar(s);
        let (a1, a2) = self.row.split_at(n / 2);
        let mut plus = Vec::with_capacity(n / 2);
        let mut minus = Vec::with_capacity(n / 2);
        for (x, y) in a1.iter().zip(a2) {
            let t = ctx.mul_scalar(y, &sv);
            plus.push(ring.add(x, &t));
            minus.push(ring.sub(x, &t));
        }
        Ok((
            FCirculant { row: plus, f: s },
            FCirculant {
                row: minus,
                f: neg_s,
            },
        ))
    }
}

/// Operation counters for one product.
///
/// `halvings` counts multiplications by `2^{-1}`, which every backend here
/// realizes as a shift rather than a general multiplication.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProductStats {
    pub ring_mults: u64,
    pub ring_adds: u64,
    pub halvings: u64,
}

impl ProductStats {
    pub fn merge(&mut self, other: &ProductStats) {
        self.ring_mults += other.ring_mults;
        self.ring_adds += other.ring_adds;
        self.halvings += other.halvings;
    }
}

/// Tuning knobs that do not change results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CirculantConfig {
    /// Sizes at or below this use the quadratic product. Minimum 1.
    pub base_threshold: usize,
    /// Evaluate the two half-size products concurrently for sizes at or
    /// above this.
    pub parallel_min_len: Option<usize>,
}

impl Default for CirculantConfig {
    fn default() -> Self {
        CirculantConfig {
            base_threshold: 1,
            parallel_min_len: None,
        }
    }
}

fn check_len(n: usize, b: usize) -> Result<()> {
    if n != b {
        return Err(Error::Dimension(format!(
            "matrix is {n}x{n} but the vector has length {b}"
        )));
    }
    Ok(())
}

// c[i] = Σ_j A[i][j]·b[j], with f·a precomputed once.
fn naive_product<C: RootContext>(
    ctx: &C,
    row: &[ElemOf<C>],
    f: FExponent,
    b: &[ElemOf<C>],
    stats: &mut ProductStats,
) -> Vec<ElemOf<C>> {
    let ring = ctx.ring();
    let n = row.len();
    let fv = ctx.root(f);
    let f_row: Vec<_> = row.iter().map(|a| ring.mul(&fv, a)).collect();
    let out = (0..n)
        .map(|i| {
            let mut acc = ring.zero();
            for (j, bj) in b.iter().enumerate() {
                let a = if j >= i {
                    &row[j - i]
                } else {
                    &f_row[n + j - i]
                };
                let t = ring.mul(a, bj);
                acc = if j == 0 { t } else { ring.add(&acc, &t) };
            }
            acc
        })
        .collect();
    stats.ring_mults += (n + n * n) as u64;
    stats.ring_adds += (n * (n - 1)) as u64;
    out
}

/// Direct `O(n²)` product from the implied-matrix rule. The reference every
/// fast path is checked against.
pub fn mul_vec_naive<C: RootContext>(
    ctx: &C,
    a: &FCirculant<ElemOf<C>>,
    b: &[ElemOf<C>],
) -> Result<Vec<ElemOf<C>>> {
    mul_vec_naive_counted(ctx, a, b, &mut ProductStats::default())
}

pub fn mul_vec_naive_counted<C: RootContext>(
    ctx: &C,
    a: &FCirculant<ElemOf<C>>,
    b: &[ElemOf<C>],
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    check_len(a.len(), b.len())?;
    ctx.check_level(a.f.level())?;
    Ok(naive_product(ctx, &a.row, a.f, b, stats))
}

/// Recursive product with the default configuration.
pub fn mul_vec_recursive<C: RootContext>(
    ctx: &C,
    a: &FCirculant<ElemOf<C>>,
    b: &[ElemOf<C>],
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    mul_vec_recursive_with(ctx, a, b, &CirculantConfig::default(), stats)
}

/// Recursive `O(n log n)` product. `n` must be a power of two and the table
/// must reach level `f.level + log2(n)`.
pub fn mul_vec_recursive_with<C: RootContext>(
    ctx: &C,
    a: &FCirculant<ElemOf<C>>,
    b: &[ElemOf<C>],
    config: &CirculantConfig,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    let n = a.len();
    check_len(n, b.len())?;
    if !n.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "recursive product needs a power-of-two size, got {n}; pad first"
        )));
    }
    ctx.check_level(a.f.level() + n.trailing_zeros())?;
    let mut row = a.row.clone();
    let mut vec = b.to_vec();
    product_in_place(ctx, config, &mut row, &mut vec, a.f, stats);
    Ok(vec)
}

// Overwrites `vec` with A·vec; `row` is used as scratch.
fn product_in_place<C: RootContext>(
    ctx: &C,
    config: &CirculantConfig,
    row: &mut [ElemOf<C>],
    vec: &mut [ElemOf<C>],
    f: FExponent,
    stats: &mut ProductStats,
) {
    let ring = ctx.ring();
    let n = row.len();
    if n == 1 {
        vec[0] = ring.mul(&row[0], &vec[0]);
        stats.ring_mults += 1;
        return;
    }
    if n <= config.base_threshold {
        let out = naive_product(ctx, row, f, vec, stats);
        vec.clone_from_slice(&out);
        return;
    }

    let m = n / 2;
    let (s, neg_s) = f.sqrt_pair();
    let sv = ctx.scalar(s);

    let (r1, r2) = row.split_at_mut(m);
    for (x, y) in r1.iter_mut().zip(r2.iter_mut()) {
        let t = ctx.mul_scalar(y, &sv);
        *y = ring.sub(x, &t);
        *x = ring.add(x, &t);
    }
    let (v1, v2) = vec.split_at_mut(m);
    for (x, y) in v1.iter_mut().zip(v2.iter_mut()) {
        let t = ctx.mul_scalar(x, &sv);
        *x = ring.add(&t, y);
        *y = ring.sub(&t, y);
    }
    stats.ring_mults += n as u64;
    stats.ring_adds += 2 * n as u64;

    match config.parallel_min_len {
        Some(min) if n >= min => {
            let (mut left, mut right) = (ProductStats::default(), ProductStats::default());
            rayon::join(
                || product_in_place(ctx, config, r1, v1, s, &mut left),
                || product_in_place(ctx, config, r2, v2, neg_s, &mut right),
            );
            stats.merge(&left);
            stats.merge(&right);
        }
        _ => {
            product_in_place(ctx, config, r1, v1, s, stats);
            product_in_place(ctx, config, r2, v2, neg_s, stats);
        }
    }

    // v1 = M1, v2 = M2
    let s_inv = ctx.scalar_inv(s);
    for (x, y) in v1.iter_mut().zip(v2.iter_mut()) {
        let sum = ring.add(x, y);
        let diff = ring.sub(x, y);
        *x = ctx.mul_scalar(&ctx.halve(&sum), &s_inv);
        *y = ctx.halve(&diff);
    }
    stats.ring_mults += m as u64;
    stats.ring_adds += n as u64;
    stats.halvings += n as u64;
}

/// Embeds an `n×n` circulant product into a size `N = 2^{d+1}` one, where
/// `d` is minimal with `2^d > n`:
///
/// ```text
/// a' = (a1, …, an, 0, …, 0, a2, …, an)
/// b' = (b1, …, bn, 0, …, 0)
/// ```
///
/// The first `n` entries of `A'·b'` are `A·b`.
pub fn pad_to_pow2<E: Clone>(a: &[E], b: &[E], zero: E) -> Result<(FCirculant<E>, Vec<E>, usize)> {
    let n = a.len();
    check_len(n, b.len())?;
    if n == 0 {
        return Err(Error::Dimension("cannot pad an empty product".into()));
    }
    let d = usize::BITS - n.leading_zeros();
    let size = 1usize << (d + 1);
    let mut row = Vec::with_capacity(size);
    row.extend_from_slice(a);
    row.resize(size - (n - 1), zero.clone());
    row.extend_from_slice(&a[1..]);
    let mut vec = Vec::with_capacity(size);
    vec.extend_from_slice(b);
    vec.resize(size, zero);
    Ok((FCirculant::circulant(row)?, vec, size))
}

/// Circulant (`f = 1`) product for any `n ≥ 1`, padding when `n` is not a
/// power of two.
pub fn mul_vec_any_size<C: RootContext>(
    ctx: &C,
    a: &[ElemOf<C>],
    b: &[ElemOf<C>],
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    let n = a.len();
    check_len(n, b.len())?;
    if n.is_power_of_two() {
        return mul_vec_recursive(ctx, &FCirculant::circulant(a.to_vec())?, b, stats);
    }
    let (padded, vec, _) = pad_to_pow2(a, b, ctx.ring().zero())?;
    let mut out = mul_vec_recursive(ctx, &padded, &vec, stats)?;
    out.truncate(n);
    Ok(out)
}

/// `x[(-j) mod n]`.
pub fn cyclic_reverse<E: Clone>(x: &[E]) -> Vec<E> {
    let n = x.len();
    (0..n).map(|j| x[(n - j) % n].clone()).collect()
}

/// Cyclic convolution `c[k] = Σ_{i+j ≡ k} a[i]·b[j]` through the circulant
/// product.
///
/// With `A[i][j] = a[(j - i) mod n]` and `b̃[j] = b[-j]`,
/// `(A·b̃)[i] = Σ_{u+v ≡ -i} a[u]·b[v] = c[-i]`, so `c` is the cyclic
/// reversal of `A·b̃`.
pub fn cyclic_convolution<C: RootContext>(
    ctx: &C,
    a: &[ElemOf<C>],
    b: &[ElemOf<C>],
    config: &CirculantConfig,
    stats: &mut ProductStats,
) -> Result<Vec<ElemOf<C>>> {
    check_len(a.len(), b.len())?;
    let matrix = FCirculant::circulant(a.to_vec())?;
    let out = mul_vec_recursive_with(ctx, &matrix, &cyclic_reverse(b), config, stats)?;
    Ok(cyclic_reverse(&out))
}
