//! FFT-free products with f-circulant matrices.
//!
//! An `n × n` f-circulant matrix is determined by its first row `a` and a
//! root of unity `f`: `A[i][j] = a[j - i]` above the diagonal and
//! `f · a[n + j - i]` below it. [`circulant::mul_vec_recursive`] multiplies
//! one by a vector in `O(n log n)` ring operations by splitting into two
//! half-size products with `f` replaced by its two square roots. No
//! transform or bit-reversal is involved.
//!
//! Two coefficient rings are provided: `F_{p²}` for the Mersenne prime
//! `p = 2^31 - 1` ([`mersenne`]), and `Z/(2^K + 1)` ([`fermat`]) where every
//! root of unity is a power of two. The latter drives the big-integer
//! multiplier in [`bigint`].

pub mod bench;
pub mod bigint;
pub mod circulant;
pub mod error;
pub mod fermat;
pub mod fft;
mod limbs;
pub mod mersenne;
pub mod poly;
pub mod ring;
pub mod text;

pub use bigint::{schoolbook_mul, ssa_mul, BigNumber};
pub use circulant::{mul_vec_naive, mul_vec_recursive, CirculantConfig, FCirculant, ProductStats};
pub use error::{Error, ParseError, Result};
pub use fermat::{build_fermat_root_context, FermatElem, FermatRing, FermatRoots};
pub use mersenne::{build_root_context, Fp, Fp2, Fp2Ring, MersenneRoots};
pub use poly::{poly_mul, poly_mul_schoolbook, Backend, Engine, PolyMulOptions, Polynomial};
pub use ring::{FExponent, Ring, RootContext};
