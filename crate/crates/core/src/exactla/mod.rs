//! Exact linear algebra over prime fields.
//!
//! Everything downstream reduces to rank, kernel and membership questions
//! over `F_p`: ideal spans, annihilators, syzygies, catalecticants. Matrices
//! are dense; elimination accumulates in `u64` and reduces lazily.

mod field;
mod matrix;
mod subspace;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use matrix::Matrix;
pub use subspace::Subspace;

/// `a * x + y` over the field, in place on `y`.
pub fn axpy(field: &PrimeField, a: u32, x: &[u32], y: &mut [u32]) {
    if a == 0 {
        return;
    }
    for (dst, &v) in y.iter_mut().zip(x) {
        *dst = field.add(*dst, field.mul(a, v));
    }
}

pub fn scale(field: &PrimeField, a: u32, x: &[u32]) -> Vec<u32> {
    x.iter().map(|&v| field.mul(a, v)).collect()
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}
