//! Inputs shared by the benchmarks.

use rankin_core::modsym::{build_space, Sign};
use rankin_core::{ModularSymbolSpace, UniPoly};

/// Levels used across the benchmarks, smallest first.
pub const LEVELS: [u64; 3] = [11, 67, 163];

pub fn plus_space(n: u64) -> ModularSymbolSpace {
    build_space(n, Sign::Plus).expect("prime level")
}

/// `(x^2 - x - 1)(x^3 - 2)(x^2 + 1)^2`, a product with a repeated factor.
pub fn sample_polynomial() -> UniPoly {
    let a = UniPoly::from_i64(&[-1, -1, 1]);
    let b = UniPoly::from_i64(&[-2, 0, 0, 1]);
    let c = UniPoly::from_i64(&[1, 0, 1]);
    &(&a * &b) * &(&c * &c)
}
