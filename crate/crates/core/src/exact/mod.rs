//! Exact scalar arithmetic: prime fields, arbitrary-precision integers,
//! rationals, and truncated integer power series.
//!
//! Everything downstream (group orders, span dimensions, Hausdorff
//! sequences) is built on these; there is no floating point anywhere except
//! the explicitly diagnostic [`series_dims_to_gk`] estimate.

mod packed;
mod scalar;
mod series;

pub use packed::Gf2Vec;
pub(crate) use scalar::mod_inv;
pub use scalar::{FieldSpec, Scalar};
pub use series::{jennings_series, series_dims_to_gk, TruncSeries};

/// Arbitrary-precision nonnegative integer, used for level-quotient orders.
pub type BigCount = num_bigint::BigUint;

/// Reduced rational with positive denominator (the `num` crate keeps the
/// canonical form on construction).
pub type Rational = num_rational::BigRational;

/// Deterministic primality test for `u64` (trial division; the primes used
/// as field characteristics are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
