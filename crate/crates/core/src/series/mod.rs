//! Exact arithmetic kernel.
//!
//! Everything here works over [`Rational`], an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. Counting series have
//! integral coefficients, but integrality is checked where a series leaves
//! the kernel (see [`PowerSeries::to_integers`]) instead of being assumed.

mod multipoly;
mod poly;
mod power_series;

pub use multipoly::{Exponents, Marker, MultiPoly};
pub use poly::Poly;
pub use power_series::PowerSeries;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `numer / denom` in lowest terms. Panics if `denom` is zero.
pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Natural logarithm of a positive big integer, accurate to about 15
/// significant digits regardless of magnitude.
///
/// Only the leading 60 bits reach floating point; the rest is carried as an
/// exact power of two.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "logarithm of a non-positive integer");
    let bits = n.bits();
    if bits <= 60 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let lead: BigInt = n >> shift;
    lead.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(q: &Rational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// Floating approximation of a rational that stays finite for huge
/// numerators and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    match q.to_f64() {
        Some(x) if x.is_finite() && x != 0.0 => x,
        _ => {
            let sign = if q.is_negative() { -1.0 } else { 1.0 };
            sign * ln_rational(&q.abs()).exp()
        }
    }
}
