//! Numerical fits of `a_n ~ c n^(-theta) gamma^(-n)`.
//!
//! Both fits work on logarithms of the exact coefficients, so magnitudes of
//! thousands of bits are no obstacle.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::series::ln_bigint;

/// A raw estimate at the top of the range and its one-step Richardson
/// extrapolation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitEstimate {
    pub raw: f64,
    pub extrapolated: f64,
}

impl FitEstimate {
    pub fn value(&self) -> f64 {
        self.extrapolated
    }
}

fn ln_coeff(coeffs: &[BigInt], n: usize) -> Result<f64> {
    let a = &coeffs[n];
    if !a.is_positive() {
        return Err(Error::InvalidArgument(format!("coefficient {n} is not positive")));
    }
    Ok(ln_bigint(a))
}

fn check_range(coeffs: &[BigInt], n_range: (usize, usize), low: usize) -> Result<()> {
    let (n_lo, n_hi) = n_range;
    if n_hi >= coeffs.len() {
        return Err(Error::InsufficientRange(format!(
            "need coefficients up to {n_hi}, have {}",
            coeffs.len().saturating_sub(1)
        )));
    }
    if low < n_lo.max(1) {
        return Err(Error::InsufficientRange(format!(
            "range ({n_lo}, {n_hi}) too narrow: lowest index used would be {low}"
        )));
    }
    Ok(())
}

/// Exponent estimate from the slope between `m` and `2m`:
/// `e(m) = (ln a_m - ln a_2m - m ln gamma) / ln 2`.
///
/// The raw value uses `m = n_hi/2`; the extrapolation is
/// `2 e(n_hi/2) - e(n_hi/4)`, which cancels the `1/m` correction. Every
/// index used lies in `n_range`.
pub fn subexp_fit(coeffs: &[BigInt], gamma: f64, n_range: (usize, usize)) -> Result<FitEstimate> {
    let m1 = n_range.1 / 2;
    let m0 = m1 / 2;
    check_range(coeffs, n_range, m0)?;
    let lg = gamma.ln();
    let e = |m: usize| -> Result<f64> {
        Ok((ln_coeff(coeffs, m)? - ln_coeff(coeffs, 2 * m)? - m as f64 * lg) / std::f64::consts::LN_2)
    };
    let (e1, e0) = (e(m1)?, e(m0)?);
    Ok(FitEstimate { raw: e1, extrapolated: 2.0 * e1 - e0 })
}

/// Constant estimate `c(n) = a_n gamma^n n^theta` at `n = n_hi`, with the
/// extrapolation `2 c(n_hi) - c(n_hi/2)`.
pub fn constant_fit(coeffs: &[BigInt], gamma: f64, theta: f64, n_range: (usize, usize)) -> Result<FitEstimate> {
    let n1 = n_range.1;
    let n0 = n1 / 2;
    check_range(coeffs, n_range, n0)?;
    let lg = gamma.ln();
    let c = |n: usize| -> Result<f64> { Ok((ln_coeff(coeffs, n)? + n as f64 * lg + theta * (n as f64).ln()).exp()) };
    let (c1, c0) = (c(n1)?, c(n0)?);
    Ok(FitEstimate { raw: c1, extrapolated: 2.0 * c1 - c0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(1)];
        for i in 0..n {
            let next = &out[i] * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
            out.push(next);
        }
        out
    }

    #[test]
    fn catalan_exponent() {
        let c = catalan(1000);
        let est = subexp_fit(&c, 0.25, (200, 1000)).unwrap();
        assert!((est.value() - 1.5).abs() < 0.1);
        assert!((est.extrapolated - 1.5).abs() < (est.raw - 1.5).abs());
    }

    #[test]
    fn catalan_constant() {
        let c = catalan(1000);
        let est = constant_fit(&c, 0.25, 1.5, (200, 1000)).unwrap();
        let want = 1.0 / std::f64::consts::PI.sqrt();
        assert!((est.value() - want).abs() / want < 0.02);
    }

    #[test]
    fn convergence_is_monotone_in_range() {
        let c = catalan(1600);
        let errs: Vec<(f64, f64)> = [100, 200, 400, 800, 1600]
            .iter()
            .map(|&n| {
                let e = subexp_fit(&c, 0.25, (n / 4, n)).unwrap();
                ((e.raw - 1.5).abs(), (e.extrapolated - 1.5).abs())
            })
            .collect();
        for w in errs.windows(2) {
            assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1, "{errs:?}");
        }
    }

    #[test]
    fn range_errors() {
        let c = catalan(50);
        assert!(matches!(subexp_fit(&c, 0.25, (10, 100)), Err(Error::InsufficientRange(_))));
        assert!(matches!(subexp_fit(&c, 0.25, (20, 40)), Err(Error::InsufficientRange(_))));
        assert!(matches!(constant_fit(&c, 0.25, 1.5, (30, 40)), Err(Error::InsufficientRange(_))));
        assert!(subexp_fit(&c, 0.25, (0, 3)).is_err());
        let zeros = vec![BigInt::from(0); 20];
        assert!(matches!(subexp_fit(&zeros, 0.25, (4, 16)), Err(Error::InvalidArgument(_))));
    }
}
