//! Dominant singularities and coefficient asymptotics.
//!
//! Here `gamma_k` is the singularity itself, the minimal positive solution
//! of `theta(z) = rho_k^2`; the exponential growth rate of `Q_k(n)` is its
//! reciprocal. Localization is exact: Sturm sequences and rational
//! bisection, no floating point in the certified path.

mod fit;
mod sturm;

pub use fit::{constant_fit, subexp_fit, FitEstimate};
pub use sturm::{refine, root_bound, smallest_positive_root, RootInterval, SturmSequence};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::diagram_gf::{q2_denominator, qk_denominator, theta2, thetak};
use crate::error::{Error, Result};
use crate::matchings::{check_supported_k, rho};
use crate::series::{frac, rational_to_f64, Poly, Rational};

/// Numerator and denominator of `theta` for this k.
fn theta_parts(k: usize) -> (Poly, Poly) {
    if k == 2 {
        theta2()
    } else {
        thetak()
    }
}

/// The denominator whose square is the denominator of `theta`.
fn base_denominator(k: usize) -> Poly {
    if k == 2 {
        q2_denominator()
    } else {
        qk_denominator()
    }
}

/// `P_k(z) = numer(theta) - rho_k^2 denom(theta)`.
pub fn singularity_polynomial(k: usize) -> Result<Poly> {
    check_supported_k(k)?;
    let (a, b) = theta_parts(k);
    let r = rho(k)?;
    Ok(&a - &b.scale(&(&r * &r)))
}

/// `theta(x)` evaluated exactly.
pub fn theta_at(k: usize, x: &Rational) -> Result<Rational> {
    check_supported_k(k)?;
    let (a, b) = theta_parts(k);
    let d = b.eval(x);
    if d.is_zero() {
        return Err(Error::DenominatorRoot(format!("theta has a pole at {x}")));
    }
    Ok(a.eval(x) / d)
}

/// A certified isolating interval for `gamma_k`.
///
/// Guarantees on success: the width is at most `tol`, `P_k` has exactly one
/// root in `(lo, hi]` and none in `(0, lo]`, the squarefree part of `P_k`
/// changes sign across the interval, and the denominator of `theta` has no
/// root in `(0, hi]`.
pub fn dominant_singularity(k: usize, tol: &Rational) -> Result<RootInterval> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let p = singularity_polynomial(k)?;
    let iv = smallest_positive_root(&p, tol).ok_or(Error::NoSingularity(k))?;
    let q = base_denominator(k);
    let zero = Rational::zero();
    if SturmSequence::new(&q).count_roots(&zero, &iv.hi) != 0 {
        return Err(Error::DenominatorRoot(format!("denominator vanishes in (0, {}]", iv.hi)));
    }
    Ok(iv)
}

/// Checks the crossing of `theta` through `rho_k^2` across the interval:
/// below at `lo`, above at `hi` (or exactly on it when the interval is a
/// single point).
pub fn crossing_certified(k: usize, iv: &RootInterval) -> Result<bool> {
    let r = rho(k)?;
    let r2 = &r * &r;
    let (tl, th) = (theta_at(k, &iv.lo)?, theta_at(k, &iv.hi)?);
    if iv.lo == iv.hi {
        return Ok(tl == r2);
    }
    Ok(tl < r2 && th > r2)
}

/// Numerator of `theta'`: `numer' denom - numer denom'`.
pub fn theta_derivative_numerator(k: usize) -> Result<Poly> {
    check_supported_k(k)?;
    let (a, b) = theta_parts(k);
    Ok(&(&a.derivative() * &b) - &(&a * &b.derivative()))
}

/// True iff `theta'` has no zero on the closed interval `[lo, hi]`.
pub fn theta_derivative_nonzero_on(k: usize, iv: &RootInterval) -> Result<bool> {
    let d = theta_derivative_numerator(k)?;
    if d.sign_at(&iv.lo) == Ordering::Equal {
        return Ok(false);
    }
    Ok(SturmSequence::new(&d).count_roots(&iv.lo, &iv.hi) == 0)
}

/// `theta'(gamma_k) != 0`, certified on an isolating interval of width
/// `10^-12`.
pub fn theta_derivative_nonzero(k: usize) -> Result<bool> {
    let iv = dominant_singularity(k, &frac(1, 1_000_000_000_000))?;
    theta_derivative_nonzero_on(k, &iv)
}

/// `floor(x * 10^digits + 1/2)`: round half up, x ≥ 0.
fn scaled_round(x: &Rational, digits: u32) -> BigInt {
    let scale = Rational::from_integer(BigInt::from(10u32).pow(digits));
    (x * scale + frac(1, 2)).floor().to_integer()
}

fn format_scaled(n: &BigInt, digits: u32) -> String {
    if digits == 0 {
        return n.to_string();
    }
    let (int_part, frac_part) = n.div_rem(&BigInt::from(10u32).pow(digits));
    format!("{}.{:0>width$}", int_part, frac_part.to_string(), width = digits as usize)
}

/// `1/gamma_k` rounded half up to `digits` decimals, certified: the interval
/// is narrowed until both endpoints round the same way. Returns the decimal
/// string and the final interval.
pub fn certified_growth_rate(k: usize, digits: u32, max_width: &Rational) -> Result<(String, RootInterval)> {
    let mut tol = max_width.clone();
    let tenth = frac(1, 10);
    let floor = Rational::new(BigInt::from(1), BigInt::from(10u32).pow(digits + 60));
    let mut iv = dominant_singularity(k, &tol)?;
    loop {
        let a = scaled_round(&iv.hi.recip(), digits);
        let b = scaled_round(&iv.lo.recip(), digits);
        if a == b {
            return Ok((format_scaled(&a, digits), iv));
        }
        if tol < floor {
            return Err(Error::InsufficientRange(format!(
                "rounding of 1/gamma_{k} to {digits} digits undecided at width {tol}"
            )));
        }
        tol *= &tenth;
        iv = refine(&singularity_polynomial(k)?.squarefree(), iv, &tol).ok_or(Error::NoSingularity(k))?;
    }
}

/// Per-k asymptotic summary.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub k: usize,
    pub gamma_interval: (Rational, Rational),
    /// `1/gamma_k` to the requested number of decimals.
    pub growth_rate: String,
    pub theta_derivative_nonzero: bool,
    pub fitted_exponent: Option<f64>,
    pub fitted_constant: Option<f64>,
}

impl GrowthReport {
    pub fn gamma_f64(&self) -> f64 {
        rational_to_f64(&((&self.gamma_interval.0 + &self.gamma_interval.1) * frac(1, 2)))
    }

    /// The exponent `(k-1)^2 + (k-1)/2` in `n^(-theta)`.
    pub fn expected_exponent(&self) -> f64 {
        let j = (self.k - 1) as f64;
        j * j + j / 2.0
    }
}

/// The certified interval width every report is held to.
pub fn report_width() -> Rational {
    frac(1, 100_000_000)
}

pub fn growth_report(k: usize, digits: u32) -> Result<GrowthReport> {
    let (rate, iv) = certified_growth_rate(k, digits, &report_width())?;
    let nonzero = theta_derivative_nonzero_on(k, &iv)?;
    Ok(GrowthReport {
        k,
        gamma_interval: (iv.lo, iv.hi),
        growth_rate: rate,
        theta_derivative_nonzero: nonzero,
        fitted_exponent: None,
        fitted_constant: None,
    })
}

/// Reports for `k = 3..=k_max`. Fits are left empty; see [`attach_fits`].
pub fn growth_table(k_max: usize, digits: u32) -> Result<Vec<GrowthReport>> {
    if !(3..=crate::matchings::MAX_K).contains(&k_max) {
        return Err(Error::KOutOfRange(k_max));
    }
    (3..=k_max).map(|k| growth_report(k, digits)).collect()
}

/// Fills in the exponent and constant fits from the coefficients
/// `Q_k(0..=n_hi)`, using the expected exponent for the constant.
pub fn attach_fits(report: &mut GrowthReport, coeffs: &[BigInt], n_range: (usize, usize)) -> Result<()> {
    let g = report.gamma_f64();
    report.fitted_exponent = Some(subexp_fit(coeffs, g, n_range)?.value());
    report.fitted_constant = Some(constant_fit(coeffs, g, report.expected_exponent(), n_range)?.value());
    Ok(())
}

/// Floating roots of a polynomial by Durand-Kerner iteration.
///
/// Not certified. Used only as a diagnostic.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let Some(deg) = p.degree() else { return Vec::new() };
    let lc = rational_to_f64(p.leading().unwrap());
    let c: Vec<f64> = p.coeffs().iter().map(|a| rational_to_f64(a) / lc).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let zi = roots[i];
            let mut den = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    den *= zi - zj;
                }
            }
            let step = eval(zi) / den;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Heuristic check that `gamma_k` is the only solution of
/// `theta(z) = rho_k^2` of minimal modulus and that the denominator has no
/// smaller root. Not certified.
pub fn dominant_is_unique_heuristic(k: usize) -> Result<bool> {
    let g = rational_to_f64(&dominant_singularity(k, &frac(1, 1_000_000_000_000))?.midpoint());
    let eps = 1e-7;
    let p_roots = complex_roots(&singularity_polynomial(k)?);
    let on_circle = p_roots.iter().filter(|z| z.norm() < g * (1.0 + eps)).count();
    let poles = complex_roots(&base_denominator(k));
    Ok(on_circle == 1 && poles.iter().all(|z| z.norm() > g * (1.0 + eps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn polynomial_shapes() {
        let p2 = singularity_polynomial(2).unwrap();
        let d = Poly::from_i64(&[1, -1, -1, 1, 2, 0, 1]);
        let want = &Poly::from_terms(&[(4, 1), (6, -1), (8, 1)]) - &(&d * &d).scale(&frac(1, 4));
        assert_eq!(p2, want);
        for k in 3..=9 {
            assert_eq!(singularity_polynomial(k).unwrap().degree(), Some(24));
        }
        let p3 = singularity_polynomial(3).unwrap();
        assert_eq!(p3.coeff(0), frac(-1, 16));
        assert!(singularity_polynomial(1).is_err());
    }

    #[test]
    fn gamma_two() {
        let iv = dominant_singularity(2, &frac(1, 10_000_000_000)).unwrap();
        let g = rational_to_f64(&iv.midpoint());
        assert!((g - 0.540_856_577_5).abs() < 1e-9);
        assert!(crossing_certified(2, &iv).unwrap());
        let (rate, _) = certified_growth_rate(2, 4, &report_width()).unwrap();
        assert_eq!(rate, "1.8489");
    }

    #[test]
    fn nesting_under_smaller_tolerance() {
        let a = dominant_singularity(4, &frac(1, 1_000_000)).unwrap();
        let b = dominant_singularity(4, &frac(1, 10_000_000)).unwrap();
        assert!(a.lo <= b.lo && b.hi <= a.hi);
        let p = singularity_polynomial(4).unwrap().squarefree();
        assert_ne!(p.sign_at(&b.lo), p.sign_at(&b.hi));
    }

    #[test]
    fn derivative_certificates() {
        for k in [2, 3, 9] {
            assert!(theta_derivative_nonzero(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(format_scaled(&BigInt::from(25410), 4), "2.5410");
        assert_eq!(format_scaled(&BigInt::from(254), 2), "2.54");
        assert_eq!(format_scaled(&BigInt::from(3), 0), "3");
        assert_eq!(format_scaled(&BigInt::from(7), 3), "0.007");
        assert_eq!(scaled_round(&frac(5, 2), 0), BigInt::from(3));
        assert_eq!(scaled_round(&frac(249, 100), 1), BigInt::from(25));
    }

    #[test]
    fn heuristic_scan() {
        for k in [2, 3, 5] {
            assert!(dominant_is_unique_heuristic(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn theta_pole_detected() {
        assert!(theta_at(3, &int(0)).unwrap().is_zero());
        assert!(dominant_singularity(3, &int(0)).is_err());
    }
}
