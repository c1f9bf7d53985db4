use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Truncated formal power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
///
/// `N` is the truncation order and is inclusive: a series of order `N`
/// stores exactly `N + 1` coefficients. Binary operations on series of
/// different orders silently truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The polynomial `p` viewed as a series of the given order.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        PowerSeries::new((0..=order).map(|i| p.coeff(i)).collect())
    }

    /// Integer coefficients, zero-padded or truncated to `order`.
    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        PowerSeries::from_poly(&Poly::from_i64(coeffs), order)
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        PowerSeries::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `1 / (1 - z)` to the given order.
    pub fn geometric(order: usize) -> Self {
        PowerSeries::new(vec![Rational::one(); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`. Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient, `None` if every retained
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order`; a larger `order` is a no-op.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        PowerSeries::new(self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PowerSeries::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        PowerSeries::one(self.order()).try_div(self)
    }

    /// The series `q` with `q * divisor = self` up to the common order.
    pub fn try_div(&self, divisor: &PowerSeries) -> Result<Self> {
        let d0 = divisor.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let d0_inv = d0.recip();
        let n = self.order().min(divisor.order());
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for j in 1..=m {
                let d = &divisor.coeffs[j];
                if !d.is_zero() {
                    acc -= d * &q[m - j];
                }
            }
            q.push(acc * &d0_inv);
        }
        Ok(PowerSeries::new(q))
    }

    /// Product with a polynomial; keeps the order of `self`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in p.terms() {
            for m in i..=n {
                let a = &self.coeffs[m - i];
                if !a.is_zero() {
                    out[m] += c * a;
                }
            }
        }
        PowerSeries::new(out)
    }

    /// Quotient by a polynomial with nonzero constant term, computed by the
    /// linear recurrence the divisor induces. Costs `O(order * terms(p))`
    /// instead of a full series division.
    pub fn div_poly(&self, p: &Poly) -> Result<Self> {
        let p0 = p.coeff(0);
        if p0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let tail: Vec<(usize, &Rational)> = p.terms().filter(|&(i, _)| i > 0).collect();
        let p0_inv = p0.recip();
        let unit = p0_inv.is_one();
        let n = self.order();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for &(i, c) in &tail {
                if i > m {
                    break;
                }
                let prev = &q[m - i];
                if !prev.is_zero() {
                    acc -= c * prev;
                }
            }
            if !unit {
                acc *= &p0_inv;
            }
            q.push(acc);
        }
        Ok(PowerSeries::new(q))
    }

    /// Composition `self(inner(z))` by Horner's scheme.
    ///
    /// The inner series must have zero constant term. With `v` the valuation
    /// of `inner`, the result is exact to order
    /// `min(inner.order, (self.order + 1) * v - 1)`; in particular it is at
    /// least `min(self.order, inner.order)`.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let Some(v) = inner.valuation() else {
            let mut out = PowerSeries::zero(inner.order());
            out.coeffs[0] = self.coeffs[0].clone();
            return Ok(out);
        };
        let target = composed_order(self.order(), v, inner.order());
        let top = self.order().min(target / v);
        // Horner step j produces the partial sum starting at f_j, which is
        // only needed to order target - v*j.
        let mut acc = PowerSeries::new(vec![self.coeffs[top].clone()]);
        acc = acc.pad(target - v * top);
        for j in (0..top).rev() {
            let want = target - v * j;
            let mut next = vec![Rational::zero(); want + 1];
            for m in v..=want {
                let mut sum = Rational::zero();
                for i in v..=m {
                    let (g, a) = (&inner.coeffs[i], &acc.coeffs[m - i]);
                    if !g.is_zero() && !a.is_zero() {
                        sum += g * a;
                    }
                }
                next[m] = sum;
            }
            next[0] += &self.coeffs[j];
            acc = PowerSeries::new(next);
        }
        Ok(acc)
    }

    /// Composition `self(numer(z) / denom(z))` for an inner rational function.
    ///
    /// Each Horner step multiplies by `numer` and divides by `denom` through
    /// their sparse recurrences, so the cost is `O(order^2 / v)` coefficient
    /// operations times the number of terms of the two polynomials. Agrees
    /// with [`PowerSeries::compose`] applied to the expanded inner series.
    pub fn compose_rational(&self, numer: &Poly, denom: &Poly, order: usize) -> Result<Self> {
        if denom.coeff(0).is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let Some(v) = numer.valuation() else {
            let mut out = PowerSeries::zero(order);
            out.coeffs[0] = self.coeffs[0].clone();
            return Ok(out);
        };
        if v == 0 {
            return Err(Error::CompositionConstantTerm);
        }
        let target = composed_order(self.order(), v, order);
        let top = self.order().min(target / v);
        if let Some(out) = self.compose_rational_integral(numer, denom, v, top, target) {
            return Ok(out);
        }
        let mut acc = PowerSeries::new(vec![self.coeffs[top].clone()]).pad(target - v * top);
        for j in (0..top).rev() {
            let want = target - v * j;
            let mut next = acc.pad(want).mul_poly(numer).div_poly(denom)?;
            next.coeffs[0] += &self.coeffs[j];
            acc = next;
        }
        Ok(acc)
    }

    /// The same Horner scheme on plain integers, used when `self` is
    /// integral, both polynomials have small integer coefficients and
    /// `denom(0) = 1`. Returns `None` when those conditions fail.
    fn compose_rational_integral(
        &self,
        numer: &Poly,
        denom: &Poly,
        v: usize,
        top: usize,
        target: usize,
    ) -> Option<Self> {
        let small = |p: &Poly| -> Option<Vec<(usize, i64)>> {
            p.terms()
                .map(|(i, c)| if c.is_integer() { c.to_integer().to_i64().map(|c| (i, c)) } else { None })
                .collect()
        };
        let nt = small(numer)?;
        let dt = small(denom)?;
        if dt.first() != Some(&(0, 1)) || !self.coeffs[..=top].iter().all(|c| c.is_integer()) {
            return None;
        }
        let f: Vec<BigInt> = self.coeffs[..=top].iter().map(|c| c.to_integer()).collect();
        let mut acc = vec![f[top].clone()];
        for j in (0..top).rev() {
            let want = target - v * j;
            let mut next = vec![BigInt::zero(); want + 1];
            for &(i, c) in &nt {
                for (m, a) in acc.iter().enumerate() {
                    if m + i > want {
                        break;
                    }
                    if !a.is_zero() {
                        next[m + i] += a * c;
                    }
                }
            }
            for m in 1..=want {
                let (done, rest) = next.split_at_mut(m);
                for &(i, c) in &dt[1..] {
                    if i > m {
                        break;
                    }
                    let q = &done[m - i];
                    if !q.is_zero() {
                        rest[0] -= q * c;
                    }
                }
            }
            next[0] += &f[j];
            acc = next;
        }
        Some(PowerSeries::new(acc.into_iter().map(Rational::from_integer).collect()))
    }

    /// Coefficients as integers, failing on the first non-integral one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral(i))
                }
            })
            .collect()
    }

    /// Zero-extends (or truncates) to exactly `order`.
    fn pad(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries::new(coeffs)
    }
}

fn composed_order(outer_order: usize, valuation: usize, inner_order: usize) -> usize {
    let exact = (outer_order + 1).saturating_mul(valuation) - 1;
    inner_order.min(exact)
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    /// Cauchy product truncated to the smaller order.
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{frac, int};

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = PowerSeries::from_i64(&[1, 1], 2);
        let b = PowerSeries::from_i64(&[1, -1], 2);
        assert_eq!(ints(&(&a * &b)), vec![1, 0, -1]);
    }

    #[test]
    fn mul_convolution_of_ones() {
        let g = PowerSeries::geometric(3);
        assert_eq!(ints(&(&g * &g)), vec![1, 2, 3, 4]);
    }

    #[test]
    fn mul_catalan_prefix() {
        let e = PowerSeries::from_i64(&[1, 1, 2, 5], 3);
        assert_eq!(*(&e * &e).coeff(3), int(14));
    }

    #[test]
    fn mixed_orders_truncate_to_smaller() {
        let a = PowerSeries::geometric(5);
        let b = PowerSeries::geometric(2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn div_geometric_and_factorization() {
        let one = PowerSeries::one(4);
        let d = PowerSeries::from_i64(&[1, -1], 4);
        assert_eq!(ints(&one.try_div(&d).unwrap()), vec![1; 5]);
        let a = PowerSeries::from_i64(&[1, 0, -1], 3);
        assert_eq!(ints(&a.try_div(&d.truncate(3)).unwrap()), vec![1, 1, 0, 0]);
    }

    #[test]
    fn div_by_q_has_unit_linear_coefficient() {
        let q = Poly::from_i64(&[1, -1, -1, 1, 2, 0, 1, 0, -1, 0, 1, 0, -1]);
        let inv = PowerSeries::from_poly(&q, 10).inverse().unwrap();
        assert_eq!(*inv.coeff(1), int(1));
        let sparse = PowerSeries::one(10).div_poly(&q).unwrap();
        assert_eq!(inv, sparse);
    }

    #[test]
    fn div_rejects_zero_constant_term() {
        let d = PowerSeries::from_i64(&[0, 1], 3);
        assert_eq!(PowerSeries::one(3).try_div(&d), Err(Error::NonInvertibleSeries));
        assert_eq!(
            PowerSeries::one(3).div_poly(&Poly::from_i64(&[0, 1])),
            Err(Error::NonInvertibleSeries)
        );
    }

    #[test]
    fn div_handles_non_unit_constant() {
        let a = PowerSeries::one(3);
        let d = PowerSeries::from_i64(&[2], 3);
        assert_eq!(*a.try_div(&d).unwrap().coeff(0), frac(1, 2));
        assert_eq!(*a.div_poly(&Poly::from_i64(&[2, 1])).unwrap().coeff(1), frac(-1, 4));
    }

    #[test]
    fn compose_geometric_in_z_squared() {
        let f = PowerSeries::geometric(5);
        let g = PowerSeries::from_i64(&[0, 0, 1], 5);
        assert_eq!(ints(&f.compose(&g).unwrap()), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn compose_with_identity() {
        let f = PowerSeries::from_i64(&[3, -1, 4, 1, 5], 4);
        let g = PowerSeries::from_i64(&[0, 1], 4);
        assert_eq!(f.compose(&g).unwrap(), f);
    }

    #[test]
    fn compose_catalan_with_z_plus_z2() {
        let f = PowerSeries::from_i64(&[1, 1, 2, 5, 14], 4);
        let g = PowerSeries::from_i64(&[0, 1, 1], 4);
        assert_eq!(*f.compose(&g).unwrap().coeff(2), int(3));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let f = PowerSeries::geometric(3);
        let g = PowerSeries::from_i64(&[1, 1], 3);
        assert_eq!(f.compose(&g), Err(Error::CompositionConstantTerm));
        assert_eq!(
            f.compose_rational(&Poly::from_i64(&[1, 1]), &Poly::one(), 3),
            Err(Error::CompositionConstantTerm)
        );
    }

    #[test]
    fn compose_order_uses_inner_valuation() {
        // f known to order 2, inner of valuation 4: f(g) is exact to z^11.
        let f = PowerSeries::from_i64(&[1, 1, 1], 2);
        let g = PowerSeries::from_i64(&[0, 0, 0, 0, 1], 20);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.order(), 11);
        assert_eq!(*h.coeff(8), int(1));
    }

    #[test]
    fn compose_rational_matches_expanded_inner() {
        let f = PowerSeries::from_i64(&[1, 1, 2, 5, 14, 42, 132, 429], 7);
        let num = Poly::from_i64(&[0, 0, 1, -1, 1]);
        let den = Poly::from_i64(&[1, -1, -1, 1, 2, 0, 1]);
        let inner = PowerSeries::from_poly(&num, 14).div_poly(&den).unwrap();
        assert_eq!(
            f.compose_rational(&num, &den, 14).unwrap(),
            f.compose(&inner).unwrap()
        );
    }

    #[test]
    fn integer_and_rational_paths_agree() {
        let num = Poly::from_i64(&[0, 0, 0, 0, 1, 0, -1, 0, 1]);
        let den = Poly::from_i64(&[1, -1, -1, 1, 2, 0, 1]).pow(2);
        let f = PowerSeries::from_i64(&[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862], 9);
        let fast = f.compose_rational(&num, &den, 40).unwrap();
        // A non-integral outer series takes the general path; scaling back
        // must give the same result.
        let half = frac(1, 2);
        let slow = f.scale(&half).compose_rational(&num, &den, 40).unwrap().scale(&int(2));
        assert_eq!(fast, slow);
    }

    #[test]
    fn integrality_is_checked() {
        let s = PowerSeries::new(vec![int(1), frac(1, 2)]);
        assert_eq!(s.to_integers(), Err(Error::NonIntegral(1)));
    }
}
