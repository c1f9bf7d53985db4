use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent tuple `(e_x, e_y, e_z, e_w, e_t)`.
pub type Exponents = [u32; 5];

/// The five markers of a [`MultiPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Marker {
    X = 0,
    Y = 1,
    Z = 2,
    W = 3,
    T = 4,
}

/// Sparse polynomial in the markers `x, y, z, w, t`, truncated in `x`.
///
/// Terms with `e_x > xbound` are dropped on construction and after every
/// product, which makes this a power series in `x` whose coefficients are
/// polynomials in the other four markers. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Rational>,
    xbound: u32,
}

impl MultiPoly {
    pub fn zero(xbound: u32) -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            xbound,
        }
    }

    pub fn constant(c: Rational, xbound: u32) -> Self {
        MultiPoly::monomial(c, [0; 5], xbound)
    }

    pub fn one(xbound: u32) -> Self {
        MultiPoly::constant(Rational::one(), xbound)
    }

    pub fn monomial(c: Rational, exps: Exponents, xbound: u32) -> Self {
        let mut p = MultiPoly::zero(xbound);
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from integer-coefficient terms.
    pub fn from_terms(terms: &[(i64, Exponents)], xbound: u32) -> Self {
        let mut p = MultiPoly::zero(xbound);
        for &(c, e) in terms {
            p.add_term(e, super::int(c));
        }
        p
    }

    pub fn xbound(&self) -> u32 {
        self.xbound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &Exponents) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// True when every term carries at least one power of `x`.
    pub fn is_x_positive(&self) -> bool {
        self.terms.keys().all(|e| e[0] >= 1)
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if exps[0] > self.xbound || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = MultiPoly::zero(self.xbound);
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    /// Restrict to a smaller `x` bound.
    pub fn truncate_x(&self, xbound: u32) -> Self {
        let mut out = MultiPoly::zero(xbound.min(self.xbound));
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(self.xbound);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces a marker by a rational value.
    pub fn substitute(&self, marker: Marker, value: &Rational) -> Self {
        let slot = marker as usize;
        let mut out = MultiPoly::zero(self.xbound);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = std::mem::take(&mut e2[slot]);
            let factor = num_traits::pow(value.clone(), k as usize);
            out.add_term(e2, c * factor);
        }
        out
    }

    /// Multiplicative inverse, as a power series in `x`.
    ///
    /// The `x`-free part must be a nonzero constant `c`; writing
    /// `self = c (1 + h)` with `h` x-positive, the inverse is
    /// `c^{-1} (1 - h + h^2 - ...)`, a finite sum below `xbound`.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.coeff(&[0; 5]);
        if c.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        if self.terms.keys().any(|e| e[0] == 0 && *e != [0; 5]) {
            return Err(Error::NonInvertibleSeries);
        }
        let c_inv = c.recip();
        let mut neg_h = self.scale(&c_inv);
        neg_h.add_term([0; 5], -Rational::one());
        let neg_h = -&neg_h;
        let mut acc = MultiPoly::one(self.xbound);
        for _ in 0..self.xbound {
            acc = &(&acc * &neg_h) + &MultiPoly::one(self.xbound);
        }
        Ok(acc.scale(&c_inv))
    }

    /// `sum_n fcoeffs[n] * arg^n`, truncated at `xbound`.
    ///
    /// `arg` must be x-positive, so only the first `xbound + 1` coefficients
    /// contribute and the sum is finite. Coefficients beyond the end of
    /// `fcoeffs` are read as zero; callers supply enough of them.
    pub fn series_in_poly(fcoeffs: &[Rational], arg: &MultiPoly) -> Result<MultiPoly> {
        if !arg.is_x_positive() {
            return Err(Error::ArgumentNotXPositive);
        }
        let xb = arg.xbound;
        let top = fcoeffs.len().min(xb as usize + 1);
        let mut acc = MultiPoly::zero(xb);
        for c in fcoeffs[..top].iter().rev() {
            acc = &acc * arg;
            acc.add_term([0; 5], c.clone());
        }
        Ok(acc)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.truncate_x(rhs.xbound);
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let xb = self.xbound.min(rhs.xbound);
        let mut out = MultiPoly::zero(xb);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                if ea[0] + eb[0] > xb {
                    continue;
                }
                let e = std::array::from_fn(|i| ea[i] + eb[i]);
                out.add_term(e, a * b);
            }
        }
        out
    }
}
