//! Exact real root counting and isolation.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::series::{frac, Poly, Rational};

/// Sturm sequence of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
}

fn normalized(p: Poly) -> Poly {
    match p.leading() {
        Some(lc) => {
            let s = lc.abs().recip();
            p.scale(&s)
        }
        None => p,
    }
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Self {
        let p0 = normalized(p.squarefree());
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = normalized(p0.derivative());
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = normalized(-&r);
        }
        SturmSequence { chain }
    }

    /// The squarefree polynomial the sequence starts from.
    pub fn base(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }
}

/// Cauchy bound: every real root has absolute value below it.
pub fn root_bound(p: &Poly) -> Rational {
    let Some(lc) = p.leading() else {
        return Rational::one();
    };
    let lc = lc.abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// An interval `(lo, hi]` containing exactly one root of a squarefree
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * frac(1, 2)
    }
}

/// Smallest root of `p` in `(0, bound]`, narrowed to width at most `tol`.
///
/// Root counting brackets the smallest root; once it is isolated, plain
/// sign bisection on the squarefree part finishes the job. If a bisection
/// point happens to be the root itself, the interval collapses onto it.
pub fn smallest_positive_root(p: &Poly, tol: &Rational) -> Option<RootInterval> {
    let sturm = SturmSequence::new(p);
    let zero = Rational::zero();
    let mut hi = root_bound(sturm.base());
    if sturm.count_roots(&zero, &hi) == 0 {
        return None;
    }
    let mut lo = zero.clone();
    let half = frac(1, 2);
    while sturm.count_roots(&lo, &hi) > 1 {
        let mid = (&lo + &hi) * &half;
        if sturm.count_roots(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let q = sturm.base();
    if q.sign_at(&hi) == Ordering::Equal {
        return Some(RootInterval { lo: hi.clone(), hi });
    }
    refine(q, RootInterval { lo, hi }, tol)
}

/// Bisects an interval `(lo, hi]` holding exactly one simple root of the
/// squarefree polynomial `q` until its width is at most `tol`.
pub fn refine(q: &Poly, mut iv: RootInterval, tol: &Rational) -> Option<RootInterval> {
    let half = frac(1, 2);
    let s_hi = q.sign_at(&iv.hi);
    while iv.width() > *tol {
        let mid = (&iv.lo + &iv.hi) * &half;
        match q.sign_at(&mid) {
            Ordering::Equal => return Some(RootInterval { lo: mid.clone(), hi: mid }),
            s if s == s_hi => iv.hi = mid,
            _ => iv.lo = mid,
        }
    }
    Some(iv)
}
