//! Generating functions of modular diagrams.
//!
//! `Q_2` and `Q_k` (k >= 3) come from composing `F_k` with a rational
//! function. The inflation building blocks are assembled separately from
//! their class decompositions so the closed forms can be cross-checked
//! against shape sums.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matchings::{self, check_supported_k};
use crate::series::{int, Poly, PowerSeries, Rational};
use crate::shape_gf;

/// Inflation series, each expanded to the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingBlocks {
    /// Runs of isolated vertices, `1/(1-z)`.
    pub l: PowerSeries,
    /// Stacks, `z^4/(1-z^2)`.
    pub k: PowerSeries,
    /// Induced stacks, `K (2zL + (zL)^2)`.
    pub n: PowerSeries,
    /// Stems, `K/(1-N)`.
    pub m: PowerSeries,
    pub c1: PowerSeries,
    pub c2: PowerSeries,
    pub c3: PowerSeries,
    pub c4: PowerSeries,
    /// `sigma[0..5]`, the simplified per-class factors.
    pub sigma: [PowerSeries; 5],
}

fn series(terms: &[(usize, i64)], order: usize) -> PowerSeries {
    PowerSeries::from_poly(&Poly::from_terms(terms), order)
}

fn over(numer: &[(usize, i64)], denom: &[(usize, i64)], order: usize) -> PowerSeries {
    series(numer, order)
        .div_poly(&Poly::from_terms(denom))
        .expect("denominators here have constant term one")
}

/// The closed forms of the five `sigma` factors.
pub fn sigma_forms(order: usize) -> [PowerSeries; 5] {
    [
        over(&[(4, 1)], &[(0, 1), (1, -2), (3, 2), (4, -1), (5, -2), (6, 1)], order),
        series(&[(3, 1)], order),
        over(
            &[(1, 1), (4, -4), (5, 2), (6, 8), (7, -6), (8, -7), (9, 8), (10, 2), (11, -4), (12, 1)],
            &[(0, 1), (1, -1)],
            order,
        ),
        series(&[(1, 2), (3, -2), (4, 1), (5, 2), (6, -1)], order),
        series(&[(2, 5), (3, -4), (4, -3), (5, 6), (6, 2), (7, -4), (8, 1)], order),
    ]
}

pub fn building_blocks(order: usize) -> BuildingBlocks {
    let one = PowerSeries::one(order);
    let z = series(&[(1, 1)], order);
    let z4 = series(&[(4, 1)], order);
    let l = PowerSeries::geometric(order);
    let k = over(&[(4, 1)], &[(0, 1), (2, -1)], order);
    let zl = &z * &l;
    let n = &k * &(&zl.scale(&int(2)) + &(&zl * &zl));
    let m = k.try_div(&(&one - &n)).expect("1 - N is invertible");
    let m_dag = &m - &z4;
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    let l4 = &l2 * &l2;
    let l2m1 = &l2 - &one;

    let c1 = over(&[(3, 1)], &[(0, 1), (1, -1)], order);
    let c2a = &series(&[(8, 1)], order) * &(&(&l3 - &one) - &zl.scale(&int(2)));
    let c2b = &(&(&z4 * &m_dag) * &l2m1) * &l;
    let c2b = c2b.scale(&int(2));
    let c2c = &(&m_dag * &m_dag) * &l3;
    let c2 = &(&c2a + &c2b) + &c2c;
    let c3 = &(&z4 * &l2m1) + &(&m_dag * &l2);
    let c4 = &(&z4 * &(&l2m1 * &l2m1)) + &(&m_dag * &l4);

    BuildingBlocks { l, k, n, m, c1, c2, c3, c4, sigma: sigma_forms(order) }
}

/// Result of comparing both sides of the sigma identity tuple by tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaReport {
    pub checked: usize,
    pub skipped: usize,
    /// Tuples `(s, u1, u2, u3, u4)` where the two sides differ.
    pub failures: Vec<[u32; 5]>,
}

impl SigmaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Powers {
    base: PowerSeries,
    cache: Vec<PowerSeries>,
}

impl Powers {
    fn new(base: &PowerSeries) -> Self {
        Powers { base: base.clone(), cache: vec![PowerSeries::one(base.order())] }
    }

    fn get(&mut self, e: usize) -> &PowerSeries {
        while self.cache.len() <= e {
            let next = &self.cache[self.cache.len() - 1] * &self.base;
            self.cache.push(next);
        }
        &self.cache[e]
    }
}

/// Checks, for every tuple with `s <= s_max` whose `M` and `L` exponents
/// are nonnegative,
///
/// `C1^u1 C2^u2 C3^u3 C4^u4 M^(s-2u2-u3-u4) L^(2s+1-u1-3u2-2u3-4u4)
///   = L sigma0^s sigma1^u1 sigma2^u2 sigma3^u3 sigma4^u4`.
pub fn check_sigma_identity(blocks: &BuildingBlocks, s_max: u32) -> SigmaReport {
    let mut report = SigmaReport::default();
    let mut c: Vec<Powers> = [&blocks.c1, &blocks.c2, &blocks.c3, &blocks.c4].map(Powers::new).into();
    let mut m = Powers::new(&blocks.m);
    let mut l = Powers::new(&blocks.l);
    let mut sg: Vec<Powers> = blocks.sigma.iter().map(Powers::new).collect();
    for s in 0..=s_max as i64 {
        let top = 2 * s + 1;
        for u1 in 0..=top {
            for u2 in 0..=top {
                for u3 in 0..=top {
                    for u4 in 0..=top {
                        let em = s - 2 * u2 - u3 - u4;
                        let el = 2 * s + 1 - u1 - 3 * u2 - 2 * u3 - 4 * u4;
                        if em < 0 || el < 0 {
                            report.skipped += 1;
                            continue;
                        }
                        let u = [u1, u2, u3, u4].map(|x| x as usize);
                        let mut lhs = m.get(em as usize) * l.get(el as usize);
                        for (p, &e) in c.iter_mut().zip(&u) {
                            lhs = &lhs * p.get(e);
                        }
                        let mut rhs = &blocks.l * sg[0].get(s as usize);
                        for (p, &e) in sg[1..].iter_mut().zip(&u) {
                            rhs = &rhs * p.get(e);
                        }
                        report.checked += 1;
                        if lhs != rhs {
                            report.failures.push([s as u32, u1 as u32, u2 as u32, u3 as u32, u4 as u32]);
                        }
                    }
                }
            }
        }
    }
    report
}

pub fn verify_sigma_identity(s_max: u32, order: usize) -> bool {
    check_sigma_identity(&building_blocks(order), s_max).holds()
}

/// `prefactor/denom * F_k(arg_numer/denom^2)`, the common shape of both
/// closed forms, expanded to `order`.
fn composed(k: usize, order: usize, pre: &Poly, arg_numer: &Poly, denom: &Poly) -> Result<PowerSeries> {
    let v = arg_numer.valuation().expect("nonzero argument");
    let f = matchings::fk_series(k, order / v)?;
    let inner = f.compose_rational(arg_numer, &(denom * denom), order)?;
    inner.mul_poly(pre).div_poly(denom)
}

pub(crate) fn q2_denominator() -> Poly {
    Poly::from_terms(&[(0, 1), (1, -1), (2, -1), (3, 1), (4, 2), (6, 1)])
}

pub(crate) fn qk_denominator() -> Poly {
    Poly::from_terms(&[(0, 1), (1, -1), (2, -1), (3, 1), (4, 2), (6, 1), (8, -1), (10, 1), (12, -1)])
}

fn prefactor() -> Poly {
    Poly::from_terms(&[(0, 1), (2, -1), (4, 1)])
}

/// Numerator and denominator of the argument of `F_k` in `Q_2`.
pub fn theta2() -> (Poly, Poly) {
    (Poly::from_terms(&[(4, 1), (6, -1), (8, 1)]), q2_denominator().pow(2))
}

/// Numerator and denominator of the argument of `F_k` in `Q_k`, k >= 3.
pub fn thetak() -> (Poly, Poly) {
    let numer = Poly::from_terms(&[(4, 1), (6, -1), (8, -1), (10, 2), (12, -1)]);
    (numer, qk_denominator().pow(2))
}

/// `Q_2(z) = (1-z^2+z^4)/d * F_2((z^4-z^6+z^8)/d^2)` with
/// `d = 1-z-z^2+z^3+2z^4+z^6`.
pub fn q2_series(order: usize) -> Result<PowerSeries> {
    composed(2, order, &prefactor(), &theta2().0, &q2_denominator())
}

/// The general closed form with `k` unchecked; for `k = 2` it does not
/// count modular diagrams.
fn qk_formula(k: usize, order: usize) -> Result<PowerSeries> {
    composed(k, order, &prefactor(), &thetak().0, &qk_denominator())
}

/// `Q_k(z) = (1-z^2+z^4)/q * F_k(z^4(1-z^2-z^4+2z^6-z^8)/q^2)` with
/// `q = 1-z-z^2+z^3+2z^4+z^6-z^8+z^10-z^12`.
pub fn qk_series(k: usize, order: usize) -> Result<PowerSeries> {
    check_supported_k(k)?;
    if k == 2 {
        return Err(Error::UnsupportedK { k, reason: "the general formula does not hold for k=2; use q2_series" });
    }
    qk_formula(k, order)
}

/// `Q_k` for any supported k, dispatching to the right closed form.
pub fn modular_series(k: usize, order: usize) -> Result<PowerSeries> {
    if k == 2 {
        q2_series(order)
    } else {
        qk_series(k, order)
    }
}

/// The general closed form evaluated at `k = 2`, which differs from `Q_2`.
pub fn general_formula_at_k2(order: usize) -> Result<PowerSeries> {
    qk_formula(2, order)
}

/// Smallest `n <= order` at which `Q_2` differs from the general formula
/// evaluated at `k = 2`.
pub fn remark_mismatch(order: usize) -> Result<Option<usize>> {
    let a = q2_series(order)?;
    let b = qk_formula(2, order)?;
    Ok((0..=order).find(|&n| a.coeff(n) != b.coeff(n)))
}

/// `Q_2` rebuilt from the shape table:
/// `sum i_2(s, m) eta^s (z^3)^m / (1-z)` with
/// `eta = z^4/((1-z^2)(1-z)^2 - (2z-z^2) z^4)`.
pub fn q2_from_shapes(order: usize) -> Result<PowerSeries> {
    let s_max = (order / 4) as u32;
    let table = shape_gf::ik_bivariate(2, s_max)?;
    let d = &(&Poly::from_terms(&[(0, 1), (2, -1)]) * &Poly::from_terms(&[(0, 1), (1, -1)]).pow(2))
        - &Poly::from_terms(&[(5, 2), (6, -1)]);
    let eta = series(&[(4, 1)], order).div_poly(&d)?;
    let z3 = series(&[(3, 1)], order);
    let mut eta_p = Powers::new(&eta);
    let mut z3_p = Powers::new(&z3);
    let mut acc = PowerSeries::zero(order);
    for (key, c) in table.entries() {
        let term = eta_p.get(key[0] as usize) * z3_p.get(key[1] as usize);
        acc = &acc + &term.scale(&Rational::from_integer(c.clone()));
    }
    Ok(&acc * &PowerSeries::geometric(order))
}

/// `Q_k` rebuilt from the colored shape table by inflating every class:
/// `sum i_k(s,u) C1^u1 C2^u2 C3^u3 C4^u4 M^(s-2u2-u3-u4) L^(2s+1-u1-3u2-2u3-4u4)`.
pub fn qk_from_colored_shapes(k: usize, order: usize) -> Result<PowerSeries> {
    let s_max = (order / 4) as u32;
    let table = shape_gf::ik_colored(k, s_max)?;
    let b = building_blocks(order);
    let mut c: Vec<Powers> = [&b.c1, &b.c2, &b.c3, &b.c4].map(Powers::new).into();
    let mut m = Powers::new(&b.m);
    let mut l = Powers::new(&b.l);
    let mut acc = PowerSeries::zero(order);
    for (key, count) in table.entries() {
        let [s, u1, u2, u3, u4] = key.map(|x| x as i64);
        let em = s - 2 * u2 - u3 - u4;
        let el = 2 * s + 1 - u1 - 3 * u2 - 2 * u3 - 4 * u4;
        if em < 0 || el < 0 {
            return Err(Error::InvalidArgument(format!("shape class {key:?} outside the support")));
        }
        let mut term = m.get(em as usize) * l.get(el as usize);
        for (p, e) in c.iter_mut().zip([u1, u2, u3, u4]) {
            term = &term * p.get(e as usize);
        }
        acc = &acc + &term.scale(&Rational::from_integer(count.clone()));
    }
    Ok(acc)
}

/// True when every coefficient is a nonnegative integer.
pub fn is_counting_series(s: &PowerSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}
