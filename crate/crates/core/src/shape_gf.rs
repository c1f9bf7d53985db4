//! Shape generating functions.
//!
//! Three nested tables of `V_k`-shape counts, each extracted from a closed
//! form `prefactor * F_k(arg)` expanded as a [`MultiPoly`]:
//!
//! * `I_k(x, y)`, with `y` marking 1-arcs;
//! * `W_k(x, y, z)`, adding `z` for crossing pairs of 2-arcs;
//! * `I_k(x, y, z, w, t)`, adding `w` and `t` for the classes `C_3`, `C_4`.
//!
//! Table keys are exponent tuples `(s, u1, u2, u3, u4)`, which coincide with
//! the marker slots `(x, y, z, w, t)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matchings::{self, check_supported_k};
use crate::oracle;
use crate::series::{Marker, MultiPoly, Rational};

pub type ShapeKey = [u32; 5];

/// Shape counts indexed by `(s, u1, u2, u3, u4)`, truncated at `s <= s_max`.
///
/// `arity` is the number of meaningful index components (2, 3 or 5); the
/// remaining components are always zero. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeTable {
    k: usize,
    s_max: u32,
    arity: usize,
    entries: BTreeMap<ShapeKey, BigInt>,
}

impl ShapeTable {
    fn from_multipoly(k: usize, arity: usize, p: &MultiPoly) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (e, c) in p.terms() {
            if !c.is_integer() {
                return Err(Error::NonIntegral(e[0] as usize));
            }
            entries.insert(*e, c.to_integer());
        }
        Ok(ShapeTable { k, s_max: p.xbound(), arity, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &BTreeMap<ShapeKey, BigInt> {
        &self.entries
    }

    pub fn get(&self, key: &ShapeKey) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lookup with signed indices; any negative component reads as zero.
    /// Missing trailing components are zero.
    pub fn at(&self, idx: &[i64]) -> BigInt {
        if idx.iter().any(|&i| i < 0) {
            return BigInt::zero();
        }
        let mut key = [0u32; 5];
        for (slot, &i) in key.iter_mut().zip(idx) {
            *slot = i as u32;
        }
        self.get(&key)
    }

    /// Sums out every index component beyond the first `arity`.
    pub fn marginal(&self, arity: usize) -> ShapeTable {
        let mut entries: BTreeMap<ShapeKey, BigInt> = BTreeMap::new();
        for (key, c) in &self.entries {
            let mut k2 = *key;
            k2[arity..].iter_mut().for_each(|e| *e = 0);
            *entries.entry(k2).or_insert_with(BigInt::zero) += c;
        }
        entries.retain(|_, c| !c.is_zero());
        ShapeTable { k: self.k, s_max: self.s_max, arity, entries }
    }

    /// Restricts to `s <= s_max`.
    pub fn truncate(&self, s_max: u32) -> ShapeTable {
        let entries = self.entries.iter().filter(|(e, _)| e[0] <= s_max).map(|(e, c)| (*e, c.clone())).collect();
        ShapeTable { k: self.k, s_max: s_max.min(self.s_max), arity: self.arity, entries }
    }

    /// True when every entry is a nonnegative integer inside
    /// `u1 + 2 u2 + 2 u3 + 3 u4 <= s`.
    pub fn within_support(&self) -> bool {
        self.entries
            .iter()
            .all(|(e, c)| !c.is_negative() && e[1] + 2 * e[2] + 2 * e[3] + 3 * e[4] <= e[0])
    }

    /// Total number of shapes with `s` arcs.
    pub fn shapes_with(&self, s: u32) -> BigInt {
        self.entries.iter().filter(|(e, _)| e[0] == s).map(|(_, c)| c).sum()
    }
}

const X: ShapeKey = [1, 0, 0, 0, 0];

fn fk_coeffs(k: usize, s_max: u32) -> Result<Vec<Rational>> {
    Ok(matchings::fk_series(k, s_max as usize)?.coeffs().to_vec())
}

/// `(1 + x) / den * F_k(x * numer_tail / den^2)` where `numer_tail` is
/// the factor multiplying `x` in the argument.
fn assemble(k: usize, s_max: u32, den: &MultiPoly, numer_tail: &MultiPoly) -> Result<MultiPoly> {
    let inv = den.inverse()?;
    let xpoly = MultiPoly::monomial(Rational::one(), X, s_max);
    let arg = &(&xpoly * numer_tail) * &(&inv * &inv);
    let inner = MultiPoly::series_in_poly(&fk_coeffs(k, s_max)?, &arg)?;
    let pre = &(&MultiPoly::one(s_max) + &xpoly) * &inv;
    Ok(&pre * &inner)
}

/// `i_k(s, u1)` from `I_k(x, y) = (1+x)/(1+2x-xy) * F_k(x(1+x)/(1+2x-xy)^2)`.
pub fn ik_bivariate(k: usize, s_max: u32) -> Result<ShapeTable> {
    check_supported_k(k)?;
    let den = MultiPoly::from_terms(&[(1, [0; 5]), (2, [1, 0, 0, 0, 0]), (-1, [1, 1, 0, 0, 0])], s_max);
    let tail = MultiPoly::from_terms(&[(1, [0; 5]), (1, [1, 0, 0, 0, 0])], s_max);
    ShapeTable::from_multipoly(k, 2, &assemble(k, s_max, &den, &tail)?)
}

/// `i_k(s, u1, u2)` from `W_k = (1+x) v F_k(x(1+x) v^2)` with
/// `v = 1/((1-z)x^3 + (1-z)x^2 + (2-y)x + 1)`; here `z` marks `u2`.
pub fn wk_trivariate(k: usize, s_max: u32) -> Result<ShapeTable> {
    check_supported_k(k)?;
    if k == 2 {
        return Err(Error::UnsupportedK { k, reason: "formula valid only for k>2" });
    }
    let den = MultiPoly::from_terms(
        &[
            (1, [0; 5]),
            (2, [1, 0, 0, 0, 0]),
            (-1, [1, 1, 0, 0, 0]),
            (1, [2, 0, 0, 0, 0]),
            (-1, [2, 0, 1, 0, 0]),
            (1, [3, 0, 0, 0, 0]),
            (-1, [3, 0, 1, 0, 0]),
        ],
        s_max,
    );
    let tail = MultiPoly::from_terms(&[(1, [0; 5]), (1, [1, 0, 0, 0, 0])], s_max);
    ShapeTable::from_multipoly(k, 3, &assemble(k, s_max, &den, &tail)?)
}

/// `i_k(s, u1, u2, u3, u4)` from
/// `I_k = (1+x)/theta * F_k(x(1 + (2w-1)x + (t-1)x^2)/theta^2)` with
/// `theta = 1 - (y-2)x + (2w-z-1)x^2 + (2w-z-1)x^3`.
pub fn ik_colored(k: usize, s_max: u32) -> Result<ShapeTable> {
    check_supported_k(k)?;
    if k == 2 {
        return Err(Error::UnsupportedK { k, reason: "colored shape formula does not hold for k=2" });
    }
    let mut terms = vec![(1, [0; 5]), (2, [1, 0, 0, 0, 0]), (-1, [1, 1, 0, 0, 0])];
    for d in [2, 3] {
        terms.extend([(2, [d, 0, 0, 1, 0]), (-1, [d, 0, 1, 0, 0]), (-1, [d, 0, 0, 0, 0])]);
    }
    let theta = MultiPoly::from_terms(&terms, s_max);
    let tail = MultiPoly::from_terms(
        &[(1, [0; 5]), (2, [1, 0, 0, 1, 0]), (-1, [1, 0, 0, 0, 0]), (1, [2, 0, 0, 0, 1]), (-1, [2, 0, 0, 0, 0])],
        s_max,
    );
    ShapeTable::from_multipoly(k, 5, &assemble(k, s_max, &theta, &tail)?)
}

/// Sets the given markers to one in an expanded table. Used for the
/// specialization identities, which act on the expansion and not on the
/// closed form.
pub fn specialize(table: &ShapeTable, markers: &[Marker], arity: usize) -> ShapeTable {
    let mut p = MultiPoly::zero(table.s_max);
    for (e, c) in &table.entries {
        p = &p + &MultiPoly::monomial(Rational::from_integer(c.clone()), *e, table.s_max);
    }
    for &m in markers {
        p = p.substitute(m, &Rational::one());
    }
    let mut entries = BTreeMap::new();
    for (e, c) in p.terms() {
        entries.insert(*e, c.to_integer());
    }
    ShapeTable { k: table.k, s_max: table.s_max, arity, entries }
}

/// The colored table counted by brute force: every `V_k`-shape with at most
/// `s_max` arcs, classified by [`oracle::color_stats`].
pub fn census_table(k: usize, s_max: u32) -> ShapeTable {
    let entries = oracle::colored_census(k, s_max as usize)
        .into_iter()
        .map(|(st, n)| (st.as_array(), BigInt::from(n)))
        .collect();
    ShapeTable { k, s_max, arity: 5, entries }
}

/// Outcome of checking a recursion on every index tuple in range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionReport {
    pub checked: usize,
    pub failures: Vec<ShapeKey>,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, key: ShapeKey, lhs: BigInt, rhs: BigInt) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(key);
        }
    }
}

fn check_table(table: &ShapeTable, s_max: u32, arity: usize) -> Result<()> {
    if table.arity < arity || table.s_max < s_max + 1 {
        return Err(Error::InsufficientRange(format!(
            "recursion up to s={s_max} needs an arity-{arity} table to s={}",
            s_max + 1
        )));
    }
    Ok(())
}

/// `(u2+1) i(s+1,u1,u2+1) = (u1+1) i(s,u1+1,u2) + (u1+1) i(s-1,u1+1,u2)`
/// for all `s <= s_max`. Index components range past the support so the
/// vanishing region is covered too.
pub fn check_recursion_u2(table: &ShapeTable, s_max: u32) -> Result<RecursionReport> {
    check_table(table, s_max, 3)?;
    let mut report = RecursionReport::default();
    for s in 0..=s_max as i64 {
        for u1 in 0..=s + 1 {
            for u2 in 0..=s + 1 {
                let i = |a: i64, b: i64, c: i64| table.at(&[a, b, c]);
                let lhs = (u2 + 1) * i(s + 1, u1, u2 + 1);
                let rhs = (u1 + 1) * i(s, u1 + 1, u2) + (u1 + 1) * i(s - 1, u1 + 1, u2);
                report.record([s as u32, u1 as u32, u2 as u32, 0, 0], lhs, rhs);
            }
        }
    }
    Ok(report)
}

fn for_each_colored_tuple(s_max: u32, mut f: impl FnMut([i64; 5])) {
    for s in 0..=s_max as i64 {
        let top = s + 1;
        for u1 in 0..=top {
            for u2 in 0..=top {
                for u3 in 0..=top {
                    for u4 in 0..=top {
                        f([s, u1, u2, u3, u4]);
                    }
                }
            }
        }
    }
}

fn key_of(t: [i64; 5]) -> ShapeKey {
    t.map(|v| v as u32)
}

/// The 18-term recursion for `(u3+1) i(s+1, u1, u2, u3+1, u4)`.
pub fn check_recursion_u3(table: &ShapeTable, s_max: u32) -> Result<RecursionReport> {
    check_table(table, s_max, 5)?;
    let mut report = RecursionReport::default();
    for_each_colored_tuple(s_max, |[s, u1, u2, u3, u4]| {
        let i = |a: i64, b: i64, c: i64, d: i64, e: i64| table.at(&[a, b, c, d, e]);
        let lhs = (u3 + 1) * i(s + 1, u1, u2, u3 + 1, u4);
        let slack = |t: i64| BigInt::from(2 * t - 2 * u1 - 4 * u2 - 4 * u3 - 6 * u4);
        let terms: [BigInt; 18] = [
            2 * u1 * i(s - 1, u1, u2, u3, u4),
            4 * (u2 + 1) * i(s - 1, u1, u2 + 1, u3, u4),
            4 * (u2 + 1) * i(s - 1, u1, u2 + 1, u3 - 1, u4),
            4 * (u2 + 1) * i(s - 2, u1, u2 + 1, u3 - 1, u4),
            2 * (u3 + 1) * i(s, u1, u2, u3 + 1, u4),
            2 * u3 * i(s - 1, u1, u2, u3, u4),
            6 * (u3 + 1) * i(s - 1, u1, u2, u3 + 1, u4),
            2 * (u3 + 1) * i(s - 2, u1, u2, u3 + 1, u4),
            2 * u3 * i(s - 2, u1, u2, u3, u4),
            4 * (u4 + 1) * i(s, u1, u2, u3 - 1, u4 + 1),
            4 * (u4 + 1) * i(s - 1, u1, u2, u3 - 1, u4 + 1),
            4 * u4 * i(s - 1, u1, u2, u3, u4),
            4 * (u4 + 1) * i(s - 1, u1, u2, u3, u4 + 1),
            4 * u4 * i(s - 2, u1, u2, u3, u4),
            2 * (u4 + 1) * i(s - 2, u1, u2, u3, u4 + 1),
            slack(s) * i(s, u1, u2, u3, u4),
            2 * slack(s - 1) * i(s - 1, u1, u2, u3, u4),
            // The last coefficient carries no u1 term.
            BigInt::from(2 * (s - 2) - 4 * u2 - 4 * u3 - 6 * u4) * i(s - 2, u1, u2, u3, u4),
        ];
        let rhs: BigInt = terms.into_iter().sum();
        report.record(key_of([s, u1, u2, u3, u4]), lhs, rhs);
    });
    Ok(report)
}

/// `2(u4+1) i(s+1,u1,u2,u3,u4+1) = (u3+1) i(s,u1,u2,u3+1,u4) + 2(u2+1) i(s,u1,u2+1,u3,u4)`.
pub fn check_recursion_u4(table: &ShapeTable, s_max: u32) -> Result<RecursionReport> {
    check_table(table, s_max, 5)?;
    let mut report = RecursionReport::default();
    for_each_colored_tuple(s_max, |[s, u1, u2, u3, u4]| {
        let i = |a: i64, b: i64, c: i64, d: i64, e: i64| table.at(&[a, b, c, d, e]);
        let lhs = 2 * (u4 + 1) * i(s + 1, u1, u2, u3, u4 + 1);
        let rhs = (u3 + 1) * i(s, u1, u2, u3 + 1, u4) + 2 * (u2 + 1) * i(s, u1, u2 + 1, u3, u4);
        report.record(key_of([s, u1, u2, u3, u4]), lhs, rhs);
    });
    Ok(report)
}

pub fn verify_recursion_u2(k: usize, s_max: u32) -> Result<bool> {
    Ok(check_recursion_u2(&wk_trivariate(k, s_max + 1)?, s_max)?.holds())
}

pub fn verify_recursion_u3(k: usize, s_max: u32) -> Result<bool> {
    Ok(check_recursion_u3(&ik_colored(k, s_max + 1)?, s_max)?.holds())
}

pub fn verify_recursion_u4(k: usize, s_max: u32) -> Result<bool> {
    Ok(check_recursion_u4(&ik_colored(k, s_max + 1)?, s_max)?.holds())
}

/// Cells where two tables of the same arity disagree, up to `s_max`.
pub fn table_mismatches(a: &ShapeTable, b: &ShapeTable, s_max: u32) -> Vec<ShapeKey> {
    let mut keys: Vec<ShapeKey> = a.entries.keys().chain(b.entries.keys()).copied().filter(|e| e[0] <= s_max).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().filter(|e| a.get(e) != b.get(e)).collect()
}
