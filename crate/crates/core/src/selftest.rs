//! Named self-checks at two levels.
//!
//! `Quick` runs the oracle comparisons on small instances; `Full` runs the
//! complete acceptance criteria. A mutation can be injected to confirm that
//! a check actually detects errors.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::asymptotics::{certified_growth_rate, constant_fit, dominant_singularity, growth_table, report_width, subexp_fit};
use crate::diagram_gf::{building_blocks, check_sigma_identity, q2_series, qk_series, remark_mismatch};
use crate::matchings::{count_matchings, matching_counts, table1_root_check};
use crate::oracle::{count_modular, for_each_perfect_matching, max_mutual_crossing};
use crate::series::{frac, rational_to_f64, Marker, PowerSeries, Rational};
use crate::shape_gf::{
    census_table, check_recursion_u2, check_recursion_u3, check_recursion_u4, ik_bivariate, ik_colored, specialize,
    table_mismatches, wk_trivariate,
};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Deliberate defects for checking the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Adds `z^7` to `sigma_1`.
    Sigma1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelftestReport {
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

type Check = Box<dyn Fn() -> Result<(bool, String)>>;

fn oracle_equality(series: &PowerSeries, k: usize, n_max: usize) -> (bool, String) {
    let bad: Vec<usize> = (0..=n_max)
        .filter(|&n| series.coeff(n) != &Rational::from_integer(BigInt::from(count_modular(k, n))))
        .collect();
    (bad.is_empty(), format!("n <= {n_max}, mismatches at {bad:?}"))
}

fn matchings_vs_oracle(n_max: usize) -> Result<(bool, String)> {
    for k in 2..=4 {
        for n in 0..=n_max {
            let mut brute = 0u64;
            for_each_perfect_matching(n, |d| {
                if max_mutual_crossing(d) < k {
                    brute += 1;
                }
            });
            if count_matchings(k, n)? != brute.into() {
                return Ok((false, format!("k={k}, n={n}")));
            }
        }
    }
    Ok((true, format!("k in 2..4, n <= {n_max}")))
}

fn shapes_vs_oracle(s_max: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in [3, 4] {
        let census = census_table(k, s_max);
        let pairs = [
            (ik_bivariate(k, s_max)?, census.marginal(2)),
            (wk_trivariate(k, s_max)?, census.marginal(3)),
            (ik_colored(k, s_max)?, census.clone()),
        ];
        for (gf, brute) in &pairs {
            bad.extend(table_mismatches(gf, brute, s_max).into_iter().map(|key| (k, key)));
        }
    }
    Ok((bad.is_empty(), format!("k in {{3,4}}, s <= {s_max}, mismatches {bad:?}")))
}

fn recursion(which: u8, s_max: u32) -> Result<(bool, String)> {
    let report = match which {
        2 => check_recursion_u2(&wk_trivariate(3, s_max + 1)?, s_max)?,
        3 => check_recursion_u3(&ik_colored(3, s_max + 1)?, s_max)?,
        _ => check_recursion_u4(&ik_colored(3, s_max + 1)?, s_max)?,
    };
    Ok((report.holds(), format!("k=3, s <= {s_max}, {} tuples, failures {:?}", report.checked, report.failures)))
}

fn specializations(s_max: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in [3, 4] {
        let colored = ik_colored(k, s_max)?;
        let w = wk_trivariate(k, s_max)?;
        let i = ik_bivariate(k, s_max)?;
        let a = table_mismatches(&specialize(&colored, &[Marker::W, Marker::T], 3), &w, s_max);
        let b = table_mismatches(&specialize(&w, &[Marker::Z], 2), &i, s_max);
        if !a.is_empty() || !b.is_empty() {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("k in {{3,4}}, x-order {s_max}, failing k {bad:?}")))
}

fn sigma(s_max: u32, order: usize, mutation: Option<Mutation>) -> (bool, String) {
    let mut blocks = building_blocks(order);
    if mutation == Some(Mutation::Sigma1) {
        let bump = PowerSeries::from_poly(&crate::series::Poly::from_terms(&[(7, 1)]), order);
        blocks.sigma[1] = &blocks.sigma[1] + &bump;
    }
    let r = check_sigma_identity(&blocks, s_max);
    let head: Vec<_> = r.failures.iter().take(3).collect();
    (r.holds(), format!("s <= {s_max}, order {order}, {} tuples, {} failing {head:?}", r.checked, r.failures.len()))
}

fn table1() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in 2..=9 {
        if !table1_root_check(k)? {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("k = 2..9, failing {bad:?}")))
}

fn remark(order: usize) -> Result<(bool, String)> {
    let idx = remark_mismatch(order)?;
    Ok((idx == Some(8), format!("first mismatch at {idx:?}")))
}

fn gamma(k: usize) -> Result<f64> {
    Ok(rational_to_f64(&dominant_singularity(k, &frac(1, 1_000_000_000_000))?.midpoint()))
}

fn k2_growth() -> Result<(bool, String)> {
    let (rate, _) = certified_growth_rate(2, 4, &report_width())?;
    Ok((rate == "1.8489", format!("1/gamma_2 = {rate}")))
}

const TABLE2: [&str; 7] = ["2.5410", "3.0132", "3.3974", "3.7319", "4.0327", "4.3087", "4.5654"];

fn table2() -> Result<(bool, String)> {
    let rows = growth_table(9, 4)?;
    let got: Vec<&str> = rows.iter().map(|r| r.growth_rate.as_str()).collect();
    let ok = got == TABLE2;
    let narrow = rows.iter().all(|r| &r.gamma_interval.1 - &r.gamma_interval.0 <= report_width());
    Ok((ok && narrow, format!("got {}, tabulated {}", got.join(" "), TABLE2.join(" "))))
}

fn catalan(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for i in 0..n {
        let next = &out[i] * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
        out.push(next);
    }
    out
}

fn exponent_fits() -> Result<(bool, String)> {
    let cat = subexp_fit(&catalan(1000), 0.25, (200, 1000))?.value();
    let f3: Vec<BigInt> = matching_counts(3, 1000)?.into_iter().map(BigInt::from).collect();
    let e3 = subexp_fit(&f3, 1.0 / 16.0, (200, 1000))?.value();
    let q3 = qk_series(3, 600)?.to_integers()?;
    let eq = subexp_fit(&q3, gamma(3)?, (100, 600))?.value();
    let ok = (cat - 1.5).abs() <= 0.1 && (e3 - 5.0).abs() <= 0.3 && (eq - 5.0).abs() <= 0.5;
    Ok((ok, format!("Catalan {cat:.4}, f_3 {e3:.4}, Q_3 {eq:.4}")))
}

fn constant_q2() -> Result<(bool, String)> {
    let q2 = q2_series(1000)?.to_integers()?;
    let c = constant_fit(&q2, gamma(2)?, 1.5, (250, 1000))?.value();
    let rel = (c - 1.4848).abs() / 1.4848;
    Ok((rel <= 0.02, format!("c = {c:.5}, relative error {:.3}%", 100.0 * rel)))
}

fn integrality(order: usize) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in 2..=9 {
        let s = if k == 2 { q2_series(order)? } else { qk_series(k, order)? };
        if !s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()) {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("order {order}, failing k {bad:?}")))
}

fn checks(level: Level, mutation: Option<Mutation>) -> Vec<(&'static str, Check)> {
    match level {
        Level::Quick => vec![
            ("count_matchings", Box::new(|| matchings_vs_oracle(5))),
            ("q2_series", Box::new(|| Ok(oracle_equality(&q2_series(10)?, 2, 10)))),
            ("qk_series", Box::new(|| Ok(oracle_equality(&qk_series(3, 10)?, 3, 10)))),
            ("shape_gf", Box::new(|| shapes_vs_oracle(4))),
            ("verify_recursion_u2", Box::new(|| recursion(2, 3))),
            ("verify_recursion_u3", Box::new(|| recursion(3, 3))),
            ("verify_recursion_u4", Box::new(|| recursion(4, 3))),
            ("specializations", Box::new(|| specializations(4))),
            ("verify_sigma_identity", Box::new(move || Ok(sigma(2, 20, mutation)))),
            ("table1_root_check", Box::new(table1)),
            ("remark_mismatch", Box::new(|| remark(12))),
            ("growth_rate_k2", Box::new(k2_growth)),
            ("integrality", Box::new(|| integrality(40))),
        ],
        Level::Full => vec![
            ("criterion 1: growth_table", Box::new(table2)),
            ("criterion 2: growth_rate_k2", Box::new(k2_growth)),
            ("criterion 3: q2_series", Box::new(|| Ok(oracle_equality(&q2_series(14)?, 2, 14)))),
            ("criterion 4: qk_series", Box::new(|| Ok(oracle_equality(&qk_series(3, 12)?, 3, 12)))),
            ("criterion 5: table1_root_check", Box::new(table1)),
            ("criterion 6: shape_gf", Box::new(|| shapes_vs_oracle(6))),
            (
                "criterion 7: verify_recursion_u2/u3/u4",
                Box::new(|| {
                    let r: Vec<(bool, String)> = [2, 3, 4].iter().map(|&w| recursion(w, 8)).collect::<Result<_>>()?;
                    Ok((r.iter().all(|x| x.0), r.into_iter().map(|x| x.1).collect::<Vec<_>>().join("; ")))
                }),
            ),
            ("criterion 8: specializations", Box::new(|| specializations(8))),
            ("criterion 9: verify_sigma_identity", Box::new(move || Ok(sigma(4, 30, mutation)))),
            ("criterion 10: subexp_fit", Box::new(exponent_fits)),
            ("criterion 11: constant_fit", Box::new(constant_q2)),
            ("criterion 12: remark_mismatch", Box::new(|| remark(40))),
            ("criterion 13: integrality", Box::new(|| integrality(200))),
        ],
    }
}

pub fn run(level: Level, mutation: Option<Mutation>) -> SelftestReport {
    let checks = checks(level, mutation)
        .into_iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult { name: name.to_string(), passed, detail, seconds: t.elapsed().as_secs_f64() }
        })
        .collect();
    SelftestReport { level, checks }
}

/// Names of all checks at a level, in run order.
pub fn check_names(level: Level) -> Vec<&'static str> {
    checks(level, None).into_iter().map(|(n, _)| n).collect()
}
