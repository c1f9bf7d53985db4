use num_bigint::BigInt;
use serde_json::{json, Value};

use moddiag::asymptotics::{
    certified_growth_rate, constant_fit, crossing_certified, dominant_is_unique_heuristic, dominant_singularity,
    growth_table, subexp_fit, theta_derivative_nonzero_on,
};
use moddiag::diagram_gf::{modular_series, q2_series, remark_mismatch};
use moddiag::matchings::{q0k_entry, table1_root_check};
use moddiag::oracle::count_modular;
use moddiag::selftest::{self, Level, Mutation};
use moddiag::series::{rational_to_f64, Rational};
use moddiag::shape_gf::{census_table, ik_bivariate, ik_colored};
use moddiag::Error;

use crate::output::Report;

pub enum Failure {
    Usage(String),
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

pub type Outcome = Result<Report, Failure>;

fn check_k(k: usize, lo: usize) -> Result<(), Failure> {
    if (lo..=9).contains(&k) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--k must lie in {lo}..=9, got {k}")))
    }
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

pub fn coeffs(k: usize, n: usize) -> Outcome {
    check_k(k, 2)?;
    let c = modular_series(k, n)?.to_integers()?;
    let strs: Vec<String> = c.iter().map(s).collect();
    Ok(Report {
        command: "coeffs",
        parameters: json!({ "k": k, "n": n }),
        results: json!({ "coefficients": strs, "exact": true }),
        header: vec!["n", "Q_k_n"],
        rows: strs.iter().enumerate().map(|(i, c)| vec![s(i), c.clone()]).collect(),
        verified: true,
    })
}

pub fn oracle(k: usize, n: usize) -> Outcome {
    check_k(k, 2)?;
    let series = modular_series(k, n)?.to_integers()?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut all = true;
    for (i, gf) in series.iter().enumerate() {
        let brute = count_modular(k, i);
        let ok = gf.to_string() == brute.to_string();
        all &= ok;
        entries.push(json!({ "n": i, "oracle": s(&brute), "series": s(gf), "match": ok }));
        rows.push(vec![s(i), s(&brute), s(gf), s(ok)]);
    }
    Ok(Report {
        command: "oracle",
        parameters: json!({ "k": k, "n": n }),
        results: json!({ "rows": entries, "all_match": all }),
        header: vec!["n", "oracle", "series", "match"],
        rows,
        verified: all,
    })
}

/// Largest `s` for which the shape table is also checked by enumeration.
const SHAPE_ORACLE_LIMIT: u32 = 6;

pub fn shapes(k: usize, s_max: u32) -> Outcome {
    check_k(k, 2)?;
    let table = if k == 2 { ik_bivariate(k, s_max)? } else { ik_colored(k, s_max)? };
    let census = (s_max <= SHAPE_ORACLE_LIMIT).then(|| {
        let c = census_table(k, s_max);
        if k == 2 {
            c.marginal(2)
        } else {
            c
        }
    });
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut all = true;
    for (key, count) in table.entries() {
        let brute = census.as_ref().map(|c| c.get(key));
        if let Some(b) = &brute {
            all &= b == count;
        }
        let brute_s = brute.as_ref().map(s);
        entries.push(json!({
            "s": key[0], "u1": key[1], "u2": key[2], "u3": key[3], "u4": key[4],
            "count": s(count), "oracle": brute_s,
        }));
        let mut row: Vec<String> = key.iter().map(s).collect();
        row.push(s(count));
        row.push(brute_s.unwrap_or_default());
        rows.push(row);
    }
    if let Some(c) = &census {
        all &= c.entries().keys().all(|key| table.entries().contains_key(key));
    }
    Ok(Report {
        command: "shapes",
        parameters: json!({ "k": k, "s": s_max }),
        results: json!({
            "markers": if k == 2 { "s,u1" } else { "s,u1,u2,u3,u4" },
            "entries": entries,
            "oracle_checked": census.is_some(),
            "all_match": all,
        }),
        header: vec!["s", "u1", "u2", "u3", "u4", "count", "oracle"],
        rows,
        verified: all,
    })
}

pub fn table1_check() -> Outcome {
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut all = true;
    for k in 2..=9 {
        let e = q0k_entry(k)?;
        let ok = table1_root_check(k)?;
        all &= ok;
        let roots: Vec<String> = e.roots.iter().map(s).collect();
        entries.push(json!({ "k": k, "polynomial": s(&e.polynomial), "roots": roots, "passed": ok }));
        rows.push(vec![s(k), s(&e.polynomial), roots.join(" "), s(ok)]);
    }
    Ok(Report {
        command: "table1-check",
        parameters: json!({}),
        results: json!({ "rows": entries, "all_passed": all }),
        header: vec!["k", "polynomial", "roots", "passed"],
        rows,
        verified: all,
    })
}

pub fn table2(digits: u32) -> Outcome {
    if !(1..=10).contains(&digits) {
        return Err(Failure::Usage(format!("--digits must lie in 1..=10, got {digits}")));
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for r in growth_table(9, digits)? {
        let (lo, hi) = &r.gamma_interval;
        entries.push(json!({
            "k": r.k,
            "growth_rate": r.growth_rate,
            "gamma_lo": s(lo),
            "gamma_hi": s(hi),
            "theta_derivative_nonzero": r.theta_derivative_nonzero,
        }));
        rows.push(vec![s(r.k), r.growth_rate.clone(), s(lo), s(hi), s(r.theta_derivative_nonzero)]);
    }
    Ok(Report {
        command: "table2",
        parameters: json!({ "digits": digits }),
        results: json!({ "rows": entries }),
        header: vec!["k", "growth_rate", "gamma_lo", "gamma_hi", "theta_derivative_nonzero"],
        rows,
        verified: true,
    })
}

/// Parses `p/q`, decimals and scientific notation into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let int = |t: &str| t.trim().parse::<BigInt>().ok();
    if let Some((p, q)) = text.split_once('/') {
        let (p, q) = (int(p)?, int(q)?);
        return (!num_traits::Zero::is_zero(&q)).then(|| Rational::new(p, q));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num = Rational::from_integer(int(&format!("{int_part}{frac_part}"))?);
    let shift = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    Some(num * num_traits::pow::Pow::pow(&ten, shift))
}

fn fit_value(raw: f64, extrapolated: f64) -> Value {
    json!({ "estimate": extrapolated, "raw": raw, "tolerance": (extrapolated - raw).abs() })
}

pub fn asympt(k: usize, tol: &str, digits: u32, n: usize) -> Outcome {
    check_k(k, 2)?;
    let tol_q = parse_rational(tol)
        .filter(num_traits::Signed::is_positive)
        .ok_or_else(|| Failure::Usage(format!("--tol must be a positive number, got {tol:?}")))?;
    if !(1..=10).contains(&digits) {
        return Err(Failure::Usage(format!("--digits must lie in 1..=10, got {digits}")));
    }
    if n < 16 {
        return Err(Failure::Usage(format!("--n must be at least 16 for the fits, got {n}")));
    }
    let iv = dominant_singularity(k, &tol_q)?;
    let crossing = crossing_certified(k, &iv)?;
    let deriv = theta_derivative_nonzero_on(k, &iv)?;
    let (rate, _) = certified_growth_rate(k, digits, &tol_q)?;
    let unique = dominant_is_unique_heuristic(k)?;
    let gamma = rational_to_f64(&iv.midpoint());
    let width = rational_to_f64(&iv.width());
    let j = (k - 1) as f64;
    let theta = if k == 2 { 1.5 } else { j * j + j / 2.0 };
    let coeffs = modular_series(k, n)?.to_integers()?;
    let range = (n / 4, n);
    let e = subexp_fit(&coeffs, gamma, range)?;
    let c = constant_fit(&coeffs, gamma, theta, range)?;
    let results = json!({
        "gamma_lo": s(&iv.lo),
        "gamma_hi": s(&iv.hi),
        "gamma": { "value": gamma, "tolerance": width },
        "growth_rate": rate,
        "crossing_certified": crossing,
        "theta_derivative_nonzero": deriv,
        "dominant_unique_heuristic": { "value": unique, "certified": false },
        "expected_exponent": theta,
        "fitted_exponent": fit_value(e.raw, e.extrapolated),
        "fitted_constant": fit_value(c.raw, c.extrapolated),
    });
    let rows = vec![
        vec![s("gamma_lo"), s(&iv.lo), s("exact")],
        vec![s("gamma_hi"), s(&iv.hi), s("exact")],
        vec![s("growth_rate"), rate.clone(), s("certified")],
        vec![s("crossing_certified"), s(crossing), s("exact")],
        vec![s("theta_derivative_nonzero"), s(deriv), s("exact")],
        vec![s("dominant_unique_heuristic"), s(unique), s("not certified")],
        vec![s("expected_exponent"), s(theta), s("exact")],
        vec![s("fitted_exponent"), s(e.extrapolated), format!("{}", (e.extrapolated - e.raw).abs())],
        vec![s("fitted_constant"), s(c.extrapolated), format!("{}", (c.extrapolated - c.raw).abs())],
    ];
    Ok(Report {
        command: "asympt",
        parameters: json!({ "k": k, "tol": tol, "digits": digits, "n": n }),
        results,
        header: vec!["quantity", "value", "tolerance"],
        rows,
        verified: crossing && deriv,
    })
}

pub fn remark(n: usize) -> Outcome {
    let idx = remark_mismatch(n)?;
    let (a, b) = match idx {
        Some(i) => {
            let q2 = q2_series(i)?.to_integers()?;
            let general = moddiag::diagram_gf::general_formula_at_k2(i)?.to_integers()?;
            (Some(s(&q2[i])), Some(s(&general[i])))
        }
        None => (None, None),
    };
    Ok(Report {
        command: "remark",
        parameters: json!({ "n": n }),
        results: json!({ "first_mismatch": idx, "q2_coefficient": a, "general_formula_coefficient": b }),
        header: vec!["first_mismatch", "q2_coefficient", "general_formula_coefficient"],
        rows: vec![vec![idx.map(s).unwrap_or_default(), a.unwrap_or_default(), b.unwrap_or_default()]],
        verified: true,
    })
}

pub fn selftest(level: Level, mutation: Option<Mutation>) -> Outcome {
    let report = selftest::run(level, mutation);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail, "seconds": c.seconds }))
        .collect();
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), s(c.passed), format!("{:.3}", c.seconds), c.detail.clone()])
        .collect();
    Ok(Report {
        command: "selftest",
        parameters: json!({
            "level": if level == Level::Quick { "quick" } else { "full" },
            "mutate": mutation.map(|_| "sigma1"),
        }),
        results: json!({ "checks": checks, "all_passed": report.all_passed(), "failed": report.failed() }),
        header: vec!["check", "passed", "seconds", "detail"],
        rows,
        verified: report.all_passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use moddiag::series::frac;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1e-3"), Some(frac(1, 1000)));
        assert_eq!(parse_rational("2.5"), Some(frac(5, 2)));
        assert_eq!(parse_rational("3/4"), Some(frac(3, 4)));
        assert_eq!(parse_rational("1.5E2"), Some(frac(150, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }
}
