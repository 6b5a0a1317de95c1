use anyhow::Result;
use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;
use serde_json::json;
use wonderful::algebra::twisted_chern_identity;
use wonderful::fm::{functional_equation_residual, solve_n, BettiVector, FmSession};
use wonderful::limits::Limits;
use wonderful::macdonald::symmetric_product_poincare;
use wonderful::quotient::quotient_decomposition_with;
use wonderful::wonderful::{
    all_admissible_orders, decompose, decompose_iterative, fm_arrangement, sample_admissible_orders,
};

use crate::output::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Genfun,
    Quotient,
    Orders,
    Duality,
    Macdonald,
    Chern,
    All,
}

#[derive(Serialize)]
struct Row {
    suite: &'static str,
    check: &'static str,
    cases: usize,
    status: &'static str,
    detail: String,
}

type Outcome = Result<(usize, String)>;

fn row(suite: &'static str, check: &'static str, outcome: Outcome) -> Row {
    match outcome {
        Ok((cases, detail)) => Row { suite, check, cases, status: "pass", detail },
        Err(e) => Row { suite, check, cases: 0, status: "FAIL", detail: format!("{e:#}") },
    }
}

/// Solver coefficients against nest enumeration and the partition recursion.
fn genfun(max_n: usize, max_dim: usize, limits: Limits) -> Vec<Row> {
    let mut rows = vec![];
    rows.push(row("genfun", "residual", (|| {
        for d in 1..=max_dim {
            let n = solve_n(d, max_n)?;
            anyhow::ensure!(functional_equation_residual(d, &n)?.is_zero(), "nonzero residual at d={d}");
        }
        Ok((max_dim, format!("order {max_n}, d <= {max_dim}")))
    })()));
    rows.push(row("genfun", "three-way", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            let mut s = FmSession::with_limits(d, limits)?;
            let series = s.generating_function(max_n)?.clone();
            for n in 1..=max_n.min(limits.nests) {
                let f = series.coeff(n)?;
                anyhow::ensure!(*f == s.f_direct(n)?, "direct f_{n} differs at d={d}");
                anyhow::ensure!(*f == s.f_recursive(n)?, "recursive f_{n} differs at d={d}");
                cases += 1;
            }
        }
        Ok((cases, "solver = nests = recursion".into()))
    })()));
    rows.push(row("genfun", "bivariate", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            let mut s = FmSession::with_limits(d, limits)?;
            for n in 1..=max_n.min(limits.nests) {
                let gf = s.gf_multiplicities(n)?;
                anyhow::ensure!(gf == s.bivariate_multiplicities(n)?, "packed differs at n={n}, d={d}");
                anyhow::ensure!(gf == s.direct_multiplicities(n)?, "enumeration differs at n={n}, d={d}");
                cases += 1;
            }
        }
        Ok((cases, "series = packed = enumeration".into()))
    })()));
    rows
}

fn quotient(max_n: usize, max_dim: usize, limits: Limits) -> Vec<Row> {
    vec![row("quotient", "orbits", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            for n in 1..=max_n.min(limits.forests) {
                quotient_decomposition_with(n, d, limits)?;
                cases += 1;
            }
        }
        Ok((cases, "forest orbits match labeled nests".into()))
    })())]
}

fn orders(max_n: usize, max_dim: usize) -> Vec<Row> {
    let mut rows = vec![];
    rows.push(row("orders", "iterative", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            for n in 2..=max_n.min(4) {
                let arr = fm_arrangement(n, d)?;
                let closed = decompose(&arr)?;
                let all = match all_admissible_orders(&arr, 200) {
                    Ok(all) => all,
                    Err(_) => sample_admissible_orders(&arr, 200, d as u64),
                };
                for o in all {
                    anyhow::ensure!(decompose_iterative(&arr, &o)? == closed, "order {o:?} differs");
                    cases += 1;
                }
            }
        }
        Ok((cases, "every order agrees with the closed form".into()))
    })()));
    rows.push(row("orders", "fm-arrangement", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            for n in 2..=max_n.min(5) {
                let dec = decompose(&fm_arrangement(n, d)?)?;
                let table = FmSession::new(d)?.decomposition_table(n)?;
                let expect = table.entries().map(|e| ((e.k * d, e.i), e.mult.clone())).collect();
                anyhow::ensure!(dec.by_dimension() == expect, "n={n}, d={d}");
                cases += 1;
            }
        }
        Ok((cases, "G-nest engine = series".into()))
    })()));
    rows
}

fn duality(max_n: usize, max_dim: usize, limits: Limits) -> Vec<Row> {
    vec![row("duality", "palindromic", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            let mut s = FmSession::with_limits(d, limits)?;
            for n in 1..=max_n {
                let t = s.decomposition_table(n)?;
                if let Some((k, i)) = t.duality_violation() {
                    anyhow::bail!("n={n}, d={d}: h(X^{k})({i}) has no dual partner");
                }
                cases += 1;
            }
        }
        Ok((cases, "mult(k, i) = mult(k, d(n-k)-i)".into()))
    })())]
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// Symmetric products of `P^d` have `C(n+d, d)` classes in total.
fn macdonald(max_n: usize, max_dim: usize) -> Vec<Row> {
    vec![row("macdonald", "total-rank", (|| {
        let mut cases = 0;
        for d in 1..=max_dim {
            let b = BettiVector::projective(d);
            for n in 0..=max_n {
                let p = symmetric_product_poincare(&b, n)?;
                let expect = BigInt::from(binomial(n + d, d));
                anyhow::ensure!(p.eval(&BigInt::one()) == expect, "Sym^{n} P^{d}: {p}");
                cases += 1;
            }
        }
        Ok((cases, "P(Sym^n P^d)(1) = C(n+d, d)".into()))
    })())]
}

fn chern(max_dim: usize) -> Vec<Row> {
    vec![row("chern", "twisted-identity", (|| {
        let mut terms = 0;
        let mut cases = 0;
        for r in 1..=4 {
            for d in 1..=max_dim {
                terms += twisted_chern_identity(r, d)?.terms_compared;
                cases += 1;
            }
        }
        Ok((cases, format!("{terms} monomials compared")))
    })())]
}

pub fn run(suite: Suite, max_n: usize, max_dim: usize, limits: Limits) -> Result<Report> {
    use Suite::*;
    let wanted = |s: Suite| suite == All || suite == s;
    let mut rows = vec![];
    if wanted(Genfun) {
        rows.extend(genfun(max_n, max_dim, limits));
    }
    if wanted(Quotient) {
        rows.extend(quotient(max_n, max_dim, limits));
    }
    if wanted(Orders) {
        rows.extend(orders(max_n, max_dim));
    }
    if wanted(Duality) {
        rows.extend(duality(max_n, max_dim, limits));
    }
    if wanted(Macdonald) {
        rows.extend(macdonald(max_n, max_dim));
    }
    if wanted(Chern) {
        rows.extend(chern(max_dim));
    }
    let failed = rows.iter().any(|r| r.status != "pass");
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{:<5} {:<10} {:<17} {:>5}  {}\n",
            r.status, r.suite, r.check, r.cases, r.detail
        ));
    }
    let csv_rows = rows
        .iter()
        .map(|r| {
            vec![r.suite.into(), r.check.into(), r.cases.to_string(), r.status.into(), r.detail.clone()]
        })
        .collect();
    let params = json!({"suite": suite, "max_n": max_n, "max_dim": max_dim});
    let mut report = Report::new("verify", params, json!({"passed": !failed, "checks": rows}))?
        .text(text)
        .csv(vec!["suite", "check", "cases", "status", "detail"], csv_rows);
    report.failed = failed;
    Ok(report)
}
