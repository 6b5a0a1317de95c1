use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;
use wonderful::algebra::IntPoly;
use wonderful::fm::{
    connected_in_sigma, format_sigma, summand_label, BettiVector, FmSession, RankProfile,
};
use wonderful::limits::Limits;
use wonderful::quotient::{quotient_decomposition_with, quotient_summand_label};
use wonderful::wonderful::{
    decompose, decompose_iterative, fm_arrangement, sample_admissible_orders, Arrangement,
};

use crate::output::{rows_text, Report};
use crate::UsageError;

/// `--betti 1,0,1` or the Betti numbers of `P^dim`.
pub fn parse_betti(spec: Option<&str>, dim: usize) -> Result<BettiVector> {
    let Some(spec) = spec else {
        return Ok(BettiVector::projective(dim));
    };
    let numbers = spec
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| UsageError(format!("bad --betti {spec:?}: {e}")))?;
    let betti = BettiVector::new(numbers).map_err(|e| UsageError(e.to_string()))?;
    if betti.dim() != dim {
        return Err(UsageError(format!(
            "--betti has {} entries; dim {dim} needs {}",
            betti.numbers().len(),
            2 * dim + 1
        ))
        .into());
    }
    Ok(betti)
}

fn poly_rows(p: &IntPoly) -> Vec<Vec<String>> {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(deg, c)| vec![deg.to_string(), c.to_string()])
        .collect()
}

pub fn fm_decompose(n: usize, dim: usize, limits: Limits) -> Result<Report> {
    let table = FmSession::with_limits(dim, limits)?.decomposition_table(n)?;
    let rows = table
        .entries()
        .map(|e| vec![e.k.to_string(), e.i.to_string(), e.mult.to_string()])
        .collect();
    Ok(Report::new("fm decompose", json!({"n": n, "dim": dim}), &table)?
        .text(table.to_string())
        .csv(vec!["k", "i", "mult"], rows))
}

#[derive(Serialize)]
struct RankRow {
    k: usize,
    i: usize,
    #[serde(with = "wonderful::bigjson")]
    mult: BigUint,
    #[serde(with = "wonderful::bigjson")]
    rank: BigUint,
    #[serde(with = "wonderful::bigjson")]
    contribution: BigUint,
}

#[derive(Serialize)]
struct RankResult {
    n: usize,
    dim: usize,
    #[serde(with = "wonderful::bigjson")]
    rank: BigUint,
    breakdown: Vec<RankRow>,
}

pub fn fm_rank(n: usize, dim: usize, source: &str, limits: Limits) -> Result<Report> {
    let profile = if source == "projective" {
        RankProfile::projective(dim, n)
    } else {
        let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
        serde_json::from_str(&text).map_err(|e| UsageError(format!("rank file {source}: {e}")))?
    };
    let table = FmSession::with_limits(dim, limits)?.decomposition_table(n)?;
    let mut breakdown = Vec::new();
    for e in table.entries() {
        let rank = profile.get(e.k).map_err(|err| UsageError(err.to_string()))?.clone();
        let contribution = &e.mult * &rank;
        breakdown.push(RankRow { k: e.k, i: e.i, mult: e.mult.clone(), rank, contribution });
    }
    let total: BigUint = breakdown.iter().map(|r| &r.contribution).sum();
    let mut rows: Vec<(String, String)> = breakdown
        .iter()
        .map(|r| {
            let value = format!("{} x {} = {}", r.mult, r.rank, r.contribution);
            (summand_label("X", r.k, r.i), value)
        })
        .collect();
    rows.push(("total".into(), total.to_string()));
    let csv_rows = breakdown
        .iter()
        .map(|r| {
            vec![r.k.to_string(), r.i.to_string(), r.mult.to_string(), r.rank.to_string(), r.contribution.to_string()]
        })
        .collect();
    let result = RankResult { n, dim, rank: total, breakdown };
    Ok(Report::new("fm rank", json!({"n": n, "dim": dim, "ranks": source}), result)?
        .text(rows_text(&format!("rank A(X[{n}]), dim X = {dim}"), &rows))
        .csv(vec!["k", "i", "mult", "rank", "contribution"], csv_rows))
}

pub fn fm_genfun(dim: usize, order: usize, limits: Limits) -> Result<Report> {
    if order == 0 {
        return Err(UsageError("--order must be at least 1".into()).into());
    }
    let mut session = FmSession::with_limits(dim, limits)?;
    let series = session.generating_function(order)?.clone();
    let sigma = connected_in_sigma(order, limits.partitions)?;
    let mut coefficients = Vec::new();
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for k in 1..=order {
        let f = series.coeff(k)?;
        let s = format_sigma(&sigma[k - 1]);
        coefficients.push(json!({"n": k, "f": f.display_in("x"), "coeffs": f, "sigma": s}));
        rows.push((format!("f_{k}"), format!("{}    [{s}]", f.display_in("x"))));
        csv_rows.push(vec![k.to_string(), f.display_in("x"), s]);
    }
    let result = json!({"dim": dim, "order": order, "coefficients": coefficients});
    let title = format!("N = sum f_n t^n/n!, dim X = {dim}, s_j = x + ... + x^(dim j - 1)");
    Ok(Report::new("fm genfun", json!({"dim": dim, "order": order}), result)?
        .text(rows_text(&title, &rows))
        .csv(vec!["n", "f", "sigma"], csv_rows))
}

pub fn fm_betti(n: usize, dim: usize, betti: Option<&str>, limits: Limits) -> Result<Report> {
    let b = parse_betti(betti, dim)?;
    let table = FmSession::with_limits(dim, limits)?.decomposition_table(n)?;
    let p = table.poincare(&b)?;
    let result = json!({"n": n, "dim": dim, "betti": b, "poincare": p.display_in("t"), "coeffs": p});
    let text = format!("P(X[{n}]) = {}\n", p.display_in("t"));
    Ok(Report::new("fm betti", json!({"n": n, "dim": dim, "betti": b}), result)?
        .text(text)
        .csv(vec!["degree", "betti"], poly_rows(&p)))
}

pub fn quotient_decompose(
    n: usize,
    dim: usize,
    betti: Option<&str>,
    verbose: bool,
    limits: Limits,
) -> Result<Report> {
    let b = betti.map(|s| parse_betti(Some(s), dim)).transpose()?;
    let mut q = quotient_decomposition_with(n, dim, limits)?;
    if !verbose {
        q = q.terse();
    }
    let mut text = q.to_string();
    let poincare = match &b {
        Some(b) => {
            let p = q.poincare(b)?;
            text.push_str(&format!("P(X[{n}]/S_{n}) = {}\n", p.display_in("t")));
            Some(p.display_in("t"))
        }
        None => None,
    };
    let rows = q
        .entries
        .iter()
        .map(|e| {
            let nu: Vec<String> = e.nu.iter().map(usize::to_string).collect();
            vec![nu.join(" "), e.m.to_string(), e.lambda.to_string(), quotient_summand_label(&e.nu, e.m)]
        })
        .collect();
    let mut result = serde_json::to_value(&q)?;
    if let Some(p) = poincare {
        result["poincare"] = json!(p);
    }
    let params = json!({"n": n, "dim": dim, "betti": b, "verbose": verbose});
    Ok(Report::new("quotient decompose", params, result)?
        .text(text)
        .csv(vec!["nu", "m", "lambda", "summand"], rows))
}

pub fn quotient_betti(n: usize, dim: usize, betti: Option<&str>, limits: Limits) -> Result<Report> {
    let b = parse_betti(betti, dim)?;
    let p = quotient_decomposition_with(n, dim, limits)?.poincare(&b)?;
    let result = json!({"n": n, "dim": dim, "betti": b, "poincare": p.display_in("t"), "coeffs": p});
    Ok(Report::new("quotient betti", json!({"n": n, "dim": dim, "betti": b}), result)?
        .text(format!("P(X[{n}]/S_{n}) = {}\n", p.display_in("t")))
        .csv(vec!["degree", "betti"], poly_rows(&p)))
}

/// `D(1,2),D(3,4)` -> `["D(1,2)", "D(3,4)"]`: only top-level commas separate.
pub fn split_order(spec: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in spec.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out.retain(|s| !s.is_empty());
    out
}

pub fn wonderful_decompose(path: &Path, order: Option<Vec<String>>, iterative: bool) -> Result<Report> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let arr = Arrangement::from_json(&text)?;
    let order = match order {
        Some(o) => Some(o),
        None if iterative => sample_admissible_orders(&arr, 1, 0).pop(),
        None => None,
    };
    let dec = match &order {
        Some(o) => decompose_iterative(&arr, o)?,
        None => decompose(&arr)?,
    };
    let rows = dec
        .summands
        .iter()
        .map(|s| vec![s.stratum.clone(), s.dim.to_string(), s.twist.to_string(), s.mult.to_string()])
        .collect();
    let title = format!("h of the wonderful compactification of {}", dec.ambient);
    let params = json!({"arrangement": path.display().to_string(), "order": order});
    Ok(Report::new("wonderful decompose", params, &dec)?
        .text(format!("{title}\n{dec}"))
        .csv(vec!["stratum", "dim", "twist", "mult"], rows))
}

/// The polydiagonal arrangement of `X^n` as a loadable arrangement file.
pub fn export_fm(n: usize, dim: usize) -> Result<String> {
    let mut s = fm_arrangement(n, dim)?.to_json()?;
    s.push('\n');
    Ok(s)
}
