use std::time::Instant;

use anyhow::{bail, Context, Result};
use opercalc::enumerate::{
    enumerate_admissible_with, maximality_report, polygon_rows, search_space_estimate,
    EnumerationOptions, DEFAULT_MAX_RANK,
};
use opercalc::filtration::{
    max_score_brute_force, max_score_closed_form, profile_score, sun_bound, ScoreOptimum,
};
use opercalc::frobenius::{
    expected_dimensions, hirschowitz_bound, maxdegree_certificate, pushforward_numerics,
    quot_nonempty, QuotNonempty,
};
use opercalc::laws::check_laws;
use opercalc::oper::{oper_polygon, oper_space_dimensions, threshold_c};
use opercalc::polygon::strata_poset;
use opercalc::{BundleNumerics, CurveParams, FiltrationProfile, HNPolygon, QuotProblem};
use serde::Deserialize;
use serde_json::{json, to_value, Value};

use crate::report::{Report, Table};

fn breakpoint_table(polygon: &HNPolygon) -> Table {
    let mut t = Table::new(&["rank", "degree"]);
    for (r, d) in polygon.breakpoints() {
        t.push(vec![r.to_string(), d.to_string()]);
    }
    t
}

fn or_dash<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn oper_polygon_cmd(rank: i64, genus: i64) -> Result<Report> {
    let polygon = oper_polygon(rank, genus)?;
    Ok(Report::new(to_value(&polygon)?, breakpoint_table(&polygon)))
}

pub fn pushforward(rank: i64, degree: i64, genus: i64, char_p: i64) -> Result<Report> {
    let q = BundleNumerics::new(rank, degree)?;
    let pushed = pushforward_numerics(q, CurveParams::new(genus, char_p)?)?;
    let table = Table::key_values(vec![
        ("rank", pushed.rank().to_string()),
        ("degree", pushed.degree().to_string()),
        ("slope", pushed.slope().to_string()),
    ]);
    let value = json!({"rank": pushed.rank(), "degree": pushed.degree(), "slope": pushed.slope()});
    Ok(Report::new(value, table))
}

pub fn hirschowitz(n: i64, d: i64, m: i64, genus: i64) -> Result<Report> {
    let hb = hirschowitz_bound(n, d, m, genus)?;
    let table = Table::key_values(vec![
        ("epsilon", hb.epsilon.to_string()),
        ("slope_bound", hb.slope_bound.to_string()),
    ]);
    Ok(Report::new(to_value(&hb)?, table))
}

pub fn quot(q_rank: i64, q_degree: i64, rank: i64, genus: i64, char_p: i64) -> Result<Report> {
    let q = BundleNumerics::new(q_rank, q_degree)?;
    let curve = CurveParams::new(genus, char_p)?;
    let problem = QuotProblem::degree_zero(q, rank, curve)?;
    let nonempty = quot_nonempty(&problem)?;
    let maxdeg = maxdegree_certificate(q, rank, curve)?;
    let mut pairs = vec![
        ("degree_threshold", problem.degree_threshold().to_string()),
        ("dim_lower_bound", problem.dim_lower_bound().to_string()),
    ];
    match &nonempty {
        QuotNonempty::Nonempty(c) => {
            pairs.push(("nonempty", "certified".into()));
            pairs.push(("reduced_value", c.reduced_value.to_string()));
            pairs.push(("epsilon", c.epsilon.to_string()));
            pairs.push(("subsheaf_slope_bound", c.slope_bound.to_string()));
        }
        QuotNonempty::HypothesisNotMet { .. } => pairs.push(("nonempty", "not certified".into())),
    }
    pairs.push((
        "max_degree_zero",
        if maxdeg.holds() {
            "certified"
        } else {
            "not certified"
        }
        .into(),
    ));
    let value = json!({
        "degree_threshold": problem.degree_threshold(),
        "dim_lower_bound": problem.dim_lower_bound(),
        "nonempty": nonempty,
        "max_degree": maxdeg,
    });
    let mut report = Report::new(value, Table::key_values(pairs));
    if let QuotNonempty::HypothesisNotMet { degree, threshold } = nonempty {
        report = report.note(format!(
            "deg Q = {degree} is below {threshold}; no conclusion about emptiness"
        ));
    }
    Ok(report)
}

pub fn optimize(weight: i64, cap: i64, oracle: bool) -> Result<Report> {
    let closed = max_score_closed_form(weight)?;
    let ones = FiltrationProfile::all_ones(weight, cap)?;
    let mut pairs = vec![
        ("max_score", closed.to_string()),
        ("maximizer", ones.to_string()),
    ];
    let mut value = json!({"max_score": closed, "maximizer": ones.parts()});
    let mut ok = true;
    if oracle {
        let ScoreOptimum {
            max,
            argmax,
            examined,
        } = max_score_brute_force(weight, cap)?;
        ok = max == closed && argmax == [ones.clone()];
        let argmax_text: Vec<String> = argmax.iter().map(|p| p.to_string()).collect();
        pairs.push(("oracle_max", max.to_string()));
        pairs.push(("oracle_argmax", argmax_text.join(" ")));
        pairs.push(("profiles_examined", examined.to_string()));
        let parts: Vec<&[i64]> = argmax.iter().map(|p| p.parts()).collect();
        value["oracle"] = json!({"max": max, "argmax": parts, "examined": examined, "agrees": ok});
    }
    let mut report = Report::new(value, Table::key_values(pairs));
    report.ok = ok;
    if !ok {
        report = report.note("oracle disagrees with the closed form");
    }
    Ok(report)
}

pub fn sun(
    profile: &str,
    cap: Option<i64>,
    genus: i64,
    char_p: i64,
    allow_p2: bool,
) -> Result<Report> {
    let parts =
        parse_list(profile).context("--profile expects comma-separated integers such as 2,1,1")?;
    let cap = cap.unwrap_or_else(|| parts.first().copied().unwrap_or(1));
    let profile = FiltrationProfile::new(parts, cap)?;
    let curve = CurveParams::new(genus, char_p)?;
    if char_p == 2 && !allow_p2 {
        eprintln!("warning: p = 2 evaluates (p-1)/2 as 1/2; pass --allow-p2 to silence");
    }
    let gap = sun_bound(&profile, curve)?;
    let table = Table::key_values(vec![
        ("profile", profile.to_string()),
        ("weight", profile.weight().to_string()),
        ("score", profile_score(&profile).to_string()),
        ("slope_gap", gap.to_string()),
    ]);
    let value = json!({
        "profile": profile.parts(),
        "weight": profile.weight(),
        "score": profile_score(&profile),
        "slope_gap": gap,
    });
    Ok(Report::new(value, table))
}

fn parse_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| Ok(s.trim().parse::<i64>()?))
        .collect()
}

pub fn enumerate(
    rank: i64,
    genus: i64,
    verify: bool,
    jobs: usize,
    max_rank: i64,
) -> Result<Report> {
    if max_rank != DEFAULT_MAX_RANK {
        eprintln!(
            "estimated search space for rank {rank}: {} nodes",
            search_space_estimate(rank, genus)
        );
    }
    let polygons = enumerate_admissible_with(rank, genus, EnumerationOptions { max_rank, jobs })?;
    let oper = oper_polygon(rank, genus)?;
    let mut table = Table::new(&["breakpoints", "is_oper", "dominated_by_oper"]);
    for row in polygon_rows(&polygons, &oper)? {
        table.push(vec![
            row.breakpoints,
            row.is_oper.to_string(),
            row.dominated_by_oper.to_string(),
        ]);
    }
    if !verify {
        let n = polygons.len();
        return Ok(Report::new(to_value(&polygons)?, table).note(format!("{n} polygons")));
    }
    let report = maximality_report(rank, genus, &polygons)?;
    let summary = if report.passed() {
        format!(
            "{} polygons, dominance verified, unique maximum = oper polygon",
            polygons.len()
        )
    } else {
        format!(
            "{} polygons, dominance FAILED: {} not dominated, {} maximal elements, oper polygon present: {}",
            polygons.len(),
            report.counterexamples.len(),
            report.maximal_elements.len(),
            report.oper_present
        )
    };
    let passed = report.passed();
    let mut out =
        Report::new(json!({"polygons": polygons, "verification": report}), table).note(summary);
    out.ok = passed;
    Ok(out)
}

pub fn strata(rank: i64, genus: i64, jobs: usize, max_rank: i64) -> Result<Report> {
    let polygons = enumerate_admissible_with(rank, genus, EnumerationOptions { max_rank, jobs })?;
    let poset = strata_poset(&polygons)?;
    let oper = oper_polygon(rank, genus)?;
    let mut elements = Table::new(&["index", "breakpoints", "is_oper"]);
    for (i, p) in poset.elements.iter().enumerate() {
        elements.push(vec![i.to_string(), p.to_string(), (p == &oper).to_string()]);
    }
    let mut covers = Table::new(&["lower", "upper"]);
    for (lo, hi) in &poset.covers {
        covers.push(vec![lo.to_string(), hi.to_string()]);
    }
    let summary = format!(
        "{} strata, {} cover relations, maximal: {:?}",
        poset.elements.len(),
        poset.covers.len(),
        poset.maximal()
    );
    let mut report = Report::new(to_value(&poset)?, elements).note(summary);
    report.tables.push(covers);
    Ok(report)
}

pub fn dims(rank: i64, genus: i64) -> Result<Report> {
    let c = threshold_c(rank, genus)?;
    let (dim_w, dim_opers) = oper_space_dimensions(rank, genus)?;
    let expected = expected_dimensions(rank, genus)?;
    let table = Table::key_values(vec![
        ("C", c.to_string()),
        ("dim_W_r", dim_w.to_string()),
        ("dim_opers", dim_opers.to_string()),
        ("dim_J2", or_dash(expected.dim_j2)),
        ("quot_expected", expected.quot_expected.to_string()),
        ("oper_quot_degree", expected.oper_quot_degree.to_string()),
    ]);
    let value = json!({
        "C": c,
        "dim_W_r": dim_w,
        "dim_opers": dim_opers,
        "dim_J2": expected.dim_j2,
        "quot_expected": expected.quot_expected,
        "oper_quot_degree": expected.oper_quot_degree,
    });
    Ok(Report::new(value, table))
}

pub fn laws() -> Result<Report> {
    let start = Instant::now();
    let outcomes = check_laws()?;
    let mut table = Table::new(&["law", "checked", "status"]);
    for o in &outcomes {
        let status = if o.passed() {
            "ok".to_string()
        } else {
            format!("FAILED: {}", o.failures.join("; "))
        };
        table.push(vec![o.name.to_string(), o.checked.to_string(), status]);
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let total: usize = outcomes.iter().map(|o| o.checked).sum();
    let summary = format!(
        "{} laws, {total} instances, {failed} failed ({:.2}s)",
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    let mut report = Report::new(to_value(&outcomes)?, table).note(summary);
    report.ok = failed == 0;
    Ok(report)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub rank: Vec<i64>,
    pub genus: Vec<i64>,
    #[serde(rename = "char")]
    pub char_p: Vec<i64>,
}

const SWEEP_COLUMNS: [&str; 11] = [
    "rank",
    "genus",
    "char",
    "C",
    "char_exceeds_C",
    "dim_W_r",
    "dim_opers",
    "dim_J2",
    "quot_expected",
    "oper_quot_degree",
    "oper_quot_pushforward",
];

/// One row per `(rank, genus, char)`, in the order the lists are given.
pub fn sweep(config: &SweepConfig) -> Result<Report> {
    if config.rank.is_empty() || config.genus.is_empty() || config.char_p.is_empty() {
        bail!("sweep config needs non-empty \"rank\", \"genus\" and \"char\" lists");
    }
    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut rows: Vec<Value> = Vec::new();
    for &r in &config.rank {
        for &g in &config.genus {
            for &p in &config.char_p {
                let curve = CurveParams::new(g, p)
                    .with_context(|| format!("rank {r}, genus {g}, char {p}"))?;
                let c = threshold_c(r, g)?;
                let (dim_w, dim_opers) = oper_space_dimensions(r, g)?;
                let expected = expected_dimensions(r, g)?;
                // F_* of the line bundle Q carrying the dormant oper, when p > 0
                let pushed = if p > 0 {
                    Some(pushforward_numerics(
                        BundleNumerics::new(1, expected.oper_quot_degree)?,
                        curve,
                    )?)
                } else {
                    None
                };
                let exceeds = (p > 0).then_some(p > c);
                table.push(vec![
                    r.to_string(),
                    g.to_string(),
                    p.to_string(),
                    c.to_string(),
                    or_dash(exceeds),
                    dim_w.to_string(),
                    dim_opers.to_string(),
                    or_dash(expected.dim_j2),
                    expected.quot_expected.to_string(),
                    expected.oper_quot_degree.to_string(),
                    or_dash(pushed.map(|b| format!("{}:{}", b.rank(), b.degree()))),
                ]);
                rows.push(json!({
                    "rank": r,
                    "genus": g,
                    "char": p,
                    "C": c,
                    "char_exceeds_C": exceeds,
                    "dim_W_r": dim_w,
                    "dim_opers": dim_opers,
                    "dim_J2": expected.dim_j2,
                    "quot_expected": expected.quot_expected,
                    "oper_quot_degree": expected.oper_quot_degree,
                    "oper_quot_pushforward": pushed,
                }));
            }
        }
    }
    Ok(Report::new(Value::Array(rows), table))
}
