//! Plain-text tables for terminal output.

use std::fmt::Write;

use serde::Serialize;

use splice_rank::cfk::ValidationReport;
use splice_rank::duality::ByIndex;
use splice_rank::filtration::{FiltrationProfile, Side};
use splice_rank::report::{KnotSummary, PairSummary, RunReport};
use splice_rank::splice::BoundStatus;

pub fn violations(r: &ValidationReport) -> String {
    r.violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Serialize)]
pub struct GradedRow {
    p: i32,
    q: i32,
    dim: usize,
}

pub fn graded_rows(p: &FiltrationProfile) -> Vec<GradedRow> {
    p.graded()
        .iter()
        .map(|(&(p, q), &dim)| GradedRow { p, q, dim })
        .collect()
}

#[derive(Serialize)]
pub struct KernelRow {
    s: i32,
    first_dim: usize,
    first_image: usize,
    first_kernel: usize,
    second_dim: usize,
    second_image: usize,
    second_kernel: usize,
}

pub fn kernel_rows(p: &FiltrationProfile) -> Vec<KernelRow> {
    let (lo, hi) = p.window();
    (lo..=hi)
        .map(|s| KernelRow {
            s,
            first_dim: p.filtered_dim(Side::First, s),
            first_image: p.image(Side::First, s).dim(),
            first_kernel: p.kernel_dim(Side::First, s),
            second_dim: p.filtered_dim(Side::Second, s),
            second_image: p.image(Side::Second, s).dim(),
            second_kernel: p.kernel_dim(Side::Second, s),
        })
        .collect()
}

fn triple<T: std::fmt::Display>(t: &ByIndex<T>) -> String {
    format!("({}, {}, {})", t.zero, t.one, t.inf)
}

fn map_line<K: std::fmt::Display, V: std::fmt::Display>(m: impl IntoIterator<Item = (K, V)>) -> String {
    let parts: Vec<String> = m.into_iter().map(|(k, v)| format!("{k}:{v}")).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

fn knot(out: &mut String, k: &KnotSummary) {
    let _ = writeln!(out, "knot {}", k.name);
    let _ = writeln!(out, "  generators      {}", k.generators);
    let _ = writeln!(out, "  hfk by grading  {}", map_line(&k.hfk));
    let _ = writeln!(out, "  ambient rank    {}", k.ambient_rank);
    let _ = writeln!(out, "  a (0, 1, inf)   {}", triple(&k.a));
    let _ = writeln!(out, "  r (0, 1, inf)   {}", triple(&k.r));
    let _ = writeln!(out, "  delta           {}", triple(&k.delta));
    let _ = writeln!(out, "  y               {}", triple(&k.y));
    let _ = writeln!(out, "  e by grading    {}", map_line(&k.e));
}

fn pair(out: &mut String, p: &PairSummary) {
    let a = &p.analysis;
    let _ = writeln!(out, "pair {} x {}", p.first, p.second);
    let _ = writeln!(out, "  matrix          {} x {}", a.rows, a.cols);
    let _ = writeln!(
        out,
        "  h = ker + coker {} = {} + {}{}",
        a.rank.h,
        a.rank.ker,
        a.rank.coker,
        if p.odd { "" } else { "  (even)" }
    );
    let _ = writeln!(out, "  swapped entries h = {}", a.rank_swapped.h);
    let w = &a.witnesses;
    let _ = writeln!(out, "  witnesses       {} vectors, span {}", w.count, w.span_rank);
    let _ = writeln!(out, "  ker bound       {} <= {}", w.ker_bound, w.ker);
    let _ = writeln!(out, "  coker bound     {} <= {}", w.coker_bound, w.coker);
    let s = &a.s_case;
    let _ = writeln!(
        out,
        "  cases S1..S5    {} {} {} {} {}",
        s.s1 as u8, s.s2 as u8, s.s3 as u8, s.s4 as u8, s.s5 as u8
    );
    for b in &a.bounds {
        let line = match &b.status {
            BoundStatus::Checked { bound, actual, holds } => {
                format!("{bound} <= {actual}{}", if *holds { "" } else { "  FAILED" })
            }
            BoundStatus::Skipped { reason } => format!("skipped: {reason}"),
        };
        let _ = writeln!(out, "  {:<28} {line}", b.name);
    }
    let t = &a.theorem;
    let _ = writeln!(
        out,
        "  rank inequality {} (second y_inf = {}, need {}, margin {})",
        if !t.applicable {
            "not applicable"
        } else if t.holds {
            "holds"
        } else {
            "FAILS"
        },
        t.y_inf_second,
        t.required,
        t.margin
    );
}

/// Compact rendering of a detail value.
fn detail(out: &mut String, key: &str, v: &serde_json::Value) {
    match (key, v) {
        ("names", serde_json::Value::Array(names)) => {
            for n in names {
                let _ = writeln!(out, "{}", n.as_str().unwrap_or_default());
            }
        }
        ("hfk", serde_json::Value::Object(m)) => {
            let _ = writeln!(out, "grading  rank");
            for (s, r) in m {
                let _ = writeln!(out, "{s:>7}  {r}");
            }
        }
        ("lemmas", serde_json::Value::Array(reports)) => {
            for r in reports {
                let _ = writeln!(out, "{}", r["name"].as_str().unwrap_or_default());
                for c in r["checks"].as_array().into_iter().flatten() {
                    let (d, s) = (&c["direct"], &c["structural"]);
                    let mark = if d == s { "ok" } else { "MISMATCH" };
                    let _ = writeln!(
                        out,
                        "  {:<16} {d} = {s}  {mark}",
                        c["name"].as_str().unwrap_or_default()
                    );
                }
            }
        }
        ("graded", serde_json::Value::Array(rows)) => {
            let _ = writeln!(out, "graded pieces (p, q): dim");
            for r in rows {
                let _ = writeln!(out, "  ({}, {}): {}", r["p"], r["q"], r["dim"]);
            }
        }
        ("package" | "violations" | "stated_exponent_readings" | "mirror", _) => {}
        _ => {
            let _ = writeln!(out, "{key}: {v}");
        }
    }
}

pub fn human(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "splice-rank {} {} {}",
        r.tool_version,
        r.command,
        r.inputs.join(" ")
    );
    if let Some(seed) = r.seed {
        let _ = writeln!(out, "seed {seed}");
    }
    for k in &r.knots {
        knot(&mut out, k);
    }
    for p in &r.pairs {
        pair(&mut out, p);
    }
    for (k, v) in &r.details {
        detail(&mut out, k, v);
    }
    if !r.suite.0.is_empty() {
        let _ = writeln!(out, "checks");
        for (name, e) in &r.suite.0 {
            let tag = if e.informational { "  (recorded only)" } else { "" };
            let _ = writeln!(out, "  {name:<40} {:>5} passed {:>3} failed{tag}", e.passed, e.failed);
            for c in &e.counterexamples {
                let _ = writeln!(out, "    at {}: {}", c.repro, c.detail);
            }
        }
    }
    let _ = writeln!(out, "result: {}", if r.passed { "pass" } else { "FAIL" });
    out
}
