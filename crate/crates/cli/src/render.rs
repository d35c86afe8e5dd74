//! JSON, CSV and text renderings of reports.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use helpzc::help::{DistributionJson, PADistribution};
use helpzc::psl2::{ClassFunction, CyclicFrame};
use helpzc::solver::{BoundsBox, EnumerationReport};
use helpzc::{BigInt, V4Report};

use crate::check::CheckOutcome;
use crate::theorem::MainReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn dist_json(pa: &PADistribution) -> DistributionJson {
    DistributionJson::from(pa)
}

fn csv_rows(out: &mut String, members: &[PADistribution]) {
    out.push_str("solution,d,order,exp,value\n");
    for (i, pa) in members.iter().enumerate() {
        for (d, c, v) in pa.entries() {
            writeln!(out, "{i},{d},{},{},{v}", c.order, c.exp).unwrap();
        }
    }
}

fn text_list(out: &mut String, members: &[PADistribution], tpa: &[PADistribution]) {
    for (i, pa) in members.iter().enumerate() {
        let tag = if tpa.contains(pa) { "  [TPA]" } else { "" };
        writeln!(out, "  #{i}: {pa}{tag}").unwrap();
    }
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    lower: &'a [i64],
    upper: &'a [i64],
}

fn bounds_json(b: &BoundsBox) -> BoundsJson<'_> {
    BoundsJson {
        lower: &b.lower,
        upper: &b.upper,
    }
}

pub fn enumeration(
    r: &EnumerationReport,
    frame: &CyclicFrame,
    tpa: &[PADistribution],
    format: Format,
) -> String {
    let members = r.solutions.members();
    match format {
        Format::Json => pretty(&json!({
            "q": frame.q(),
            "n": frame.m(),
            "epsilon": frame.epsilon(),
            "family": r.family(),
            "characters": r.characters,
            "augmented": r.augmented,
            "rank": r.rank,
            "variables": r.variables,
            "nodes": r.nodes,
            "bounds": bounds_json(&r.bounds),
            "count": members.len(),
            "solutions": members.iter().map(dist_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::new();
            csv_rows(&mut s, members);
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "VPA_{} for PSL(2,{}) with family {}: {} solution(s)",
                frame.m(),
                frame.q(),
                r.family(),
                members.len()
            )
            .unwrap();
            writeln!(
                s,
                "rank {}/{}, {} search nodes{}",
                r.rank,
                r.variables,
                r.nodes,
                if r.augmented {
                    ", family augmented"
                } else {
                    ""
                }
            )
            .unwrap();
            text_list(&mut s, members, tpa);
            s
        }
    }
}

pub fn distributions(frame: &CyclicFrame, members: &[PADistribution], format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "q": frame.q(),
            "n": frame.m(),
            "count": members.len(),
            "solutions": members.iter().map(dist_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::new();
            csv_rows(&mut s, members);
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "TPA_{} for PSL(2,{}): {} distribution(s)",
                frame.m(),
                frame.q(),
                members.len()
            )
            .unwrap();
            text_list(&mut s, members, &[]);
            s
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn main_report(r: &MainReport, format: Format) -> String {
    let e = &r.enumeration;
    match format {
        Format::Json => pretty(&json!({
            "q": r.q,
            "t": r.t,
            "n": r.n(),
            "epsilon": r.epsilon,
            "family": e.family(),
            "augmented": e.augmented,
            "rank": e.rank,
            "variables": e.variables,
            "nodes": e.nodes,
            "summary": r.summary(),
            "tpa": r.tpa_found(),
            "exceptional": r.exceptional_found(),
            "other": r.other_found(),
            "solutions": r.solutions().iter().map(dist_json).collect::<Vec<_>>(),
            "missing": r.diff.missing.iter().map(dist_json).collect::<Vec<_>>(),
            "unexpected": r.diff.unexpected.iter().map(dist_json).collect::<Vec<_>>(),
            "sufficiency": r.sufficiency.iter().map(|s| json!({
                "distribution": dist_json(&s.distribution),
                "characters": s.characters,
                "passed": s.passed(),
                "psi": s.psi_ok,
                "failures": s.failures,
            })).collect::<Vec<_>>(),
            "accumulated": r.accumulated_ok,
            "wagner": r.wagner_ok,
            "trace_identities": r.trace_identities.iter().map(|t| json!({
                "character": t.character,
                "l": t.l,
                "value": t.value.to_string(),
                "expected": t.expected,
            })).collect::<Vec<_>>(),
            "verified": r.verified(),
        })),
        Format::Csv => {
            let mut s = String::from("check,result\n");
            writeln!(s, "enumeration,{}", verdict(r.diff.is_empty())).unwrap();
            for (i, suf) in r.sufficiency.iter().enumerate() {
                writeln!(s, "sufficiency #{i},{}", verdict(suf.passed())).unwrap();
            }
            writeln!(s, "accumulated,{}", verdict(r.accumulated_ok)).unwrap();
            writeln!(s, "wagner,{}", verdict(r.wagner_ok)).unwrap();
            for t in &r.trace_identities {
                writeln!(s, "trace {} l={},{}", t.character, t.l, verdict(t.holds())).unwrap();
            }
            writeln!(s, "verified,{}", verdict(r.verified())).unwrap();
            s
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "PSL(2,{}), t = {}, ε = {}; family {} (rank {}/{}, {} search nodes{})",
                r.q,
                r.t,
                r.epsilon,
                e.family(),
                e.rank,
                e.variables,
                e.nodes,
                if e.augmented { ", augmented" } else { "" }
            )
            .unwrap();
            writeln!(s, "{}", r.summary()).unwrap();
            text_list(&mut s, r.solutions(), &r.tpa);
            if r.diff.is_empty() {
                writeln!(s, "expected set: match").unwrap();
            } else {
                writeln!(s, "expected set: MISMATCH").unwrap();
                write!(s, "{}", r.diff).unwrap();
            }
            for suf in &r.sufficiency {
                writeln!(
                    s,
                    "sufficiency vs {} Brauer characters mod p, ψ_h multiplicities: {}",
                    suf.characters,
                    verdict(suf.passed())
                )
                .unwrap();
                for f in &suf.failures {
                    writeln!(s, "  {f}").unwrap();
                }
            }
            writeln!(
                s,
                "accumulated values ε̃_1(2) = ε̃_1(t) = 0, ε̃_1(2t) = 1: {}",
                verdict(r.accumulated_ok)
            )
            .unwrap();
            writeln!(
                s,
                "divisibility t | ε̃_1(t), 2 | ε̃_1(2): {}",
                verdict(r.wagner_ok)
            )
            .unwrap();
            let traces_ok = r.trace_identities.iter().all(|t| t.holds());
            writeln!(
                s,
                "trace identities for χ_2, χ_4 at g_0^2: {}",
                verdict(traces_ok)
            )
            .unwrap();
            for t in r.trace_identities.iter().filter(|t| !t.holds()) {
                writeln!(
                    s,
                    "  {} l={}: {} ≠ {}",
                    t.character, t.l, t.value, t.expected
                )
                .unwrap();
            }
            writeln!(
                s,
                "{}",
                if r.verified() {
                    "verified"
                } else {
                    "NOT verified"
                }
            )
            .unwrap();
            s
        }
    }
}

fn v4_json(report: &V4Report) -> Value {
    json!({
        "passed": report.passed(),
        "entries": report.entries.iter().map(|e| json!({
            "character": e.character,
            "l": e.l,
            "mu": e.mu.to_string(),
            "ok": e.ok,
        })).collect::<Vec<_>>(),
    })
}

pub fn check(outcomes: &[CheckOutcome], family: &str, format: Format) -> String {
    let all = outcomes.iter().all(CheckOutcome::passed);
    match format {
        Format::Json => pretty(&json!({
            "family": family,
            "passed": all,
            "distributions": outcomes.iter().map(|o| json!({
                "distribution": dist_json(&o.distribution),
                "V1": o.condition_ok("V1"),
                "V2": o.condition_ok("V2"),
                "V3": o.condition_ok("V3"),
                "violations": o.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "V4": o.v4.as_ref().map(v4_json),
                "passed": o.passed(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("distribution,condition,character,l,mu,result\n");
            for (i, o) in outcomes.iter().enumerate() {
                for c in ["V1", "V2", "V3"] {
                    writeln!(s, "{i},{c},,,,{}", verdict(o.condition_ok(c))).unwrap();
                }
                if let Some(v4) = &o.v4 {
                    for e in &v4.entries {
                        writeln!(
                            s,
                            "{i},V4,{},{},{},{}",
                            e.character,
                            e.l,
                            e.mu,
                            verdict(e.ok)
                        )
                        .unwrap();
                    }
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (i, o) in outcomes.iter().enumerate() {
                writeln!(s, "#{i}: {}", o.distribution).unwrap();
                for c in ["V1", "V2", "V3"] {
                    writeln!(s, "  {c}: {}", verdict(o.condition_ok(c))).unwrap();
                }
                for v in &o.violations {
                    writeln!(s, "    {v}").unwrap();
                }
                match &o.v4 {
                    None => writeln!(s, "  V4: skipped").unwrap(),
                    Some(v4) => {
                        writeln!(s, "  V4 ({family}): {}", verdict(v4.passed())).unwrap();
                        for line in v4.to_string().lines() {
                            writeln!(s, "    {line}").unwrap();
                        }
                    }
                }
            }
            writeln!(s, "{}", if all { "all conditions hold" } else { "FAILED" }).unwrap();
            s
        }
    }
}

pub fn char_table(
    label: &str,
    table: &ClassFunction<BigInt>,
    frame: &CyclicFrame,
    format: Format,
) -> String {
    let m = frame.m();
    let value = |e: u64| {
        let v = table.at(e as i64);
        v.as_integer()
            .map_or_else(|| v.to_string(), |i| i.to_string())
    };
    let class = |e: u64| {
        if e == 0 {
            "1".to_string()
        } else {
            format!("g_0^{e}")
        }
    };
    match format {
        Format::Json => pretty(&json!({
            "character": label,
            "q": frame.q(),
            "m": m,
            "values": frame.classes().iter().map(|c| json!({
                "exp": c.exp,
                "order": c.order,
                "value": value(c.exp),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("character,exp,order,value\n");
            for c in frame.classes() {
                writeln!(s, "{label},{},{},\"{}\"", c.exp, c.order, value(c.exp)).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let mut head = vec![format!("{label}({})={}", class(0), value(0))];
            if m % 2 == 0 && m > 1 {
                head.push(format!("{label}({})={}", class(m / 2), value(m / 2)));
            }
            writeln!(s, "{}", head.join(", ")).unwrap();
            for c in frame.classes() {
                writeln!(
                    s,
                    "  {label}({}) = {}   [order {}]",
                    class(c.exp),
                    value(c.exp),
                    c.order
                )
                .unwrap();
            }
            s
        }
    }
}
