//! Text, JSON and LaTeX rendering of verification reports.

use std::fmt::Write;
use std::str::FromStr;

use eulerjet_core::exprlang::{to_json, to_latex};
use eulerjet_core::report::{Status, VerificationReport};
use eulerjet_core::varcalc::HorizontalForm2;
use eulerjet_core::Expr;
use serde_json::{json, Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "latex" => Ok(OutputFormat::Latex),
            _ => Err(format!("unknown format `{s}` (expected text, json or latex)")),
        }
    }
}

#[derive(Copy, Clone, Debug)]
pub struct RenderOptions {
    pub format: OutputFormat,
    pub full_residual: bool,
    pub timing: bool,
}

/// Terms shown when the residual is abbreviated.
pub const PREVIEW_TERMS: usize = 20;

fn truncated(e: &Expr, full: bool) -> (Expr, bool) {
    let n = e.numer().len();
    if full || n <= PREVIEW_TERMS {
        return (e.clone(), false);
    }
    let head = eulerjet_core::Poly::from_terms(e.numer().terms()[..PREVIEW_TERMS].iter().cloned());
    (Expr::from_poly(head), true)
}

fn expr_text(e: &Expr, fmt: OutputFormat, full: bool) -> String {
    let (shown, cut) = truncated(e, full);
    let mut s = match fmt {
        OutputFormat::Latex => to_latex(&shown),
        _ => shown.to_string(),
    };
    if cut {
        let _ = write!(s, " + ... ({} numerator terms in total)", e.numer().len());
        if !e.denominator().is_one() {
            let _ = write!(s, ", over {}", e.denom());
        }
    }
    s
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Verified => "PASS",
        Status::VerifiedWithAssumptions => "PASS*",
        Status::Failed => "FAIL",
    }
}

pub fn report_text(r: &VerificationReport, opts: &RenderOptions) -> String {
    let mut out = format!("{:<6} {}", status_tag(r.status), r.claim_id);
    if opts.timing {
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(out, " ({ms} ms)");
        }
    }
    out.push('\n');
    for a in &r.assumptions {
        let _ = writeln!(out, "       assuming {} != 0", expr_text(a, opts.format, true));
    }
    for n in &r.notes {
        for (i, line) in n.lines().enumerate() {
            let _ = writeln!(out, "       {} {line}", if i == 0 { "-" } else { " " });
        }
    }
    if !r.residual.is_zero() {
        let _ = writeln!(out, "       residual: {}", expr_text(&r.residual, opts.format, opts.full_residual));
    }
    for (name, c) in &r.components {
        if !c.is_zero() && r.components.len() > 1 {
            let _ = writeln!(out, "       {name}: {}", expr_text(c, opts.format, opts.full_residual));
        }
    }
    out
}

fn expr_json(e: &Expr, full: bool) -> Value {
    let (shown, cut) = truncated(e, full);
    let mut v = to_json(&shown);
    if cut {
        v["truncated"] = json!(true);
    }
    v
}

pub fn report_json(r: &VerificationReport, opts: &RenderOptions) -> Value {
    let mut m = Map::new();
    m.insert("claim_id".into(), json!(r.claim_id));
    m.insert("status".into(), json!(r.status.name()));
    m.insert("residual".into(), expr_json(&r.residual, opts.full_residual));
    m.insert("residual_terms".into(), json!(r.residual.numer().len()));
    m.insert("assumptions".into(), Value::Array(r.assumptions.iter().map(|a| json!(a.to_string())).collect()));
    m.insert("notes".into(), json!(r.notes));
    let comps: Vec<Value> = r
        .components
        .iter()
        .map(|(n, e)| json!({"name": n, "residual": expr_json(e, opts.full_residual), "residual_terms": e.numer().len()}))
        .collect();
    m.insert("components".into(), Value::Array(comps));
    if opts.timing {
        m.insert("elapsed_ms".into(), json!(r.elapsed_ms));
    }
    Value::Object(m)
}

pub fn summary(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    (count(Status::Verified), count(Status::VerifiedWithAssumptions), count(Status::Failed))
}

pub fn render_reports(reports: &[VerificationReport], opts: &RenderOptions) -> String {
    let (v, va, f) = summary(reports);
    match opts.format {
        OutputFormat::Json => {
            let doc = json!({
                "reports": reports.iter().map(|r| report_json(r, opts)).collect::<Vec<_>>(),
                "summary": {"verified": v, "verified_with_assumptions": va, "failed": f, "total": reports.len()},
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Text | OutputFormat::Latex => {
            let mut out: String = reports.iter().map(|r| report_text(r, opts)).collect();
            let _ = writeln!(out, "{} checks: {v} verified, {va} verified with assumptions, {f} failed", reports.len());
            out
        }
    }
}

pub fn render_form(omega: &HorizontalForm2, assumptions: &[Expr], opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Json => {
            let slots: Map<String, Value> =
                omega.slots().iter().map(|(n, e)| (n.to_string(), to_json(e))).collect();
            let doc = json!({
                "form": slots,
                "assumptions": assumptions.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        fmt => {
            let mut out = String::new();
            for (n, e) in omega.slots() {
                let _ = writeln!(out, "{n}: {}", expr_text(e, fmt, true));
            }
            for a in assumptions {
                let _ = writeln!(out, "assuming {} != 0", expr_text(a, fmt, true));
            }
            out
        }
    }
}
