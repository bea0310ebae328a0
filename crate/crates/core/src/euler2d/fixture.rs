//! Verbatim transcriptions of printed conservation laws and term-level
//! comparison against computed ones.
//!
//! File format, one entry per line:
//!
//! ```text
//! # comment
//! @name ex1
//! @variant D
//! @generator u - x*u_x
//! <label> <slot> <part> [?] = <expression>   # source anchor
//! ```
//!
//! `slot` is `dx^dy`, `dy^dt` or `dt^dx`; `part` selects the coefficient
//! of `s_xx`, `s_x` or `s`, or the `lambda`, `mu`, `eps` or parameter-free
//! share of the remaining terms. A `?` marks an uncertain transcription.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::Result;
use crate::exprlang::{parse, ParseError, SourceSpan};
use crate::kernel::{Coeff, Dep, Denominator, Expr, Generator, Monomial, Param};
use crate::onshell::Variant;
use crate::varcalc::HorizontalForm2;

pub const EXAMPLE1: &str = include_str!("../../fixtures/example1.txt");
pub const EXAMPLE2: &str = include_str!("../../fixtures/example2.txt");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    DxDy,
    DyDt,
    DtDx,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::DxDy, Slot::DyDt, Slot::DtDx];

    pub fn name(self) -> &'static str {
        match self {
            Slot::DxDy => "dx^dy",
            Slot::DyDt => "dy^dt",
            Slot::DtDx => "dt^dx",
        }
    }

    fn parse(s: &str) -> Option<Slot> {
        Slot::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn of(self, form: &HorizontalForm2) -> &Expr {
        match self {
            Slot::DxDy => &form.dxdy,
            Slot::DyDt => &form.dydt,
            Slot::DtDx => &form.dtdx,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Sxx,
    Sx,
    S,
    Lambda,
    Mu,
    Eps,
    Free,
}

impl Part {
    pub const ALL: [Part; 7] = [Part::Sxx, Part::Sx, Part::S, Part::Lambda, Part::Mu, Part::Eps, Part::Free];

    pub fn name(self) -> &'static str {
        match self {
            Part::Sxx => "s_xx",
            Part::Sx => "s_x",
            Part::S => "s",
            Part::Lambda => "lambda",
            Part::Mu => "mu",
            Part::Eps => "eps",
            Part::Free => "free",
        }
    }

    fn parse(s: &str) -> Option<Part> {
        Part::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureEntry {
    pub label: String,
    pub slot: Slot,
    pub part: Part,
    pub uncertain: bool,
    pub source: String,
    pub anchor: String,
    pub expr: Expr,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientFixture {
    pub name: String,
    pub variant: Variant,
    pub generator: String,
    pub entries: Vec<FixtureEntry>,
}

fn line_error(line: u32, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError { message: msg.into(), span: SourceSpan { line, column: column as u32 + 1, start: 0, end: 0 } }
}

/// Parses a fixture file. Expression errors are reported at their position
/// in the file.
pub fn parse_fixture(text: &str) -> core::result::Result<CoefficientFixture, ParseError> {
    let mut fx = CoefficientFixture { name: String::new(), variant: Variant::D, generator: String::new(), entries: Vec::new() };
    let mut offset = 0usize;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i as u32 + 1;
        let line_start = offset;
        offset += raw.len() + 1;
        let (body, anchor) = match raw.find('#') {
            Some(k) => (&raw[..k], raw[k + 1..].trim()),
            None => (raw, ""),
        };
        let body_trim = body.trim();
        if body_trim.is_empty() {
            continue;
        }
        if let Some(dir) = body_trim.strip_prefix('@') {
            let (key, value) = dir.split_once(char::is_whitespace).unwrap_or((dir, ""));
            let value = value.trim();
            match key {
                "name" => fx.name = value.to_string(),
                "variant" => {
                    fx.variant = value.parse().map_err(|_| line_error(line_no, 0, format!("unknown variant `{value}`")))?
                }
                "generator" => fx.generator = value.to_string(),
                _ => return Err(line_error(line_no, 0, format!("unknown directive `@{key}`"))),
            }
            continue;
        }
        let eq = body.find('=').ok_or_else(|| line_error(line_no, 0, "expected `<label> <slot> <part> = <expr>`"))?;
        let head: Vec<&str> = body[..eq].split_whitespace().collect();
        let (label, slot, part, uncertain) = match head.as_slice() {
            [l, s, p] => (*l, *s, *p, false),
            [l, s, p, "?"] => (*l, *s, *p, true),
            _ => return Err(line_error(line_no, 0, "expected `<label> <slot> <part> [?] =`")),
        };
        let slot = Slot::parse(slot).ok_or_else(|| line_error(line_no, 0, format!("unknown slot `{slot}`")))?;
        let part = Part::parse(part).ok_or_else(|| line_error(line_no, 0, format!("unknown part `{part}`")))?;
        let src = &body[eq + 1..];
        let expr = parse(src).map_err(|mut e| {
            let col = e.span.column as usize + eq;
            e.span = SourceSpan {
                line: line_no,
                column: col as u32 + 1,
                start: line_start + eq + 1 + e.span.start,
                end: line_start + eq + 1 + e.span.end,
            };
            e
        })?;
        let lead = src.len() - src.trim_start().len();
        let start = line_start + eq + 1 + lead;
        fx.entries.push(FixtureEntry {
            label: label.to_string(),
            slot,
            part,
            uncertain,
            source: src.trim().to_string(),
            anchor: anchor.to_string(),
            expr,
            span: SourceSpan { line: line_no, column: (eq + 2 + lead) as u32, start, end: start + src.trim().len() },
        });
    }
    Ok(fx)
}

fn jet(dep: Dep, x: u8) -> Generator {
    Generator::jet(dep, 0, x, 0)
}

/// Splits a coefficient into its `s_xx`, `s_x`, `s` coefficients and the
/// `λ`, `μ`, `ε` and parameter-free shares of the rest. Parts that vanish
/// are omitted; anything nonlinear stays in the free share.
pub fn split_parts(c: &Expr) -> Result<BTreeMap<Part, Expr>> {
    let mut out = BTreeMap::new();
    let mut rest = c.clone();
    for (part, g) in [(Part::Sxx, jet(Dep::S, 2)), (Part::Sx, jet(Dep::S, 1)), (Part::S, jet(Dep::S, 0))] {
        let k = c.partial(g);
        let k = drop_gens(&k, &[jet(Dep::S, 0), jet(Dep::S, 1), jet(Dep::S, 2)])?;
        if !k.is_zero() {
            rest = rest.sub(&k.mul(&Expr::var(g)));
            out.insert(part, k.normalize());
        }
    }
    let params = [Param::Lambda, Param::Mu, Param::Eps].map(Generator::Param);
    let rest_base = rest.clone();
    for (part, g) in [(Part::Lambda, params[0]), (Part::Mu, params[1]), (Part::Eps, params[2])] {
        let k = drop_gens(&rest_base.partial(g), &params)?;
        if !k.is_zero() {
            rest = rest.sub(&k.mul(&Expr::var(g)));
            out.insert(part, k.normalize());
        }
    }
    if !rest.is_zero() {
        out.insert(Part::Free, rest.normalize());
    }
    Ok(out)
}

/// Sets the given generators to zero.
fn drop_gens(e: &Expr, gens: &[Generator]) -> Result<Expr> {
    if !gens.iter().any(|g| e.contains(*g)) {
        return Ok(e.clone());
    }
    let bindings = gens.iter().map(|g| (*g, Expr::zero())).collect();
    e.substitute(&bindings)
}

/// One monomial whose coefficients differ.
#[derive(Clone, Debug, PartialEq)]
pub struct TermMismatch {
    pub monomial: Monomial,
    pub computed: Coeff,
    pub fixture: Coeff,
}

/// Comparison of one selected part over the common denominator of both
/// sides.
#[derive(Clone, Debug, PartialEq)]
pub struct PartDiff {
    pub slot: Slot,
    pub part: Part,
    pub labels: Vec<String>,
    pub anchors: Vec<String>,
    pub uncertain: bool,
    pub denominator: Denominator,
    pub only_computed: Vec<(Monomial, Coeff)>,
    pub only_fixture: Vec<(Monomial, Coeff)>,
    pub mismatched: Vec<TermMismatch>,
}

impl PartDiff {
    pub fn is_empty(&self) -> bool {
        self.only_computed.is_empty() && self.only_fixture.is_empty() && self.mismatched.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.only_computed.len() + self.only_fixture.len() + self.mismatched.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureDiff {
    pub fixture: String,
    pub parts: Vec<PartDiff>,
}

impl FixtureDiff {
    /// No differences at all.
    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(PartDiff::is_empty)
    }

    /// No differences outside uncertain transcriptions.
    pub fn is_empty_where_certain(&self) -> bool {
        self.parts.iter().all(|p| p.uncertain || p.is_empty())
    }

    pub fn mismatching(&self) -> impl Iterator<Item = &PartDiff> {
        self.parts.iter().filter(|p| !p.is_empty())
    }
}

type Terms = Vec<(Monomial, Coeff)>;

fn term_diff(computed: &Expr, fixture: &Expr) -> (Denominator, Terms, Terms, Vec<TermMismatch>) {
    let (nc, nf, den) = Expr::over_common_denominator(&computed.normalize(), &fixture.normalize());
    let fmap: BTreeMap<&Monomial, &Coeff> = nf.terms().iter().map(|(m, c)| (m, c)).collect();
    let cmap: BTreeMap<&Monomial, &Coeff> = nc.terms().iter().map(|(m, c)| (m, c)).collect();
    let mut only_c = Vec::new();
    let mut mism = Vec::new();
    for (m, c) in nc.terms() {
        match fmap.get(m) {
            None => only_c.push((m.clone(), c.clone())),
            Some(f) if *f != c => {
                mism.push(TermMismatch { monomial: m.clone(), computed: c.clone(), fixture: (*f).clone() })
            }
            _ => {}
        }
    }
    let only_f = nf.terms().iter().filter(|(m, _)| !cmap.contains_key(m)).cloned().collect();
    (den, only_c, only_f, mism)
}

/// Compares every `(slot, part)` that is nonzero on either side.
pub fn diff_fixture(computed: &HorizontalForm2, fixture: &CoefficientFixture) -> Result<FixtureDiff> {
    let mut parts = Vec::new();
    for slot in Slot::ALL {
        let cparts = split_parts(slot.of(computed))?;
        let mut fparts: BTreeMap<Part, (Expr, Vec<String>, Vec<String>, bool)> = BTreeMap::new();
        for e in fixture.entries.iter().filter(|e| e.slot == slot) {
            let entry = fparts.entry(e.part).or_insert_with(|| (Expr::zero(), Vec::new(), Vec::new(), false));
            entry.0 = entry.0.add(&e.expr);
            entry.1.push(e.label.clone());
            entry.2.push(format!("{}:{}", e.span.line, e.anchor));
            entry.3 |= e.uncertain;
        }
        for part in Part::ALL {
            let c = cparts.get(&part);
            let f = fparts.get(&part);
            if c.is_none() && f.is_none() {
                continue;
            }
            let zero = Expr::zero();
            let (den, only_computed, only_fixture, mismatched) =
                term_diff(c.unwrap_or(&zero), f.map(|x| &x.0).unwrap_or(&zero));
            parts.push(PartDiff {
                slot,
                part,
                labels: f.map(|x| x.1.clone()).unwrap_or_default(),
                anchors: f.map(|x| x.2.clone()).unwrap_or_default(),
                uncertain: f.is_some_and(|x| x.3),
                denominator: den,
                only_computed,
                only_fixture,
                mismatched,
            });
        }
    }
    Ok(FixtureDiff { fixture: fixture.name.clone(), parts })
}

fn fmt_term(m: &Monomial, c: &Coeff) -> String {
    if m.is_one() {
        return c.to_string();
    }
    let mono: Vec<String> = m
        .vars()
        .iter()
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    if c.is_one() {
        mono.join("*")
    } else if c.is_real() && !c.re.is_negative() {
        format!("{}*{}", c, mono.join("*"))
    } else {
        format!("({})*{}", c, mono.join("*"))
    }
}

impl fmt::Display for PartDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = if self.labels.is_empty() { "(none)".to_string() } else { self.labels.join("+") };
        let flag = if self.uncertain { " [transcription uncertain]" } else { "" };
        if self.is_empty() {
            return write!(f, "{} {} {}: match{}", self.slot.name(), self.part.name(), labels, flag);
        }
        writeln!(
            f,
            "{} {} {}: {} differing terms over denominator {}{}",
            self.slot.name(),
            self.part.name(),
            labels,
            self.term_count(),
            self.denominator,
            flag
        )?;
        for (m, c) in &self.only_computed {
            writeln!(f, "  computed only: {}", fmt_term(m, c))?;
        }
        for (m, c) in &self.only_fixture {
            writeln!(f, "  fixture only:  {}", fmt_term(m, c))?;
        }
        for t in &self.mismatched {
            writeln!(f, "  coefficient of {}: computed {}, fixture {}", fmt_term(&t.monomial, &Coeff::ONE), t.computed, t.fixture)?;
        }
        Ok(())
    }
}
