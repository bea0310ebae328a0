use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde_json::{json, Value};

use crate::kernel::{Coeff, Expr, Generator, Monomial, Param, Poly, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

impl Format {
    pub fn render(self, e: &Expr) -> String {
        match self {
            Format::Plain => e.to_string(),
            Format::Latex => to_latex(e),
            Format::Json => to_json(e).to_string(),
        }
    }
}

impl core::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" | "text" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text, latex or json)")),
        }
    }
}

/// Generator name in the bracket notation used by the JSON schema.
pub fn generator_json(g: Generator) -> String {
    match g {
        Generator::Jet(dep, idx) => format!("{}[{},{},{}]", dep.name(), idx.t, idx.x, idx.y),
        Generator::ArbFun { id, order: 0 } => format!("A{id}"),
        Generator::ArbFun { id, order } => format!("A{id}^({order})"),
        other => other.to_string(),
    }
}

fn poly_json(p: &Poly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let pows: Vec<Value> = m.vars().iter().map(|&(g, e)| json!([generator_json(g), e])).collect();
            json!({
                "coeff": {"re": c.re.to_string(), "im": c.im.to_string()},
                "pows": pows,
            })
        })
        .collect();
    Value::Array(terms)
}

/// `{"num": [terms], "den": [terms]}`; zero is an empty numerator over one.
pub fn to_json(e: &Expr) -> Value {
    json!({"num": poly_json(e.numer()), "den": poly_json(&e.denom())})
}

fn latex_generator(g: Generator) -> String {
    match g {
        Generator::Indep(d) => d.name().to_string(),
        Generator::Jet(dep, idx) if idx.order() == 0 => dep.name().to_string(),
        Generator::Jet(dep, idx) => format!("{}_{{{}}}", dep.name(), idx),
        Generator::Param(Param::Lambda) => "\\lambda".to_string(),
        Generator::Param(Param::Mu) => "\\mu".to_string(),
        Generator::Param(Param::Eps) => "\\varepsilon".to_string(),
        Generator::ArbFun { id, order } => match order {
            0 => format!("A_{{{id}}}(t)"),
            1..=3 => format!("A_{{{id}}}{}(t)", "'".repeat(order as usize)),
            _ => format!("A_{{{id}}}^{{({order})}}(t)"),
        },
    }
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_coeff(c: &Coeff) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => latex_rational(&c.re),
        (true, false) if c.im.is_one() => "\\mathrm{i}".to_string(),
        (true, false) => format!("{}\\,\\mathrm{{i}}", latex_rational(&c.im)),
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            format!("\\left({} {} {}\\,\\mathrm{{i}}\\right)", latex_rational(&c.re), sign, latex_rational(&c.im.abs()))
        }
    }
}

fn latex_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .vars()
        .iter()
        .map(|&(g, e)| {
            let base = latex_generator(g);
            if e == 1 {
                base
            } else {
                format!("{base}^{{{e}}}")
            }
        })
        .collect();
    parts.join("\\,")
}

fn is_negative(c: &Coeff) -> bool {
    (c.is_real() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative())
}

fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = is_negative(c);
        let c = if neg { -c } else { c.clone() };
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if m.is_one() {
            out.push_str(&latex_coeff(&c));
        } else {
            if !c.is_one() {
                out.push_str(&latex_coeff(&c));
                out.push_str("\\,");
            }
            out.push_str(&latex_monomial(m));
        }
    }
    out
}

/// LaTeX with subscript jet notation, e.g. `u_{xy}`.
pub fn to_latex(e: &Expr) -> String {
    let num = latex_poly(e.numer());
    if e.denominator().is_one() {
        return num;
    }
    let d = e.denominator();
    let mut den: Vec<String> = Vec::new();
    if !d.monomial().is_one() {
        den.push(latex_monomial(d.monomial()));
    }
    for (f, k) in d.factors() {
        if *k == 1 {
            den.push(format!("\\left({}\\right)", latex_poly(f)));
        } else {
            den.push(format!("\\left({}\\right)^{{{k}}}", latex_poly(f)));
        }
    }
    format!("\\frac{{{}}}{{{}}}", num, den.join("\\,"))
}
