//! The two-dimensional Euler equation: its two forms, symmetries,
//! cosymmetries, canonical conservation laws and the nonlocal conservation
//! laws built from the covering.
//!
//! Formulas are kept as expression text and parsed on use, so every
//! transcription can be read next to the printed source.

mod fixture;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use fixture::{
    diff_fixture, parse_fixture, split_parts, FixtureDiff, FixtureEntry, Part, PartDiff, CoefficientFixture, Slot,
    TermMismatch, EXAMPLE1, EXAMPLE2,
};
pub use crate::onshell::{CoveringRules, OnShellSystem, Variant};

use crate::error::{Error, Result};
use crate::exprlang::parse;
use crate::jetspace::{self, Matrix3};
use crate::kernel::{Coeff, Dep, Expr, Generator, Rational};
use crate::report::VerificationReport;
use crate::varcalc::{self, horizontal_differential, HorizontalForm2};

fn text(src: &str) -> Expr {
    parse(src).unwrap_or_else(|e| panic!("built-in formula `{src}`: {e}"))
}

/// `F = L(u_t) − J(u, L(u))`, expanded.
pub fn builtin_f(variant: Variant) -> Result<Expr> {
    crate::onshell::equation(variant)
}

/// A named candidate symmetry generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub source: String,
    pub expr: Expr,
}

impl GeneratorSpec {
    pub fn new(name: &str, source: &str) -> Self {
        GeneratorSpec { name: name.to_string(), source: source.to_string(), expr: text(source) }
    }

    /// A generator given as an expression; rejects `s`, `q`, `p` jets.
    pub fn from_text(name: &str, source: &str) -> Result<Self> {
        let expr = parse(source)?;
        if expr.generators().iter().any(|g| matches!(g, Generator::Jet(d, _) if *d != Dep::U)) {
            return Err(Error::Unsupported(format!("generator `{source}` may only contain u-jets")));
        }
        Ok(GeneratorSpec { name: name.to_string(), source: source.to_string(), expr })
    }
}

/// `φ₄` as printed and the reading with `u_y` in place of `u`.
pub const PHI4_PRINTED: &str = "-t*x*u_x + t*y*u + x*y";
pub const PHI4_CONJECTURED: &str = "-t*x*u_x + t*y*u_y + x*y";

/// Symmetry generators in list order. For the `D` form these are the
/// printed φ₁…φ₈ with φ₄ in both readings; the Laplace form gets the
/// corresponding list in unrotated coordinates.
pub fn builtin_symmetries(variant: Variant) -> Vec<GeneratorSpec> {
    let table: &[(&str, &str)] = match variant {
        Variant::D => &[
            ("phi1", "-t*u_t - u"),
            ("phi2", "-u_t"),
            ("phi3", "-x*u_x + y*u_y"),
            ("phi4-printed", PHI4_PRINTED),
            ("phi4-conjectured", PHI4_CONJECTURED),
            ("phi5", "-x*u_x - y*u_y + 2*u"),
            ("phi6", "-A1(t)*u_x + A1'(t)*y"),
            ("phi7", "-A2(t)*u_y - A2'(t)*x"),
            ("phi8", "A3(t)"),
        ],
        Variant::Laplace => &[
            ("phi1", "-t*u_t - u"),
            ("phi2", "-u_t"),
            ("phi3", "y*u_x - x*u_y"),
            ("phi4", "t*(y*u_x - x*u_y) - 1/2*(x^2 + y^2)"),
            ("phi5", "-x*u_x - y*u_y + 2*u"),
            ("phi6", "-A1(t)*u_x + A1'(t)*y"),
            ("phi7", "-A2(t)*u_y - A2'(t)*x"),
            ("phi8", "A3(t)"),
        ],
    };
    table.iter().map(|(n, s)| GeneratorSpec::new(n, s)).collect()
}

/// A generator by list name (`phi1`, `phi4-printed`, …), by the example
/// aliases `ex1` and `ex2`, or as an expression.
pub fn lookup_generator(variant: Variant, name: &str) -> Result<GeneratorSpec> {
    if let Some(g) = builtin_symmetries(variant).into_iter().find(|g| g.name == name) {
        return Ok(g);
    }
    match (variant, name) {
        (Variant::D, "phi4") => return Ok(GeneratorSpec::new("phi4-conjectured", PHI4_CONJECTURED)),
        (_, "ex1") => return Ok(GeneratorSpec::new("ex1", "u - x*u_x")),
        (_, "ex2") => return Ok(GeneratorSpec::new("ex2", "A1(t)")),
        _ => {}
    }
    GeneratorSpec::from_text(name, name)
}

/// A cosymmetry candidate of the covering-extended equation.
#[derive(Clone, Debug, PartialEq)]
pub struct CosymmetrySpec {
    pub variant: Variant,
    pub name: String,
    pub source: String,
    pub expr: Expr,
}

impl CosymmetrySpec {
    fn new(variant: Variant, name: &str, source: &str) -> Self {
        CosymmetrySpec { variant, name: name.to_string(), source: source.to_string(), expr: text(source) }
    }
}

/// The printed cosymmetry `p₀` of each variant.
pub fn printed_cosymmetry(variant: Variant) -> CosymmetrySpec {
    match variant {
        Variant::D => CosymmetrySpec::new(variant, "p0", "s - lambda*t*x*y - (mu + 2*eps)*t*u"),
        Variant::Laplace => {
            CosymmetrySpec::new(variant, "p0-printed", "s - (mu + 2*eps)*t*u - 1/4*lambda*(x^2 + y^2)")
        }
    }
}

/// The cosymmetry used to build conservation laws. For the Laplace form
/// the `λ` term carries a factor `t`, as its `D`-form counterpart does;
/// without it the function is not a cosymmetry.
pub fn builtin_cosymmetry(variant: Variant) -> CosymmetrySpec {
    match variant {
        Variant::D => printed_cosymmetry(variant),
        Variant::Laplace => CosymmetrySpec::new(variant, "p0", "s - (mu + 2*eps)*t*u - 1/4*lambda*t*(x^2 + y^2)"),
    }
}

/// Coefficient texts of a canonical conservation law in `q`, `p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTexts {
    pub dxdy: &'static str,
    pub dydt: &'static str,
    pub dtdx: &'static str,
}

const K_FORM: CanonicalTexts = CanonicalTexts {
    dxdy: "D(q)*p",
    dydt: "u_y*(q*D(p) + D(q)*p) - D(u_y)*q*p - 1/2*Dy(q_t*p) - q_y*(p_t - u_x*p_y) + u_yy*q*p_x",
    dtdx: "-u_x*(q*D(p) + D(q)*p) + D(u_x)*q*p + 1/2*Dx(q_t*p) + q*(p_tx - u_xx*p_y) - u_y*q_x*p_x",
};

const N_PRINTED: CanonicalTexts = CanonicalTexts {
    dxdy: "Delta(q)*p",
    dydt: "q*p_tx - q_x*p_t + u_y*(Delta(q)*p - q_x*p_x + q*p_xx) + Delta(q_y)*p \
           - u_x*(q*p_xy + q_xy*p) - u_xy*(q_x*p - q*p_x) + u_yy*q*p_y",
    dtdx: "q*p_ty - q_y*p_t + u_x*(q_y*p_y - q*p_y + q_x*p_x - q_yy*p) + u_y*(q*p_xy - q_y*p_x) \
           - u_xx*q*p_x - u_yy*q_x*p - u_xy*q*p_y",
};

/// `N₁` with `Δu q_y p` for `Δq_y p`, and `N₂` with `q p_yy` for `q p_y`
/// inside the `u_x` bracket.
const N_FORM: CanonicalTexts = CanonicalTexts {
    dxdy: "Delta(q)*p",
    dydt: "q*p_tx - q_x*p_t + u_y*(Delta(q)*p - q_x*p_x + q*p_xx) + Delta(u)*q_y*p \
           - u_x*(q*p_xy + q_xy*p) - u_xy*(q_x*p - q*p_x) + u_yy*q*p_y",
    dtdx: "q*p_ty - q_y*p_t + u_x*(q_y*p_y - q*p_yy + q_x*p_x - q_yy*p) + u_y*(q*p_xy - q_y*p_x) \
           - u_xx*q*p_x - u_yy*q_x*p - u_xy*q*p_y",
};

/// Canonical form coefficients as printed.
pub fn printed_canonical_texts(variant: Variant) -> CanonicalTexts {
    match variant {
        Variant::D => K_FORM,
        Variant::Laplace => N_PRINTED,
    }
}

/// Canonical form coefficients in use.
pub fn canonical_texts(variant: Variant) -> CanonicalTexts {
    match variant {
        Variant::D => K_FORM,
        Variant::Laplace => N_FORM,
    }
}

fn texts_form(t: CanonicalTexts) -> HorizontalForm2 {
    HorizontalForm2::new(text(t.dxdy), text(t.dydt), text(t.dtdx))
}

/// The canonical conservation law with symbolic `q`, `p`.
pub fn canonical_form2_symbolic(variant: Variant) -> HorizontalForm2 {
    texts_form(canonical_texts(variant))
}

/// The canonical conservation law as printed, with symbolic `q`, `p`.
pub fn printed_canonical_form2_symbolic(variant: Variant) -> HorizontalForm2 {
    texts_form(printed_canonical_texts(variant))
}

/// The canonical conservation law at `q = q_expr`, `p = p_expr`.
pub fn canonical_form2(variant: Variant, q_expr: &Expr, p_expr: &Expr) -> Result<HorizontalForm2> {
    substitute_qp(&canonical_form2_symbolic(variant), q_expr, p_expr)
}

/// Replaces the symbolic `q`, `p` jets of a form by derivatives of the given
/// expressions.
pub fn substitute_qp(form: &HorizontalForm2, q_expr: &Expr, p_expr: &Expr) -> Result<HorizontalForm2> {
    form.map(|c| jetspace::substitute_jets(c, &[(Dep::Q, q_expr), (Dep::P, p_expr)]))
}

/// `W(d_h Ω) − (ℓ_F(q) p − q ℓ*_F(p))` for symbolic `q`, `p`.
pub fn prop1_residual(variant: Variant, form: &HorizontalForm2) -> Result<Expr> {
    let w = horizontal_differential(form)?.w;
    let green = varcalc::green_remainder_symbolic(&builtin_f(variant)?)?;
    Ok(w.sub(&green))
}

/// The linearization and adjoint equations in closed form: `ℓ_F(q)` and
/// `ℓ*_F(p)` with `L` the variant's operator.
pub fn closed_form_linearizations(variant: Variant) -> (Expr, Expr) {
    match variant {
        Variant::D => (text("D(q_t) - J(q, D(u)) - J(u, D(q))"), text("-D(p_t - J(u, p)) - J(D(u), p)")),
        Variant::Laplace => (
            text("Delta(q_t) - J(q, Delta(u)) - J(u, Delta(q))"),
            text("-Delta(p_t - J(u, p)) - J(Delta(u), p)"),
        ),
    }
}

fn system(variant: Variant, covering: bool) -> Result<OnShellSystem> {
    let sys = OnShellSystem::make_equation_system(variant)?;
    if covering {
        sys.extend_with_covering()
    } else {
        Ok(sys)
    }
}

/// `restrict(ℓ_F(φ))` on the equation.
pub fn verify_symmetry(phi: &GeneratorSpec, variant: Variant) -> Result<VerificationReport> {
    let sys = system(variant, false)?;
    verify_symmetry_in(&sys, phi)
}

pub fn verify_symmetry_in(sys: &OnShellSystem, phi: &GeneratorSpec) -> Result<VerificationReport> {
    let op = varcalc::linearize(&builtin_f(sys.variant())?, Dep::U);
    let residual = sys.restrict(&op.apply(&phi.expr)?)?;
    let id = format!("symmetry/{}/{}", sys.variant().name(), phi.name);
    Ok(VerificationReport::from_residual(id, residual, sys.assumptions()).with_note(format!("q = {}", phi.source)))
}

/// `restrict(ℓ*_F(p₀))` on the equation with the covering.
pub fn verify_cosymmetry(p0: &CosymmetrySpec) -> Result<VerificationReport> {
    let sys = system(p0.variant, true)?;
    verify_cosymmetry_in(&sys, p0)
}

pub fn verify_cosymmetry_in(sys: &OnShellSystem, p0: &CosymmetrySpec) -> Result<VerificationReport> {
    let adj = varcalc::linearize(&builtin_f(sys.variant())?, Dep::U).adjoint()?;
    let residual = sys.restrict(&adj.apply(&p0.expr)?)?;
    let id = format!("cosymmetry/{}/{}", sys.variant().name(), p0.name);
    Ok(VerificationReport::from_residual(id, residual, sys.assumptions()).with_note(format!("p = {}", p0.source)))
}

/// Canonical law at `q = φ`, `p = p₀`, restricted to the covering.
pub fn construct_ncl(variant: Variant, phi: &GeneratorSpec) -> Result<HorizontalForm2> {
    let sys = system(variant, true)?;
    construct_ncl_in(&sys, phi)
}

pub fn construct_ncl_in(sys: &OnShellSystem, phi: &GeneratorSpec) -> Result<HorizontalForm2> {
    let p0 = builtin_cosymmetry(sys.variant());
    let omega = canonical_form2(sys.variant(), &phi.expr, &p0.expr)?;
    omega.map(|c| Ok(sys.restrict(c)?.reduce()))
}

/// `restrict(W(d_h ω))`.
pub fn verify_ncl_closed(claim_id: &str, omega: &HorizontalForm2, sys: &OnShellSystem) -> Result<VerificationReport> {
    let w = horizontal_differential(omega)?.w;
    let residual = sys.restrict(&w)?;
    Ok(VerificationReport::from_residual(claim_id, residual, sys.assumptions()))
}

/// `W(d_h ω) − (P F + Q G₁ + R G₂)` is a total divergence in `u` and `s`.
pub fn verify_decomposition(
    claim_id: &str,
    omega: &HorizontalForm2,
    p: &Expr,
    q: &Expr,
    r: &Expr,
    sys: &OnShellSystem,
) -> Result<VerificationReport> {
    let variant = sys.variant();
    let f = builtin_f(variant)?;
    let (g1, g2) = CoveringRules::defects(variant)?;
    let w = horizontal_differential(omega)?.w;
    let diff = w.sub(&p.mul(&f)).sub(&q.mul(&g1)).sub(&r.mul(&g2));
    let mut report = varcalc::is_total_divergence(claim_id, &diff, &[Dep::U, Dep::S])?;
    let assumptions = sys.assumptions().to_vec();
    if report.is_ok() && !assumptions.is_empty() {
        report.status = crate::report::Status::VerifiedWithAssumptions;
    }
    report.assumptions = assumptions;
    Ok(report)
}

/// The `(P, Q, R)` multipliers printed for the two examples, as text.
pub fn example_multipliers(example: u8) -> Option<[&'static str; 3]> {
    match example {
        1 => Some(["x*s_x + s - 2*t*(mu + 2*eps)*u - 2*lambda*t*x*y", "-x*D(u_x)", "u - x*u_x"]),
        2 => Some(["-A1(t)*(mu + 2*eps)*t", "0", "A1(t)"]),
        _ => None,
    }
}

/// `t̃ = t`, `x̃ = ½(1+i)(x+y)`, `ỹ = −½(1−i)(x−y)`.
pub fn rotation_matrix() -> Matrix3 {
    let half = |re: i64, im: i64| Coeff::new(Rational::new(re, 2), Rational::new(im, 2));
    [
        [Coeff::ONE, Coeff::ZERO, Coeff::ZERO],
        [Coeff::ZERO, half(1, 1), half(1, 1)],
        [Coeff::ZERO, half(-1, 1), half(1, -1)],
    ]
}

/// Result of comparing a transformed equation with a target one.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationOutcome {
    pub report: VerificationReport,
    pub constant: Option<Coeff>,
    pub transformed: Expr,
}

/// Transforms `source` under `m` and looks for `c ≠ 0` with
/// `result = c · target`.
pub fn verify_rotation_with(source: &Expr, target: &Expr, m: &Matrix3) -> Result<RotationOutcome> {
    let transformed = jetspace::apply_linear_change(source, m)?;
    let (lead_m, lead_c) = target.numer().leading().cloned().ok_or(Error::ZeroDivisor)?;
    let c = transformed
        .numer()
        .terms()
        .iter()
        .find(|(m, _)| *m == lead_m)
        .map(|(_, c)| c / &lead_c)
        .filter(|_| transformed.denominator().is_one() && target.denominator().is_one());
    let residual = match &c {
        Some(c) if !c.is_zero() => transformed.sub(&target.scale(c)),
        _ => transformed.clone(),
    };
    let report = VerificationReport::from_residual("rotation", residual, &[]);
    let report = match &c {
        Some(c) => report.with_note(format!("c = {c}")),
        None => report.with_note("no constant multiple"),
    };
    let constant = if report.is_ok() { c } else { None };
    Ok(RotationOutcome { report, constant, transformed })
}

/// The rotation maps the Laplace form onto `c` times the `D` form.
pub fn verify_rotation() -> Result<RotationOutcome> {
    verify_rotation_with(&builtin_f(Variant::Laplace)?, &builtin_f(Variant::D)?, &rotation_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_expansions() {
        assert_eq!(builtin_f(Variant::D).unwrap(), text("u_txy - u_x*u_xyy + u_y*u_xxy"));
        assert_eq!(
            builtin_f(Variant::Laplace).unwrap(),
            text("u_txx + u_tyy - u_x*(u_xxy + u_yyy) + u_y*(u_xxx + u_xyy)")
        );
    }

    #[test]
    fn easy_symmetries() {
        for name in ["phi2", "phi8"] {
            let g = lookup_generator(Variant::D, name).unwrap();
            assert!(verify_symmetry(&g, Variant::D).unwrap().is_ok(), "{name}");
        }
        let u = GeneratorSpec::new("u", "u");
        assert!(!verify_symmetry(&u, Variant::D).unwrap().is_ok());
    }

    #[test]
    fn cosymmetry_d_form() {
        let r = verify_cosymmetry(&builtin_cosymmetry(Variant::D)).unwrap();
        assert_eq!(r.status, crate::report::Status::VerifiedWithAssumptions);
        let mutated = CosymmetrySpec::new(Variant::D, "mutated", "s - lambda*t*x*y");
        assert!(!verify_cosymmetry(&mutated).unwrap().is_ok());
    }

    #[test]
    fn constant_generator_has_no_dxdy() {
        let g = GeneratorSpec::new("one", "1");
        let omega = construct_ncl(Variant::D, &g).unwrap();
        assert!(omega.dxdy.is_zero());
    }

    #[test]
    fn zero_form_is_closed() {
        let sys = system(Variant::D, true).unwrap();
        assert!(verify_ncl_closed("zero", &HorizontalForm2::zero(), &sys).unwrap().is_ok());
    }

    #[test]
    fn identity_rotation() {
        let f = builtin_f(Variant::D).unwrap();
        let out = verify_rotation_with(&f, &f, &jetspace::identity3()).unwrap();
        assert_eq!(out.constant, Some(Coeff::ONE));
    }

    #[test]
    fn rotation_constant() {
        let out = verify_rotation().unwrap();
        assert!(out.report.is_ok());
        assert_eq!(out.constant, Some(Coeff::new(Rational::ZERO, Rational::from_int(-2))));
    }
}
