//! The equation manifold and its covering as an oriented rewrite system.
//!
//! Jet variables of `u` and `s` are split into internal coordinates and
//! reducible ones. Each reducible jet has a value in internal coordinates,
//! obtained by prolonging a rule and restricting again; values are computed
//! on demand and cached in the system.
//!
//! Orientation:
//!
//! | variant | equation rule         | reducible `u_σ`, σ = (a,b,c) |
//! |---------|-----------------------|------------------------------|
//! | `D`     | `u_txy → J(u, Du)`    | a ≥ 1, b ≥ 1, c ≥ 1          |
//! | `Laplace` | `u_txx → J(u, Δu) − u_tyy` | a ≥ 1, b ≥ 2          |
//!
//! With the covering, `s_σ` is reducible unless σ = (0, b, 0): jets with
//! a t-derivative come from the `s_t` rule, the rest from the `s_y` rule.
//! `q` and `p` jets are never rewritten.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::jetspace::{self, Direction, MultiIndex};
use crate::kernel::{Dep, Expr, Generator, Param};

/// Which form of the vorticity equation is in use.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `D(u_t) = J(u, D(u))` with `D = D_x D_y`.
    D,
    /// `Δu_t = J(u, Δu)`.
    Laplace,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::D, Variant::Laplace];

    pub fn name(self) -> &'static str {
        match self {
            Variant::D => "D",
            Variant::Laplace => "laplace",
        }
    }

    /// The second-order operator of the variant: `D = D_x D_y` or `Δ`.
    pub fn operator(self, e: &Expr) -> Result<Expr> {
        match self {
            Variant::D => jetspace::d_mixed(e),
            Variant::Laplace => jetspace::laplacian(e),
        }
    }

    /// Multi-index of the leading derivative of the equation.
    pub fn leading(self) -> MultiIndex {
        match self {
            Variant::D => MultiIndex::new(1, 1, 1),
            Variant::Laplace => MultiIndex::new(1, 2, 0),
        }
    }
}

impl core::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" | "d" => Ok(Variant::D),
            "laplace" | "Laplace" | "delta" | "Delta" => Ok(Variant::Laplace),
            _ => Err(Error::Unsupported(alloc::format!("unknown variant `{s}`"))),
        }
    }
}

/// `lhs → rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub lhs: Generator,
    pub rhs: Expr,
}

fn u() -> Expr {
    Expr::var(Generator::jet(Dep::U, 0, 0, 0))
}

fn s() -> Expr {
    Expr::var(Generator::jet(Dep::S, 0, 0, 0))
}

fn param(p: Param) -> Expr {
    Expr::var(Generator::Param(p))
}

/// The equation's left-hand side minus right-hand side, `L(u_t) − J(u, L(u))`.
pub fn equation(variant: Variant) -> Result<Expr> {
    let ut = jetspace::dt(&u())?;
    let lu = variant.operator(&u())?;
    Ok(variant.operator(&ut)?.sub(&jetspace::jacobian_bracket(&u(), &lu)?))
}

/// Right-hand sides of the covering before inter-reduction, together with
/// the divisor `L(u)_x` of the `s_y` rule.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringRules {
    pub s_t: Expr,
    pub s_y: Expr,
    pub divisor: Expr,
}

impl CoveringRules {
    /// `s_t = J(u, s) + ε E(u)` and
    /// `s_y = (λ + μ L(u) − ε E(L(u)) + L(u)_y s_x) / L(u)_x`.
    pub fn standard(variant: Variant) -> Result<Self> {
        let eps = param(Param::Eps);
        let s_t = jetspace::jacobian_bracket(&u(), &s())?
            .add(&eps.mul(&jetspace::scaling_e(&u())?));
        let lu = variant.operator(&u())?;
        let divisor = jetspace::dx(&lu)?;
        let numer = param(Param::Lambda)
            .add(&param(Param::Mu).mul(&lu))
            .sub(&eps.mul(&jetspace::scaling_e(&lu)?))
            .add(&jetspace::dy(&lu)?.mul(&jetspace::dx(&s())?));
        let s_y = numer.div(&divisor)?;
        Ok(CoveringRules { s_t, s_y, divisor })
    }

    /// The covering defects `G₁ = s_t − J(u, s) − ε E(u)` and
    /// `G₂ = J(L(u), s) − (λ + μ L(u) − ε E(L(u)))`.
    pub fn defects(variant: Variant) -> Result<(Expr, Expr)> {
        let eps = param(Param::Eps);
        let g1 = jetspace::dt(&s())?
            .sub(&jetspace::jacobian_bracket(&u(), &s())?)
            .sub(&eps.mul(&jetspace::scaling_e(&u())?));
        let lu = variant.operator(&u())?;
        let g2 = jetspace::jacobian_bracket(&lu, &s())?.sub(
            &param(Param::Lambda)
                .add(&param(Param::Mu).mul(&lu))
                .sub(&eps.mul(&jetspace::scaling_e(&lu)?)),
        );
        Ok((g1, g2))
    }
}

/// Rewrite system for one equation variant, optionally with the covering.
///
/// The prolongation cache makes the type `!Sync`; clone it per task.
#[derive(Clone, Debug)]
pub struct OnShellSystem {
    variant: Variant,
    equation: RewriteRule,
    covering: Option<(RewriteRule, RewriteRule)>,
    assumptions: Vec<Expr>,
    cache: RefCell<HashMap<Generator, Expr>>,
}

/// Recursion bound for computing a single jet value. Every step lowers the
/// jet order, so hitting it means the orientation is broken.
const MAX_DEPTH: u32 = 256;

impl OnShellSystem {
    /// The equation alone.
    pub fn make_equation_system(variant: Variant) -> Result<Self> {
        let lead = variant.leading();
        let full = equation(variant)?;
        let lhs = Generator::Jet(Dep::U, lead);
        // the equation is linear in its leading derivative with coefficient 1
        let rest = full.sub(&Expr::var(lhs));
        debug_assert!(!rest.contains(lhs));
        Ok(OnShellSystem {
            variant,
            equation: RewriteRule { lhs, rhs: rest.neg() },
            covering: None,
            assumptions: Vec::new(),
            cache: RefCell::new(HashMap::new()),
        })
    }

    /// Adds the standard covering.
    pub fn extend_with_covering(&self) -> Result<Self> {
        self.extend_with(CoveringRules::standard(self.variant)?)
    }

    /// Adds the given `s_t`, `s_y` rules. The right-hand sides are
    /// inter-reduced against the rest of the system.
    pub fn extend_with(&self, rules: CoveringRules) -> Result<Self> {
        let mut sys = OnShellSystem {
            variant: self.variant,
            equation: self.equation.clone(),
            covering: None,
            assumptions: self.assumptions.clone(),
            cache: RefCell::new(HashMap::new()),
        };
        let s_y = sys.restrict(&rules.s_y)?;
        let s_t_lhs = Generator::jet(Dep::S, 1, 0, 0);
        let s_y_lhs = Generator::jet(Dep::S, 0, 0, 1);
        // s_y may feed into s_t, never the other way round
        sys.covering = Some((
            RewriteRule { lhs: s_t_lhs, rhs: Expr::zero() },
            RewriteRule { lhs: s_y_lhs, rhs: s_y },
        ));
        let s_t = sys.restrict(&rules.s_t)?;
        if let Some((rule, _)) = sys.covering.as_mut() {
            rule.rhs = s_t;
        }
        sys.cache.borrow_mut().clear();
        sys.add_assumption(rules.divisor);
        Ok(sys)
    }

    fn add_assumption(&mut self, e: Expr) {
        if !self.assumptions.iter().any(|a| a.sub(&e).is_zero()) {
            self.assumptions.push(e);
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn equation_rule(&self) -> &RewriteRule {
        &self.equation
    }

    /// `(s_t rule, s_y rule)` if the covering is present.
    pub fn covering_rules(&self) -> Option<(&RewriteRule, &RewriteRule)> {
        self.covering.as_ref().map(|(a, b)| (a, b))
    }

    pub fn has_covering(&self) -> bool {
        self.covering.is_some()
    }

    /// Expressions assumed nonvanishing by the rules.
    pub fn assumptions(&self) -> &[Expr] {
        &self.assumptions
    }

    /// The rule this generator is a derivative of, if it is reducible.
    pub fn reducible(&self, g: Generator) -> bool {
        match g {
            Generator::Jet(Dep::U, idx) => idx.dominates(self.variant.leading()),
            Generator::Jet(Dep::S, idx) => self.covering.is_some() && (idx.t > 0 || idx.y > 0),
            _ => false,
        }
    }

    /// Normal form in internal coordinates.
    pub fn restrict(&self, e: &Expr) -> Result<Expr> {
        self.restrict_at(e, 0)
    }

    fn restrict_at(&self, e: &Expr, depth: u32) -> Result<Expr> {
        if !e.generators().into_iter().any(|g| self.reducible(g)) {
            return Ok(e.clone());
        }
        e.eval_with(&mut |g| {
            if self.reducible(g) {
                self.value(g, depth + 1).map(Some)
            } else {
                Ok(None)
            }
        })
    }

    /// Value of a reducible jet in internal coordinates.
    fn value(&self, g: Generator, depth: u32) -> Result<Expr> {
        if let Some(v) = self.cache.borrow().get(&g) {
            return Ok(v.clone());
        }
        if depth > MAX_DEPTH {
            return Err(Error::NonTerminating(g));
        }
        let (dep, idx) = g.as_jet().expect("reducible generators are jets");
        let (base, rhs) = self.rule_for(dep, idx);
        let v = if idx == base {
            rhs.clone()
        } else {
            // peel one derivative off while staying above the rule's lhs
            let d = Direction::ALL
                .into_iter()
                .find(|&d| idx.lower(d).is_some_and(|lo| lo.dominates(base)))
                .expect("idx strictly dominates base");
            let lower = Generator::Jet(dep, idx.lower(d).expect("checked"));
            let lv = self.value(lower, depth + 1)?;
            let dv = jetspace::total_derivative(&lv, d)?;
            self.restrict_at(&dv, depth + 1)?
        };
        self.cache.borrow_mut().insert(g, v.clone());
        Ok(v)
    }

    fn rule_for(&self, dep: Dep, idx: MultiIndex) -> (MultiIndex, &Expr) {
        match dep {
            Dep::U => (self.variant.leading(), &self.equation.rhs),
            Dep::S => {
                let (st, sy) = self.covering.as_ref().expect("reducible s-jet needs covering");
                if idx.t > 0 {
                    (MultiIndex::unit(Direction::T), &st.rhs)
                } else {
                    (MultiIndex::unit(Direction::Y), &sy.rhs)
                }
            }
            _ => unreachable!("only u and s jets are reducible"),
        }
    }

    /// Restricts after substituting explicit values for generators.
    pub fn restrict_substituted(
        &self,
        e: &Expr,
        bindings: &BTreeMap<Generator, Expr>,
    ) -> Result<Expr> {
        self.restrict(&e.substitute(bindings)?)
    }

    /// Curvature of the covering: `Dt(s_y rhs) − Dy(s_t rhs)`, restricted.
    pub fn flatness_residual(&self) -> Result<Expr> {
        let (st, sy) = self
            .covering
            .as_ref()
            .ok_or_else(|| Error::Unsupported("flatness check needs the covering".into()))?;
        let a = jetspace::dt(&sy.rhs)?;
        let b = jetspace::dy(&st.rhs)?;
        self.restrict(&a.sub(&b))
    }
}
