//! Linearization, formal adjoints, the Euler operator and horizontal forms.
//!
//! Horizontal 2-forms use the basis `dx∧dy, dy∧dt, dt∧dx`, and
//! `d_h(A dx∧dy + B dy∧dt + C dt∧dx) = (D_t A + D_x B + D_y C) dt∧dx∧dy`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::jetspace::{self, Direction, MultiIndex};
use crate::kernel::{Dep, Expr, Generator};
use crate::report::VerificationReport;

/// `Σ c_σ D_σ`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearDiffOperator {
    terms: BTreeMap<MultiIndex, Expr>,
}

impl LinearDiffOperator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an operator, merging repeated multi-indices and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Expr)>>(it: I) -> Self {
        let mut op = Self::new();
        for (sigma, c) in it {
            op.add_term(sigma, &c);
        }
        op
    }

    pub fn add_term(&mut self, sigma: MultiIndex, c: &Expr) {
        let next = match self.terms.get(&sigma) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&sigma);
        } else {
            self.terms.insert(sigma, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sigma: MultiIndex) -> Expr {
        self.terms.get(&sigma).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|s| s.order()).max().unwrap_or(0)
    }

    /// `Σ c_σ D_σ e`.
    pub fn apply(&self, e: &Expr) -> Result<Expr> {
        let mut parts = Vec::with_capacity(self.terms.len());
        for (sigma, c) in &self.terms {
            parts.push(c.mul(&jetspace::total_derivative_multi(e, *sigma)?));
        }
        Ok(Expr::sum(parts.iter()))
    }

    /// `Σ c_σ v_σ` for a symbolic dependent variable `v`.
    pub fn apply_to_jets(&self, v: Dep) -> Expr {
        let parts: Vec<Expr> = self
            .terms
            .iter()
            .map(|(sigma, c)| c.mul(&Expr::var(Generator::Jet(v, *sigma))))
            .collect();
        Expr::sum(parts.iter())
    }

    /// Formal adjoint `Σ (−1)^|σ| D_σ ∘ c_σ`, brought back to the form
    /// `Σ b_τ D_τ` with `b_τ = Σ_{σ ≥ τ} (−1)^|σ| C(σ, τ) D_{σ−τ} c_σ`.
    pub fn adjoint(&self) -> Result<LinearDiffOperator> {
        let mut out = LinearDiffOperator::new();
        for (sigma, c) in &self.terms {
            let sign = if sigma.order() % 2 == 0 { 1 } else { -1 };
            for tau in sigma.below() {
                let rest = sigma.checked_sub(tau).expect("tau below sigma");
                let binom = binomial(sigma.t, tau.t) * binomial(sigma.x, tau.x) * binomial(sigma.y, tau.y);
                let dc = jetspace::total_derivative_multi(c, rest)?;
                out.add_term(tau, &dc.scale_int(sign * binom));
            }
        }
        Ok(out)
    }
}

fn binomial(n: u8, k: u8) -> i64 {
    let (n, k) = (n as i64, k as i64);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Jets of `dep` occurring in `e`.
fn jets_of(e: &Expr, dep: Dep) -> Vec<MultiIndex> {
    e.generators()
        .into_iter()
        .filter_map(|g| match g {
            Generator::Jet(d, idx) if d == dep => Some(idx),
            _ => None,
        })
        .collect()
}

/// Universal linearization `ℓ_F = Σ (∂F/∂v_σ) D_σ` with respect to `dep`.
pub fn linearize(f: &Expr, dep: Dep) -> LinearDiffOperator {
    LinearDiffOperator::from_terms(
        jets_of(f, dep).into_iter().map(|idx| (idx, f.partial(Generator::Jet(dep, idx)))),
    )
}

/// `ℓ_F` together with its value on the jets of `probe`.
pub fn linearize_with_probe(f: &Expr, dep: Dep, probe: Dep) -> (LinearDiffOperator, Expr) {
    let op = linearize(f, dep);
    let applied = op.apply_to_jets(probe);
    (op, applied)
}

/// Variational derivative `E_v(e) = Σ (−1)^|σ| D_σ(∂e/∂v_σ)`.
///
/// Evaluated in nested Horner form, one direction at a time, so each
/// partial sum is differentiated once per level.
pub fn euler_operator(e: &Expr, dep: Dep) -> Result<Expr> {
    let mut grid: BTreeMap<MultiIndex, Expr> = BTreeMap::new();
    for idx in jets_of(e, dep) {
        grid.insert(idx, e.partial(Generator::Jet(dep, idx)));
    }
    // collapse y, then x, then t
    let mut level = grid;
    for d in [Direction::Y, Direction::X, Direction::T] {
        level = horner_collapse(level, d)?;
    }
    Ok(level.remove(&MultiIndex::new(0, 0, 0)).unwrap_or_else(Expr::zero))
}

/// Replaces the entries along direction `d` by `Σ_k (−D_d)^k f_k`,
/// keyed by the index with the `d` component set to zero.
fn horner_collapse(grid: BTreeMap<MultiIndex, Expr>, d: Direction) -> Result<BTreeMap<MultiIndex, Expr>> {
    let mut lines: BTreeMap<MultiIndex, BTreeMap<u8, Expr>> = BTreeMap::new();
    for (idx, f) in grid {
        let k = idx.get(d);
        let mut base = idx;
        for _ in 0..k {
            base = base.lower(d).expect("component positive");
        }
        lines.entry(base).or_default().insert(k, f);
    }
    let mut out = BTreeMap::new();
    for (base, line) in lines {
        let top = *line.keys().next_back().expect("nonempty line");
        let mut acc = Expr::zero();
        for k in (0..=top).rev() {
            if !acc.is_zero() {
                acc = jetspace::total_derivative(&acc, d)?.neg();
            }
            if let Some(f) = line.get(&k) {
                acc = acc.add(f);
            }
        }
        if !acc.is_zero() {
            out.insert(base, acc);
        }
    }
    Ok(out)
}

/// Verified iff the Euler operator in every listed variable vanishes.
pub fn is_total_divergence(claim_id: &str, e: &Expr, deps: &[Dep]) -> Result<VerificationReport> {
    let mut parts = Vec::with_capacity(deps.len());
    for &v in deps {
        parts.push((format!("E_{}", v.name()), euler_operator(e, v)?));
    }
    Ok(VerificationReport::from_components(claim_id, parts, &[]))
}

/// `A dx∧dy + B dy∧dt + C dt∧dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalForm2 {
    pub dxdy: Expr,
    pub dydt: Expr,
    pub dtdx: Expr,
}

impl HorizontalForm2 {
    pub fn zero() -> Self {
        HorizontalForm2 { dxdy: Expr::zero(), dydt: Expr::zero(), dtdx: Expr::zero() }
    }

    pub fn new(dxdy: Expr, dydt: Expr, dtdx: Expr) -> Self {
        HorizontalForm2 { dxdy, dydt, dtdx }
    }

    pub fn is_zero(&self) -> bool {
        self.dxdy.is_zero() && self.dydt.is_zero() && self.dtdx.is_zero()
    }

    pub fn map(&self, mut f: impl FnMut(&Expr) -> Result<Expr>) -> Result<Self> {
        Ok(HorizontalForm2 { dxdy: f(&self.dxdy)?, dydt: f(&self.dydt)?, dtdx: f(&self.dtdx)? })
    }

    pub fn add(&self, o: &Self) -> Self {
        HorizontalForm2 {
            dxdy: self.dxdy.add(&o.dxdy),
            dydt: self.dydt.add(&o.dydt),
            dtdx: self.dtdx.add(&o.dtdx),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HorizontalForm2 {
            dxdy: self.dxdy.sub(&o.dxdy),
            dydt: self.dydt.sub(&o.dydt),
            dtdx: self.dtdx.sub(&o.dtdx),
        }
    }

    /// Coefficients with their basis names.
    pub fn slots(&self) -> [(&'static str, &Expr); 3] {
        [("dx^dy", &self.dxdy), ("dy^dt", &self.dydt), ("dt^dx", &self.dtdx)]
    }
}

/// `W dt∧dx∧dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalForm3 {
    pub w: Expr,
}

pub fn horizontal_differential(omega: &HorizontalForm2) -> Result<HorizontalForm3> {
    let w = jetspace::dt(&omega.dxdy)?
        .add(&jetspace::dx(&omega.dydt)?)
        .add(&jetspace::dy(&omega.dtdx)?);
    Ok(HorizontalForm3 { w })
}

/// `ℓ_F(q) p − q ℓ*_F(p)` with `ℓ_F` taken in `u`.
pub fn green_remainder(f: &Expr, q: &Expr, p: &Expr) -> Result<Expr> {
    if q.is_zero() || p.is_zero() {
        return Ok(Expr::zero());
    }
    let op = linearize(f, Dep::U);
    let adj = op.adjoint()?;
    let lq = op.apply(q)?;
    let lp = adj.apply(p)?;
    Ok(lq.mul(p).sub(&q.mul(&lp)))
}

/// `ℓ_F(q) p − q ℓ*_F(p)` for the symbolic jets `q`, `p`.
pub fn green_remainder_symbolic(f: &Expr) -> Result<Expr> {
    let op = linearize(f, Dep::U);
    let adj = op.adjoint()?;
    let q = Expr::var(Generator::jet(Dep::Q, 0, 0, 0));
    let p = Expr::var(Generator::jet(Dep::P, 0, 0, 0));
    Ok(op.apply_to_jets(Dep::Q).mul(&p).sub(&q.mul(&adj.apply_to_jets(Dep::P))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(dep: Dep, t: u8, x: u8, y: u8) -> Expr {
        Expr::var(Generator::jet(dep, t, x, y))
    }

    #[test]
    fn linearize_product() {
        let f = j(Dep::U, 0, 1, 0).mul(&j(Dep::U, 0, 0, 1));
        let (_, lq) = linearize_with_probe(&f, Dep::U, Dep::Q);
        let expect = j(Dep::Q, 0, 1, 0).mul(&j(Dep::U, 0, 0, 1)).add(&j(Dep::U, 0, 1, 0).mul(&j(Dep::Q, 0, 0, 1)));
        assert!(lq.sub(&expect).is_zero());
    }

    #[test]
    fn linearize_leading_jet() {
        let (_, lq) = linearize_with_probe(&j(Dep::U, 1, 1, 1), Dep::U, Dep::Q);
        assert_eq!(lq, j(Dep::Q, 1, 1, 1));
    }

    #[test]
    fn adjoint_of_dx() {
        let op = LinearDiffOperator::from_terms([(MultiIndex::new(0, 1, 0), Expr::one())]);
        let adj = op.adjoint().unwrap();
        assert_eq!(adj, LinearDiffOperator::from_terms([(MultiIndex::new(0, 1, 0), Expr::int(-1))]));
    }

    #[test]
    fn adjoint_integrates_by_parts() {
        let op = LinearDiffOperator::from_terms([(MultiIndex::new(0, 1, 0), j(Dep::U, 0, 0, 1))]);
        let adj = op.adjoint().unwrap();
        let expect = LinearDiffOperator::from_terms([
            (MultiIndex::new(0, 1, 0), j(Dep::U, 0, 0, 1).neg()),
            (MultiIndex::new(0, 0, 0), j(Dep::U, 0, 1, 1).neg()),
        ]);
        assert_eq!(adj, expect);
    }

    #[test]
    fn euler_examples() {
        let ux = j(Dep::U, 0, 1, 0);
        assert_eq!(euler_operator(&ux.mul(&ux), Dep::U).unwrap(), j(Dep::U, 0, 2, 0).scale_int(-2));
        let div = jetspace::dx(&j(Dep::U, 0, 0, 0).pow(2).unwrap().mul(&j(Dep::U, 0, 0, 1))).unwrap();
        assert!(euler_operator(&div, Dep::U).unwrap().is_zero());
        let qp = j(Dep::Q, 0, 1, 0).mul(&j(Dep::P, 0, 0, 1));
        assert_eq!(euler_operator(&qp, Dep::Q).unwrap(), j(Dep::P, 0, 1, 1).neg());
    }

    #[test]
    fn divergence_report() {
        let e = jetspace::dt(&j(Dep::U, 0, 0, 0).mul(&j(Dep::S, 0, 0, 0)))
            .unwrap()
            .add(&jetspace::dx(&j(Dep::U, 0, 0, 1).pow(2).unwrap()).unwrap());
        assert!(is_total_divergence("t", &e, &[Dep::U, Dep::S]).unwrap().is_ok());
        let ux = j(Dep::U, 0, 1, 0);
        let r = is_total_divergence("t", &ux.mul(&ux), &[Dep::U]).unwrap();
        assert!(!r.is_ok());
        assert_eq!(r.residual, j(Dep::U, 0, 2, 0).scale_int(-2));
    }

    #[test]
    fn differential_examples() {
        let u = j(Dep::U, 0, 0, 0);
        let w = horizontal_differential(&HorizontalForm2::new(u, Expr::zero(), Expr::zero())).unwrap();
        assert_eq!(w.w, j(Dep::U, 1, 0, 0));
        let w = horizontal_differential(&HorizontalForm2::new(Expr::zero(), j(Dep::S, 0, 1, 0), Expr::zero()))
            .unwrap();
        assert_eq!(w.w, j(Dep::S, 0, 2, 0));
    }

    #[test]
    fn green_for_first_derivative() {
        let q = j(Dep::Q, 0, 0, 0);
        let p = j(Dep::P, 0, 0, 0);
        let r = green_remainder(&j(Dep::U, 0, 1, 0), &q, &p).unwrap();
        assert!(r.sub(&jetspace::dx(&q.mul(&p)).unwrap()).is_zero());
        assert!(green_remainder(&j(Dep::U, 0, 1, 0), &Expr::zero(), &p).unwrap().is_zero());
    }
}
