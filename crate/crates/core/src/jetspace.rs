//! Total derivatives on jet coordinates and the operators built from them.

use alloc::collections::BTreeMap;
use alloc::format;
use core::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};
use crate::kernel::{Accumulator, Coeff, Dep, Expr, Generator, Monomial, Poly};

pub use crate::kernel::{Direction, MultiIndex};

pub const DEFAULT_ORDER_CAP: u32 = 12;

static ORDER_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ORDER_CAP);

/// Highest jet order a total derivative may produce.
pub fn order_cap() -> u32 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u32) {
    ORDER_CAP.store(cap, Ordering::Relaxed);
}

/// `D_d g` for a single generator: `Ok(None)` when it vanishes, and
/// `Ok(Some(None))` when it is the constant one.
fn derive_generator(g: Generator, d: Direction) -> Result<Option<Option<Generator>>> {
    Ok(match g {
        Generator::Indep(k) if k == d => Some(None),
        Generator::Indep(_) | Generator::Param(_) => None,
        Generator::Jet(dep, idx) => {
            let next = Generator::Jet(dep, idx.bump(d));
            let cap = order_cap();
            if idx.order() + 1 > cap {
                return Err(Error::OrderCap { var: next, cap });
            }
            Some(Some(next))
        }
        Generator::ArbFun { id, order } => match d {
            Direction::T => Some(Some(Generator::ArbFun { id, order: order + 1 })),
            _ => None,
        },
    })
}

pub fn total_derivative_poly(p: &Poly, d: Direction) -> Result<Poly> {
    let mut acc = Accumulator::with_capacity(p.len() * 2);
    for (m, c) in p.terms() {
        for &(g, e) in m.vars() {
            let Some(dg) = derive_generator(g, d)? else { continue };
            let rest = m.div(&Monomial::var(g)).expect("g occurs in m");
            let m2 = match dg {
                Some(h) => rest.mul(&Monomial::var(h)),
                None => rest,
            };
            let c2 = if e == 1 { c.clone() } else { c * &Coeff::from_int(e as i64) };
            acc.add(m2, c2);
        }
    }
    Ok(acc.finish())
}

/// `D_d e`.
pub fn total_derivative(e: &Expr, d: Direction) -> Result<Expr> {
    e.derive_with(|p| total_derivative_poly(p, d))
}

pub fn dt(e: &Expr) -> Result<Expr> {
    total_derivative(e, Direction::T)
}

pub fn dx(e: &Expr) -> Result<Expr> {
    total_derivative(e, Direction::X)
}

pub fn dy(e: &Expr) -> Result<Expr> {
    total_derivative(e, Direction::Y)
}

/// `D_σ e`, applied in `t`, `x`, `y` order.
pub fn total_derivative_multi(e: &Expr, sigma: MultiIndex) -> Result<Expr> {
    let mut out = e.clone();
    for d in sigma.directions() {
        out = total_derivative(&out, d)?;
    }
    Ok(out)
}

/// The mixed operator `D_x ∘ D_y`.
pub fn d_mixed(e: &Expr) -> Result<Expr> {
    dx(&dy(e)?)
}

/// The Laplacian `D_x² + D_y²`.
pub fn laplacian(e: &Expr) -> Result<Expr> {
    Ok(dx(&dx(e)?)?.add(&dy(&dy(e)?)?))
}

/// `J(a, b) = a_x b_y − a_y b_x`.
pub fn jacobian_bracket(a: &Expr, b: &Expr) -> Result<Expr> {
    Ok(dx(a)?.mul(&dy(b)?).sub(&dy(a)?.mul(&dx(b)?)))
}

/// `E(e) = x D_x e + y D_y e − 2e`.
pub fn scaling_e(e: &Expr) -> Result<Expr> {
    let x = Expr::var(Generator::X);
    let y = Expr::var(Generator::Y);
    Ok(x.mul(&dx(e)?).add(&y.mul(&dy(e)?)).sub(&e.scale_int(2)))
}

/// Replaces every jet `v_σ` of each listed dependent variable by `D_σ` of
/// its value.
pub fn substitute_jets(e: &Expr, values: &[(Dep, &Expr)]) -> Result<Expr> {
    let mut bindings = BTreeMap::new();
    for g in e.generators() {
        if let Generator::Jet(dep, idx) = g {
            if let Some((_, v)) = values.iter().find(|(d, _)| *d == dep) {
                bindings.insert(g, total_derivative_multi(v, idx)?);
            }
        }
    }
    if bindings.is_empty() {
        return Ok(e.clone());
    }
    e.eval_with(&mut |g| Ok(bindings.get(&g).cloned()))
}

pub type Matrix3 = [[Coeff; 3]; 3];

pub fn identity3() -> Matrix3 {
    let mut m: Matrix3 = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Coeff::ONE;
    }
    m
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn invert3(m: &Matrix3) -> Option<Matrix3> {
    let mut a = m.clone();
    let mut inv = identity3();
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for k in 0..3 {
            a[col][k] = &a[col][k] * &p;
            inv[col][k] = &inv[col][k] * &p;
        }
        for r in 0..3 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..3 {
                a[r][k] = &a[r][k] - &(&f * &a[col][k]);
                inv[r][k] = &inv[r][k] - &(&f * &inv[col][k]);
            }
        }
    }
    Some(inv)
}

/// Rewrites `e`, written in coordinates `(t̃, x̃, ỹ) = M·(t, x, y)` with
/// `ũ = u`, as a differential function of `u` in the plain chart.
///
/// Each tilde derivative `∂/∂x̃ᵢ = Σⱼ (M⁻¹)ⱼᵢ ∂/∂xⱼ` is expanded as a
/// constant-coefficient operator; explicit tilde variables become their
/// linear images.
pub fn apply_linear_change(e: &Expr, m: &Matrix3) -> Result<Expr> {
    let inv = invert3(m).ok_or_else(|| Error::Unsupported("singular change of variables".into()))?;
    for g in e.generators() {
        match g {
            Generator::Jet(Dep::U, _) | Generator::Indep(_) | Generator::Param(_) => {}
            other => {
                return Err(Error::Unsupported(format!(
                    "change of variables on {} (only u-jets and t, x, y)",
                    other
                )))
            }
        }
    }
    // tilde direction i as a linear form over plain directions
    let tilde_dirs: [[Coeff; 3]; 3] =
        core::array::from_fn(|i| core::array::from_fn(|j| inv[j][i].clone()));
    let mut cache: BTreeMap<MultiIndex, Expr> = BTreeMap::new();
    let mut value = |g: Generator| -> Result<Option<Expr>> {
        match g {
            Generator::Indep(d) => {
                let i = d.index();
                let mut acc = Expr::zero();
                for (j, dir) in Direction::ALL.iter().enumerate() {
                    acc = acc.add(&Expr::var(Generator::Indep(*dir)).scale(&m[i][j]));
                }
                Ok(Some(acc))
            }
            Generator::Jet(Dep::U, sigma) => {
                if let Some(v) = cache.get(&sigma) {
                    return Ok(Some(v.clone()));
                }
                // expand Π_i L_i^{σ_i} as a polynomial in commuting D_t, D_x, D_y
                let mut op: BTreeMap<MultiIndex, Coeff> = BTreeMap::new();
                op.insert(MultiIndex::ZERO, Coeff::ONE);
                for d in sigma.directions() {
                    let row = &tilde_dirs[d.index()];
                    let mut next: BTreeMap<MultiIndex, Coeff> = BTreeMap::new();
                    for (idx, c) in &op {
                        for (j, dir) in Direction::ALL.iter().enumerate() {
                            if row[j].is_zero() {
                                continue;
                            }
                            let k = idx.bump(*dir);
                            let v = &(c * &row[j]) + next.get(&k).unwrap_or(&Coeff::ZERO);
                            next.insert(k, v);
                        }
                    }
                    op = next;
                }
                let mut acc = Expr::zero();
                for (idx, c) in op {
                    if !c.is_zero() {
                        acc = acc.add(&Expr::var(Generator::Jet(Dep::U, idx)).scale(&c));
                    }
                }
                cache.insert(sigma, acc.clone());
                Ok(Some(acc))
            }
            _ => Ok(None),
        }
    };
    e.eval_with(&mut value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Param;

    fn u(t: u8, x: u8, y: u8) -> Expr {
        Expr::var(Generator::jet(Dep::U, t, x, y))
    }

    #[test]
    fn basic_total_derivatives() {
        assert_eq!(dx(&u(0, 0, 1)).unwrap(), u(0, 1, 1));
        let a = Expr::var(Generator::ArbFun { id: 1, order: 1 });
        assert_eq!(dt(&a).unwrap(), Expr::var(Generator::ArbFun { id: 1, order: 2 }));
        assert!(dx(&a).unwrap().is_zero());
        assert!(dy(&Expr::var(Generator::Param(Param::Mu))).unwrap().is_zero());
    }

    #[test]
    fn quotient_rule_in_x() {
        let e = u(0, 1, 0).div(&u(0, 1, 1)).unwrap();
        let got = dx(&e).unwrap();
        let want = u(0, 2, 0)
            .mul(&u(0, 1, 1))
            .sub(&u(0, 1, 0).mul(&u(0, 2, 1)))
            .div(&u(0, 1, 1).pow(2).unwrap())
            .unwrap();
        assert!(got.same_value(&want));
    }

    #[test]
    fn multi_index_derivative() {
        assert_eq!(total_derivative_multi(&u(0, 0, 0), MultiIndex::new(1, 1, 1)).unwrap(), u(1, 1, 1));
        let xy = Expr::var(Generator::X).mul(&Expr::var(Generator::Y));
        assert_eq!(total_derivative_multi(&xy, MultiIndex::new(0, 1, 1)).unwrap(), Expr::one());
    }

    #[test]
    fn bracket_examples() {
        let uu = u(0, 0, 0);
        assert!(jacobian_bracket(&uu, &uu).unwrap().is_zero());
        let j = jacobian_bracket(&Expr::var(Generator::X), &Expr::var(Generator::Y)).unwrap();
        assert_eq!(j, Expr::one());
        let got = jacobian_bracket(&uu, &d_mixed(&uu).unwrap()).unwrap();
        let want = u(0, 1, 0).mul(&u(0, 1, 2)).sub(&u(0, 0, 1).mul(&u(0, 2, 1)));
        assert!(got.same_value(&want));
    }

    #[test]
    fn bracket_derivative_rule() {
        let a = u(0, 0, 0);
        let b = u(0, 1, 1);
        let lhs = dy(&jacobian_bracket(&a, &b).unwrap()).unwrap();
        let rhs = jacobian_bracket(&u(0, 0, 1), &b)
            .unwrap()
            .add(&jacobian_bracket(&a, &u(0, 1, 2)).unwrap());
        assert!(lhs.same_value(&rhs));
    }

    #[test]
    fn scaling_operator() {
        let x = Expr::var(Generator::X);
        let y = Expr::var(Generator::Y);
        let got = scaling_e(&u(0, 0, 0)).unwrap();
        let want = x.mul(&u(0, 1, 0)).add(&y.mul(&u(0, 0, 1))).sub(&u(0, 0, 0).scale_int(2));
        assert!(got.same_value(&want));
        let got = scaling_e(&u(0, 1, 1)).unwrap();
        let want = x.mul(&u(0, 2, 1)).add(&y.mul(&u(0, 1, 2))).sub(&u(0, 1, 1).scale_int(2));
        assert!(got.same_value(&want));
        assert!(scaling_e(&x.mul(&x)).unwrap().is_zero());
    }

    #[test]
    fn order_cap_is_enforced() {
        let deep = u(0, 12, 0);
        match dx(&deep) {
            Err(Error::OrderCap { cap, .. }) => assert_eq!(cap, DEFAULT_ORDER_CAP),
            other => panic!("expected order cap error, got {:?}", other),
        }
    }

    #[test]
    fn identity_change_is_noop() {
        let e = u(1, 1, 1).add(&Expr::var(Generator::X).mul(&u(0, 2, 0)));
        assert_eq!(apply_linear_change(&e, &identity3()).unwrap(), e);
    }

    #[test]
    fn change_rejects_fibre_variables() {
        let e = Expr::var(Generator::jet(Dep::S, 0, 1, 0));
        assert!(matches!(apply_linear_change(&e, &identity3()), Err(Error::Unsupported(_))));
        let mut singular = identity3();
        singular[2] = singular[1].clone();
        assert!(apply_linear_change(&u(0, 1, 0), &singular).is_err());
    }
}
