mod common;

use common::{poly_expr, rational_expr};
use eulerjet_core::jetspace::{apply_linear_change, dt, dx, dy, invert3, jacobian_bracket, Matrix3};
use eulerjet_core::varcalc::{
    euler_operator, green_remainder, green_remainder_symbolic, is_total_divergence, linearize, LinearDiffOperator,
};
use eulerjet_core::{Coeff, Dep, Expr, Generator, MultiIndex};
use proptest::prelude::*;

/// Polynomials in `u`-jets up to order 3 and the base coordinates.
fn order3_poly() -> impl Strategy<Value = Expr> {
    let atom = (0u8..2, 0u8..3, 0u8..3, 0u8..4).prop_map(|(t, x, y, which)| match which {
        0 => Expr::var(Generator::X),
        1 => Expr::var(Generator::T),
        _ => {
            let (x, y) = if t + x + y > 3 { (x.min(1), y.min(1)) } else { (x, y) };
            Expr::var(Generator::jet(Dep::U, t, x, y))
        }
    });
    let monomial = (proptest::collection::vec(atom, 1..4), -4i64..5)
        .prop_map(|(atoms, c)| atoms.iter().fold(Expr::int(c), |acc, a| acc.mul(a)));
    proptest::collection::vec(monomial, 1..4).prop_map(|ms| Expr::sum(ms.iter()))
}

fn random_operator() -> impl Strategy<Value = LinearDiffOperator> {
    let term = ((0u8..2, 0u8..3, 0u8..3), rational_expr())
        .prop_map(|((t, x, y), c)| (MultiIndex::new(t, x.min(3 - t), y.min(3 - t - x.min(3 - t))), c));
    proptest::collection::vec(term, 0..4).prop_map(LinearDiffOperator::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn total_derivatives_commute(e in rational_expr()) {
        prop_assert!(dx(&dy(&e).unwrap()).unwrap().sub(&dy(&dx(&e).unwrap()).unwrap()).is_zero());
        prop_assert!(dt(&dx(&e).unwrap()).unwrap().sub(&dx(&dt(&e).unwrap()).unwrap()).is_zero());
        prop_assert!(dt(&dy(&e).unwrap()).unwrap().sub(&dy(&dt(&e).unwrap()).unwrap()).is_zero());
    }

    #[test]
    fn leibniz(a in rational_expr(), b in rational_expr()) {
        let lhs = dx(&a.mul(&b)).unwrap();
        let rhs = dx(&a).unwrap().mul(&b).add(&a.mul(&dx(&b).unwrap()));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn jacobi_identity(a in poly_expr(), b in poly_expr(), c in poly_expr()) {
        let j = |p: &Expr, q: &Expr| jacobian_bracket(p, q).unwrap();
        let s = j(&a, &j(&b, &c)).add(&j(&b, &j(&c, &a))).add(&j(&c, &j(&a, &b)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn euler_annihilates_divergences(e in rational_expr()) {
        for d in [dt(&e).unwrap(), dx(&e).unwrap(), dy(&e).unwrap()] {
            prop_assert!(euler_operator(&d, Dep::U).unwrap().is_zero());
        }
    }

    #[test]
    fn green_formula_is_a_divergence(f in order3_poly()) {
        let r = green_remainder_symbolic(&f).unwrap();
        let rep = is_total_divergence("green", &r, &[Dep::Q, Dep::P]).unwrap();
        prop_assert!(rep.is_ok(), "{}", rep.residual);
    }

    #[test]
    fn green_formula_on_concrete_functions(f in order3_poly(), q in poly_expr(), p in poly_expr()) {
        // any q, p built from the fixed pool; the remainder is a divergence in u
        let r = green_remainder(&f, &q, &p).unwrap();
        let deps: Vec<Dep> = Dep::ALL.to_vec();
        let rep = is_total_divergence("green", &r, &deps).unwrap();
        prop_assert!(rep.is_ok(), "{}", rep.residual);
    }

    #[test]
    fn adjoint_is_an_involution(op in random_operator()) {
        let back = op.adjoint().unwrap().adjoint().unwrap();
        let diff = back.apply_to_jets(Dep::Q).sub(&op.apply_to_jets(Dep::Q));
        prop_assert!(diff.is_zero());
    }

    #[test]
    fn linearization_matches_directional_derivative(f in order3_poly()) {
        let op = linearize(&f, Dep::U);
        let via_op = op.apply_to_jets(Dep::Q);
        let q = Expr::var(Generator::jet(Dep::Q, 0, 0, 0));
        let eps = Generator::Param(eulerjet_core::Param::Eps);
        let shifted = eulerjet_core::jetspace::substitute_jets(
            &f,
            &[(Dep::U, &Expr::var(Generator::jet(Dep::U, 0, 0, 0)).add(&Expr::var(eps).mul(&q)))],
        )
        .unwrap();
        let mut bind = std::collections::BTreeMap::new();
        bind.insert(eps, Expr::zero());
        let direct = shifted.partial(eps).substitute(&bind).unwrap();
        prop_assert!(direct.sub(&via_op).is_zero());
    }

    #[test]
    fn linear_change_inverts(e in order3_poly(), entries in proptest::collection::vec(-3i64..4, 9)) {
        let m: Matrix3 = [
            [Coeff::from_int(entries[0]), Coeff::from_int(entries[1]), Coeff::from_int(entries[2])],
            [Coeff::from_int(entries[3]), Coeff::from_int(entries[4]), Coeff::from_int(entries[5])],
            [Coeff::from_int(entries[6]), Coeff::from_int(entries[7]), Coeff::from_int(entries[8])],
        ];
        let inv = match invert3(&m) {
            Some(inv) => inv,
            None => return Ok(()),
        };
        let there = apply_linear_change(&e, &m).unwrap();
        let back = apply_linear_change(&there, &inv).unwrap();
        prop_assert!(back.sub(&e).is_zero(), "{} -> {}", e, back);
    }
}
