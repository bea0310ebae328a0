mod common;

use std::collections::BTreeMap;

use common::{pool, poly_expr, rational_ast, rational_expr};
use eulerjet_core::exprlang::parse;
use eulerjet_core::kernel::Rational;
use eulerjet_core::{Coeff, Expr, Generator};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = BTreeMap<Generator, Coeff>> {
    proptest::collection::vec((-9i64..10, -3i64..4), pool().len()).prop_map(|vals| {
        pool()
            .into_iter()
            .zip(vals)
            .map(|(g, (re, im))| (g, Coeff::new(Rational::from_int(re), Rational::from_int(im))))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_unique(a in rational_expr(), b in rational_expr(), c in rational_expr()) {
        let left = a.add(&b).mul(&c).normalize();
        let right = c.mul(&b).add(&a.mul(&c)).normalize();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.normalize(), left);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn common_factor_cancels(a in rational_expr(), b in rational_expr()) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).div(&b).unwrap();
        prop_assert_eq!(q.normalize(), a.normalize());
    }

    #[test]
    fn field_laws(a in rational_expr(), b in rational_expr(), c in rational_expr()) {
        prop_assert!(a.add(&b).sub(&b.add(&a)).is_zero());
        prop_assert!(a.mul(&b.mul(&c)).sub(&a.mul(&b).mul(&c)).is_zero());
        prop_assert!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).sub(&Expr::one()).is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in rational_expr(), b in rational_expr(), pt in point()) {
        let (ea, eb) = match (a.eval_at(&pt), b.eval_at(&pt)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()),
        };
        prop_assert_eq!(a.add(&b).eval_at(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!(a.mul(&b).eval_at(&pt).unwrap(), &ea * &eb);
        let z = a.sub(&a.normalize());
        prop_assert!(z.is_zero());
        if !ea.is_zero() {
            prop_assert!(!a.is_zero());
        }
    }

    #[test]
    fn partials_commute(e in rational_expr(), i in 0..pool().len(), j in 0..pool().len()) {
        let (g, h) = (pool()[i], pool()[j]);
        prop_assert!(e.partial(g).partial(h).sub(&e.partial(h).partial(g)).is_zero());
    }

    #[test]
    fn parse_reads_constructed_text(ast in rational_ast()) {
        let parsed = parse(&ast.text()).unwrap();
        prop_assert!(parsed.same_value(&ast.eval()));
    }

    #[test]
    fn parse_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let _ = parse(&String::from_utf8_lossy(&bytes));
    }

    #[test]
    fn parse_never_panics_on_token_soup(s in "[-+*/^()0-9.a-z_A'i ]{0,40}") {
        let _ = parse(&s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_parse_round_trip(e in rational_expr()) {
        let back = parse(&e.to_string()).unwrap();
        prop_assert_eq!(back.normalize(), e.normalize());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polynomial_products_stay_polynomial(a in poly_expr(), b in poly_expr()) {
        prop_assert!(a.mul(&b).is_polynomial());
    }
}
