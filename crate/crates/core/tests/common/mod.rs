//! Random expressions for property tests.

#![allow(dead_code)]

use eulerjet_core::{Coeff, Dep, Expr, Generator, Param};
use proptest::prelude::*;

pub fn pool() -> Vec<Generator> {
    vec![
        Generator::T,
        Generator::X,
        Generator::Y,
        Generator::jet(Dep::U, 0, 0, 0),
        Generator::jet(Dep::U, 0, 1, 0),
        Generator::jet(Dep::U, 0, 0, 1),
        Generator::jet(Dep::U, 0, 1, 1),
        Generator::jet(Dep::U, 1, 0, 0),
        Generator::jet(Dep::U, 0, 2, 1),
        Generator::jet(Dep::S, 0, 0, 0),
        Generator::jet(Dep::S, 0, 1, 0),
        Generator::jet(Dep::Q, 0, 0, 0),
        Generator::jet(Dep::P, 0, 1, 0),
        Generator::Param(Param::Lambda),
        Generator::ArbFun { id: 1, order: 0 },
        Generator::ArbFun { id: 1, order: 1 },
    ]
}

#[derive(Clone, Debug)]
pub enum Ast {
    Gen(usize),
    Num(i64, i64, bool),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u8),
}

impl Ast {
    pub fn eval(&self) -> Expr {
        match self {
            Ast::Gen(i) => Expr::var(pool()[*i]),
            Ast::Num(n, d, imag) => {
                let c = Coeff::ratio(*n, *d);
                let c = if *imag { &c * &Coeff::I } else { c };
                Expr::constant(c)
            }
            Ast::Add(a, b) => a.eval().add(&b.eval()),
            Ast::Sub(a, b) => a.eval().sub(&b.eval()),
            Ast::Mul(a, b) => a.eval().mul(&b.eval()),
            Ast::Div(a, b) => {
                let d = b.eval();
                if d.is_zero() {
                    a.eval()
                } else {
                    a.eval().div(&d).unwrap()
                }
            }
            Ast::Pow(a, k) => a.eval().pow(*k as i32).unwrap(),
        }
    }

    pub fn text(&self) -> String {
        match self {
            Ast::Gen(i) => pool()[*i].to_string(),
            Ast::Num(n, d, imag) => {
                let base = format!("({n}/{d})");
                if *imag { format!("({base}*i)") } else { base }
            }
            Ast::Add(a, b) => format!("({} + {})", a.text(), b.text()),
            Ast::Sub(a, b) => format!("({} - {})", a.text(), b.text()),
            Ast::Mul(a, b) => format!("({} * {})", a.text(), b.text()),
            Ast::Div(a, b) => format!("({} / {})", a.text(), b.text()),
            Ast::Pow(a, k) => format!("({})^{}", a.text(), k),
        }
    }
}

fn leaf() -> impl Strategy<Value = Ast> {
    prop_oneof![
        3 => (0..pool().len()).prop_map(Ast::Gen),
        1 => (-6i64..7, 1i64..5, proptest::bool::weighted(0.2)).prop_map(|(n, d, i)| Ast::Num(n, d, i)),
    ]
}

/// Polynomial expressions: no division.
pub fn poly_ast() -> impl Strategy<Value = Ast> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

/// Rational expressions; divisors are shifted generators so they are never
/// identically zero.
pub fn rational_ast() -> impl Strategy<Value = Ast> {
    let divisor = (0..pool().len(), 1i64..4).prop_map(|(g, c)| Ast::Add(Box::new(Ast::Gen(g)), Box::new(Ast::Num(c, 1, false))));
    leaf().prop_recursive(3, 12, 2, move |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            2 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            1 => (inner.clone(), divisor.clone()).prop_map(|(a, b)| Ast::Div(Box::new(a), Box::new(b))),
            1 => (inner.clone(), 0u8..3).prop_map(|(a, k)| Ast::Pow(Box::new(a), k)),
        ]
    })
}

pub fn rational_expr() -> impl Strategy<Value = Expr> {
    rational_ast().prop_map(|a| a.eval())
}

pub fn poly_expr() -> impl Strategy<Value = Expr> {
    poly_ast().prop_map(|a| a.eval())
}
