//! Seeded property suite for the expression kernel, runnable from the CLI.

use std::time::Instant;

use eulerjet_core::exprlang::parse;
use eulerjet_core::jetspace::{dt, dx, dy};
use eulerjet_core::report::{Status, VerificationReport};
use eulerjet_core::varcalc::{euler_operator, green_remainder_symbolic, is_total_divergence};
use eulerjet_core::{Coeff, Dep, Expr, Generator, Param};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct PropConfig {
    pub seed: u64,
    pub canonical: usize,
    pub commute: usize,
    pub euler: usize,
    pub green: usize,
    pub round_trip: usize,
}

impl PropConfig {
    pub fn standard(seed: u64) -> Self {
        PropConfig { seed, canonical: 1000, commute: 100, euler: 100, green: 100, round_trip: 500 }
    }
}

fn pool() -> [Generator; 14] {
    [
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
        Generator::Param(Param::Lambda),
        Generator::ArbFun { id: 1, order: 0 },
    ]
}

/// A random expression tree, kept as text and value side by side.
struct Sample {
    expr: Expr,
    text: String,
}

fn leaf(rng: &mut ChaCha8Rng) -> Sample {
    if rng.random_bool(0.75) {
        let g = pool()[rng.random_range(0..pool().len())];
        Sample { expr: Expr::var(g), text: g.to_string() }
    } else {
        let (n, d) = (rng.random_range(-6..7), rng.random_range(1..5));
        let imag = rng.random_bool(0.2);
        let c = Coeff::ratio(n, d);
        let (c, text) = if imag { (&c * &Coeff::I, format!("(({n}/{d})*i)")) } else { (c, format!("({n}/{d})")) };
        Sample { expr: Expr::constant(c), text }
    }
}

fn sample(rng: &mut ChaCha8Rng, depth: u32) -> Sample {
    if depth == 0 || rng.random_bool(0.3) {
        return leaf(rng);
    }
    let a = sample(rng, depth - 1);
    let op = rng.random_range(0..5);
    match op {
        0..=2 => {
            let b = sample(rng, depth - 1);
            let (expr, sym) = match op {
                0 => (a.expr.add(&b.expr), "+"),
                1 => (a.expr.sub(&b.expr), "-"),
                _ => (a.expr.mul(&b.expr), "*"),
            };
            Sample { expr, text: format!("({} {sym} {})", a.text, b.text) }
        }
        3 => {
            let g = pool()[rng.random_range(0..pool().len())];
            let c = rng.random_range(1..4);
            let d = Expr::var(g).add(&Expr::int(c));
            Sample { expr: a.expr.div(&d).expect("nonzero divisor"), text: format!("({} / ({g} + {c}))", a.text) }
        }
        _ => {
            let k = rng.random_range(0..3);
            Sample { expr: a.expr.pow(k).expect("nonnegative power"), text: format!("({})^{k}", a.text) }
        }
    }
}

fn order3_poly(rng: &mut ChaCha8Rng) -> Expr {
    let atom = |rng: &mut ChaCha8Rng| match rng.random_range(0..4) {
        0 => Expr::var(Generator::X),
        1 => Expr::var(Generator::T),
        _ => {
            let t = rng.random_range(0..2u8);
            let x = rng.random_range(0..=3 - t);
            let y = rng.random_range(0..=3 - t - x);
            Expr::var(Generator::jet(Dep::U, t, x, y))
        }
    };
    let mut out = Expr::zero();
    for _ in 0..rng.random_range(1..4) {
        let mut m = Expr::int(rng.random_range(-4..5));
        for _ in 0..rng.random_range(1..4) {
            m = m.mul(&atom(rng));
        }
        out = out.add(&m);
    }
    out
}

/// Runs `cases` trials; each returns `None` on success or a description of
/// the counterexample.
fn property(
    id: &str,
    cases: usize,
    rng: &mut ChaCha8Rng,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Option<String>,
) -> VerificationReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    for _ in 0..cases {
        if let Some(msg) = trial(rng) {
            failures.push(msg);
        }
    }
    let mut r = VerificationReport::from_residual(format!("kernel-props/{id}"), Expr::zero(), &[]);
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    r.notes.push(format!("{} of {cases} cases hold", cases - failures.len()));
    if let Some(first) = failures.first() {
        r.status = Status::Failed;
        r.notes.push(format!("first counterexample: {first}"));
    }
    r
}

pub fn run(cfg: &PropConfig) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();

    out.push(property("canonical-form", cfg.canonical, &mut rng, |rng| {
        let (a, b, c) = (sample(rng, 3), sample(rng, 3), sample(rng, 3));
        let lhs = a.expr.add(&b.expr).mul(&c.expr).normalize();
        let rhs = c.expr.mul(&b.expr).add(&a.expr.mul(&c.expr)).normalize();
        (lhs != rhs || lhs.normalize() != lhs).then(|| format!("({} + {}) * {}", a.text, b.text, c.text))
    }));

    out.push(property("total-derivatives-commute", cfg.commute, &mut rng, |rng| {
        let e = sample(rng, 3);
        let ok = (|| {
            Ok::<_, eulerjet_core::Error>(
                dx(&dy(&e.expr)?)?.sub(&dy(&dx(&e.expr)?)?).is_zero()
                    && dt(&dx(&e.expr)?)?.sub(&dx(&dt(&e.expr)?)?).is_zero()
                    && dt(&dy(&e.expr)?)?.sub(&dy(&dt(&e.expr)?)?).is_zero(),
            )
        })();
        (!matches!(ok, Ok(true))).then_some(e.text)
    }));

    out.push(property("euler-kills-divergences", cfg.euler, &mut rng, |rng| {
        let e = sample(rng, 3);
        let ok = [dt(&e.expr), dx(&e.expr), dy(&e.expr)].into_iter().all(|d| {
            d.and_then(|d| Ok(euler_operator(&d, Dep::U)?.is_zero() && euler_operator(&d, Dep::S)?.is_zero()))
                .unwrap_or(false)
        });
        (!ok).then_some(e.text)
    }));

    out.push(property("green-formula", cfg.green, &mut rng, |rng| {
        let f = order3_poly(rng);
        let ok = green_remainder_symbolic(&f)
            .and_then(|r| is_total_divergence("", &r, &[Dep::Q, Dep::P]))
            .map(|r| r.is_ok())
            .unwrap_or(false);
        (!ok).then(|| f.to_string())
    }));

    out.push(property("print-parse-round-trip", cfg.round_trip, &mut rng, |rng| {
        let s = sample(rng, 3);
        let printed = s.expr.to_string();
        let want = s.expr.normalize();
        let back = parse(&s.text).ok().zip(parse(&printed).ok());
        match back {
            Some((a, b)) if a.normalize() == want && b.normalize() == want => None,
            _ => Some(s.text),
        }
    }));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = PropConfig { seed: 7, canonical: 20, commute: 5, euler: 5, green: 5, round_trip: 20 };
        for r in run(&cfg) {
            assert!(r.is_ok(), "{}: {:?}", r.claim_id, r.notes);
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let cfg = PropConfig { seed: 11, canonical: 10, commute: 3, euler: 3, green: 3, round_trip: 10 };
        let strip = |v: Vec<VerificationReport>| v.into_iter().map(|r| (r.claim_id, r.notes)).collect::<Vec<_>>();
        assert_eq!(strip(run(&cfg)), strip(run(&cfg)));
    }
}
