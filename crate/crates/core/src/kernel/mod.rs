//! Exact sparse arithmetic for rational differential expressions.

mod expr;
mod gcd;
mod generator;
mod monomial;
mod poly;
mod rational;

use core::sync::atomic::{AtomicUsize, Ordering};

pub use expr::{Denominator, Expr};
pub use gcd::gcd;
pub use generator::{Dep, Direction, Generator, MultiIndex, Param};
pub use monomial::Monomial;
pub use poly::{Accumulator, Coeff, Poly};
pub use rational::{GaussianRational, Rational};

/// Default numerator size (in terms) past which denominator factors are
/// trial-divided out after each operation.
pub const DEFAULT_GCD_THRESHOLD: usize = 512;

static GCD_THRESHOLD: AtomicUsize = AtomicUsize::new(DEFAULT_GCD_THRESHOLD);

pub fn gcd_threshold() -> usize {
    GCD_THRESHOLD.load(Ordering::Relaxed)
}

pub fn set_gcd_threshold(terms: usize) {
    GCD_THRESHOLD.store(terms, Ordering::Relaxed);
}
