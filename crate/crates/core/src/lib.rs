//! Jet calculus over exact rational differential expressions.
//!
//! The crate is `no_std` (it needs `alloc`). IO, timing, and the command
//! line live in the `eulerjet` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod euler2d;
pub mod exprlang;
pub mod jetspace;
pub mod kernel;
pub mod onshell;
pub mod report;
pub mod varcalc;

pub use error::{Error, Result};
pub use kernel::{Coeff, Dep, Direction, Expr, Generator, MultiIndex, Param, Poly};
