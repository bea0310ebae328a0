//! Text syntax for expressions: a recursive-descent parser and printers.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := atom ("^" NAT)? | "-" factor ;
//! atom   := NUMBER | "i" | param | "t" | "x" | "y" | jetvar | arbfun | call | "(" expr ")" ;
//! param  := "lambda" | "mu" | "eps" ;
//! jetvar := DEP "_" [txy]+ | DEP "[" NAT "," NAT "," NAT "]" | DEP ;   DEP := "u"|"s"|"q"|"p"
//! call   := ("J"|"D"|"Delta"|"E"|"Dt"|"Dx"|"Dy") "(" expr ("," expr)? ")" ;
//! arbfun := "A" NAT ("'"+ | "^(" NAT ")")? "(t)" ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Calls expand
//! at parse time. `NUMBER` is an integer or a finite decimal.

mod parse;
mod print;

use alloc::string::String;

pub use parse::parse;
pub use print::{generator_json, to_json, to_latex, Format};

/// Location of a piece of input; offsets are bytes, line and column are
/// 1-based.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{}:{}: {message}", span.line, span.column)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}
