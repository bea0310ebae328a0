use alloc::string::String;

use crate::kernel::Generator;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("generator {0} has no assigned value")]
    Unassigned(Generator),
    #[error("binding for {0} refers to itself")]
    SelfReference(Generator),
    #[error("jet order cap {cap} exceeded by {var}")]
    OrderCap { var: Generator, cap: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("restriction did not terminate at {0}")]
    NonTerminating(Generator),
    #[error("{0}")]
    Parse(#[from] crate::exprlang::ParseError),
}

pub type Result<T> = core::result::Result<T, Error>;
