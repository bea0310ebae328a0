use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use eulerjet_core::exprlang::{parse, ParseError};
use eulerjet_core::onshell::Variant;
use eulerjet_core::{Coeff, Expr, Generator, Param};
use thiserror::Error;

/// Errors that make a command unusable, as opposed to failed checks.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown scenario `{0}` (see `eulerjet list`)")]
    UnknownScenario(String),
    #[error("invalid generator `{name}`: {source}")]
    Generator { name: String, source: eulerjet_core::Error },
    #[error("cannot read fixture {path}: {source}")]
    FixtureIo { path: PathBuf, source: std::io::Error },
    #[error("fixture {path}:{source}")]
    FixtureParse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Parameter handling: fully symbolic, or numeric values substituted into
/// residuals and printed forms.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum Params {
    #[default]
    Symbolic,
    Values(BTreeMap<Param, Coeff>),
}

impl Params {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, Params::Symbolic)
    }

    pub fn bindings(&self) -> BTreeMap<Generator, Expr> {
        match self {
            Params::Symbolic => BTreeMap::new(),
            Params::Values(v) => v.iter().map(|(p, c)| (Generator::Param(*p), Expr::constant(c.clone()))).collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Params::Symbolic => "symbolic".to_string(),
            Params::Values(v) => v.iter().map(|(p, c)| format!("{}={}", p.name(), c)).collect::<Vec<_>>().join(","),
        }
    }
}

impl FromStr for Params {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(Params::Symbolic);
        }
        let mut values = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| format!("expected name=value, got `{item}`"))?;
            let param = Param::ALL
                .into_iter()
                .find(|p| p.name() == name.trim())
                .ok_or_else(|| format!("unknown parameter `{}` (lambda, mu, eps)", name.trim()))?;
            let c = parse(value)
                .map_err(|e| format!("{name}: {e}"))?
                .constant_value()
                .ok_or_else(|| format!("{name}: `{value}` is not a constant"))?;
            values.insert(param, c);
        }
        if values.is_empty() {
            return Err("expected `symbolic` or a list like lambda=1,mu=0".into());
        }
        Ok(Params::Values(values))
    }
}

/// Default seed for the random parts: point samples and the property suite.
pub const DEFAULT_SEED: u64 = 0x00e1_7e12;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub variants: Vec<Variant>,
    pub generator: Option<String>,
    pub params: Params,
    /// Directory holding `example1.txt` and `example2.txt`.
    pub fixtures: Option<PathBuf>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            variants: Variant::ALL.to_vec(),
            generator: None,
            params: Params::Symbolic,
            fixtures: None,
            seed: DEFAULT_SEED,
            timing: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        assert_eq!("symbolic".parse::<Params>().unwrap(), Params::Symbolic);
        let p: Params = "lambda=1, eps=-1/2".parse().unwrap();
        assert_eq!(p.describe(), "lambda=1,eps=-1/2");
        assert!("kappa=1".parse::<Params>().is_err());
        assert!("mu=u".parse::<Params>().is_err());
        assert!("".parse::<Params>().is_err());
    }
}
