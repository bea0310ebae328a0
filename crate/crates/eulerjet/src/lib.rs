//! Scenario runner for the `eulerjet-core` verifications: option handling,
//! report rendering, fixture loading, and a seeded kernel property suite.

pub mod options;
pub mod props;
pub mod render;
pub mod scenarios;

pub use options::{CliError, Params, RunOptions};
pub use scenarios::{find_scenario, resolve, run_named, run_scenarios, Scenario, SCENARIOS};
