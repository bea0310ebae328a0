use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eulerjet::options::DEFAULT_SEED;
use eulerjet::render::{render_form, render_reports, OutputFormat, RenderOptions};
use eulerjet::scenarios::{self, diff_report, fixture_diff, load_fixture};
use eulerjet::{CliError, Params, RunOptions, SCENARIOS};
use eulerjet_core::euler2d::Variant;
use eulerjet_core::jetspace;
use serde_json::json;

#[derive(Copy, Clone, Debug, ValueEnum)]
enum VariantArg {
    D,
    Laplace,
    Both,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FixtureArg {
    Ex1,
    Ex2,
}

/// Symbolic verifier for conservation laws of the 2D vorticity equation.
#[derive(Debug, Parser)]
#[command(name = "eulerjet", version)]
struct Cli {
    /// Equation form.
    #[arg(long, value_enum, default_value_t = VariantArg::Both, global = true)]
    variant: VariantArg,
    /// Symmetry generator: a list name (phi1..phi8, phi4-printed), ex1, ex2, or an expression in u-jets.
    #[arg(long, global = true)]
    generator: Option<String>,
    /// `symbolic`, or values such as `lambda=1,mu=0,eps=1/2`.
    #[arg(long, default_value = "symbolic", global = true)]
    params: Params,
    /// Highest jet order any computation may reach.
    #[arg(long, global = true)]
    order_cap: Option<u32>,
    #[arg(long, value_enum, env = "EULERJET_FORMAT", default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Directory with example1.txt and example2.txt, or a single fixture file.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Worker threads for `verify`.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Print residuals in full instead of the first terms.
    #[arg(long, global = true)]
    full_residual: bool,
    /// Report elapsed time per check.
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run named scenarios (`all` for every one).
    Verify {
        #[arg(required = true)]
        scenarios: Vec<String>,
    },
    /// Print the restricted conservation law built from a generator.
    Construct,
    /// Compare a computed law with a transcribed fixture.
    Diff {
        #[arg(long, value_enum)]
        fixture: FixtureArg,
    },
    /// Check the complex rotation between the two forms.
    Rotate,
    /// List the scenarios.
    List,
}

impl Cli {
    fn run_options(&self) -> RunOptions {
        RunOptions {
            variants: match self.variant {
                VariantArg::D => vec![Variant::D],
                VariantArg::Laplace => vec![Variant::Laplace],
                VariantArg::Both => Variant::ALL.to_vec(),
            },
            generator: self.generator.clone(),
            params: self.params.clone(),
            fixtures: self.fixtures.clone(),
            seed: self.seed,
            timing: self.timing,
        }
    }

    fn render_options(&self) -> RenderOptions {
        RenderOptions {
            format: match self.format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Latex => OutputFormat::Latex,
            },
            full_residual: self.full_residual,
            timing: self.timing,
        }
    }
}

fn list(format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let items: Vec<_> = SCENARIOS
                .iter()
                .map(|s| json!({"name": s.name, "aliases": s.aliases, "summary": s.summary, "topic": s.topic}))
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut out = String::new();
            for s in SCENARIOS {
                let aliases = if s.aliases.is_empty() { String::new() } else { format!(" ({})", s.aliases.join(", ")) };
                out.push_str(&format!("{:<18} {}{aliases}\n{:<18} [{}]\n", s.name, s.summary, "", s.topic));
            }
            out
        }
    }
}

/// Output and whether every check held.
fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    let opts = cli.run_options();
    let ropts = cli.render_options();
    match &cli.command {
        Command::List => Ok((list(ropts.format), true)),
        Command::Verify { scenarios: names } => {
            let list = scenarios::resolve(names)?;
            let reports = scenarios::run_scenarios(&list, &opts, cli.jobs)?;
            let ok = reports.iter().all(|r| r.is_ok());
            Ok((render_reports(&reports, &ropts), ok))
        }
        Command::Rotate => {
            let reports = scenarios::run_named("rotation", &opts)?;
            let ok = reports.iter().all(|r| r.is_ok());
            Ok((render_reports(&reports, &ropts), ok))
        }
        Command::Construct => {
            let name = cli.generator.as_deref().ok_or_else(|| CliError::Usage("construct needs --generator".into()))?;
            let mut out = String::new();
            for &v in &opts.variants {
                let (g, omega, assumptions) = scenarios::construct(&opts, v, name)?;
                if ropts.format != OutputFormat::Json {
                    out.push_str(&format!("# {} form, q = {}\n", v.name(), g.source));
                }
                out.push_str(&render_form(&omega, &assumptions, &ropts));
            }
            Ok((out, true))
        }
        Command::Diff { fixture } => {
            let n = match fixture {
                FixtureArg::Ex1 => 1,
                FixtureArg::Ex2 => 2,
            };
            let fx = load_fixture(&opts, n)?;
            let (_, d) = fixture_diff(&fx).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = diff_report(&format!("fixture-diff-ex{n}"), &d);
            let ok = d.is_empty_where_certain();
            Ok((render_reports(&[report], &ropts), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.order_cap {
        jetspace::set_order_cap(cap);
    }
    match execute(&cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
