use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use cursorq::commands::{audit, audit_file, compile, peaks};
use cursorq::config::{parse_lambda, parse_word, ScenarioConfig};
use cursorq::figures::{write_figure, FigureOptions, FIGURE_IDS};
use cursorq::output_dir;
use cursorq::scenario::simulate;
use cursorq_core::walkdyn::PeakFlavor;
use cursorq_core::DEFAULT_LAMBDA;

#[derive(Parser)]
#[command(name = "cursorq", version, about = "Cursor-model Grover machines: figures, compilation, audits")]
struct Cli {
    /// Directory for output files (default: $CURSORQ_OUT, else `.`).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write fig<id>.csv (ids 1, 3, 7, 11, 13-17; `all` for every one).
    Figure {
        id: String,
        #[arg(long, value_parser = parse_lambda)]
        lambda: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        step: Option<f64>,
        /// Hidden word of the full-machine figures, e.g. `+-+`.
        #[arg(long, value_parser = parse_word)]
        target: Option<Vec<i8>>,
    },
    /// Build a machine, write its graph file and print its logical path.
    Compile {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Graph file path (default: <out-dir>/<machine>.graph).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check conservation laws and the reduced/full equivalence.
    Audit {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Audit this graph file instead of a built machine.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// First-peak position and height.
    Peaks {
        #[arg(long, default_value_t = 6)]
        mu: usize,
        #[arg(long, value_parser = parse_lambda, default_value_t = DEFAULT_LAMBDA)]
        lambda: f64,
        #[arg(long, default_value = "chain")]
        flavor: PeakFlavor,
        /// Chain length s or counter width K of the exact series.
        #[arg(long)]
        length: Option<usize>,
    },
    /// Observable time series of a scenario, written as CSV.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// CSV file name inside the output directory.
        #[arg(long, default_value = "simulate.csv")]
        name: String,
    },
}

/// Scenario flags; each overrides the same key of `--config`.
#[derive(Args)]
struct ScenarioArgs {
    /// `key = value` file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    machine: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(short = 'K', long = "counter-bits")]
    counter_bits: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    input: Option<String>,
    #[arg(long)]
    t_min: Option<String>,
    #[arg(long)]
    t_max: Option<String>,
    #[arg(long)]
    step: Option<String>,
    /// Comma list: cursor, path_index, counter<k>, register, completed,
    /// final_site, norm, energy, pr_exact, pr_closed.
    #[arg(long)]
    outputs: Option<String>,
    /// Largest sector dimension evolved.
    #[arg(long)]
    cap: Option<String>,
    /// Any config key, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<ScenarioConfig> {
        let named = [
            ("machine", &self.machine),
            ("mu", &self.mu),
            ("K", &self.counter_bits),
            ("s", &self.s),
            ("lambda", &self.lambda),
            ("variant", &self.variant),
            ("target", &self.target),
            ("input", &self.input),
            ("t_min", &self.t_min),
            ("t_max", &self.t_max),
            ("step", &self.step),
            ("outputs", &self.outputs),
            ("cap", &self.cap),
        ];
        let mut pairs: Vec<(String, String)> = named
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect();
        for s in &self.set {
            let (k, v) = s
                .split_once('=')
                .with_context(|| format!("--set expects key=value, got `{s}`"))?;
            pairs.push((k.trim().into(), v.trim().into()));
        }
        Ok(ScenarioConfig::load(self.config.as_deref(), &pairs)?)
    }
}

fn ensure_dir(dir: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let dir = output_dir(cli.out_dir.as_deref());
    match cli.command {
        Command::Figure {
            id,
            lambda,
            t_max,
            step,
            target,
        } => {
            let opts = FigureOptions {
                lambda,
                t_max,
                step,
                target,
            };
            let ids: Vec<u32> = if id == "all" {
                FIGURE_IDS.to_vec()
            } else {
                vec![id.parse().with_context(|| format!("figure id `{id}`"))?]
            };
            ensure_dir(&dir)?;
            for id in ids {
                let path = write_figure(id, &opts, &dir)?;
                println!("{}", path.display());
            }
        }
        Command::Compile { scenario, output } => {
            let cfg = scenario.load()?;
            let report = compile(&cfg)?;
            let path = match output {
                Some(p) => p,
                None => {
                    ensure_dir(&dir)?;
                    dir.join(format!("{}.graph", cfg.machine))
                }
            };
            std::fs::write(&path, report.graph.to_string())
                .with_context(|| format!("writing {}", path.display()))?;
            print!("{report}");
            println!("graph file: {}", path.display());
        }
        Command::Audit { scenario, graph } => {
            let cfg = scenario.load()?;
            let outcome = match graph {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    audit_file(&text, &cfg)?
                }
                None => audit(&cfg)?,
            };
            print!("{outcome}");
            if !outcome.passes() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Peaks {
            mu,
            lambda,
            flavor,
            length,
        } => print!("{}", peaks(mu, lambda, flavor, length)?),
        Command::Simulate { scenario, name } => {
            let cfg = scenario.load()?;
            let table = simulate(&cfg)?;
            ensure_dir(&dir)?;
            let path = dir.join(name);
            table.write(&path)?;
            println!("{}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
