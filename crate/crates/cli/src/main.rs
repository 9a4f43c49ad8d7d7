use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fai_cli::experiments::{
    run_fig1, run_fig2, run_fig34, ExperimentError, Fig1Config, Fig2Config, Fig34Config,
};
use fai_cli::formats::{self, FormatError};
use fai_core::algebra::Chain;
use fai_core::basebuild::{
    base_from_context_with, witness_check, witness_transform, BaseOptions, BaseOutcome,
};
use fai_core::fuzzyset::FuzzySet;
use fai_core::graphmethod::build_graph;
use fai_core::implications::Implication;
use fai_core::Caps;

#[derive(Parser)]
#[command(
    name = "fai",
    version,
    about = "Graded attribute implications over finite residuated chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close a graded set under a theory
    Close {
        /// Theory file
        theory: PathBuf,
        /// Set literal, e.g. '{p, 0.5/q}'
        set: String,
    },
    /// Degree to which a theory entails an implication
    Entail {
        theory: PathBuf,
        /// Implication literal, e.g. '{p} => {q}'
        implication: String,
    },
    /// Whether two theories have the same models
    Equiv { first: PathBuf, second: PathBuf },
    /// Compute the base of a context table
    Base {
        context: PathBuf,
        /// Bound candidate-set enumeration (default 2000000)
        #[arg(long)]
        cap: Option<u64>,
        /// Skip the completeness check of the result
        #[arg(long)]
        no_verify: bool,
    },
    /// Rewrite a saturated non-redundant theory into witnessed form
    Transform { theory: PathBuf },
    /// Report witnessed non-redundancy of a theory
    Witness { theory: PathBuf },
    /// Enumerate pseudo-intent systems of a table via its graph
    GraphBase {
        context: PathBuf,
        /// Print vertices and edges before the systems
        #[arg(long)]
        dump_graph: bool,
        /// Bound set enumeration, graph size, and search nodes
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run an experiment suite and emit CSV
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Check the residuated-chain and hedge axioms for a configuration
    ValidateAlgebra {
        #[arg(long)]
        scale: u8,
        /// lukasiewicz | goedel | "bl <degrees>"
        #[arg(long, default_value = "lukasiewicz")]
        logic: String,
        /// identity | globalization | "table <degrees>"
        #[arg(long, default_value = "identity")]
        hedge: String,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Transform success ratio by idempotent count
    Fig1 {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        scale: u8,
        #[arg(long, default_value_t = 6)]
        attributes: usize,
        #[arg(long, default_value_t = 10)]
        formulas: usize,
        /// Instances per idempotent count
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Comma-separated idempotent counts
        #[arg(long, default_value = "2,3,6,11")]
        idempotents: String,
        /// identity | globalization | "table <degrees>"
        #[arg(long, default_value = "identity")]
        hedge: String,
        /// Verify every k-th instance (0 disables)
        #[arg(long, default_value_t = 50)]
        spot_check: usize,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph method vs direct construction, seconds by density
    Fig2 {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        objects: usize,
        #[arg(long, default_value_t = 4)]
        attributes: usize,
        #[arg(long, default_value_t = 2)]
        scale: u8,
        /// Instances per density bucket
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Comma-separated density percentages
        #[arg(long)]
        densities: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 3)]
        timing_reps: usize,
        /// Verify every k-th instance (0 disables)
        #[arg(long, default_value_t = 50)]
        spot_check: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Direct construction seconds and base size by density
    Fig34 {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        objects: usize,
        #[arg(long, default_value_t = 10)]
        attributes: usize,
        #[arg(long, default_value_t = 4)]
        scale: u8,
        /// Instances per density bucket
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Comma-separated density percentages
        #[arg(long)]
        densities: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, default_value_t = 3)]
        timing_reps: usize,
        /// Verify every k-th instance (0 disables)
        #[arg(long, default_value_t = 50)]
        spot_check: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] fai_core::Error),
    #[error("{0}")]
    Experiment(#[from] ExperimentError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let capacity = match self {
            CliError::Core(e) => matches!(e, fai_core::Error::Capacity { .. }),
            CliError::Format(FormatError::Core(e)) => {
                matches!(e, fai_core::Error::Capacity { .. })
            }
            CliError::Experiment(e) => e.is_capacity(),
            _ => false,
        };
        if capacity {
            2
        } else {
            3
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn caps_from(cap: Option<u64>) -> Caps {
    match cap {
        None => Caps::default(),
        Some(limit) => Caps {
            max_sets: limit,
            max_graph_vertices: limit,
            max_search_nodes: limit,
        },
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| CliError::Usage(format!("invalid {what}: {t:?}")))
        })
        .collect()
}

fn spot(k: usize) -> Option<usize> {
    if k == 0 {
        None
    } else {
        Some(k)
    }
}

fn emit(csv: String, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(&path, csv)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Close { theory, set } => {
            let theory = formats::parse_theory(&read(&theory)?)?;
            let set = FuzzySet::parse(theory.universe(), theory.chain(), &set)?;
            println!("{}", theory.close(&set)?);
            Ok(())
        }
        Command::Entail {
            theory,
            implication,
        } => {
            let theory = formats::parse_theory(&read(&theory)?)?;
            let imp = Implication::parse(theory.universe(), theory.chain(), &implication)?;
            println!("{}", theory.entail_degree(&imp)?);
            Ok(())
        }
        Command::Equiv { first, second } => {
            let a = formats::parse_theory(&read(&first)?)?;
            let b = formats::parse_theory(&read(&second)?)?;
            if a.equivalent(&b)? {
                println!("equivalent");
            } else {
                println!("not equivalent");
            }
            Ok(())
        }
        Command::Base {
            context,
            cap,
            no_verify,
        } => {
            let ctx = formats::parse_context(&read(&context)?)?;
            let options = BaseOptions {
                caps: caps_from(cap),
                verify_completeness: !no_verify,
            };
            match base_from_context_with(&ctx, &options)? {
                BaseOutcome::Base {
                    system,
                    completeness_checked,
                } => {
                    println!(
                        "# base of {} formulas; completeness {}",
                        system.len(),
                        if completeness_checked {
                            "verified"
                        } else {
                            "not verified"
                        }
                    );
                    print!("{}", formats::write_theory(system.base()));
                }
                BaseOutcome::NotEquivalent { attempted } => {
                    println!(
                        "# no witnessed base found; the transformed theory below is \
                         not equivalent to the table's implications"
                    );
                    print!("{}", formats::write_theory(&attempted));
                }
            }
            Ok(())
        }
        Command::Transform { theory } => {
            let gamma = formats::parse_theory(&read(&theory)?)?;
            let out = witness_transform(&gamma)?;
            println!("# equivalent: {}", out.equivalent);
            print!("{}", formats::write_theory(&out.theory));
            Ok(())
        }
        Command::Witness { theory } => {
            let sigma = formats::parse_theory(&read(&theory)?)?;
            let report = witness_check(&sigma);
            println!("witnessed: {}", report.witnessed);
            for failure in &report.failures {
                println!(
                    "antecedent of {} does not model {}",
                    failure.member, failure.violated
                );
            }
            Ok(())
        }
        Command::GraphBase {
            context,
            dump_graph,
            cap,
        } => {
            let ctx = formats::parse_context(&read(&context)?)?;
            let caps = caps_from(cap);
            let graph = build_graph(&ctx, &caps)?;
            if dump_graph {
                println!("vertices {}", graph.vertex_count());
                for (at, vertex) in graph.vertices().iter().enumerate() {
                    println!("vertex {at}: {vertex}");
                }
                for (from, to) in graph.directed_edges() {
                    println!("edge {from} -> {to}");
                }
            }
            let systems = graph.enumerate_systems(&caps)?;
            println!("systems {}", systems.len());
            for (at, system) in systems.iter().enumerate() {
                println!("system {}: {} pseudo-intents", at + 1, system.len());
                for imp in system.base().implications() {
                    println!("{imp}");
                }
            }
            Ok(())
        }
        Command::Experiment(cmd) => run_experiment(cmd),
        Command::ValidateAlgebra {
            scale,
            logic,
            hedge,
        } => {
            let tnorm =
                formats::parse_logic_spec(scale, &logic).map_err(CliError::Usage)?;
            let hedge =
                formats::parse_hedge_spec(scale, &hedge).map_err(CliError::Usage)?;
            let chain = Chain::new_unchecked(scale, tnorm, hedge)?;
            let report = chain.validate();
            println!("{report}");
            if report.is_valid() {
                Ok(())
            } else {
                Err(CliError::Usage(format!(
                    "{} axiom instance(s) violated",
                    report.violations.len()
                )))
            }
        }
    }
}

fn run_experiment(cmd: ExperimentCmd) -> Result<(), CliError> {
    match cmd {
        ExperimentCmd::Fig1 {
            seed,
            scale,
            attributes,
            formulas,
            instances,
            idempotents,
            hedge,
            spot_check,
            out,
        } => {
            let cfg = Fig1Config {
                seed,
                scale,
                attributes,
                formulas,
                instances_per_count: instances,
                idempotent_counts: parse_list(&idempotents, "idempotent count")?,
                hedge: formats::parse_hedge_spec(scale, &hedge).map_err(CliError::Usage)?,
                spot_check: spot(spot_check),
            };
            emit(run_fig1(&cfg)?.to_csv(), out)
        }
        ExperimentCmd::Fig2 {
            seed,
            objects,
            attributes,
            scale,
            instances,
            densities,
            cap,
            timing_reps,
            spot_check,
            out,
        } => {
            let mut cfg = Fig2Config {
                seed,
                objects,
                attributes,
                scale,
                instances_per_bucket: instances,
                caps: caps_from(cap),
                timing_reps,
                spot_check: spot(spot_check),
                ..Fig2Config::default()
            };
            if let Some(list) = densities {
                cfg.buckets = parse_list(&list, "density")?;
            }
            emit(run_fig2(&cfg)?.to_csv(), out)
        }
        ExperimentCmd::Fig34 {
            seed,
            objects,
            attributes,
            scale,
            instances,
            densities,
            cap,
            timing_reps,
            spot_check,
            out,
        } => {
            let mut cfg = Fig34Config {
                seed,
                objects,
                attributes,
                scale,
                instances_per_bucket: instances,
                caps: caps_from(cap),
                timing_reps,
                spot_check: spot(spot_check),
                ..Fig34Config::default()
            };
            if let Some(list) = densities {
                cfg.buckets = parse_list(&list, "density")?;
            }
            emit(run_fig34(&cfg)?.to_csv(), out)
        }
    }
}
