//! `dra`: run, generate, compare and check reassignment scenarios.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dra_core::engine::{write_cost_csv, write_trace, TraceHeader};
use dra_core::oracle::{self, best_group_by_enumeration, optimal_assignment, OracleBudget};
use dra_core::scenario::generate;
use dra_core::{
    EngineConfig, Error, GenParams, InertiaConfig, Mechanism, NodeId, Scenario, SchedulePolicy, Simulation,
    Termination,
};

const EXIT_MAX_ROUNDS: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "dra", version, about = "Distributed process reassignment simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algorithm on a scenario and write trace, cost curve and final placement.
    Run(RunArgs),
    /// Generate a random scenario.
    Gen(GenArgs),
    /// Run the algorithm and the brute-force oracle on seeded random instances.
    Compare(CompareArgs),
    /// Brute-force the optimal placement (or best group for one move) of a scenario.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Sequential,
    Concurrent,
}

#[derive(Clone, Copy, ValueEnum)]
enum MechanismArg {
    Adaptive,
    Single,
    Super,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "sequential")]
    policy: PolicyArg,
    #[arg(long, value_enum, default_value = "adaptive")]
    mechanism: MechanismArg,
    #[arg(long, default_value_t = 10_000)]
    max_rounds: u32,
    /// Recompute every proposal from global state and fail on any difference.
    #[arg(long)]
    check_locality: bool,
}

#[derive(Args)]
struct RunArgs {
    scenario: PathBuf,
    #[command(flatten)]
    engine: EngineArgs,
    /// Inertia factor; overrides the scenario's value.
    #[arg(long)]
    gamma: Option<f64>,
    /// Averaging constant for scheduled traffic; overrides the scenario's value.
    #[arg(long)]
    alpha: Option<f64>,
    /// Seed recorded in the trace header; defaults to the scenario's.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "DRA_OUT_DIR", default_value = "dra-out")]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    procs: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Treat `--nodes` as clusters of this many servers.
    #[arg(long)]
    servers_per_cluster: Option<usize>,
    #[arg(long, default_value_t = 10)]
    max_bytes: i64,
    /// Pin the virtual process of node x to node x instead of shuffling.
    #[arg(long)]
    identity_pins: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    instances: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[arg(long, default_value_t = 2)]
    min_nodes: usize,
    #[arg(long, default_value_t = 5)]
    max_nodes: usize,
    #[arg(long, default_value_t = 1)]
    min_procs: usize,
    #[arg(long, default_value_t = 7)]
    max_procs: usize,
    #[arg(long)]
    servers_per_cluster: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, default_value_t = 10_000_000)]
    max_assignments: u128,
    #[arg(long, env = "DRA_OUT_DIR", default_value = "dra-out")]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    scenario: PathBuf,
    /// With `--dest`: enumerate groups moving from this node instead.
    #[arg(long, requires = "dest")]
    source: Option<u32>,
    #[arg(long, requires = "source")]
    dest: Option<u32>,
    #[arg(long, default_value_t = 10_000_000)]
    max_assignments: u128,
    #[arg(long, default_value_t = 4096)]
    max_subsets: u128,
}

impl EngineArgs {
    fn config(&self, inertia: InertiaConfig) -> anyhow::Result<EngineConfig> {
        if self.max_rounds == 0 {
            return Err(Error::Config("max_rounds must be at least 1".into()).into());
        }
        Ok(EngineConfig {
            policy: match self.policy {
                PolicyArg::Sequential => SchedulePolicy::sequential(),
                PolicyArg::Concurrent => SchedulePolicy::concurrent(),
            },
            mechanism: match self.mechanism {
                MechanismArg::Adaptive => Mechanism::Adaptive,
                MechanismArg::Single => Mechanism::SingleOnly,
                MechanismArg::Super => Mechanism::SuperOnly,
            },
            inertia,
            max_rounds: self.max_rounds,
            check_locality: self.check_locality,
        })
    }
}

fn mechanism_name(m: Mechanism) -> &'static str {
    match m {
        Mechanism::Adaptive => "adaptive",
        Mechanism::SingleOnly => "single",
        Mechanism::SuperOnly => "super",
    }
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let mut sc = Scenario::load(&args.scenario)?;
    if let Some(gamma) = args.gamma {
        sc.inertia = InertiaConfig::new(gamma)?;
    }
    if let Some(alpha) = args.alpha {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie strictly between 0 and 1, got {alpha}")).into());
        }
        sc.alpha = alpha;
    }
    let config = args.engine.config(sc.inertia)?;
    let dynamic = !sc.schedule.is_empty();

    let mut sim = Simulation::new(sc.app.clone(), sc.topology.clone(), sc.assignment.clone(), config);
    if dynamic {
        sim = sim.with_traffic_schedule(sc.alpha, sc.schedule.clone())?;
    }
    if let Some(caps) = &sc.capacities {
        sim = sim.with_capacities(caps.clone())?;
    }
    let out = sim.run()?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let header = TraceHeader {
        scenario_hash: sc.hash(),
        seed: args.seed.or(sc.file.seed),
        policy: config.policy.name().into(),
        mechanism: mechanism_name(config.mechanism).into(),
        gamma: config.inertia.gamma(),
        alpha: dynamic.then_some(sc.alpha),
    };
    let mut w = create(&args.out.join("trace.jsonl"))?;
    write_trace(&mut w, &header, &out.trace)?;
    w.flush()?;
    let mut w = create(&args.out.join("cost.csv"))?;
    write_cost_csv(&mut w, &out.curve)?;
    w.flush()?;

    let last = out.curve.last().expect("curve has the initial row");
    let termination = match out.termination {
        Termination::Converged => "converged",
        Termination::MaxRounds => "max_rounds",
    };
    let summary = json!({
        "termination": termination,
        "rounds": out.rounds,
        "migrations": out.migrations(),
        "initial_comm_cost": out.initial_comm(),
        "comm_cost": last.comm,
        "exec_cost": last.exec,
        "total_cost": last.total,
        "hosts": out.assignment.real_hosts(),
    });
    let mut w = create(&args.out.join("assignment.json"))?;
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    w.flush()?;

    println!(
        "{termination} after {} rounds: {} migrations, comm cost {} -> {}",
        out.rounds,
        out.migrations(),
        out.initial_comm(),
        last.comm
    );
    Ok(if out.converged() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MAX_ROUNDS)
    })
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let mut params = GenParams::new(args.nodes, args.procs, args.density, args.seed);
    params.servers_per_cluster = args.servers_per_cluster;
    params.max_bytes = args.max_bytes;
    params.random_pins = !args.identity_pins;
    let text = generate(&params)?.to_json();
    match args.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: CompareArgs) -> anyhow::Result<ExitCode> {
    if args.min_nodes == 0 || args.min_nodes > args.max_nodes || args.min_procs == 0 || args.min_procs > args.max_procs {
        bail!(Error::Config("node and process ranges must be nonempty and start at 1 or more".into()));
    }
    let inertia = match args.gamma {
        Some(g) => InertiaConfig::new(g)?,
        None => InertiaConfig::none(),
    };
    let config = args.engine.config(inertia)?;
    let mut scenarios = Vec::new();
    for seed in args.first_seed..args.first_seed + args.instances {
        let mut params = GenParams::sampled(seed, args.min_nodes..=args.max_nodes, args.min_procs..=args.max_procs);
        params.servers_per_cluster = args.servers_per_cluster;
        scenarios.push((seed, Scenario::from_file(generate(&params)?)?));
    }
    let budget = OracleBudget {
        max_assignments: args.max_assignments,
        ..OracleBudget::default()
    };
    let report = oracle::compare(scenarios, config, &budget)?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut w = create(&args.out.join("compare.json"))?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;
    println!(
        "{} instances: {} match, {} mismatch, {} skipped",
        report.instances,
        report.matches,
        report.mismatches.len() + report.not_improved.len(),
        report.skipped
    );
    Ok(if report.all_match() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    })
}

fn cmd_oracle(args: OracleArgs) -> anyhow::Result<ExitCode> {
    let sc = Scenario::load(&args.scenario)?;
    let budget = OracleBudget {
        max_assignments: args.max_assignments,
        max_subsets: args.max_subsets,
    };
    let report = match (args.source, args.dest) {
        (Some(s), Some(d)) => {
            let best = best_group_by_enumeration(&sc.app, &sc.topology, &sc.assignment, NodeId(s), NodeId(d), &budget)?;
            match best {
                Some((group, benefit)) => json!({"source": s, "dest": d, "group": group, "benefit": benefit}),
                None => json!({"source": s, "dest": d, "group": null, "benefit": null}),
            }
        }
        _ => {
            let (f, cost) = optimal_assignment(&sc.app, &sc.topology, &budget)?;
            json!({"comm_cost": cost, "hosts": f.real_hosts()})
        }
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Validation(_) | Error::Config(_) | Error::Domain(_)) => EXIT_INVALID,
        Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    result.unwrap_or_else(|err| {
        eprintln!("error: {err:#}");
        ExitCode::from(exit_code(&err))
    })
}
