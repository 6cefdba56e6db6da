use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use severi_core::counting::orderings_oracle_with_bound;
use severi_core::floor::enumerate_floor_diagrams;
use severi_core::polynomial::q_polynomial;
use severi_core::qcalc::exp_recover_n;
use severi_core::verify::{self, Context, Fault, Level};
use severi_core::{
    enumerate_templates, fmcount, min_allowable_offset, n_graph, node_polynomial, q_delta_log,
    q_delta_templates, q_graph, severi_degree, BigRational, BigUint, LongEdgeGraph,
};

/// Largest cogenus accepted by the template-based commands.
const MAX_DELTA: u32 = 6;
/// Largest degree accepted by the template-based commands.
const MAX_D: u32 = 200;

#[derive(Parser)]
#[command(
    name = "severi",
    version,
    about = "Exact Severi degrees from long-edge graphs"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel sums.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Report 0 ms instead of the measured time, for byte-identical output.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the templates of a given cogenus.
    Templates {
        #[arg(long)]
        delta: u32,
    },
    /// Severi degree N^{d,delta}.
    Severi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = SeveriMethod::Templates)]
        method: SeveriMethod,
    },
    /// Node polynomial N_delta(d).
    NodePoly {
        #[arg(long)]
        delta: u32,
    },
    /// Quadratic polynomial Q_delta(d).
    QPoly {
        #[arg(long)]
        delta: u32,
    },
    /// Q^{d,delta}.
    Q {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Route::Templates)]
        route: Route,
    },
    /// Q^{d,G} for a graph file.
    QGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// N^{d,G} for a graph file.
    NGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// N^{d,G} by brute-force enumeration of orderings.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// List floor diagrams of degree d and cogenus delta.
    Diagrams {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeveriMethod {
    Templates,
    Floor,
    Exp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Templates,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    NStarOffByOne,
}

enum Failure {
    /// Bad input, guard exceeded, unreadable file: exit 2.
    Usage(String),
    /// A verification criterion failed: exit 1.
    Verify(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct ResultRecord {
    command: &'static str,
    params: Map<String, Value>,
    value: String,
    method: &'static str,
    ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
}

struct Runner {
    json: bool,
    no_timing: bool,
    started: Instant,
}

impl Runner {
    fn ms(&self) -> u64 {
        if self.no_timing {
            0
        } else {
            self.started.elapsed().as_millis() as u64
        }
    }

    fn emit(&self, record: ResultRecord) {
        if self.json {
            println!("{}", serde_json::to_string(&record).expect("serializable"));
        } else {
            let params: Vec<String> = record
                .params
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            println!(
                "{} {} [{}]: {}",
                record.command,
                params.join(" "),
                record.method,
                record.value
            );
        }
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn guard(what: &str, value: u32, limit: u32) -> Outcome {
    if value > limit {
        Err(Failure::Usage(format!(
            "{what} = {value} exceeds the guard {limit}"
        )))
    } else {
        Ok(())
    }
}

fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn read_graph(path: &Path) -> Result<LongEdgeGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    LongEdgeGraph::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn templates(run: &Runner, delta: u32) -> Outcome {
    guard("delta", delta, MAX_DELTA)?;
    let catalog = enumerate_templates(delta);
    if run.json {
        let items: Vec<Value> = catalog
            .templates()
            .iter()
            .map(|t| {
                let edges: Vec<[u32; 3]> = t
                    .edges()
                    .iter()
                    .map(|e| [e.start(), e.end(), e.weight()])
                    .collect();
                json!({
                    "edges": edges,
                    "cogenus": t.cogenus(),
                    "multiplicity": t.multiplicity().to_string(),
                    "automorphisms": t.automorphism_count().to_string(),
                    "k_min": min_allowable_offset(t),
                })
            })
            .collect();
        println!("{}", Value::Array(items));
    } else {
        for (i, t) in catalog.templates().iter().enumerate() {
            println!(
                "# template {}: delta={} mu={} alpha={} k_min={}",
                i + 1,
                t.cogenus(),
                t.multiplicity(),
                t.automorphism_count(),
                min_allowable_offset(t)
            );
            print!("{}", t.to_text());
            println!();
        }
        println!("# {} templates of cogenus {delta}", catalog.len());
    }
    Ok(())
}

fn severi(run: &Runner, d: u32, delta: u32, method: SeveriMethod) -> Outcome {
    let (value, tag) = match method {
        SeveriMethod::Templates => {
            guard("delta", delta, MAX_DELTA)?;
            guard("d", d, MAX_D)?;
            (severi_degree(d, delta), "templates")
        }
        SeveriMethod::Floor => (fmcount(d, delta)?, "floor"),
        SeveriMethod::Exp => {
            guard("delta", delta, MAX_DELTA)?;
            guard("d", d, MAX_D)?;
            let q = (1..=delta)
                .map(|i| q_delta_templates(d, i))
                .collect::<Result<Vec<_>, _>>()?;
            (exp_recover_n(delta as usize, &q)?, "exp")
        }
    };
    run.emit(ResultRecord {
        command: "severi",
        params: params(&[("d", d.into()), ("delta", delta.into())]),
        value: value.to_string(),
        method: tag,
        ms: run.ms(),
        coefficients: None,
    });
    Ok(())
}

fn polynomial(run: &Runner, delta: u32, node: bool) -> Outcome {
    let (p, command) = if node {
        (node_polynomial(delta)?, "node-poly")
    } else {
        (q_polynomial(delta)?, "q-poly")
    };
    if !run.json {
        println!("factored: {}", p.factored("d"));
    }
    run.emit(ResultRecord {
        command,
        params: params(&[("delta", delta.into())]),
        value: p.to_string(),
        method: "templates",
        ms: run.ms(),
        coefficients: Some(p.to_coeff_strings()),
    });
    Ok(())
}

fn q(run: &Runner, d: u32, delta: u32, route: Route) -> Outcome {
    guard("delta", delta, MAX_DELTA)?;
    guard("d", d, MAX_D)?;
    let (value, tag) = match route {
        Route::Templates => (q_delta_templates(d, delta)?, "templates"),
        Route::Log => (q_delta_log(d, delta), "log"),
    };
    run.emit(ResultRecord {
        command: "q",
        params: params(&[("d", d.into()), ("delta", delta.into())]),
        value: rational_string(&value),
        method: tag,
        ms: run.ms(),
        coefficients: None,
    });
    Ok(())
}

fn graph_record(
    run: &Runner,
    command: &'static str,
    path: &Path,
    d: u32,
    value: String,
    method: &'static str,
) {
    run.emit(ResultRecord {
        command,
        params: params(&[("file", path.display().to_string().into()), ("d", d.into())]),
        value,
        method,
        ms: run.ms(),
        coefficients: None,
    });
}

fn oracle(run: &Runner, path: &Path, d: u32, bound: usize) -> Outcome {
    let g = read_graph(path)?;
    let labeled = orderings_oracle_with_bound(&g, d, bound)?;
    let weighted = g.multiplicity() * labeled;
    let alpha = g.automorphism_count();
    if &weighted % &alpha != BigUint::from(0u32) {
        return Err(Failure::Usage(format!(
            "automorphisms do not act freely on {g}"
        )));
    }
    graph_record(
        run,
        "oracle",
        path,
        d,
        (weighted / alpha).to_string(),
        "oracle",
    );
    Ok(())
}

fn diagrams(run: &Runner, d: u32, delta: u32) -> Outcome {
    let list = enumerate_floor_diagrams(d, delta)?;
    if run.json {
        let items: Vec<Value> = list
            .iter()
            .map(|fd| {
                let edges: Vec<[u32; 3]> = fd
                    .edges()
                    .iter()
                    .map(|e| [e.source, e.target, e.weight])
                    .collect();
                json!({
                    "d": d,
                    "edges": edges,
                    "multiplicity": fd.multiplicity().to_string(),
                    "markings": fd.marking_count().to_string(),
                })
            })
            .collect();
        println!("{}", Value::Array(items));
    } else {
        for fd in &list {
            println!("# mu={} nu={}", fd.multiplicity(), fd.marking_count());
            print!("{}", fd.to_text());
            println!();
        }
        println!(
            "# {} diagrams of degree {d} and cogenus {delta}",
            list.len()
        );
    }
    Ok(())
}

fn run_verify(run: &Runner, level: LevelArg, fault: Option<FaultArg>) -> Outcome {
    let ctx = match fault {
        Some(FaultArg::NStarOffByOne) => Context::with_fault(Fault::NStarOffByOne),
        None => Context::default(),
    };
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let mut first_failure = None;
    let mut rows = Vec::new();
    for criterion in verify::criteria() {
        let outcome = criterion.run(&ctx, level);
        let ms = if run.no_timing {
            0
        } else {
            outcome.elapsed.as_millis() as u64
        };
        if run.json {
            rows.push(json!({
                "id": outcome.id,
                "name": outcome.name,
                "passed": outcome.passed,
                "detail": outcome.detail,
                "ms": ms,
            }));
        } else {
            println!(
                "{} {:>2}  {:<52} {:>7} ms  {}",
                if outcome.passed { "PASS" } else { "FAIL" },
                outcome.id,
                outcome.name,
                ms,
                outcome.detail
            );
        }
        if !outcome.passed && first_failure.is_none() {
            first_failure = Some(format!("criterion {}: {}", outcome.id, outcome.name));
        }
    }
    if run.json {
        println!("{}", Value::Array(rows));
    }
    match first_failure {
        Some(name) => Err(Failure::Verify(name)),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli, run: &Runner) -> Outcome {
    match &cli.command {
        Command::Templates { delta } => templates(run, *delta),
        Command::Severi { d, delta, method } => severi(run, *d, *delta, *method),
        Command::NodePoly { delta } => polynomial(run, *delta, true),
        Command::QPoly { delta } => polynomial(run, *delta, false),
        Command::Q { d, delta, route } => q(run, *d, *delta, *route),
        Command::QGraph { graph, d } => {
            let g = read_graph(graph)?;
            let value = q_graph(&g, *d)?;
            graph_record(
                run,
                "q-graph",
                graph,
                *d,
                rational_string(&value),
                "templates",
            );
            Ok(())
        }
        Command::NGraph { graph, d } => {
            let g = read_graph(graph)?;
            graph_record(
                run,
                "n-graph",
                graph,
                *d,
                n_graph(&g, *d).to_string(),
                "templates",
            );
            Ok(())
        }
        Command::Oracle { graph, d, bound } => oracle(run, graph, *d, *bound),
        Command::Diagrams { d, delta } => diagrams(run, *d, *delta),
        Command::Verify {
            level,
            inject_fault,
        } => run_verify(run, *level, *inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let run = Runner {
        json: cli.json,
        no_timing: cli.no_timing,
        started: Instant::now(),
    };
    match dispatch(&cli, &run) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed at {msg}");
            ExitCode::from(1)
        }
    }
}
