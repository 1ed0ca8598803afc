use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use idbond::audit::{run_audit, AuditConfig, Status};
use idbond::bondage::{bondage_id_with, BondageError, BondageOptions};
use idbond::census::{census, labeled_graphs, read_graph6_stream, records_to_csv, records_to_json, CensusOptions};
use idbond::families::{make_family, FamilyName, FamilySpec};
use idbond::io::{parse_edge_list, parse_graph6, write_edge_list, write_graph6};
use idbond::products::ProductOp;
use idbond::solvers::{domination_number, gamma_i, independence_number, Budget, IdsResult, SolveError};
use idbond::Graph;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "idbond", version, about = "Independent domination number and bondage number toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input file, or `-` for stdin
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search-node cap per solve; 0 means unlimited
    #[arg(long, global = true, default_value_t = 0)]
    budget_nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Print a member of a named graph family
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Independent domination number
    GammaI,
    /// Domination number
    Gamma,
    /// Independence number
    Alpha,
    /// Independent domination bondage number with its certificate
    Bondage {
        #[arg(long)]
        no_cache: bool,
    },
    /// Combine two graphs
    Product {
        #[arg(long)]
        op: String,
        left: PathBuf,
        right: PathBuf,
    },
    /// Check the claim catalog
    Audit {
        /// `all` or a comma-separated list of claim ids
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Full JSON report destination
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Invariant table over many graphs
    Census {
        /// Enumerate all labeled graphs on this many vertices
        #[arg(long, conflicts_with = "input")]
        builtin: Option<usize>,
        /// Keep one graph per isomorphism class
        #[arg(long)]
        dedup: bool,
        #[arg(long)]
        cache: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

/// Output text plus whether some computation ran out of budget.
struct Output {
    text: String,
    budget_exceeded: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("idbond: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.common.threads {
        if t == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    let out = pool.install(|| execute(&cli))?;
    match &cli.common.output {
        Some(path) => fs::write(path, &out.text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => io::stdout().write_all(out.text.as_bytes()).map_err(|e| Failure::input(e.to_string()))?,
    }
    if out.budget_exceeded {
        return Err(Failure { code: EXIT_BUDGET, message: "node budget exceeded".into() });
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let c = &cli.common;
    let budget = Budget::nodes(c.budget_nodes);
    if c.csv && !matches!(cli.command, Command::Census { .. }) {
        return Err(Failure::usage("--csv is only supported by census"));
    }
    let done = |text: String| Ok(Output { text, budget_exceeded: false });
    match &cli.command {
        Command::Family { name, n, m, q } => {
            let name: FamilyName = name.parse().map_err(|e| Failure::usage(format!("{e}")))?;
            let spec = FamilySpec { name, n: *n, m: *m, q: *q };
            let g = make_family(&spec).map_err(|e| Failure::input(e.to_string()))?;
            done(render_graph(&g, c))
        }
        Command::GammaI => solve(c, |g| gamma_i(g, budget)),
        Command::Gamma => solve(c, |g| domination_number(g, budget)),
        Command::Alpha => solve(c, |g| independence_number(g, budget)),
        Command::Bondage { no_cache } => {
            let opts = BondageOptions { budget, parallel: true, use_cache: !no_cache };
            let graphs = read_graphs(c)?;
            let mut exceeded = false;
            let mut items = Vec::with_capacity(graphs.len());
            for g in &graphs {
                let value = match bondage_id_with(g, &opts) {
                    Ok(cert) => serde_json::to_value(cert).expect("certificate serializes"),
                    Err(BondageError::NoEdges) if graphs.len() == 1 => {
                        return Err(Failure::input("b_id is undefined for a graph without edges"));
                    }
                    Err(e @ BondageError::BudgetExceeded { .. }) => {
                        exceeded = true;
                        json!({ "error": e.to_string() })
                    }
                    Err(e) => json!({ "error": e.to_string() }),
                };
                items.push(value);
            }
            Ok(Output { text: batch_json(&graphs, items), budget_exceeded: exceeded })
        }
        Command::Product { op, left, right } => {
            let op: ProductOp = op.parse().map_err(|e| Failure::usage(format!("{e}")))?;
            let g = read_one(&read_path(left)?, c.format)?;
            let h = read_one(&read_path(right)?, c.format)?;
            let p = op.apply(&g, &h).map_err(|e| Failure::input(e.to_string()))?;
            done(render_graph(&p, c))
        }
        Command::Audit { claims, max_n, report } => {
            let claims = if claims == "all" {
                Vec::new()
            } else {
                claims.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
            };
            let corpus = match &c.input {
                Some(_) => read_graphs(c)?,
                None => Vec::new(),
            };
            let config = AuditConfig { max_n: *max_n, claims, budget, corpus };
            let result = run_audit(&config).map_err(|e| Failure::usage(e.to_string()))?;
            let json = result.to_json();
            if let Some(path) = report {
                fs::write(path, &json).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            let text = if c.json {
                json
            } else {
                let mut lines = result.summary_lines();
                let t = &result.totals;
                lines.push(format!(
                    "total       confirmed={} refuted={} n/a={} budget={}",
                    t.confirmed, t.refuted, t.not_applicable, t.budget_exceeded
                ));
                lines.join("\n") + "\n"
            };
            let exceeded = result.claims.iter().flat_map(|r| &r.bindings).any(|v| v.status == Status::BudgetExceeded);
            Ok(Output { text, budget_exceeded: exceeded })
        }
        Command::Census { builtin, dedup, cache } => {
            let mut graphs = match builtin {
                Some(n) => labeled_graphs(*n).map_err(|e| Failure::usage(e.to_string()))?,
                None => read_graphs(c)?,
            };
            if *dedup {
                graphs = idbond::census::dedup_isomorphic(graphs);
            }
            let opts = CensusOptions { budget, use_cache: *cache, ..Default::default() };
            let records = census(&graphs, &opts);
            let text = if c.csv { records_to_csv(&records) } else { records_to_json(&records) };
            Ok(Output { text, budget_exceeded: records.iter().any(|r| r.budget_exceeded()) })
        }
    }
}

fn solve(c: &Common, f: impl Fn(&Graph) -> Result<IdsResult, SolveError>) -> Result<Output, Failure> {
    let graphs = read_graphs(c)?;
    let mut exceeded = false;
    let items = graphs
        .iter()
        .map(|g| match f(g) {
            Ok(r) => json!({ "value": r.size, "witness": r.witness, "nodes": r.nodes_explored }),
            Err(e) => {
                exceeded = true;
                json!({ "error": e.to_string() })
            }
        })
        .collect();
    Ok(Output { text: batch_json(&graphs, items), budget_exceeded: exceeded })
}

/// A single result as a bare object, several as an array tagged by graph.
fn batch_json(graphs: &[Graph], items: Vec<Value>) -> String {
    let value = if items.len() == 1 {
        items.into_iter().next().expect("one item")
    } else {
        Value::Array(
            graphs
                .iter()
                .zip(items)
                .map(|(g, item)| json!({ "graph": write_graph6(g).expect("bounded width"), "result": item }))
                .collect(),
        )
    };
    serde_json::to_string_pretty(&value).expect("json") + "\n"
}

fn render_graph(g: &Graph, c: &Common) -> String {
    if c.json {
        let edges: Vec<[usize; 2]> = g.edges().iter().map(|e| [e.u(), e.v()]).collect();
        let v = json!({ "n": g.n(), "m": g.m(), "graph6": write_graph6(g).expect("bounded width"), "edges": edges });
        return serde_json::to_string_pretty(&v).expect("json") + "\n";
    }
    match c.format {
        Format::Graph6 => write_graph6(g).expect("bounded width") + "\n",
        Format::Edgelist => write_edge_list(g),
    }
}

fn read_path(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_input(c: &Common) -> Result<String, Failure> {
    match c.input.as_deref() {
        None => Err(Failure::usage("--input is required")),
        Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(e.to_string()))?;
            Ok(s)
        }
        Some(path) => read_path(&PathBuf::from(path)),
    }
}

/// Every graph in the input: one per line for graph6, one per file for an
/// edge list.
fn read_graphs(c: &Common) -> Result<Vec<Graph>, Failure> {
    let text = read_input(c)?;
    let graphs = match c.format {
        Format::Graph6 => read_graph6_stream(&text).map_err(|e| Failure::input(e.to_string()))?,
        Format::Edgelist => vec![parse_edge_list(&text).map_err(|e| Failure::input(e.to_string()))?],
    };
    if graphs.is_empty() {
        return Err(Failure::input("no graphs in input"));
    }
    Ok(graphs)
}

fn read_one(text: &str, format: Format) -> Result<Graph, Failure> {
    match format {
        Format::Graph6 => parse_graph6(text.trim()).map_err(|e| Failure::input(e.to_string())),
        Format::Edgelist => parse_edge_list(text).map_err(|e| Failure::input(e.to_string())),
    }
}
