//! The `turanlab` command line. [`run`] is a pure function of its arguments
//! (and of `TURANLAB_THREADS`, which never changes the output).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;
use turanlab_core::certify::{certificate_bound_at, find_certificate, verify_certificate, FindOutcome};
use turanlab_core::counting::{count_copies, count_induced_copies};
use turanlab_core::enumeration::{enumerate_kfree, enumerate_kfree_maximal, enumerate_types};
use turanlab_core::multipartite::{count_copies_in_multipartite, induced_type_count, turan_parts, PartVector};
use turanlab_core::registry::{KCondition, Registry};
use turanlab_core::tables::{build_type_table_with_limit, DEFAULT_MAX_TABLE_VERTICES};
use turanlab_core::{graph6, SmallGraph};

use crate::formats::{self, FormatError, TableFormat};
use crate::parallel;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] turanlab_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "turanlab", version, about = "Exact generalized Turán computations on small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; csv applies to `table` only.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,
}

/// Graphs are given as graph6, as `n; u-v,u-v,...`, or as a path to a file of
/// such lines.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of copies of h in g.
    Count {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
        /// Count induced copies instead.
        #[arg(long)]
        induced: bool,
    },
    /// Number of induced copies of a type in a graph or a complete multipartite graph.
    Induced {
        #[arg(long = "type", alias = "t")]
        ty: String,
        #[command(flatten)]
        host: HostArgs,
    },
    /// Copies of h in a complete multipartite graph, by closed form.
    Turan {
        #[arg(long)]
        h: String,
        /// Part sizes, e.g. `3,2,2`.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        parts: Option<String>,
        /// Vertex count of the Turán graph T_{k-1}(n).
        #[arg(long, requires = "k")]
        n: Option<u64>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
    },
    /// Induced-type table of h against gadgets.
    Table {
        #[arg(long)]
        h: String,
        /// Forbidden clique size; omit for no clique filter.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "gadget", num_args = 1..)]
        gadgets: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_TABLE_VERTICES)]
        max_vertices: usize,
    },
    /// Verify a certificate file exactly.
    Certify {
        #[arg(long)]
        cert: String,
        #[arg(long)]
        registry: Option<String>,
        /// Also evaluate both sides on T_{k-1}(n) for each given n.
        #[arg(long = "bound-at", num_args = 1..)]
        bound_at: Vec<u64>,
    },
    /// Search for certificate coefficients over a gadget pool.
    FindCert {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
        #[arg(long = "pool", num_args = 1.., required = true)]
        pool: Vec<String>,
        #[arg(long)]
        registry: Option<String>,
    },
    /// Brute-force maximum of N(h, .) over K_k-free graphs on n vertices.
    Extremal {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Search every K_k-free class instead of edge-maximal ones only.
        #[arg(long)]
        full: bool,
    },
    /// Query or extend the goodness registry.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
        /// JSON-lines registry to load.
        #[arg(long, global = true)]
        registry: Option<String>,
        /// Write the resulting registry here as JSON lines.
        #[arg(long, global = true)]
        save: Option<String>,
    },
    /// List graph classes in stream order as graph6.
    Gen {
        #[arg(long)]
        n: usize,
        /// Forbidden clique size.
        #[arg(long)]
        k: Option<usize>,
        /// Only edge-maximal K_k-free classes.
        #[arg(long, requires = "k")]
        maximal_only: bool,
        /// Only classes containing this graph.
        #[arg(long, conflicts_with = "maximal_only")]
        contains: Option<String>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct HostArgs {
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    parts: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum RegistryAction {
    /// Print stored entries.
    Dump,
    /// Look up a goodness fact; exit 1 when none is known.
    Lookup {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
    },
    /// Attach a K_{k-1} to a known-good graph along a clique.
    Attach {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: usize,
        /// Attachment clique, e.g. `0,1`.
        #[arg(long)]
        x: String,
        /// Join pairs `x-j`, e.g. `0-0,1-1`.
        #[arg(long)]
        join: String,
    },
    /// Record a goodness fact on trust.
    Axiom {
        #[arg(long)]
        h: String,
        /// e.g. `k>=4`, `k=3`, `4<=k<=6`.
        #[arg(long)]
        condition: String,
        #[arg(long, default_value = "")]
        note: String,
    },
}

/// Parse arguments and execute; never panics on bad input.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// Graphs named by an argument: a file of lines, else one literal graph.
fn graphs_arg(arg: &str) -> Result<Vec<SmallGraph>, CliError> {
    if Path::new(arg).is_file() {
        let text = read_file(arg)?;
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| SmallGraph::from_str(l).map_err(CliError::from))
            .collect()
    } else {
        Ok(vec![SmallGraph::from_str(arg)?])
    }
}

fn graph_arg(arg: &str) -> Result<SmallGraph, CliError> {
    let mut gs = graphs_arg(arg)?;
    if gs.len() != 1 {
        return Err(CliError::Usage(format!("{arg:?} must name exactly one graph, found {}", gs.len())));
    }
    Ok(gs.remove(0))
}

fn graph_list(args: &[String]) -> Result<Vec<SmallGraph>, CliError> {
    let mut out = Vec::new();
    for a in args {
        out.extend(graphs_arg(a)?);
    }
    Ok(out)
}

fn load_registry(path: Option<&String>) -> Result<Registry, CliError> {
    match path {
        Some(p) => Ok(formats::registry_from_json_lines(&read_file(p)?)?),
        None => Ok(Registry::new()),
    }
}

fn number(n: &BigUint, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json | OutputFormat::Text => Ok(format!("{n}\n")),
        OutputFormat::Csv => Err(csv_only_for_tables()),
    }
}

fn csv_only_for_tables() -> CliError {
    CliError::Usage("csv output is only available for `table`".to_string())
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad vertex {t:?}"))))
        .collect()
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let format = cli.format;
    if format == OutputFormat::Csv && !matches!(cli.command, Command::Table { .. }) {
        return Err(csv_only_for_tables());
    }
    match &cli.command {
        Command::Count { h, g, induced } => {
            let (h, g) = (graph_arg(h)?, graph_arg(g)?);
            let n = if *induced { count_induced_copies(&h, &g) } else { count_copies(&h, &g) };
            Ok((0, number(&n, format)?))
        }
        Command::Induced { ty, host } => {
            let t = graph_arg(ty)?;
            let n = match (&host.g, &host.parts) {
                (Some(g), _) => count_induced_copies(&t, &graph_arg(g)?),
                (None, Some(p)) => induced_type_count(&t, &PartVector::from_str(p)?)?,
                (None, None) => unreachable!("clap requires one host"),
            };
            Ok((0, number(&n, format)?))
        }
        Command::Turan { h, parts, n, k } => {
            let h = graph_arg(h)?;
            let p = match (parts, n, k) {
                (Some(p), _, _) => PartVector::from_str(p)?,
                (None, Some(n), Some(k)) if *k >= 2 => turan_parts(k - 1, *n)?,
                (None, Some(_), Some(_)) => return Err(CliError::Usage("k must be at least 2".to_string())),
                _ => return Err(CliError::Usage("give --parts, or --n with --k".to_string())),
            };
            Ok((0, number(&count_copies_in_multipartite(&h, &p), format)?))
        }
        Command::Table { h, k, gadgets, max_vertices } => {
            let table = build_type_table_with_limit(&graph_arg(h)?, *k, &graph_list(gadgets)?, *max_vertices)?;
            let out = match format {
                OutputFormat::Json => formats::render_table(&table, TableFormat::Json),
                OutputFormat::Csv => formats::render_table(&table, TableFormat::Csv),
                OutputFormat::Text => formats::render_table(&table, TableFormat::Csv).replace(',', "\t"),
            };
            Ok((0, out))
        }
        Command::Certify { cert, registry, bound_at } => {
            let registry = load_registry(registry.as_ref())?;
            let c = formats::certificate_from_json(&read_file(cert)?, &registry)?;
            let report = verify_certificate(&c, &registry)?;
            let code = if report.passed { 0 } else { 1 };
            let mut bounds = Vec::new();
            if report.passed {
                for &n in bound_at {
                    let (lhs, rhs) = certificate_bound_at(&c, &registry, n)?;
                    bounds.push((n, lhs, rhs));
                }
            }
            let out = match format {
                OutputFormat::Text => {
                    let mut s = String::new();
                    match &report.failing_column {
                        None => writeln!(s, "pass").unwrap(),
                        Some(col) => writeln!(s, "fail at column {}", graph6::encode(col)).unwrap(),
                    }
                    writeln!(s, "{}", report.conclusion(c.k)).unwrap();
                    for (n, lhs, rhs) in &bounds {
                        writeln!(s, "n={n}: N(h,T)={lhs} combination={rhs}").unwrap();
                    }
                    s
                }
                _ => {
                    let mut v: serde_json::Value =
                        serde_json::from_str(&formats::report_to_json(&report, c.k)).expect("report is valid JSON");
                    if !bounds.is_empty() {
                        v["bounds"] = bounds
                            .iter()
                            .map(|(n, l, r)| json!({"n": n, "h_count": formats::big_number(l), "combination": formats::big_number(r)}))
                            .collect();
                    }
                    pretty(v)
                }
            };
            Ok((code, out))
        }
        Command::FindCert { h, k, pool, registry } => {
            let registry = load_registry(registry.as_ref())?;
            let h = graph_arg(h)?;
            match find_certificate(&h, *k, &graph_list(pool)?, &registry)? {
                FindOutcome::Found(c) => Ok((0, formats::certificate_to_json(&c))),
                FindOutcome::Infeasible(w) => Ok((1, formats::witness_to_json(&w))),
            }
        }
        Command::Extremal { h, n, k, full } => {
            let h = graph_arg(h)?;
            let report = parallel::install(|| parallel::brute_force_ex_par(*n, &h, *k, !*full))?;
            let out = match format {
                OutputFormat::Text => format!(
                    "max N(h) = {} over {} classes; Turán value {}; {}\n",
                    report.maximum,
                    report.classes_searched,
                    report.turan_value,
                    report.note()
                ),
                _ => formats::extremal_to_json(&report),
            };
            Ok((0, out))
        }
        Command::Registry { action, registry, save } => {
            let mut reg = load_registry(registry.as_ref())?;
            let (code, out) = match action {
                RegistryAction::Dump => (0, formats::registry_to_json_lines(&reg)),
                RegistryAction::Lookup { h, k } => match reg.is_known_good(&graph_arg(h)?, *k) {
                    Some(e) => (0, formats::entry_to_json_line(&e) + "\n"),
                    None => (1, "null\n".to_string()),
                },
                RegistryAction::Attach { h, k, x, join } => {
                    let h = graph_arg(h)?;
                    let x_set = parse_usize_list(x)?.into_iter().try_fold(0u64, |m, v| {
                        if v < h.vertex_count() {
                            Ok(m | 1 << v)
                        } else {
                            Err(CliError::Usage(format!("vertex {v} out of range")))
                        }
                    })?;
                    let pairs = join
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| {
                            let (a, b) =
                                t.split_once('-').ok_or_else(|| CliError::Usage(format!("bad join pair {t:?}")))?;
                            let p =
                                |s: &str| s.trim().parse().map_err(|_| CliError::Usage(format!("bad join pair {t:?}")));
                            Ok((p(a)?, p(b)?))
                        })
                        .collect::<Result<Vec<(usize, usize)>, CliError>>()?;
                    let (g, e) = reg.extend_by_attachment(&h, x_set, &pairs, *k)?;
                    let v = json!({"graph": graph6::encode(&g), "edges": g.to_edge_list(),
                        "entry": serde_json::from_str::<serde_json::Value>(&formats::entry_to_json_line(&e)).expect("valid")});
                    (0, pretty(v))
                }
                RegistryAction::Axiom { h, condition, note } => {
                    let e = reg.register_axiom(&graph_arg(h)?, KCondition::from_str(condition)?, note)?;
                    (0, formats::entry_to_json_line(&e) + "\n")
                }
            };
            if let Some(path) = save {
                std::fs::write(path, formats::registry_to_json_lines(&reg))
                    .map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            Ok((code, out))
        }
        Command::Gen { n, k, maximal_only, contains } => {
            let graphs: Vec<SmallGraph> = match (contains, maximal_only, k) {
                (Some(h), _, _) => enumerate_types(*n, *k, &graph_arg(h)?.padded_to(*n)?)?.into_vec(),
                (None, true, Some(k)) => enumerate_kfree_maximal(*n, *k)?.into_vec(),
                (None, _, _) => enumerate_kfree(*n, *k)?.into_vec(),
            };
            let codes: Vec<String> = graphs.iter().map(graph6::encode).collect();
            let out = match format {
                OutputFormat::Text => codes.iter().map(|c| c.clone() + "\n").collect(),
                _ => pretty(json!(codes)),
            };
            Ok((0, out))
        }
    }
}
