//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kneserlab::config::{ENV_MAX_VERTICES, ENV_NODE_BUDGET, ENV_TIME_BUDGET_MS};
use kneserlab::lab::{
    catalog_entry, certificate_ref, extract_from_exponential, from_json, run_all, run_suite, to_csv, to_json,
    verify_extraction, Report, Suite, SuiteParams, Summary, Verdict,
};
use kneserlab::solvers::{
    chromatic_number, fractional_chromatic, max_clique, maximum_independent_set, multichromatic_number,
    MultichromaticOptions,
};
use kneserlab::{Budget, Graph};

use crate::cache::{Cache, CacheEntry, Certificate, ENV_CACHE_DIR};
use crate::expr::parse_expression;
use crate::output::{print_err, print_out, write_atomic};

/// Graph invariants, verification suites and certificates for Kneser,
/// exponential and product graphs.
#[derive(Debug, Parser)]
#[command(name = "kneserlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Search-node limit for each exact solver call.
    #[arg(long, global = true, env = ENV_NODE_BUDGET)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit in milliseconds for each exact solver call.
    #[arg(long, global = true, env = ENV_TIME_BUDGET_MS)]
    pub budget_ms: Option<u64>,
    /// Vertex guard for constructions; for `verify`, the grid size cap.
    #[arg(long, global = true)]
    pub max_vertices: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here (atomically) instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = ENV_CACHE_DIR)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a graph and print its canonical form.
    Build {
        /// Catalog id, canonical JSON file or construction expression.
        graph: String,
    },
    /// Compute an invariant with a certificate.
    Solve {
        #[arg(value_enum)]
        invariant: Invariant,
        graph: String,
        /// Multiplicity for `multichromatic`.
        #[arg(long)]
        k: Option<usize>,
        /// Subset size for `extract`.
        #[arg(long)]
        c: Option<usize>,
        /// Blow-up factor for `extract`.
        #[arg(long)]
        d: Option<usize>,
        /// Ignore and do not update the certificate cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Filter and re-render a JSON report file.
    Report {
        file: PathBuf,
        /// Keep rows whose operation contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum)]
        verdict: Option<VerdictArg>,
    },
    /// Inspect or empty the certificate cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Chromatic,
    Clique,
    Independence,
    Fractional,
    Multichromatic,
    Extract,
}

impl Invariant {
    fn name(self) -> &'static str {
        match self {
            Invariant::Chromatic => "chromatic",
            Invariant::Clique => "clique",
            Invariant::Independence => "independence",
            Invariant::Fractional => "fractional",
            Invariant::Multichromatic => "multichromatic",
            Invariant::Extract => "extract",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerdictArg {
    Pass,
    Fail,
    Regime,
    Budget,
    Error,
}

impl From<VerdictArg> for Verdict {
    fn from(v: VerdictArg) -> Self {
        match v {
            VerdictArg::Pass => Verdict::Pass,
            VerdictArg::Fail => Verdict::Fail,
            VerdictArg::Regime => Verdict::Regime,
            VerdictArg::Budget => Verdict::Budget,
            VerdictArg::Error => Verdict::Error,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    List,
    Clear,
}

/// Marks an error whose report has already been emitted, so only the exit
/// code remains to be decided.
#[derive(Debug)]
struct Reported {
    regime: bool,
}

impl std::fmt::Display for Reported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("error reported")
    }
}

impl std::error::Error for Reported {}

/// Parses `args` (program name first), runs the command and returns the
/// exit status: 0 on success, 2 for regime outcomes, 1 otherwise.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            if let Some(r) = e.downcast_ref::<Reported>() {
                return if r.regime { 2 } else { 1 };
            }
            print_err(&format!("error: {e:#}\n"));
            if is_regime(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn is_regime(e: &anyhow::Error) -> bool {
    e.chain()
        .any(|c| c.downcast_ref::<kneserlab::Error>().is_some_and(kneserlab::Error::is_regime))
}

fn budget(g: &Global) -> Budget {
    Budget {
        nodes: g.budget_nodes,
        time: g.budget_ms.map(Duration::from_millis),
        cancel: None,
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    if !matches!(cli.command, Command::Verify { .. }) {
        if let Some(m) = g.max_vertices {
            std::env::set_var(ENV_MAX_VERTICES, m.to_string());
        }
    }
    match &cli.command {
        Command::Build { graph } => build(g, graph),
        Command::Solve {
            invariant,
            graph,
            k,
            c,
            d,
            no_cache,
        } => solve(g, *invariant, graph, *k, (*c, *d), *no_cache),
        Command::Verify { suite } => verify(g, suite),
        Command::Report { file, filter, verdict } => report(g, file, filter.as_deref(), *verdict),
        Command::Cache { action } => cache(g, action),
    }
}

/// Resolves a catalog id, then a canonical JSON file, then an expression.
pub fn resolve_graph(reference: &str) -> Result<(String, Graph)> {
    let reference = reference.trim();
    if let Some(g) = catalog_entry(reference) {
        return Ok((reference.to_string(), g));
    }
    let path = Path::new(reference);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let g = Graph::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok((reference.to_string(), g));
    }
    let e = parse_expression(reference)?;
    let g = e.build().with_context(|| format!("building {e}"))?;
    Ok((e.to_string(), g))
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => print_out(text),
    }
}

fn build(g: &Global, reference: &str) -> Result<i32> {
    let (_, graph) = resolve_graph(reference)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => graph.to_canonical_json() + "\n",
        Format::Dot => graph.to_dot(),
        Format::Text => describe_graph(&graph),
        Format::Csv => bail!("`build` supports --format json, dot or text"),
    };
    emit(g, &text)?;
    Ok(0)
}

fn describe_graph(g: &Graph) -> String {
    let mut s = format!("vertices {}\nedges {}\nloops {}\n", g.n(), g.edge_count(), g.loops().len());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} -- {}", g.label_or_index(u), g.label_or_index(v));
    }
    for &v in g.loops() {
        let _ = writeln!(s, "{} -- {}", g.label_or_index(v), g.label_or_index(v));
    }
    s
}

fn render_reports(rows: &[Report], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(rows),
        Format::Csv => to_csv(rows),
        Format::Text => {
            let mut s = String::new();
            for r in rows {
                let values = serde_json::to_string(&r.values)?;
                let _ = writeln!(s, "{}\t{}\t{}\t{}", r.verdict.as_str(), r.operation, r.instance, values);
            }
            s
        }
        Format::Dot => bail!("reports support --format json, csv or text"),
    })
}

fn solve(
    g: &Global,
    invariant: Invariant,
    reference: &str,
    k: Option<usize>,
    (c, d): (Option<usize>, Option<usize>),
    no_cache: bool,
) -> Result<i32> {
    let op = invariant.name();
    let instance = reference.trim().to_string();
    let outcome = resolve_graph(reference).and_then(|(instance, graph)| {
        let row = match invariant {
            Invariant::Extract => {
                let (c, d) = (c.context("--c is required")?, d.context("--d is required")?);
                solve_extract(g, &instance, &graph, c, d)?
            }
            _ => solve_invariant(g, invariant, &instance, &graph, k, no_cache)?,
        };
        Ok(row)
    });
    match outcome {
        Ok((row, value)) => {
            if let Some(p) = &g.out {
                write_atomic(p, render_reports(std::slice::from_ref(&row), g.format.unwrap_or(Format::Json))?.as_bytes())?;
            }
            match g.format {
                Some(Format::Json) if g.out.is_none() => print_out(&to_json(&[row]))?,
                Some(Format::Csv) if g.out.is_none() => print_out(&to_csv(&[row]))?,
                _ => print_out(&format!("{value}\n"))?,
            }
            Ok(0)
        }
        Err(e) => {
            let regime = is_regime(&e);
            let core = e.chain().find_map(|c| c.downcast_ref::<kneserlab::Error>());
            let row = match core {
                Some(ce) => Report::from_error(op, instance, ce),
                None => Report::new(op, instance).verdict(Verdict::Error).note(format!("{e:#}")),
            };
            if let Some(p) = &g.out {
                write_atomic(p, render_reports(&[row], g.format.unwrap_or(Format::Json))?.as_bytes())?;
            }
            print_err(&format!("error: {e:#}\n"));
            Err(Reported { regime }.into())
        }
    }
}

fn solve_invariant(
    g: &Global,
    invariant: Invariant,
    instance: &str,
    graph: &Graph,
    k: Option<usize>,
    no_cache: bool,
) -> Result<(Report, String)> {
    let op = invariant.name();
    let params = match (invariant, k) {
        (Invariant::Multichromatic, Some(k)) => format!("k={k}"),
        (Invariant::Multichromatic, None) => bail!("--k is required for multichromatic"),
        _ => String::new(),
    };
    let store = Cache::new(g.cache_dir.clone().unwrap_or_else(Cache::default_dir));
    let key = Cache::key(op, &params, graph);
    let cached = if no_cache { None } else { store.lookup(&key, graph) };
    let (cert, from_cache) = match cached {
        Some(entry) => (entry.certificate, true),
        None => {
            let b = budget(g);
            let cert = match invariant {
                Invariant::Chromatic => Certificate::Chromatic(chromatic_number(graph, &b)?),
                Invariant::Clique => {
                    graph.require_loop_free()?;
                    let r = max_clique(graph, &b)?;
                    Certificate::Clique {
                        clique: r.clique,
                        nodes: r.nodes,
                    }
                }
                Invariant::Independence => {
                    let r = maximum_independent_set(graph, &b)?;
                    Certificate::Independence {
                        set: r.clique,
                        nodes: r.nodes,
                    }
                }
                Invariant::Fractional => Certificate::Fractional(fractional_chromatic(graph, &b)?),
                Invariant::Multichromatic => Certificate::Multichromatic(multichromatic_number(
                    graph,
                    k.unwrap_or_default(),
                    &MultichromaticOptions {
                        budget: b,
                        max_palette: None,
                    },
                )?),
                Invariant::Extract => unreachable!("handled by solve_extract"),
            };
            (cert, false)
        }
    };
    let value = cert.value();
    if !no_cache && !from_cache {
        let entry = CacheEntry {
            invariant: op.to_string(),
            graph: instance.to_string(),
            params: params.clone(),
            value: value.clone(),
            certificate: cert.clone(),
        };
        let path = store.store(&key, &entry)?;
        print_err(&format!("certificate: {}\n", path.display()));
    } else if from_cache {
        print_err(&format!("certificate (cached, revalidated): {}\n", store.dir().join(format!("{key}.json")).display()));
    }
    let mut row = Report::new(op, instance)
        .value("value", &value)
        .certify(&cert)
        .nodes(cert.nodes())
        .verdict(Verdict::Pass);
    if !params.is_empty() {
        row = row.value("params", &params);
    }
    if from_cache {
        row = row.note("from cache");
    }
    Ok((row, value))
}

fn solve_extract(g: &Global, instance: &str, h: &Graph, c: usize, d: usize) -> Result<(Report, String)> {
    let (e, phi) = extract_from_exponential(h, c, d, &budget(g))?;
    let ok = verify_extraction(&e)?;
    if !ok {
        return Err(anyhow!("extracted map is not a homomorphism"));
    }
    let value = format!("Kneser({},{}) -> Kneser({},{})", c * d, c, e.x, c + 1);
    let row = Report::new("extract", format!("K({})^{instance},c={c},d={d}", c * d))
        .value("x", e.x)
        .value("colors", phi.colors_used())
        .value("psi", &e.psi)
        .certify(&e)
        .verdict(Verdict::Pass);
    Ok((row, value))
}

fn verify(g: &Global, suite: &str) -> Result<i32> {
    let params = SuiteParams {
        max_vertices: g.max_vertices,
        budget: budget(g),
        seed: g.seed,
    };
    let rows = if suite == "all" {
        run_all(&params)
    } else {
        let s = Suite::from_name(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
            anyhow!("unknown suite `{suite}` (expected one of {} or all)", names.join(", "))
        })?;
        run_suite(s, &params)
    };
    emit(g, &render_reports(&rows, g.format.unwrap_or(Format::Json))?)?;
    let s = Summary::of(&rows);
    print_err(&summary_line(suite, &s));
    Ok(if s.ok() { 0 } else { 1 })
}

fn summary_line(suite: &str, s: &Summary) -> String {
    format!(
        "{suite}: {} pass, {} fail, {} regime, {} budget, {} error\n",
        s.pass, s.fail, s.regime, s.budget, s.error
    )
}

fn report(g: &Global, file: &Path, filter: Option<&str>, verdict: Option<VerdictArg>) -> Result<i32> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut rows = from_json(&text).with_context(|| format!("parsing {}", file.display()))?;
    rows.retain(|r| {
        filter.is_none_or(|f| r.operation.contains(f)) && verdict.is_none_or(|v| r.verdict == Verdict::from(v))
    });
    emit(g, &render_reports(&rows, g.format.unwrap_or(Format::Json))?)?;
    print_err(&summary_line(&file.display().to_string(), &Summary::of(&rows)));
    Ok(0)
}

fn cache(g: &Global, action: &CacheAction) -> Result<i32> {
    let store = Cache::new(g.cache_dir.clone().unwrap_or_else(Cache::default_dir));
    match action {
        CacheAction::List => {
            let entries = store.list()?;
            let text = match g.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let items: Vec<serde_json::Value> = entries
                        .iter()
                        .map(|(key, e)| {
                            serde_json::json!({
                                "key": key,
                                "invariant": e.invariant,
                                "graph": e.graph,
                                "params": e.params,
                                "value": e.value,
                                "certificate": certificate_ref(&e.certificate),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&items)? + "\n"
                }
                Format::Text => {
                    let mut s = String::new();
                    for (key, e) in &entries {
                        let _ = writeln!(s, "{key}\t{}\t{}\t{}\t{}", e.invariant, e.graph, e.params, e.value);
                    }
                    s
                }
                _ => bail!("`cache list` supports --format json or text"),
            };
            emit(g, &text)?;
        }
        CacheAction::Clear => {
            let n = store.clear()?;
            print_out(&format!("removed {n} entries from {}\n", store.dir().display()))?;
        }
    }
    Ok(0)
}
