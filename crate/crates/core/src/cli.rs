//! Command-line driver.
//!
//! Every command produces one JSON report on stdout that embeds the run
//! configuration and a SHA-256 of its inputs; files written alongside embed
//! the same two fields. Exit codes: 0 all checks pass, 1 a property is
//! violated (the report carries the witness), 2 operational error.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coloring::{bounded_color, chi_bound, color_space, edge_partition, ColoringError};
use crate::farey::{phi_count, residue_partition, PartitionError};
use crate::io::{parse_edge_list, write_dimacs, write_edge_list, write_residue_graph, FormatError};
use crate::oracles::{
    exact_chromatic_number, max_clique, verify_acyclic, verify_no_long_path, verify_partition_sums,
    verify_proper, verify_triangle_free, verify_unique_paths, Budget, OracleError, VerificationReport,
    Verdict, Witness,
};
use crate::power::{build_power_graph, class_parameters, FunctionSpec, ParamsError, PowerError, ResidueGraph};
use crate::zykov::{build_zykov_capped, predict_size, ZykovError, DEFAULT_MAX_VERTICES};

#[derive(Debug, Parser)]
#[command(name = "chibound", version, about = "Build and certify chi-bounded power graphs of oriented Zykov graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for parallel stages; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall-clock time in reports (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build a Zykov graph G_k or a power graph G'_p of it and write it out.
    Construct(ConstructArgs),
    /// Run one group of oracle checks, or all of them.
    Verify(VerifyArgs),
    /// Product-colour a residue-labelled graph and check the result.
    Color(ColorArgs),
    /// Check seeded random induced subgraphs of a residue-labelled graph.
    Sample(SampleArgs),
    /// Tabulate g over the primes and the resulting chi-bound.
    Params(ParamsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructKind {
    Zykov,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Edgelist,
    Dimacs,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// G_k: acyclic, triangle-free, unique paths, chi = k.
    #[value(alias = "lemma21")]
    Zykov,
    /// G'_p of G_k: clique number at most p.
    #[value(alias = "lemma22")]
    Power,
    /// Residue partitions: no m <= n members of a class sum to 0 mod p.
    #[value(alias = "lemma24")]
    Partition,
    /// Class graphs have no path of length omega; product colouring.
    #[value(alias = "claim26")]
    Classes,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: Option<u32>,
    /// Output path prefix; defaults to `zykov_k<k>` or `power_k<k>_p<p>`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct BudgetArgs {
    /// Wall-clock cap per oracle call.
    #[arg(long)]
    pub budget_ms: Option<u64>,
    /// Search-node cap per oracle call.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_nodes: self.budget_nodes, max_time: self.budget_ms.map(Duration::from_millis) }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// Farey order for `partition`; every order below p (at most 6) when omitted.
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ColorArgs {
    /// Residue-labelled edge list.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub p: u32,
    /// Clique number to assume; measured with the clique oracle when omitted.
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
    /// Where to write the colouring.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability that a vertex is kept.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ParamsArgs {
    /// `n^2`, `2^n`, or a JSON file mapping n to f(n).
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n_max: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Zykov(#[from] ZykovError),
    #[error(transparent)]
    Power(#[from] PowerError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Violation = 1,
    Operational = 2,
}

impl Exit {
    fn from_reports(reports: &[VerificationReport]) -> Exit {
        if reports.iter().any(|r| r.verdict == Verdict::Fail) {
            Exit::Violation
        } else if reports.iter().any(|r| r.verdict == Verdict::BudgetExceeded) {
            Exit::Operational
        } else {
            Exit::Pass
        }
    }
}

/// A finished command: the report for stdout plus files to write.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Value,
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    pub fn report_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("JSON values serialise");
        s.push('\n');
        s
    }

    pub fn write_files(&self) -> Result<(), CliError> {
        for (path, contents) in &self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
            }
            fs::write(path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
        Ok(())
    }
}

/// The serialised command line. `--threads` and `--timing` are left out:
/// neither may change a result.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub tool_version: &'static str,
    pub command: &'a Command,
}

struct Context {
    config: Value,
    input_sha256: String,
    timing: bool,
}

impl Context {
    fn envelope(&self, body: Value) -> Value {
        let mut env = json!({ "run_config": self.config, "input_sha256": self.input_sha256 });
        if let (Value::Object(env_map), Value::Object(body_map)) = (&mut env, body) {
            env_map.extend(body_map);
        }
        env
    }

    fn comments(&self) -> Vec<String> {
        vec![
            format!("run_config {}", serde_json::to_string(&self.config).expect("serialisable")),
            format!("input_sha256 {}", self.input_sha256),
        ]
    }

    fn finish(&self, mut reports: Vec<VerificationReport>) -> Vec<VerificationReport> {
        if !self.timing {
            reports.iter_mut().for_each(|r| r.wall_time_ms = None);
        }
        reports.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
        reports
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_input(path: &Path) -> Result<(String, String), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let hash = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok((text, hash))
}

fn read_residue_graph(path: &Path, p: u32) -> Result<(ResidueGraph, String), CliError> {
    let (text, hash) = read_input(path)?;
    let parsed = parse_edge_list(&text).map_err(|source| CliError::Format { path: path.to_path_buf(), source })?;
    Ok((parsed.into_residue_graph(p), hash))
}

/// Runs a parsed command line without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let run = || run_command(cli);
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn run_command(cli: &Cli) -> Result<Outcome, CliError> {
    let config = serde_json::to_value(RunConfig { tool_version: env!("CARGO_PKG_VERSION"), command: &cli.command })?;
    let config_hash = sha256_hex(serde_json::to_string(&config)?.as_bytes());
    let mut ctx = Context { config, input_sha256: config_hash, timing: cli.timing };
    match &cli.command {
        Command::Construct(args) => cmd_construct(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
        Command::Color(args) => {
            let (graph, hash) = read_residue_graph(&args.input, args.p)?;
            ctx.input_sha256 = hash;
            cmd_color(&ctx, args, &graph)
        }
        Command::Sample(args) => {
            let (graph, hash) = read_residue_graph(&args.input, args.p)?;
            ctx.input_sha256 = hash;
            cmd_sample(&ctx, args, &graph)
        }
        Command::Params(args) => {
            let spec = match FunctionSpec::builtin(&args.f) {
                Ok(spec) => spec,
                Err(_) => {
                    let (text, hash) = read_input(Path::new(&args.f))?;
                    ctx.input_sha256 = hash;
                    FunctionSpec::from_json(&text)?
                }
            };
            cmd_params(&ctx, args, &spec)
        }
    }
}

fn biguint_str(v: &BigUint) -> String {
    v.to_str_radix(10)
}

fn graph_json(n: usize, edges: impl Iterator<Item = Value>, ctx: &Context) -> String {
    let body = ctx.envelope(json!({ "n": n, "edges": edges.collect::<Vec<_>>() }));
    serde_json::to_string_pretty(&body).expect("serialisable") + "\n"
}

fn cmd_construct(ctx: &Context, args: &ConstructArgs) -> Result<Outcome, CliError> {
    let (pred_v, pred_e) = predict_size(args.k.max(1));
    let zykov = build_zykov_capped(args.k, args.max_vertices)?;
    let comments = ctx.comments();
    let extension = match args.format {
        Format::Edgelist => "edges",
        Format::Dimacs => "col",
        Format::Json => "json",
    };
    let mut files = Vec::new();
    let (n_vertices, n_edges);
    match args.kind {
        ConstructKind::Zykov => {
            let prefix = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("zykov_k{}", args.k)));
            let g = &zykov.graph;
            let text = match args.format {
                Format::Edgelist => write_edge_list(g, None, &comments),
                Format::Dimacs => write_dimacs(g, &comments),
                Format::Json => graph_json(g.n_vertices(), g.edges().iter().map(|&(u, v)| json!([u, v])), ctx),
            };
            files.push((with_suffix(&prefix, extension), text));
            let provenance = ctx.envelope(json!({ "k": args.k, "vertices": zykov.provenance }));
            files.push((
                with_suffix(&prefix, "provenance.json"),
                serde_json::to_string_pretty(&provenance)? + "\n",
            ));
            (n_vertices, n_edges) = (g.n_vertices(), g.n_edges());
        }
        ConstructKind::Power => {
            let p = args.p.ok_or_else(|| CliError::Usage("construct power needs --p".into()))?;
            let power = build_power_graph(&zykov.graph, p)?;
            let prefix = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("power_k{}_p{p}", args.k)));
            let rg = power.residue_graph();
            let text = match args.format {
                Format::Edgelist => write_residue_graph(rg, &comments),
                Format::Dimacs => write_dimacs(rg.graph(), &comments),
                Format::Json => graph_json(
                    rg.graph().n_vertices(),
                    rg.labeled_edges().map(|(u, v, r)| json!([u, v, r])),
                    ctx,
                ),
            };
            files.push((with_suffix(&prefix, extension), text));
            (n_vertices, n_edges) = (rg.graph().n_vertices(), rg.graph().n_edges());
        }
    }
    let report = ctx.envelope(json!({
        "predicted_base_size": { "vertices": biguint_str(&pred_v), "edges": biguint_str(&pred_e) },
        "vertices": n_vertices,
        "edges": n_edges,
        "files": files.iter().map(|(p, _)| p.display().to_string()).collect::<Vec<_>>(),
    }));
    Ok(Outcome { exit: Exit::Pass, report, files })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

struct Instance<'a>(&'a str, usize, Option<u32>);

impl fmt::Display for Instance<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.2 {
            Some(p) => write!(f, "{}(k={}, p={p})", self.0, self.1),
            None => write!(f, "{}(k={})", self.0, self.1),
        }
    }
}

fn zykov_reports(k: usize, budget: Budget) -> Result<Vec<VerificationReport>, CliError> {
    let g = build_zykov_capped(k, DEFAULT_MAX_VERTICES)?.graph;
    let name = Instance("G", k, None).to_string();
    let mut reports = Vec::new();
    for check in [verify_acyclic, verify_triangle_free, verify_unique_paths] {
        let start = Instant::now();
        reports.push(check(&g, &name).timed(start));
    }
    let start = Instant::now();
    let chi = match exact_chromatic_number(&g, budget) {
        Ok(cert) if cert.chi == k => VerificationReport::pass("chromatic_number", &name),
        Ok(cert) if cert.chi < k => {
            VerificationReport::fail("chromatic_number", &name, Witness::Coloring { colors: cert.coloring })
        }
        Ok(cert) => VerificationReport::fail(
            "chromatic_number",
            &name,
            Witness::Bounds { lower: cert.chi, upper: cert.chi },
        ),
        Err(OracleError::BudgetExceeded { lower, upper, .. }) => {
            VerificationReport::budget_exceeded("chromatic_number", &name, lower, upper)
        }
        Err(e) => return Err(e.into()),
    };
    reports.push(chi.with_detail(format!("expected chi = {k}")).timed(start));
    Ok(reports)
}

fn clique_bound_report(g: &crate::graph::OrientedGraph, p: u32, name: &str, budget: Budget) -> (VerificationReport, Option<usize>) {
    let start = Instant::now();
    match max_clique(g, budget) {
        Ok(cert) if cert.size <= p as usize => (
            VerificationReport::pass("clique_bound", name)
                .with_detail(format!("omega = {} <= p = {p}, witness {:?}", cert.size, cert.witness))
                .timed(start),
            Some(cert.size),
        ),
        Ok(cert) => (
            VerificationReport::fail("clique_bound", name, Witness::Clique { vertices: cert.witness }).timed(start),
            Some(cert.size),
        ),
        Err(OracleError::BudgetExceeded { lower, upper, .. }) => {
            (VerificationReport::budget_exceeded("clique_bound", name, lower, upper).timed(start), None)
        }
        Err(OracleError::CycleFound(_)) => unreachable!("clique search ignores orientation"),
    }
}

fn power_reports(k: usize, p: u32, budget: Budget) -> Result<Vec<VerificationReport>, CliError> {
    let base = build_zykov_capped(k, DEFAULT_MAX_VERTICES)?.graph;
    let power = build_power_graph(&base, p)?;
    let name = Instance("G'", k, Some(p)).to_string();
    let mut reports = vec![clique_bound_report(power.graph(), p, &name, budget).0];
    let base_kept = base.edges().iter().all(|&(u, v)| power.residue_graph().residue(u, v) == Some(1));
    reports.push(if base_kept {
        VerificationReport::pass("contains_base", &name)
    } else {
        let &(tail, head) = base
            .edges()
            .iter()
            .find(|&&(u, v)| power.residue_graph().residue(u, v) != Some(1))
            .expect("a missing edge");
        VerificationReport::fail("contains_base", &name, Witness::LongPath { vertices: vec![tail, head] })
    });
    if p == 2 {
        reports.push(verify_triangle_free(power.graph(), &name));
    }
    Ok(reports)
}

fn partition_reports(p: u32, orders: &[u32]) -> Result<Vec<VerificationReport>, CliError> {
    let mut reports = Vec::new();
    for &n in orders {
        let part = residue_partition(p, n)?;
        let start = Instant::now();
        reports.push(verify_partition_sums(&part).timed(start));
        let mut seen: Vec<u32> = part.classes().concat();
        seen.sort_unstable();
        let instance = format!("p={p} n={n}");
        reports.push(if seen == (1..p).collect::<Vec<_>>() {
            VerificationReport::pass("partition_cover", &instance)
                .with_detail(format!("{} classes = Phi({n})", part.len()))
        } else {
            VerificationReport::fail("partition_cover", &instance, Witness::ZeroSum { class: 0, elements: seen })
        });
    }
    Ok(reports)
}

/// Class-graph path bounds and the product colouring on one residue graph
/// with clique number `n < p`.
fn coloring_reports(graph: &ResidueGraph, n: u32, name: &str) -> Result<Vec<VerificationReport>, CliError> {
    let p = graph.p();
    let part = residue_partition(p, n)?;
    let classes = edge_partition(graph, &part)?;
    let mut reports = Vec::new();
    for i in 0..part.len() {
        let class_graph = classes.class_graph(i);
        let instance = format!("{name} class {:03}", i + 1);
        reports.push(verify_no_long_path(&class_graph, n as usize, &instance)?);
    }
    let start = Instant::now();
    match bounded_color(graph, n, &part) {
        Ok(coloring) => {
            reports.push(verify_proper(graph.graph(), &coloring, name).timed(start));
            let space = color_space(n, part.len()).expect("checked by bounded_color");
            let squared = color_space(n, (n * n) as usize);
            let within = coloring.palette() as u128 <= space && squared.is_none_or(|s| space <= s);
            let detail = format!("palette {} <= n^Phi(n) = {space} <= n^(n^2)", coloring.palette());
            reports.push(if within {
                VerificationReport::pass("palette_bound", name).with_detail(detail)
            } else {
                VerificationReport::fail(
                    "palette_bound",
                    name,
                    Witness::Bounds { lower: coloring.palette(), upper: space as usize },
                )
            });
        }
        Err(ColoringError::CliqueTooLarge { witness, .. }) => {
            reports.push(VerificationReport::fail("bounded_coloring", name, Witness::Clique { vertices: witness }))
        }
        Err(ColoringError::InconsistentLabels { path }) => {
            reports.push(VerificationReport::fail("bounded_coloring", name, Witness::LongPath { vertices: path }))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(reports)
}

fn class_reports(k: usize, p: u32, budget: Budget) -> Result<Vec<VerificationReport>, CliError> {
    let base = build_zykov_capped(k, DEFAULT_MAX_VERTICES)?.graph;
    let power = build_power_graph(&base, p)?;
    let name = Instance("G'", k, Some(p)).to_string();
    let omega = max_clique(power.graph(), budget)?.size as u32;
    if omega >= p {
        return Err(CliError::Usage(format!("class checks need omega < p, but omega({name}) = {omega}")));
    }
    coloring_reports(power.residue_graph(), omega.max(1), &name)
}

fn cmd_verify(ctx: &Context, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let budget = args.budget.budget();
    let orders: Vec<u32> = match args.n {
        Some(n) => vec![n],
        None => (1..args.p.min(7)).collect(),
    };
    let mut reports = Vec::new();
    let target = args.target;
    let wants = |t: Target| target == t || target == Target::All;
    if wants(Target::Zykov) {
        reports.extend(zykov_reports(args.k, budget)?);
    }
    if wants(Target::Power) {
        reports.extend(power_reports(args.k, args.p, budget)?);
    }
    if wants(Target::Partition) {
        reports.extend(partition_reports(args.p, &orders)?);
    }
    if wants(Target::Classes) {
        reports.extend(class_reports(args.k, args.p, budget)?);
    }
    let reports = ctx.finish(reports);
    let exit = Exit::from_reports(&reports);
    let report = ctx.envelope(json!({ "reports": reports }));
    let files = args.out.iter().map(|p| (p.clone(), pretty(&report))).collect();
    Ok(Outcome { exit, report, files })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn cmd_color(ctx: &Context, args: &ColorArgs, graph: &ResidueGraph) -> Result<Outcome, CliError> {
    let budget = args.budget.budget();
    let p = args.p;
    let name = args.input.display().to_string();
    let mut reports = Vec::new();
    let n = match args.n {
        Some(n) => n,
        None => {
            let (report, omega) = clique_bound_report(graph.graph(), p, &name, budget);
            reports.push(report);
            match omega {
                Some(omega) => (omega as u32).max(1),
                None => return Ok(finish_color(ctx, reports, None)),
            }
        }
    };
    if n >= p {
        return Err(CliError::Usage(format!("clique number {n} is not below p = {p}")));
    }
    reports.extend(coloring_reports(graph, n, &name)?);
    let part = residue_partition(p, n)?;
    let coloring = bounded_color(graph, n, &part).ok();
    let mut outcome = finish_color(ctx, reports, coloring.as_ref().map(|c| (n, phi_count(n as u64), c)));
    if let (Some(path), Some(c)) = (&args.out, &coloring) {
        let body = ctx.envelope(serde_json::to_value(c)?);
        outcome.files.push((path.clone(), pretty(&body)));
    }
    Ok(outcome)
}

fn finish_color(
    ctx: &Context,
    reports: Vec<VerificationReport>,
    coloring: Option<(u32, u64, &crate::coloring::Coloring)>,
) -> Outcome {
    let reports = ctx.finish(reports);
    let exit = Exit::from_reports(&reports);
    let summary = coloring.map(|(n, phi, c)| {
        json!({
            "n": n,
            "phi": phi,
            "palette": c.palette(),
            "color_space": color_space(n, phi as usize).map(|s| s.to_string()),
        })
    });
    let report = ctx.envelope(json!({ "reports": reports, "coloring": summary }));
    Outcome { exit, report, files: Vec::new() }
}

fn cmd_sample(ctx: &Context, args: &SampleArgs, graph: &ResidueGraph) -> Result<Outcome, CliError> {
    if !(0.0..=1.0).contains(&args.density) {
        return Err(CliError::Usage(format!("density {} is not a probability", args.density)));
    }
    let budget = args.budget.budget();
    let p = args.p;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let n_vertices = graph.graph().n_vertices();
    let mut reports = Vec::new();
    let mut samples = Vec::new();
    for index in 0..args.count {
        let subset: Vec<usize> = (0..n_vertices).filter(|_| rng.random_bool(args.density)).collect();
        let sub = graph.induced(&subset).expect("sampled vertices exist");
        let name = format!("sample {index:05}");
        let (report, omega) = clique_bound_report(sub.graph.graph(), p, &name, budget);
        reports.push(report);
        if let Some(omega) = omega.filter(|&w| (w as u32) < p) {
            reports.extend(coloring_reports(&sub.graph, (omega as u32).max(1), &name)?);
        }
        samples.push(json!({ "index": index, "vertices": sub.back_map, "omega": omega }));
    }
    let reports = ctx.finish(reports);
    let exit = Exit::from_reports(&reports);
    let report = ctx.envelope(json!({ "samples": samples, "reports": reports }));
    let files = args.out.iter().map(|p| (p.clone(), pretty(&report))).collect();
    Ok(Outcome { exit, report, files })
}

/// Largest `k` whose `|V(G_k)|` is tabulated; beyond it the number has
/// thousands of digits.
const MAX_TABULATED_K: u64 = 16;

fn cmd_params(ctx: &Context, args: &ParamsArgs, spec: &FunctionSpec) -> Result<Outcome, CliError> {
    let table = spec.tabulate(args.n_max)?;
    let params = class_parameters(&table, args.n_max)?;
    let mut sizes = BTreeMap::new();
    let mut per_prime = Vec::new();
    for (&q, &g) in &params.g {
        let size = (1..=MAX_TABULATED_K).contains(&g).then(|| predict_size(g as usize).0);
        per_prime.push(json!({
            "prime": q,
            "g": g,
            "base_vertices": size.as_ref().map(biguint_str),
        }));
        if let Some(s) = size {
            sizes.insert(q, s);
        }
    }
    let bounds: Vec<Value> = (1..=args.n_max)
        .map(|n| match chi_bound(n, &params, &sizes, &BTreeMap::new()) {
            Ok(b) => serde_json::to_value(b).expect("serialisable"),
            Err(e) => json!({ "n": n, "error": e.to_string() }),
        })
        .collect();
    let report = ctx.envelope(json!({
        "parameters": params,
        "per_prime": per_prime,
        "chi_bounds": bounds,
        "witnesses": (2..=args.n_max).map(|n| json!({ "n": n, "p": params.witness_for(n) })).collect::<Vec<_>>(),
    }));
    let files = args.out.iter().map(|p| (p.clone(), pretty(&report))).collect();
    Ok(Outcome { exit: Exit::Pass, report, files })
}

/// Maps an operational error to its exit code.
pub fn error_exit(_: &CliError) -> Exit {
    Exit::Operational
}
