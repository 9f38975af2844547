use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ramsey_core::bounds::{self, BoundResult};
use ramsey_core::coloring::{self, bundled, PartialColoring, RamseySpec};
use ramsey_core::construct::{self, SearchBudget};
use ramsey_core::graph::Edge;
use ramsey_core::oracle::{self, EnumerationBudget, Objective, Symmetry};
use ramsey_core::ramsey_table::{RamseyTable, R334};
use ramsey_core::tables;

const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_COMPUTE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ramsey",
    version,
    about = "Bounds and brute-force checks for clique multiplicities at the Ramsey threshold"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Ramsey table CSV replacing the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    ramsey_table: Option<PathBuf>,
    /// Interval shipped for R(3,3,4) in the bundled table.
    #[arg(long, global = true, value_enum, default_value = "31")]
    r334: R334Arg,
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Output,
    /// Directory for emitted files (witnesses, graphs, certificates).
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum R334Arg {
    #[value(name = "31")]
    Upper31,
    #[value(name = "30")]
    Exact30,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Classic,
    Edge,
    Balanced,
    General,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    None,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Total,
    LargestColor,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate bound formulas for a size specification.
    Bound {
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value = "all")]
        formula: FormulaArg,
        #[arg(long)]
        g_vertices: Option<u64>,
        #[arg(long)]
        g_edges: Option<u64>,
        /// Certificate file supplying G for the general formula.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Regenerate the diagonal tables for s = 5..10 and compare with the reference values.
    Tables,
    /// Exact minimum number of monochromatic target cliques over all colorings of K_n.
    Oracle {
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "star")]
        symmetry: SymmetryArg,
        #[arg(long, value_enum, default_value = "total")]
        objective: ObjectiveArg,
        /// Maximum number of colorings to enumerate.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Search for a good coloring of K_n.
    Witness {
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "star")]
        symmetry: SymmetryArg,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Exhaustively check the single-edge counting cap for n = s..=n.
    VerifyLemma {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compare the engine's minimum monochromatic triangle count with the degree formula.
    Goodman {
        #[arg(long)]
        n: usize,
    },
    /// Build the extremal book graph.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Add a vertex cloning `pivot`, leaving the edge between them uncolored.
    Extend {
        /// Coloring file, or `bundled:paley5` / `bundled:paley17`.
        #[arg(long, value_name = "PATH")]
        coloring: String,
        #[arg(long)]
        pivot: usize,
        /// Defaults to the least diagonal size for which the input is good.
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Verify a certificate and evaluate the bound it yields.
    Certify {
        #[arg(long, value_name = "PATH")]
        certificate: PathBuf,
        /// Defaults to the least diagonal size for which the colored part is good.
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Randomised search for certificates with a large uncolored subgraph.
    Search {
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        n: usize,
        /// Local moves per restart.
        #[arg(long, default_value_t = 2000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: m.into() }
    }
    fn parse(m: impl ToString) -> Self {
        Failure { code: EXIT_PARSE, message: m.to_string() }
    }
    fn compute(m: impl ToString) -> Self {
        Failure { code: EXIT_COMPUTE, message: m.to_string() }
    }
}

type Res<T> = Result<T, Failure>;

/// What a command produced: human text and the same content as records.
#[derive(Default)]
struct Report {
    text: String,
    records: Vec<Value>,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
    fn record(&mut self, v: Value) {
        self.records.push(v);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Text => print!("{}", report.text),
                Output::Records => {
                    for r in &report.records {
                        println!("{r}");
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_table(cli: &Cli) -> Res<RamseyTable> {
    match &cli.ramsey_table {
        Some(p) => {
            let text = read_file(p)?;
            RamseyTable::load(&text).map_err(Failure::parse)
        }
        None => Ok(RamseyTable::bundled_with(match cli.r334 {
            R334Arg::Upper31 => R334::Upper31,
            R334Arg::Exact30 => R334::Exact30,
        })),
    }
}

fn read_file(p: &Path) -> Res<String> {
    fs::read_to_string(p).map_err(|e| Failure::parse(format!("{}: {e}", p.display())))
}

fn parse_spec(s: &str) -> Res<RamseySpec> {
    s.parse::<RamseySpec>().map_err(|e| Failure::usage(format!("--sizes {s:?}: {e}")))
}

fn workers(cli: &Cli) -> usize {
    cli.workers.unwrap_or_else(oracle::default_workers).max(1)
}

fn write_out(cli: &Cli, name: &str, contents: &str) -> Res<Option<PathBuf>> {
    let Some(dir) = &cli.out_dir else { return Ok(None) };
    fs::create_dir_all(dir).map_err(|e| Failure::compute(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::compute(format!("{}: {e}", path.display())))?;
    Ok(Some(path))
}

fn note_written(report: &mut Report, path: &Option<PathBuf>) {
    if let Some(p) = path {
        report.line(format!("wrote {}", p.display()));
    }
}

fn path_value(path: &Option<PathBuf>) -> Value {
    path.as_ref().map_or(Value::Null, |p| json!(p.display().to_string()))
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.command {
        Command::Bound { sizes, formula, g_vertices, g_edges, certificate } => {
            cmd_bound(cli, sizes, *formula, *g_vertices, *g_edges, certificate.as_deref())
        }
        Command::Tables => cmd_tables(cli),
        Command::Oracle { sizes, n, symmetry, objective, budget } => {
            cmd_oracle(cli, sizes, *n, *symmetry, *objective, *budget)
        }
        Command::Witness { sizes, n, symmetry, budget } => cmd_witness(cli, sizes, *n, *symmetry, *budget),
        Command::VerifyLemma { s, n } => cmd_verify_lemma(cli, *s, *n),
        Command::Goodman { n } => cmd_goodman(cli, *n),
        Command::Construct { n, s } => cmd_construct(cli, *n, *s),
        Command::Extend { coloring, pivot, sizes } => cmd_extend(cli, coloring, *pivot, sizes.as_deref()),
        Command::Certify { certificate, sizes } => cmd_certify(cli, certificate, sizes.as_deref()),
        Command::Search { sizes, n, budget, seed } => cmd_search(cli, sizes, *n, *budget, *seed),
    }
}

fn bound_record(b: &BoundResult) -> Value {
    let mut v = serde_json::to_value(b).expect("serializable");
    if let Some(claim) = tables::published_claim(&b.sizes, b.formula) {
        v["published_claim"] = json!(claim);
    }
    v
}

fn push_bound(report: &mut Report, b: &BoundResult) {
    report.line(b.to_string());
    for i in &b.inputs {
        report.line(format!("  {}: {}", i.role, i.lookup));
    }
    for n in &b.notes {
        report.line(format!("  note: {n}"));
    }
    if let Some(claim) = tables::published_claim(&b.sizes, b.formula) {
        let verdict = if b.value == claim.into() { "agrees" } else { "differs" };
        report.line(format!("  annotation: published claim {claim} ({verdict})"));
    }
    report.record(bound_record(b));
}

fn cmd_bound(
    cli: &Cli,
    sizes: &str,
    formula: FormulaArg,
    g_vertices: Option<u64>,
    g_edges: Option<u64>,
    certificate: Option<&Path>,
) -> Res<Report> {
    let spec = parse_spec(sizes)?;
    let table = load_table(cli)?;
    let mut report = Report::default();
    let all = formula == FormulaArg::All;
    let compute = |e: ramsey_core::BoundError| Failure::compute(e);

    if formula == FormulaArg::Classic || all {
        if spec.is_diagonal() && spec.k() == 2 {
            push_bound(&mut report, &bounds::classic_bound(spec.max_size(), &table).map_err(compute)?);
        } else if !all {
            return Err(Failure::usage("the classic formula needs a two-color diagonal spec"));
        }
    }
    if formula == FormulaArg::Edge || all {
        push_bound(&mut report, &bounds::edge_bound(&spec, &table).map_err(compute)?);
    }
    if formula == FormulaArg::Balanced || all {
        push_bound(&mut report, &bounds::balanced_bound(&spec, &table).map_err(compute)?);
    }
    if formula == FormulaArg::General || (all && (certificate.is_some() || g_vertices.is_some())) {
        let (gv, ge) = match (certificate, g_vertices, g_edges) {
            (Some(p), None, None) => {
                let cert = construct::read_certificate(&read_file(p)?, &spec).map_err(Failure::parse)?;
                (cert.g_vertex_count() as u64, cert.g_edges.len() as u64)
            }
            (None, Some(v), Some(e)) => (v, e),
            _ => {
                return Err(Failure::usage(
                    "the general formula needs either --certificate or both --g-vertices and --g-edges",
                ))
            }
        };
        push_bound(&mut report, &bounds::general_bound(&spec, gv, ge, &table).map_err(compute)?);
    }
    Ok(report)
}

fn cmd_tables(cli: &Cli) -> Res<Report> {
    let table = load_table(cli)?;
    let r = tables::reproduce_tables(&table).map_err(Failure::compute)?;
    let mut report = Report::default();
    report.line(r.to_string());
    report.record(serde_json::to_value(&r).expect("serializable"));
    Ok(report)
}

fn budget(cli: &Cli, limit: Option<u128>) -> EnumerationBudget {
    let mut b = EnumerationBudget::with_workers(workers(cli));
    if let Some(l) = limit {
        b.max_colorings = l;
    }
    b
}

fn symmetry(s: SymmetryArg) -> Symmetry {
    match s {
        SymmetryArg::None => Symmetry::None,
        SymmetryArg::Star => Symmetry::Star,
    }
}

fn cmd_oracle(
    cli: &Cli,
    sizes: &str,
    n: usize,
    sym: SymmetryArg,
    objective: ObjectiveArg,
    limit: Option<u128>,
) -> Res<Report> {
    let spec = parse_spec(sizes)?;
    let objective = match objective {
        ObjectiveArg::Total => Objective::Total,
        ObjectiveArg::LargestColor => Objective::LargestColor,
    };
    let m = oracle::exact_multiplicity(&spec, n, &budget(cli, limit), symmetry(sym), objective)
        .map_err(Failure::compute)?;
    let witness = coloring::write_coloring(&m.witness);
    let path = write_out(cli, "oracle_witness.col", &witness)?;
    let mut report = Report::default();
    report.line(format!("minimum over colorings of K_{n} for {spec}: {}", m.value));
    report.line(format!("per-color counts at witness: {:?}", m.counts));
    report.line(format!("colorings enumerated: {}", m.colorings_visited));
    if path.is_none() {
        report.line("witness:");
        report.text.push_str(&witness);
    }
    note_written(&mut report, &path);
    let mut v = serde_json::to_value(&m).expect("serializable");
    v["n"] = json!(n);
    v["sizes"] = json!(spec.sizes());
    v["witness_file"] = path_value(&path);
    report.record(v);
    Ok(report)
}

fn cmd_witness(cli: &Cli, sizes: &str, n: usize, sym: SymmetryArg, limit: Option<u128>) -> Res<Report> {
    let spec = parse_spec(sizes)?;
    let found = oracle::ramsey_witness(&spec, n, &budget(cli, limit), symmetry(sym)).map_err(Failure::compute)?;
    let mut report = Report::default();
    match found {
        Some(c) => {
            let text = coloring::write_coloring(&c);
            let path = write_out(cli, "witness.col", &text)?;
            report.line(format!("good coloring of K_{n} for {spec} found: R{spec} > {n}"));
            if path.is_none() {
                report.text.push_str(&text);
            }
            note_written(&mut report, &path);
            report.record(
                json!({"sizes": spec.sizes(), "n": n, "found": true, "coloring": text, "file": path_value(&path)}),
            );
        }
        None => {
            report.line(format!("no good coloring of K_{n} for {spec}: R{spec} <= {n}"));
            report.record(json!({"sizes": spec.sizes(), "n": n, "found": false}));
        }
    }
    Ok(report)
}

fn cmd_verify_lemma(cli: &Cli, s: usize, n: usize) -> Res<Report> {
    let r = oracle::verify_counting_lemma(s, n, workers(cli)).map_err(Failure::compute)?;
    let mut report = Report::default();
    report.line(format!(
        "{:>3} {:>10} {:>6} {:>6} {:>10} {:>10}",
        "n", "graphs", "max", "cap", "violations", "attaining"
    ));
    for row in &r.rows {
        report.line(format!(
            "{:>3} {:>10} {:>6} {:>6} {:>10} {:>10}",
            row.n, row.graphs_checked, row.max_copies, row.cap, row.violations, row.attaining
        ));
    }
    report.line(format!("violations: {}, sharp at every n: {}", r.violations(), if r.sharp() { "yes" } else { "no" }));
    report.record(serde_json::to_value(&r).expect("serializable"));
    Ok(report)
}

fn cmd_goodman(cli: &Cli, n: usize) -> Res<Report> {
    let r = oracle::goodman_check(n, &budget(cli, None)).map_err(Failure::compute)?;
    let mut report = Report::default();
    report.line(format!("n = {n}: engine {}, degree formula {}: agree", r.engine, r.direct));
    report.record(serde_json::to_value(&r).expect("serializable"));
    Ok(report)
}

fn cmd_construct(cli: &Cli, n: usize, s: usize) -> Res<Report> {
    let b = construct::build_extremal_book(n, s).map_err(Failure::compute)?;
    let copies = b.graph.count_cliques(s);
    let through = b.graph.count_cliques_through_edge(s, b.spine).expect("spine present");
    let after = b.graph.remove_edges(&[b.spine]).expect("spine present").count_cliques(s);
    let cap = bounds::counting_cap(n as u64, s as u64, 1).map_err(Failure::compute)?;
    let as_coloring = PartialColoring::from_classes(n, vec![b.graph.clone()]).map_err(Failure::compute)?;
    let text = coloring::write_coloring(&as_coloring);
    let path = write_out(cli, &format!("book_{n}_{s}.graph"), &text)?;
    let parts: Vec<usize> = b.parts.iter().map(Vec::len).collect();
    let mut report = Report::default();
    report.line(format!("book graph n={n} s={s}: spine {}, part sizes {parts:?}", b.spine));
    report.line(format!("K_{s} copies: {copies} (through spine {through}, after spine removal {after}, cap {cap})"));
    if path.is_none() {
        report.text.push_str(&text);
    }
    note_written(&mut report, &path);
    report.record(json!({
        "n": n, "s": s, "spine": b.spine.to_string(), "parts": b.parts,
        "copies": copies, "through_spine": through, "after_removal": after,
        "cap": cap.to_string(), "file": path_value(&path),
    }));
    Ok(report)
}

fn load_coloring(arg: &str) -> Res<PartialColoring> {
    match arg {
        "bundled:paley5" => Ok(bundled::five_cycle()),
        "bundled:paley17" => Ok(bundled::paley17()),
        path => coloring::read_coloring(&read_file(Path::new(path))?).map_err(Failure::parse),
    }
}

/// The least `s >= 3` such that no color class holds a `K_s`.
fn inferred_spec(c: &PartialColoring) -> RamseySpec {
    let k = c.k().max(1);
    let s = (3..).find(|&s| (1..=c.k()).all(|i| c.mono_clique_count(i, s) == 0)).expect("terminates at n+1");
    RamseySpec::diagonal(s, k).expect("s >= 3")
}

fn cmd_extend(cli: &Cli, arg: &str, pivot: usize, sizes: Option<&str>) -> Res<Report> {
    let base = load_coloring(arg)?;
    let spec = match sizes {
        Some(s) => parse_spec(s)?,
        None => inferred_spec(&base),
    };
    let ext = coloring::extend_one_vertex(&base, pivot, &spec).map_err(Failure::compute)?;
    let good = ext.is_good(&spec).map_err(Failure::compute)?;
    let e = Edge::new(pivot, ext.n() - 1);
    let text = coloring::write_coloring(&ext);
    let path = write_out(cli, "extended.col", &text)?;
    let mut report = Report::default();
    report.line(format!("extended K_{} to K_{} - {e} for {spec}: good = {good}", base.n(), ext.n()));
    let created: Vec<u64> = (1..=spec.k()).map(|i| ext.cliques_created(e, i, spec.size_of(i))).collect();
    report.line(format!("cliques created by coloring {e} with each color: {created:?}"));
    if path.is_none() {
        report.text.push_str(&text);
    }
    note_written(&mut report, &path);
    report.record(json!({
        "sizes": spec.sizes(), "n": ext.n(), "pivot": pivot, "uncolored": e.to_string(),
        "good": good, "created": created, "coloring": text, "file": path_value(&path),
    }));
    Ok(report)
}

fn cmd_certify(cli: &Cli, path: &Path, sizes: Option<&str>) -> Res<Report> {
    let text = read_file(path)?;
    let spec = match sizes {
        Some(s) => parse_spec(s)?,
        None => {
            let (c, _) = construct::read_certificate_parts(&text).map_err(Failure::parse)?;
            inferred_spec(&c)
        }
    };
    let table = load_table(cli)?;
    let cert = construct::read_certificate(&text, &spec).map_err(Failure::parse)?;
    let r = construct::verify_certificate(&cert, &table).map_err(Failure::compute)?;
    let mut report = Report::default();
    report.line(format!("certificate on K_{} for {spec}", cert.n()));
    report.line(r.to_string());
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["passed"] = json!(r.passed());
    v["sizes"] = json!(spec.sizes());
    report.record(v);
    Ok(report)
}

fn cmd_search(cli: &Cli, sizes: &str, n: usize, iterations: u64, seed: u64) -> Res<Report> {
    let spec = parse_spec(sizes)?;
    let table = load_table(cli)?;
    let budget = SearchBudget {
        iterations,
        workers: cli.workers.unwrap_or(SearchBudget::default().workers).max(1),
        ..Default::default()
    };
    let out = construct::saturation_search(n, &spec, &budget, seed, &table).map_err(Failure::compute)?;
    let mut report = Report::default();
    let mut v = serde_json::to_value(&out).expect("serializable");
    v["sizes"] = json!(spec.sizes());
    v["n"] = json!(n);
    match &out.best {
        Some(cert) => {
            let text = construct::write_certificate(cert);
            let path = write_out(cli, "certificate.txt", &text)?;
            let r = construct::verify_certificate(cert, &table).map_err(Failure::compute)?;
            let mut line = String::new();
            let _ =
                write!(line, "best certificate: |E(G)| = {}, |V(G)| = {}", cert.g_edges.len(), cert.g_vertex_count());
            report.line(line);
            if let Some(b) = &r.bound {
                report.line(b.to_string());
                v["bound"] = bound_record(b);
            }
            if let Some(p) = &cert.provenance {
                report.line(format!("provenance: {p}"));
            }
            if path.is_none() {
                report.text.push_str(&text);
            }
            note_written(&mut report, &path);
            v["certificate"] = json!(text);
            v["file"] = path_value(&path);
        }
        None => {
            let why = if out.exhausted { "seeding ran out of budget" } else { "no seed coloring passed verification" };
            report.line(format!("no certificate found ({why}); this says nothing about existence"));
        }
    }
    report.line(format!("per-restart |E(G)|: {:?}", out.per_restart));
    report.record(v);
    Ok(report)
}
