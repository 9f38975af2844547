//! Constructive side of the bounds: the extremal book graph, the per-color
//! subgraphs spanned by the cliques the last edge creates, and certificates
//! for the connected-subgraph bound.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{ceil_div, general_bound, BoundResult};
use crate::coloring::{extend_one_vertex, read_coloring_tokens, tokens, write_coloring, PartialColoring, RamseySpec};
use crate::error::{ConstructionError, ParseError};
use crate::graph::{for_each_clique_in, Edge, Graph, Row};
use crate::oracle::random_good_coloring;
use crate::ramsey_table::RamseyTable;

/// Spine `{u, v}` joined to a complete multipartite graph on `parts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookConstruction {
    pub graph: Graph,
    pub spine: Edge,
    pub parts: Vec<Vec<usize>>,
}

/// The graph on `n` vertices with the most `K_s` copies that all die when
/// the spine is deleted. Parts get `ceil((n-2-j)/(s-2))` vertices, in order.
pub fn build_extremal_book(n: usize, s: usize) -> Result<BookConstruction, ConstructionError> {
    if s < 3 {
        return Err(ConstructionError::Domain(format!("need s >= 3, got {s}")));
    }
    if n < s {
        return Err(ConstructionError::Domain(format!("need n >= s, got n={n} s={s}")));
    }
    let width = (s - 2) as i128;
    let mut parts = Vec::with_capacity(s - 2);
    let mut next = 2;
    for j in 0..s - 2 {
        let size = ceil_div((n - 2 - j) as i128, width) as usize;
        parts.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    debug_assert_eq!(next, n);
    let spine = Edge::new(0, 1);
    let mut edges = vec![spine];
    for w in 2..n {
        edges.push(Edge::new(0, w));
        edges.push(Edge::new(1, w));
    }
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            for &x in pa {
                edges.extend(pb.iter().map(|&y| Edge::new(x, y)));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok(BookConstruction { graph, spine, parts })
}

/// Vertices and edges spanned by the color-`color` cliques through the
/// distinguished edge once it takes that color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionSubgraph {
    pub color: usize,
    pub cliques: u64,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionFamily {
    pub base: PartialColoring,
    pub edge: Edge,
    pub subgraphs: Vec<ExtensionSubgraph>,
}

/// One pairwise size-gap check between two nonempty subgraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCheck {
    pub larger: usize,
    pub smaller: usize,
    pub difference: u64,
    pub limit: i128,
    pub holds: bool,
}

impl ExtensionFamily {
    /// Evaluates `|V(G_i)| - |V(G_j)| < R(s_i - 1, R(s_l : l != i)) - (s_j - 2)`
    /// for every ordered pair of nonempty subgraphs with `|V(G_i)| >= |V(G_j)|`.
    pub fn gap_checks(&self, spec: &RamseySpec, table: &RamseyTable) -> Vec<GapCheck> {
        let mut out = Vec::new();
        for a in &self.subgraphs {
            for b in &self.subgraphs {
                if a.color == b.color || a.vertices.is_empty() || b.vertices.is_empty() {
                    continue;
                }
                if a.vertices.len() < b.vertices.len() {
                    continue;
                }
                let limit = crate::bounds::gap_limit(spec, table, a.color - 1, b.color - 1);
                let difference = (a.vertices.len() - b.vertices.len()) as u64;
                out.push(GapCheck {
                    larger: a.color,
                    smaller: b.color,
                    difference,
                    limit,
                    holds: (difference as i128) < limit,
                });
            }
        }
        out
    }
}

/// For every color `i`, colors `e` with `i` and collects the monochromatic
/// `K_{s_i}` through it.
pub fn extract_extension_family(
    c: &PartialColoring,
    e: Edge,
    spec: &RamseySpec,
) -> Result<ExtensionFamily, ConstructionError> {
    let uncolored = c.uncolored_edges();
    if uncolored != [e] {
        return Err(ConstructionError::Precondition(format!(
            "exactly {e} must be uncolored, found {}",
            join_edges(&uncolored)
        )));
    }
    if !c.is_good(spec)? {
        return Err(ConstructionError::Precondition("base coloring is not good".into()));
    }
    let mut subgraphs = Vec::with_capacity(spec.k());
    for color in 1..=spec.k() {
        let class = c.class(color);
        let rows = class.rows();
        let s = spec.size_of(color);
        let mut span: Row = 0;
        let mut cliques = 0;
        for_each_clique_in(rows, rows[e.u()] & rows[e.v()], s - 2, &mut |m| {
            span |= m;
            cliques += 1;
        });
        let (vertices, edges) = if cliques == 0 {
            (Vec::new(), Vec::new())
        } else {
            span |= (1 << e.u()) | (1 << e.v());
            let vs: Vec<usize> = (0..c.n()).filter(|v| span >> v & 1 == 1).collect();
            let mut es: Vec<Edge> = class.restricted(span).edges().collect();
            es.push(e);
            es.sort();
            (vs, es)
        };
        subgraphs.push(ExtensionSubgraph { color, cliques, vertices, edges });
    }
    Ok(ExtensionFamily { base: c.clone(), edge: e, subgraphs })
}

fn join_edges(es: &[Edge]) -> String {
    es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// An uncolored connected subgraph `G` of `K_n` together with a coloring of
/// every other edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub coloring: PartialColoring,
    pub g_edges: Vec<Edge>,
    pub spec: RamseySpec,
    /// Free-form origin note (seed, search parameters); not serialized.
    pub provenance: Option<String>,
}

impl Certificate {
    /// Checks the structural invariants: the uncolored edges are exactly
    /// `g_edges` and they form a connected graph.
    pub fn new(coloring: PartialColoring, g_edges: Vec<Edge>, spec: RamseySpec) -> Result<Self, ConstructionError> {
        coloring.check_spec(&spec)?;
        let mut g_edges = g_edges;
        g_edges.sort();
        g_edges.dedup();
        let uncolored = coloring.uncolored_edges();
        if uncolored != g_edges {
            return Err(ConstructionError::Precondition(format!(
                "uncolored edges [{}] differ from G [{}]",
                join_edges(&uncolored),
                join_edges(&g_edges)
            )));
        }
        let g = Graph::from_edges(coloring.n(), g_edges.iter().copied())?;
        if !g.edges_connected() {
            return Err(ConstructionError::Precondition("G is empty or disconnected".into()));
        }
        Ok(Certificate { coloring, g_edges, spec, provenance: None })
    }

    pub fn n(&self) -> usize {
        self.coloring.n()
    }

    pub fn g_vertex_count(&self) -> usize {
        let verts: BTreeSet<usize> = self.g_edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        verts.len()
    }
}

/// Coloring text followed by `G:` and the uncolored edges as `u-v` tokens.
pub fn write_certificate(cert: &Certificate) -> String {
    let mut out = write_coloring(&cert.coloring);
    out.push_str("G:");
    for e in &cert.g_edges {
        out.push(' ');
        out.push_str(&e.to_string());
    }
    out.push('\n');
    out
}

pub fn read_certificate(text: &str, spec: &RamseySpec) -> Result<Certificate, ConstructionError> {
    let (coloring, edges) = read_certificate_parts(text)?;
    Certificate::new(coloring, edges, spec.clone())
}

/// Parses a certificate without checking it against a spec.
pub fn read_certificate_parts(text: &str) -> Result<(PartialColoring, Vec<Edge>), ParseError> {
    let mut toks = tokens(text).peekable();
    let coloring = read_coloring_tokens(&mut toks)?;
    let (line, col, head) = toks.next().ok_or_else(|| ParseError::new(0, 0, "missing `G:` line"))?;
    if head != "G:" {
        return Err(ParseError::new(line, col, format!("expected `G:`, found {head:?}")));
    }
    let mut edges = Vec::new();
    for (line, col, t) in toks {
        let bad = || ParseError::new(line, col, format!("expected an edge `u-v`, found {t:?}"));
        let (a, b) = t.split_once('-').ok_or_else(bad)?;
        let a: usize = a.parse().map_err(|_| bad())?;
        let b: usize = b.parse().map_err(|_| bad())?;
        if a >= coloring.n() || b >= coloring.n() {
            return Err(ParseError::new(line, col, format!("edge {t} outside 0..{}", coloring.n())));
        }
        edges.push(Edge::try_new(a, b).ok_or_else(bad)?);
    }
    Ok((coloring, edges))
}

/// Whether `n` can be the Ramsey number according to the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub n: usize,
    pub ramsey_lower: u64,
    pub ramsey_upper: u64,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub good: bool,
    /// First color holding a monochromatic clique, with its count.
    pub first_mono: Option<(usize, u64)>,
    pub non_extendable: bool,
    /// First `(edge, color)` whose coloring keeps the coloring good.
    pub first_extendable: Option<(Edge, usize)>,
    pub order: OrderCheck,
    pub g_vertices: usize,
    pub g_edges: usize,
    pub bound: Option<BoundResult>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.good && self.non_extendable && self.order.consistent && self.bound.is_some()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_mono {
            None => writeln!(f, "good: yes")?,
            Some((c, t)) => writeln!(f, "good: NO, color {c} has {t} monochromatic cliques")?,
        }
        match self.first_extendable {
            None => writeln!(f, "non-extendable: yes")?,
            Some((e, c)) => writeln!(f, "non-extendable: NO, edge {e} takes color {c} and stays good")?,
        }
        writeln!(
            f,
            "order: n = {}, table R in [{}, {}]: {}",
            self.order.n,
            self.order.ramsey_lower,
            self.order.ramsey_upper,
            if self.order.consistent { "consistent" } else { "INCONSISTENT" }
        )?;
        writeln!(f, "G: {} vertices, {} edges", self.g_vertices, self.g_edges)?;
        if let Some(b) = &self.bound {
            writeln!(f, "{b}")?;
        }
        write!(f, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks the two hypotheses of the connected-subgraph bound:
/// the coloring is good, and coloring any single edge of `G` with any color
/// closes a monochromatic clique. Also checks `n` against the table.
pub fn verify_certificate(cert: &Certificate, table: &RamseyTable) -> Result<CertificateReport, ConstructionError> {
    let spec = &cert.spec;
    let c = &cert.coloring;
    let first_mono = (1..=spec.k()).map(|i| (i, c.mono_clique_count(i, spec.size_of(i)))).find(|&(_, t)| t > 0);
    let mut first_extendable = None;
    'outer: for &f in &cert.g_edges {
        for color in 1..=spec.k() {
            if c.cliques_created(f, color, spec.size_of(color)) == 0 {
                first_extendable = Some((f, color));
                break 'outer;
            }
        }
    }
    let lower = table.lookup_lower(spec.sizes()).value;
    let upper = table.lookup_upper(spec.sizes()).value;
    let n = c.n();
    let order =
        OrderCheck { n, ramsey_lower: lower, ramsey_upper: upper, consistent: lower <= n as u64 && n as u64 <= upper };
    let g_vertices = cert.g_vertex_count();
    let good = first_mono.is_none();
    let non_extendable = first_extendable.is_none();
    let bound = if good && non_extendable && order.consistent {
        Some(
            general_bound(spec, g_vertices as u64, cert.g_edges.len() as u64, table)
                .map_err(|e| ConstructionError::Domain(format!("bound for certificate: {e}")))?,
        )
    } else {
        None
    };
    Ok(CertificateReport {
        good,
        first_mono,
        non_extendable,
        first_extendable,
        order,
        g_vertices,
        g_edges: cert.g_edges.len(),
        bound,
    })
}

/// Wraps the single-vertex extension of a good full coloring of `K_{n-1}`
/// as a `G = K_2` certificate.
pub fn edge_certificate(
    base: &PartialColoring,
    pivot: usize,
    spec: &RamseySpec,
) -> Result<Certificate, ConstructionError> {
    let ext = extend_one_vertex(base, pivot, spec)?;
    let e = Edge::new(pivot, ext.n() - 1);
    Certificate::new(ext, vec![e], spec.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Local moves per restart.
    pub iterations: u64,
    /// Restarts, one per worker slot.
    pub workers: usize,
    /// Node cap for the backtracking that seeds each restart.
    pub seed_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { iterations: 2_000, workers: 4, seed_nodes: 5_000_000 }
    }
}

/// Vertex cap for [`saturation_search`].
pub const SEARCH_VERTEX_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub seed: u64,
    pub budget: SearchBudget,
    /// Edges of `G` in the best certificate of each restart (0 if none).
    pub per_restart: Vec<usize>,
    #[serde(skip)]
    pub best: Option<Certificate>,
    pub best_edges: usize,
    /// True if every restart ran out of budget while seeding.
    pub exhausted: bool,
}

fn restart_seed(seed: u64, worker: usize) -> u64 {
    seed ^ (worker as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn non_extendable(c: &PartialColoring, g: &[Edge], spec: &RamseySpec) -> bool {
    g.iter().all(|&f| (1..=spec.k()).all(|col| c.cliques_created(f, col, spec.size_of(col)) > 0))
}

/// Best-effort randomised search for a certificate with many uncolored
/// edges. Each restart seeds a `G = K_2` certificate through the one-vertex
/// extension of a random good coloring, then repeatedly tries to uncolor an
/// edge touching `G`, repairing with random single-edge recolorings. Every
/// returned certificate passes [`verify_certificate`]. Finding nothing says
/// nothing about existence.
pub fn saturation_search(
    n: usize,
    spec: &RamseySpec,
    budget: &SearchBudget,
    seed: u64,
    table: &RamseyTable,
) -> Result<SearchOutcome, ConstructionError> {
    if !(2..=SEARCH_VERTEX_CAP).contains(&n) {
        return Err(ConstructionError::Domain(format!("n = {n} outside 2..={SEARCH_VERTEX_CAP}")));
    }
    let workers = budget.workers.max(1);
    let results: Vec<(Option<Certificate>, bool)> =
        (0..workers).into_par_iter().map(|w| search_once(n, spec, budget, restart_seed(seed, w), table)).collect();
    let per_restart = results.iter().map(|(c, _)| c.as_ref().map_or(0, |c| c.g_edges.len())).collect();
    let exhausted = results.iter().all(|(_, ex)| *ex);
    let mut best: Option<Certificate> = None;
    for (c, _) in results.into_iter() {
        if let Some(c) = c {
            if best.as_ref().is_none_or(|b| c.g_edges.len() > b.g_edges.len()) {
                best = Some(c);
            }
        }
    }
    if let Some(b) = &mut best {
        b.provenance = Some(format!(
            "saturation search: seed {seed}, workers {workers}, iterations {}, seed nodes {}",
            budget.iterations, budget.seed_nodes
        ));
    }
    let best_edges = best.as_ref().map_or(0, |b| b.g_edges.len());
    Ok(SearchOutcome { seed, budget: *budget, per_restart, best, best_edges, exhausted })
}

fn search_once(
    n: usize,
    spec: &RamseySpec,
    budget: &SearchBudget,
    seed: u64,
    table: &RamseyTable,
) -> (Option<Certificate>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = match random_good_coloring(spec, n - 1, budget.seed_nodes, &mut rng) {
        Ok(Some(c)) => c,
        Ok(None) => return (None, false),
        Err(_) => return (None, true),
    };
    let pivot = rng.gen_range(0..n - 1);
    let Ok(start) = edge_certificate(&base, pivot, spec) else {
        return (None, false);
    };
    match verify_certificate(&start, table) {
        Ok(r) if r.passed() => {}
        _ => return (None, false),
    }
    let mut coloring = start.coloring.clone();
    let mut g = start.g_edges.clone();
    let mut tabu: Vec<Edge> = Vec::new();
    for _ in 0..budget.iterations {
        let touched: Row = g.iter().fold(0, |m, e| m | 1 << e.u() | 1 << e.v());
        let mut frontier: Vec<Edge> = crate::graph::all_edges(n)
            .filter(|&e| coloring.color(e) != 0)
            .filter(|e| touched >> e.u() & 1 == 1 || touched >> e.v() & 1 == 1)
            .filter(|e| !tabu.contains(e))
            .collect();
        if frontier.is_empty() {
            tabu.clear();
            continue;
        }
        frontier.shuffle(&mut rng);
        let f = frontier[0];
        let mut trial = coloring.clone();
        trial.assign(f, 0).expect("valid edge");
        let mut trial_g = g.clone();
        trial_g.push(f);
        let mut ok = non_extendable(&trial, &trial_g, spec);
        // repair: random recolorings of colored edges, kept only if still good
        let mut attempts = 0;
        while !ok && attempts < 4 * n {
            attempts += 1;
            let colored: Vec<Edge> = crate::graph::all_edges(n).filter(|&e| trial.color(e) != 0).collect();
            let Some(&h) = colored.choose(&mut rng) else { break };
            let old = trial.color(h);
            let new = 1 + (old + rng.gen_range(0..spec.k().max(2) - 1)) % spec.k();
            if new == old {
                continue;
            }
            trial.assign(h, new).expect("valid edge");
            if !trial.is_good(spec).unwrap_or(false) {
                trial.assign(h, old).expect("valid edge");
                continue;
            }
            ok = non_extendable(&trial, &trial_g, spec);
        }
        if ok {
            coloring = trial;
            g = trial_g;
            tabu.clear();
        } else {
            tabu.push(f);
            if tabu.len() > 2 * n {
                tabu.remove(0);
            }
        }
    }
    let cert = Certificate::new(coloring, g, spec.clone()).expect("search keeps invariants");
    debug_assert!(verify_certificate(&cert, table).map(|r| r.passed()).unwrap_or(false));
    (Some(cert), false)
}
