//! Exhaustive ground truth at desk scale.
//!
//! Colorings are enumerated as a mixed-radix counter over the edges in
//! row-major order. Only cliques through an edge whose color just changed
//! are recounted. Work is split on a prefix of the counter; results are
//! merged in prefix order, so the minimum and its lexicographically least
//! witness do not depend on the worker count.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::counting_cap;
use crate::coloring::{PartialColoring, RamseySpec};
use crate::error::OracleError;
use crate::graph::{all_edges, count_cliques_in, has_clique_in, pair_count, Edge, Graph, Row, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_vertices: usize,
    pub max_colorings: u128,
    pub workers: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_vertices: 10, max_colorings: 1 << 32, workers: default_workers() }
    }
}

impl EnumerationBudget {
    pub fn with_workers(workers: usize) -> Self {
        EnumerationBudget { workers: workers.max(1), ..Default::default() }
    }

    fn check_vertices(&self, n: usize) -> Result<(), OracleError> {
        let cap = self.max_vertices.min(MAX_VERTICES);
        if n > cap || n == 0 {
            return Err(OracleError::TooManyVertices { n, cap });
        }
        Ok(())
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(self.workers.max(1)).build().expect("thread pool")
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Symmetry reduction applied during enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// Every coloring.
    None,
    /// Colors of the edges at vertex 0 are nondecreasing along `1..n`
    /// (vertex relabeling); for diagonal specs the first of them is color 1
    /// (color relabeling).
    #[default]
    Star,
}

/// What is minimised over colorings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// `sum_i` (monochromatic `K_{s_i}` in color `i`).
    #[default]
    Total,
    /// `max_i` of the per-color counts.
    LargestColor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub value: u64,
    /// Per-color counts at the witness.
    pub counts: Vec<u64>,
    #[serde(serialize_with = "ser_coloring")]
    pub witness: PartialColoring,
    pub colorings_visited: u128,
    pub symmetry: Symmetry,
    pub objective: Objective,
}

fn ser_coloring<S: serde::Serializer>(c: &PartialColoring, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::coloring::write_coloring(c))
}

/// Nondecreasing sequences of length `len` over `0..k`, in lexicographic order.
fn star_patterns(len: usize, k: usize, first_fixed: bool) -> Vec<Vec<u8>> {
    fn go(len: usize, k: usize, min: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in min..k {
            cur.push(c as u8);
            go(len, k, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    if first_fixed && len > 0 {
        cur.push(0);
    }
    go(len, k, 0, &mut cur, &mut out);
    out
}

/// Mutable coloring with per-color clique counts kept current.
struct Tracker<'a> {
    sizes: &'a [usize],
    edges: &'a [Edge],
    colors: Vec<u8>,
    rows: Vec<Vec<Row>>,
    counts: Vec<u64>,
}

impl<'a> Tracker<'a> {
    fn new(n: usize, sizes: &'a [usize], edges: &'a [Edge], colors: Vec<u8>) -> Self {
        let k = sizes.len();
        let mut rows = vec![vec![0 as Row; n]; k];
        for (e, &c) in edges.iter().zip(&colors) {
            rows[c as usize][e.u()] |= 1 << e.v();
            rows[c as usize][e.v()] |= 1 << e.u();
        }
        let counts = (0..k)
            .map(|c| {
                let g = &rows[c];
                let all: Row = if n >= MAX_VERTICES { !0 } else { (1 << n) - 1 };
                count_cliques_in(g, all, sizes[c])
            })
            .collect();
        Tracker { sizes, edges, colors, rows, counts }
    }

    #[inline]
    fn through(&self, c: usize, e: Edge) -> u64 {
        let r = &self.rows[c];
        count_cliques_in(r, r[e.u()] & r[e.v()], self.sizes[c] - 2)
    }

    #[inline]
    fn recolor(&mut self, idx: usize, to: u8) {
        let e = self.edges[idx];
        let from = self.colors[idx] as usize;
        let (u, v) = (e.u(), e.v());
        self.rows[from][u] &= !(1 << v);
        self.rows[from][v] &= !(1 << u);
        self.counts[from] -= self.through(from, e);
        let to_us = to as usize;
        self.counts[to_us] += self.through(to_us, e);
        self.rows[to_us][u] |= 1 << v;
        self.rows[to_us][v] |= 1 << u;
        self.colors[idx] = to;
    }

    fn score(&self, objective: Objective) -> u64 {
        match objective {
            Objective::Total => self.counts.iter().sum(),
            Objective::LargestColor => *self.counts.iter().max().expect("k >= 1"),
        }
    }
}

struct ChunkResult {
    best: Option<(u64, Vec<u64>, Vec<u8>)>,
    visited: u128,
}

/// Minimises the objective over all colorings extending `fixed` (a color
/// for each of the first `fixed.len()` edges) in lexicographic order.
fn run_chunk(n: usize, sizes: &[usize], edges: &[Edge], fixed: &[u8], objective: Objective) -> ChunkResult {
    let total = edges.len();
    let mut colors = fixed.to_vec();
    colors.resize(total, 0);
    let mut t = Tracker::new(n, sizes, edges, colors);
    let k = sizes.len() as u8;
    let start = fixed.len();
    let mut best: Option<(u64, Vec<u64>, Vec<u8>)> = None;
    let mut visited: u128 = 0;
    loop {
        visited += 1;
        let score = t.score(objective);
        if best.as_ref().is_none_or(|(b, _, _)| score < *b) {
            best = Some((score, t.counts.clone(), t.colors.clone()));
            if score == 0 {
                break;
            }
        }
        // advance the counter
        let mut i = total;
        loop {
            if i == start {
                return ChunkResult { best, visited };
            }
            i -= 1;
            let c = t.colors[i];
            if c + 1 < k {
                t.recolor(i, c + 1);
                break;
            }
            t.recolor(i, 0);
        }
    }
    ChunkResult { best, visited }
}

/// Fixed prefixes (as full color vectors for the first `len` edges) that
/// partition the enumeration.
fn chunk_prefixes(
    n: usize,
    k: usize,
    total: usize,
    symmetry: Symmetry,
    diagonal: bool,
    workers: usize,
) -> Vec<Vec<u8>> {
    let star_len = n.saturating_sub(1).min(total);
    let heads: Vec<Vec<u8>> = match symmetry {
        Symmetry::Star => star_patterns(star_len, k, diagonal),
        Symmetry::None => vec![Vec::new()],
    };
    let head_len = heads[0].len();
    let free = total - head_len;
    // split a little further so every worker has several chunks
    let mut extra = 0;
    while extra < free && heads.len() * k.pow(extra as u32) < 8 * workers && extra < 12 {
        extra += 1;
    }
    let mut out = Vec::new();
    for h in &heads {
        let combos = k.pow(extra as u32);
        for m in 0..combos {
            let mut p = h.clone();
            let mut digits = vec![0u8; extra];
            let mut x = m;
            for d in digits.iter_mut().rev() {
                *d = (x % k) as u8;
                x /= k;
            }
            p.extend(digits);
            out.push(p);
        }
    }
    out
}

fn enumeration_size(n: usize, k: usize, symmetry: Symmetry, diagonal: bool) -> u128 {
    let total = pair_count(n);
    let star_len = n.saturating_sub(1).min(total);
    let heads = match symmetry {
        Symmetry::Star => star_patterns(star_len, k, diagonal).len() as u128,
        Symmetry::None => 1,
    };
    let free = match symmetry {
        Symmetry::Star => total - star_len,
        Symmetry::None => total,
    };
    (k as u128).checked_pow(free as u32).map_or(u128::MAX, |x| x.saturating_mul(heads))
}

/// Minimum over all full `k`-colorings of `K_n` of the objective, with the
/// lexicographically least minimiser among the colorings enumerated.
pub fn exact_multiplicity(
    spec: &RamseySpec,
    n: usize,
    budget: &EnumerationBudget,
    symmetry: Symmetry,
    objective: Objective,
) -> Result<Multiplicity, OracleError> {
    budget.check_vertices(n)?;
    let k = spec.k();
    let diagonal = spec.is_diagonal();
    let needed = enumeration_size(n, k, symmetry, diagonal);
    if needed > budget.max_colorings {
        return Err(OracleError::BudgetExceeded { needed, allowed: budget.max_colorings });
    }
    let edges: Vec<Edge> = all_edges(n).collect();
    let prefixes = chunk_prefixes(n, k, edges.len(), symmetry, diagonal, budget.workers);
    let sizes = spec.sizes();
    let results: Vec<ChunkResult> =
        budget.pool().install(|| prefixes.par_iter().map(|p| run_chunk(n, sizes, &edges, p, objective)).collect());
    let visited = results.iter().map(|r| r.visited).sum();
    let (value, counts, colors) = results
        .into_iter()
        .filter_map(|r| r.best)
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("at least one coloring");
    let colors: Vec<usize> = colors.iter().map(|&c| c as usize + 1).collect();
    let witness = PartialColoring::from_colors(n, k, &colors)?;
    Ok(Multiplicity { value, counts, witness, colorings_visited: visited, symmetry, objective })
}

/// Depth-first search for a good coloring, assigning edges in row-major
/// order and rejecting a color as soon as it closes a monochromatic clique.
struct GoodSearch<'a, R> {
    n: usize,
    sizes: &'a [usize],
    edges: Vec<Edge>,
    rows: Vec<Vec<Row>>,
    colors: Vec<u8>,
    star_sorted: bool,
    diagonal: bool,
    nodes: u64,
    max_nodes: u64,
    rng: Option<&'a mut R>,
}

enum SearchEnd {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<R: Rng> GoodSearch<'_, R> {
    fn run(&mut self, idx: usize) -> SearchEnd {
        if idx == self.edges.len() {
            return SearchEnd::Found;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return SearchEnd::OutOfBudget;
        }
        let e = self.edges[idx];
        let k = self.sizes.len();
        let mut order: Vec<usize> = (0..k).collect();
        if let Some(rng) = self.rng.as_deref_mut() {
            order.shuffle(rng);
        }
        let in_star = self.star_sorted && e.u() == 0;
        for c in order {
            if in_star {
                let min = if idx == 0 { 0 } else { self.colors[idx - 1] as usize };
                if c < min || (idx == 0 && self.diagonal && c != 0) {
                    continue;
                }
            }
            let r = &self.rows[c];
            if has_clique_in(r, r[e.u()] & r[e.v()], self.sizes[c] - 2) {
                continue;
            }
            self.rows[c][e.u()] |= 1 << e.v();
            self.rows[c][e.v()] |= 1 << e.u();
            self.colors[idx] = c as u8;
            match self.run(idx + 1) {
                SearchEnd::Exhausted => {}
                done => return done,
            }
            self.rows[c][e.u()] &= !(1 << e.v());
            self.rows[c][e.v()] &= !(1 << e.u());
        }
        SearchEnd::Exhausted
    }

    fn coloring(&self) -> PartialColoring {
        let colors: Vec<usize> = self.colors.iter().map(|&c| c as usize + 1).collect();
        PartialColoring::from_colors(self.n, self.sizes.len(), &colors).expect("valid colors")
    }
}

fn search_good<R: Rng>(
    spec: &RamseySpec,
    n: usize,
    star_sorted: bool,
    max_nodes: u64,
    rng: Option<&mut R>,
) -> Result<Option<PartialColoring>, OracleError> {
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut s = GoodSearch {
        n,
        sizes: spec.sizes(),
        colors: vec![0; edges.len()],
        edges,
        rows: vec![vec![0; n]; spec.k()],
        star_sorted,
        diagonal: spec.is_diagonal(),
        nodes: 0,
        max_nodes,
        rng,
    };
    match s.run(0) {
        SearchEnd::Found => Ok(Some(s.coloring())),
        SearchEnd::Exhausted => Ok(None),
        SearchEnd::OutOfBudget => Err(OracleError::SearchBudgetExhausted { visited: s.nodes, allowed: max_nodes }),
    }
}

/// A good full coloring of `K_n`, or `None` if none exists. `None` at `n`
/// certifies `R(spec) <= n`; a witness certifies `R(spec) > n`. With
/// [`Symmetry::None`] the witness is the lexicographically least good coloring.
pub fn ramsey_witness(
    spec: &RamseySpec,
    n: usize,
    budget: &EnumerationBudget,
    symmetry: Symmetry,
) -> Result<Option<PartialColoring>, OracleError> {
    budget.check_vertices(n)?;
    let max_nodes = u64::try_from(budget.max_colorings).unwrap_or(u64::MAX);
    search_good::<rand_chacha::ChaCha8Rng>(spec, n, symmetry == Symmetry::Star, max_nodes, None)
}

/// Randomised variant of [`ramsey_witness`]: colors are tried in a shuffled
/// order at every edge.
pub fn random_good_coloring<R: Rng>(
    spec: &RamseySpec,
    n: usize,
    max_nodes: u64,
    rng: &mut R,
) -> Result<Option<PartialColoring>, OracleError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(OracleError::TooManyVertices { n, cap: MAX_VERTICES });
    }
    search_good(spec, n, false, max_nodes, Some(rng))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaRow {
    pub n: usize,
    /// Graphs with the spine present and no `K_s` once it is removed.
    pub graphs_checked: u64,
    pub max_copies: u64,
    pub cap: u128,
    pub violations: u64,
    /// Number of qualifying graphs with exactly `cap` copies.
    pub attaining: u64,
    /// Least edge-mask graph attaining the maximum.
    #[serde(skip)]
    pub example: Option<Graph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub s: usize,
    pub rows: Vec<LemmaRow>,
}

impl LemmaReport {
    pub fn violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations).sum()
    }

    /// Every `n` has a graph meeting the cap.
    pub fn sharp(&self) -> bool {
        self.rows.iter().all(|r| r.attaining > 0 && u128::from(r.max_copies) == r.cap)
    }
}

fn lemma_row(n: usize, s: usize, workers: usize) -> LemmaRow {
    let spine = Edge::new(0, 1);
    let free: Vec<Edge> = all_edges(n).filter(|&e| e != spine).collect();
    let cap = counting_cap(n as u64, s as u64, 1).expect("n >= s >= 3");
    let total: u64 = 1 << free.len();
    let chunk_bits = free.len().min(10);
    let chunks = total >> chunk_bits;
    let full: Row = (1 << n) - 1;
    let scan = |chunk: u64| {
        // (checked, max, violations, attaining, first attaining mask)
        let mut acc = (0u64, 0u64, 0u64, 0u64, None::<u64>);
        let mut rows = vec![0 as Row; n];
        for low in 0..1u64 << chunk_bits {
            let mask = (chunk << chunk_bits) | low;
            rows.iter_mut().for_each(|r| *r = 0);
            for (i, e) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rows[e.u()] |= 1 << e.v();
                    rows[e.v()] |= 1 << e.u();
                }
            }
            if has_clique_in(&rows, full, s) {
                continue;
            }
            acc.0 += 1;
            let t = count_cliques_in(&rows, rows[0] & rows[1], s - 2);
            if u128::from(t) > cap {
                acc.2 += 1;
            }
            if t > acc.1 {
                acc.1 = t;
            }
            if u128::from(t) == cap {
                acc.3 += 1;
                acc.4.get_or_insert(mask);
            }
        }
        acc
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("pool");
    let parts: Vec<_> = pool.install(|| (0..chunks).into_par_iter().map(scan).collect());
    let mut row = LemmaRow { n, graphs_checked: 0, max_copies: 0, cap, violations: 0, attaining: 0, example: None };
    let mut first = None;
    for p in parts {
        row.graphs_checked += p.0;
        row.max_copies = row.max_copies.max(p.1);
        row.violations += p.2;
        row.attaining += p.3;
        if first.is_none() {
            first = p.4;
        }
    }
    row.example = first.map(|mask| {
        let mut es: Vec<Edge> = free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        es.push(spine);
        Graph::from_edges(n, es).expect("valid edges")
    });
    row
}

/// Checks the single-edge counting cap over every graph on `s..=n_max`
/// vertices that contains the spine `{0,1}` and loses all `K_s` without it.
pub fn verify_counting_lemma(s: usize, n_max: usize, workers: usize) -> Result<LemmaReport, OracleError> {
    if s < 3 {
        return Err(OracleError::Coloring(crate::error::ColoringError::InvalidSpec(format!(
            "counting lemma needs s >= 3, got {s}"
        ))));
    }
    if n_max > 8 {
        return Err(OracleError::TooManyVertices { n: n_max, cap: 8 });
    }
    let rows = (s..=n_max).map(|n| lemma_row(n, s, workers)).collect();
    Ok(LemmaReport { s, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodmanReport {
    pub n: usize,
    pub engine: u64,
    pub direct: u64,
}

/// Minimum monochromatic triangle count over 2-colorings of `K_n`, by
/// direct enumeration using `mono = C(n,3) - 1/2 sum_v d(v) (n-1-d(v))`,
/// where `d(v)` is the color-1 degree.
pub fn min_mono_triangles_direct(n: usize, workers: usize) -> Result<u64, OracleError> {
    if n == 0 || n > 8 {
        return Err(OracleError::TooManyVertices { n, cap: 8 });
    }
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut incident = vec![0u64; n];
    for (i, e) in edges.iter().enumerate() {
        incident[e.u()] |= 1 << i;
        incident[e.v()] |= 1 << i;
    }
    let n64 = n as u64;
    let triples = n64 * n64.saturating_sub(1) * n64.saturating_sub(2) / 6;
    let total: u64 = 1 << edges.len();
    let chunk_bits = edges.len().min(16);
    let chunks = total >> chunk_bits;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("pool");
    let best = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut best = u64::MAX;
                for low in 0..1u64 << chunk_bits {
                    let mask = (chunk << chunk_bits) | low;
                    let mixed: u64 = incident
                        .iter()
                        .map(|inc| {
                            let d = u64::from((mask & inc).count_ones());
                            d * (n64 - 1 - d)
                        })
                        .sum();
                    best = best.min(triples - mixed / 2);
                }
                best
            })
            .min()
            .expect("non-empty")
    });
    Ok(best)
}

/// Runs the `(3,3)` minimum through both [`exact_multiplicity`] and
/// [`min_mono_triangles_direct`] and insists they agree.
pub fn goodman_check(n: usize, budget: &EnumerationBudget) -> Result<GoodmanReport, OracleError> {
    let spec = RamseySpec::diagonal(3, 2).expect("valid");
    let engine = exact_multiplicity(&spec, n, budget, Symmetry::Star, Objective::Total)?.value;
    let direct = min_mono_triangles_direct(n, budget.workers)?;
    if engine != direct {
        return Err(OracleError::Mismatch { engine, direct });
    }
    Ok(GoodmanReport { n, engine, direct })
}
