//! Edge colorings of complete graphs.
//!
//! Colors are `1..=k`; `0` marks an uncolored edge. Each color class is kept
//! as its own [`Graph`], so monochromatic clique counting is plain clique
//! counting on that class. An uncolored edge belongs to no class and is
//! therefore never part of a monochromatic clique.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ColoringError, ParseError};
use crate::graph::{all_edges, pair_count, Edge, Graph, Row, MAX_VERTICES};

/// Clique sizes `(s_1, ..., s_k)`, one per color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RamseySpec {
    sizes: Vec<usize>,
}

impl RamseySpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self, ColoringError> {
        if sizes.is_empty() {
            return Err(ColoringError::InvalidSpec("need at least one color".into()));
        }
        if let Some(s) = sizes.iter().find(|&&s| s < 2) {
            return Err(ColoringError::InvalidSpec(format!("clique size {s} < 2")));
        }
        Ok(RamseySpec { sizes })
    }

    /// Diagonal spec `(s, ..., s)` with `k` colors.
    pub fn diagonal(s: usize, k: usize) -> Result<Self, ColoringError> {
        RamseySpec::new(vec![s; k])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// Clique size for 1-based `color`.
    pub fn size_of(&self, color: usize) -> usize {
        self.sizes[color - 1]
    }

    pub fn max_size(&self) -> usize {
        *self.sizes.iter().max().expect("non-empty")
    }

    pub fn min_size(&self) -> usize {
        *self.sizes.iter().min().expect("non-empty")
    }

    pub fn is_diagonal(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for RamseySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for RamseySpec {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sizes = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| ColoringError::InvalidSpec(format!("bad clique size {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        RamseySpec::new(sizes)
    }
}

/// A `k`-coloring of some of the edges of `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    n: usize,
    classes: Vec<Graph>,
}

impl PartialColoring {
    /// All edges uncolored.
    pub fn uncolored(n: usize, k: usize) -> Result<Self, ColoringError> {
        if k == 0 {
            return Err(ColoringError::InvalidSpec("need at least one color".into()));
        }
        let empty = Graph::empty(n)?;
        Ok(PartialColoring { n, classes: vec![empty; k] })
    }

    /// Every edge gets `color`.
    pub fn monochromatic(n: usize, k: usize, color: usize) -> Result<Self, ColoringError> {
        let mut c = PartialColoring::uncolored(n, k)?;
        c.check_color(color)?;
        if color > 0 {
            c.classes[color - 1] = Graph::complete(n)?;
        }
        Ok(c)
    }

    /// Builds from one color per edge in row-major order.
    pub fn from_colors(n: usize, k: usize, colors: &[usize]) -> Result<Self, ColoringError> {
        assert_eq!(colors.len(), pair_count(n), "need one entry per pair");
        let mut c = PartialColoring::uncolored(n, k)?;
        let mut rows = vec![vec![0 as Row; n]; k];
        for (e, &col) in all_edges(n).zip(colors) {
            c.check_color(col)?;
            if col > 0 {
                rows[col - 1][e.u()] |= 1 << e.v();
                rows[col - 1][e.v()] |= 1 << e.u();
            }
        }
        c.classes = rows.into_iter().map(|r| Graph::from_rows_unchecked(n, r)).collect();
        Ok(c)
    }

    /// Builds from color classes given as edge lists (1-based color order).
    pub fn from_classes(n: usize, classes: Vec<Graph>) -> Result<Self, ColoringError> {
        if classes.is_empty() {
            return Err(ColoringError::InvalidSpec("need at least one color".into()));
        }
        for g in &classes {
            if g.n() != n {
                return Err(ColoringError::InvalidSpec("class vertex count mismatch".into()));
            }
        }
        for e in all_edges(n) {
            if classes.iter().filter(|g| g.has_edge(e)).count() > 1 {
                return Err(ColoringError::InvalidSpec(format!("edge {e} has two colors")));
            }
        }
        Ok(PartialColoring { n, classes })
    }

    fn check_color(&self, color: usize) -> Result<(), ColoringError> {
        if color > self.k() {
            Err(ColoringError::ColorOutOfRange { color, k: self.k() })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Graph of edges with 1-based `color`.
    pub fn class(&self, color: usize) -> &Graph {
        &self.classes[color - 1]
    }

    pub fn color(&self, e: Edge) -> usize {
        self.classes.iter().position(|g| g.has_edge(e)).map_or(0, |i| i + 1)
    }

    /// Colors in row-major edge order.
    pub fn colors(&self) -> Vec<usize> {
        all_edges(self.n).map(|e| self.color(e)).collect()
    }

    pub fn uncolored_edges(&self) -> Vec<Edge> {
        all_edges(self.n).filter(|&e| self.color(e) == 0).collect()
    }

    pub fn is_full(&self) -> bool {
        let colored: usize = self.classes.iter().map(Graph::edge_count).sum();
        colored == pair_count(self.n)
    }

    /// Copy with `e` recolored (`0` uncolors it).
    pub fn with_color(&self, e: Edge, color: usize) -> Result<Self, ColoringError> {
        let mut out = self.clone();
        out.assign(e, color)?;
        Ok(out)
    }

    pub(crate) fn assign(&mut self, e: Edge, color: usize) -> Result<(), ColoringError> {
        self.check_color(color)?;
        if e.v() >= self.n {
            return Err(crate::error::GraphError::VertexOutOfRange { edge: e, n: self.n }.into());
        }
        let old = self.color(e);
        if old == color {
            return Ok(());
        }
        if old > 0 {
            self.classes[old - 1] = self.classes[old - 1].remove_edges(&[e])?;
        }
        if color > 0 {
            self.classes[color - 1] = self.classes[color - 1].add_edges(&[e])?;
        }
        Ok(())
    }

    /// Number of `s`-cliques whose edges all have 1-based `color`.
    pub fn mono_clique_count(&self, color: usize, s: usize) -> u64 {
        self.classes[color - 1].count_cliques(s)
    }

    /// True iff no color `i` contains a monochromatic `K_{s_i}`.
    pub fn is_good(&self, spec: &RamseySpec) -> Result<bool, ColoringError> {
        self.check_spec(spec)?;
        Ok(self.classes.iter().zip(spec.sizes()).all(|(g, &s)| !g.has_clique(s)))
    }

    pub(crate) fn check_spec(&self, spec: &RamseySpec) -> Result<(), ColoringError> {
        if spec.k() != self.k() {
            Err(ColoringError::ColorCountMismatch { expected: spec.k(), actual: self.k() })
        } else {
            Ok(())
        }
    }

    /// Monochromatic `K_{s_color}` count that coloring `e` with `color`
    /// would create. `e` is treated as absent from every class.
    pub fn cliques_created(&self, e: Edge, color: usize, s: usize) -> u64 {
        self.classes[color - 1].cliques_through_pair(s, e)
    }

    /// Sub-coloring on the first `m` vertices.
    pub fn prefix(&self, m: usize) -> Result<Self, ColoringError> {
        let mask: Row = if m >= MAX_VERTICES { !0 } else { (1 << m) - 1 };
        let classes = self
            .classes
            .iter()
            .map(|g| {
                let r = g.restricted(mask);
                Graph::from_rows_unchecked(m, r.rows()[..m].to_vec())
            })
            .collect();
        PartialColoring::from_classes(m, classes)
    }

    /// Relabels vertex `v` as `perm[v]` and color `c` as `colors[c - 1]`.
    pub fn relabeled(&self, perm: &[usize], colors: &[usize]) -> Self {
        let mut classes = vec![Graph::empty(self.n).expect("n valid"); self.k()];
        for (i, g) in self.classes.iter().enumerate() {
            classes[colors[i] - 1] = g.permuted(perm);
        }
        PartialColoring { n: self.n, classes }
    }
}

impl fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialColoring({}, {}, {:?})", self.n, self.k(), self.colors())
    }
}

/// Clones `pivot` onto a new last vertex `*`: every edge `{w, *}` copies the
/// color of `{w, pivot}` and `{pivot, *}` is left uncolored. The result is a
/// good coloring of `K_n - e` whenever the input is a good full coloring.
pub fn extend_one_vertex(
    c: &PartialColoring,
    pivot: usize,
    spec: &RamseySpec,
) -> Result<PartialColoring, ColoringError> {
    if let Some(e) = c.uncolored_edges().first() {
        return Err(ColoringError::NotFull(*e));
    }
    if !c.is_good(spec)? {
        return Err(ColoringError::NotGood);
    }
    let n = c.n() + 1;
    if n > MAX_VERTICES || pivot >= c.n() {
        return Err(crate::error::GraphError::VertexCount { n, max: MAX_VERTICES }.into());
    }
    let star = n - 1;
    let classes = c
        .classes
        .iter()
        .map(|g| {
            let mut rows = g.rows().to_vec();
            let pivot_row = rows[pivot];
            rows.push(pivot_row);
            for (w, row) in rows.iter_mut().enumerate().take(star) {
                if pivot_row & (1 << w) != 0 {
                    *row |= 1 << star;
                }
            }
            Graph::from_rows_unchecked(n, rows)
        })
        .collect();
    let out = PartialColoring { n, classes };
    debug_assert_eq!(out.color(Edge::new(pivot, star)), 0);
    Ok(out)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley coloring of `K_q`: `{u, v}` gets color 1 iff `v - u` is a nonzero
/// square mod `q`, else color 2.
pub fn paley_coloring(q: u64) -> Result<PartialColoring, ColoringError> {
    if !is_prime(q) || q % 4 != 1 || q as usize > MAX_VERTICES {
        return Err(ColoringError::UnsupportedPaleyOrder(q));
    }
    let n = q as usize;
    let mut square = vec![false; n];
    for x in 1..q {
        square[(x * x % q) as usize] = true;
    }
    let colors: Vec<usize> = all_edges(n).map(|e| if square[e.v() - e.u()] { 1 } else { 2 }).collect();
    PartialColoring::from_colors(n, 2, &colors)
}

/// Renders the text format: a header `n k`, then the colors of
/// `(u, u+1), ..., (u, n-1)` on one line per `u`.
pub fn write_coloring(c: &PartialColoring) -> String {
    let mut out = format!("{} {}\n", c.n(), c.k());
    for u in 0..c.n().saturating_sub(1) {
        let row: Vec<String> = (u + 1..c.n()).map(|v| c.color(Edge::new(u, v)).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Whitespace tokens with 1-based line/column positions.
pub(crate) fn tokens(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().flat_map(|(li, line)| {
        let mut out = Vec::new();
        let mut start = None;
        for (ci, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(ci),
                (true, Some(s)) => {
                    out.push((li + 1, s + 1, &line[s..ci]));
                    start = None;
                }
                _ => {}
            }
        }
        out
    })
}

fn parse_num(tok: (usize, usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.2.parse().map_err(|_| ParseError::new(tok.0, tok.1, format!("expected {what}, found {:?}", tok.2)))
}

/// Parses the header and the `C(n,2)` entries from `toks`, leaving any
/// trailing tokens unconsumed.
pub(crate) fn read_coloring_tokens<'a>(
    toks: &mut std::iter::Peekable<impl Iterator<Item = (usize, usize, &'a str)>>,
) -> Result<PartialColoring, ParseError> {
    let eof = |what: &str| ParseError::new(0, 0, format!("unexpected end of input, expected {what}"));
    let n_tok = toks.next().ok_or_else(|| eof("vertex count"))?;
    let n = parse_num(n_tok, "vertex count")?;
    if n == 0 || n > MAX_VERTICES {
        return Err(ParseError::new(n_tok.0, n_tok.1, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }
    let k_tok = toks.next().ok_or_else(|| eof("color count"))?;
    let k = parse_num(k_tok, "color count")?;
    if k == 0 {
        return Err(ParseError::new(k_tok.0, k_tok.1, "color count must be positive"));
    }
    let mut colors = Vec::with_capacity(pair_count(n));
    for e in all_edges(n) {
        let tok = toks.next().ok_or_else(|| eof(&format!("color of edge {e}")))?;
        let col = parse_num(tok, "color")?;
        if col > k {
            return Err(ParseError::new(tok.0, tok.1, format!("color {col} exceeds k = {k}")));
        }
        colors.push(col);
    }
    Ok(PartialColoring::from_colors(n, k, &colors).expect("validated"))
}

/// Inverse of [`write_coloring`].
pub fn read_coloring(text: &str) -> Result<PartialColoring, ParseError> {
    let mut toks = tokens(text).peekable();
    let c = read_coloring_tokens(&mut toks)?;
    if let Some((line, column, t)) = toks.next() {
        return Err(ParseError::new(line, column, format!("trailing token {t:?}")));
    }
    Ok(c)
}

pub mod bundled {
    //! Colorings shipped with the crate.
    use super::{read_coloring, PartialColoring};

    pub const PALEY5: &str = include_str!("../data/paley5.col");
    pub const PALEY17: &str = include_str!("../data/paley17.col");

    /// The 5-cycle coloring of `K_5`: color 1 on the cycle, color 2 on the diagonals.
    pub fn five_cycle() -> PartialColoring {
        read_coloring(PALEY5).expect("bundled file parses")
    }

    pub fn paley17() -> PartialColoring {
        read_coloring(PALEY17).expect("bundled file parses")
    }
}
