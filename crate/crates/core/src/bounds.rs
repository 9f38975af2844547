//! Upper bounds on the critical multiplicity `m(s_1, ..., s_k)`.
//!
//! All arithmetic is exact. Each calculator reads Ramsey values through
//! [`RamseyTable::lookup_upper`]; every formula here is non-decreasing in
//! those values, so an upper bound on `R` yields a valid bound on `m`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::coloring::RamseySpec;
use crate::error::BoundError;
use crate::ramsey_table::{Lookup, RamseyTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    Classic,
    Edge,
    CountingCap,
    Balanced2,
    BalancedK,
    General,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Formula::Classic => "classic",
            Formula::Edge => "edge",
            Formula::CountingCap => "counting-cap",
            Formula::Balanced2 => "balanced2",
            Formula::BalancedK => "balancedK",
            Formula::General => "general",
        };
        f.write_str(s)
    }
}

/// A Ramsey value consumed by a calculator, with the role it played.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyInput {
    pub role: String,
    pub lookup: Lookup,
}

pub(crate) fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub formula: Formula,
    pub sizes: Vec<usize>,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    pub inputs: Vec<RamseyInput>,
    /// Attaining `(n_1, ..., n_k)` for the balanced formulas.
    pub witness: Option<Vec<u64>>,
    pub notes: Vec<String>,
}

impl BoundResult {
    fn new(formula: Formula, spec: &RamseySpec, value: BigUint) -> Self {
        BoundResult {
            formula,
            sizes: spec.sizes().to_vec(),
            value,
            inputs: Vec::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    fn input(mut self, role: &str, lookup: Lookup) -> Self {
        self.inputs.push(RamseyInput { role: role.to_string(), lookup });
        self
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sizes.iter().map(|x| x.to_string()).collect();
        write!(f, "{}: m({}) <= {}", self.formula, s.join(","), self.value)?;
        if let Some(w) = &self.witness {
            write!(f, " at {w:?}")?;
        }
        Ok(())
    }
}

/// `ceil(a / b)` for `b > 0`.
pub(crate) fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    Integer::div_ceil(&a, &b)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn require_at_least_three(spec: &RamseySpec) -> Result<(), BoundError> {
    if spec.min_size() < 3 {
        return Err(BoundError::Domain(format!("every clique size must be >= 3, got {spec}")));
    }
    Ok(())
}

/// The probabilistic bound `floor(C(R, s) * 2^(1 - C(s, 2)))` with `R = R(s, s)`.
pub fn classic_bound(s: usize, table: &RamseyTable) -> Result<BoundResult, BoundError> {
    if s < 3 {
        return Err(BoundError::Domain(format!("classic bound needs s >= 3, got {s}")));
    }
    let lookup = table.lookup_upper(&[s, s]);
    let value = classic_value(lookup.value, s);
    let spec = RamseySpec::diagonal(s, 2).expect("s >= 3");
    Ok(BoundResult::new(Formula::Classic, &spec, value).input("R(s,s)", lookup))
}

fn classic_value(r: u64, s: usize) -> BigUint {
    let pairs = (s * (s - 1) / 2) as u64;
    (binomial(r, s as u64) << 1u32) >> pairs
}

/// Cap on the number of `K_s` copies in a graph on `v` vertices from which
/// `m` edges (and no fewer) must be removed to destroy every copy:
/// `m * prod_{j=0}^{s-3} ceil((v - (m+1) - j) / (s-2))`.
/// Parts that would be negative count as empty.
pub fn counting_cap(v: u64, s: u64, m: u64) -> Result<u128, BoundError> {
    if s < 3 || m < 1 {
        return Err(BoundError::Domain(format!("need s >= 3 and m >= 1, got s={s} m={m}")));
    }
    if v < s {
        return Err(BoundError::Domain(format!("need v >= s, got v={v} s={s}")));
    }
    if v < m + 1 {
        return Err(BoundError::Domain(format!("v - (m+1) < 0 for v={v} m={m}")));
    }
    let base = (v - (m + 1)) as i128;
    let width = (s - 2) as i128;
    let mut acc = m as u128;
    for j in 0..=(s as i128 - 3) {
        let part = ceil_div(base - j, width).max(0) as u128;
        acc = acc.checked_mul(part).ok_or_else(|| BoundError::Domain("counting cap overflows u128".into()))?;
    }
    Ok(acc)
}

/// Per-color objective of the balanced formulas: the single-edge cap on `n` vertices.
fn single_edge_cap(n: u64, s: usize) -> u128 {
    counting_cap(n, s as u64, 1).expect("caller guarantees n >= s >= 3")
}

/// `prod_{j=0}^{max s - 3} ceil(((R - lost)/k - j) / (min s - 2))`, evaluated
/// exactly as `ceil((R - lost - j k) / (k (min s - 2)))`. Non-positive
/// factors are clamped to zero and reported.
fn spread_product(r: u64, lost: u64, spec: &RamseySpec) -> (BigUint, bool) {
    let k = spec.k() as i128;
    let width = k * (spec.min_size() as i128 - 2);
    let top = spec.max_size() as i128 - 3;
    let mut acc = BigUint::one();
    let mut clamped = false;
    for j in 0..=top {
        let f = ceil_div(r as i128 - lost as i128 - j * k, width);
        if f <= 0 {
            clamped = true;
        }
        acc *= BigUint::from(f.max(0) as u128);
    }
    (acc, clamped)
}

/// Bound from a single uncolored edge: all copies created by coloring the
/// last edge share it.
pub fn edge_bound(spec: &RamseySpec, table: &RamseyTable) -> Result<BoundResult, BoundError> {
    require_at_least_three(spec)?;
    let lookup = table.lookup_upper(spec.sizes());
    let (value, clamped) = spread_product(lookup.value, 2, spec);
    let mut out = BoundResult::new(Formula::Edge, spec, value).input("R(spec)", lookup);
    if clamped {
        out.notes.push("some factor was non-positive and clamped to 0".into());
    }
    Ok(out)
}

/// Bound from a connected uncolored subgraph `G` with `g_vertices` vertices
/// and `g_edges` edges.
pub fn general_bound(
    spec: &RamseySpec,
    g_vertices: u64,
    g_edges: u64,
    table: &RamseyTable,
) -> Result<BoundResult, BoundError> {
    require_at_least_three(spec)?;
    if g_vertices < 2 || g_edges + 1 < g_vertices {
        return Err(BoundError::Domain(format!(
            "G must be connected with at least one edge: |V|={g_vertices}, |E|={g_edges}"
        )));
    }
    if g_edges > g_vertices * (g_vertices - 1) / 2 {
        return Err(BoundError::Domain(format!("{g_edges} edges do not fit on {g_vertices} vertices")));
    }
    let lookup = table.lookup_upper(spec.sizes());
    if lookup.value < g_vertices {
        return Err(BoundError::Domain(format!("R = {} is smaller than |V(G)| = {g_vertices}", lookup.value)));
    }
    let (product, clamped) = spread_product(lookup.value, g_vertices, spec);
    let mut out = BoundResult::new(Formula::General, spec, product * BigUint::from(g_edges)).input("R(spec)", lookup);
    out.notes.push(format!("|V(G)| = {g_vertices}, |E(G)| = {g_edges}"));
    if clamped {
        out.notes.push("some factor was non-positive and clamped to 0".into());
    }
    Ok(out)
}

/// Gap limits `gap[i][j]`: when `n_i >= n_j` the constraint is `n_i - n_j < gap[i][j]`,
/// with `gap[i][j] = R(s_i - 1, R(s_l : l != i)) - (s_j - 2)`.
struct GapTable {
    gap: Vec<Vec<i128>>,
    inputs: Vec<RamseyInput>,
}

fn gap_table(spec: &RamseySpec, table: &RamseyTable) -> Result<GapTable, BoundError> {
    let sizes = spec.sizes();
    let k = sizes.len();
    let mut inputs = Vec::new();
    let mut outer_value = Vec::with_capacity(k);
    for i in 0..k {
        let others: Vec<usize> = (0..k).filter(|&l| l != i).map(|l| sizes[l]).collect();
        let inner = table.lookup_upper(&others);
        let inner_size = usize::try_from(inner.value).unwrap_or(usize::MAX);
        let outer = table.lookup_upper(&[sizes[i] - 1, inner_size]);
        outer_value.push(outer.value as i128);
        inputs.push(RamseyInput { role: format!("R(others of color {})", i + 1), lookup: inner });
        inputs.push(RamseyInput { role: format!("gap base for color {}", i + 1), lookup: outer });
    }
    let mut gap = vec![vec![0i128; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            gap[i][j] = outer_value[i] - (sizes[j] as i128 - 2);
            if gap[i][j] < 1 {
                return Err(BoundError::Infeasible(format!(
                    "gap limit for colors {} over {} is {} < 1",
                    i + 1,
                    j + 1,
                    gap[i][j]
                )));
            }
        }
    }
    Ok(GapTable { gap, inputs })
}

/// The gap limit `R(s_i - 1, R(s_l : l != i)) - (s_j - 2)` for 0-based
/// colors `i != j`; may be non-positive.
pub fn gap_limit(spec: &RamseySpec, table: &RamseyTable, i: usize, j: usize) -> i128 {
    let sizes = spec.sizes();
    let others: Vec<usize> = (0..sizes.len()).filter(|&l| l != i).map(|l| sizes[l]).collect();
    let inner = usize::try_from(table.lookup_upper(&others).value).unwrap_or(usize::MAX);
    table.lookup_upper(&[sizes[i] - 1, inner]).value as i128 - (sizes[j] as i128 - 2)
}

impl GapTable {
    /// Feasible interval for coordinate `idx` against the already fixed prefix.
    fn window(&self, idx: usize, prefix: &[u64]) -> (i128, i128) {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for (j, &nj) in prefix.iter().enumerate() {
            let nj = nj as i128;
            hi = hi.min(nj + self.gap[idx][j] - 1);
            lo = lo.max(nj - self.gap[j][idx] + 1);
        }
        (lo, hi)
    }

    /// Checks every pair of a complete tuple, both orientations on ties.
    pub(crate) fn admits(&self, tuple: &[u64]) -> bool {
        for i in 0..tuple.len() {
            for j in 0..tuple.len() {
                if i != j && tuple[i] >= tuple[j] && (tuple[i] - tuple[j]) as i128 >= self.gap[i][j] {
                    return false;
                }
            }
        }
        true
    }
}

struct Search<'a> {
    sizes: &'a [usize],
    gaps: &'a GapTable,
    budget: i128,
    /// `suffix_min[i]` = sum of `s_l` for `l >= i`.
    suffix_min: Vec<i128>,
    best: Option<(u128, Vec<u64>)>,
}

impl Search<'_> {
    fn run(&mut self, prefix: &mut Vec<u64>, sum: i128, running: u128) {
        let idx = prefix.len();
        let k = self.sizes.len();
        if let Some((best, _)) = &self.best {
            if running <= *best {
                return;
            }
        }
        let (glo, ghi) = self.gaps.window(idx, prefix);
        let lo = glo.max(self.sizes[idx] as i128);
        let hi = ghi.min(self.budget - sum - self.suffix_min[idx + 1]);
        if lo > hi {
            return;
        }
        if idx + 1 == k {
            // the objective is non-decreasing in n_idx: take the top of the
            // window, then the least n attaining the same min
            let s = self.sizes[idx];
            let value = running.min(single_edge_cap(hi as u64, s));
            let improves = self.best.as_ref().is_none_or(|(b, _)| value > *b);
            if improves {
                let (mut a, mut b) = (lo, hi);
                while a < b {
                    let mid = a + (b - a) / 2;
                    if running.min(single_edge_cap(mid as u64, s)) >= value {
                        b = mid;
                    } else {
                        a = mid + 1;
                    }
                }
                let mut tuple = prefix.clone();
                tuple.push(a as u64);
                self.best = Some((value, tuple));
            }
            return;
        }
        for n in lo..=hi {
            let v = running.min(single_edge_cap(n as u64, self.sizes[idx]));
            prefix.push(n as u64);
            self.run(prefix, sum + n, v);
            prefix.pop();
        }
    }
}

/// `max min_i prod_{j=0}^{s_i-3} ceil((n_i - 2 - j)/(s_i - 2))` over integer
/// tuples with `n_i >= s_i`, `sum n_i <= R + 2(k-1)` and the pairwise size-gap
/// constraints. The witness is the lexicographically least maximiser.
pub fn balanced_bound(spec: &RamseySpec, table: &RamseyTable) -> Result<BoundResult, BoundError> {
    require_at_least_three(spec)?;
    let sizes = spec.sizes();
    let k = sizes.len();
    let total = table.lookup_upper(sizes);
    let gaps = gap_table(spec, table)?;
    let budget = total.value as i128 + 2 * (k as i128 - 1);
    let mut suffix_min = vec![0i128; k + 1];
    for i in (0..k).rev() {
        suffix_min[i] = suffix_min[i + 1] + sizes[i] as i128;
    }
    let mut search = Search { sizes, gaps: &gaps, budget, suffix_min, best: None };
    search.run(&mut Vec::with_capacity(k), 0, u128::MAX);
    let Some((value, witness)) = search.best else {
        return Err(BoundError::Infeasible(format!(
            "{spec}: no tuple with n_i >= s_i fits under sum {budget} and the gap limits"
        )));
    };
    debug_assert!(gaps.admits(&witness));
    let formula = if k == 2 { Formula::Balanced2 } else { Formula::BalancedK };
    let mut out = BoundResult::new(formula, spec, BigUint::from(value)).input("R(spec)", total);
    out.inputs.extend(gaps.inputs);
    out.witness = Some(witness);
    out.notes.push("product over j runs to s_i - 3 for each color i".into());
    out.notes.push("gap limit uses the Ramsey number of the colors other than the larger part".into());
    Ok(out)
}

/// Checks a tuple against the balanced formula's constraints. Exposed for
/// independent re-derivation.
pub fn balanced_feasible(spec: &RamseySpec, table: &RamseyTable, tuple: &[u64]) -> Result<bool, BoundError> {
    let gaps = gap_table(spec, table)?;
    let r = table.lookup_upper(spec.sizes()).value;
    let k = spec.k() as u64;
    let sum: u64 = tuple.iter().sum();
    Ok(tuple.len() == spec.k()
        && tuple.iter().zip(spec.sizes()).all(|(&n, &s)| n >= s as u64)
        && sum <= r + 2 * (k - 1)
        && gaps.admits(tuple))
}

/// Objective of the balanced formula at `tuple`.
pub fn balanced_objective(spec: &RamseySpec, tuple: &[u64]) -> u128 {
    tuple.iter().zip(spec.sizes()).map(|(&n, &s)| single_edge_cap(n, s)).min().unwrap_or(0)
}
