//! Ordered bipartite graphs, the word-to-graph encoding, block contraction,
//! fiber accounting, exhaustive graph censuses, and the chained bounds.
//!
//! Vertices are 1-indexed in every public signature and in the text format;
//! internally edges live in one bitmask per left vertex, bit `j - 1` standing
//! for the right vertex `j`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, BinaryMatrix};
use crate::scalar::Exact;
use crate::word::{validate_word, MultisetSpec, Word};

/// Largest number of cells (`left * right`) a census may enumerate.
pub const DEFAULT_CENSUS_CELLS: usize = 20;

/// A simple bipartite graph on the ordered classes `([a], [b])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    rows: Vec<u64>,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Result<Self> {
        if left == 0 || right == 0 {
            return Err(Error::InvalidGraph(
                "both vertex classes must be nonempty".into(),
            ));
        }
        if right > matrix::MAX_COLS {
            return Err(Error::InvalidGraph(format!(
                "at most {} right vertices",
                matrix::MAX_COLS
            )));
        }
        Ok(BipartiteGraph {
            left,
            right,
            rows: vec![0; left],
        })
    }

    pub fn complete(left: usize, right: usize) -> Result<Self> {
        let mut g = Self::empty(left, right)?;
        let full = g.full_row();
        g.rows.iter_mut().for_each(|r| *r = full);
        Ok(g)
    }

    /// Builds a graph from 1-indexed edges; duplicates are rejected.
    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(left, right)?;
        for &(i, j) in edges {
            if i == 0 || i > left || j == 0 || j > right {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    /// Decodes a row-major cell bitset: bit `(i - 1) * right + (j - 1)` is edge `(i, j)`.
    pub fn from_cell_bits(left: usize, right: usize, bits: u64) -> Result<Self> {
        let mut g = Self::empty(left, right)?;
        let full = g.full_row();
        for (i, row) in g.rows.iter_mut().enumerate() {
            *row = bits.checked_shr((i * right) as u32).unwrap_or(0) & full;
        }
        Ok(g)
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    fn full_row(&self) -> u64 {
        if self.right == 64 {
            u64::MAX
        } else {
            (1u64 << self.right) - 1
        }
    }

    /// Right neighbours of left vertex `i` (1-indexed) as a bitmask.
    pub fn neighbours(&self, i: usize) -> u64 {
        self.rows[i - 1]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.rows[i - 1] |= 1 << (j - 1);
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Edges in row-major order, 1-indexed.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, &row) in self.rows.iter().enumerate() {
            let mut rest = row;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                out.push((i + 1, j + 1));
                rest &= rest - 1;
            }
        }
        out
    }

    /// Degree of right vertex `j`.
    pub fn right_degree(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| *r >> (j - 1) & 1 == 1).count()
    }

    /// Text form: `"a b"` then one `"i j"` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.left, self.right);
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("missing size line".into()))?;
        let pair = |line: &str| -> Result<(usize, usize)> {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidGraph(format!("bad line {line:?}")))?;
            match nums.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::InvalidGraph(format!(
                    "expected two numbers in {line:?}"
                ))),
            }
        };
        let (a, b) = pair(header)?;
        let edges = lines.map(pair).collect::<Result<Vec<_>>>()?;
        BipartiteGraph::from_edges(a, b, &edges)
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for BipartiteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            left: self.left,
            right: self.right,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        BipartiteGraph::from_edges(g.left, g.right, &g.edges).map_err(serde::de::Error::custom)
    }
}

/// `G_w` on `([l], [n])`: one edge `(i, w_i)` per position.
pub fn graph_of_word(w: &Word, spec: &MultisetSpec) -> Result<BipartiteGraph> {
    if !validate_word(w, spec) {
        return Err(Error::SpecMismatch {
            word: w.to_string(),
            spec: spec.to_string(),
        });
    }
    let mut g = BipartiteGraph::empty(spec.total_length(), spec.n())?;
    for (i, &v) in w.entries().iter().enumerate() {
        g.add_edge(i + 1, v as usize);
    }
    Ok(g)
}

/// `G_q` for a word taken as an arrangement of its own multiset.
pub fn graph_of_pattern(q: &Word) -> Result<BipartiteGraph> {
    graph_of_word(q, &q.spec()?)
}

/// The `a x b` adjacency matrix.
pub fn adjacency(g: &BipartiteGraph) -> BinaryMatrix {
    BinaryMatrix::from_row_masks(g.right, g.rows.clone())
        .expect("graph sizes are valid matrix sizes")
}

/// Whether `p` contains `q` as an ordered subgraph.
///
/// Left vertices of `q` are placed in increasing order. Each right vertex of
/// `q` keeps the set of right vertices of `p` still compatible with every
/// placed neighbour; a branch dies as soon as these sets admit no increasing
/// choice.
pub fn ordered_contains(p: &BipartiteGraph, q: &BipartiteGraph) -> bool {
    if q.left > p.left || q.right > p.right {
        return false;
    }
    let mut candidates = vec![p.full_row(); q.right];
    place_left(p, q, 0, 0, &mut candidates)
}

fn place_left(
    p: &BipartiteGraph,
    q: &BipartiteGraph,
    v: usize,
    start: usize,
    candidates: &mut Vec<u64>,
) -> bool {
    if !increasing_choice(candidates) {
        return false;
    }
    if v == q.left {
        return true;
    }
    let need = q.left - v;
    let q_row = q.rows[v];
    for image in start..=(p.left - need) {
        let saved = candidates.clone();
        let p_row = p.rows[image];
        let mut rest = q_row;
        let mut alive = true;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            candidates[u] &= p_row;
            alive &= candidates[u] != 0;
            rest &= rest - 1;
        }
        if alive && place_left(p, q, v + 1, image + 1, candidates) {
            return true;
        }
        *candidates = saved;
    }
    false
}

/// Whether one element can be picked from each set with strictly increasing
/// values; greedy minimum choice decides it.
fn increasing_choice(sets: &[u64]) -> bool {
    let mut floor = 0u32;
    for &s in sets {
        let allowed = s & !1u64.checked_shl(floor).map_or(u64::MAX, |b| b - 1);
        if allowed == 0 {
            return false;
        }
        floor = allowed.trailing_zeros() + 1;
    }
    true
}

/// The consecutive left-vertex blocks merged by a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionPlan {
    spec: MultisetSpec,
    blocks: Vec<Range<usize>>,
}

impl ContractionPlan {
    /// Block `i` covers positions `m_1 + .. + m_{i-1} + 1` through `m_1 + .. + m_i`.
    pub fn new(spec: &MultisetSpec) -> Self {
        let mut start = 0;
        let blocks = spec
            .multiplicities()
            .iter()
            .map(|&m| {
                let block = start..start + m;
                start += m;
                block
            })
            .collect();
        ContractionPlan {
            spec: spec.clone(),
            blocks,
        }
    }

    pub fn regular(n: usize, m: usize) -> Result<Self> {
        Ok(Self::new(&MultisetSpec::regular(n, m)?))
    }

    pub fn spec(&self) -> &MultisetSpec {
        &self.spec
    }

    /// Blocks as 1-indexed inclusive ranges.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.start + 1, b.end)).collect()
    }

    pub fn total_length(&self) -> usize {
        self.spec.total_length()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Merges each block of left vertices into one vertex, keeping `(i, j)` when
/// any member of block `i` was adjacent to `j`.
pub fn contract(g: &BipartiteGraph, plan: &ContractionPlan) -> Result<BipartiteGraph> {
    if g.left != plan.total_length() {
        return Err(Error::SizeMismatch {
            expected: plan.total_length(),
            found: g.left,
        });
    }
    let mut out = BipartiteGraph::empty(plan.block_count(), g.right)?;
    for (i, block) in plan.blocks.iter().enumerate() {
        out.rows[i] = g.rows[block.clone()].iter().fold(0, |acc, r| acc | r);
    }
    Ok(out)
}

/// Number of graphs on `([l], [b])` that contract to `gp`: the product of
/// `2^{m_i} - 1` over its edges `(i, j)`.
pub fn fiber_size<C: Exact>(gp: &BipartiteGraph, plan: &ContractionPlan) -> Result<C> {
    if gp.left != plan.block_count() {
        return Err(Error::SizeMismatch {
            expected: plan.block_count(),
            found: gp.left,
        });
    }
    let two = C::from_count(2);
    let mut acc = C::one();
    for (i, &m) in plan.spec.multiplicities().iter().enumerate() {
        let per_edge = two.pow(m) - C::one();
        acc = acc * per_edge.pow(gp.rows[i].count_ones() as usize);
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub max_cells: usize,
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_cells: DEFAULT_CENSUS_CELLS,
            workers: 1,
        }
    }
}

/// Sums `weight(g)` over every graph on `([left], [right])` accepted by `keep`.
///
/// The `2^cells` space is cut into chunks by a fixed number of high bits so
/// the result is an exact sum regardless of how chunks are scheduled.
pub fn sum_over_graphs<C, K, W>(
    left: usize,
    right: usize,
    options: &CensusOptions,
    keep: K,
    weight: W,
) -> Result<C>
where
    C: Exact,
    K: Fn(&BipartiteGraph) -> bool + Sync,
    W: Fn(&BipartiteGraph) -> C + Sync,
{
    let cells = left * right;
    if cells > options.max_cells || cells >= 64 {
        return Err(Error::BudgetExceeded(format!(
            "enumerating 2^{cells} graphs exceeds the {}-cell budget",
            options.max_cells
        )));
    }
    let high = cells.min(6);
    let low = cells - high;
    let chunk = |prefix: u64| -> C {
        let mut acc = C::zero();
        for rest in 0..(1u64 << low) {
            let g = BipartiteGraph::from_cell_bits(left, right, prefix << low | rest)
                .expect("sizes checked");
            if keep(&g) {
                acc = acc + weight(&g);
            }
        }
        acc
    };
    let prefixes: Vec<u64> = (0..1u64 << high).collect();
    let parts: Vec<C> = if options.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::BudgetExceeded(format!("worker pool: {e}")))?;
        pool.install(|| prefixes.par_iter().map(|&p| chunk(p)).collect())
    } else {
        prefixes.iter().map(|&p| chunk(p)).collect()
    };
    Ok(parts.into_iter().fold(C::zero(), |a, b| a + b))
}

/// `G_{n,m}(q)`: graphs on `([n m], [n])` avoiding `G_q`.
pub fn census_avoiding_graphs<C: Exact>(
    n: usize,
    m: usize,
    q: &Word,
    options: &CensusOptions,
) -> Result<C> {
    if !q.is_permutation() {
        return Err(Error::NotAPermutation(q.to_string()));
    }
    let gq = graph_of_pattern(q)?;
    sum_over_graphs(
        n * m,
        n,
        options,
        |g| !ordered_contains(g, &gq),
        |_| C::one(),
    )
}

/// Right-hand side of the proof chain: the sum of fiber sizes over the
/// balanced graphs on `([n], [n])` that avoid `G_q`.
pub fn fiber_bound_sum<C: Exact>(
    n: usize,
    m: usize,
    q: &Word,
    options: &CensusOptions,
) -> Result<C> {
    if !q.is_permutation() {
        return Err(Error::NotAPermutation(q.to_string()));
    }
    let gq = graph_of_pattern(q)?;
    let plan = ContractionPlan::regular(n, m)?;
    sum_over_graphs(
        n,
        n,
        options,
        |g| !ordered_contains(g, &gq),
        |g| fiber_size::<C>(g, &plan).expect("sizes match"),
    )
}

/// Sum of fiber sizes over every contracted graph on `([n], [right])`; the
/// fibers partition all graphs on `([l], [right])`, so this is `2^{l right}`.
pub fn fiber_partition_total<C: Exact>(
    plan: &ContractionPlan,
    right: usize,
    options: &CensusOptions,
) -> Result<C> {
    sum_over_graphs(
        plan.block_count(),
        right,
        options,
        |_| true,
        |g| fiber_size::<C>(g, plan).expect("sizes match"),
    )
}

/// `base^exponent`, evaluated exactly when the exponent is an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerValue {
    Exact {
        #[serde(with = "crate::scalar::decimal_string")]
        value: BigUint,
        #[serde(with = "crate::scalar::decimal_string")]
        base: BigUint,
        #[serde(with = "crate::scalar::ratio_string")]
        exponent: Ratio<u64>,
    },
    Symbolic {
        #[serde(with = "crate::scalar::decimal_string")]
        base: BigUint,
        #[serde(with = "crate::scalar::ratio_string")]
        exponent: Ratio<u64>,
    },
}

impl PowerValue {
    pub fn new(base: BigUint, exponent: Ratio<u64>) -> Self {
        if exponent.is_integer() {
            let e = exponent.to_integer() as usize;
            PowerValue::Exact {
                value: num_traits::pow::pow(base.clone(), e),
                base,
                exponent,
            }
        } else {
            PowerValue::Symbolic { base, exponent }
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            PowerValue::Exact { value, .. } => Some(value),
            PowerValue::Symbolic { .. } => None,
        }
    }

    pub fn base(&self) -> &BigUint {
        match self {
            PowerValue::Exact { base, .. } | PowerValue::Symbolic { base, .. } => base,
        }
    }

    pub fn exponent(&self) -> Ratio<u64> {
        match self {
            PowerValue::Exact { exponent, .. } | PowerValue::Symbolic { exponent, .. } => *exponent,
        }
    }

    /// Natural logarithm, usable for comparisons when the value is symbolic.
    pub fn ln(&self) -> f64 {
        let base: f64 = num_traits::ToPrimitive::to_f64(self.base()).unwrap_or(f64::INFINITY);
        let e = self.exponent();
        base.ln() * (*e.numer() as f64 / *e.denom() as f64)
    }
}

impl fmt::Display for PowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerValue::Exact { value, .. } => write!(f, "{value}"),
            PowerValue::Symbolic { base, exponent } => write!(f, "{base}^({exponent})"),
        }
    }
}

/// Ordinary-permutation graph bound `15^{2dn}`, the multiset bound
/// `((2^m - 1) 15^2)^{dn}`, and the constants `c_q = 15^{2d}`, `e_q = 450^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::scalar::ratio_string")]
    pub d: Ratio<u64>,
    pub klazar_bound: PowerValue,
    pub multiset_bound: PowerValue,
    pub c_q: PowerValue,
    pub e_q: PowerValue,
}

pub fn bounds(n: usize, m: usize, d: Ratio<u64>) -> Result<BoundRecord> {
    if m == 0 || m >= 64 {
        return Err(Error::InvalidSpec(format!("multiplicity {m} out of range")));
    }
    let n_r = Ratio::from_integer(n as u64);
    let fifteen_sq = BigUint::from(225u32);
    let per_edge = (BigUint::one() << m) - BigUint::one();
    Ok(BoundRecord {
        n,
        m,
        d,
        klazar_bound: PowerValue::new(BigUint::from(15u32), d * n_r * Ratio::from_integer(2)),
        multiset_bound: PowerValue::new(per_edge * &fifteen_sq, d * n_r),
        c_q: PowerValue::new(BigUint::from(15u32), d * Ratio::from_integer(2)),
        e_q: PowerValue::new(BigUint::from(450u32), d),
    })
}
